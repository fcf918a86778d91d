"""Exponent regions Q_l, P and their convex hull.

Q_l is the open cube (0, l)^m and P the open simplex {r_j > 0, sum r_j < 1}.
Hull membership is decided for the closed hull by an LP: x = A + B with
0 <= A_j <= lambda l, B_j >= 0 and sum B_j <= 1 - lambda for some
lambda in [0, 1]; a second LP measures how deep inside the hull x sits.
"""

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from hormander_lab.src.models.reports import ExponentRegion, RegionMembership
from hormander_lab.src.utils.errors import ParameterError

MAX_SLOTS = 3


def _level(region: ExponentRegion) -> float:
    return region.s / (region.m * region.n)


def inside_q(point: np.ndarray, level: float) -> bool:
    return bool(np.all(point > 0) and np.all(point < level))


def inside_p(point: np.ndarray) -> bool:
    return bool(np.all(point > 0) and point.sum() < 1.0)


def _hull_lp(point: np.ndarray, level: float, margin: bool) -> tuple[bool, float]:
    """Variables (A_1..A_m, B_1..B_m, lambda[, delta]); with ``margin`` maximise delta."""
    m = len(point)
    n_var = 2 * m + 1 + (1 if margin else 0)
    lam = 2 * m
    a_eq = np.zeros((m, n_var))
    for j in range(m):
        a_eq[j, j] = 1.0
        a_eq[j, m + j] = 1.0
    b_eq = point.astype(np.float64)

    rows, rhs = [], []
    for j in range(m):
        # A_j <= lambda l - delta
        row = np.zeros(n_var)
        row[j] = 1.0
        row[lam] = -level
        if margin:
            row[-1] = 1.0
        rows.append(row)
        rhs.append(0.0)
        if margin:
            # delta <= A_j
            row = np.zeros(n_var)
            row[j] = -1.0
            row[-1] = 1.0
            rows.append(row)
            rhs.append(0.0)
    # sum B + lambda <= 1 - delta
    row = np.zeros(n_var)
    row[m : 2 * m] = 1.0
    row[lam] = 1.0
    if margin:
        row[-1] = 1.0
    rows.append(row)
    rhs.append(1.0)

    bounds = [(0, None)] * (2 * m) + [(0, 1)]
    cost = np.zeros(n_var)
    if margin:
        bounds.append((None, None))
        cost[-1] = -1.0
    result = linprog(
        cost, A_ub=np.array(rows), b_ub=np.array(rhs), A_eq=a_eq, b_eq=b_eq,
        bounds=bounds, method="highs",
    )
    if result.status != 0:
        return False, 0.0
    return True, float(-result.fun) if margin else 0.0


def inside_hull(point: np.ndarray, level: float) -> bool:
    """Membership in the closed hull of Q_l and P."""
    feasible, _ = _hull_lp(np.asarray(point, dtype=np.float64), level, margin=False)
    return feasible


def region_check(region: ExponentRegion) -> RegionMembership:
    point = np.asarray(region.point, dtype=np.float64)
    m = len(point)
    if m > MAX_SLOTS:
        raise ParameterError(f"hull membership is computed for m <= {MAX_SLOTS}, got m = {m}")
    level = _level(region)
    feasible = inside_hull(point, level)
    _, depth = _hull_lp(point, level, margin=True) if feasible else (False, 0.0)
    return RegionMembership(
        inside_Q=inside_q(point, level),
        inside_P=inside_p(point),
        inside_hull=feasible,
        hull_interior=feasible and depth > 0,
        hull_margin=depth,
    )


def hull_vertices(m: int, level: float) -> np.ndarray:
    """Corners of the closed cube [0, l]^m and of the closed simplex."""
    cube = np.array(np.meshgrid(*[[0.0, level]] * m, indexing="ij")).reshape(m, -1).T
    simplex = np.vstack([np.zeros(m), np.eye(m)])
    return np.unique(np.vstack([cube, simplex]), axis=0)


def hull_oracle(m: int, level: float, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Membership and signed facet distance of ``points`` for the qhull hull of the vertices."""
    hull = ConvexHull(hull_vertices(m, level))
    # facet equations are normal . x + offset <= 0 inside, normals of unit length
    signed = points @ hull.equations[:, :-1].T + hull.equations[:, -1]
    distance = signed.max(axis=1)
    return distance <= 0, distance


def oracle_disagreements(
    m: int, s: float, n: int, points: np.ndarray, band: float = 1e-9
) -> int:
    """Points off the boundary band where region_check and the qhull oracle disagree."""
    level = s / (m * n)
    inside, distance = hull_oracle(m, level, points)
    count = 0
    for point, expected, dist in zip(points, inside, distance):
        if abs(dist) <= band:
            continue
        if inside_hull(point, level) != bool(expected):
            count += 1
    return count
