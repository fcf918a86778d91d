"""Order-fixed compensated reductions.

Every sum that feeds a norm or an integral goes through here so results do
not depend on numpy's pairwise blocking or on thread counts.
"""

import math

import numpy as np


def stable_sum(values: np.ndarray) -> float | complex:
    """Correctly rounded sum in row-major order (``math.fsum`` per component)."""
    arr = np.asarray(values).ravel()
    if arr.size == 0:
        return 0.0
    if np.iscomplexobj(arr):
        return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))
    return math.fsum(arr.astype(np.float64, copy=False).tolist())


def stable_dot(a: np.ndarray, b: np.ndarray) -> float | complex:
    """Bilinear (no conjugation) inner product with compensated accumulation."""
    return stable_sum(np.asarray(a).ravel() * np.asarray(b).ravel())


def stable_norm2(values: np.ndarray) -> float:
    """Sum of squared magnitudes."""
    return float(stable_sum(np.abs(np.asarray(values)) ** 2))
