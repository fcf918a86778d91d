"""Radial bump profiles and the certified Littlewood-Paley family built from them.

All profiles are radial and return exact zeros outside their annuli and
exact ones on their plateaus.
"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

PARTITION_TOLERANCE = 1e-9
SQRT3 = math.sqrt(3.0)


def smooth_bump(u: np.ndarray) -> np.ndarray:
    """exp(1 - 1/(1 - u^2)) on |u| < 1, zero elsewhere; equals 1 at u = 0."""
    u = np.asarray(u, dtype=np.float64)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - u[inside] ** 2))
    return out


def smooth_step(u: np.ndarray) -> np.ndarray:
    """C^inf step: 0 for u <= 0, 1 for u >= 1."""
    u = np.asarray(u, dtype=np.float64)
    out = np.where(u >= 1.0, 1.0, 0.0)
    mid = (u > 0.0) & (u < 1.0)
    a = np.exp(-1.0 / u[mid])
    b = np.exp(-1.0 / (1.0 - u[mid]))
    out[mid] = a / (a + b)
    return out


def plateau_profile(
    rho: np.ndarray, support_lo: float, plateau_lo: float, plateau_hi: float, support_hi: float
) -> np.ndarray:
    """1 on [plateau_lo, plateau_hi], 0 outside (support_lo, support_hi), smooth between."""
    rho = np.asarray(rho, dtype=np.float64)
    rise = smooth_step((rho - support_lo) / (plateau_lo - support_lo))
    fall = 1.0 - smooth_step((rho - plateau_hi) / (support_hi - plateau_hi))
    return rise * fall


def chi_profile(rho: np.ndarray) -> np.ndarray:
    """Bump carried affinely onto the open annulus (1/2, 2)."""
    return smooth_bump((np.asarray(rho, dtype=np.float64) - 1.25) / 0.75)


def _chi_sum(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=np.float64)
    total = np.zeros_like(rho)
    positive = rho > 0
    base = np.floor(np.log2(rho[positive]))
    acc = np.zeros_like(base)
    for offset in (-1, 0, 1):
        acc += chi_profile(rho[positive] * np.exp2(-(base + offset)))
    total[positive] = acc
    return total


def psi_profile(rho: np.ndarray) -> np.ndarray:
    """psi^(rho) = chi(rho) / sum_j chi(2^-j rho); support in [1/2, 2]."""
    rho = np.asarray(rho, dtype=np.float64)
    out = np.zeros_like(rho)
    inside = (rho > 0.5) & (rho < 2.0)
    out[inside] = chi_profile(rho[inside]) / _chi_sum(rho[inside])
    return out


def phi_profile(rho: np.ndarray) -> np.ndarray:
    """phi^ = sum_{j <= 0} psi^(. / 2^j): 1 on |xi| <= 1, 0 on |xi| >= 2."""
    rho = np.asarray(rho, dtype=np.float64)
    out = np.where(rho <= 1.0, 1.0, 0.0)
    mid = (rho > 1.0) & (rho < 2.0)
    out[mid] = 1.0 - psi_profile(rho[mid] / 2.0)
    return out


def cutoff_profile(rho: np.ndarray) -> np.ndarray:
    """eta: 1 on |x| <= 1/2, 0 on |x| >= 1, nonincreasing."""
    return 1.0 - smooth_step((np.asarray(rho, dtype=np.float64) - 0.5) / 0.5)


def theta_annulus(m: int) -> tuple[float, float, float, float]:
    return (2.0**-3 / math.sqrt(m), 2.0**-2 * math.sqrt(m), 4.0 * math.sqrt(m), 8.0 * math.sqrt(m))


GAMMA_ANNULUS = (0.99, 0.999, 1.001, 1.01)
LAMBDA_ANNULUS = (0.25, 1.0 / (2.0 * SQRT3), 2.0 * SQRT3, 4.0)


class LPFamily(BaseModel):
    """Validated bump apparatus for m slots of dimension n on a dyadic window."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    k_min: int
    k_max: int
    partition_defect: float = Field(..., ge=0)
    low_defect: float = Field(..., ge=0)

    @model_validator(mode="after")
    def _certified(self):
        if self.k_max - self.k_min < 2:
            raise ValueError("window must span at least three octaves")
        if self.partition_defect > PARTITION_TOLERANCE or self.low_defect > PARTITION_TOLERANCE:
            raise ValueError("partition certificate failed")
        return self

    @property
    def window(self) -> range:
        return range(self.k_min, self.k_max + 1)

    @property
    def guard_band(self) -> tuple[float, float]:
        return (2.0 ** (self.k_min + 1), 2.0 ** (self.k_max - 1))

    @property
    def low_shift(self) -> int:
        """5 + floor(log2 m), the offset separating high from low terms."""
        return 5 + int(math.floor(math.log2(self.m)))

    def psi_hat(self, rho: np.ndarray) -> np.ndarray:
        return psi_profile(rho)

    def psi_m_hat(self, rho: np.ndarray) -> np.ndarray:
        return psi_profile(rho)

    def phi_hat(self, rho: np.ndarray) -> np.ndarray:
        return phi_profile(rho)

    def theta_m_hat(self, rho: np.ndarray) -> np.ndarray:
        return plateau_profile(rho, *theta_annulus(self.m))

    def gamma_hat(self, rho: np.ndarray) -> np.ndarray:
        return plateau_profile(rho, *GAMMA_ANNULUS)

    def lambda_m_hat(self, rho: np.ndarray) -> np.ndarray:
        return plateau_profile(rho, *LAMBDA_ANNULUS)

    def bins(self, rho: np.ndarray) -> dict[int, np.ndarray]:
        """Per-slot partition weights; the bottom bin is phi^(. / 2^k_min)."""
        out = {self.k_min: phi_profile(rho / 2.0**self.k_min)}
        for k in range(self.k_min + 1, self.k_max + 1):
            out[k] = psi_profile(rho / 2.0**k)
        return out

    def annuli(self) -> dict[str, dict[str, float]]:
        def entry(bounds):
            return dict(zip(("support_lo", "plateau_lo", "plateau_hi", "support_hi"), bounds))

        return {
            "psi": {"support_lo": 0.5, "support_hi": 2.0},
            "Psi_m": {"support_lo": 0.5, "support_hi": 2.0},
            "Theta_m": entry(theta_annulus(self.m)),
            "Gamma": entry(GAMMA_ANNULUS),
            "Lambda_m": entry(LAMBDA_ANNULUS),
            "phi": {"plateau_hi": 1.0, "support_hi": 2.0},
        }
