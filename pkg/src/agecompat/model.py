"""Domain types and the distributional identities they obey.

A person's mental age is modeled as a Gaussian centered on their
chronological age, with a standard deviation proportional to it
(sigma = s * mu).  The difference of two such variables is again
Gaussian, and the absolute difference within one cohort follows a
half-normal law whose moments set the natural scale for the allowed
mental-age gap.

All types are immutable values and all operations pure.
"""

import math
from dataclasses import dataclass

from .special import _check_finite

__all__ = [
    "Gaussian", "AgeProfile", "DiffStats",
    "gaussian_pdf", "convolve_diff", "same_age_diff_stats", "d_scope",
    "SIGMA_RATIO_LOW", "SIGMA_RATIO_HIGH",
    "MEAN_DIFF_COEF", "DIFF_DISPERSION_COEF", "D_SCOPE_UPPER_COEF",
]

_SQRT2PI = math.sqrt(2.0 * math.pi)

# Empirically supported band for the dispersion-to-age ratio s.
SIGMA_RATIO_LOW = 0.1
SIGMA_RATIO_HIGH = 0.2

# Half-normal moments of |X1 - X2| for X1, X2 ~ N(mu, sigma**2):
#   mean     = (2/sqrt(pi)) * sigma          ~ 1.128 sigma
#   spread   = sqrt(2*(1 - 2/pi)) * sigma    ~ 0.853 sigma
MEAN_DIFF_COEF = 2.0 / math.sqrt(math.pi)
DIFF_DISPERSION_COEF = math.sqrt(2.0 * (1.0 - 2.0 / math.pi))
D_SCOPE_UPPER_COEF = MEAN_DIFF_COEF + DIFF_DISPERSION_COEF


@dataclass(frozen=True)
class Gaussian:
    """Mental-age density: mean mu and standard deviation sigma, in years."""

    mu: float
    sigma: float

    def __post_init__(self):
        _check_finite(self.mu, "mu")
        _check_finite(self.sigma, "sigma")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")


@dataclass(frozen=True)
class AgeProfile:
    """Chronological age mu with relative dispersion s (sigma = s * mu).

    The model is parameterized by the ratio s rather than sigma because
    the dispersion of test scores tracks the cohort mean across ages.
    Values of s outside [0.1, 0.2] are allowed but flagged via
    :attr:`in_supported_band`, since the empirical studies cluster there.
    """

    mu: float
    s: float

    def __post_init__(self):
        _check_finite(self.mu, "mu")
        _check_finite(self.s, "s")
        if self.mu <= 0:
            raise ValueError(f"age mu must be positive, got {self.mu!r}")
        if self.s <= 0:
            raise ValueError(f"ratio s must be positive, got {self.s!r}")

    @classmethod
    def from_sigma(cls, mu: float, sigma: float) -> "AgeProfile":
        """Alternative constructor for callers holding an absolute sigma."""
        if mu <= 0:
            raise ValueError(f"age mu must be positive, got {mu!r}")
        return cls(mu, sigma / mu)

    @property
    def sigma(self) -> float:
        return self.s * self.mu

    @property
    def gaussian(self) -> Gaussian:
        return Gaussian(self.mu, self.sigma)

    @property
    def in_supported_band(self) -> bool:
        return SIGMA_RATIO_LOW <= self.s <= SIGMA_RATIO_HIGH


@dataclass(frozen=True)
class DiffStats:
    """Moments of the same-cohort mental-age difference |X1 - X2|.

    sigma_d is the scale of the signed difference, mean_d and disp_d the
    mean and dispersion of its absolute value (half-normal law).
    """

    sigma_d: float
    mean_d: float
    disp_d: float


def gaussian_pdf(x: float, g: Gaussian) -> float:
    """Density of g at x; peaks at 1/(sqrt(2*pi)*sigma) when x = mu."""
    z = (x - g.mu) / g.sigma
    return math.exp(-0.5 * z * z) / (_SQRT2PI * g.sigma)


def convolve_diff(g1: Gaussian, g2: Gaussian) -> Gaussian:
    """Distribution of X1 - X2: means subtract, variances add."""
    return Gaussian(g1.mu - g2.mu, math.hypot(g1.sigma, g2.sigma))


def same_age_diff_stats(sigma: float) -> DiffStats:
    """Half-normal moments of |X1 - X2| within one cohort of scale sigma."""
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    return DiffStats(
        sigma_d=math.sqrt(2.0) * sigma,
        mean_d=MEAN_DIFF_COEF * sigma,
        disp_d=DIFF_DISPERSION_COEF * sigma,
    )


def d_scope(sigma1: float, sigma2: float) -> tuple[float, float]:
    """Reasonable range for the allowed mental-age difference d.

    Lower edge: the smaller cohort dispersion (a stricter d would be
    tighter than natural same-cohort scatter).  Upper edge: mean plus
    dispersion of the half-normal difference law, ~1.981 * sigma.
    """
    if not (sigma1 > 0 and sigma2 > 0):
        raise ValueError("standard deviations must be positive")
    lo = min(sigma1, sigma2)
    return (lo, D_SCOPE_UPPER_COEF * lo)
