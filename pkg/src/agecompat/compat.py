"""Compatibility probabilities between two mental-age distributions.

The central quantity is the probability that two randomly drawn mental
ages lie within d years of each other.  Because the difference of two
Gaussians is Gaussian, it has the closed form

    p = Phi((mu1 - mu2 + d)/S) - Phi((mu1 - mu2 - d)/S),
    S = sqrt(sigma1**2 + sigma2**2),

and every other operation here is a specialization: a point mass for a
known mental age, normalization by the same-age probability, single
ranges, and a pure age-ratio form that exposes scale invariance.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .model import Gaussian
from .special import erf, normal_cdf

__all__ = [
    "CompatQuery", "NormalizedProb",
    "compat_prob", "compat_prob_known", "compat_prob_normalized",
    "same_age_prob", "range_prob", "symmetric_range_prob",
    "prob_at_least", "prob_at_most", "compat_prob_ratio_form",
]

_SQRT2 = math.sqrt(2.0)


def _clamp_unit(v: float) -> float:
    # guard against sub-ulp excursions of cdf differences
    return 0.0 if v < 0.0 else (1.0 if v > 1.0 else v)


@dataclass(frozen=True)
class CompatQuery:
    """Two mental-age densities plus an allowed difference.

    The difference may be given in absolute years (d) or as a multiple t
    of the smaller standard deviation; exactly one of the two must be
    supplied and the other is derived via d = t * min(sigma1, sigma2).
    """

    g1: Gaussian
    g2: Gaussian
    d: Optional[float] = None
    t: Optional[float] = None

    def __post_init__(self):
        if (self.d is None) == (self.t is None):
            raise ValueError("give exactly one of d (years) or t (sigma multiple)")
        anchor = min(self.g1.sigma, self.g2.sigma)
        if self.d is None:
            if self.t < 0:
                raise ValueError(f"t must be nonnegative, got {self.t!r}")
            object.__setattr__(self, "d", self.t * anchor)
        else:
            if self.d < 0:
                raise ValueError(f"d must be nonnegative, got {self.d!r}")
            object.__setattr__(self, "t", self.d / anchor)

    @classmethod
    def from_profiles(cls, p1, p2, d=None, t=None) -> "CompatQuery":
        return cls(p1.gaussian, p2.gaussian, d=d, t=t)


class NormalizedProb(NamedTuple):
    """Probability divided by the younger cohort's same-age probability."""

    value: float
    swapped: bool      # True when inputs were reordered so mu2 <= mu1
    denominator: float


def compat_prob(q: CompatQuery) -> float:
    """P(|X1 - X2| <= d) for the two densities in the query.

    Symmetric in the two persons, nondecreasing in d, and tends to 1 as
    d grows.  The gap enters via its absolute value, which makes the
    swap symmetry exact in floating point as well.
    """
    gap = abs(q.g1.mu - q.g2.mu)
    scale = math.hypot(q.g1.sigma, q.g2.sigma)
    p = normal_cdf((gap + q.d) / scale) - normal_cdf((gap - q.d) / scale)
    return _clamp_unit(p)


def compat_prob_known(d: float, x1: float, g: Gaussian) -> float:
    """P(|x1 - X| <= d) when one mental age is known exactly.

    The known person's density degenerates to a point mass at x1, so
    only the other person's cdf is integrated.  Maximal over x1 at
    x1 = g.mu.
    """
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d!r}")
    p = normal_cdf((x1 - g.mu + d) / g.sigma) - normal_cdf((x1 - g.mu - d) / g.sigma)
    return _clamp_unit(p)


def compat_prob_normalized(q: CompatQuery) -> NormalizedProb:
    """Compatibility probability relative to the younger cohort's own.

    The denominator is the same-age probability of the younger person,
    erf(d / (2 * sigma_younger)), which equals the numerator when both
    profiles coincide (value 1).  Inputs are reordered internally so the
    denominator always belongs to the younger profile; the returned
    record reports whether that swap happened.
    """
    if q.d == 0:
        raise ValueError("normalization is undefined at d = 0 (0/0)")
    swapped = q.g1.mu < q.g2.mu
    younger = q.g1 if swapped else q.g2
    denom = erf(q.d / (2.0 * younger.sigma))
    return NormalizedProb(compat_prob(q) / denom, swapped, denom)


def same_age_prob(t: float) -> float:
    """P(|X1 - X2| <= t*sigma) within one cohort: erf(t/2).

    Independent of both the age and sigma; only the multiple t matters.
    """
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t!r}")
    return _clamp_unit(erf(0.5 * t))


def range_prob(x_lo: float, x_hi: float, g: Gaussian) -> float:
    """P(x_lo <= X <= x_hi) for a single mental-age density."""
    if x_lo > x_hi:
        raise ValueError(f"empty range: x_lo={x_lo!r} > x_hi={x_hi!r}")
    p = normal_cdf((x_hi - g.mu) / g.sigma) - normal_cdf((x_lo - g.mu) / g.sigma)
    return _clamp_unit(p)


def symmetric_range_prob(d: float, g: Gaussian) -> float:
    """P(|X - mu| <= d) = erf(d / (sqrt(2)*sigma))."""
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d!r}")
    return _clamp_unit(erf(d / (_SQRT2 * g.sigma)))


def prob_at_least(x0: float, g: Gaussian) -> float:
    """P(X >= x0); complements :func:`prob_at_most` exactly."""
    return _clamp_unit(normal_cdf((g.mu - x0) / g.sigma))


def prob_at_most(x0: float, g: Gaussian) -> float:
    """P(X <= x0)."""
    return _clamp_unit(normal_cdf((x0 - g.mu) / g.sigma))


def compat_prob_ratio_form(r: float, s1: float, s2: float, t: float) -> float:
    """Compatibility probability in terms of the age ratio r = mu1/mu2.

    With sigma_i = s_i * mu_i and d = t * sigma2 (the younger person's
    scale, mu2 <= mu1), the ages enter only through their ratio:

        p = Phi((r - 1 + s2*t)/D) - Phi((r - 1 - s2*t)/D),
        D = sqrt(s1**2 * r**2 + s2**2).

    Hence a 16/24 pair is exactly as compatible as a 24/36 pair under
    the same (s1, s2, t).
    """
    if r < 1:
        raise ValueError(f"age ratio must satisfy r >= 1, got {r!r} (swap the ages)")
    if not (s1 > 0 and s2 > 0):
        raise ValueError("ratios s1, s2 must be positive")
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t!r}")
    den = math.hypot(s1 * r, s2)
    gap = r - 1.0
    p = normal_cdf((gap + s2 * t) / den) - normal_cdf((gap - s2 * t) / den)
    return _clamp_unit(p)
