"""Age-limit inversion and the audit of the half-your-age-plus-seven rule.

Two applications of the core model:

* Converting between a mental-age threshold (with a limit probability
  and dispersion ratio s) and the chronological age that realizes it,
  in both directions and for both lower and upper limits.

* Testing the half-your-age-plus-seven dating rule against the
  probability model.  A constant minimum probability across ages forces
  the acceptable gap to be proportional to age (Delta = m * mu); the
  rule's implied gap Delta = mu - 14 is not, and the audit quantifies
  the mismatch.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from .special import normal_cdf, normal_quantile

__all__ = [
    "DEFAULT_T", "AgeLimitSpec", "RuleAuditPoint",
    "chrono_min_age", "chrono_max_age", "mental_limit_from_chrono",
    "hyaps_bounds", "rule_probability", "audit_hyaps", "solve_m",
]

# Benchmark multiple of sigma for the allowed difference: the mean of
# the same-cohort half-normal difference law, 2/sqrt(pi) ~ 1.128.
DEFAULT_T = 2.0 / math.sqrt(math.pi)

# Relative age error 14/mu of the inverted rule flagged above this.
RULE_ERR_TOLERANCE = 0.05

_SOLVE_M_HI_CAP = 64.0
_SOLVE_M_TOL = 1e-10


@dataclass(frozen=True)
class AgeLimitSpec:
    """A mental-age limit: kind ('min' or 'max'), threshold, probability, s."""

    kind: str
    x_limit: float
    p_limit: float
    s: float

    def __post_init__(self):
        if self.kind not in ("min", "max"):
            raise ValueError(f"kind must be 'min' or 'max', got {self.kind!r}")
        if self.x_limit <= 0:
            raise ValueError(f"x_limit must be positive, got {self.x_limit!r}")
        if not 0.0 < self.p_limit < 1.0:
            raise ValueError(f"p_limit must lie in (0, 1), got {self.p_limit!r}")
        if self.s <= 0:
            raise ValueError(f"s must be positive, got {self.s!r}")


def _chrono_from_mental(x_limit, s, quantile_arg):
    den = 1.0 + s * normal_quantile(quantile_arg)
    if den <= 0.0:
        raise ValueError(
            "limit probability too extreme for the given s "
            f"(1 + s*quantile = {den!r} <= 0)")
    return x_limit / den


def chrono_min_age(spec: AgeLimitSpec) -> float:
    """Youngest chronological age whose share above x_min reaches p_min.

    Solves p_min = P(X >= x_min; mu, s*mu) for mu:
    mu_min = x_min / (1 + s * Phi^-1(1 - p_min)).  At p_min = 0.5 the
    quantile vanishes and mu_min = x_min exactly.
    """
    if spec.kind != "min":
        raise ValueError(f"expected a 'min' spec, got kind={spec.kind!r}")
    if spec.p_limit == 0.5:
        return spec.x_limit
    return _chrono_from_mental(spec.x_limit, spec.s, 1.0 - spec.p_limit)


def chrono_max_age(spec: AgeLimitSpec) -> float:
    """Oldest chronological age whose share below x_max reaches p_max.

    mu_max = x_max / (1 + s * Phi^-1(p_max)); mirror of
    :func:`chrono_min_age`.
    """
    if spec.kind != "max":
        raise ValueError(f"expected a 'max' spec, got kind={spec.kind!r}")
    if spec.p_limit == 0.5:
        return spec.x_limit
    return _chrono_from_mental(spec.x_limit, spec.s, spec.p_limit)


def mental_limit_from_chrono(mu_limit: float, s: float, p_limit: float,
                             kind: str) -> float:
    """Mental-age limit implied by a chronological one (inverse direction).

    x_min = mu_min * (1 + s * Phi^-1(1 - p_min)) for lower limits,
    x_max = mu_max * (1 + s * Phi^-1(p_max)) for upper ones; round-trips
    with the chrono_* functions.
    """
    if kind not in ("min", "max"):
        raise ValueError(f"kind must be 'min' or 'max', got {kind!r}")
    if mu_limit <= 0:
        raise ValueError(f"mu_limit must be positive, got {mu_limit!r}")
    if s <= 0:
        raise ValueError(f"s must be positive, got {s!r}")
    if p_limit == 0.5:
        return mu_limit
    arg = 1.0 - p_limit if kind == "min" else p_limit
    return mu_limit * (1.0 + s * normal_quantile(arg))


def hyaps_bounds(mu: float) -> Tuple[float, float]:
    """Half-your-age-plus-seven bounds: (mu/2 + 7, 2*mu - 14).

    mu = 14 is the fixed point where both bounds collapse onto mu.
    """
    if mu <= 0:
        raise ValueError(f"age must be positive, got {mu!r}")
    return (0.5 * mu + 7.0, 2.0 * mu - 14.0)


def _rule_prob_from_ratio(rho, s1, s2, t):
    # rho = Delta/mu; d = t * s1 * mu (the younger person's sigma)
    den = math.hypot(s1, s2 * (1.0 + rho))
    p = normal_cdf((rho + t * s1) / den) - normal_cdf((rho - t * s1) / den)
    return 0.0 if p < 0.0 else (1.0 if p > 1.0 else p)


def rule_probability(mu: float, delta: float, s1: float, s2: float,
                     t: float = DEFAULT_T) -> float:
    """Compatibility probability for ages (mu, mu + delta), d = t*s1*mu.

    Equals the general pair probability with sigma1 = s1*mu,
    sigma2 = s2*(mu + delta) and d anchored on the younger person.  For
    constant s1, s2 it depends on (mu, delta) only through delta/mu, so
    a proportional gap delta = m*mu keeps it constant across ages.
    """
    if mu <= 0:
        raise ValueError(f"age must be positive, got {mu!r}")
    if delta < 0:
        raise ValueError(f"delta must be nonnegative, got {delta!r}")
    if not (s1 > 0 and s2 > 0):
        raise ValueError("ratios s1, s2 must be positive")
    if t < 1.0:
        raise ValueError(f"t must be at least 1 (natural lower edge of d), got {t!r}")
    return _rule_prob_from_ratio(delta / mu, s1, s2, t)


@dataclass(frozen=True)
class RuleAuditPoint:
    """One audited age: gap delta = mu - 14 and the resulting probability.

    err_term is 14/mu, the relative deviation of the rule's gap from
    proportionality; flagged marks ages where it exceeds 5%, which only
    clears at mu >= 280.
    """

    mu: float
    delta: float
    p_min: float
    err_term: float
    flagged: bool


def audit_hyaps(mu_grid: Iterable[float], s1: float, s2: float,
                t: float = DEFAULT_T) -> List[RuleAuditPoint]:
    """Evaluate the inverted rule (delta = mu - 14) across an age grid.

    Ages at or below the fixed point 14 have no upward gap and are
    skipped with a warning.  A constant-probability rule would produce a
    flat p_min column; this one does not, which is the audit's finding.
    """
    points = []
    for mu in mu_grid:
        if mu <= 14.0:
            warnings.warn(
                f"skipping mu={mu!r}: the rule allows no upward gap at or "
                "below its fixed point 14", stacklevel=2)
            continue
        delta = mu - 14.0
        err = 14.0 / mu
        points.append(RuleAuditPoint(
            mu=mu,
            delta=delta,
            p_min=rule_probability(mu, delta, s1, s2, t),
            err_term=err,
            flagged=err > RULE_ERR_TOLERANCE,
        ))
    return points


def solve_m(p_min: float, s1: float, s2: float, t: float = DEFAULT_T) -> float:
    """Gap slope m such that delta = m*mu yields the target probability.

    The map m -> p is strictly decreasing from the same-age value at
    m = 0 toward 0, so the root is unique.  Bisection on [0, m_hi] with
    m_hi doubled until it brackets (capped at 64), tolerance 1e-10 on p.
    """
    if not (s1 > 0 and s2 > 0):
        raise ValueError("ratios s1, s2 must be positive")
    if t < 1.0:
        raise ValueError(f"t must be at least 1, got {t!r}")
    ceiling = _rule_prob_from_ratio(0.0, s1, s2, t)
    if not 0.0 < p_min < ceiling:
        raise ValueError(
            f"p_min must lie in (0, {ceiling:.6g}) (the same-age value) "
            f"for a positive root to exist, got {p_min!r}")

    f = lambda m: _rule_prob_from_ratio(m, s1, s2, t) - p_min
    hi = 1.0
    while f(hi) > 0.0:
        hi *= 2.0
        if hi > _SOLVE_M_HI_CAP:
            raise ValueError(f"no bracket below m = {_SOLVE_M_HI_CAP}")
    lo = 0.0
    mid = 0.5 * hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= _SOLVE_M_TOL:
            return mid
        if fm > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * (1.0 + mid):
            break
    return mid
