"""Certification machinery and independent oracles.

Three groups live here:

* Truncation bound: mental ages are physically nonnegative, but the
  closed forms integrate over the whole real line.  The per-slice bound
  certifies that the x < 0 sector contributes less than
  Phi(-mu12/sigma12), with a looser closed-form chain on top.

* First-order error propagation of the pair probability in (d, sigma1,
  sigma2), the ratio of the two error channels, and its printed bounds.

* Oracles: an adaptive Gauss-Legendre quadrature of the defining double
  integral (inner integral reduced analytically to a cdf difference, so
  the convolution identity under test is never used) and a seeded
  Monte-Carlo sampler.  Both exist to check the closed forms and never
  call them.
"""

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .compat import CompatQuery
from .model import gaussian_pdf
from .special import normal_cdf

__all__ = [
    "SliceParams", "ErrorBudget", "TruncationBound", "McEstimate",
    "QuadratureError", "slice_params", "truncation_bound",
    "error_propagation", "error_ratio", "error_ratio_bounds",
    "integrate", "quad_oracle", "mc_oracle",
]

_SQRT2PI = math.sqrt(2.0 * math.pi)
_GL_ORDER = 15
_MAX_DEPTH = 48
_MC_CHUNK = 1 << 19
_MC_MIN_SAMPLES = 10 ** 4

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_ORDER)
_GL_NODES = tuple(float(x) for x in _GL_NODES)
_GL_WEIGHTS = tuple(float(w) for w in _GL_WEIGHTS)


class QuadratureError(RuntimeError):
    """Adaptive refinement failed to converge (oracle infrastructure)."""


@dataclass(frozen=True)
class SliceParams:
    """Gaussian profile of one diagonal slice x2 = x1 + delta.

    The product density restricted to the slice is Gaussian in x1 with
    mean mu12 and width sigma12 <= min(sigma1, sigma2).
    """

    mu12: float
    sigma12: float


@dataclass(frozen=True)
class ErrorBudget:
    """Absolute uncertainties of d, sigma1, sigma2 (years each)."""

    d_err: float
    sigma1_err: float
    sigma2_err: float

    def __post_init__(self):
        for name in ("d_err", "sigma1_err", "sigma2_err"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


class TruncationBound(NamedTuple):
    """Per-slice certificate and its looser closed-form majorant."""

    worst_slice: float
    loose: float


def slice_params(g1, g2, delta: float) -> SliceParams:
    """Slice mean/width for x2 = x1 + delta."""
    v1, v2 = g1.sigma ** 2, g2.sigma ** 2
    total = v1 + v2
    return SliceParams(
        mu12=((g2.mu - delta) * v1 + g1.mu * v2) / total,
        sigma12=g1.sigma * g2.sigma / math.sqrt(total),
    )


def truncation_bound(q: CompatQuery) -> TruncationBound:
    """Bound on the x < 0 sector's share of any slice of the integral.

    The slice ratio Phi(-mu12/sigma12) is maximal at delta = d (mu12
    decreases in delta), giving the worst-slice certificate.  The loose
    companion Phi(-(mu - d)/sigma), evaluated for the younger person,
    majorizes it when the age-to-dispersion ratios agree, and is the
    quantity quoted against the 4-sigma yardstick.
    """
    sp = slice_params(q.g1, q.g2, q.d)
    worst = normal_cdf(-sp.mu12 / sp.sigma12)
    younger = q.g1 if q.g1.mu <= q.g2.mu else q.g2
    loose = normal_cdf(-(younger.mu - q.d) / younger.sigma)
    return TruncationBound(worst_slice=worst, loose=loose)


def error_propagation(q: CompatQuery, budget: ErrorBudget) -> float:
    """First-order uncertainty of the pair probability.

        dp = dd/sqrt(2 pi S2) * [e+ + e-]
           + (s1 ds1 + s2 ds2)/(sqrt(2 pi) S2^(3/2)) * |(g+d) e+ - (g-d) e-|

    with g = mu1 - mu2, S2 = s1**2 + s2**2 and
    e+- = exp(-(g +- d)**2 / (2 S2)).  This is exactly
    |dp/dd| dd + |dp/ds1| ds1 + |dp/ds2| ds2 of the closed form.
    """
    s1, s2 = q.g1.sigma, q.g2.sigma
    s2sum = s1 * s1 + s2 * s2
    g = q.g1.mu - q.g2.mu
    ep = math.exp(-0.5 * (g + q.d) ** 2 / s2sum)
    em = math.exp(-0.5 * (g - q.d) ** 2 / s2sum)
    d_part = budget.d_err / math.sqrt(2.0 * math.pi * s2sum) * (ep + em)
    sigma_part = ((s1 * budget.sigma1_err + s2 * budget.sigma2_err)
                  / (_SQRT2PI * s2sum ** 1.5)
                  * abs((g + q.d) * ep - (g - q.d) * em))
    return d_part + sigma_part


def error_ratio(q: CompatQuery, budget: ErrorBudget) -> float:
    """Sigma-channel error relative to the d-channel error.

        (1/S2) |g tanh(2 d g / S2) + d| (s1 ds1 + s2 ds2) / dd

    At equal means the tanh term vanishes and the expression coincides
    with the quotient of the two :func:`error_propagation` channels.
    """
    if budget.d_err <= 0:
        raise ValueError("d_err must be positive to form the ratio")
    s1, s2 = q.g1.sigma, q.g2.sigma
    s2sum = s1 * s1 + s2 * s2
    g = q.g1.mu - q.g2.mu
    return (abs(g * math.tanh(2.0 * q.d * g / s2sum) + q.d) / s2sum
            * (s1 * budget.sigma1_err + s2 * budget.sigma2_err) / budget.d_err)


def error_ratio_bounds(a: float, b: float, c: float) -> tuple[float, float]:
    """Bracket ((a+b)/(1+c), 2(a+b)) for the error ratio.

    Applies under d = a*sigma1, mu1-mu2 = b*sigma1, sigma1 = c*sigma2
    with a, b, c > 1 and roughly equal budget entries.
    """
    if not (a > 1 and b > 1 and c > 1):
        raise ValueError("bounds require a, b, c > 1")
    return ((a + b) / (1.0 + c), 2.0 * (a + b))


def _panel(f, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    acc = 0.0
    for x, w in zip(_GL_NODES, _GL_WEIGHTS):
        acc += w * f(c + h * x)
    return h * acc


def integrate(f: Callable[[float], float], a: float, b: float,
              tol: float = 1e-12, breakpoints=()) -> float:
    """Adaptive quadrature of f over [a, b] to absolute tolerance tol.

    Fixed-order Gauss-Legendre per panel with bisection refinement; each
    panel gets a tolerance share proportional to its width.  Optional
    breakpoints seed the initial panels (useful when the integrand's
    mass is far narrower than the interval).

    Raises:
        QuadratureError: refinement depth exhausted without convergence.
    """
    if a == b:
        return 0.0
    if a > b:
        raise ValueError(f"need a <= b, got a={a!r}, b={b!r}")
    cuts = sorted({a, b, *(x for x in breakpoints if a < x < b)})
    width = b - a
    total = 0.0
    # stack entries: (lo, hi, panel estimate, depth)
    stack = [(lo, hi, _panel(f, lo, hi), 0) for lo, hi in zip(cuts, cuts[1:])]
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(f, lo, mid)
        right = _panel(f, mid, hi)
        if abs(left + right - whole) <= tol * (hi - lo) / width:
            total += left + right
            continue
        if depth >= _MAX_DEPTH:
            raise QuadratureError(
                f"no convergence on [{lo}, {hi}] after {_MAX_DEPTH} splits")
        stack.append((lo, mid, left, depth + 1))
        stack.append((mid, hi, right, depth + 1))
    return total


def quad_oracle(q: CompatQuery, tol: float = 1e-11) -> float:
    """Pair probability by direct numerical integration.

    Integrates g1(x1) times the exact inner cdf difference of g2 over
    x1; the outer interval spans 10 standard deviations beyond both
    means (omitted tail mass < 1e-23).  Independent of the closed form
    it is used to check, and never calls it.
    """
    g1, g2, d = q.g1, q.g2, q.d

    def f(x1):
        inner = (normal_cdf((x1 - g2.mu + d) / g2.sigma)
                 - normal_cdf((x1 - g2.mu - d) / g2.sigma))
        return gaussian_pdf(x1, g1) * inner

    smax = max(g1.sigma, g2.sigma)
    a = min(g1.mu, g2.mu) - 10.0 * smax
    b = max(g1.mu, g2.mu) + 10.0 * smax
    # seed panels at the bump of g1 and the kinks of the inner factor
    cuts = [g1.mu + j * g1.sigma for j in (-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0)]
    cuts += [g2.mu - d, g2.mu, g2.mu + d]
    value = integrate(f, a, b, tol=tol, breakpoints=cuts)
    return 0.0 if value < 0.0 else (1.0 if value > 1.0 else value)


class McEstimate(NamedTuple):
    """Monte-Carlo estimate with its binomial standard error."""

    estimate: float
    stderr: float


def mc_oracle(q: CompatQuery, samples: int, seed: int) -> McEstimate:
    """Estimate the pair probability by seeded sampling.

    Draws (x1, x2) pairs via a Box-Muller transform of uniforms from a
    PCG64 stream, so the stream position is a fixed function of the
    sample count and identical seeds give identical output.  Chunk
    substreams derive from (seed, chunk index), making the result
    independent of evaluation order.
    """
    if samples < _MC_MIN_SAMPLES:
        raise ValueError(f"samples must be >= {_MC_MIN_SAMPLES}, got {samples!r}")
    g1, g2, d = q.g1, q.g2, q.d
    hits = 0
    done = 0
    chunk_idx = 0
    while done < samples:
        n = min(_MC_CHUNK, samples - done)
        rng = np.random.Generator(np.random.PCG64(
            np.random.SeedSequence(entropy=seed, spawn_key=(chunk_idx,))))
        u1 = 1.0 - rng.random(n)   # (0, 1]: keeps log finite
        u2 = rng.random(n)
        r = np.sqrt(-2.0 * np.log(u1))
        z1 = r * np.cos(2.0 * np.pi * u2)
        z2 = r * np.sin(2.0 * np.pi * u2)
        x1 = g1.mu + g1.sigma * z1
        x2 = g2.mu + g2.sigma * z2
        hits += int(np.count_nonzero(np.abs(x1 - x2) <= d))
        done += n
        chunk_idx += 1
    est = hits / samples
    return McEstimate(est, math.sqrt(est * (1.0 - est) / samples))
