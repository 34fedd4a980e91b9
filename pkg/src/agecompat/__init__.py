"""Mental-age compatibility probabilities from a Gaussian age model.

Mental age is modeled as normally distributed around the chronological
age with standard deviation proportional to it.  The package provides
the closed-form probability that two people's mental ages lie within a
given difference, population-level expectations built on it, age-limit
conversions between mental and chronological thresholds, an audit of
the half-your-age-plus-seven rule, and independent quadrature and
Monte-Carlo oracles used to certify the closed forms.
"""

from .compat import (
    CompatQuery,
    NormalizedProb,
    compat_prob,
    compat_prob_known,
    compat_prob_normalized,
    compat_prob_ratio_form,
    prob_at_least,
    prob_at_most,
    range_prob,
    same_age_prob,
    symmetric_range_prob,
)
from .expect import (
    Cohort,
    NormalTail,
    at_least_k_exact,
    at_least_k_normal,
    expected_pairs,
    expected_with_at_least_one,
    mean_counterparts,
    normal_approx_valid,
)
from .model import (
    AgeProfile,
    DiffStats,
    Gaussian,
    convolve_diff,
    d_scope,
    gaussian_pdf,
    same_age_diff_stats,
)
from .policy import (
    DEFAULT_T,
    AgeLimitSpec,
    RuleAuditPoint,
    audit_hyaps,
    chrono_max_age,
    chrono_min_age,
    hyaps_bounds,
    mental_limit_from_chrono,
    rule_probability,
    solve_m,
)
from .special import erf, erfc, normal_cdf, normal_pdf, normal_quantile
from .verify import (
    ErrorBudget,
    McEstimate,
    QuadratureError,
    SliceParams,
    TruncationBound,
    error_propagation,
    error_ratio,
    error_ratio_bounds,
    integrate,
    mc_oracle,
    quad_oracle,
    slice_params,
    truncation_bound,
)

__version__ = "0.1.0"
