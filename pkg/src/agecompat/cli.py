"""Command-line interface.

Subcommands mirror the library: ``compat`` for pair probabilities,
``expect`` for population expectations, ``limits`` for age-limit
conversions and sweeps, ``rule`` for the half-your-age-plus-seven audit
and its gap-slope solver, and ``tables`` for the two reference tables.

All record output is CSV (header row, comma separator, LF endings,
quoting only when needed) and byte-deterministic for identical flags.
Exit codes: 0 success, 2 usage or domain error, 3 numerical failure.
"""

import argparse
import csv
import math
import sys
import warnings

from . import compat as compat_mod
from . import expect as expect_mod
from . import policy
from .compat import CompatQuery
from .model import D_SCOPE_UPPER_COEF, Gaussian
from .verify import ErrorBudget, QuadratureError, error_propagation

DEFAULT_S = 0.15
DEFAULT_DIGITS = 6

_FLOAT_EXACT_LIMIT = 2.0 ** 53


def _fmt(value, digits):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    return format(float(value), f".{digits}g")


def _emit(columns, rows, digits, out=None):
    writer = csv.writer(out or sys.stdout, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v, digits) for v in row])


def _parse_range(text):
    """Parse lo:hi:step into an inclusive list of grid values."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected lo:hi:step, got {text!r}")
    lo, hi, step = (float(p) for p in parts)
    if step <= 0 or hi < lo:
        raise ValueError(f"need lo <= hi and step > 0, got {text!r}")
    count = int(round((hi - lo) / step))
    values = [lo + i * step for i in range(count + 1)]
    return [v for v in values if v <= hi + 1e-9 * max(1.0, abs(hi))]


def _parse_budget(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected dd,dsigma1,dsigma2, got {text!r}")
    dd, ds1, ds2 = (float(p) for p in parts)
    return ErrorBudget(dd, ds1, ds2)


def _query_from_args(args):
    g1 = Gaussian(args.age1, args.s1 * args.age1)
    g2 = Gaussian(args.age2, args.s2 * args.age2)
    if args.d is not None and args.t is not None:
        raise ValueError("give only one of --d and --t")
    if args.d is not None:
        return CompatQuery(g1, g2, d=args.d)
    t = args.t if args.t is not None else policy.DEFAULT_T
    return CompatQuery(g1, g2, t=t)


def _cmd_compat(args):
    q = _query_from_args(args)
    p = compat_mod.compat_prob(q)
    columns = ["age1", "age2", "s1", "s2", "d", "t", "p"]
    row = [args.age1, args.age2, args.s1, args.s2, q.d, q.t, p]
    if args.normalized:
        norm = compat_mod.compat_prob_normalized(q)
        columns += ["p0", "p0_denominator", "p0_swapped"]
        row += [norm.value, norm.denominator, norm.swapped]
    if args.error_budget is not None:
        budget = _parse_budget(args.error_budget)
        columns.append("delta_p")
        row.append(error_propagation(q, budget))
    _emit(columns, [row], args.digits)
    return 0


def _cmd_expect(args):
    columns, row = ["n1", "n2"], [args.n1, args.n2]
    if args.p is not None:
        if args.age1 is not None or args.age2 is not None:
            raise ValueError("give either --p or the age/s flags, not both")
        p = args.p
    else:
        if args.age1 is None or args.age2 is None:
            raise ValueError("need --p or both --age1 and --age2")
        q = _query_from_args(args)
        p = compat_mod.compat_prob(q)
        columns += ["age1", "age2", "s1", "s2", "d"]
        row += [args.age1, args.age2, args.s1, args.s2, q.d]
    n1, n2 = args.n1, args.n2

    pairs = expect_mod.expected_pairs(n1, n2, p)
    columns += ["p", "pairs", "mean_counterparts_1", "mean_counterparts_2",
                "with_match_1", "with_match_2"]
    row += [p, pairs,
            expect_mod.mean_counterparts(n1, p),
            expect_mod.mean_counterparts(n2, p),
            expect_mod.expected_with_at_least_one(n1, n2, p),
            expect_mod.expected_with_at_least_one(n2, n1, p)]

    if args.at_least_k is not None:
        k = args.at_least_k
        columns.append("k")
        row.append(k)
        want_exact = args.path in ("both", "exact")
        want_normal = args.path in ("both", "normal")
        if want_exact:
            columns += ["k_tail_exact_1", "k_tail_exact_2"]
            row += [expect_mod.at_least_k_exact(k, n2, p),
                    expect_mod.at_least_k_exact(k, n1, p)]
        if want_normal:
            tail1 = expect_mod.at_least_k_normal(k, n2, p)
            tail2 = expect_mod.at_least_k_normal(k, n1, p)
            columns += ["k_tail_normal_1", "k_tail_normal_2",
                        "normal_valid_1", "normal_valid_2"]
            row += [tail1.value, tail2.value, tail1.valid, tail2.valid]

    if pairs > _FLOAT_EXACT_LIMIT:
        columns.append("note")
        row.append("pairs exceed 2^53; value carries float64 precision only")
    _emit(columns, [row], args.digits)
    return 0


def _cmd_limits(args):
    if (args.mental is None) == (args.chrono is None):
        raise ValueError("give exactly one of --mental and --chrono")
    if args.sweep is not None:
        if args.chrono is None:
            raise ValueError("--sweep converts a chronological limit; give --chrono")
        rows = [(pv, args.s,
                 policy.mental_limit_from_chrono(args.chrono, args.s, pv, args.kind))
                for pv in _parse_range(args.sweep)]
        _emit(["p_limit", "s", "mental_limit"], rows, args.digits)
        return 0
    if args.p is None:
        raise ValueError("need --p for a single conversion")
    if args.mental is not None:
        spec = policy.AgeLimitSpec(args.kind, args.mental, args.p, args.s)
        chrono = (policy.chrono_min_age(spec) if args.kind == "min"
                  else policy.chrono_max_age(spec))
        _emit(["kind", "mental_limit", "p_limit", "s", "chrono_age"],
              [[args.kind, args.mental, args.p, args.s, chrono]], args.digits)
    else:
        mental = policy.mental_limit_from_chrono(args.chrono, args.s, args.p, args.kind)
        _emit(["kind", "chrono_age", "p_limit", "s", "mental_limit"],
              [[args.kind, args.chrono, args.p, args.s, mental]], args.digits)
    return 0


def _cmd_rule(args):
    t = args.t if args.t is not None else policy.DEFAULT_T
    if args.solve_m:
        if args.p is None:
            raise ValueError("--solve-m needs a target --p")
        m = policy.solve_m(args.p, args.s1, args.s2, t)
        _emit(["p_min", "s1", "s2", "t", "m"],
              [[args.p, args.s1, args.s2, t, m]], args.digits)
        return 0
    if args.mu_grid is None:
        raise ValueError("need --mu-grid for audit mode (or --solve-m)")
    grid = _parse_range(args.mu_grid)
    kept = [mu for mu in grid if mu > 14.0]
    for mu in grid:
        if mu <= 14.0:
            print(f"skipping mu={_fmt(mu, args.digits)}: rule allows no "
                  "upward gap at or below its fixed point 14", file=sys.stderr)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        points = policy.audit_hyaps(kept, args.s1, args.s2, t)
    rows = [(pt.mu, pt.delta, pt.delta / pt.mu, pt.p_min, pt.err_term, pt.flagged)
            for pt in points]
    _emit(["mu", "delta", "delta_over_mu", "p_min", "err_term", "flagged"],
          rows, args.digits)
    return 0


def _cmd_tables(args):
    out = sys.stdout
    t_values = [("sigma", 1.0),
                ("(2/sqrt(pi))*sigma", policy.DEFAULT_T),
                ("sqrt(2)*sigma", math.sqrt(2.0)),
                ("(mean+disp)*sigma", D_SCOPE_UPPER_COEF)]
    out.write("Same-age compatibility p = erf(t/2) at reference differences d\n")
    out.write("  d: " + "  ".join(label for label, _ in t_values) + "\n")
    out.write("  p: " + "  ".join(
        f"{compat_mod.same_age_prob(t):.2f}" for _, t in t_values) + "\n")
    out.write("\n")
    out.write("Gap slope m (delta = m*mu) for constant minimum probability, "
              "t = 2/sqrt(pi)\n")
    p_mins = (0.05, 0.1, 0.15)
    out.write(("          " + "".join(f"p_min={p:<6g}" for p in p_mins)).rstrip()
              + "\n")
    for s in (0.1, 0.15, 0.2):
        cells = "".join(
            f"{policy.solve_m(p, s, s, policy.DEFAULT_T):<12.2f}" for p in p_mins)
        out.write(f"  s={s:<5g} {cells}".rstrip() + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agecompat",
        description="Mental-age compatibility probabilities, expectations, "
                    "age-limit conversions and rule audits.")
    parser.add_argument("--digits", type=int, default=DEFAULT_DIGITS,
                        help="significant digits for numeric output (default 6)")
    parser.add_argument("--seed", type=int, default=None,
                        help="random seed for commands that sample")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compat = sub.add_parser("compat", help="pair compatibility probability")
    p_compat.add_argument("--age1", type=float, required=True)
    p_compat.add_argument("--age2", type=float, required=True)
    p_compat.add_argument("--s1", type=float, default=DEFAULT_S)
    p_compat.add_argument("--s2", type=float, default=DEFAULT_S)
    p_compat.add_argument("--d", type=float, default=None,
                          help="allowed mental-age difference in years")
    p_compat.add_argument("--t", type=float, default=None,
                          help="difference as a multiple of min(sigma1, sigma2); "
                               "default 2/sqrt(pi)")
    p_compat.add_argument("--normalized", action="store_true",
                          help="also report p divided by the younger cohort's "
                               "same-age probability")
    p_compat.add_argument("--error-budget", default=None, metavar="DD,DS1,DS2",
                          help="first-order uncertainty budget; adds a delta_p column")
    p_compat.set_defaults(func=_cmd_compat)

    p_expect = sub.add_parser("expect", help="population expectations")
    p_expect.add_argument("--n1", type=int, required=True)
    p_expect.add_argument("--n2", type=int, required=True)
    p_expect.add_argument("--p", type=float, default=None,
                          help="pair probability; alternatively give age/s flags")
    p_expect.add_argument("--age1", type=float, default=None)
    p_expect.add_argument("--age2", type=float, default=None)
    p_expect.add_argument("--s1", type=float, default=DEFAULT_S)
    p_expect.add_argument("--s2", type=float, default=DEFAULT_S)
    p_expect.add_argument("--d", type=float, default=None)
    p_expect.add_argument("--t", type=float, default=None)
    p_expect.add_argument("--at-least-k", type=int, default=None, metavar="K",
                          help="also report P(at least K matches) per member")
    group = p_expect.add_mutually_exclusive_group()
    group.add_argument("--exact", dest="path", action="store_const",
                       const="exact", help="only the exact binomial tail")
    group.add_argument("--normal", dest="path", action="store_const",
                       const="normal", help="only the normal-approximation tail")
    p_expect.set_defaults(func=_cmd_expect, path="both")

    p_limits = sub.add_parser("limits", help="age-limit conversions")
    p_limits.add_argument("--kind", choices=("min", "max"), required=True)
    p_limits.add_argument("--mental", type=float, default=None,
                          help="mental-age limit to convert to a chronological age")
    p_limits.add_argument("--chrono", type=float, default=None,
                          help="chronological limit to convert to a mental age")
    p_limits.add_argument("--p", type=float, default=None,
                          help="limit probability")
    p_limits.add_argument("--s", type=float, default=DEFAULT_S)
    p_limits.add_argument("--sweep", default=None, metavar="LO:HI:STEP",
                          help="sweep the limit probability; emits a CSV of "
                               "(p_limit, s, mental_limit) rows")
    p_limits.set_defaults(func=_cmd_limits)

    p_rule = sub.add_parser("rule", help="half-your-age-plus-seven audit / solver")
    p_rule.add_argument("--mu-grid", default=None, metavar="LO:HI:STEP",
                        help="audit the inverted rule over this age grid")
    p_rule.add_argument("--s1", type=float, default=DEFAULT_S)
    p_rule.add_argument("--s2", type=float, default=DEFAULT_S)
    p_rule.add_argument("--t", type=float, default=None,
                        help="difference multiple; default 2/sqrt(pi)")
    p_rule.add_argument("--solve-m", action="store_true",
                        help="solve for the gap slope m with delta = m*mu")
    p_rule.add_argument("--p", type=float, default=None,
                        help="target minimum probability for --solve-m")
    p_rule.set_defaults(func=_cmd_rule)

    p_tables = sub.add_parser("tables", help="print both reference tables")
    p_tables.set_defaults(func=_cmd_tables)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
