"""Command-line front end: ``intasym {coeffs,verify,symmetry,mzv}``.

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 the fitted
remainder slope misses ``-(P+1)`` by more than :data:`SLOPE_TOLERANCE`.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from .appell import AppellForm, beta_sequence, reflection_omega
from .bigfloat import DEFAULT_PRECISION, BigFloat, context
from .errors import DegenerateFit, DomainError, IntasymError, QuadratureError
from .expansion import ExpansionResult, expansion_coefficients
from .registry import registry_names
from .scalars import parse_scalar
from .specfile import DEFAULT_ORDERS, ProblemSpec, SpecFileError, load_problem, parse_problem
from .symmetry import appell_criterion, solvability_check
from .verify import decay_check
from .zetavals import mzv_height_one, mzv_label, nielsen_S

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_SLOPE = 0, 2, 3, 4
SLOPE_TOLERANCE = 0.5

log = logging.getLogger("intasym")


# -- formatting -------------------------------------------------------------

def digits_for(precision: int) -> int:
    """Decimal digits that round-trip a ``precision``-bit binary float."""
    return int(precision * 0.30103) + 2


def fmt(x, precision: int) -> str:
    if isinstance(x, BigFloat):
        x = x.value
    if isinstance(x, Fraction):
        return str(x)
    if not x:
        return "0"
    return context(precision).nstr(x, digits_for(precision), strip_zeros=True)


def _exact_or_num(x, precision):
    return str(x) if isinstance(x, Fraction) else fmt(x, precision)


def coefficients_json(result: ExpansionResult) -> dict:
    prec = result.spec.precision
    spec = result.spec
    a0 = None
    if result.a0 is not None:
        a0 = {"value": fmt(result.a0, prec), "error_bound": fmt(result.a0.error, prec),
              "source": result.a0_source}
    coeffs = []
    for c in result.coefficients:
        coeffs.append({
            "p": c.p,
            "value": fmt(c.value, prec),
            "error_bound": fmt(c.value.error, prec),
            "terms": [{"ell": t.ell, "k": t.k, "beta": fmt(t.beta, prec),
                       "nielsen": fmt(t.nielsen, prec), "special_value": t.label}
                      for t in c.terms],
            "zeta_form": c.zeta_form.render() if c.zeta_form else None,
            "zeta_form_pi": c.zeta_form.render(pi_form=True) if c.zeta_form else None,
        })
    return {
        "spec": {"name": spec.name, "q": str(spec.q), "w": str(spec.w), "orders": spec.orders,
                 "precision_bits": prec},
        "a0": a0,
        "beta": {"core": [_exact_or_num(v, prec) for v in result.beta.core],
                 "scale": str(result.beta.scale), "provenance": result.beta.provenance},
        "coefficients": coeffs,
    }


def coefficients_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "value", "error_bound", "zeta_form"])
    for c in report["coefficients"]:
        writer.writerow([c["p"], c["value"], c["error_bound"], c["zeta_form"] or ""])
    return buf.getvalue()


def symmetry_json(problem: ProblemSpec, P: int) -> dict:
    spec = problem.spec
    prec = spec.precision
    beta = beta_sequence(spec.f, P - 2, prec)
    per_p = []
    first = None
    for p in range(2, P + 1):
        rep = solvability_check(p, spec.w, beta, prec)
        entry = {
            "p": p, "holds": rep.holds, "exact": rep.exact,
            "eta": [_exact_or_num(e, prec) for e in rep.eta],
            "violations": [{"nu": nu, "lhs": _exact_or_num(l, prec), "rhs": _exact_or_num(r, prec)}
                           for nu, l, r in rep.violations],
            "rho": [{"nu": nu, "rho": _exact_or_num(r, prec), "s_ref": mzv_label(nu, p - nu)}
                    for nu, r in enumerate(rep.rho, start=1)] if rep.rho is not None else None,
        }
        if first is None and rep.violations:
            first = {"p": p, "nu": rep.violations[0][0]}
        per_p.append(entry)
    criterion = None
    if isinstance(spec.f, AppellForm):
        fam = spec.f.family
        omega = reflection_omega(fam, prec)
        criterion = {
            "family": str(fam), "c": str(spec.f.c), "w": str(spec.w),
            "omega": None if omega is None else _exact_or_num(omega, prec),
            "holds": appell_criterion(fam, spec.f.c, spec.w),
        }
    return {"scale": str(beta.scale), "per_p": per_p, "all_hold": first is None,
            "first_violation": first, "criterion": criterion}


def verification_json(report, P, prec) -> dict:
    return {
        "P": P,
        "n_grid": report.n_grid,
        "residuals": [fmt(r, prec) for r in report.residuals],
        "residual_error_bounds": [fmt(r.error, prec) for r in report.residuals],
        "fitted_slope": report.fitted_slope,
        "expected_slope": report.expected_slope,
        "slope_ok": report.within(SLOPE_TOLERANCE),
        "noise_dominated": report.noise_dominated,
        "precision_floor": report.precision_floor,
    }


def _emit(report: dict, out, fmt_name: str = "json"):
    text = coefficients_csv(report) if fmt_name == "csv" else json.dumps(report, indent=2) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


# -- commands -----------------------------------------------------------------

def _load(args) -> ProblemSpec:
    if args.registry:
        doc = {"f": {"kind": "registry", "name": args.registry}}
        return parse_problem(doc, args.precision_bits, args.orders)
    if not args.specfile:
        raise SpecFileError("$", "give a spec file or --registry NAME")
    return load_problem(args.specfile, args.precision_bits, args.orders)


def _base_report(problem: ProblemSpec):
    result = expansion_coefficients(problem.spec)
    for w in result.warnings:
        log.warning(w)
    report = coefficients_json(result)
    report["spec"]["f"] = problem.f_description
    return result, report


def cmd_coeffs(args) -> int:
    problem = _load(args)
    result, report = _base_report(problem)
    report["warnings"] = list(result.warnings)
    _emit(report, args.out, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    problem = _load(args)
    spec = problem.spec
    result, report = _base_report(problem)
    warnings = list(result.warnings)
    grid = tuple(args.n_grid) if args.n_grid else problem.verify.n_grid
    P = spec.orders
    code = EXIT_OK
    try:
        rep = decay_check(spec, P, grid, expansion=result, tol=problem.verify.quadrature_tol)
        report["verification"] = verification_json(rep, P, spec.precision)
        if not rep.within(SLOPE_TOLERANCE):
            code = EXIT_SLOPE
            log.error("fitted slope %.3f misses %d by more than %.1f",
                      rep.fitted_slope, rep.expected_slope, SLOPE_TOLERANCE)
    except DegenerateFit as exc:
        report["verification"] = {"P": P, "n_grid": list(grid), "fitted_slope": None,
                                  "expected_slope": -(P + 1), "slope_ok": None,
                                  "precision_floor": True, "detail": str(exc)}
        warnings.append(f"residuals at precision floor: {exc}")
    report["warnings"] = warnings
    _emit(report, args.out)
    return code


def cmd_symmetry(args) -> int:
    problem = _load(args)
    spec = problem.spec
    if spec.q != 1:
        raise DomainError(f"the symmetry reduction applies only at q = 1, got q = {spec.q}")
    report = {"spec": {"name": spec.name, "q": str(spec.q), "w": str(spec.w), "orders": spec.orders,
                       "precision_bits": spec.precision, "f": problem.f_description},
              "symmetry": symmetry_json(problem, spec.orders), "warnings": []}
    _emit(report, args.out)
    return EXIT_OK


def cmd_mzv(args) -> int:
    m, p = args.m, args.p
    try:
        z = parse_scalar(args.z)
    except ValueError as exc:
        raise DomainError(f"--z: {exc}") from None
    prec = args.precision_bits or DEFAULT_PRECISION
    value = nielsen_S(m, p, z, prec)
    out = {"m": m, "p": p, "z": str(z), "value": fmt(value, prec), "error_bound": fmt(value.error, prec)}
    text = f"S_({m},{p})({z}) = {fmt(value, prec)}"
    if z == 1:
        form = mzv_height_one(m, p)
        out["identification"] = f"s_({m},{p}) = {mzv_label(m, p)}"
        out["zeta_form"] = form.render()
        text = f"{mzv_label(m, p)} = {form.render()} = {fmt(value, prec)}"
    elif z == -1:
        sign = "" if p % 2 == 0 else "-"
        out["identification"] = f"S_({m},{p})(-1) = {sign}sigma_({m},{p}) = {sign}{mzv_label(m, p, True)}"
        text = f"S_({m},{p})(-1) = {sign}{mzv_label(m, p, True)} = {fmt(value, prec)}"
        if p == 1:
            out["zeta_form"] = f"(2^-{m} - 1)*zeta({m + 1})"
            text = f"S_({m},1)(-1) = (2^-{m} - 1)*zeta({m + 1}) = {fmt(value, prec)}"
    if args.format == "json":
        _emit(out, args.out)
    else:
        print(text)
    return EXIT_OK


# -- entry point ----------------------------------------------------------------

def _grid(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="intasym",
                                     description="Asymptotic expansions of int_0^1 f(u)(1+q u^n)^(w/n) du")
    parser.add_argument("--precision-bits", type=int, default=None,
                        help=f"working precision in bits (default {DEFAULT_PRECISION} or the spec file's)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_spec(p):
        p.add_argument("specfile", nargs="?", help="JSON problem description, '-' for stdin")
        p.add_argument("--registry", choices=registry_names(), help="use a built-in example instead of a file")
        p.add_argument("--orders", type=int, default=None, help=f"expansion order P (default {DEFAULT_ORDERS})")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("coeffs", help="coefficient table a_2..a_P")
    with_spec(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("verify", help="coefficients plus quadrature decay check")
    with_spec(p)
    p.add_argument("--n-grid", type=_grid, default=None, help="comma-separated n values, e.g. 16,32,64")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("symmetry", help="q=1 pair-sum symmetry and rho tables")
    with_spec(p)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("mzv", help="evaluate a Nielsen polylogarithm S_(m,p)(z)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--z", default="1", help="argument in [-1, 1]; rationals as p/q")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_mzv)
    return parser


def _configure_logging(verbose: bool):
    # bound to the current stderr on every call so repeated in-process runs stay independent
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("intasym: %(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except (QuadratureError, ArithmeticError) as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERIC
    except (IntasymError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
