"""Command-line front end.

Verbs: fit, orthpoly, solve-fde, price, reproduce, noise.  Results go to
stdout (and ``--out``) as a single JSON document; floats keep full double
precision via round-trip repr.  Exit codes: 0 success, 2 input error,
3 numerical failure.
"""

import argparse
import csv
import json
import sys

import numpy as np

from .errors import (
    ConditioningError,
    ConvergenceError,
    DegeneracyError,
    DomainError,
    FraclsqError,
    UsageError,
)
from .fraccalc import FdeProblem, solve_fde
from .functions import NAMED_FUNCTIONS, lookup
from .lsq import DataSet, add_noise, fit_continuous_normal, fit_discrete_normal, \
    fit_projection, predict
from .orthobasis import WeightSpec, build_continuous, build_discrete
from .pricing import GbmConfig, LsmcJob, price_american_put
from .reproduce import TABLE_JOBS, run_table
from . import quadrature as quad

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


class InputError(Exception):
    """Invalid file, option or CSV content; maps to exit code 2."""


# ---------------------------------------------------------------------------
# small parsers
# ---------------------------------------------------------------------------

def _parse_interval(text):
    try:
        lo, hi = (float(p) for p in text.split(":"))
    except ValueError:
        raise InputError(f"--interval expects lo:hi, got {text!r}") from None
    return lo, hi


def _parse_lambdas(text):
    try:
        return [float(p) for p in text.split(",") if p]
    except ValueError:
        raise InputError(f"--lambda expects a comma-separated number list, got {text!r}") \
            from None


def _parse_weight(text, lo, hi):
    if text == "unit":
        return WeightSpec.unit(lo, hi)
    if text.startswith("jacobi:"):
        parts = text.split(":")
        if len(parts) != 3:
            raise InputError(f"--weight jacobi expects jacobi:bl:br, got {text!r}")
        try:
            bl, br = float(parts[1]), float(parts[2])
        except ValueError:
            raise InputError(f"non-numeric jacobi exponents in {text!r}") from None
        return WeightSpec.jacobi(bl, br, lo, hi)
    raise InputError(f"unknown weight {text!r}; use unit or jacobi:bl:br")


def read_xy_csv(path):
    """Read a CSV with header x,y[,w]; returns a DataSet.

    Malformed content raises InputError naming the offending row/column.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot open {path}: {exc}") from None
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError(f"{path}: empty file") from None
        cols = [h.strip().lower() for h in header]
        if cols[:2] != ["x", "y"] or len(cols) > 3 or (len(cols) == 3 and cols[2] != "w"):
            raise InputError(f"{path}: header must be x,y[,w], got {header}")
        xs, ys, ws = [], [], []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(cols):
                raise InputError(f"{path}:{lineno}: expected {len(cols)} fields, "
                                 f"got {len(row)}")
            vals = []
            for col, cell in zip(cols, row):
                try:
                    vals.append(float(cell))
                except ValueError:
                    raise InputError(
                        f"{path}:{lineno}: column {col!r} is not numeric: {cell!r}"
                    ) from None
            xs.append(vals[0])
            ys.append(vals[1])
            if len(cols) == 3:
                ws.append(vals[2])
        if not xs:
            raise InputError(f"{path}: no data rows")
    try:
        return DataSet(np.array(xs), np.array(ys),
                       np.array(ws) if ws else None)
    except DomainError as exc:
        raise InputError(f"{path}: {exc}") from None


def read_points_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            pts = [float(line) for line in fh if line.strip()]
    except OSError as exc:
        raise InputError(f"cannot open {path}: {exc}") from None
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    if not pts:
        raise InputError(f"{path}: no points")
    return np.array(pts)


def _emit(doc, out_path):
    text = json.dumps(doc, indent=2)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return [float(v) for v in x]
    if isinstance(x, (np.floating, np.integer)):
        return float(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _fit_doc(fit, predictions):
    return {
        "basis": fit.basis,
        "lambda": fit.lam,
        "coeffs": _jsonable(fit.coeffs),
        "error": fit.error,
        "cond": fit.cond,
        "interval": [fit.lo, fit.hi],
        "predictions": [{"x": x, "value": v} for x, v in predictions],
    }


def _write_curve(path, fit, lo, hi, samples=201):
    xs = np.linspace(lo, hi, samples)
    ys = predict(fit, xs)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y_fit"])
        for x, y in zip(xs, ys):
            writer.writerow([repr(float(x)), repr(float(y))])


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def cmd_fit(args):
    lams = _parse_lambdas(args.lam)
    predict_at = [float(p) for p in args.predict.split(",")] if args.predict else []
    results = []
    data = None
    if args.input:
        data = read_xy_csv(args.input)
    elif not args.function:
        raise InputError("fit needs --input CSV or --function NAME")

    if data is not None and args.weight != "unit":
        raise InputError("CSV fits take weights from the w column; "
                         "--weight applies to --function fits")

    for lam in lams:
        if data is not None:
            if args.method == "projection":
                weights = data.weight_array()
                basis = build_discrete(weights, data.xs, lam, args.degree)
                fit = fit_projection(data, basis)
            else:
                fit = fit_discrete_normal(data, lam, args.degree)
        else:
            fn = lookup(args.function)
            lo, hi = _parse_interval(args.interval)
            if args.method == "projection":
                weight = _parse_weight(args.weight, lo, hi)
                basis = build_continuous(weight, lam, args.degree,
                                         quad_points=args.quad_points)
                fit = fit_projection(fn, basis)
            else:
                if args.weight != "unit":
                    raise InputError(
                        "the continuous normal equations use the unit weight; "
                        "use --method projection for weighted fits")
                exps = fn.exponents + tuple(lam * i for i in range(args.degree + 1))
                step = quad.common_step(exps) if lo == 0.0 else None
                if step is not None and 0 < step <= 2:
                    rule = quad.substituted_rule(args.quad_points, step, hi)
                elif lo == 0.0:
                    rule = quad.substituted_rule(args.quad_points, lam, hi)
                else:
                    rule = quad.gauss_legendre(args.quad_points, lo, hi)
                fit = fit_continuous_normal(fn, lo, hi, lam, args.degree, rule=rule)
        preds = [(x, predict(fit, x)) for x in predict_at]
        results.append((fit, preds))

    params = {
        "lambda": lams, "degree": args.degree, "method": args.method,
        "input": args.input, "function": args.function,
    }
    if len(results) == 1:
        doc = {"job": "fit", "params": params, **_fit_doc(*results[0])}
    else:
        doc = {"job": "fit", "params": params,
               "results": [_fit_doc(f, p) for f, p in results]}
    if args.curve_out:
        fit0 = results[0][0]
        _write_curve(args.curve_out, fit0, fit0.lo, fit0.hi)
    _emit(doc, args.out)
    return EXIT_OK


def cmd_orthpoly(args):
    lam = float(args.lam)
    lo, hi = _parse_interval(args.interval)
    if args.points_file:
        points = read_points_file(args.points_file)
        basis = build_discrete(None, points, lam, args.degree)
    else:
        weight = _parse_weight(args.weight, lo, hi)
        basis = build_continuous(weight, lam, args.degree,
                                 quad_points=args.quad_points)
    doc = {
        "job": "orthpoly",
        "params": {"lambda": lam, "degree": args.degree, "weight": args.weight,
                   "interval": [lo, hi], "mode": basis.mode},
        "B": _jsonable(basis.B),
        "C": _jsonable(basis.C),
        "sq_norms": _jsonable(basis.sq_norms),
        "polys": [_jsonable(p.coeffs) for p in basis.polys],
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_solve_fde(args):
    rhs = lookup(args.rhs)
    try:
        alphas = [float(a) for a in args.alphas.split(",") if a]
        coeffs = [float(c) for c in args.term_coeffs.split(",") if c] \
            if args.term_coeffs else [1.0] * len(alphas)
    except ValueError:
        raise InputError("--alphas/--term-coeffs expect comma-separated numbers") \
            from None
    if len(coeffs) != len(alphas):
        raise InputError("--term-coeffs must match --alphas in length")
    prob = FdeProblem(terms=tuple(zip(alphas, coeffs)), reaction=args.reaction,
                      rhs=rhs.frac if rhs.frac is not None else rhs.fn,
                      initial_value=args.y0)
    fit = solve_fde(prob, float(args.lam), args.degree, basis_kind=args.basis)
    grid = np.linspace(0.0, 1.0, 11)
    doc = {
        "job": "solve-fde",
        "params": {"alphas": alphas, "term_coeffs": coeffs,
                   "reaction": args.reaction, "y0": args.y0, "rhs": args.rhs,
                   "lambda": float(args.lam), "degree": args.degree,
                   "basis": args.basis},
        "coeffs": _jsonable(fit.coeffs),
        "error": fit.error,
        "cond": fit.cond,
        "solution_samples": [{"x": float(x), "value": float(predict(fit, x))}
                             for x in grid],
    }
    if args.curve_out:
        _write_curve(args.curve_out, fit, 0.0, 1.0)
    _emit(doc, args.out)
    return EXIT_OK


def cmd_price(args):
    job = LsmcJob(
        gbm=GbmConfig(s0=args.s0, r=args.rate, sigma=args.sigma,
                      horizon=args.horizon, steps=args.steps, paths=args.paths,
                      seed=args.seed),
        strike=args.strike, lam=float(args.lam), basis_degree=args.degree)
    res = price_american_put(job)
    doc = {
        "job": "price",
        "params": {"s0": args.s0, "rate": args.rate, "sigma": args.sigma,
                   "strike": args.strike, "horizon": args.horizon,
                   "steps": args.steps, "paths": args.paths, "seed": args.seed,
                   "lambda": float(args.lam), "degree": args.degree},
        "price": res.price,
        "std_error": res.std_error,
        "european": res.european,
        "diagnostics": {"skipped_dates": list(res.skipped_dates)},
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_reproduce(args):
    kwargs = {}
    if args.qualitative:
        kwargs["qualitative"] = True
    if args.seed is not None:
        kwargs["seed"] = args.seed
    try:
        rows = run_table(args.table, **kwargs)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    for row in rows:
        print(row.format())
    n_fail = sum(not r.passed for r in rows)
    print(f"{len(rows) - n_fail}/{len(rows)} checks passed")
    if args.out:
        doc = {"job": "reproduce", "table": args.table.upper(),
               "rows": [{"label": r.label, "computed": r.computed,
                         "reference": r.reference, "passed": r.passed,
                         "note": r.note} for r in rows]}
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK if n_fail == 0 else EXIT_NUMERICAL


def cmd_noise(args):
    data = read_xy_csv(args.input)
    noisy = add_noise(data, args.percent, args.seed)
    rows = [["x", "y"]] + [[repr(float(x)), repr(float(y))]
                           for x, y in zip(noisy.xs, noisy.ys)]
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerows(rows)
    else:
        csv.writer(sys.stdout).writerows(rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="fraclsq",
        description="Least-squares fitting, fractional ODE solving and LSMC "
                    "pricing on fractional monomial ladders.")
    sub = p.add_subparsers(dest="verb", required=True)

    fit = sub.add_parser("fit", help="fit CSV data or a named function")
    fit.add_argument("--input", help="CSV file with header x,y[,w]")
    fit.add_argument("--function", help="named analytic function: "
                     + ", ".join(sorted(NAMED_FUNCTIONS)))
    fit.add_argument("--lambda", dest="lam", required=True,
                     help="exponent step, or comma-separated sweep list")
    fit.add_argument("--degree", type=int, required=True, help="ladder degree n")
    fit.add_argument("--interval", default="0:1", help="lo:hi for continuous fits")
    fit.add_argument("--method", choices=("normal", "projection"), default="normal")
    fit.add_argument("--weight", default="unit",
                     help="unit or jacobi:bl:br (continuous projection fits)")
    fit.add_argument("--quad-points", type=int, default=64)
    fit.add_argument("--predict", help="comma-separated abscissae to predict")
    fit.add_argument("--out", help="write the JSON result document here")
    fit.add_argument("--curve-out", help="write fitted-curve samples (CSV x,y_fit)")
    fit.set_defaults(run=cmd_fit)

    orth = sub.add_parser("orthpoly", help="build a weight-orthogonal ladder")
    orth.add_argument("--lambda", dest="lam", required=True)
    orth.add_argument("--degree", type=int, required=True)
    orth.add_argument("--weight", default="unit", help="unit or jacobi:bl:br")
    orth.add_argument("--interval", default="0:1")
    orth.add_argument("--points-file", help="discrete mode: one abscissa per line")
    orth.add_argument("--quad-points", type=int, default=96)
    orth.add_argument("--out")
    orth.set_defaults(run=cmd_orthpoly)

    fde = sub.add_parser("solve-fde", help="residual least-squares FDE solve")
    fde.add_argument("--alphas", required=True, help="comma-separated Caputo orders")
    fde.add_argument("--term-coeffs", help="comma-separated term coefficients "
                     "(default all 1)")
    fde.add_argument("--reaction", type=float, default=0.0)
    fde.add_argument("--rhs", required=True, help="named right-hand side function")
    fde.add_argument("--y0", type=float, default=0.0)
    fde.add_argument("--lambda", dest="lam", required=True)
    fde.add_argument("--degree", type=int, required=True)
    fde.add_argument("--basis", choices=("monomial", "muntz_legendre"),
                     default="monomial")
    fde.add_argument("--out")
    fde.add_argument("--curve-out")
    fde.set_defaults(run=cmd_solve_fde)

    price = sub.add_parser("price", help="LSMC American put")
    price.add_argument("--s0", type=float, required=True)
    price.add_argument("--rate", type=float, required=True)
    price.add_argument("--sigma", type=float, required=True)
    price.add_argument("--strike", type=float, required=True)
    price.add_argument("--horizon", type=float, required=True, help="years")
    price.add_argument("--steps", type=int, default=60)
    price.add_argument("--paths", type=int, default=10000)
    price.add_argument("--lambda", dest="lam", required=True)
    price.add_argument("--degree", type=int, default=2)
    price.add_argument("--seed", type=int, default=0)
    price.add_argument("--out")
    price.set_defaults(run=cmd_price)

    rep = sub.add_parser("reproduce", help="re-run a reference table")
    rep.add_argument("table", help="one of " + ", ".join(sorted(TABLE_JOBS)))
    rep.add_argument("--qualitative", action="store_true",
                     help="include seeded-noise informational rows")
    rep.add_argument("--seed", type=int, help="override the job seed")
    rep.add_argument("--out")
    rep.set_defaults(run=cmd_reproduce)

    noise = sub.add_parser("noise", help="inject seeded multiplicative noise")
    noise.add_argument("--input", required=True)
    noise.add_argument("--percent", type=float, required=True)
    noise.add_argument("--seed", type=int, default=0)
    noise.add_argument("--out")
    noise.set_defaults(run=cmd_noise)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.run(args)
    except (InputError, UsageError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except (ConditioningError, DegeneracyError, ConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FraclsqError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
