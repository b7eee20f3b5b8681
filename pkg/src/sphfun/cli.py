"""Command-line front end.

Subcommands: c-eval, csigma-eval, phi-eval, simple-check, verify, det-a,
limits.  Complex numbers are `re,im` pairs, grids are `start:stop:count`,
spaces are `h2 | hn:<n> | rankone:<m_alpha>,<m_2alpha> | <datum.json>`
(`ranke1:` is accepted as an alias of `rankone:`).  Output is CSV or JSON
with identical field names; identical configuration produces
byte-identical output.  Exit codes: 0 success, 1 evaluation/verification
failure, 2 usage/configuration error.
"""

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import cfun, higherrank as hr, models as md, rankone as r1
from . import rootdata as rd
from . import verify as vf
from .complexmath import HypConvergenceError, HypDomainError, PoleError
from .quadrature import (DEFAULT_SPEC, QuadratureSpec, SCHEME_GL,
                         SCHEME_TANH_SINH, ToleranceNotMetError)

EXIT_OK = 0
EXIT_EVAL = 1
EXIT_USAGE = 2

EVAL_ERRORS = (PoleError, cfun.CPoleError, HypDomainError,
               HypConvergenceError, ToleranceNotMetError,
               md.DivergentIntegralError, r1.ResonanceError,
               r1.SmallDenominatorError, ZeroDivisionError)


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"cannot parse complex number {text!r}; use re,im")


def parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid {text!r} must be start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from None
    if count < 1:
        raise UsageError("grid count must be >= 1")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + k * step for k in range(count)]


class Space:
    """Resolved space selector: a root datum, plus rank-one data and the
    ball-model dimension when applicable."""

    def __init__(self, datum, rankone_space, ball_n, label):
        self.datum = datum
        self.rankone = rankone_space
        self.ball_n = ball_n
        self.label = label


def resolve_space(args) -> Space:
    """Exactly one of --space / --datum selects the space."""
    selector = getattr(args, "space", None)
    datum_path = getattr(args, "datum", None)
    if (selector is None) == (datum_path is None):
        raise UsageError("provide exactly one of --space or --datum")
    return parse_space(selector if selector is not None else datum_path)


def parse_space(text: str) -> Space:
    low = text.lower()
    if low == "h2":
        return Space(rd.datum_a1(1, 0), r1.RankOneSpace(1, 0), 2, "h2")
    if low.startswith("hn:"):
        try:
            n = int(low.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad dimension in {text!r}") from None
        if n < 2:
            raise UsageError("hyperbolic dimension must be >= 2")
        return Space(rd.datum_a1(n - 1, 0), r1.RankOneSpace(n - 1, 0), n,
                     f"h{n}")
    if low.startswith(("rankone:", "ranke1:")):
        body = low.split(":", 1)[1]
        try:
            m, m2 = (int(x) for x in body.split(","))
        except ValueError:
            raise UsageError(
                f"bad multiplicities in {text!r}; use rankone:m,m2"
            ) from None
        ball_n = m + 1 if m2 == 0 else None
        return Space(rd.datum_a1(m, m2), r1.RankOneSpace(m, m2), ball_n,
                     f"rankone:{m},{m2}")
    if low in ("a2", "b2", "a1xa1"):
        return Space(rd.datum_by_name(low), None, None, low)
    if os.path.exists(text):
        datum = rd.datum_from_json(text)
        rank1 = None
        if datum.rank == 1 and datum.n_positive == 1:
            m, m2 = datum.mult_of(0)
            rank1 = r1.RankOneSpace(m, m2)
        return Space(datum, rank1, None, text)
    raise UsageError(f"unknown space selector {text!r}")


def lambda_values(args) -> list[complex]:
    if getattr(args, "lam", None):
        return [parse_complex(args.lam)]
    if getattr(args, "lambda_grid", None):
        im = getattr(args, "im", 0.0) or 0.0
        return [complex(x, im) for x in parse_grid(args.lambda_grid)]
    raise UsageError("provide --lambda or --lambda-grid")


def t_values(args) -> list[float]:
    if getattr(args, "t", None) is not None:
        return [args.t]
    if getattr(args, "t_grid", None):
        return parse_grid(args.t_grid)
    raise UsageError("provide --t or --t-grid")


def quad_spec(args) -> QuadratureSpec:
    kw = {}
    if getattr(args, "abs_tol", None):
        kw["abs_tol"] = args.abs_tol
    if getattr(args, "rel_tol", None):
        kw["rel_tol"] = args.rel_tol
    if getattr(args, "scheme", None):
        kw["scheme"] = args.scheme
    return QuadratureSpec(**kw) if kw else DEFAULT_SPEC


def resolve_ktype(args, space: Space) -> r1.KTypeRankOne:
    name = getattr(args, "ktype", None)
    if space.rankone is None:
        raise UsageError("K-types require a rank-one space")
    if not name:
        return r1.TRIVIAL_KTYPE
    if name.startswith("d:"):
        try:
            d_a, d_2a = (float(x) for x in name[2:].split(","))
        except ValueError:
            raise UsageError(
                f"bad explicit K-type {name!r}; use d:<d_alpha>,<d_2alpha>"
            ) from None
        return r1.ktype_from_ds(space.rankone, d_a, d_2a)
    records = r1.load_ktype_catalog(getattr(args, "catalog", None))
    try:
        return r1.catalog_lookup(records, name, space.rankone)
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def emit(rows: list[dict], args) -> None:
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    def json_value(v):
        if isinstance(v, (bool, np.bool_)):
            return bool(v)
        if isinstance(v, (float, np.floating)):
            return _fmt(v)
        if isinstance(v, (int, np.integer)):
            return int(v)
        return v

    if not rows:
        out = ""
    elif args.format == "json":
        payload = [{k: json_value(v) for k, v in row.items()}
                   for row in rows]
        out = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(col, "")) for col in columns])
        out = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _c_value_row(lam: complex, fn) -> tuple[dict, bool]:
    base = {"lambda_re": lam.real, "lambda_im": lam.imag}
    try:
        value = fn(lam)
    except EVAL_ERRORS as exc:
        base.update(c_re="", c_im="",
                    pole_flag=isinstance(exc, (PoleError, cfun.CPoleError)),
                    error=str(exc))
        return base, False
    base.update(c_re=value.real, c_im=value.imag, pole_flag=False, error="")
    return base, True


def cmd_c_eval(args) -> int:
    space = resolve_space(args)
    rows = []
    ok = True

    def evaluate(lam: complex) -> complex:
        if space.datum.rank == 1:
            m, m2 = space.datum.mult_of(0)
            return cfun.c_alpha(lam, m, m2).value
        vec = [lam] + [0j] * (space.datum.rank - 1)
        if args.lambda_vec:
            vec = [parse_complex(p) for p in args.lambda_vec.split(";")]
        return cfun.c_full(space.datum,
                           rd.SpectralParam.of(vec)).value

    for lam in lambda_values(args):
        row, good = _c_value_row(lam, evaluate)
        rows.append(row)
        ok = ok and good
    emit(rows, args)
    return EXIT_OK if ok else EXIT_EVAL


def cmd_csigma_eval(args) -> int:
    space = resolve_space(args)
    rows = []
    ok = True
    if args.word:
        word = rd.WeylElement(tuple(int(x) for x in args.word.split(",")))
        datum = space.datum

        def evaluate(lam: complex) -> complex:
            vec = [lam] + [0j] * (datum.rank - 1)
            if args.lambda_vec:
                vec = [parse_complex(p) for p in args.lambda_vec.split(";")]
            return cfun.c_sigma(datum, word,
                                rd.SpectralParam.of(vec)).value
    else:
        if space.rankone is None:
            raise UsageError("csigma-eval without --word needs a rank-one "
                             "space and --ktype")
        kt = resolve_ktype(args, space)

        def evaluate(lam: complex) -> complex:
            return r1.C_sigma_minus(space.rankone, kt, lam)

    for lam in lambda_values(args):
        row, good = _c_value_row(lam, evaluate)
        rows.append(row)
        ok = ok and good
    emit(rows, args)
    return EXIT_OK if ok else EXIT_EVAL


def cmd_phi_eval(args) -> int:
    space = resolve_space(args)
    if space.rankone is None:
        raise UsageError("phi-eval needs a rank-one space")
    kt = resolve_ktype(args, space)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in ("closed", "series", "quadrature"):
            raise UsageError(f"unknown method {m!r}")
    if "quadrature" in methods:
        if space.ball_n is None:
            raise UsageError("quadrature method needs a hyperbolic-space "
                             "selector (h2 or hn:<n>)")
        if kt.s != 0 and space.ball_n != 2:
            raise UsageError("nontrivial K-type quadrature is available "
                             "on h2 only")
    spec = quad_spec(args)
    rows = []
    ok = True
    for lam in lambda_values(args):
        for t in t_values(args):
            if t < 0:
                raise UsageError("t must be >= 0")
            row = {"t": t, "lambda_re": lam.real, "lambda_im": lam.imag}
            values = {}
            try:
                if "closed" in methods:
                    values["closed"] = r1.phi_tau(space.rankone, kt, lam, t)
                if "series" in methods and kt.s == 0 and t > 0:
                    values["series"] = r1.hc_series_eval(
                        space.rankone, lam, t, args.series_n)
                    sc = r1.hc_series_gammas(space.rankone, lam,
                                             args.series_n)
                    row["series_tail_estimate"] = \
                        r1.series_tail_estimate(sc, t)
                if "quadrature" in methods:
                    if kt.s == 0:
                        values["quadrature"] = md.quad_phi_K(
                            space.ball_n, lam, t, spec)
                    else:
                        values["quadrature"] = md.quad_eisenstein_sl2(
                            2 * kt.s, lam, t, spec)
            except EVAL_ERRORS as exc:
                row["error"] = str(exc)
                ok = False
                rows.append(row)
                continue
            row["error"] = ""
            for name in ("closed", "series", "quadrature"):
                if name in values and values[name] is not None:
                    row[f"phi_{name}_re"] = values[name].real
                    row[f"phi_{name}_im"] = values[name].imag
            present = [v for v in values.values() if v is not None]
            if len(present) > 1:
                errs = [abs(a - b) for i, a in enumerate(present)
                        for b in present[i + 1:]]
                row["max_pairwise_err"] = max(errs)
            rows.append(row)
    emit(rows, args)
    return EXIT_OK if ok else EXIT_EVAL


def cmd_simple_check(args) -> int:
    space = resolve_space(args)
    rows = []
    for lam in lambda_values(args):
        vec = [lam] + [0j] * (space.datum.rank - 1)
        param = rd.SpectralParam.of(vec)
        rows.append({
            "lambda_re": lam.real,
            "lambda_im": lam.imag,
            "simple": cfun.is_simple(space.datum, param, args.tol),
        })
    emit(rows, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = quad_spec(args)
    space = None
    ktype = None
    if args.space:
        sp = parse_space(args.space)
        if sp.rankone is None or sp.ball_n is None:
            raise UsageError("verify suites run on hyperbolic-space "
                             "selectors (h2, hn:<n>)")
        space = (sp.ball_n, sp.rankone)
        if args.ktype:
            ktype = resolve_ktype(args, sp)
    try:
        rows = vf.run_suites([args.suite], spec=spec, space=space,
                             ktype=ktype, catalog=args.catalog)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    except EVAL_ERRORS as exc:
        sys.stderr.write(f"verification aborted: {exc}\n")
        return EXIT_EVAL
    emit(rows, args)
    failed = [row for row in rows if not row["passed"]]
    if failed:
        sys.stderr.write(f"{len(failed)} of {len(rows)} checks failed\n")
        return EXIT_EVAL
    return EXIT_OK


def cmd_det_a(args) -> int:
    space = resolve_space(args)
    if not args.table:
        raise UsageError("det-a requires --table")
    table = hr.table_from_json(args.table)
    word = rd.WeylElement(table.word)
    rows = []
    ok = True
    for lam in lambda_values(args):
        vec = [lam] + [0j] * (space.datum.rank - 1)
        if args.lambda_vec:
            vec = [parse_complex(p) for p in args.lambda_vec.split(";")]
        base = {"lambda_re": lam.real, "lambda_im": lam.imag,
                "word": " ".join(str(x) for x in word.word)}
        try:
            det = hr.det_A(space.datum, word, rd.SpectralParam.of(vec),
                           table)
            base.update(det_re=det.real, det_im=det.imag, error="")
        except (EVAL_ERRORS + (ValueError,)) as exc:
            base.update(det_re="", det_im="", error=str(exc))
            ok = False
        rows.append(base)
    emit(rows, args)
    return EXIT_OK if ok else EXIT_EVAL


def cmd_limits(args) -> int:
    space = resolve_space(args)
    if space.rankone is None:
        raise UsageError("limits needs a rank-one space")
    kt = resolve_ktype(args, space)
    rows = []
    for lam in lambda_values(args):
        target = r1.limit_large_t_target(space.rankone, kt, lam)
        small_target = r1.small_t_target(space.rankone, kt, lam)
        for t in t_values(args):
            row = {"t": t, "lambda_re": lam.real, "lambda_im": lam.imag}
            try:
                big = r1.limit_large_t(space.rankone, kt, lam, t)
                row["large_t_re"] = big.real
                row["large_t_im"] = big.imag
                row["large_t_rel_err"] = abs(big - target) / abs(target)
                if t > 0:
                    ratio = r1.small_t_ratio(space.rankone, kt, lam, t)
                    row["small_t_ratio_rel_err"] = (
                        abs(ratio - small_target) / abs(small_target))
                row["error"] = ""
            except EVAL_ERRORS as exc:
                row["error"] = str(exc)
            rows.append(row)
    emit(rows, args)
    return EXIT_OK


def _add_common(p, with_t=False, with_ktype=False):
    p.add_argument("--space",
                   help="h2 | hn:<n> | rankone:<m>,<m2> | a2 | b2 | "
                        "datum-file path")
    p.add_argument("--datum", help="root-datum JSON path (alternative "
                                   "to --space)")
    p.add_argument("--lambda", dest="lam", help="spectral parameter re,im")
    p.add_argument("--lambda-grid", dest="lambda_grid",
                   help="real-part grid start:stop:count")
    p.add_argument("--im", type=float, default=0.0,
                   help="imaginary part used with --lambda-grid")
    p.add_argument("--lambda-vec", dest="lambda_vec",
                   help="full higher-rank parameter re,im;re,im;...")
    if with_t:
        p.add_argument("--t", type=float, help="radial coordinate")
        p.add_argument("--t-grid", dest="t_grid",
                       help="t grid start:stop:count")
    if with_ktype:
        p.add_argument("--ktype", help="catalog name or d:<d_a>,<d_2a>")
        p.add_argument("--catalog", help="K-type catalog JSON path")
    p.add_argument("--abs-tol", dest="abs_tol", type=float,
                   help="quadrature absolute tolerance")
    p.add_argument("--rel-tol", dest="rel_tol", type=float,
                   help="quadrature relative tolerance")
    p.add_argument("--scheme", choices=[SCHEME_GL, SCHEME_TANH_SINH],
                   help="half-line quadrature scheme")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sphfun",
        description="c-functions and spherical functions on rank-one "
                    "symmetric spaces, with quadrature verification")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("c-eval", help="evaluate the c-function")
    _add_common(p)
    p.set_defaults(fn=cmd_c_eval)

    p = sub.add_parser("csigma-eval",
                       help="partial c (with --word) or the rank-one "
                            "second coefficient (with --ktype)")
    _add_common(p, with_ktype=True)
    p.add_argument("--word", help="Weyl word as comma-separated 1-based "
                                  "simple-root indices")
    p.set_defaults(fn=cmd_csigma_eval)

    p = sub.add_parser("phi-eval", help="evaluate spherical functions")
    _add_common(p, with_t=True, with_ktype=True)
    p.add_argument("--methods", default="closed",
                   help="comma subset of closed,series,quadrature")
    p.add_argument("--series-n", dest="series_n", type=int, default=40,
                   help="series truncation order")
    p.set_defaults(fn=cmd_phi_eval)

    p = sub.add_parser("simple-check",
                       help="simplicity predicate of the parameter")
    _add_common(p)
    p.add_argument("--tol", type=float, default=cfun.SIMPLE_TOL)
    p.set_defaults(fn=cmd_simple_check)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True,
                   help="one of %s, or all" % ", ".join(sorted(vf.SUITES)))
    p.add_argument("--space", help="restrict to one space (h2, hn:<n>)")
    p.add_argument("--ktype", help="catalog K-type name")
    p.add_argument("--catalog", help="K-type catalog JSON path")
    p.add_argument("--abs-tol", dest="abs_tol", type=float)
    p.add_argument("--rel-tol", dest="rel_tol", type=float)
    p.add_argument("--scheme", choices=[SCHEME_GL, SCHEME_TANH_SINH])
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("det-a", help="determinant of the intertwining "
                                     "operator from a factor table")
    _add_common(p)
    p.add_argument("--table", help="factor-table JSON path")
    p.set_defaults(fn=cmd_det_a)

    p = sub.add_parser("limits", help="large-t and small-t diagnostics")
    _add_common(p, with_t=True, with_ktype=True)
    p.set_defaults(fn=cmd_limits)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (rd.RootDatumError, ValueError, OSError, KeyError,
            json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
