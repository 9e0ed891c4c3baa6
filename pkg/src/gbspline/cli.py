"""Command-line front end: sampling, refinement, and diagnostics on curve files.

Exit codes: 0 success (and passing checks), 1 domain error (reported by
class name on stderr) or failed checks, 2 I/O or parse errors.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .basis import (
    SplineCurve,
    build_local_basis,
    eval_basis_function,
    form_piecewise,
    nonzero_basis_values,
)
from .curvefile import load_curve, save_curve
from .errors import CurveFileError, GBSplineError
from .poly import DEFAULT_TOL
from .refine import COEF_TOL_FACTOR, elevate_degree, greville_abscissae, insert_knots


def _tol_default():
    env = os.environ.get("GBS_TOL")
    return float(env) if env else DEFAULT_TOL


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    lines += [",".join(repr(float(x)) for x in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sample_points(kv, samples):
    reg = kv.active_region()
    return np.linspace(reg[0], reg[-1], max(samples, 0) + 1)


def _cmd_eval(args, tol, coef_tol):
    kv, fam, cpts = load_curve(args.curve, tol)
    basis = build_local_basis(kv, fam, tol)
    rows = []
    for t in _sample_points(kv, args.samples):
        first, vals = nonzero_basis_values(basis, float(t), tol)
        rows.append([t, *(vals @ cpts[first : first + kv.degree + 1])])
    _write_csv(args.out, ["t"] + [f"f{k}" for k in range(cpts.shape[1])], rows)
    return 0


def _cmd_basis(args, tol, coef_tol):
    kv, fam, _ = load_curve(args.curve, tol)
    basis = build_local_basis(kv, fam, tol)
    rows = []
    for t in _sample_points(kv, args.samples):
        rows.append([t] + [eval_basis_function(basis, i, float(t), tol)
                           for i in range(kv.n_basis)])
    _write_csv(args.out, ["t"] + [f"N{i}" for i in range(kv.n_basis)], rows)
    return 0


def _refine_componentwise(kv, fam, cpts, tol, coef_tol, **kwargs):
    basis = build_local_basis(kv, fam, tol)
    columns = []
    for k in range(cpts.shape[1]):
        curve = SplineCurve(kv=kv, fam=fam, cpts=cpts[:, k])
        if "new_knots" in kwargs:
            out = insert_knots(curve, basis, kwargs["new_knots"], tol, coef_tol)
        else:
            out = elevate_degree(curve, basis, kwargs["by"], tol, coef_tol)
        columns.append(out.cpts)
    return out.kv, out.fam, np.stack(columns, axis=1)


def _cmd_insert(args, tol, coef_tol):
    kv, fam, cpts = load_curve(args.curve, tol)
    kv1, fam1, cpts1 = _refine_componentwise(kv, fam, cpts, tol, coef_tol,
                                             new_knots=args.at)
    save_curve(args.out, kv1, fam1, cpts1)
    return 0


def _cmd_elevate(args, tol, coef_tol):
    kv, fam, cpts = load_curve(args.curve, tol)
    kv1, fam1, cpts1 = _refine_componentwise(kv, fam, cpts, tol, coef_tol,
                                             by=args.by)
    save_curve(args.out, kv1, fam1, cpts1)
    return 0


def _cmd_greville(args, tol, coef_tol):
    kv, fam, _ = load_curve(args.curve, tol)
    basis = build_local_basis(kv, fam, tol)
    for g in greville_abscissae(basis, tol, coef_tol):
        print(repr(float(g)))
    return 0


def _cmd_check(args, tol, coef_tol):
    kv, fam, cpts = load_curve(args.curve, tol)
    basis = build_local_basis(kv, fam, tol)
    ts = _sample_points(kv, 500)
    worst_pu = 0.0
    for t in ts:
        _, vals = nonzero_basis_values(basis, float(t), tol)
        worst_pu = max(worst_pu, abs(float(vals.sum()) - 1.0))
    worst_jump = 0.0
    breaks = kv.active_region()
    for k in range(cpts.shape[1]):
        piece = form_piecewise(cpts[:, k], basis)
        for j in range(1, len(breaks) - 1):
            if breaks[j] - breaks[j - 1] <= tol or breaks[j + 1] - breaks[j] <= tol:
                continue
            x = float(breaks[j])
            left = piece.value(np.nextafter(x, -np.inf), tol)
            worst_jump = max(worst_jump, abs(piece.value(x, tol) - left))
    scale = 1.0 + float(np.max(np.abs(cpts)))
    ok = worst_pu <= 1e-9 and worst_jump <= 1e-8 * scale
    print(f"partition of unity: max deviation {worst_pu:.3e}")
    print(f"breakpoint continuity: max jump {worst_jump:.3e}")
    print("OK" if ok else "FAIL")
    return 0 if ok else 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="zero-length interval tolerance "
                             "(default 1e-10, or $GBS_TOL)")
    common.add_argument("--coef-tol", type=float, default=None,
                        help="coefficient agreement tolerance (default tol * 1e4)")

    parser = argparse.ArgumentParser(
        prog="gbspline",
        description="Generalized B-spline curves: evaluation and refinement.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="sample a curve to CSV")
    s.add_argument("--curve", required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=_cmd_eval)

    s = sub.add_parser("insert", parents=[common], help="insert knots")
    s.add_argument("--curve", required=True)
    s.add_argument("--at", type=float, action="append", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=_cmd_insert)

    s = sub.add_parser("elevate", parents=[common], help="raise the degree")
    s.add_argument("--curve", required=True)
    s.add_argument("--by", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=_cmd_elevate)

    s = sub.add_parser("greville", parents=[common],
                       help="print control-point abscissae, one per line")
    s.add_argument("--curve", required=True)
    s.set_defaults(func=_cmd_greville)

    s = sub.add_parser("basis", parents=[common],
                       help="sample every basis function to CSV")
    s.add_argument("--curve", required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=_cmd_basis)

    s = sub.add_parser("check", parents=[common],
                       help="partition-of-unity and continuity diagnostics")
    s.add_argument("--curve", required=True)
    s.set_defaults(func=_cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = args.tol if args.tol is not None else _tol_default()
        coef_tol = args.coef_tol if args.coef_tol is not None else tol * COEF_TOL_FACTOR
        return args.func(args, tol, coef_tol)
    except CurveFileError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except GBSplineError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
