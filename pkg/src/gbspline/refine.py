"""Refinement by projection between local representations.

A curve over a source knot vector is rewritten in the local coordinates of
a target knot vector (same active region, enlarged spline space), then one
small linear system per positive-length target interval recovers the
coefficients of the nonzero target basis functions; anti-diagonal averaging
aggregates the per-interval results.  Knot insertion, degree elevation, and
any simultaneous combination all ride on the same pipeline.

Per-interval solves are independent; aggregation is a sequential reduction.
"""
from __future__ import annotations

import warnings
from bisect import bisect_right

import numpy as np

from .basis import (
    LocalBasis,
    PiecewiseCurve,
    SplineCurve,
    build_local_basis,
    form_piecewise,
    full_reverse_diagonals,
    reverse_diagonal_averages,
)
from .errors import (
    DegreeTooSmall,
    FamilyNotClosedUnderDerivative,
    InconsistentCoefficient,
    IntervalStraddle,
    KnotOutsideActiveRegion,
    MultiplicityOverflow,
    SingularGeneratorSystem,
    SingularLocalSystem,
    TaylorMismatch,
)
from .knots import KnotFunctionFamily, KnotVector, build_family, build_integral_table
from .poly import (
    DEFAULT_TOL,
    elevate_polys,
    left_taylor_series,
    restrict_poly,
    right_taylor_series,
)

COEF_TOL_FACTOR = 1e4   # coefficient-agreement tolerance = tol * this
PIVOT_RATIO_WARN = 1e12


def _solve(matrix, rhs, error):
    """Dense Gaussian elimination with partial pivoting for tiny systems."""
    a = np.array(matrix, dtype=float)
    b = np.array(rhs, dtype=float)
    n = len(b)
    scale = max(1.0, float(np.abs(a).max()))
    pivots = np.empty(n)
    for col in range(n):
        r = col + int(np.argmax(np.abs(a[col:, col])))
        if abs(a[r, col]) <= 1e-13 * scale:
            raise error(f"system is singular at column {col}")
        if r != col:
            a[[col, r]] = a[[r, col]]
            b[[col, r]] = b[[r, col]]
        pivots[col] = a[col, col]
        if col + 1 < n:
            f = a[col + 1 :, col] / a[col, col]
            a[col + 1 :] -= np.outer(f, a[col])
            b[col + 1 :] -= f * b[col]
    ratio = float(np.abs(pivots).max() / np.abs(pivots).min())
    if ratio > PIVOT_RATIO_WARN:
        warnings.warn(f"poorly conditioned local system (pivot ratio {ratio:.2e})",
                      RuntimeWarning, stacklevel=2)
    x = np.empty(n)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1 :] @ x[row + 1 :]) / a[row, row]
    return x


def refine_local(curve: PiecewiseCurve, dst_breaks, tol=DEFAULT_TOL) -> PiecewiseCurve:
    """Reindex a piecewise curve onto finer breakpoints.

    Polynomial terms are re-expanded over each contained positive-length
    target interval; generator coefficient rows are copied unchanged from
    the source interval containing each target.  Zero-length targets get
    zero rows.
    """
    src = np.asarray(curve.breaks, dtype=float)
    dst = np.asarray(dst_breaks, dtype=float)
    width = curve.poly_parts.shape[1]
    num = len(dst) - 1
    poly = np.zeros((num, width))
    gen = np.zeros((num, 2))
    pos_rows = [i for i in range(len(src) - 1) if src[i + 1] - src[i] > tol]
    pos_lefts = [src[i] for i in pos_rows]
    for j in range(num):
        a, b = dst[j], dst[j + 1]
        if b - a <= tol:
            continue
        idx = bisect_right(pos_lefts, a + tol) - 1
        if idx < 0:
            raise IntervalStraddle(f"[{a}, {b}] precedes every source interval")
        row = pos_rows[idx]
        lo, hi = src[row], src[row + 1]
        if a < lo - tol or b > hi + tol:
            raise IntervalStraddle(
                f"[{a}, {b}] crosses the source breakpoint at {hi}")
        poly[j] = restrict_poly(curve.poly_parts[row], (lo, hi), (a, b), tol)[0]
        gen[j] = curve.gen_coefs[row]
    return PiecewiseCurve(breaks=dst, poly_parts=poly, gen_coefs=gen,
                          degree=curve.degree, fam=curve.fam)


def represent_knot_funcs(gen_coefs, tables_src, tables_dst, lens, pos,
                         coef_tol=1e-6):
    """Rewrite generator terms of a piecewise curve in the target ladders.

    `tables_src` holds ladder values of the (derivative-shifted) source
    generators on every target interval and `tables_dst` those of the target
    generators.  The top derivative of each generator term is matched against
    the target pair by a 2x2 solve at the interval endpoints; the remaining
    derivative differences are absorbed into polynomial corrections,
    reconstructed as the average of the Taylor expansions at both endpoints.
    A disagreement between the two expansions means the source generators lie
    outside the target span.

    Returns (new coefficient rows, polynomial corrections to add).
    """
    orders, num = tables_src.shape[:2]
    gen_coefs = np.asarray(gen_coefs, dtype=float)
    ivals = np.einsum("kjew,jw->kje", tables_src, gen_coefs)
    ngen = np.zeros((num, 2))
    for j in range(num):
        if pos[j]:
            ngen[j] = _solve(tables_dst[0, j], ivals[0, j], SingularGeneratorSystem)
    nints = np.einsum("kjew,jw->kje", tables_dst[1:], ngen)
    diffs = ivals[1:] - nints
    offsets = np.zeros((num, max(orders - 1, 0)))
    for j in range(num):
        if not pos[j] or orders < 2:
            continue
        left = left_taylor_series(diffs[::-1, j, 0], lens[j])
        right = right_taylor_series(diffs[::-1, j, 1], lens[j])
        scale = max(1.0, float(np.max(np.abs(left))), float(np.max(np.abs(right))))
        if np.any(np.abs(left - right) > coef_tol * scale):
            raise TaylorMismatch(
                f"endpoint reconstructions disagree on interval {j}: "
                f"{left.tolist()} vs {right.tolist()}")
        offsets[j] = 0.5 * (left + right)
    return ngen, offsets


def refine_curve(curve: PiecewiseCurve, basis: LocalBasis, tables_src, tables_dst,
                 tol=DEFAULT_TOL, coef_tol=None) -> np.ndarray:
    """Control points of a piecewise curve relative to the target basis.

    Runs the projection pipeline: reindex onto the target breakpoints, pad
    polynomial terms to the target width, rewrite generator terms, then per
    positive-length interval solve for the coefficients of the nonzero basis
    functions and aggregate by anti-diagonal averaging.
    """
    if coef_tol is None:
        coef_tol = tol * COEF_TOL_FACTOR
    kv = basis.kv
    q = kv.degree
    breaks = kv.active_region()
    lens = np.diff(breaks)
    pos = lens > tol
    expected = (q, len(lens), 2, 2)
    if tables_src.shape != expected or tables_dst.shape != expected:
        raise ValueError(f"integral tables must be shaped {expected}")

    local = refine_local(curve, breaks, tol)
    poly = elevate_polys(local.poly_parts, max(q - 2, 0))
    ngen, offsets = represent_knot_funcs(local.gen_coefs, tables_src, tables_dst,
                                         lens, pos, coef_tol)
    poly = poly + offsets

    lbases = full_reverse_diagonals(
        np.concatenate([basis.poly_parts, basis.gen_coefs], axis=2))
    lfunc = np.concatenate([poly, ngen], axis=1)
    coefs = np.full((len(lens), q + 1), np.nan)
    for j in range(len(lens)):
        if pos[j]:
            coefs[j] = _solve(lbases[j].T, lfunc[j], SingularLocalSystem)
    return reverse_diagonal_averages(coefs, coef_tol)


# drivers ----------------------------------------------------------------------

def _refined_knots(kv: KnotVector, inserts, raise_by, tol):
    """Target knot vector: sorted insertion plus degree-raise repetitions."""
    reg = kv.active_region()
    a, b = float(reg[0]), float(reg[-1])
    groups: list[list[float]] = []   # [value, multiplicity]
    for x in reg[1:-1]:
        if groups and abs(x - groups[-1][0]) <= tol:
            groups[-1][1] += 1
        else:
            groups.append([float(x), 1])
    for x in inserts:
        x = float(x)
        if not (a + tol < x < b - tol):
            raise KnotOutsideActiveRegion(
                f"knot {x} not strictly inside ({a}, {b})")
        idx = bisect_right([g[0] for g in groups], x)
        if idx > 0 and abs(x - groups[idx - 1][0]) <= tol:
            groups[idx - 1][1] += 1
        else:
            groups.insert(idx, [x, 1])
    p = kv.degree
    for value, mult in groups:
        if mult > p + 1:
            raise MultiplicityOverflow(
                f"knot {value} would reach multiplicity {mult} > {p + 1}")
    q = p + raise_by
    interior = []
    for value, mult in groups:
        interior.extend([value] * (mult + raise_by))
    return np.array([a] * (q + 1) + interior + [b] * (q + 1))


def derive_family(fam: KnotFunctionFamily, knots, tol=DEFAULT_TOL) -> KnotFunctionFamily:
    """Family for refined knots: every positive interval inherits the kind and
    frequency of the source span containing it."""
    knots = np.asarray(knots, dtype=float)
    kinds, omegas = [], []
    for j in range(len(knots) - 1):
        if knots[j + 1] - knots[j] <= tol:
            continue
        slot = fam.slot_containing(knots[j], knots[j + 1], tol)
        if slot is None:
            raise IntervalStraddle(
                f"[{knots[j]}, {knots[j + 1]}] crosses a source span boundary")
        kinds.append(fam.kinds[slot])
        omegas.append(float(fam.omegas[slot]))
    return build_family(knots, kinds=tuple(kinds), omegas=omegas, tol=tol)


def refined_spline(curve: SplineCurve, basis: LocalBasis | None = None, *,
                   insert=(), elevate_by=0, tol=DEFAULT_TOL,
                   coef_tol=None) -> SplineCurve:
    """Represent `curve` over a refined knot vector.

    Knot insertion, a degree raise, or both at once run through a single
    projection.  Raising the degree repeats every interior breakpoint so the
    original continuity is preserved, and requires generator derivatives that
    still span the target local spaces (true for the trigonometric and
    exponential kinds, never for linear).
    """
    p = curve.kv.degree
    if p < 2:
        raise DegreeTooSmall("refinement needs degree >= 2")
    if elevate_by < 0:
        raise ValueError("elevate_by must be nonnegative")
    if elevate_by > 0 and any(k == "linear" for k in curve.fam.kinds):
        raise FamilyNotClosedUnderDerivative(
            "derivatives of linear generators collapse; cannot raise the degree")
    q = p + elevate_by
    knots1 = _refined_knots(curve.kv, insert, elevate_by, tol)
    kv1 = KnotVector(knots1, q)
    fam1 = derive_family(curve.fam, knots1, tol)
    if basis is None:
        basis = build_local_basis(curve.kv, curve.fam, tol)
    piece = form_piecewise(curve.cpts, basis)
    basis1 = build_local_basis(kv1, fam1, tol)
    breaks1 = kv1.active_region()
    tables_src = build_integral_table(curve.fam, breaks1, q - p, q - 1, tol)
    tables_dst = build_integral_table(fam1, breaks1, 0, q - 1, tol)
    cpts1 = refine_curve(piece, basis1, tables_src, tables_dst, tol, coef_tol)
    return SplineCurve(kv=kv1, fam=fam1, cpts=cpts1)


def insert_knots(curve: SplineCurve, basis: LocalBasis | None, new_knots,
                 tol=DEFAULT_TOL, coef_tol=None) -> SplineCurve:
    """Insert knots strictly inside the active region, preserving the curve."""
    return refined_spline(curve, basis, insert=tuple(new_knots), tol=tol,
                          coef_tol=coef_tol)


def elevate_degree(curve: SplineCurve, basis: LocalBasis | None, by,
                   tol=DEFAULT_TOL, coef_tol=None) -> SplineCurve:
    """Raise the curve degree by `by` >= 1, preserving the curve."""
    if by < 1:
        raise ValueError("degree raise must be at least 1")
    return refined_spline(curve, basis, elevate_by=int(by), tol=tol,
                          coef_tol=coef_tol)


def greville_abscissae(basis: LocalBasis, tol=DEFAULT_TOL, coef_tol=None) -> np.ndarray:
    """Coefficients expressing the identity f(t) = t in the given basis.

    Used as the x-axis positions when plotting control points.  For degree 2
    the local polynomial part is a bare constant, so the identity exists only
    when the generator integrals supply the slope (the linear kind).
    """
    p = basis.kv.degree
    if p < 2:
        raise DegreeTooSmall("identity representation needs degree >= 2")
    breaks = basis.kv.active_region()
    num = len(breaks) - 1
    poly = np.zeros((num, p - 1))
    gen = np.zeros((num, 2))
    for j in range(num):
        if breaks[j + 1] - breaks[j] <= tol:
            continue
        if p >= 3:
            poly[j, 0] = breaks[j]
            poly[j, 1] = 1.0
        else:
            slot = basis.fam.slot_containing(breaks[j], breaks[j + 1], tol)
            if basis.fam.kinds[slot] != "linear":
                raise InconsistentCoefficient(
                    "y = x lies outside the degree-2 local spaces of this family")
            # first integrals of the linear pair sum to the local coordinate
            poly[j, 0] = breaks[j]
            gen[j] = (1.0, 1.0)
    piece = PiecewiseCurve(breaks=breaks, poly_parts=poly, gen_coefs=gen,
                           degree=p, fam=basis.fam)
    tables = build_integral_table(basis.fam, breaks, 0, p - 1, tol)
    return refine_curve(piece, basis, tables, tables, tol, coef_tol)
