"""Knot vectors and per-interval generator pairs with exact integral ladders.

A generator pair (u, v) lives on every knot interval of positive length:
u rises from 0 to 1 across the interval and v falls from 1 to 0.  Closed
forms exist for every integral and derivative order.  Repeated integrals
are taken from the interval's left endpoint, so every positive order
vanishes there; this canonical choice keeps all downstream bookkeeping
free of integration constants.

All types are immutable after construction and safe for concurrent reads.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegreeTooSmall,
    IntervalStraddle,
    InvalidFamily,
    NotNondecreasing,
    NotOpen,
    OutOfInterval,
    TooShort,
)
from .poly import DEFAULT_TOL

KINDS = ("linear", "trigonometric", "exponential")


def readonly(a, dtype=float):
    a = np.array(a, dtype=dtype)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class KnotVector:
    """Open nondecreasing knot sequence with its spline degree."""

    knots: np.ndarray
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "knots", readonly(self.knots))
        k, p, m = self.knots, self.degree, len(self.knots)
        if p < 0:
            raise DegreeTooSmall("degree must be nonnegative")
        if m < 2 * p + 2:
            raise TooShort(f"degree {p} needs at least {2 * p + 2} knots, got {m}")
        if np.any(np.diff(k) < 0):
            raise NotNondecreasing("knots must be nondecreasing")
        if k[0] != k[p] or k[m - p - 1] != k[m - 1]:
            raise NotOpen(f"first and last knots need multiplicity {p + 1}")

    @property
    def m(self) -> int:
        return len(self.knots)

    @property
    def n_basis(self) -> int:
        return self.m - self.degree - 1

    def active_region(self) -> np.ndarray:
        """Breakpoints t_p..t_{m-p-1}, interior multiplicities retained."""
        return self.knots[self.degree : self.m - self.degree]


def validate_open_knot_vector(knots, degree) -> KnotVector:
    """Validate and wrap a raw knot sequence."""
    return KnotVector(np.asarray(knots, dtype=float), int(degree))


def active_region(kv: KnotVector) -> np.ndarray:
    return kv.active_region()


# closed-form ladders ---------------------------------------------------------
#
# _pure_* return the k-th member of a ladder d/ds L_k = L_{k-1} with L_0
# the generator itself; negative k are derivatives.  The canonical value()
# subtracts the polynomial that makes positive orders vanish at s = 0.

def _pure_linear(which, k, s, h, omega):
    if which == "u":
        if k >= 0:
            return s ** (k + 1) / (math.factorial(k + 1) * h)
        if k == -1:
            return 1.0 / h
        return 0.0
    if k > 0:
        return s**k / math.factorial(k) - s ** (k + 1) / (math.factorial(k + 1) * h)
    if k == 0:
        return (h - s) / h
    if k == -1:
        return -1.0 / h
    return 0.0


def _pure_trigonometric(which, k, s, h, omega):
    c = 1.0 / math.sin(omega * h)
    if which == "u":
        return c * math.sin(omega * s - k * math.pi / 2) / omega**k
    return c * (-1.0) ** k * math.sin(omega * (h - s) - k * math.pi / 2) / omega**k


def _pure_exponential(which, k, s, h, omega):
    c = 1.0 / math.sinh(omega * h)
    g = math.sinh if k % 2 == 0 else math.cosh
    if which == "u":
        return c * g(omega * s) / omega**k
    return c * (-1.0) ** k * g(omega * (h - s)) / omega**k


_PURE = {
    "linear": _pure_linear,
    "trigonometric": _pure_trigonometric,
    "exponential": _pure_exponential,
}


@dataclass(frozen=True, eq=False)
class KnotFunctionFamily:
    """Generator pairs for the positive-length intervals of a knot sequence.

    `slots[j]` maps global knot interval j to a row of `spans`/`kinds`/
    `omegas`, or -1 where the interval has zero length and carries no
    generators.
    """

    spans: np.ndarray   # (n_spans, 2) endpoints
    kinds: tuple
    omegas: np.ndarray
    slots: np.ndarray   # (number of knot intervals,)

    @property
    def n_spans(self) -> int:
        return len(self.spans)

    def slot_for_interval(self, j) -> int:
        return int(self.slots[j])

    def slot_containing(self, a, b, tol=DEFAULT_TOL):
        """Slot whose span contains [a, b], or None if it straddles spans."""
        if self.n_spans == 0:
            return None
        idx = bisect_right(self.spans[:, 0], a + tol) - 1
        if idx < 0:
            return None
        left, right = self.spans[idx]
        if a >= left - tol and b <= right + tol:
            return int(idx)
        return None

    def value(self, slot, which, order, t, tol=DEFAULT_TOL):
        """Canonical ladder value of generator `which` at global parameter t.

        order 0 is the generator itself, positive orders are repeated
        integrals from the interval's left endpoint, negative orders are
        derivatives.
        """
        if which not in ("u", "v"):
            raise ValueError("which must be 'u' or 'v'")
        left, right = self.spans[slot]
        if t < left - tol or t > right + tol:
            raise OutOfInterval(f"t={t} outside [{left}, {right}]")
        h = right - left
        s = t - left
        pure = _PURE[self.kinds[slot]]
        omega = float(self.omegas[slot])
        val = pure(which, order, s, h, omega)
        for j in range(1, max(order, 0) + 1):
            val -= pure(which, j, 0.0, h, omega) * s ** (order - j) / math.factorial(order - j)
        return val


def build_family(knots, kind="trigonometric", omega=math.pi / 2, *,
                 kinds=None, omegas=None, tol=DEFAULT_TOL) -> KnotFunctionFamily:
    """Attach generator pairs to the positive-length intervals of `knots`.

    Give a single `kind`/`omega` for all intervals, or per-interval sequences
    (ordered over positive-length intervals only).  The frequency is ignored
    for the linear kind; trigonometric intervals must keep omega * h < pi so
    the pair stays Chebyshev.
    """
    knots = np.asarray(knots, dtype=float)
    num = len(knots) - 1
    slots = np.full(num, -1, dtype=int)
    spans = []
    for j in range(num):
        if knots[j + 1] - knots[j] > tol:
            slots[j] = len(spans)
            spans.append((knots[j], knots[j + 1]))
    count = len(spans)
    out_kinds = tuple([kind] * count) if kinds is None else tuple(kinds)
    out_omegas = (np.full(count, omega, dtype=float) if omegas is None
                  else np.asarray(omegas, dtype=float))
    if len(out_kinds) != count or len(out_omegas) != count:
        raise InvalidFamily(
            f"need one spec per positive interval: {count} intervals, "
            f"{len(out_kinds)} kinds, {len(out_omegas)} frequencies")
    for i, (kd, w) in enumerate(zip(out_kinds, out_omegas)):
        if kd not in KINDS:
            raise InvalidFamily(f"unknown kind {kd!r}")
        if kd != "linear":
            if not w > 0:
                raise InvalidFamily("frequency must be positive")
            h = spans[i][1] - spans[i][0]
            if kd == "trigonometric" and w * h >= math.pi:
                raise InvalidFamily(
                    f"omega * h = {w * h:.6g} on [{spans[i][0]}, {spans[i][1]}] "
                    "must stay below pi")
    return KnotFunctionFamily(
        spans=readonly(np.array(spans, dtype=float).reshape(count, 2)),
        kinds=out_kinds,
        omegas=readonly(out_omegas),
        slots=readonly(slots, dtype=int),
    )


def knot_function_value(fam: KnotFunctionFamily, interval, which, order, t):
    """Ladder value for the family's `interval`-th positive-length interval."""
    return fam.value(int(interval), which, int(order), float(t))


def build_integral_table(fam: KnotFunctionFamily, breakpoints, derivative_offset,
                         max_order, tol=DEFAULT_TOL) -> np.ndarray:
    """Ladder values of (shifted) generators at target interval endpoints.

    Entry [k, j, e, w] is the k-th canonical integral of the
    `derivative_offset`-th derivative of generator w ('u' first) of the
    source interval containing target interval j, evaluated at endpoint e
    (left, then right).  Zero-length target intervals are left as zeros.
    """
    if derivative_offset < 0:
        raise ValueError("derivative_offset must be nonnegative")
    br = np.asarray(breakpoints, dtype=float)
    num = len(br) - 1
    out = np.zeros((max_order + 1, num, 2, 2))
    for j in range(num):
        a, b = br[j], br[j + 1]
        if b - a <= tol:
            continue
        slot = fam.slot_containing(a, b, tol)
        if slot is None:
            raise IntervalStraddle(
                f"[{a}, {b}] does not sit inside a single source interval")
        for k in range(max_order + 1):
            for e, x in enumerate((a, b)):
                for w, which in enumerate("uv"):
                    out[k, j, e, w] = fam.value(slot, which, k - derivative_offset, x, tol)
    return out
