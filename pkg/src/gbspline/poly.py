"""Polynomial terms in the shifted power basis.

Each knot interval carries a local coordinate s with s = 0 at its left
endpoint, so a coefficient row (c0, ..., cd) stands for sum(c_k * s**k).
"""
from __future__ import annotations

import math

import numpy as np

from .errors import TargetsOutsideSource, TargetTooSmall

DEFAULT_TOL = 1e-10


def poly_eval(coeffs, s):
    """Horner evaluation of sum(c_k * s**k); `s` may be scalar or array."""
    coeffs = np.asarray(coeffs, dtype=float)
    s = np.asarray(s, dtype=float)
    acc = np.zeros(s.shape)
    for c in coeffs[::-1]:
        acc = acc * s + c
    return acc if acc.shape else float(acc)


def integrate_poly(coeffs):
    """Antiderivative chosen to vanish at the local origin."""
    coeffs = np.asarray(coeffs, dtype=float)
    out = np.zeros(coeffs.shape[-1] + 1)
    if coeffs.shape[-1]:
        out[1:] = coeffs / np.arange(1, coeffs.shape[-1] + 1)
    return out


def derive_poly(coeffs):
    """First derivative in the same local coordinate."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape[-1] <= 1:
        return np.zeros(0)
    return coeffs[1:] * np.arange(1, coeffs.shape[-1])


def taylor_shift(coeffs, tau):
    """Coefficients of P(s + tau): the polynomial over an origin moved right by tau."""
    coeffs = np.asarray(coeffs, dtype=float)
    out = np.zeros(len(coeffs))
    for deg in range(len(coeffs)):
        c = coeffs[deg]
        if c == 0.0:
            continue
        for k in range(deg + 1):
            out[k] += c * math.comb(deg, k) * tau ** (deg - k)
    return out


def restrict_poly(coeffs, source, targets, tol=DEFAULT_TOL):
    """Re-express one polynomial over consecutive subintervals.

    `source` is the (a, b) interval the coefficients currently describe and
    `targets` lists nondecreasing endpoints e_0..e_k inside it.  Row j of the
    result describes the same global polynomial over [e_j, e_{j+1}] in that
    interval's own local coordinate, which in this basis is a left shift.
    """
    a, b = float(source[0]), float(source[1])
    targets = np.asarray(targets, dtype=float)
    if targets.size < 2 or np.any(np.diff(targets) < -tol):
        raise TargetsOutsideSource("target endpoints must be nondecreasing")
    if targets[0] < a - tol or targets[-1] > b + tol:
        raise TargetsOutsideSource(
            f"targets span [{targets[0]}, {targets[-1]}] outside source [{a}, {b}]"
        )
    return np.array([taylor_shift(coeffs, e - a) for e in targets[:-1]])


def elevate_polys(polys, target_degree):
    """Zero-pad coefficient rows (last axis) up to target_degree + 1 columns."""
    polys = np.asarray(polys, dtype=float)
    width = polys.shape[-1]
    if target_degree + 1 < width:
        raise TargetTooSmall(f"cannot drop degree {width - 1} to {target_degree}")
    pad = [(0, 0)] * (polys.ndim - 1) + [(0, target_degree + 1 - width)]
    return np.pad(polys, pad)


def left_taylor_series(derivs, h):
    """Polynomial matching the given derivative values at the left endpoint."""
    derivs = np.asarray(derivs, dtype=float)
    fact = np.array([math.factorial(k) for k in range(len(derivs))], dtype=float)
    return derivs / fact


def right_taylor_series(derivs, h):
    """Polynomial matching the given derivative values at s = h, expressed in
    the left-shifted power basis."""
    return taylor_shift(left_taylor_series(derivs, h), -h)
