"""1D search primitives: golden-section maximization and boundary bisection."""

from __future__ import annotations

import math

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, a: float, b: float, tol: float) -> float:
    """Argmax of a unimodal f on [a, b] to within tol."""
    if b < a:
        a, b = b, a
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = f(c)
    fd = f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def bisect_boundary(pred, lo: float, hi: float, tol: float) -> float:
    """Boundary between pred(lo) and the opposite pred(hi), assuming one flip.

    Returns the midpoint of the final bracket; callers must ensure
    pred(lo) != pred(hi).
    """
    p_lo = pred(lo)
    if pred(hi) == p_lo:
        raise ValueError("predicate does not flip on the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid) == p_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
