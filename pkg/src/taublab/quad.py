"""Adaptive Simpson quadrature with Richardson refinement."""

from __future__ import annotations


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-9, max_depth: int = 50) -> float:
    """Integrate f over [a, b] to absolute tolerance tol.

    Classic interval-halving Simpson: a subinterval is accepted when the
    half-step estimate moves by no more than 15 tol, and the extrapolated
    correction (left + right - whole)/15 is added on acceptance.
    """
    if a == b:
        return 0.0
    if a > b:
        return -adaptive_simpson(f, b, a, tol, max_depth)

    def simpson(lo, f_lo, hi, f_hi, f_mid):
        return (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi)

    def recurse(lo, f_lo, hi, f_hi, f_mid, whole, tol, depth):
        mid = 0.5 * (lo + hi)
        lmid, rmid = 0.5 * (lo + mid), 0.5 * (mid + hi)
        f_lmid, f_rmid = f(lmid), f(rmid)
        left = simpson(lo, f_lo, mid, f_mid, f_lmid)
        right = simpson(mid, f_mid, hi, f_hi, f_rmid)
        delta = left + right - whole
        if depth >= max_depth or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return (recurse(lo, f_lo, mid, f_mid, f_lmid, left, tol / 2.0, depth + 1)
                + recurse(mid, f_mid, hi, f_hi, f_rmid, right, tol / 2.0, depth + 1))

    f_a, f_b, f_m = f(a), f(b), f(0.5 * (a + b))
    return recurse(a, f_a, b, f_b, f_m, simpson(a, f_a, b, f_b, f_m), tol, 0)
