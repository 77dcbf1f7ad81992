"""Deterministic bisection used by every threshold solver in the package."""

from __future__ import annotations

from typing import Callable

__all__ = ["bisect", "BracketError"]


class BracketError(ValueError):
    """The function does not change sign over the requested bracket."""


def bisect(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    ftol: float = 1e-12,
    maxiter: int = 200,
) -> tuple[float, float]:
    """Find a sign change of ``f`` in ``[lo, hi]`` by plain bisection.

    Stops as soon as ``|f(mid)| < ftol``, when the bracket can no longer be
    split in floating point, or after ``maxiter`` halvings.

    Returns:
        ``(x, f(x))`` for the best midpoint found.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo, flo
    if fhi == 0.0:
        return hi, fhi
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lo!r}, {hi!r}]: f={flo!r}, {fhi!r}")

    x, fx = lo, flo
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fmid = f(mid)
        x, fx = mid, fmid
        if abs(fmid) < ftol:
            break
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return x, fx
