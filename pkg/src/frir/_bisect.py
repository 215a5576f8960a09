from __future__ import annotations

import math
from typing import Callable

from .errors import BracketFailure


def bisect_increasing(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    target: float,
    ftol: float,
    xtol: float,
    max_iter: int,
) -> float:
    """Find ``x`` in ``(lo, hi)`` with ``f(x) ~= target`` for non-decreasing ``f``.

    The endpoints are never evaluated; the caller guarantees the bracket.
    Stops on ``|f(x) - target| <= ftol``, a bracket narrower than ``xtol``
    or one with no float strictly inside; steep ``f`` may need the latter.
    Returns the evaluated point closest to the target.
    """
    best_x, best_err = 0.5 * (lo + hi), math.inf
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        val = f(mid)
        if math.isnan(val):
            raise BracketFailure(f"objective is NaN at x={mid!r}")
        err = abs(val - target)
        if err < best_err:
            best_x, best_err = mid, err
        if err <= ftol:
            break
        if val < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= xtol:
            break
    return best_x


def bisect_sign(f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-14, max_iter: int = 200) -> float:
    """Sign change of ``f`` inside ``[lo, hi]``; NaN values count as non-positive."""

    def positive(x: float) -> bool:
        v = f(x)
        return v > 0 and not math.isnan(v)

    plo, phi = positive(lo), positive(hi)
    if plo == phi:
        raise BracketFailure(f"no sign change between {lo!r} and {hi!r}")
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        if positive(mid) == plo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
