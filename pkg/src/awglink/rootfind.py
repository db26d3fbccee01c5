"""Bracketed bisection root finding.

Kept deliberately simple: the residuals this package solves are smooth
and cheap, so robustness wins over iteration count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import ConvergenceError, NoBracketError


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int


def bisect_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    f_tol: float = 1e-9,
    x_tol: float = 1e-12,
    max_iter: int = 200,
) -> RootResult:
    """Find x in [lo, hi] with |f(x)| < f_tol by bisection.

    f(lo) and f(hi) must straddle zero (NoBracketError otherwise).
    Success requires the residual tolerance; a bracket that collapses
    below x_tol without meeting it raises ConvergenceError, as does
    exhausting max_iter.
    """
    if not lo < hi:
        raise NoBracketError(f"invalid bracket: lo={lo!r} must be < hi={hi!r}")
    f_lo = f(lo)
    if abs(f_lo) < f_tol:
        return RootResult(root=lo, residual=f_lo, iterations=0)
    f_hi = f(hi)
    if abs(f_hi) < f_tol:
        return RootResult(root=hi, residual=f_hi, iterations=0)
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise NoBracketError(
            f"no sign change over [{lo!r}, {hi!r}]: f(lo)={f_lo:.6e}, f(hi)={f_hi:.6e}"
        )

    for iteration in range(1, max_iter + 1):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if abs(f_mid) < f_tol:
            return RootResult(root=mid, residual=f_mid, iterations=iteration)
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        if hi - lo < x_tol:
            raise ConvergenceError(
                f"bracket collapsed to width {hi - lo:.3e} at x={mid!r} with "
                f"|f| = {abs(f_mid):.3e} still above tolerance {f_tol:.0e}"
            )
    raise ConvergenceError(
        f"no root below tolerance {f_tol:.0e} within {max_iter} iterations "
        f"(bracket [{lo!r}, {hi!r}])"
    )
