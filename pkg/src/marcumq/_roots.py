"""Safeguarded Newton iteration on a bracketed monotone function."""

import math

from .errors import ConvergenceError


def newton_bracketed(fun, x0, lo, hi, increasing, xtol=1e-15, maxiter=60, abstol=0.0):
    """Root of a monotone ``fun`` inside ``[lo, hi]``.

    ``fun(x)`` returns ``(f, df)``.  Newton steps that leave the current
    bracket are replaced by bisection (or by expansion when ``hi`` is
    infinite).  The iteration stops on a small step, on a collapsed bracket,
    or when the residual has stopped improving for several iterations, which
    signals that it sits at the rounding floor of ``fun``.

    Returns
    -------
    x : float
    iterations : int
    """
    x = min(max(x0, lo), hi)
    best_x, best_f = x, math.inf
    stall = 0
    for it in range(1, maxiter + 1):
        f, df = fun(x)
        if f == 0.0:
            return x, it
        if abs(f) < best_f:
            best_x, best_f = x, abs(f)
            stall = 0
        else:
            stall += 1
            if stall >= 4:
                return best_x, it
        if (f < 0.0) == increasing:
            lo = x
        else:
            hi = x
        step = f / df if df != 0.0 else math.nan
        cand = x - step
        if not (lo < cand < hi) or not math.isfinite(cand):
            cand = 0.5 * (lo + hi) if math.isfinite(hi) else 2.0 * x + 1.0
        if abs(cand - x) <= xtol * abs(x) + abstol:
            return cand, it
        if math.isfinite(hi) and hi - lo <= xtol * max(abs(lo), abs(hi)) + abstol:
            return best_x, it
        x = cand
    raise ConvergenceError("Newton iteration did not converge", best=best_x, iterations=maxiter)
