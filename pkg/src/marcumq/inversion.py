"""Inversion of the Marcum functions with respect to ``x`` or ``y``.

Three families of drivers are provided:

* asymptotic inversion through the zeta variable, ``zeta ~ zeta0 + zeta1/mu``;
* Newton / secant iteration started from the convexity-certified points
  ``x± = y - mu - 1/2, y - mu - 1`` and ``y± = x + mu - 1, x + mu - 3/2``;
* a hybrid that polishes the asymptotic estimate with the secant method.

Targets are given as a :class:`TailSpec` so that a tiny lower tail can be
inverted without forming ``1 - p``.
"""

import math
from dataclasses import dataclass

from . import _kernels as K
from .errors import (
    BranchInfeasibleError,
    ConvergenceError,
    DomainError,
    InfeasibleError,
    MarcumError,
)
from .marcum_eval import MU_SOFT_LIMIT
from .scalar_kernels import invert_gamma_q, inverfc
from .zeta_map import invert_zeta_x, invert_zeta_y, zeta1

__all__ = [
    "TailSpec",
    "InversionReport",
    "TwoStepResult",
    "zeta0_from_tail",
    "invert_x_asymptotic",
    "invert_y_asymptotic",
    "invert_x_iterative",
    "invert_y_iterative",
    "invert_hybrid",
    "two_step",
]

MAXITER = 30
POLISH_ITER = 10
POLISH_TOL = 1e-13
ACCEPT_TOL = 1e-12
HYBRID_MIN_MU = 10.0
BOUNDARY_TOL = 1e-14


@dataclass(frozen=True)
class TailSpec:
    """Inversion target: ``Q(...) = value`` (``kind="Q"``) or ``P(...) = value``."""

    kind: str
    value: float

    def __post_init__(self):
        kind = str(self.kind).upper()
        if kind not in ("Q", "P"):
            raise DomainError(f"tail kind must be 'Q' or 'P', got {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        v = float(self.value)
        if not (0.0 < v < 1.0):
            raise DomainError(f"tail value must lie in (0, 1), got {self.value!r}")
        object.__setattr__(self, "value", v)

    @classmethod
    def q(cls, value):
        return cls("Q", value)

    @classmethod
    def p(cls, value):
        return cls("P", value)


@dataclass(frozen=True)
class InversionReport:
    """Outcome of an inversion.

    Attributes
    ----------
    value : float
        Recovered (unscaled) ``x`` or ``y``.
    zeta0, zeta1 : float or None
        Asymptotic quantities when an asymptotic stage ran.
    method : str
        ``"asymptotic"``, ``"newton"``, ``"secant"`` or ``"hybrid"``.
    iterations : int
        Function evaluations spent by the iterative stage.
    residual : float
        ``|target / recomputed - 1|`` from an independent evaluation.
    seed, seed_residual : float or None
        Asymptotic starting value of a hybrid run and its residual.
    axis : str
        ``"x"`` or ``"y"``.
    """

    value: float
    zeta0: object
    zeta1: object
    method: str
    iterations: int
    residual: float
    seed: object = None
    seed_residual: object = None
    axis: str = "x"


@dataclass(frozen=True)
class TwoStepResult:
    """Result of the two-step workflow: ``Q_mu(y0) = q0``, then ``Q_mu(x1, y0) = q1``."""

    y0: float
    delta0: float
    report: InversionReport

    @property
    def x1(self):
        return self.report.value

    @property
    def delta1(self):
        return self.report.residual


# ---------------------------------------------------------------------------
# helpers


def _check_mu(mu, mu_limit=MU_SOFT_LIMIT):
    mu = float(mu)
    if not math.isfinite(mu) or mu < 1.0:
        raise DomainError(f"mu must be a finite value >= 1, got {mu!r}")
    if mu > mu_limit:
        raise DomainError(f"mu = {mu!r} exceeds the configured limit {mu_limit!r}")
    return mu


def _check_arg(name, v, positive=False):
    v = float(v)
    if not math.isfinite(v) or v < 0.0 or (positive and v == 0.0):
        bound = "> 0" if positive else ">= 0"
        raise DomainError(f"{name} must be finite and {bound}, got {v!r}")
    return v


def _as_tail(tail):
    if isinstance(tail, TailSpec):
        return tail
    return TailSpec("Q", tail)


def _tail_value(mu, x, y, kind):
    """The requested tail, taken from the directly summed one when possible."""
    if y == 0.0:
        p, q = 0.0, 1.0
    elif x == 0.0:
        p, q = K.gamma_pq(mu, y)
    else:
        p, q, _ = K.marcum_series(mu, x, y)
    return q if kind == "Q" else p


def _residual(mu, x, y, tail):
    t = _tail_value(mu, x, y, tail.kind)
    if t == 0.0:
        return math.inf
    return abs(tail.value / t - 1.0)


def _dq_dx(mu, x, y):
    if y == 0.0:
        return 0.0
    if x == 0.0:
        return K.gamma_density(mu, y)
    return K.marcum_bessel_term(mu, x, y)


def _dq_dy(mu, x, y):
    if x == 0.0:
        return -K.gamma_density(mu - 1.0, y)
    if y == 0.0:
        return -math.exp(-x) if mu == 1.0 else 0.0
    return -K.marcum_bessel_term(mu - 1.0, x, y)


def zeta0_from_tail(mu, tail):
    """Solve ``erfc(zeta0 sqrt(mu/2)) / 2 = value``; the sign flips for a ``P`` target.

    Examples
    --------
    >>> zeta0_from_tail(100.0, TailSpec("Q", 0.5))
    0.0
    """
    mu = _check_mu(mu, math.inf)
    tail = _as_tail(tail)
    z0 = math.sqrt(2.0 / mu) * inverfc(2.0 * tail.value)
    return -z0 if tail.kind == "P" else z0


# ---------------------------------------------------------------------------
# asymptotic inversion


def _boundary_x(mu, y, tail):
    """Return 0.0 if the target is met at ``x = 0``; raise if it is unreachable.

    Targets within ``BOUNDARY_TOL`` of the value at ``x = 0``, or beyond it by
    no more than the evaluation noise ``ACCEPT_TOL``, are answered by the
    boundary point.
    """
    p0, q0 = K.gamma_pq(mu, y)
    t0 = q0 if tail.kind == "Q" else p0
    if t0 == 0.0:
        if tail.kind == "Q":
            return None
        raise InfeasibleError("P_mu(0, y) underflows; no x reaches the target")
    d = tail.value / t0 - 1.0
    # Q grows with x and P falls, so only one side of t0 is reachable
    beyond = -d if tail.kind == "Q" else d
    if abs(d) <= BOUNDARY_TOL or 0.0 < beyond <= ACCEPT_TOL:
        return 0.0
    if beyond > 0.0:
        if tail.kind == "Q":
            raise InfeasibleError(
                f"target Q = {tail.value!r} is below Q_mu(0, y) = {q0!r}; Q increases with x"
            )
        raise InfeasibleError(
            f"target P = {tail.value!r} exceeds P_mu(0, y) = {p0!r}; P decreases with x"
        )
    return None


def invert_x_asymptotic(mu, y, tail, use_zeta1=True, mu_limit=MU_SOFT_LIMIT):
    """Asymptotic solution of ``Q_mu(x, y) = q`` (or ``P``) for ``x``.

    Parameters
    ----------
    mu : float
    y : float
        Fixed unscaled ``y > 0``.
    tail : TailSpec or float
        Target; a bare float means a ``Q`` target.
    use_zeta1 : bool
        Include the first-order correction ``zeta1 / mu``.

    Returns
    -------
    InversionReport

    Raises
    ------
    InfeasibleError
        If the target cannot be reached for any ``x >= 0``.
    BranchInfeasibleError
        If the leading-order equation has no root with ``x >= 0``.
    """
    mu = _check_mu(mu, mu_limit)
    y = _check_arg("y", y, positive=True)
    tail = _as_tail(tail)
    if _boundary_x(mu, y, tail) == 0.0:
        return InversionReport(0.0, None, None, "asymptotic", 0, _residual(mu, 0.0, y, tail), axis="x")
    ys = y / mu
    z0 = zeta0_from_tail(mu, tail)
    xs = invert_zeta_x(z0, ys)
    z1 = None
    if use_zeta1:
        z1 = zeta1(z0, xs, ys)
        try:
            xs = invert_zeta_x(z0 + z1 / mu, ys)
        except BranchInfeasibleError:
            # the corrected zeta falls left of x = 0; the nearest admissible point
            xs = 0.0
    x = mu * xs
    return InversionReport(x, z0, z1, "asymptotic", 0, _residual(mu, x, y, tail), axis="x")


def invert_y_asymptotic(mu, x, tail, use_zeta1=True, mu_limit=MU_SOFT_LIMIT):
    """Asymptotic solution of ``Q_mu(x, y) = q`` (or ``P``) for ``y``.

    Every target in ``(0, 1)`` is attainable since ``Q`` falls from 1 to 0
    as ``y`` runs over ``[0, inf)``.
    """
    mu = _check_mu(mu, mu_limit)
    x = _check_arg("x", x)
    tail = _as_tail(tail)
    xs = x / mu
    z0 = zeta0_from_tail(mu, tail)
    ys = invert_zeta_y(z0, xs)
    z1 = None
    if use_zeta1:
        z1 = zeta1(z0, xs, ys)
        ys = invert_zeta_y(z0 + z1 / mu, xs)
    y = mu * ys
    return InversionReport(y, z0, z1, "asymptotic", 0, _residual(mu, x, y, tail), axis="y")


# ---------------------------------------------------------------------------
# iterative inversion


class _Objective:
    """``g(v) = ln(T(v) / target)`` along one axis, with its derivative.

    ``T`` is the smaller of the two tails at the target: for a value above
    1/2 the complementary target ``1 - value`` is exact and keeps ``g``
    well scaled where the requested tail is flat near 1.
    """

    def __init__(self, mu, fixed, tail, axis):
        self.mu = mu
        self.fixed = fixed
        self.tail = tail
        self.axis = axis
        self.flipped = tail.value > 0.5
        if self.flipped:
            self.work = TailSpec("P" if tail.kind == "Q" else "Q", 1.0 - tail.value)
        else:
            self.work = tail
        self.log_target = math.log(self.work.value)
        self.count = 0
        # g increases along the axis for (x, Q) and (y, P)
        self.increasing = (axis == "x") == (self.work.kind == "Q")

    def point(self, v):
        return (v, self.fixed) if self.axis == "x" else (self.fixed, v)

    def __call__(self, v, with_derivative=False):
        """Return ``(g, requested tail, dg)``."""
        self.count += 1
        x, y = self.point(v)
        if y == 0.0:
            p, q = 0.0, 1.0
        elif x == 0.0:
            p, q = K.gamma_pq(self.mu, y)
        else:
            p, q, _ = K.marcum_series(self.mu, x, y)
        t = q if self.work.kind == "Q" else p
        orig = q if self.tail.kind == "Q" else p
        g = math.log(t) - self.log_target if t > 0.0 else -math.inf
        if not with_derivative:
            return g, orig, None
        dq = _dq_dx(self.mu, x, y) if self.axis == "x" else _dq_dy(self.mu, x, y)
        sign = 1.0 if self.work.kind == "Q" else -1.0
        dg = sign * dq / t if t > 0.0 else math.nan
        return g, orig, dg


def _residual_from(tail, t):
    return abs(tail.value / t - 1.0) if t > 0.0 else math.inf


class _Bracket:
    def __init__(self, lo, hi, increasing):
        self.lo = lo
        self.hi = hi
        self.increasing = increasing

    def update(self, v, g):
        if g == 0.0:
            self.lo = self.hi = v
        elif (g < 0.0) == self.increasing:
            self.lo = max(self.lo, v)
        else:
            self.hi = min(self.hi, v)

    def fallback(self, v):
        if math.isfinite(self.hi):
            return 0.5 * (self.lo + self.hi)
        return 2.0 * max(v, self.lo) + 1.0

    def contains(self, v):
        return self.lo < v < self.hi

    def collapsed(self):
        return math.isfinite(self.hi) and self.hi - self.lo <= 4e-16 * self.hi


def _run(obj, starts, method, maxiter, tol, lo=0.0):
    """Safeguarded Newton or secant on ``obj``; returns (v, residual, iterations)."""
    br = _Bracket(lo, math.inf, obj.increasing)
    best_v, best_res = None, math.inf
    used = 0

    def record(v, g, t):
        nonlocal best_v, best_res
        br.update(v, g)
        res = _residual_from(obj.tail, t)
        if res < best_res:
            best_v, best_res = v, res
        return res

    if method == "newton":
        v = starts[0]
        for _ in range(maxiter):
            g, t, dg = obj(v, True)
            used += 1
            res = record(v, g, t)
            if res <= tol:
                return v, res, used
            cand = v - g / dg if (math.isfinite(g) and dg and math.isfinite(dg)) else math.nan
            if not br.contains(cand):
                cand = br.fallback(v)
            if abs(cand - v) <= 4e-16 * abs(v) or br.collapsed():
                return best_v, best_res, used
            v = cand
    else:
        v0, v1 = starts
        g0, t0, _ = obj(v0)
        used += 1
        res = record(v0, g0, t0)
        if res <= tol:
            return v0, res, used
        v = v1
        for _ in range(maxiter - 1):
            g, t, _ = obj(v)
            used += 1
            res = record(v, g, t)
            if res <= tol:
                return v, res, used
            if math.isfinite(g) and math.isfinite(g0) and g != g0:
                cand = v - g * (v - v0) / (g - g0)
            else:
                cand = math.nan
            if not br.contains(cand):
                cand = br.fallback(v)
            if abs(cand - v) <= 4e-16 * abs(v) or br.collapsed():
                return best_v, best_res, used
            v0, g0 = v, g
            v = cand
    return best_v, best_res, used


def _finish(v, res, used, method):
    if res > ACCEPT_TOL:
        raise ConvergenceError(
            f"{method} inversion reached residual {res:.3e} after {used} evaluations",
            best=v,
            iterations=used,
        )


def _convexity_starts_x(mu, y):
    eps = 1e-3 * mu
    xp = y - mu - 0.5
    xm = y - mu - 1.0
    return (xm if xm > 0.0 else 0.0), (xp if xp > 0.0 else eps)


def _convexity_starts_y(mu, x):
    eps = 1e-3 * mu
    yp = x + mu - 1.0
    ym = x + mu - 1.5
    return (ym if ym > 0.0 else eps), (yp if yp > 0.0 else eps * 2.0)


def _newton_start(obj, lo_start, hi_start):
    """Pick the certified Newton start: the end of the convexity band nearer the root."""
    g, t, _ = obj(hi_start)
    # root beyond the upper band edge when g has not yet reached zero
    beyond = (g < 0.0) == obj.increasing
    return hi_start if beyond else lo_start


def invert_x_iterative(mu, y, tail, method="secant", maxiter=MAXITER, tol=POLISH_TOL,
                       mu_limit=MU_SOFT_LIMIT):
    """Solve ``Q_mu(x, y) = q`` (or ``P``) for ``x`` by Newton or secant iteration.

    Starts from the convexity band ``[y - mu - 1, y - mu - 1/2]`` (clamped to
    ``x >= 0``); the iteration acts on the logarithm of the target tail and
    is safeguarded by the bracket accumulated from sign changes.

    Raises
    ------
    InfeasibleError
        If the target cannot be reached for any ``x >= 0``.
    ConvergenceError
        If the residual is above ``1e-12`` after ``maxiter`` evaluations.
    """
    mu = _check_mu(mu, mu_limit)
    y = _check_arg("y", y, positive=True)
    tail = _as_tail(tail)
    if method not in ("newton", "secant"):
        raise DomainError(f"method must be 'newton' or 'secant', got {method!r}")
    if _boundary_x(mu, y, tail) == 0.0:
        return InversionReport(0.0, None, None, method, 0, _residual(mu, 0.0, y, tail), axis="x")
    obj = _Objective(mu, y, tail, "x")
    xm, xp = _convexity_starts_x(mu, y)
    if method == "newton":
        starts = (_newton_start(obj, xm, xp),)
    else:
        starts = (xm, xp)
    v, res, _ = _run(obj, starts, method, maxiter - obj.count, tol)
    used = obj.count
    _finish(v, res, used, method)
    return InversionReport(v, None, None, method, used, _residual(mu, v, y, tail), axis="x")


def invert_y_iterative(mu, x, tail, method="secant", maxiter=MAXITER, tol=POLISH_TOL,
                       mu_limit=MU_SOFT_LIMIT):
    """Solve ``Q_mu(x, y) = q`` (or ``P``) for ``y`` by Newton or secant iteration.

    Starts from ``y- = x + mu - 3/2`` and ``y+ = x + mu - 1`` (replaced by
    small positive values when negative).
    """
    mu = _check_mu(mu, mu_limit)
    x = _check_arg("x", x)
    tail = _as_tail(tail)
    if method not in ("newton", "secant"):
        raise DomainError(f"method must be 'newton' or 'secant', got {method!r}")
    obj = _Objective(mu, x, tail, "y")
    ym, yp = _convexity_starts_y(mu, x)
    if method == "newton":
        starts = (_newton_start(obj, ym, yp),)
    else:
        starts = (ym, yp)
    v, res, _ = _run(obj, starts, method, maxiter - obj.count, tol)
    used = obj.count
    _finish(v, res, used, method)
    return InversionReport(v, None, None, method, used, _residual(mu, x, v, tail), axis="y")


def invert_hybrid(mu, fixed, tail, axis="x", mu_limit=MU_SOFT_LIMIT):
    """Asymptotic seed (for ``mu >= 10``) polished by the secant method.

    The polish stops once the residual is below ``1e-13``, the step reaches
    rounding level, or after 10 evaluations.  If the seed is unavailable
    or the polish stalls above ``1e-12`` the convexity-started secant
    iteration takes over.

    Parameters
    ----------
    mu : float
    fixed : float
        The argument held fixed: ``y`` when ``axis="x"``, ``x`` when ``axis="y"``.
    tail : TailSpec or float
    axis : {"x", "y"}

    Returns
    -------
    InversionReport
        ``iterations`` counts evaluations of the Marcum function after the
        seed; ``seed`` and ``seed_residual`` describe the asymptotic stage.
    """
    if axis not in ("x", "y"):
        raise DomainError(f"axis must be 'x' or 'y', got {axis!r}")
    mu = _check_mu(mu, mu_limit)
    tail = _as_tail(tail)
    if axis == "x":
        fixed = _check_arg("y", fixed, positive=True)
        if _boundary_x(mu, fixed, tail) == 0.0:
            return InversionReport(0.0, None, None, "hybrid", 0, _residual(mu, 0.0, fixed, tail), axis="x")
    else:
        fixed = _check_arg("x", fixed)

    seed_rep = None
    if mu >= HYBRID_MIN_MU:
        try:
            if axis == "x":
                seed_rep = invert_x_asymptotic(mu, fixed, tail, mu_limit=mu_limit)
            else:
                seed_rep = invert_y_asymptotic(mu, fixed, tail, mu_limit=mu_limit)
        except BranchInfeasibleError:
            # the leading-order equation misses x >= 0 although the target is reachable
            seed_rep = None
        except InfeasibleError:
            raise
        except MarcumError:
            seed_rep = None
    obj = _Objective(mu, fixed, tail, axis)
    if seed_rep is not None and math.isfinite(seed_rep.residual):
        s = seed_rep.value
        if seed_rep.residual <= POLISH_TOL:
            return InversionReport(s, seed_rep.zeta0, seed_rep.zeta1, "hybrid", 0,
                                   seed_rep.residual, s, seed_rep.residual, axis)
        step = 1e-6 * max(abs(s), 1e-3 * mu)
        s2 = s + step if (axis == "y" or s > 0.0) else step
        v, res, _ = _run(obj, (s, s2), "secant", POLISH_ITER, POLISH_TOL)
        if res <= ACCEPT_TOL:
            return InversionReport(v, seed_rep.zeta0, seed_rep.zeta1, "hybrid", obj.count,
                                   res, s, seed_rep.residual, axis)
    # convexity-certified secant iteration
    lo_s, hi_s = _convexity_starts_x(mu, fixed) if axis == "x" else _convexity_starts_y(mu, fixed)
    v, res, _ = _run(obj, (lo_s, hi_s), "secant", MAXITER, POLISH_TOL)
    _finish(v, res, obj.count, "hybrid")
    z0 = seed_rep.zeta0 if seed_rep else None
    z1 = seed_rep.zeta1 if seed_rep else None
    seed = seed_rep.value if seed_rep else None
    seed_res = seed_rep.residual if seed_rep else None
    return InversionReport(v, z0, z1, "hybrid", obj.count, res, seed, seed_res, axis)


# ---------------------------------------------------------------------------
# two-step workflow


def two_step(mu, q0, q1, step2="hybrid", mu_limit=MU_SOFT_LIMIT):
    """Step 1: ``Q_mu(0, y0) = q0``; Step 2: ``Q_mu(x1, y0) = q1``.

    Parameters
    ----------
    mu : float
    q0, q1 : float
        Targets in ``(0, 1)`` with ``q1 > q0``.
    step2 : {"hybrid", "asymptotic"}
        Driver for the second step.

    Returns
    -------
    TwoStepResult
        ``delta0 = |q0 / Q_mu(y0) - 1|`` and ``report.residual = |q1 / Q_mu(x1, y0) - 1|``.

    Raises
    ------
    InfeasibleError
        If ``q1 <= q0``.
    """
    mu = _check_mu(mu, mu_limit)
    q0 = float(q0)
    q1 = float(q1)
    for name, v in (("q0", q0), ("q1", q1)):
        if not (0.0 < v < 1.0):
            raise DomainError(f"{name} must lie in (0, 1), got {v!r}")
    if q1 <= q0:
        raise InfeasibleError(f"q1 must exceed q0 (got q0 = {q0!r}, q1 = {q1!r}); q1 = q0 means x1 = 0")
    y0 = invert_gamma_q(mu, q0)
    delta0 = abs(q0 / K.gamma_pq(mu, y0)[1] - 1.0)
    tail = TailSpec("Q", q1)
    if step2 == "asymptotic":
        rep = invert_x_asymptotic(mu, y0, tail, mu_limit=mu_limit)
    elif step2 == "hybrid":
        rep = invert_hybrid(mu, y0, tail, "x", mu_limit=mu_limit)
    else:
        raise DomainError(f"step2 must be 'hybrid' or 'asymptotic', got {step2!r}")
    return TwoStepResult(y0, delta0, rep)
