"""The zeta variable of the uniform asymptotic representation of ``Q_mu(mu x, mu y)``.

All arguments here are *scaled*: the Marcum function of interest is
``Q_mu(mu x, mu y)`` and ``x``, ``y`` denote the scaled arguments.  The map is

    zeta**2 / 2 = x + y - sqrt(1 + 4xy) + ln((1 + sqrt(1 + 4xy)) / (2y)),

with ``sign(zeta) = sign(y - x - 1)``.  The module provides the map, its
derivatives, its inversion in either argument, and the power series in
``zeta`` around the transition line ``y = x + 1``.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import _coeffs
from . import _kernels as K
from ._roots import newton_bracketed
from .errors import BranchInfeasibleError, DomainError, SingularPointError

__all__ = [
    "ZetaPoint",
    "ExpansionCoeffs",
    "zeta",
    "half_zeta_sq",
    "f_rhs",
    "f_prime",
    "g_rhs",
    "g_prime",
    "coeffs_a",
    "coeffs_b",
    "coeffs_c",
    "coeffs_d",
    "expansion_coeffs",
    "invert_zeta_x",
    "invert_zeta_y",
    "f_of_zeta0",
    "zeta1",
    "d0",
    "dzeta_dx",
    "dzeta_dy",
]

MAX_ORDER = len(_coeffs.D) - 1
SERIES_SWITCH = 0.1


@dataclass(frozen=True)
class ZetaPoint:
    """A point ``(x, y)`` with its zeta coordinate.

    ``rho = sqrt(y/x)`` (infinite at ``x = 0``) and ``xi = 2 sqrt(xy)``.
    """

    x: float
    y: float
    rho: float
    xi: float
    zeta: float


@dataclass(frozen=True)
class ExpansionCoeffs:
    """Series coefficients evaluated at a point.

    ``a`` holds ``a_1(y), ..., a_order(y)``, ``b`` holds ``b_1(x), ...``,
    ``c`` holds ``c_0(x), ...`` and ``d`` holds ``d_0(x), ...``.
    """

    a: list = field(default_factory=list)
    b: list = field(default_factory=list)
    c: list = field(default_factory=list)
    d: list = field(default_factory=list)
    order: int = 3

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("order must be >= 1")
        if self.c and self.c[0] != 1:
            raise DomainError("c_0 must equal 1")


# ---------------------------------------------------------------------------
# the map and its derivatives


def _check_xy(x, y):
    x = float(x)
    y = float(y)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError("x and y must be finite")
    if x < 0.0:
        raise DomainError(f"x must be >= 0, got {x!r}")
    if y <= 0.0:
        raise DomainError(f"y must be > 0, got {y!r}")
    return x, y


def _offset(x, y):
    # y - x - 1 with the rounding error of y - x recovered (two-sum)
    t = y - x
    bp = t - y
    err = (y - (t - bp)) + (-x - bp)
    return (t - 1.0) + err


def _aux(x, y):
    # s = sqrt(1+4xy), u = y - x - 1, w = (1+s)/(2y) - 1 without cancellation
    s = math.sqrt(1.0 + 4.0 * x * y)
    u = _offset(x, y)
    w = -2.0 * u / _den(x, y, s)
    return s, u, w


def _den(x, y, s):
    # s + 2y - 1 with s - 1 = 4xy / (1 + s), exact as y -> 0
    return 4.0 * x * y / (1.0 + s) + 2.0 * y


def _half_sq(x, y):
    if x == 0.0:
        t = y - 1.0
        return -K.log1pmx(t) if y > 0.5 else t - math.log(y)
    s, u, w = _aux(x, y)
    if abs(w) < 0.5:
        val = y * w * w + K.log1pmx(w)
    else:
        val = x + y - s + (math.log(0.5 * (1.0 + s)) - math.log(y))
    return max(val, 0.0)


def half_zeta_sq(x, y):
    """``zeta**2 / 2`` at scaled ``(x, y)``."""
    x, y = _check_xy(x, y)
    return _half_sq(x, y)


def _zeta(x, y):
    h = math.sqrt(2.0 * _half_sq(x, y))
    u = _offset(x, y)
    if u > 0.0:
        return h
    if u < 0.0:
        return -h
    return 0.0


def zeta(x, y):
    """Zeta coordinate of the scaled point ``(x, y)``.

    Parameters
    ----------
    x : float
        ``x >= 0``; at ``x = 0`` the map reduces to ``eta`` with
        ``eta**2 / 2 = y - 1 - ln y``.
    y : float
        ``y > 0``.

    Returns
    -------
    ZetaPoint
    """
    x, y = _check_xy(x, y)
    rho = math.inf if x == 0.0 else math.sqrt(y / x)
    return ZetaPoint(x, y, rho, 2.0 * math.sqrt(x * y), _zeta(x, y))


def f_rhs(x, y):
    """``zeta**2 / 2`` as a function of ``x`` with ``y`` fixed."""
    return half_zeta_sq(x, y)


def _f_prime(x, y):
    s, u, _ = _aux(x, y)
    # 1 - 2y + s = -4yu / (s + 2y - 1)
    return -4.0 * y * u / (_den(x, y, s) * (1.0 + s))


def f_prime(x, y):
    """``d f_rhs / dx = (1 - 2y + sqrt(1+4xy)) / (1 + sqrt(1+4xy))``."""
    x, y = _check_xy(x, y)
    return _f_prime(x, y)


def g_rhs(y, x):
    """``zeta**2 / 2`` as a function of ``y`` with ``x`` fixed."""
    return half_zeta_sq(x, y)


def _g_prime(x, y):
    s, u, w = _aux(x, y)
    return u * (1.0 - 2.0 * x / ((1.0 + w) * _den(x, y, s))) / y


def g_prime(y, x):
    """``d g_rhs / dy = (y - 2xy - 1 + (y-1) sqrt(1+4xy)) / (y (1 + sqrt(1+4xy)))``."""
    x, y = _check_xy(x, y)
    return _g_prime(x, y)


def dzeta_dx(x, y):
    """Partial derivative of zeta with respect to ``x``.

    Raises
    ------
    SingularPointError
        On the transition line ``y = x + 1`` where the closed form is 0/0.
    """
    x, y = _check_xy(x, y)
    z = _zeta(x, y)
    if z == 0.0:
        raise SingularPointError("dzeta_dx is 0/0 on the line y = x + 1")
    return _f_prime(x, y) / z


def dzeta_dy(x, y):
    """Partial derivative of zeta with respect to ``y``; see :func:`dzeta_dx`."""
    x, y = _check_xy(x, y)
    z = _zeta(x, y)
    if z == 0.0:
        raise SingularPointError("dzeta_dy is 0/0 on the line y = x + 1")
    return _g_prime(x, y) / z


# ---------------------------------------------------------------------------
# series coefficients


def _rational_sqrt(value):
    value = Fraction(value)
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise DomainError(f"sqrt({value}) is irrational; exact coefficients unavailable")
    return Fraction(rn, rd)


def _eval_table(table, r, order, exact):
    out = []
    for num, den, power in table[:order]:
        acc = Fraction(0) if exact else 0.0
        for c in reversed(num):
            acc = acc * r + c
        out.append(acc / (den * r ** power))
    return out


def _coeff_list(table, base, order, exact, label):
    if not 1 <= order <= len(table):
        raise DomainError(f"{label}: order must be in 1..{len(table)}")
    if exact:
        r = _rational_sqrt(base)
    else:
        r = math.sqrt(float(base))
    return _eval_table(table, r, order, exact)


def coeffs_a(y, order=3, exact=False):
    """``[a_1(y), ..., a_order(y)]`` of ``x = y - 1 + sum a_k(y) zeta**k``.

    Requires ``2y > 1``.  With ``exact=True`` and a rational ``y`` for which
    ``sqrt(2y - 1)`` is rational the values are :class:`fractions.Fraction`.

    Examples
    --------
    >>> coeffs_a(1, exact=True)
    [Fraction(-1, 1), Fraction(2, 3), Fraction(5, 36)]
    """
    base = 2 * Fraction(y) - 1 if exact else 2.0 * y - 1.0
    if base <= 0:
        raise DomainError("coeffs_a requires 2y > 1")
    return _coeff_list(_coeffs.A, base, order, exact, "coeffs_a")


def _x_base(x, exact):
    if x < 0:
        raise DomainError("x must be >= 0")
    return 2 * Fraction(x) + 1 if exact else 2.0 * x + 1.0


def coeffs_b(x, order=3, exact=False):
    """``[b_1(x), ..., b_order(x)]`` of ``y = x + 1 + sum b_k(x) zeta**k``."""
    return _coeff_list(_coeffs.B, _x_base(x, exact), order, exact, "coeffs_b")


def coeffs_c(x, order=3, exact=False):
    """``[c_0(x), ..., c_order(x)]`` of ``f(zeta0) = sum c_k(x) zeta0**k``."""
    return _coeff_list(_coeffs.C, _x_base(x, exact), order + 1, exact, "coeffs_c")


def coeffs_d(x, order=1, exact=False):
    """``[d_0(x), ..., d_order(x)]`` of ``zeta1 = sum d_k(x) zeta0**k``.

    Examples
    --------
    >>> coeffs_d(0, exact=True)
    [Fraction(-1, 3), Fraction(1, 36)]
    """
    return _coeff_list(_coeffs.D, _x_base(x, exact), order + 1, exact, "coeffs_d")


def expansion_coeffs(x, y, order=3):
    """All four coefficient lists at ``(x, y)``; ``a`` is empty unless ``2y > 1``."""
    a = coeffs_a(y, order) if 2.0 * y > 1.0 else []
    return ExpansionCoeffs(
        a=a,
        b=coeffs_b(x, order),
        c=coeffs_c(x, order),
        d=coeffs_d(x, order),
        order=order,
    )


def _poly(coefs, t):
    acc = 0.0
    for c in reversed(coefs):
        acc = acc * t + c
    return acc


# ---------------------------------------------------------------------------
# inversion


def _solve_in_x(zt, y, x0, lo, hi):
    def fun(x):
        z = _zeta(x, y)
        if abs(z) > 1e-4:
            dz = _f_prime(x, y) / z
        else:
            # derivative on the transition line is 1 / a_1(y)
            dz = -1.0 / math.sqrt(max(2.0 * y - 1.0, 1e-300))
        return z - zt, dz

    x, _ = newton_bracketed(fun, x0, lo, hi, increasing=False, xtol=2e-16, abstol=1e-300)
    return x


def invert_zeta_x(zeta_target, y, branch=None):
    """Scaled ``x >= 0`` with ``zeta(x, y) = zeta_target``.

    Since ``sign(zeta) = sign(y - x - 1)``, positive targets lie on the left
    root (``x < y - 1``) and negative targets on the right root.

    Parameters
    ----------
    zeta_target : float
    y : float
        ``y > 0``.
    branch : {None, 'left', 'right'}
        Optional explicit branch; must agree with the sign of a nonzero
        target.

    Returns
    -------
    float

    Raises
    ------
    BranchInfeasibleError
        When no root with ``x >= 0`` exists on the branch, i.e. the target
        corresponds to a point left of ``x = 0``.
    """
    zt = float(zeta_target)
    y = float(y)
    if not math.isfinite(zt):
        raise DomainError("zeta_target must be finite")
    if not (math.isfinite(y) and y > 0.0):
        raise DomainError(f"y must be > 0, got {y!r}")
    side = "left" if zt > 0.0 else "right" if zt < 0.0 else None
    if branch is not None:
        if branch not in ("left", "right"):
            raise DomainError(f"branch must be 'left' or 'right', got {branch!r}")
        if side is not None and branch != side:
            raise DomainError(f"a zeta of sign {'+' if zt > 0 else '-'} lies on the {side} branch")
    if zt == 0.0:
        if y < 1.0:
            raise BranchInfeasibleError("zeta = 0 needs y >= 1")
        return y - 1.0
    z_at_0 = _zeta(0.0, y)
    if zt >= z_at_0 and zt - z_at_0 <= 4e-16 * abs(z_at_0):
        # within rounding of the boundary value
        return 0.0
    if side == "left":
        if zt > z_at_0:
            raise BranchInfeasibleError(
                "no root with x >= 0: zeta target exceeds zeta(0, y) on the left branch"
            )
        lo, hi = 0.0, y - 1.0
    else:
        if zt > z_at_0:
            raise BranchInfeasibleError(
                "no root with x >= 0: zeta target above zeta(0, y) on the right branch"
            )
        c = 0.5 * zt * zt
        lo = max(y - 1.0, 0.0)
        hi = y + c + math.sqrt(4.0 * y * c + 1.0)
    if abs(zt) < SERIES_SWITCH and 2.0 * y > 1.0:
        x0 = y - 1.0 + zt * _poly(coeffs_a(y, order=MAX_ORDER + 1), zt)
    elif side == "right" and y < 1.0:
        # quadratic fit of f at x = 0: f(0) + (1 - y) x + y^2 x^2 / 2
        c = 0.5 * zt * zt
        disc = (1.0 - y) ** 2 - 2.0 * y * y * (_half_sq(0.0, y) - c)
        x0 = (-(1.0 - y) + math.sqrt(max(disc, 0.0))) / (y * y)
    elif side == "left":
        x0 = 0.0
    else:
        x0 = hi
    x = _solve_in_x(zt, y, x0, lo, hi)
    return max(x, 0.0)


def invert_zeta_y(zeta_target, x):
    """Scaled ``y > 0`` with ``zeta(x, y) = zeta_target``.

    ``zeta`` is increasing in ``y`` and vanishes at ``y = x + 1``, so the
    root is unique.
    """
    zt = float(zeta_target)
    x = float(x)
    if not math.isfinite(zt):
        raise DomainError("zeta_target must be finite")
    if not (math.isfinite(x) and x >= 0.0):
        raise DomainError(f"x must be >= 0, got {x!r}")
    y_mid = x + 1.0
    if zt == 0.0:
        return y_mid
    b1 = math.sqrt(2.0 * x + 1.0)
    if zt > 0.0:
        lo = y_mid
        step = max(b1 * zt + zt * zt, 4e-16 * y_mid)
        hi = y_mid + step
        while _zeta(x, hi) < zt:
            step *= 2.0
            hi = y_mid + step
    else:
        hi = y_mid
        lo = y_mid * 0.5
        while _zeta(x, lo) > zt:
            lo *= 0.5
            if lo == 0.0:
                lo = 5e-324
                break
    if abs(zt) < SERIES_SWITCH:
        y0 = y_mid + zt * _poly(coeffs_b(x, order=MAX_ORDER + 1), zt)
    elif zt < 0.0:
        # as y -> 0, zeta^2 / 2 ~ x - 1 - ln y + y
        y0 = min(max(math.exp(x - 1.0 - 0.5 * zt * zt), lo), hi)
    else:
        y0 = 0.5 * (lo + hi)

    def fun(y):
        z = _zeta(x, y)
        if abs(z) > 1e-4:
            dz = _g_prime(x, y) / z
        else:
            dz = 1.0 / b1
        return z - zt, dz

    if zt > 0.0:
        y, _ = newton_bracketed(fun, y0, lo, hi, increasing=True, xtol=2e-16, abstol=1e-300)
        return y

    # left of the transition zeta is close to linear in ln y
    def fun_log(t):
        y = math.exp(t)
        f, dz = fun(y)
        return f, dz * y

    t, _ = newton_bracketed(fun_log, math.log(y0), math.log(lo), math.log(hi), increasing=True,
                            xtol=0.0, abstol=1e-16)
    return math.exp(t)


# ---------------------------------------------------------------------------
# first-order correction


def _f_direct(z0, x, y):
    s = math.sqrt(1.0 + 4.0 * x * y)
    return z0 * (1.0 + 2.0 * x + s) / ((y - x - 1.0) * 2.0 * math.sqrt(s))


def f_of_zeta0(zeta0, x, y):
    """``f(zeta0) = zeta0 (1 + 2x + S) / (2 (y - x - 1) sqrt(S))`` with ``S = sqrt(1 + 4xy)``.

    ``(x, y)`` must be a point with ``zeta(x, y) = zeta0``.  For
    ``|zeta0| < 0.1`` the power series in ``zeta0`` with coefficients
    ``c_k(x)`` is used, which removes the 0/0 at the transition line.
    """
    x, y = _check_xy(x, y)
    z0 = float(zeta0)
    if abs(z0) < SERIES_SWITCH:
        return _poly(coeffs_c(x, order=MAX_ORDER), z0)
    return _f_direct(z0, x, y)


def zeta1(zeta0, x, y):
    """First correction ``zeta1 = ln(f(zeta0)) / zeta0``.

    Uses the series ``sum d_k(x) zeta0**k`` for ``|zeta0| < 0.1``.

    Examples
    --------
    >>> round(zeta1(0.0, 0.0, 1.0), 15)
    -0.333333333333333
    """
    x, y = _check_xy(x, y)
    z0 = float(zeta0)
    if abs(z0) < SERIES_SWITCH:
        return _poly(coeffs_d(x, order=MAX_ORDER), z0)
    return math.log(_f_direct(z0, x, y)) / z0


def d0(x, y):
    """Leading coefficient ``d_0(zeta) = 1/zeta - (1+2x+S) / (2 (y-x-1) sqrt(S))``.

    This is the first term of the series for the remainder in
    ``Q_mu(mu x, mu y) = erfc(zeta sqrt(mu/2)) / 2 - R_mu(zeta)``.  Note
    ``d_0(zeta) = (1 - f(zeta)) / zeta``; near the transition line the
    ``c_k`` series is used.
    """
    x, y = _check_xy(x, y)
    z = _zeta(x, y)
    if abs(z) < SERIES_SWITCH:
        c = coeffs_c(x, order=MAX_ORDER)
        return -_poly(c[1:], z)
    s = math.sqrt(1.0 + 4.0 * x * y)
    return 1.0 / z - (1.0 + 2.0 * x + s) / (2.0 * (y - x - 1.0) * math.sqrt(s))
