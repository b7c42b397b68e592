"""Scalar special-function building blocks.

Complementary error function and its inverse, the exponentially scaled
modified Bessel function ``exp(-z) I_nu(z)``, the incomplete gamma ratios
``P_mu(y)``, ``Q_mu(y)`` with their inversion, and the eta variable used by
the uniform asymptotic expansions of the gamma ratios.
"""

import math
from dataclasses import dataclass

from . import _kernels as K
from ._roots import newton_bracketed
from .errors import ConvergenceError, DomainError

__all__ = [
    "GammaTailPair",
    "EtaValue",
    "erfc",
    "inverfc",
    "bessel_i_scaled",
    "bessel_u1",
    "bessel_v1",
    "gamma_ratios",
    "gamma_density",
    "invert_gamma_q",
    "eta_of_y",
    "y_of_eta",
]

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class GammaTailPair:
    """Incomplete gamma ratios ``P_mu(y)`` and ``Q_mu(y)``."""

    mu: float
    y: float
    p: float
    q: float


@dataclass(frozen=True)
class EtaValue:
    """``eta`` with ``eta**2 / 2 = y - 1 - ln y`` and ``sign(eta) = sign(y - 1)``."""

    y: float
    eta: float


def _finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


# ---------------------------------------------------------------------------
# error function


def erfc(z):
    """Complementary error function ``2/sqrt(pi) * int_z^inf exp(-t^2) dt``.

    Parameters
    ----------
    z : float
        Finite argument.

    Returns
    -------
    float
        Value in ``[0, 2]``; underflows to 0 for ``z`` beyond about 26.6.
    """
    return math.erfc(_finite("z", z))


# Rational approximation of the standard normal quantile (P. J. Acklam).
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)


def _normal_quantile_lower(u):
    # quantile of the standard normal for 0 < u <= 1/2 (result <= 0)
    if u < 0.02425:
        t = math.sqrt(-2.0 * math.log(u))
        num = ((((_C[0] * t + _C[1]) * t + _C[2]) * t + _C[3]) * t + _C[4]) * t + _C[5]
        den = (((_D[0] * t + _D[1]) * t + _D[2]) * t + _D[3]) * t + 1.0
        return num / den
    t = u - 0.5
    r = t * t
    num = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * t
    den = ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
    return num / den


def inverfc(s):
    """Inverse of :func:`erfc`.

    Parameters
    ----------
    s : float
        Value in the open interval ``(0, 2)``.

    Returns
    -------
    float
        ``z`` with ``erfc(z) == s`` to a relative residual of a few ulp.

    Raises
    ------
    DomainError
        If ``s`` is outside ``(0, 2)``.
    """
    s = _finite("s", s)
    if not 0.0 < s < 2.0:
        raise DomainError(f"inverfc needs 0 < s < 2, got {s!r}")
    if s == 1.0:
        return 0.0
    if s > 1.0:
        return -inverfc(2.0 - s)
    z = -_normal_quantile_lower(0.5 * s) / math.sqrt(2.0)
    # Halley on erfc(z) - s; f''/f' = -2z
    for _ in range(6):
        f = math.erfc(z) - s
        df = -2.0 / _SQRT_PI * math.exp(-z * z)
        if df == 0.0:
            break
        u = f / df
        dz = u / (1.0 + z * u)
        z -= dz
        if abs(dz) <= 1e-16 * abs(z):
            break
    return z


# ---------------------------------------------------------------------------
# Bessel


def bessel_i_scaled(nu, z):
    """``exp(-z) * I_nu(z)`` for ``nu >= 0`` and ``z >= 0``.

    Uses the Maclaurin series for moderate arguments, the uniform large-order
    expansion for ``nu >= 50``, and backward recurrence from a large-order
    pair otherwise.  The result never overflows.
    """
    nu = _finite("nu", nu)
    z = _finite("z", z)
    if z < 0.0:
        raise DomainError(f"bessel_i_scaled needs z >= 0, got {z!r}")
    if nu < 0.0:
        raise DomainError(f"bessel_i_scaled needs nu >= 0, got {nu!r}")
    return K.bessel_i_scaled(nu, z)


def bessel_u1(p):
    """First Debye polynomial ``U_1(p) = (3p - 5p^3) / 24``."""
    return (3.0 * p - 5.0 * p ** 3) / 24.0


def bessel_v1(p):
    """First polynomial of the derivative expansion, ``V_1(p) = (-9p + 7p^3) / 24``."""
    return (-9.0 * p + 7.0 * p ** 3) / 24.0


# ---------------------------------------------------------------------------
# incomplete gamma ratios


def _check_mu(mu):
    mu = _finite("mu", mu)
    if mu < 1.0:
        raise DomainError(f"mu must be >= 1, got {mu!r}")
    return mu


def gamma_ratios(mu, y):
    """Incomplete gamma ratios ``P_mu(y) = gamma(mu, y)/Gamma(mu)`` and ``Q_mu(y)``.

    The tail that is small is computed directly (Taylor series for ``P``
    when ``y < mu + 1``, continued fraction for ``Q`` otherwise); the other
    one is its complement.

    Parameters
    ----------
    mu : float
        Order, ``mu >= 1``.
    y : float
        Argument, ``y >= 0``.

    Returns
    -------
    GammaTailPair
    """
    mu = _check_mu(mu)
    y = _finite("y", y)
    if y < 0.0:
        raise DomainError(f"y must be >= 0, got {y!r}")
    p, q = K.gamma_pq(mu, y)
    return GammaTailPair(mu, y, p, q)


def gamma_density(a, z):
    """``z**a * exp(-z) / Gamma(a + 1)`` computed without overflow."""
    return K.gamma_density(float(a), float(z))


# ---------------------------------------------------------------------------
# eta variable


def eta_of_y(y):
    """Signed ``eta`` with ``eta**2 / 2 = y - 1 - ln y``.

    Examples
    --------
    >>> eta_of_y(1.0).eta
    0.0
    """
    y = _finite("y", y)
    if y <= 0.0:
        raise DomainError(f"eta_of_y needs y > 0, got {y!r}")
    half_sq = -K.log1pmx(y - 1.0) if y > 0.5 else y - 1.0 - math.log(y)
    eta = math.sqrt(2.0 * max(half_sq, 0.0)) + 0.0
    return EtaValue(y, eta if y >= 1.0 else -eta)


def y_of_eta(eta):
    """Inverse of :func:`eta_of_y`: the ``y > 0`` on the branch ``sign(y - 1) = sign(eta)``."""
    eta = _finite("eta", eta)
    if eta == 0.0:
        return 1.0
    c = 0.5 * eta * eta
    if eta > 0.0:
        # t = y - 1 > 0 solves t - log1p(t) = c; the map is increasing and convex
        def fun(t):
            return -K.log1pmx(t) - c, t / (1.0 + t)

        if eta < 1.0:
            t0 = eta * (1.0 + eta * (1.0 / 3.0 + eta / 36.0))
        else:
            t0 = c + math.log1p(c) + 1.0
        t, _ = newton_bracketed(fun, t0, 0.0, 2.0 * c + 1.0, True, xtol=1e-16)
        return 1.0 + t
    if eta > -1.0:
        def fun(t):
            return -K.log1pmx(t) - c, t / (1.0 + t)

        t0 = eta * (1.0 + eta * (1.0 / 3.0 + eta / 36.0))
        lo = max(math.exp(-1.0 - c), 1e-300) - 1.0
        t, _ = newton_bracketed(fun, t0, lo, 0.0, False, xtol=1e-16)
        return 1.0 + t

    # deep left branch: work with s = ln y, convex decreasing in s
    def fun_log(s):
        ys = math.exp(s)
        return ys - 1.0 - s - c, ys - 1.0

    s0 = -1.0 - c
    s, _ = newton_bracketed(fun_log, s0, s0 - 1.0, 0.0, False, xtol=1e-16)
    return math.exp(s)


# ---------------------------------------------------------------------------
# Step 1 inversion


def _gamma_seed(mu, q0):
    """Asymptotic estimate of ``y`` with ``Q_mu(y) = q0``."""
    from .zeta_map import zeta1

    eta0 = math.sqrt(2.0 / mu) * inverfc(2.0 * q0)
    lam0 = y_of_eta(eta0)
    # first correction; with x = 0 the zeta machinery reduces to eta
    eps1 = zeta1(eta0, 0.0, lam0)
    lam = y_of_eta(eta0 + eps1 / mu)
    return mu * lam


def invert_gamma_q(mu, q0, maxiter=30):
    """Solve ``Q_mu(y) = q0`` for ``y``.

    An asymptotic estimate in the eta variable is refined by Newton's method
    on ``Q_mu(y) - q0`` with derivative ``-y**(mu-1) exp(-y) / Gamma(mu)``.

    Parameters
    ----------
    mu : float
        Order, ``mu >= 1``.
    q0 : float
        Target upper tail in ``(0, 1)``.
    maxiter : int, optional
        Newton step budget.

    Returns
    -------
    float
        ``y0`` with ``|Q_mu(y0)/q0 - 1|`` at the level of a few ulp.

    Raises
    ------
    DomainError
        If ``q0`` is not in ``(0, 1)``.
    ConvergenceError
        If Newton's method does not settle within ``maxiter`` steps.
    """
    mu = _check_mu(mu)
    q0 = _finite("q0", q0)
    if not 0.0 < q0 < 1.0:
        raise DomainError(f"q0 must lie in (0, 1), got {q0!r}")
    p0 = 1.0 - q0
    y = _gamma_seed(mu, q0)
    if not (y > 0.0 and math.isfinite(y)):
        y = mu
    for it in range(maxiter):
        p, q = K.gamma_pq(mu, y)
        # compare the tail that carries relative accuracy
        resid = q - q0 if y >= mu + 1.0 else p0 - p
        dens = K.gamma_density(mu - 1.0, y)
        if dens == 0.0:
            break
        step = resid / dens
        y_new = y + step
        if y_new <= 0.0:
            y_new = 0.5 * y
        if abs(y_new - y) <= 4e-16 * y:
            return y_new
        y = y_new
    p, q = K.gamma_pq(mu, y)
    if abs(q / q0 - 1.0) <= 1e-13:
        return y
    raise ConvergenceError("invert_gamma_q: Newton did not converge", best=y, iterations=maxiter)
