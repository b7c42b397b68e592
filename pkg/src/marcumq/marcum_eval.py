"""Evaluation of the generalized Marcum functions and their derivatives.

``Q_mu(x, y)`` and ``P_mu(x, y) = 1 - Q_mu(x, y)`` are evaluated from the
Poisson mixture ``Q_mu(x, y) = exp(-x) sum x**n/n! Q_{mu+n}(y)``.  The
smaller tail is summed directly: ``Q`` above the line ``y = x + mu`` and
``P`` below it.
"""

import math
import numbers
from dataclasses import dataclass

from . import _kernels as K
from .errors import DomainError
from .scalar_kernels import erfc
from .zeta_map import _zeta, d0

__all__ = [
    "MU_SOFT_LIMIT",
    "MarcumParams",
    "ProbabilityPair",
    "ConvexityCertificate",
    "marcum",
    "marcum_q",
    "marcum_p",
    "marcum_asymptotic",
    "dq_dx",
    "dq_dy",
    "c_ratio",
    "RecurrenceResiduals",
    "recurrence_check",
    "convexity_bounds",
    "transition_y",
]

MU_SOFT_LIMIT = 1e4


@dataclass(frozen=True)
class MarcumParams:
    """Order and (unscaled) arguments of ``Q_mu(x, y)``.

    Parameters
    ----------
    mu : float
        Order, ``mu >= 1``.
    x, y : float
        Nonnegative arguments.
    mu_limit : float, optional
        Largest order accepted; the double-precision paths are validated up
        to ``1e4``.  Raise it at your own risk.
    """

    mu: float
    x: float
    y: float
    mu_limit: float = MU_SOFT_LIMIT

    def __post_init__(self):
        for name in ("mu", "x", "y"):
            v = getattr(self, name)
            if not isinstance(v, numbers.Real) or not math.isfinite(v):
                raise DomainError(f"{name} must be a finite real, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.mu < 1.0:
            raise DomainError(f"mu must be >= 1, got {self.mu!r}")
        if self.mu > self.mu_limit:
            raise DomainError(f"mu = {self.mu!r} exceeds the configured limit {self.mu_limit!r}")
        if self.x < 0.0:
            raise DomainError(f"x must be >= 0, got {self.x!r}")
        if self.y < 0.0:
            raise DomainError(f"y must be >= 0, got {self.y!r}")


@dataclass(frozen=True)
class ProbabilityPair:
    """Upper and lower tails with the method that produced them.

    ``q_direct`` tells which tail was computed directly and therefore
    carries relative accuracy; the other one is its complement.
    """

    q: float
    p: float
    method: str
    q_direct: bool = True

    @property
    def direct(self):
        """The directly computed (small) tail."""
        return self.q if self.q_direct else self.p


def _params(params, x=None, y=None):
    if isinstance(params, MarcumParams):
        return params
    return MarcumParams(params, x, y)


def marcum(params, x=None, y=None):
    """``Q_mu(x, y)`` and ``P_mu(x, y)``.

    Accepts either a :class:`MarcumParams` or ``marcum(mu, x, y)``.

    Returns
    -------
    ProbabilityPair
        ``method`` is ``"closed_form"`` for ``y = 0`` and for ``x = 0``
        (incomplete gamma ratios), ``"series"`` otherwise.

    Examples
    --------
    >>> marcum(5, 3, 0).q
    1.0
    """
    pr = _params(params, x, y)
    mu, x, y = pr.mu, pr.x, pr.y
    if y == 0.0:
        return ProbabilityPair(1.0, 0.0, "closed_form", False)
    if x == 0.0:
        p, q = K.gamma_pq(mu, y)
        return ProbabilityPair(q, p, "closed_form", y >= mu + 1.0)
    p, q, q_direct = K.marcum_series(mu, x, y)
    return ProbabilityPair(q, p, "series", q_direct)


def marcum_q(mu, x, y):
    """Shorthand for ``marcum(mu, x, y).q``."""
    return marcum(mu, x, y).q


def marcum_p(mu, x, y):
    """Shorthand for ``marcum(mu, x, y).p``."""
    return marcum(mu, x, y).p


def marcum_asymptotic(params, x=None, y=None):
    """Leading-order uniform asymptotic approximation.

    With scaled ``x' = x/mu``, ``y' = y/mu`` and ``zeta = zeta(x', y')``::

        Q = erfc(zeta sqrt(mu/2)) / 2 - exp(-mu zeta^2/2) / sqrt(2 pi mu) * d0
        P = erfc(-zeta sqrt(mu/2)) / 2 + exp(-mu zeta^2/2) / sqrt(2 pi mu) * d0

    Each tail is formed from its own expression, so the small one keeps
    relative accuracy.  Only the first coefficient of the remainder series is
    used; the relative error in the small tail is ``O(1/mu**2)`` after
    division by the error-function term.
    """
    pr = _params(params, x, y)
    mu = pr.mu
    if pr.y == 0.0:
        return ProbabilityPair(1.0, 0.0, "closed_form", False)
    xs, ys = pr.x / mu, pr.y / mu
    z = _zeta(xs, ys)
    r = math.exp(-0.5 * mu * z * z) / math.sqrt(2.0 * math.pi * mu) * d0(xs, ys)
    arg = z * math.sqrt(0.5 * mu)
    q = 0.5 * erfc(arg) - r
    p = 0.5 * erfc(-arg) + r
    return ProbabilityPair(q, p, "asymptotic", z > 0.0)


# ---------------------------------------------------------------------------
# derivatives and recurrences


def dq_dx(params, x=None, y=None):
    """``dQ/dx = (y/x)**(mu/2) exp(-x-y) I_mu(2 sqrt(xy)) > 0``.

    At ``x = 0`` use the limit ``Q_{mu+1}(0, y) - Q_mu(0, y)``, i.e. the
    gamma density ``y**mu exp(-y) / Gamma(mu + 1)``; this function raises
    there instead because the closed form is 0 * inf.
    """
    pr = _params(params, x, y)
    if pr.x == 0.0:
        raise DomainError("dq_dx needs x > 0; the x -> 0 limit is the gamma density y^mu e^-y / Gamma(mu+1)")
    if pr.y == 0.0:
        return 0.0
    return K.marcum_bessel_term(pr.mu, pr.x, pr.y)


def dq_dy(params, x=None, y=None):
    """``dQ/dy = -(y/x)**((mu-1)/2) exp(-x-y) I_{mu-1}(2 sqrt(xy)) < 0``.

    At ``x = 0`` returns ``-y**(mu-1) exp(-y) / Gamma(mu)``.
    """
    pr = _params(params, x, y)
    if pr.x == 0.0:
        return -K.gamma_density(pr.mu - 1.0, pr.y)
    if pr.y == 0.0:
        return -math.exp(-pr.x) if pr.mu == 1.0 else 0.0
    return -K.marcum_bessel_term(pr.mu - 1.0, pr.x, pr.y)


def c_ratio(mu, x, y):
    """``c_mu(x, y) = sqrt(y/x) I_mu(2 sqrt(xy)) / I_{mu-1}(2 sqrt(xy))``; ``y/mu`` at ``x = 0``."""
    if x == 0.0:
        return y / mu
    z = 2.0 * math.sqrt(x * y)
    return math.sqrt(y / x) * K.bessel_i_scaled(mu, z) / K.bessel_i_scaled(mu - 1.0, z)


@dataclass(frozen=True)
class RecurrenceResiduals:
    """Normalized residuals of the two-term and three-term recurrences."""

    two_term: float
    three_term: float


def recurrence_check(params, x=None, y=None):
    """Residuals of the order recurrences at ``(mu, x, y)``.

    ``two_term = |Q_{mu+1} - Q_mu - B_mu|`` with
    ``B_mu = (y/x)**(mu/2) exp(-x-y) I_mu(2 sqrt(xy))`` and ``three_term =
    |Q_{mu+1} - (1 + c_mu) Q_mu + c_mu Q_{mu-1}|``, both divided by the
    largest tail involved.  The recurrences are applied to whichever tail is
    summed directly (``P`` obeys them with the sign of ``B_mu`` flipped), so
    the residuals measure relative consistency.  ``three_term`` is ``nan``
    when ``mu < 2``.
    """
    pr = _params(params, x, y)
    mu, x, y = pr.mu, pr.x, pr.y
    if x <= 0.0 or y <= 0.0:
        raise DomainError("recurrence_check needs x > 0 and y > 0")
    use_q = y > x + mu
    lim = max(pr.mu_limit, mu + 1.0)

    def tail(m):
        r = marcum(MarcumParams(m, x, y, lim))
        return r.q if use_q else r.p

    sign = 1.0 if use_q else -1.0
    t0 = tail(mu)
    t1 = tail(mu + 1.0)
    b = K.marcum_bessel_term(mu, x, y)
    scale = max(abs(t0), abs(t1))
    two = abs(t1 - t0 - sign * b) / scale
    if mu < 2.0:
        return RecurrenceResiduals(two, math.nan)
    tm = tail(mu - 1.0)
    c = c_ratio(mu, x, y)
    three = abs(t1 - (1.0 + c) * t0 + c * tm) / max(scale, abs(tm), abs(c * tm))
    return RecurrenceResiduals(two, three)


# ---------------------------------------------------------------------------
# convexity and the transition line


@dataclass(frozen=True)
class ConvexityCertificate:
    """Proven signs of the second derivatives of ``Q_mu``.

    ``d2x`` / ``d2y`` are ``"concave"``, ``"convex"`` or ``"indeterminate"``
    (and ``d2y`` is also ``"indeterminate"`` when ``mu < 3/2``).
    """

    d2x: str
    d2y: str


def convexity_bounds(mu, x, y):
    """Sign certificates for ``d2Q/dx2`` and ``d2Q/dy2``.

    ``d2Q/dx2 < 0`` if ``x > y - mu - 1/2`` and ``> 0`` if ``x < y - mu - 1``
    (``mu > 0``).  ``d2Q/dy2 > 0`` if ``y > x + mu - 1`` and ``< 0`` if
    ``y < x + mu - 3/2`` (``mu >= 3/2``).
    """
    if x > y - mu - 0.5:
        d2x = "concave"
    elif x < y - mu - 1.0:
        d2x = "convex"
    else:
        d2x = "indeterminate"
    if mu < 1.5:
        d2y = "indeterminate"
    elif y > x + mu - 1.0:
        d2y = "convex"
    elif y < x + mu - 1.5:
        d2y = "concave"
    else:
        d2y = "indeterminate"
    return ConvexityCertificate(d2x, d2y)


def transition_y(mu, x):
    """Approximate median ``y`` with ``Q_mu(x, y) = 1/2``.

    ``y = x + mu - (3x' + 1) / (3 (2x' + 1))`` with ``x' = x / mu``.

    Examples
    --------
    >>> round(transition_y(30.0, 0.0), 12)
    29.666666666667
    """
    if mu <= 0.0 or x < 0.0:
        raise DomainError("transition_y needs mu > 0 and x >= 0")
    xs = x / mu
    return x + mu - (3.0 * xs + 1.0) / (3.0 * (2.0 * xs + 1.0))
