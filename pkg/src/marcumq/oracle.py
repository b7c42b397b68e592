"""Independent checks: a quadrature oracle, residual metrics and error tables.

The oracle integrates the defining integral

    Q_mu(x, y) = int_y^inf (t/x)**((mu-1)/2) exp(-x-t) I_{mu-1}(2 sqrt(xt)) dt

with adaptive Gauss-Kronrod (7/15) bisection.  The integrand is assembled
as ``exp((mu-1)/2 ln(t/x) - (sqrt t - sqrt x)**2) * [exp(-z) I_{mu-1}(z)]``,
so neither the power factor nor the Bessel function can overflow.  It
shares nothing with the series evaluator except the scaled Bessel and
gamma-density kernels.
"""

import csv
import math
from dataclasses import dataclass

from . import _kernels as K
from .errors import DomainError, QuadratureError
from .inversion import TailSpec, invert_y_asymptotic, two_step

__all__ = [
    "ORACLE_MU_MAX",
    "TABLE1_SCENARIOS",
    "TABLE2_QUANTILES",
    "TABLE_MU",
    "TableRow",
    "quad_q",
    "quad_p",
    "relative_delta",
    "run_table1",
    "run_table2",
    "write_table_csv",
]

ORACLE_MU_MAX = 200.0
EPSREL = 1e-12
LIMIT = 2000
# relative size below which another stretch of the upper tail is ignored
TAIL_CUT = 1e-18

TABLE_MU = (10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0)
TABLE1_SCENARIOS = ((1e-6, 0.9), (1e-8, 0.999), (0.4, 0.6))
TABLE2_QUANTILES = (1e-6, 0.5, 0.9999)


def _check(mu, x, y):
    for name, v in (("mu", mu), ("x", x), ("y", y)):
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v!r}")
    if not 1.0 <= mu <= ORACLE_MU_MAX:
        raise DomainError(f"oracle needs 1 <= mu <= {ORACLE_MU_MAX:g}, got {mu!r}")
    if x < 0.0 or y < 0.0:
        raise DomainError("oracle needs x >= 0 and y >= 0")
    return float(mu), float(x), float(y)


def _integrate(mu, x, a, b, epsabs):
    v, err, ok = K.integrate_marcum(mu, x, a, b, EPSREL, epsabs, LIMIT)
    if not ok:
        raise QuadratureError(
            f"quadrature on [{a:g}, {b:g}] stopped at error {err:.3e}", estimate=v, error=err
        )
    return v, err


def _upper(mu, x, y):
    width = 40.0 * math.sqrt(mu + x) + 40.0
    total, err = _integrate(mu, x, y, y + width, 1e-300)
    a = y + width
    # the integrand decays like a Gaussian beyond the window; keep going until it is negligible
    for _ in range(50):
        piece, e = _integrate(mu, x, a, a + width, max(1e-300, 1e-3 * EPSREL * total))
        total += piece
        err += e
        if piece <= TAIL_CUT * total:
            break
        a += width
    else:
        raise QuadratureError("upper tail did not decay", estimate=total, error=err)
    return total


def _lower(mu, x, y):
    total, _ = _integrate(mu, x, 0.0, y, 1e-300)
    return total


def _direct(mu, x, y):
    """``(tail, is_q)`` for the tail integrated directly."""
    if y > x + mu:
        return _upper(mu, x, y), True
    return _lower(mu, x, y), False


def quad_q(mu, x, y):
    """``Q_mu(x, y)`` by adaptive quadrature (``mu <= 200``).

    The smaller tail is integrated: ``[y, inf)`` above the line
    ``y = x + mu`` and ``[0, y]`` below it, where ``Q`` is formed as ``1 - P``.

    Raises
    ------
    DomainError
        Outside ``1 <= mu <= 200``, ``x, y >= 0``.
    QuadratureError
        If the error target is not met; ``.estimate`` holds the last value.

    Examples
    --------
    >>> quad_q(4.0, 2.5, 0.0)
    1.0
    """
    mu, x, y = _check(mu, x, y)
    if y == 0.0:
        return 1.0
    t, is_q = _direct(mu, x, y)
    return t if is_q else 1.0 - t


def quad_p(mu, x, y):
    """``P_mu(x, y) = 1 - Q_mu(x, y)`` by adaptive quadrature; see :func:`quad_q`."""
    mu, x, y = _check(mu, x, y)
    if y == 0.0:
        return 0.0
    t, is_q = _direct(mu, x, y)
    return 1.0 - t if is_q else t


def relative_delta(target, recomputed):
    """``|target / recomputed - 1|``.

    Examples
    --------
    >>> relative_delta(0.25, 0.25)
    0.0
    """
    if recomputed == 0.0:
        raise ZeroDivisionError("relative_delta: recomputed value is zero")
    return abs(target / recomputed - 1.0)


# ---------------------------------------------------------------------------
# error tables


@dataclass(frozen=True)
class TableRow:
    """One cell pair of an error table.

    For the two-step table ``scenario = (q0, q1)`` and the deltas are the
    Step 1 and Step 2 residuals.  For the ``y``-inversion table
    ``scenario = (q, "x=mu")`` and the deltas are the residuals without and
    with the first-order correction.
    """

    mu: float
    scenario: tuple
    delta0: float
    delta1: float

    def scenario_label(self):
        a, b = self.scenario
        return f"{a!r}/{b!r}" if not isinstance(b, str) else f"{a!r}/{b}"


def _check_table_mu(mu_list):
    out = []
    for mu in mu_list:
        mu = float(mu)
        if not 10.0 <= mu <= 1e4:
            raise DomainError(f"table rows need 10 <= mu <= 1e4, got {mu!r}")
        out.append(mu)
    return out


def run_table1(mu_list=TABLE_MU, scenarios=TABLE1_SCENARIOS):
    """Two-step inversion errors with an asymptotic-only second step.

    Rows are ordered by ``mu`` and then by the order of ``scenarios``.
    """
    rows = []
    for mu in _check_table_mu(mu_list):
        for q0, q1 in scenarios:
            r = two_step(mu, q0, q1, step2="asymptotic")
            rows.append(TableRow(mu, (float(q0), float(q1)), r.delta0, r.delta1))
    return rows


def run_table2(mu_list=TABLE_MU, q_list=TABLE2_QUANTILES):
    """Asymptotic ``y``-inversion errors at ``x = mu`` for a ``Q = q`` target."""
    rows = []
    for mu in _check_table_mu(mu_list):
        for q in q_list:
            tail = TailSpec("Q", q)
            lead = invert_y_asymptotic(mu, mu, tail, use_zeta1=False)
            corr = invert_y_asymptotic(mu, mu, tail, use_zeta1=True)
            rows.append(TableRow(mu, (float(q), "x=mu"), lead.residual, corr.residual))
    return rows


def write_table_csv(rows, fh, full_precision=False):
    """Write ``mu,scenario,delta0,delta1`` rows to the text stream ``fh``.

    Deltas use three significant digits (``.2e``) unless ``full_precision``,
    which switches to 17.
    """
    fmt = ".16e" if full_precision else ".2e"
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["mu", "scenario", "delta0", "delta1"])
    for r in rows:
        w.writerow([f"{r.mu:g}", r.scenario_label(), format(r.delta0, fmt), format(r.delta1, fmt)])
