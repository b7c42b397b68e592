"""Generalized Marcum Q and P functions: evaluation and inversion.

``Q_mu(x, y)`` is the upper tail of the noncentral gamma (scaled noncentral
chi-square) distribution with order ``mu``, noncentrality ``x`` and
threshold ``y``; ``P_mu(x, y) = 1 - Q_mu(x, y)``.  The package evaluates
both tails to full relative precision, inverts them in ``x`` or ``y`` by
uniform asymptotic expansions, safeguarded iteration or a hybrid of the two,
and provides an independent quadrature oracle.
"""

from ._jit import USING_NUMBA
from .errors import (
    BranchInfeasibleError,
    ConvergenceError,
    DomainError,
    InfeasibleError,
    MarcumError,
    QuadratureError,
    SingularPointError,
)
from .inversion import (
    InversionReport,
    TailSpec,
    TwoStepResult,
    invert_hybrid,
    invert_x_asymptotic,
    invert_x_iterative,
    invert_y_asymptotic,
    invert_y_iterative,
    two_step,
    zeta0_from_tail,
)
from .marcum_eval import (
    ConvexityCertificate,
    MarcumParams,
    ProbabilityPair,
    RecurrenceResiduals,
    c_ratio,
    convexity_bounds,
    dq_dx,
    dq_dy,
    marcum,
    marcum_asymptotic,
    marcum_p,
    marcum_q,
    recurrence_check,
    transition_y,
)
from .oracle import TableRow, quad_p, quad_q, relative_delta, run_table1, run_table2, write_table_csv
from .scalar_kernels import (
    EtaValue,
    GammaTailPair,
    bessel_i_scaled,
    erfc,
    eta_of_y,
    gamma_ratios,
    inverfc,
    invert_gamma_q,
    y_of_eta,
)
from .zeta_map import (
    ExpansionCoeffs,
    ZetaPoint,
    expansion_coeffs,
    invert_zeta_x,
    invert_zeta_y,
    zeta,
    zeta1,
)

__version__ = "0.1.0"
