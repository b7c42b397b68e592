"""Scalar numeric kernels.

Everything here is written for numba's ``nopython`` mode and is compiled
through :func:`marcumq._jit.njit`.  No argument checking is done at this
level; the public wrappers in the sibling modules validate inputs.
"""

import math
from fractions import Fraction

import numpy as np

from ._jit import njit

SQRT_2PI = math.sqrt(2.0 * math.pi)
TINY = 1e-300
EPS = 2.220446049250313e-16

# Debye polynomials U_k(p) for the uniform large-order expansion of I_nu.
N_DEBYE = 14


def _debye_polynomials(n):
    # U_{k+1} = p^2 (1-p^2) U_k' / 2 + 1/8 int_0^p (1 - 5t^2) U_k dt
    polys = [[Fraction(1)]]
    for _ in range(n - 1):
        u = polys[-1]
        deg = len(u) - 1
        nxt = [Fraction(0)] * (deg + 4)
        for j in range(1, deg + 1):
            c = u[j] * j / 2
            nxt[j + 1] += c
            nxt[j + 3] -= c
        for j in range(deg + 1):
            nxt[j + 1] += u[j] / (8 * (j + 1))
            nxt[j + 3] -= 5 * u[j] / (8 * (j + 3))
        polys.append(nxt)
    width = max(len(p) for p in polys)
    table = np.zeros((n, width))
    for k, p in enumerate(polys):
        for j, c in enumerate(p):
            table[k, j] = float(c)
    return table


DEBYE_U = _debye_polynomials(N_DEBYE)

# Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
GK_NODES = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.0,
    ]
)
GK_WEIGHTS = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
# Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
G_WEIGHTS = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)


# --------------------------------------------------------------------------
# elementary helpers


@njit
def log1pmx(t):
    """log(1 + t) - t without cancellation for small ``t``."""
    if abs(t) > 0.25:
        return math.log1p(t) - t
    # alternating series -t^2/2 + t^3/3 - ...
    tk = t * t
    total = 0.0
    k = 2
    sign = -1.0
    while k < 200:
        term = sign * tk / k
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
        tk *= t
        sign = -sign
        k += 1
    return total


@njit
def gamma_star(a):
    """Gamma(a) / (sqrt(2 pi / a) (a/e)^a), the Stirling-scaled gamma, a > 0."""
    if a >= 10.0:
        r = 1.0 / a
        r2 = r * r
        s = r * (
            1.0 / 12.0
            - r2
            * (
                1.0 / 360.0
                - r2
                * (
                    1.0 / 1260.0
                    - r2
                    * (
                        1.0 / 1680.0
                        - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360360.0 - r2 / 156.0))
                    )
                )
            )
        )
        return math.exp(s)
    return math.exp(math.lgamma(a) + a - (a - 0.5) * math.log(a)) / SQRT_2PI


@njit
def _two_sum(a, b):
    """``(s, e)`` with ``s = fl(a + b)`` and ``a + b = s + e`` exactly."""
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit
def _two_prod_err(a, b):
    """Rounding error of the product ``a * b`` (Dekker, no FMA)."""
    p = a * b
    t = 134217729.0 * a
    ah = t - (t - a)
    al = a - ah
    t = 134217729.0 * b
    bh = t - (t - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


@njit
def gamma_density(a, z):
    """z^a e^{-z} / Gamma(a + 1) for a >= 0, z >= 0.

    For a >= 10 the exponent a (ln lam + 1 - lam), lam = z / a, is formed
    without cancellation: by series near lam = 1 and otherwise with the
    rounding errors of each partial result carried separately.
    """
    if z == 0.0:
        return 1.0 if a == 0.0 else 0.0
    if a == 0.0:
        return math.exp(-z)
    if a < 10.0 or z < 1e-200:
        return math.exp(a * math.log(z) - z - math.lgamma(a + 1.0))
    scale = SQRT_2PI * math.sqrt(a) * gamma_star(a)
    lam = z / a
    if 0.75 < lam < 1.25:
        return math.exp(a * log1pmx((z - a) / a)) / scale
    # ln(z / a) with the division remainder folded back in
    rem = (z - lam * a) - _two_prod_err(lam, a)
    lg = math.log(lam) + rem / z
    s1, e1 = _two_sum(a, -z)
    p = a * lg
    e2 = _two_prod_err(a, lg)
    h, e3 = _two_sum(s1, p)
    return math.exp(h) * math.exp(e1 + e2 + e3) / scale


# --------------------------------------------------------------------------
# incomplete gamma ratios


@njit
def gamma_p_series(a, y):
    """P_a(y) from its Taylor series; efficient for y < a + 1."""
    total = 1.0
    term = 1.0
    k = 1.0
    while k < 1e6:
        term *= y / (a + k)
        total += term
        if term <= 1e-17 * total:
            break
        k += 1.0
    return gamma_density(a, y) * total


@njit
def gamma_q_cfrac(a, y):
    """Q_a(y) from the Legendre continued fraction (modified Lentz); y >= a + 1."""
    b = y + 1.0 - a
    c = 1.0 / TINY
    d = 1.0 / b
    h = d
    i = 1.0
    while i < 1e6:
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < TINY:
            d = TINY
        c = b + an / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
        i += 1.0
    return a * gamma_density(a, y) * h


@njit
def gamma_pq(a, y):
    """(P_a(y), Q_a(y)); the smaller-cost tail is computed, the other complemented."""
    if y <= 0.0:
        return 0.0, 1.0
    if y < a + 1.0:
        p = gamma_p_series(a, y)
        return p, 1.0 - p
    q = gamma_q_cfrac(a, y)
    return 1.0 - q, q


# --------------------------------------------------------------------------
# modified Bessel function of the first kind, scaled by exp(-z)


@njit
def _bessel_series(nu, z):
    h = 0.25 * z * z
    total = 1.0
    term = 1.0
    k = 1.0
    while k < 10000.0:
        term *= h / (k * (nu + k))
        total += term
        if term <= 1e-17 * total:
            break
        k += 1.0
    return gamma_density(nu, 0.5 * z) * math.exp(-0.5 * z) * total


@njit
def _bessel_debye(nu, z):
    xi = z / nu
    r = math.sqrt(1.0 + xi * xi)
    p = 1.0 / r
    if xi >= 1.0:
        log_part = math.log1p(-(1.0 + 1.0 / (r + xi)) / (1.0 + r))
    else:
        log_part = math.log(xi / (1.0 + r))
    expo = nu * (1.0 / (r + xi) + log_part)
    total = 0.0
    inv_nu_k = 1.0
    width = DEBYE_U.shape[1]
    for k in range(DEBYE_U.shape[0]):
        # U_k has parity k in p and degree 3k
        deg = 3 * k
        if deg > width - 1:
            deg = width - 1
        acc = 0.0
        j = deg
        while j >= 0:
            acc = acc * p + DEBYE_U[k, j]
            j -= 1
        term = acc * inv_nu_k
        total += term
        if k > 2 and abs(term) < 1e-17 * abs(total):
            break
        inv_nu_k /= nu
    return math.exp(expo) * total / (SQRT_2PI * math.sqrt(nu) * math.sqrt(r))


DEBYE_MIN_ORDER = 50.0


@njit
def bessel_i_scaled(nu, z):
    """exp(-z) I_nu(z) for nu >= 0, z >= 0."""
    if z == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if nu >= DEBYE_MIN_ORDER:
        return _bessel_debye(nu, z)
    if z <= 12.0 or z <= nu:
        return _bessel_series(nu, z)
    # backward recurrence from a Debye-accurate pair of higher orders
    m = math.ceil(DEBYE_MIN_ORDER - nu)
    top = nu + m
    upper = _bessel_debye(top + 1.0, z)
    mid = _bessel_debye(top, z)
    k = top
    while k > nu + 0.5:
        lower = upper + (2.0 * k / z) * mid
        upper = mid
        mid = lower
        k -= 1.0
    return mid


# --------------------------------------------------------------------------
# Marcum functions: Poisson-weighted gamma-ratio series

POISSON_CUT = 1e-18
TERM_CUT = 1e-17
REANCHOR = 200
SAFE_MIN = 1e-250


@njit
def marcum_series(mu, x, y):
    """(P_mu(x, y), Q_mu(x, y), q_is_direct).

    The tail selected by the line y = x + mu is summed directly from
    positive terms; the other one is its complement.
    """
    if y <= 0.0:
        return 0.0, 1.0, True
    if x <= 0.0:
        p, q = gamma_pq(mu, y)
        return p, q, y > mu
    use_q = y > x + mu
    n_star = math.floor(x)
    if use_q:
        # lowest index with non-negligible Poisson weight relative to the mode
        n_lo = n_star
        ratio = 1.0
        while n_lo > 0.0:
            ratio *= n_lo / x
            if ratio < POISSON_CUT:
                break
            n_lo -= 1.0
        n = n_lo
        qn = gamma_pq(mu + n, y)[1]
        gn = gamma_density(mu + n, y)
        wn = gamma_density(n, x)
        total = 0.0
        prev = 0.0
        steps = 0
        while True:
            term = wn * qn
            total += term
            if n >= n_star and term <= TERM_CUT * total and term <= prev:
                break
            prev = term
            qn += gn
            gn *= y / (mu + n + 1.0)
            wn *= x / (n + 1.0)
            n += 1.0
            steps += 1
            if steps % REANCHOR == 0:
                qn = gamma_pq(mu + n, y)[1]
                gn = gamma_density(mu + n, y)
                wn = gamma_density(n, x)
            else:
                # recursed values near underflow carry no relative accuracy
                if gn < SAFE_MIN:
                    gn = gamma_density(mu + n, y)
                if wn < SAFE_MIN:
                    wn = gamma_density(n, x)
            if steps > 10000000:
                break
        return 1.0 - total, total, True
    n_hi = n_star
    ratio = 1.0
    while True:
        ratio *= x / (n_hi + 1.0)
        n_hi += 1.0
        if ratio < POISSON_CUT:
            break
    n = n_hi
    pn = gamma_pq(mu + n, y)[0]
    gn = gamma_density(mu + n - 1.0, y)
    wn = gamma_density(n, x)
    total = 0.0
    prev = 0.0
    steps = 0
    while True:
        term = wn * pn
        total += term
        if n <= 0.0:
            break
        if n <= n_star and term <= TERM_CUT * total and term <= prev:
            break
        prev = term
        # P_{a-1} = P_a + density(a-1)
        pn += gn
        n -= 1.0
        # multiply first: the ratios alone overflow for subnormal x or y
        gn = gn * (mu + n) / y
        wn = wn * (n + 1.0) / x
        steps += 1
        if steps % REANCHOR == 0:
            pn = gamma_pq(mu + n, y)[0]
            gn = gamma_density(mu + n - 1.0, y)
            wn = gamma_density(n, x)
        else:
            if gn < SAFE_MIN:
                gn = gamma_density(mu + n - 1.0, y)
            if wn < SAFE_MIN:
                wn = gamma_density(n, x)
    return total, 1.0 - total, False


@njit
def marcum_bessel_term(mu, x, y):
    """(y/x)^{mu/2} e^{-x-y} I_mu(2 sqrt(xy)) for x, y > 0, assembled in log space."""
    z = 2.0 * math.sqrt(x * y)
    d = math.sqrt(x) - math.sqrt(y)
    expo = 0.5 * mu * math.log(y / x) - d * d
    return math.exp(expo) * bessel_i_scaled(mu, z)


# --------------------------------------------------------------------------
# adaptive Gauss-Kronrod quadrature of the integral representation


@njit
def marcum_integrand(t, mu, x):
    if t <= 0.0:
        if mu == 1.0:
            return math.exp(-x)
        return 0.0
    if x == 0.0:
        return gamma_density(mu - 1.0, t)
    z = 2.0 * math.sqrt(x * t)
    d = math.sqrt(t) - math.sqrt(x)
    expo = 0.5 * (mu - 1.0) * math.log(t / x) - d * d
    return math.exp(expo) * bessel_i_scaled(mu - 1.0, z)


@njit
def _gk15(a, b, mu, x):
    half = 0.5 * (b - a)
    centre = 0.5 * (a + b)
    fc = marcum_integrand(centre, mu, x)
    kron = fc * GK_WEIGHTS[7]
    gauss = fc * G_WEIGHTS[3]
    for j in range(7):
        dx = half * GK_NODES[j]
        f1 = marcum_integrand(centre - dx, mu, x)
        f2 = marcum_integrand(centre + dx, mu, x)
        kron += GK_WEIGHTS[j] * (f1 + f2)
        if j % 2 == 1:
            gauss += G_WEIGHTS[j // 2] * (f1 + f2)
    return kron * half, abs((kron - gauss) * half)


@njit
def integrate_marcum(mu, x, a, b, epsrel, epsabs, limit):
    """Globally adaptive GK15 on [a, b]; returns (value, error, converged)."""
    lo = np.empty(limit)
    hi = np.empty(limit)
    val = np.empty(limit)
    err = np.empty(limit)
    v, e = _gk15(a, b, mu, x)
    lo[0] = a
    hi[0] = b
    val[0] = v
    err[0] = e
    count = 1
    total = v
    toterr = e
    while toterr > max(epsabs, epsrel * abs(total)):
        if count >= limit:
            return total, toterr, False
        worst = 0
        for i in range(1, count):
            if err[i] > err[worst]:
                worst = i
        a0 = lo[worst]
        b0 = hi[worst]
        m = 0.5 * (a0 + b0)
        if m <= a0 or m >= b0:
            return total, toterr, False
        v1, e1 = _gk15(a0, m, mu, x)
        v2, e2 = _gk15(m, b0, mu, x)
        hi[worst] = m
        val[worst] = v1
        err[worst] = e1
        lo[count] = m
        hi[count] = b0
        val[count] = v2
        err[count] = e2
        count += 1
        total = 0.0
        toterr = 0.0
        for i in range(count):
            total += val[i]
            toterr += err[i]
    return total, toterr, True
