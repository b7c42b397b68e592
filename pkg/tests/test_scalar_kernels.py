import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from marcumq import DomainError
from marcumq.scalar_kernels import (
    bessel_i_scaled,
    bessel_u1,
    bessel_v1,
    erfc,
    eta_of_y,
    gamma_ratios,
    inverfc,
    invert_gamma_q,
    y_of_eta,
)

from mp_oracles import rel

mpmath.mp.dps = 40


# erfc / inverfc


def test_erfc_at_zero():
    assert erfc(0.0) == 1.0


def test_erfc_reflection():
    assert abs(erfc(-0.7) + erfc(0.7) - 2.0) <= 4e-16


def test_erfc_one_against_integral():
    # brute-force quadrature of the defining integral at 50 digits
    with mpmath.workdps(50):
        ref = 2 / mpmath.sqrt(mpmath.pi) * mpmath.quad(lambda t: mpmath.exp(-t * t), [1, 3, 10, mpmath.inf])
    assert rel(erfc(1.0), float(ref)) <= 1e-15


@pytest.mark.parametrize("z", [-3.0, -0.5, 0.1, 0.9, 2.5, 6.0, 12.0, 25.0])
def test_erfc_relative_accuracy(z):
    assert rel(erfc(z), float(mpmath.erfc(z))) <= 1e-15


def test_erfc_underflows_to_zero():
    assert erfc(40.0) == 0.0


def test_erfc_rejects_nan():
    with pytest.raises(DomainError):
        erfc(math.nan)


def test_inverfc_at_one():
    assert inverfc(1.0) == 0.0


def test_inverfc_reflection():
    assert inverfc(2.0 - 0.3) == pytest.approx(-inverfc(0.3), rel=1e-15)


def test_inverfc_matches_bisection():
    lo, hi = 0.0, 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if math.erfc(mid) > 1e-6:
            lo = mid
        else:
            hi = mid
    assert inverfc(1e-6) == pytest.approx(0.5 * (lo + hi), rel=1e-14)


@given(st.floats(min_value=1e-300, max_value=1.999999))
@settings(max_examples=300, deadline=None)
def test_inverfc_round_trip(s):
    assert rel(erfc(inverfc(s)), s) <= 1e-13


@pytest.mark.parametrize("s", [0.0, 2.0, -1.0, 3.0])
def test_inverfc_domain(s):
    with pytest.raises(DomainError):
        inverfc(s)


# Bessel


def test_bessel_trivial_values():
    assert bessel_i_scaled(0.0, 0.0) == 1.0
    assert bessel_i_scaled(1.0, 0.0) == 0.0


def test_bessel_against_maclaurin_series():
    with mpmath.workdps(60):
        z = mpmath.mpf(25)
        s = mpmath.nsum(lambda k: (z / 2) ** (2 * k + 10) / (mpmath.factorial(k) * mpmath.factorial(k + 10)),
                        [0, mpmath.inf])
        ref = float(s * mpmath.exp(-z))
    assert rel(bessel_i_scaled(10.0, 25.0), ref) <= 1e-13


@pytest.mark.parametrize(
    "nu,z",
    [(0.0, 0.3), (0.5, 7.0), (2.3, 40.0), (9.7, 3.0), (30.0, 500.0), (49.9, 80.0),
     (50.0, 10.0), (75.5, 75.5), (400.0, 1e3), (1e3, 2e3), (2e3, 1e4), (1e4, 1e5), (3.0, 1e5)],
)
def test_bessel_against_mpmath(nu, z):
    ref = float(mpmath.besseli(nu, z, maxterms=10**6) * mpmath.exp(-z))
    assert rel(bessel_i_scaled(nu, z), ref) <= 1e-13


@given(st.floats(min_value=0.5, max_value=2000.0), st.floats(min_value=0.01, max_value=5000.0))
@settings(max_examples=200, deadline=None)
def test_bessel_recurrence(nu, z):
    lhs = bessel_i_scaled(nu - 0.5, z) - bessel_i_scaled(nu + 1.5, z)
    rhs = 2.0 * (nu + 0.5) / z * bessel_i_scaled(nu + 0.5, z)
    if rhs > 1e-280:
        assert rel(lhs, rhs) <= 1e-12


def test_bessel_domain():
    with pytest.raises(DomainError):
        bessel_i_scaled(1.0, -1.0)


def test_debye_polynomials_at_one():
    assert bessel_u1(1.0) == pytest.approx(-1.0 / 12.0, abs=1e-17)
    assert bessel_v1(1.0) == pytest.approx(-1.0 / 12.0, abs=1e-17)
    assert bessel_u1(1e-300) == pytest.approx(0.0, abs=1e-299)


# incomplete gamma ratios


def test_gamma_ratios_exponential():
    g = gamma_ratios(1.0, 2.0)
    assert rel(g.q, math.exp(-2.0)) <= 1e-15


def test_gamma_ratios_at_zero():
    g = gamma_ratios(7.5, 0.0)
    assert (g.p, g.q) == (0.0, 1.0)


def test_gamma_ratios_term_by_term():
    # gamma(10, 10)/Gamma(10) = e^-10 sum_{k>=10} 10^k / k!
    with mpmath.workdps(50):
        ref = mpmath.exp(-10) * mpmath.nsum(lambda k: mpmath.mpf(10) ** k / mpmath.factorial(k), [10, mpmath.inf])
    g = gamma_ratios(10.0, 10.0)
    assert rel(g.p, float(ref)) <= 1e-14


@pytest.mark.parametrize("mu", [1.0, 3.3, 10.0, 100.0, 1e3, 1e4])
@pytest.mark.parametrize("t", [0.01, 0.5, 0.9, 1.0, 1.1, 2.0, 3.0])
def test_gamma_ratios_small_tail_relative(mu, t):
    y = t * mu
    g = gamma_ratios(mu, y)
    if y >= mu + 1.0:
        got, ref = g.q, float(mpmath.gammainc(mu, y, mpmath.inf, regularized=True))
    else:
        got, ref = g.p, float(mpmath.gammainc(mu, 0, y, regularized=True))
    if ref < 1e-290:
        # below the normal range both sides must agree on (near) underflow
        assert got < 1e-280
    else:
        assert rel(got, ref) <= 1e-13


@given(st.floats(min_value=1.0, max_value=1e4), st.floats(min_value=0.0, max_value=3.0))
@settings(max_examples=300, deadline=None)
def test_gamma_ratios_complement(mu, t):
    g = gamma_ratios(mu, t * mu)
    assert abs(g.p + g.q - 1.0) <= 4 * 2.2e-16


@given(st.floats(min_value=1.0, max_value=1e3), st.floats(min_value=0.01, max_value=3.0))
@settings(max_examples=200, deadline=None)
def test_gamma_q_decreasing(mu, t):
    y = t * mu
    assert gamma_ratios(mu, y * (1 + 1e-6)).q <= gamma_ratios(mu, y).q


@pytest.mark.parametrize("mu,y", [(0.5, 1.0), (2.0, -1.0)])
def test_gamma_ratios_domain(mu, y):
    with pytest.raises(DomainError):
        gamma_ratios(mu, y)


def test_invert_gamma_q_exponential():
    assert invert_gamma_q(1.0, 0.25) == pytest.approx(-math.log(0.25), rel=1e-14)


def test_invert_gamma_q_step_one_residual():
    y0 = invert_gamma_q(10.0, 1e-6)
    assert rel(gamma_ratios(10.0, y0).q, 1e-6) <= 1.27e-14


def test_invert_gamma_q_matches_bisection():
    lo, hi = 0.0, 200.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if gamma_ratios(50.0, mid).q > 0.4:
            lo = mid
        else:
            hi = mid
    assert invert_gamma_q(50.0, 0.4) == pytest.approx(0.5 * (lo + hi), rel=1e-13)


@pytest.mark.parametrize("mu", [1.0, 10.0, 1e2, 1e3, 1e4])
@pytest.mark.parametrize("q", [1e-8, 1e-6, 0.1, 0.4, 0.5, 0.9, 1 - 1e-6])
def test_invert_gamma_q_round_trip(mu, q):
    y0 = invert_gamma_q(mu, q)
    g = gamma_ratios(mu, y0)
    # compare in the tail that carries relative accuracy
    if q > 0.5:
        assert rel(g.p, 1.0 - q) <= 1e-12 * q / (1.0 - q) + 1e-12
    assert rel(g.q, q) <= 1e-12


@pytest.mark.parametrize("q", [0.0, 1.0, -0.1, 1.5])
def test_invert_gamma_q_domain(q):
    with pytest.raises(DomainError):
        invert_gamma_q(5.0, q)


# eta


def test_eta_transition():
    assert eta_of_y(1.0).eta == 0.0


def test_eta_at_e():
    assert eta_of_y(math.e).eta == pytest.approx(math.sqrt(2 * (math.e - 2)), rel=1e-15)


def test_eta_round_trip_three():
    assert y_of_eta(eta_of_y(3.0).eta) == pytest.approx(3.0, rel=1e-13)


@given(st.floats(min_value=1e-12, max_value=1e6))
@settings(max_examples=300, deadline=None)
def test_eta_round_trip(y):
    e = eta_of_y(y)
    assert math.copysign(1.0, e.eta) == (1.0 if y >= 1.0 else -1.0) or e.eta == 0.0
    assert rel(y_of_eta(e.eta), y) <= 1e-13


@pytest.mark.parametrize("y", [1e-8, 0.3, 0.999, 1.001, 2.0, 50.0])
def test_eta_half_square(y):
    e = eta_of_y(y)
    ref = mpmath.mpf(y) - 1 - mpmath.log(y)
    assert rel(0.5 * e.eta ** 2, float(ref)) <= 1e-14


def test_eta_domain():
    with pytest.raises(DomainError):
        eta_of_y(0.0)
