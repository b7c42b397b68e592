import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from marcumq import (
    BranchInfeasibleError,
    ConvergenceError,
    DomainError,
    InfeasibleError,
    TailSpec,
    invert_gamma_q,
    invert_hybrid,
    invert_x_asymptotic,
    invert_x_iterative,
    invert_y_asymptotic,
    invert_y_iterative,
    marcum,
    transition_y,
    two_step,
    zeta0_from_tail,
)
from marcumq.inversion import ACCEPT_TOL
from marcumq.scalar_kernels import erfc, gamma_ratios, inverfc

from mp_oracles import rel


# targets


def test_tail_spec_normalizes_kind():
    assert TailSpec("q", 0.25).kind == "Q"
    assert TailSpec.p(0.25) == TailSpec("P", 0.25)


@pytest.mark.parametrize("kind,value", [("Q", 0.0), ("Q", 1.0), ("P", -0.1), ("R", 0.5), ("Q", math.nan)])
def test_tail_spec_domain(kind, value):
    with pytest.raises(DomainError):
        TailSpec(kind, value)


def test_zeta0_at_median():
    assert zeta0_from_tail(100.0, TailSpec("Q", 0.5)) == 0.0


def test_zeta0_p_sign_flip():
    assert zeta0_from_tail(30.0, TailSpec("P", 0.01)) == -zeta0_from_tail(30.0, TailSpec("Q", 0.01))


def test_zeta0_erfc_round_trip():
    z0 = zeta0_from_tail(100.0, TailSpec("Q", 0.9))
    assert z0 == math.sqrt(2.0 / 100.0) * inverfc(1.8)
    assert rel(0.5 * erfc(z0 * math.sqrt(50.0)), 0.9) <= 1e-13


# asymptotic inversion in x


def test_asymptotic_x_table1_low_order():
    y0 = invert_gamma_q(10.0, 1e-6)
    rep = invert_x_asymptotic(10.0, y0, TailSpec("Q", 0.9))
    assert rep.method == "asymptotic" and rep.iterations == 0
    assert rep.residual <= 1e-4


def test_asymptotic_x_table1_high_order():
    y0 = invert_gamma_q(1e3, 1e-6)
    assert invert_x_asymptotic(1e3, y0, TailSpec("Q", 0.9)).residual <= 5e-7


def test_asymptotic_x_boundary_solution():
    q0 = gamma_ratios(12.0, 15.0).q
    assert invert_x_asymptotic(12.0, 15.0, TailSpec("Q", q0)).value == 0.0


def test_asymptotic_x_target_below_boundary():
    q0 = gamma_ratios(12.0, 15.0).q
    with pytest.raises(InfeasibleError):
        invert_x_asymptotic(12.0, 15.0, TailSpec("Q", 0.5 * q0))


def test_asymptotic_x_p_target_above_boundary():
    p0 = gamma_ratios(12.0, 15.0).p
    with pytest.raises(InfeasibleError):
        invert_x_asymptotic(12.0, 15.0, TailSpec("P", min(2.0 * p0, 0.99)))


def test_branch_infeasibility_is_an_infeasibility():
    assert issubclass(BranchInfeasibleError, InfeasibleError)


def test_asymptotic_x_uses_correction():
    y0 = invert_gamma_q(50.0, 1e-6)
    lead = invert_x_asymptotic(50.0, y0, TailSpec("Q", 0.9), use_zeta1=False)
    full = invert_x_asymptotic(50.0, y0, TailSpec("Q", 0.9))
    assert lead.zeta1 is None and full.zeta1 is not None
    assert full.residual < lead.residual


# asymptotic inversion in y


def test_asymptotic_y_median_leading_order():
    rep = invert_y_asymptotic(10.0, 10.0, TailSpec("Q", 0.5), use_zeta1=False)
    assert rep.residual <= 10 * 6.95e-2


def test_asymptotic_y_median_with_correction():
    rep = invert_y_asymptotic(10.0, 10.0, TailSpec("Q", 0.5))
    assert rep.residual <= 10 * 5.65e-4


@pytest.mark.parametrize("mu,xs", [(50.0, 0.0), (200.0, 1.0), (1e3, 4.0)])
def test_asymptotic_y_median_closed_form(mu, xs):
    y = invert_y_asymptotic(mu, xs * mu, TailSpec("Q", 0.5)).value
    approx = mu * (xs + 1.0 - (3 * xs + 1) / (3 * mu * (2 * xs + 1)))
    assert abs(y - approx) <= 5.0 / mu


def test_asymptotic_y_upper_quantile():
    assert invert_y_asymptotic(1e3, 1e3, TailSpec("Q", 0.9999)).residual <= 3e-9


@given(st.floats(min_value=1.0, max_value=1e4), st.floats(min_value=0.0, max_value=5.0),
       st.floats(min_value=1e-30, max_value=0.5), st.sampled_from("QP"))
@settings(max_examples=200, deadline=None)
def test_asymptotic_y_always_returns_positive(mu, xs, value, kind):
    rep = invert_y_asymptotic(mu, xs * mu, TailSpec(kind, value))
    assert rep.value > 0.0 and math.isfinite(rep.residual)


# iterative inversion


@pytest.mark.parametrize("method", ["secant", "newton"])
def test_iterative_x_round_trip(method):
    q = marcum(7.0, 4.0, 12.0).q
    assert invert_x_iterative(7.0, 12.0, TailSpec("Q", q), method=method).value == pytest.approx(4.0, rel=1e-10)


@pytest.mark.parametrize("method", ["secant", "newton"])
def test_iterative_y_round_trip(method):
    q = marcum(7.0, 4.0, 9.0).q
    assert invert_y_iterative(7.0, 4.0, TailSpec("Q", q), method=method).value == pytest.approx(9.0, rel=1e-10)


def test_iterative_x_boundary():
    q0 = gamma_ratios(7.0, 12.0).q
    assert invert_x_iterative(7.0, 12.0, TailSpec("Q", q0)).value == 0.0


@pytest.mark.parametrize("method", ["secant", "newton"])
def test_iterative_x_table1_configuration(method):
    y0 = invert_gamma_q(50.0, 1e-8)
    rep = invert_x_iterative(50.0, y0, TailSpec("Q", 0.999), method=method)
    assert rep.residual <= 1e-12
    assert rep.iterations <= 15


@pytest.mark.parametrize("method", ["secant", "newton"])
def test_iterative_y_table2_configuration(method):
    rep = invert_y_iterative(200.0, 200.0, TailSpec("Q", 1e-6), method=method)
    assert rep.residual <= 1e-12
    assert rep.iterations <= 20


def test_iterative_y_near_one_goes_to_zero():
    ys = [invert_y_iterative(5.0, 2.0, TailSpec("Q", 1.0 - e)).value for e in (1e-4, 1e-8, 1e-12)]
    assert ys[0] > ys[1] > ys[2] > 0.0
    assert ys[2] < 0.05


def test_iterative_rejects_unknown_method():
    with pytest.raises(DomainError):
        invert_y_iterative(5.0, 2.0, 0.3, method="bisection")


def test_iterative_reports_non_convergence():
    with pytest.raises(ConvergenceError) as exc:
        invert_y_iterative(50.0, 20.0, TailSpec("Q", 1e-6), maxiter=3)
    assert exc.value.iterations == 3
    assert exc.value.best > 0.0


# hybrid


def test_hybrid_beats_asymptotic_median():
    rep = invert_hybrid(10.0, 10.0, TailSpec("Q", 0.5), axis="y")
    assert rep.residual <= 1e-13
    assert rep.seed_residual == pytest.approx(5.65e-4, rel=0.05)


@pytest.mark.parametrize("q", [1e-6, 0.3, 0.5, 0.9, 0.9999])
def test_hybrid_large_order_polish_is_short(q):
    rep = invert_hybrid(1e4, 2e4, TailSpec("Q", q), axis="y")
    assert rep.residual <= ACCEPT_TOL
    # two starting evaluations plus at most two secant updates
    assert rep.iterations <= 4
    assert rep.seed_residual <= 1e-7


def test_hybrid_large_order_seed_near_upper_tail():
    rep = invert_hybrid(1e4, 2e4, TailSpec("Q", 0.9999), axis="y")
    assert rep.seed_residual <= 1e-10


@pytest.mark.parametrize("mu,x", [(10.0, 10.0), (100.0, 0.0), (1e3, 5e3)])
def test_hybrid_median_near_transition(mu, x):
    y = invert_hybrid(mu, x, TailSpec("Q", 0.5), axis="y").value
    assert abs(y - transition_y(mu, x)) <= 0.05 * math.sqrt(mu + 2 * x) / math.sqrt(mu)


def test_hybrid_small_order_has_no_seed():
    rep = invert_hybrid(3.0, 5.0, TailSpec("Q", 0.2), axis="y")
    assert rep.seed is None and rep.residual <= ACCEPT_TOL


def test_hybrid_axis_validation():
    with pytest.raises(DomainError):
        invert_hybrid(3.0, 5.0, 0.2, axis="z")


@pytest.mark.parametrize("value", [0.15, 0.3, 0.45])
def test_branch_correctness(value):
    # Q_20(0, 25) = 0.134, so every value here is reachable
    mu, y = 20.0, 25.0
    split = y - mu
    lo = invert_hybrid(mu, y, TailSpec("Q", value)).value
    hi = invert_hybrid(mu, y, TailSpec("Q", 1.0 - value)).value
    assert lo <= split <= hi


@pytest.mark.parametrize("axis,fixed", [("x", 25.0), ("y", 3.0)])
@pytest.mark.parametrize("p", [1e-10, 1e-4, 0.3])
def test_p_q_duality(axis, fixed, p):
    mu = 20.0
    a = invert_hybrid(mu, fixed, TailSpec("P", p), axis=axis).value
    b = invert_hybrid(mu, fixed, TailSpec("Q", 1.0 - p), axis=axis).value
    # the P solution also meets the Q target within the residual bound
    x, y = (a, fixed) if axis == "x" else (fixed, a)
    assert rel(marcum(mu, x, y).q, 1.0 - p) <= ACCEPT_TOL
    if p >= 1e-4:
        assert rel(a, b) <= 1e-9


@given(st.floats(min_value=1.0, max_value=1e4), st.floats(min_value=0.0, max_value=5.0),
       st.floats(min_value=-5.0, max_value=5.0), st.sampled_from("xy"))
@settings(max_examples=200, deadline=None)
def test_hybrid_round_trip(mu, xs, z, axis):
    x = xs * mu
    y = x + mu + z * math.sqrt(mu + 2 * x)
    if y <= 0.0:
        return
    r = marcum(mu, x, y)
    tail = TailSpec("Q", r.q) if r.q <= r.p else TailSpec("P", r.p)
    if not 0.0 < tail.value < 1.0:
        return
    rep = invert_hybrid(mu, y if axis == "x" else x, tail, axis=axis)
    assert rep.residual <= ACCEPT_TOL
    assert rep.iterations <= 30


# two-step workflow


def test_two_step_median_pair():
    r = two_step(10.0, 0.4, 0.6, step2="asymptotic")
    assert r.delta0 <= 1e-13
    assert r.delta1 <= 1e-3


def test_two_step_tail_pair():
    r = two_step(100.0, 1e-8, 0.999, step2="asymptotic")
    assert r.delta1 <= 2e-7


def test_two_step_hybrid_is_exact():
    r = two_step(10.0, 1e-6, 0.9)
    assert r.delta0 <= 1e-13 and r.delta1 <= ACCEPT_TOL
    assert r.x1 == r.report.value > 0.0


@pytest.mark.parametrize("q0,q1", [(0.5, 0.5), (0.9, 0.5)])
def test_two_step_requires_increase(q0, q1):
    with pytest.raises(InfeasibleError, match="q1 must exceed q0"):
        two_step(10.0, q0, q1)


def test_two_step_domain():
    with pytest.raises(DomainError):
        two_step(10.0, 0.0, 0.5)
    with pytest.raises(DomainError):
        two_step(10.0, 0.1, 0.5, step2="newton")
