import io
import math
import random

import pytest

from marcumq import DomainError, QuadratureError, marcum
from marcumq import oracle
from marcumq.oracle import (
    TableRow,
    quad_p,
    quad_q,
    relative_delta,
    run_table1,
    run_table2,
    write_table_csv,
)

from mp_oracles import mp_p, mp_q, rel
from reference_tables import MU, TABLE1, TABLE2, falls_where_reference_falls, within_factor


def test_quad_q_at_y_zero():
    assert quad_q(4.0, 2.5, 0.0) == 1.0
    assert quad_p(4.0, 2.5, 0.0) == 0.0


def test_quad_q_exponential():
    assert rel(quad_q(1.0, 0.0, 1.5), math.exp(-1.5)) <= 1e-12


def test_quad_agrees_with_series():
    assert rel(quad_q(3.0, 2.0, 7.0), marcum(3.0, 2.0, 7.0).q) <= 1e-10


@pytest.mark.parametrize("mu,x,y", [(1.0, 0.3, 40.0), (2.5, 60.0, 20.0), (17.0, 5.0, 21.0), (200.0, 150.0, 420.0)])
def test_quad_against_mpmath(mu, x, y):
    if y > x + mu:
        assert rel(quad_q(mu, x, y), mp_q(mu, x, y)) <= 1e-11
    else:
        assert rel(quad_p(mu, x, y), mp_p(mu, x, y)) <= 1e-11


def test_quad_complement():
    rng = random.Random(11)
    for _ in range(50):
        mu, x, y = rng.uniform(1, 200), rng.uniform(0, 150), rng.uniform(0, 400)
        assert abs(quad_q(mu, x, y) + quad_p(mu, x, y) - 1.0) <= 1e-10


@pytest.mark.parametrize("mu,x,y", [(0.5, 1, 1), (250.0, 1, 1), (2.0, -1, 1), (2.0, 1, math.nan)])
def test_quad_domain(mu, x, y):
    with pytest.raises(DomainError):
        quad_q(mu, x, y)


def test_quad_reports_unmet_accuracy(monkeypatch):
    monkeypatch.setattr(oracle, "LIMIT", 1)
    monkeypatch.setattr(oracle, "EPSREL", 1e-16)
    with pytest.raises(QuadratureError) as exc:
        quad_q(30.0, 20.0, 90.0)
    assert exc.value.estimate > 0.0


def test_relative_delta_values():
    assert relative_delta(0.3, 0.3) == 0.0
    assert relative_delta(1.23, 1.0) == pytest.approx(0.23, rel=1e-14)


def test_relative_delta_zero():
    with pytest.raises(ZeroDivisionError):
        relative_delta(0.5, 0.0)


# tables


def test_table1_single_entry():
    (row,) = run_table1([20.0], [(1e-6, 0.9)])
    assert row.delta0 <= 1e-13
    assert within_factor(row.delta1, 7.43e-6)


def test_table2_tail_entry():
    (row,) = run_table2([50.0], [1e-6])
    assert within_factor(row.delta0, 1.75e-1)
    assert within_factor(row.delta1, 2.34e-4)


def test_table2_median_entry():
    (row,) = run_table2([100.0], [0.5])
    assert within_factor(row.delta1, 1.77e-5)


def test_table1_columns_follow_reference():
    rows = run_table1()
    for scenario, ref in TABLE1.items():
        got = [r.delta1 for r in rows if r.scenario == scenario]
        assert len(got) == len(MU)
        assert falls_where_reference_falls(got, ref)


def test_table2_columns_follow_reference():
    rows = run_table2()
    for q, (ref0, ref1) in TABLE2.items():
        got = [r for r in rows if r.scenario[0] == q]
        assert falls_where_reference_falls([r.delta0 for r in got], ref0)
        assert falls_where_reference_falls([r.delta1 for r in got], ref1)


def test_table_rows_ordered_by_mu():
    rows = run_table1([50.0, 10.0], [(0.4, 0.6)])
    assert [r.mu for r in rows] == [50.0, 10.0]


def test_table_mu_range():
    with pytest.raises(DomainError):
        run_table2([5.0])


def test_csv_format():
    rows = [TableRow(10.0, (1e-6, 0.9), 1.234e-15, 1.2345e-5), TableRow(1e3, (0.5, "x=mu"), 0.0652, 5.59e-7)]
    buf = io.StringIO()
    write_table_csv(rows, buf)
    assert buf.getvalue().splitlines() == [
        "mu,scenario,delta0,delta1",
        "10,1e-06/0.9,1.23e-15,1.23e-05",
        "1000,0.5/x=mu,6.52e-02,5.59e-07",
    ]


def test_csv_full_precision_round_trips():
    rows = [TableRow(10.0, (0.4, 0.6), 1.0 / 3.0, math.pi * 1e-7)]
    buf = io.StringIO()
    write_table_csv(rows, buf, full_precision=True)
    cells = buf.getvalue().splitlines()[1].split(",")
    assert float(cells[2]) == 1.0 / 3.0
    assert float(cells[3]) == math.pi * 1e-7
