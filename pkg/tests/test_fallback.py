import json
import os
import pathlib
import subprocess
import sys

import pytest

import marcumq
from marcumq import TailSpec, invert_hybrid, marcum, quad_q

ROOT = pathlib.Path(__file__).resolve().parents[1]

POINTS = [(1.0, 0.5, 0.2), (7.0, 4.0, 12.0), (50.0, 300.0, 200.0), (120.0, 45.0, 400.0), (1e3, 1e3, 1.9e3)]

SCRIPT = r"""
import json, sys
import marcumq
from marcumq import TailSpec, invert_hybrid, marcum, quad_q
pts = json.loads(sys.argv[1])
out = {"numba": marcumq.USING_NUMBA, "q": [], "p": [], "quad": [], "inv": []}
for mu, x, y in pts:
    r = marcum(mu, x, y)
    out["q"].append(r.q)
    out["p"].append(r.p)
    out["quad"].append(quad_q(mu, x, y) if mu <= 200 else None)
    tail = TailSpec("Q", r.q) if r.q <= r.p else TailSpec("P", r.p)
    out["inv"].append(invert_hybrid(mu, y, tail).value)
print(json.dumps(out))
"""


def _run(disable):
    env = dict(os.environ)
    env.pop("MARCUMQ_DISABLE_NUMBA", None)
    if disable:
        env["MARCUMQ_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", SCRIPT, json.dumps(POINTS)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


@pytest.fixture(scope="module")
def pure():
    return _run(disable=True)


def test_flag_disables_compilation(pure):
    assert pure["numba"] is False


def test_fallback_matches_compiled(pure):
    for i, (mu, x, y) in enumerate(POINTS):
        r = marcum(mu, x, y)
        assert pure["q"][i] == pytest.approx(r.q, rel=1e-14, abs=1e-300)
        assert pure["p"][i] == pytest.approx(r.p, rel=1e-14, abs=1e-300)
        if mu <= 200:
            assert pure["quad"][i] == pytest.approx(quad_q(mu, x, y), rel=1e-12)
        tail = TailSpec("Q", r.q) if r.q <= r.p else TailSpec("P", r.p)
        assert pure["inv"][i] == pytest.approx(x, rel=1e-10)
        assert pure["inv"][i] == pytest.approx(invert_hybrid(mu, y, tail).value, rel=1e-12)


@pytest.mark.skipif(not marcumq.USING_NUMBA, reason="numba not importable")
def test_default_uses_numba():
    assert _run(disable=False)["numba"] is True


def test_benchmark_smoke():
    res = subprocess.run([sys.executable, str(ROOT / "benchmarks" / "bench_kernels.py"), "--repeat", "1", "--n", "40"],
                         capture_output=True, text=True, check=True, timeout=300)
    lines = res.stdout.splitlines()
    assert lines[0].split()[0] == "kernel"
    assert [ln.split()[0] for ln in lines[1:]] == ["series", "quadrature", "hybrid_y"]
