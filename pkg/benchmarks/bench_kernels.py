"""Compare the numba-compiled kernels with the pure-Python fallback.

Each configuration runs in its own interpreter because the choice between
the two is made once, at import time, from ``MARCUMQ_DISABLE_NUMBA``.

Usage::

    python benchmarks/bench_kernels.py [--repeat 3] [--n 2000]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, sys, time
import marcumq
from marcumq import marcum, invert_hybrid, quad_q, TailSpec

n = int(sys.argv[1])
rng = random.Random(7)
pts = [(rng.uniform(1, 200), rng.uniform(0, 300), rng.uniform(0.1, 500)) for _ in range(n)]

# warm-up covers numba compilation (or loads it from the cache)
marcum(3.0, 2.0, 7.0); quad_q(3.0, 2.0, 7.0); invert_hybrid(20.0, 30.0, 0.5)

out = {"numba": marcumq.USING_NUMBA}
t = time.perf_counter()
for mu, x, y in pts:
    marcum(mu, x, y)
out["series"] = (time.perf_counter() - t) / n

t = time.perf_counter()
for mu, x, y in pts[: max(n // 20, 1)]:
    quad_q(mu, x, y)
out["quadrature"] = (time.perf_counter() - t) / max(n // 20, 1)

t = time.perf_counter()
m = max(n // 10, 1)
for mu, x, y in pts[:m]:
    r = marcum(mu, x, y)
    tail = TailSpec("Q", r.q) if r.q_direct else TailSpec("P", r.p)
    if 0.0 < tail.value < 1.0:
        invert_hybrid(mu, x, tail, axis="y")
out["hybrid_y"] = (time.perf_counter() - t) / m
print(json.dumps(out))
"""


def run(disable, n):
    env = dict(os.environ)
    if disable:
        env["MARCUMQ_DISABLE_NUMBA"] = "1"
    else:
        env.pop("MARCUMQ_DISABLE_NUMBA", None)
    res = subprocess.run([sys.executable, "-c", WORKLOAD, str(n)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--n", type=int, default=2000)
    args = ap.parse_args(argv)

    best = {}
    for disable in (False, True):
        runs = [run(disable, args.n) for _ in range(args.repeat)]
        label = "fallback" if disable else ("numba" if runs[0]["numba"] else "fallback*")
        best[label] = {k: min(r[k] for r in runs) for k in ("series", "quadrature", "hybrid_y")}

    print(f"{'kernel':<12}" + "".join(f"{k:>14}" for k in best) + f"{'speedup':>10}")
    labels = list(best)
    for k in ("series", "quadrature", "hybrid_y"):
        cells = "".join(f"{best[lab][k] * 1e6:>11.1f} us" for lab in labels)
        speed = best[labels[1]][k] / best[labels[0]][k]
        print(f"{k:<12}{cells}{speed:>9.1f}x")


if __name__ == "__main__":
    main()
