"""Compare the compiled term kernel against the pure-Python fallback.

Runs the same workloads in two subprocesses, one with DIAGRES_KERNEL=python
forcing the fallback, one with the default backend selection.  Workloads:

  groebner   a batch of randomized ideal bases over Q and F_32003
  conic      build + verify the nodal-conic catalog entry
  cycle      build + verify all chart jobs for the 6-cycle

Usage: python benchmarks/bench_kernel.py [--repeat N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, random, sys, time
import diagres
from diagres.groebner import Submodule, buchberger
from diagres.polyring import ring
from diagres.scalars import QQ, PrimeField

def random_ideal(rng, rand):
    gens = []
    for _ in range(rand.randint(2, 4)):
        p = rng.zero()
        for _ in range(rand.randint(2, 4)):
            exps = [rand.randint(0, 3) for _ in range(rng.nvars)]
            while sum(exps) > 3:
                exps[exps.index(max(exps))] -= 1
            p = p + rng.const(rand.randint(-4, 4)).shift(tuple(exps))
        if not p.is_zero():
            gens.append((p,))
    return Submodule(rng, 1, gens or [(rng.one(),)])

def bench_groebner():
    rand = random.Random(99)
    for field in (QQ, PrimeField(32003)):
        rng = ring(["x", "y", "z"], field=field)
        for _ in range(150):
            buchberger(random_ideal(rng, rand))

def bench_conic():
    from diagres.catalog import build_nodal_conic, verify_entry
    assert verify_entry(build_nodal_conic()).passed

def bench_cycle():
    from diagres.catalog import build_cycle, verify_chart_jobs
    cat = build_cycle(5)
    assert all(r.passed for r in verify_chart_jobs(cat.chart_jobs))

work = {"groebner": bench_groebner, "conic": bench_conic, "cycle": bench_cycle}
out = {"backend": diagres.kernel_backend}
for name, fn in work.items():
    t0 = time.perf_counter()
    fn()
    out[name] = time.perf_counter() - t0
print(json.dumps(out))
"""


def run(env_backend: str | None) -> dict:
    env = dict(os.environ)
    if env_backend:
        env["DIAGRES_KERNEL"] = env_backend
    else:
        env.pop("DIAGRES_KERNEL", None)
    res = subprocess.run([sys.executable, "-c", WORKER], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=1)
    args = parser.parse_args()
    rows = []
    for backend in (None, "python"):
        best: dict = {}
        for _ in range(args.repeat):
            got = run(backend)
            for k, v in got.items():
                if k == "backend":
                    best[k] = v
                else:
                    best[k] = min(v, best.get(k, float("inf")))
        rows.append(best)
    names = [k for k in rows[0] if k != "backend"]
    header = f"{'workload':<10}" + "".join(f"{r['backend']:>12}" for r in rows)
    print(header)
    print("-" * len(header))
    for name in names:
        line = f"{name:<10}"
        for r in rows:
            line += f"{r[name]:>11.2f}s"
        if rows[0][name] > 0:
            line += f"   x{rows[1][name] / rows[0][name]:.2f}"
        print(line)
    if rows[0]["backend"] == rows[1]["backend"]:
        print("note: compiled kernel unavailable; both runs used the fallback")


if __name__ == "__main__":
    main()
