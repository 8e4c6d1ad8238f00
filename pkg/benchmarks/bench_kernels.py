"""Compare the compiled and pure-Python scan kernels on the same workloads.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs on both backends; results are checked for equality
before timings are reported.
"""
from __future__ import annotations

import argparse
import random
import statistics
import time

from conicbundle import kernels
from conicbundle.determinantal import build_cubic, discriminant, random_matrix
from conicbundle.poly_core import GF


def _workloads():
    rng = random.Random(2024)
    F = build_cubic(random_matrix(GF(23), rng)).F
    delta = discriminant(random_matrix(GF(11), rng)).delta
    singular_system = [F.diff(v) for v in F.vars] + [F]
    curve_system = [delta.diff(v) for v in delta.vars] + [delta]
    return [
        ("singular scan, cubic threefold, P^4(GF(23))",
         lambda b: kernels.find_zeros(singular_system, GF(23), backend=b)),
        ("singular scan, plane quintic, P^2(GF(11^2))",
         lambda b: kernels.find_zeros(curve_system, GF(11, 2), backend=b)),
        ("grid values, plane quintic, P^2(GF(11^2))",
         lambda b: kernels.grid_values([delta], GF(11, 2), backend=b)[1].tolist()),
    ]


def _time(fn, repeat: int) -> float:
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    python = kernels.get_backend("python")
    try:
        compiled = kernels.get_backend("compiled")
    except ImportError:
        print("compiled extension not built; run `pip install --no-build-isolation -e .` first")
        return 1
    print(f"{'workload':48s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, run in _workloads():
        if run(python) != run(compiled):
            print(f"{name}: backends disagree")
            return 1
        tp = _time(lambda: run(python), args.repeat)
        tc = _time(lambda: run(compiled), args.repeat)
        print(f"{name:48s} {tp:9.3f}s {tc:9.3f}s {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
