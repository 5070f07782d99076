"""Timing comparison of the compiled and pure-numpy kernel backends.

Runs the same classification workloads against each available backend and
prints a small table. Results are asserted identical across backends before
any timing is reported, so a speedup never hides a divergence.

Usage: python3 benchmarks/compare_backends.py [--count 30] [--dim 4] [--n 10]
"""
import argparse
import time

import numpy as np

from qpesign import (
    CanonicalClass,
    QuantumConfig,
    backend,
    classify_quantum_only,
    eigen_decompose,
    generate_sample,
)


def workload_classify(sample, n):
    cfg = QuantumConfig(n=n, trials=3, shots=50, seed=1)
    return [
        (v.klass.value, v.quantum.mean_sigma)
        for v in (classify_quantum_only(lm.matrix, cfg) for lm in sample)
    ]


def workload_eigen(sample):
    return [float(eigen_decompose(lm.matrix).eigenvalues[0]) for lm in sample]


def timed(fn, *args, repeats=3):
    best, result = float("inf"), None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=30, help="matrices per workload")
    ap.add_argument("--dim", type=int, default=4)
    ap.add_argument("--n", type=int, default=10, help="ancilla register size")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sample = generate_sample(CanonicalClass.INDEFINITE, args.dim, args.count, args.seed)
    names = backend.available_backends()
    print(f"backends: {', '.join(names)}; {args.count} matrices, dim {args.dim}, n {args.n}")

    rows = []
    outputs = {}
    for name in names:
        backend.select_backend(name)
        backend.warmup()
        t_cls, out_cls = timed(workload_classify, sample, args.n)
        t_eig, out_eig = timed(workload_eigen, sample)
        rows.append((name, t_cls, t_eig))
        outputs[name] = (out_cls, out_eig)

    first = names[0]
    for name in names[1:]:
        if outputs[name][0] != outputs[first][0]:
            raise SystemExit(f"classification outputs differ between {first} and {name}")
        if not np.allclose(outputs[name][1], outputs[first][1], atol=1e-12):
            raise SystemExit(f"eigenvalues differ between {first} and {name}")
    print("outputs identical across backends")

    base_cls = rows[0][1]
    print(f"{'backend':<10} {'classify':>12} {'eigen':>12} {'speedup':>9}")
    for name, t_cls, t_eig in rows:
        print(f"{name:<10} {t_cls:>11.3f}s {t_eig:>11.3f}s {base_cls / t_cls:>8.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
