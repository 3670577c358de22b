"""Benchmark the compiled Jacobi kernel against the pure-numpy fallback.

The three shapes mirror the real workloads: 4x4 complex Hermitian matrices
(entanglement measures, thousands per sweep), mid-size complex Hermitian
(field reduced matrices for the entropy balance), and ~120x120 real
symmetric (the brute-force Hamiltonian, one decomposition per
configuration). Also cross-checks that both backends agree.

Run:  python3 benchmarks/bench_jacobi.py [--quick]
"""

import argparse
import sys
import time

import numpy as np

from nlcavity import _jacobi_py, kernels


def random_hermitian(rng, n, complex_valued):
    if complex_valued:
        x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    else:
        x = rng.normal(size=(n, n))
    return (x + x.conj().T) / 2.0


def time_backend(eigh, matrices, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for a in matrices:
            eigh(a)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller batches")
    args = parser.parse_args(argv)

    compiled_available = kernels.BACKEND == "compiled"
    print(f"active backend: {kernels.BACKEND}")
    if not compiled_available:
        print("compiled extension not built; timing the pure-python backend only\n")

    scale = 10 if args.quick else 1
    cases = [
        ("4x4 complex (measures)", 4, True, 2000 // scale),
        ("30x30 complex (field entropy)", 30, True, 60 // scale),
        ("116x116 real (oracle H)", 116, False, max(3 // scale, 1)),
    ]

    rng = np.random.default_rng(0)
    header = f"{'case':32s} {'batch':>6s} {'pure [s]':>10s}"
    if compiled_available:
        header += f" {'compiled [s]':>13s} {'speedup':>8s} {'max |dw|':>10s}"
    print(header)

    for name, n, complex_valued, batch in cases:
        matrices = [random_hermitian(rng, n, complex_valued) for _ in range(batch)]
        t_pure = time_backend(_jacobi_py.jacobi_eigh, matrices, repeats=3)
        line = f"{name:32s} {batch:6d} {t_pure:10.4f}"
        if compiled_available:
            t_comp = time_backend(kernels.jacobi_eigh, matrices, repeats=3)
            worst = 0.0
            for a in matrices[: min(len(matrices), 20)]:
                w_pure, _ = _jacobi_py.jacobi_eigh(a)
                w_comp, _ = kernels.jacobi_eigh(a)
                scale_w = max(1.0, float(np.max(np.abs(w_pure))))
                worst = max(worst, float(np.max(np.abs(w_pure - w_comp))) / scale_w)
            line += f" {t_comp:13.4f} {t_pure / t_comp:7.1f}x {worst:10.2e}"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
