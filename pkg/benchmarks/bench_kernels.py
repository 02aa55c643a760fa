#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

The expectation sweep over all low-weight Pauli strings is the package's hot
loop (the far-state certificate at n=12 evaluates ~47k operators against a
4096-amplitude vector). This script times both implementations on the same
inputs and reports the speedup.

Usage:
    python benchmarks/bench_kernels.py [--n 12] [--weight 4] [--repeats 3]

Setting FARSTATE_NO_NUMBA=1 has no effect here: both paths are invoked
explicitly.
"""

import argparse
import time

import numpy as np

from farstate import _kernels, codes, pauli


def build_inputs(n, max_weight):
    if n == 12:
        psi = codes.codeword(codes.preset_code("self_dual_12_0_6"))
        amps = psi.amplitudes
    else:
        rng = np.random.default_rng(2024)
        amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        amps = amps / np.linalg.norm(amps)
    xs, zs = pauli.pauli_masks(n, max_weight)
    xi = pauli._reverse_bits_array(xs, n)
    zi = pauli._reverse_bits_array(zs, n)
    phases = pauli.canonical_phases(xs, zs)
    return xi, zi, phases, np.ascontiguousarray(amps)


def time_fn(fn, args, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=12)
    parser.add_argument("--weight", type=int, default=4)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    xi, zi, phases, amps = build_inputs(args.n, args.weight)
    print(f"n={args.n}, weight<={args.weight}: {len(xi)} operators, "
          f"{len(amps)} amplitudes, numba available: {_kernels.HAVE_NUMBA}")

    np_time, np_vals = time_fn(
        _kernels.batch_expectations_numpy, (xi, zi, phases, amps), args.repeats
    )
    print(f"numpy fallback : {np_time:8.3f} s  "
          f"({len(xi) / np_time:,.0f} ops/s)")

    if _kernels.HAVE_NUMBA:
        # warm the JIT before timing
        _kernels.batch_expectations_numba(xi[:8], zi[:8], phases[:8], amps)
        nb_time, nb_vals = time_fn(
            _kernels.batch_expectations_numba, (xi, zi, phases, amps), args.repeats
        )
        print(f"numba kernel   : {nb_time:8.3f} s  "
              f"({len(xi) / nb_time:,.0f} ops/s)")
        print(f"speedup        : {np_time / nb_time:8.1f}x")
        print(f"max |difference|: {np.abs(np_vals - nb_vals).max():.3e}")
    else:
        print("numba not installed; only the fallback was timed")


if __name__ == "__main__":
    main()
