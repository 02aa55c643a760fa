"""Hot numeric kernels: Pauli action on dense state vectors.

Masks here live in *index* bit order: bit b of a mask pairs with bit b of a
computational-basis index (qubit q sits at index bit n-1-q). The wrappers in
:mod:`farstate.pauli` convert from the qubit-ordered masks of ``PauliString``.

Each kernel has a numba-compiled implementation and a vectorized pure-numpy
fallback. The numpy path is selected when numba is not importable or when the
environment variable ``FARSTATE_NO_NUMBA`` is set to a truthy value; both
paths compute the identical result. ``benchmarks/bench_kernels.py`` compares
them.
"""

from __future__ import annotations

import os

import numpy as np


def _numba_disabled() -> bool:
    return os.environ.get("FARSTATE_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _numba_disabled()

_ONE = np.uint64(1)


def batch_expectations_numpy(x_idx, z_idx, phases, amps):
    """<psi|P_k|psi> for each operator k, vectorized over the state dimension."""
    dim = amps.shape[0]
    j = np.arange(dim, dtype=np.uint64)
    conj = amps.conj()
    out = np.empty(x_idx.shape[0], dtype=np.complex128)
    for k in range(x_idx.shape[0]):
        jp = j ^ x_idx[k]
        signs = 1.0 - 2.0 * (np.bitwise_count(z_idx[k] & jp) & _ONE).astype(np.float64)
        out[k] = phases[k] * np.sum(conj * signs * amps[jp])
    return out


def apply_pauli_numpy(x_idx, z_idx, phase, amps):
    """Return P|psi> as a new amplitude array (signed bit-flip permutation)."""
    dim = amps.shape[0]
    j = np.arange(dim, dtype=np.uint64)
    jp = j ^ x_idx
    signs = 1.0 - 2.0 * (np.bitwise_count(z_idx & jp) & _ONE).astype(np.float64)
    return (phase * signs) * amps[jp]


if HAVE_NUMBA:

    @njit(cache=True)
    def _parity_u64(v):
        v ^= v >> np.uint64(32)
        v ^= v >> np.uint64(16)
        v ^= v >> np.uint64(8)
        v ^= v >> np.uint64(4)
        v ^= v >> np.uint64(2)
        v ^= v >> np.uint64(1)
        return v & np.uint64(1)

    @njit(cache=True)
    def _batch_expectations_jit(x_idx, z_idx, phases, amps):
        dim = amps.shape[0]
        out = np.empty(x_idx.shape[0], dtype=np.complex128)
        for k in range(x_idx.shape[0]):
            x = x_idx[k]
            z = z_idx[k]
            acc = 0.0 + 0.0j
            for j in range(dim):
                ju = np.uint64(j)
                jp = ju ^ x
                v = np.conj(amps[ju]) * amps[jp]
                if _parity_u64(z & jp):
                    acc -= v
                else:
                    acc += v
            out[k] = phases[k] * acc
        return out

    @njit(cache=True)
    def _apply_pauli_jit(x_idx, z_idx, phase, amps):
        dim = amps.shape[0]
        out = np.empty(dim, dtype=np.complex128)
        for j in range(dim):
            ju = np.uint64(j)
            jp = ju ^ x_idx
            v = phase * amps[jp]
            if _parity_u64(z_idx & jp):
                out[j] = -v
            else:
                out[j] = v
        return out

    def batch_expectations_numba(x_idx, z_idx, phases, amps):
        return _batch_expectations_jit(x_idx, z_idx, phases, amps)

    def apply_pauli_numba(x_idx, z_idx, phase, amps):
        return _apply_pauli_jit(x_idx, z_idx, phase, amps)


def batch_expectations(x_idx, z_idx, phases, amps):
    """Dispatch to the numba or numpy implementation of the expectation sweep.

    Arguments are uint64 mask arrays (index bit order), a complex128 phase
    per operator, and the complex128 amplitude vector.
    """
    if USE_NUMBA:
        return batch_expectations_numba(x_idx, z_idx, phases, amps)
    return batch_expectations_numpy(x_idx, z_idx, phases, amps)


def apply_pauli(x_idx, z_idx, phase, amps):
    """Dispatch to the numba or numpy implementation of single-Pauli apply."""
    if USE_NUMBA:
        return apply_pauli_numba(x_idx, z_idx, phase, amps)
    return apply_pauli_numpy(x_idx, z_idx, phase, amps)
