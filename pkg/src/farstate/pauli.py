"""Exact n-qubit Pauli operator arithmetic and dense state-vector operations.

Operators are held in symplectic form: an X bit-mask, a Z bit-mask and a
global phase i^phase_exp tracked as an exponent modulo 4, so products,
commutators and weights are integer-exact. Conventions, pinned once for the
whole package:

* bit i of ``x_mask`` / ``z_mask`` addresses qubit i;
* qubit 0 is the leftmost letter of the text form and the most significant
  bit of a computational-basis index;
* the single-qubit factor for bits (x, z) is I, X, Z, Y with Y = i.XZ, so a
  string with ``phase_exp = 0`` is the plain Hermitian tensor product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels

__all__ = [
    "DimensionMismatchError",
    "PauliString",
    "StateVector",
    "identity",
    "weight",
    "multiply",
    "commutes",
    "parse_pauli",
    "format_pauli",
    "dense_matrix",
    "enumerate_weight_at_most",
    "pauli_masks",
    "index_masks",
    "canonical_phases",
    "basis_state",
    "normalize",
    "apply",
    "inner",
    "expectation",
    "batch_expectations",
]

NORM_TOL = 1e-12

_PHASES = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)
_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_LETTER = {bits: letter for letter, bits in _LETTER_TO_BITS.items()}


class DimensionMismatchError(ValueError):
    """Operands act on different qubit counts."""


@dataclass(frozen=True)
class PauliString:
    """A signed Pauli operator i^phase_exp * P_0 (x) ... (x) P_{n-1}."""

    n: int
    x_mask: int
    z_mask: int
    phase_exp: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got n={self.n}")
        limit = 1 << self.n
        if not 0 <= self.x_mask < limit or not 0 <= self.z_mask < limit:
            raise ValueError(f"mask has bits beyond qubit {self.n - 1}")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @property
    def weight(self) -> int:
        return (self.x_mask | self.z_mask).bit_count()

    @property
    def phase(self) -> complex:
        return _PHASES[self.phase_exp]

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __str__(self) -> str:
        return format_pauli(self)


def identity(n: int) -> PauliString:
    return PauliString(n, 0, 0, 0)


def weight(p: PauliString) -> int:
    """Number of qubit positions where the operator is not the identity."""
    return p.weight


def _require_same_n(a, b):
    if a.n != b.n:
        raise DimensionMismatchError(f"qubit counts differ: {a.n} != {b.n}")


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Exact product a*b, including the i^k phase."""
    _require_same_n(a, b)
    x = a.x_mask ^ b.x_mask
    z = a.z_mask ^ b.z_mask
    # Track the Y = i.XZ factors absorbed into each canonical form, plus the
    # sign from commuting Z factors of a past X factors of b.
    exp = (
        a.phase_exp
        + b.phase_exp
        + (a.x_mask & a.z_mask).bit_count()
        + (b.x_mask & b.z_mask).bit_count()
        - (x & z).bit_count()
        + 2 * (a.z_mask & b.x_mask).bit_count()
    )
    return PauliString(a.n, x, z, exp % 4)


def commutes(a: PauliString, b: PauliString) -> bool:
    """True iff ab = ba, via the parity of the symplectic form."""
    _require_same_n(a, b)
    sym = (a.x_mask & b.z_mask).bit_count() + (a.z_mask & b.x_mask).bit_count()
    return sym % 2 == 0


def parse_pauli(text: str) -> PauliString:
    """Parse optional sign followed by I/X/Y/Z letters, qubit 0 leftmost."""
    if not text:
        raise ValueError("empty Pauli string")
    phase_exp = 0
    letters = text
    if text[0] in "+-":
        phase_exp = 2 if text[0] == "-" else 0
        letters = text[1:]
    if not letters:
        raise ValueError(f"no Pauli letters in {text!r}")
    n = len(letters)
    x = z = 0
    for i, letter in enumerate(letters):
        try:
            xb, zb = _LETTER_TO_BITS[letter]
        except KeyError:
            raise ValueError(f"illegal Pauli letter {letter!r} in {text!r}") from None
        x |= xb << i
        z |= zb << i
    return PauliString(n, x, z, phase_exp)


def format_pauli(p: PauliString) -> str:
    """Inverse of parse_pauli; only real signs (phase_exp 0 or 2) are printable."""
    if p.phase_exp not in (0, 2):
        raise ValueError(f"phase i^{p.phase_exp} has no sign+IXYZ text form")
    sign = "-" if p.phase_exp == 2 else ""
    letters = "".join(
        _BITS_TO_LETTER[((p.x_mask >> i) & 1, (p.z_mask >> i) & 1)] for i in range(p.n)
    )
    return sign + letters


def _reverse_bits(value: int, n: int) -> int:
    out = 0
    for i in range(n):
        if (value >> i) & 1:
            out |= 1 << (n - 1 - i)
    return out


def index_masks(p: PauliString) -> tuple[np.uint64, np.uint64]:
    """Masks re-ordered so bit b acts on basis-index bit b (qubit q at n-1-q)."""
    return (
        np.uint64(_reverse_bits(p.x_mask, p.n)),
        np.uint64(_reverse_bits(p.z_mask, p.n)),
    )


def _reverse_bits_array(values: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros_like(values)
    for i in range(n):
        out |= ((values >> np.uint64(i)) & np.uint64(1)) << np.uint64(n - 1 - i)
    return out


def dense_matrix(p: PauliString) -> np.ndarray:
    """The 2^n x 2^n complex matrix of the operator (n <= 12 guard)."""
    if p.n > 12:
        raise ValueError(f"dense matrix for n={p.n} exceeds the n<=12 guard")
    dim = 1 << p.n
    xi, zi = index_masks(p)
    phase = p.phase * _PHASES[(p.x_mask & p.z_mask).bit_count() % 4]
    cols = np.arange(dim, dtype=np.uint64)
    rows = cols ^ xi
    signs = 1.0 - 2.0 * (np.bitwise_count(zi & cols) & np.uint64(1)).astype(np.float64)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    mat[rows, cols] = phase * signs
    return mat


def pauli_masks_exact(n: int, w: int) -> tuple[np.ndarray, np.ndarray]:
    """Qubit-ordered (x, z) uint64 mask arrays for every string of weight exactly w.

    Support subsets run in lexicographic order, letters in X < Y < Z order
    with the leftmost support qubit varying slowest.
    """
    if not 0 <= w <= n:
        raise ValueError(f"weight must be in [0, n]; got {w} for n={n}")
    if w == 0:
        return np.zeros(1, dtype=np.uint64), np.zeros(1, dtype=np.uint64)
    letter_bits = [(1, 0), (1, 1), (0, 1)]  # X, Y, Z
    patterns = list(itertools.product(letter_bits, repeat=w))
    pat_x = np.array([[b[0] for b in pat] for pat in patterns], dtype=np.uint64)
    pat_z = np.array([[b[1] for b in pat] for pat in patterns], dtype=np.uint64)
    xs, zs = [], []
    for support in itertools.combinations(range(n), w):
        shifts = np.array(support, dtype=np.uint64)
        xs.append((pat_x << shifts).sum(axis=1, dtype=np.uint64))
        zs.append((pat_z << shifts).sum(axis=1, dtype=np.uint64))
    return np.concatenate(xs), np.concatenate(zs)


def pauli_masks(n: int, max_weight: int) -> tuple[np.ndarray, np.ndarray]:
    """Qubit-ordered (x, z) uint64 mask arrays for every string of weight <= max_weight.

    Order is the package-wide enumeration order: weight-major, then
    lexicographic by support subset, then letter order X < Y < Z on the
    support. Index 0 is the identity.
    """
    if not 0 <= max_weight <= n:
        raise ValueError(f"max_weight must be in [0, n]; got {max_weight} for n={n}")
    parts = [pauli_masks_exact(n, w) for w in range(max_weight + 1)]
    return (
        np.concatenate([p[0] for p in parts]),
        np.concatenate([p[1] for p in parts]),
    )


def enumerate_weight_at_most(n: int, max_weight: int) -> list[PauliString]:
    """Every phase-0 Pauli string of weight <= max_weight, in enumeration order."""
    xs, zs = pauli_masks(n, max_weight)
    return [PauliString(n, int(x), int(z), 0) for x, z in zip(xs, zs)]


def canonical_phases(xs: np.ndarray, zs: np.ndarray) -> np.ndarray:
    """Per-operator factor i^popcount(x & z) relating the XZ form to the Hermitian one."""
    k = np.bitwise_count(xs & zs).astype(np.int64) % 4
    return np.asarray(_PHASES, dtype=np.complex128)[k]


@dataclass(frozen=True)
class StateVector:
    """A dense complex amplitude vector on n qubits, immutable once built."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        arr = np.array(self.amplitudes, dtype=np.complex128)
        if arr.ndim != 1 or arr.shape[0] != (1 << self.n):
            raise ValueError(f"expected 2^{self.n} amplitudes, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(float(np.sum(np.abs(self.amplitudes) ** 2)) - 1.0) <= tol


def basis_state(n: int, index: int) -> StateVector:
    if not 0 <= index < (1 << n):
        raise ValueError(f"basis index {index} out of range for n={n}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(n, amps)


def normalize(psi: StateVector) -> StateVector:
    nrm = psi.norm
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return StateVector(psi.n, psi.amplitudes / nrm)


def _full_phase(p: PauliString) -> complex:
    return _PHASES[(p.phase_exp + (p.x_mask & p.z_mask).bit_count()) % 4]


def apply(p: PauliString, psi: StateVector) -> StateVector:
    """sigma |psi> computed exactly: a signed bit-flip permutation of amplitudes."""
    if p.n != psi.n:
        raise DimensionMismatchError(f"qubit counts differ: {p.n} != {psi.n}")
    xi, zi = index_masks(p)
    return StateVector(psi.n, _kernels.apply_pauli(xi, zi, _full_phase(p), psi.amplitudes))


def inner(phi: StateVector, psi: StateVector) -> complex:
    """<phi|psi>, conjugating phi."""
    if phi.n != psi.n:
        raise DimensionMismatchError(f"qubit counts differ: {phi.n} != {psi.n}")
    return complex(np.vdot(phi.amplitudes, psi.amplitudes))


def expectation(p: PauliString, psi: StateVector) -> complex:
    """<psi|sigma|psi> without materializing sigma|psi>."""
    if p.n != psi.n:
        raise DimensionMismatchError(f"qubit counts differ: {p.n} != {psi.n}")
    xi, zi = index_masks(p)
    vals = _kernels.batch_expectations(
        np.array([xi], dtype=np.uint64),
        np.array([zi], dtype=np.uint64),
        np.array([_full_phase(p)], dtype=np.complex128),
        psi.amplitudes,
    )
    return complex(vals[0])


def batch_expectations(psi: StateVector, xs: np.ndarray, zs: np.ndarray) -> np.ndarray:
    """<psi|P_k|psi> for phase-0 strings given as qubit-ordered mask arrays."""
    xi = _reverse_bits_array(xs, psi.n)
    zi = _reverse_bits_array(zs, psi.n)
    return _kernels.batch_expectations(xi, zi, canonical_phases(xs, zs), psi.amplitudes)
