"""L-local qubit Hamiltonians: construction, dense forms, and Pauli-basis coefficients.

A Hamiltonian is a real-weighted sum of phase-0 Pauli strings; its dense form
is Hermitian by construction. ``decompose_dense`` inverts ``to_dense`` through
the trace orthogonality of the Pauli basis, h_sigma = tr(sigma.M) / 2^n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, pauli
from .pauli import PauliString, StateVector

__all__ = [
    "LocalHamiltonian",
    "CoefficientVector",
    "to_dense",
    "decompose_dense",
    "shift",
    "coefficients",
    "apply_hamiltonian",
    "random_local",
    "preset_hamiltonian",
    "parse_hamiltonian",
    "format_hamiltonian",
]

TRIVIAL_TOL = 1e-12
_HERMITIAN_TOL = 1e-10
_DENSE_MAX_QUBITS = 14


@dataclass(frozen=True)
class LocalHamiltonian:
    """Merged (coefficient, PauliString) terms; locality = max term weight."""

    n: int
    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self):
        seen = set()
        for coeff, p in self.terms:
            if p.n != self.n:
                raise pauli.DimensionMismatchError(f"term on {p.n} qubits in n={self.n}")
            if p.phase_exp != 0:
                raise ValueError("term Paulis must carry phase_exp = 0")
            key = (p.x_mask, p.z_mask)
            if key in seen:
                raise ValueError(f"duplicate term {pauli.format_pauli(p)}; merge first")
            seen.add(key)

    @classmethod
    def from_terms(cls, n, terms) -> "LocalHamiltonian":
        """Build from an iterable of (coefficient, PauliString), merging duplicates.

        Exact zeros left after merging are dropped.
        """
        merged: dict[tuple[int, int], float] = {}
        order: list[tuple[int, int]] = []
        for coeff, p in terms:
            coeff = float(coeff)
            key = (p.x_mask, p.z_mask)
            if key not in merged:
                merged[key] = 0.0
                order.append(key)
            merged[key] += coeff
        kept = tuple(
            (merged[key], PauliString(n, key[0], key[1], 0))
            for key in order
            if merged[key] != 0.0
        )
        return cls(n, kept)

    @property
    def locality(self) -> int:
        return max((p.weight for _, p in self.terms), default=0)

    def non_trivial(self) -> bool:
        return any(p.weight >= 1 and abs(c) > TRIVIAL_TOL for c, p in self.terms)


@dataclass
class CoefficientVector:
    """Pauli-basis coefficients with the identity entry separately addressable."""

    n: int
    entries: dict[PauliString, float]

    @property
    def identity_coeff(self) -> float:
        return self.entries.get(pauli.identity(self.n), 0.0)

    def non_identity_items(self):
        ident = pauli.identity(self.n)
        return [(p, c) for p, c in self.entries.items() if p != ident]

    def l1(self) -> float:
        return float(sum(abs(c) for c in self.entries.values()))

    def l2(self) -> float:
        return float(np.sqrt(sum(c * c for c in self.entries.values())))


def coefficients(h: LocalHamiltonian) -> CoefficientVector:
    """The term list as a CoefficientVector (identity entry present, maybe 0)."""
    entries = {p: c for c, p in h.terms}
    entries.setdefault(pauli.identity(h.n), 0.0)
    return CoefficientVector(h.n, entries)


def shift(h: CoefficientVector, energy: float) -> CoefficientVector:
    """Subtract energy from the identity entry only (h' of the rescaled operator)."""
    out = dict(h.entries)
    ident = pauli.identity(h.n)
    out[ident] = out.get(ident, 0.0) - float(energy)
    return CoefficientVector(h.n, out)


def to_dense(h: LocalHamiltonian) -> np.ndarray:
    """Dense Hermitian 2^n x 2^n matrix, scatter-built one term at a time."""
    if h.n > _DENSE_MAX_QUBITS:
        raise ValueError(f"n={h.n} exceeds the dense-matrix guard n<={_DENSE_MAX_QUBITS}")
    dim = 1 << h.n
    mat = np.zeros((dim, dim), dtype=np.complex128)
    cols = np.arange(dim, dtype=np.uint64)
    for coeff, p in h.terms:
        xi, zi = pauli.index_masks(p)
        phase = pauli._full_phase(p)
        signs = 1.0 - 2.0 * (np.bitwise_count(zi & cols) & np.uint64(1)).astype(np.float64)
        mat[cols ^ xi, cols] += (coeff * phase) * signs
    return mat


def apply_hamiltonian(h: LocalHamiltonian, psi: StateVector) -> StateVector:
    """H|psi> as a sum of signed permutations; never builds the dense matrix."""
    if h.n != psi.n:
        raise pauli.DimensionMismatchError(f"qubit counts differ: {h.n} != {psi.n}")
    out = np.zeros(1 << h.n, dtype=np.complex128)
    for coeff, p in h.terms:
        xi, zi = pauli.index_masks(p)
        out += coeff * _kernels.apply_pauli(xi, zi, pauli._full_phase(p), psi.amplitudes)
    return StateVector(h.n, out)


def decompose_dense(mat: np.ndarray, max_weight: int | None = None) -> CoefficientVector:
    """Extract h_sigma = tr(sigma.M)/2^n for every sigma of weight <= max_weight.

    ``max_weight=None`` means the full basis (weight <= n), in which case the
    reconstruction sum equals M. Cost grows as 4^n x 2^n; intended for small n.
    """
    mat = np.asarray(mat)
    dim = mat.shape[0]
    if mat.ndim != 2 or mat.shape[1] != dim:
        raise ValueError("matrix must be square")
    n = dim.bit_length() - 1
    if (1 << n) != dim:
        raise ValueError(f"dimension {dim} is not a power of 2")
    if np.abs(mat - mat.conj().T).max() > _HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian within 1e-10")
    if max_weight is None:
        max_weight = n
    xs, zs = pauli.pauli_masks(n, max_weight)
    phases = pauli.canonical_phases(xs, zs)
    rows = np.arange(dim, dtype=np.uint64)
    xi = pauli._reverse_bits_array(xs, n)
    zi = pauli._reverse_bits_array(zs, n)
    entries: dict[PauliString, float] = {}
    for k in range(len(xs)):
        signs = 1.0 - 2.0 * (np.bitwise_count(zi[k] & rows) & np.uint64(1)).astype(np.float64)
        trace = phases[k] * np.sum(signs * mat[rows, rows ^ xi[k]])
        entries[PauliString(n, int(xs[k]), int(zs[k]), 0)] = float(trace.real) / dim
    return CoefficientVector(n, entries)


def random_local(n: int, locality: int, seed, scale: float = 1.0) -> LocalHamiltonian:
    """Uniform[-scale, scale] coefficient on every non-identity Pauli of weight <= locality.

    ``seed`` may be an int or a numpy Generator. The identity coefficient is
    zero; an all-negligible draw is rejected and redrawn so the result is
    always non-trivial.
    """
    if not 1 <= locality <= n:
        raise ValueError(f"locality must be in [1, n]; got {locality} for n={n}")
    if scale <= 0.0:
        raise ValueError("scale must be positive; scale=0 only produces trivial Hamiltonians")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    paulis = pauli.enumerate_weight_at_most(n, locality)[1:]
    for _ in range(100):
        coeffs = rng.uniform(-scale, scale, size=len(paulis))
        if np.max(np.abs(coeffs)) > TRIVIAL_TOL:
            return LocalHamiltonian.from_terms(
                n, [(c, p) for c, p in zip(coeffs, paulis)]
            )
    raise RuntimeError("rejection sampling failed to produce a non-trivial draw")


def preset_hamiltonian(name: str, n: int, **params) -> LocalHamiltonian:
    """Open-boundary chain presets: transverse_ising(J, g) and heisenberg(J)."""
    if n < 2:
        raise ValueError("chain presets need n >= 2")
    if name == "transverse_ising":
        coupling = float(params.pop("J", 1.0))
        field = float(params.pop("g", 1.0))
        _reject_extra(name, params)
        terms = []
        for i in range(n - 1):
            terms.append((-coupling, _two_site(n, i, "Z", "Z")))
        for i in range(n):
            terms.append((-field, _one_site(n, i, "X")))
        return LocalHamiltonian.from_terms(n, terms)
    if name == "heisenberg":
        coupling = float(params.pop("J", 1.0))
        _reject_extra(name, params)
        terms = []
        for i in range(n - 1):
            for letter in "XYZ":
                terms.append((coupling, _two_site(n, i, letter, letter)))
        return LocalHamiltonian.from_terms(n, terms)
    raise ValueError(f"unknown preset {name!r}; known: transverse_ising, heisenberg")


def _reject_extra(name, params):
    if params:
        raise ValueError(f"unknown parameters for {name}: {sorted(params)}")


def _one_site(n, i, letter):
    xb, zb = pauli._LETTER_TO_BITS[letter]
    return PauliString(n, xb << i, zb << i, 0)


def _two_site(n, i, letter_a, letter_b):
    xa, za = pauli._LETTER_TO_BITS[letter_a]
    xb, zb = pauli._LETTER_TO_BITS[letter_b]
    return PauliString(n, (xa << i) | (xb << (i + 1)), (za << i) | (zb << (i + 1)), 0)


def parse_hamiltonian(text: str, max_locality: int | None = None) -> LocalHamiltonian:
    """Parse lines of "coefficient pauli_string"; '#' comments; duplicates merge.

    ``max_locality`` rejects any term heavier than the declared locality
    (used by the CLI's --locality guard flag).
    """
    raw_terms: list[tuple[float, PauliString]] = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected 'coefficient pauli_string'")
        try:
            coeff = float(fields[0])
        except ValueError:
            raise ValueError(f"line {lineno}: bad coefficient {fields[0]!r}") from None
        word = fields[1]
        if word and word[0] in "+-":
            raise ValueError(f"line {lineno}: pauli string must be sign-free")
        try:
            p = pauli.parse_pauli(word)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if n is None:
            n = p.n
        elif p.n != n:
            raise ValueError(f"line {lineno}: term length {p.n} != {n} of earlier lines")
        if max_locality is not None and p.weight > max_locality:
            raise ValueError(
                f"line {lineno}: weight {p.weight} exceeds declared locality {max_locality}"
            )
        raw_terms.append((coeff, p))
    if n is None:
        raise ValueError("no terms found")
    return LocalHamiltonian.from_terms(n, raw_terms)


def format_hamiltonian(h: LocalHamiltonian) -> str:
    return "\n".join(f"{c!r} {pauli.format_pauli(p)}" for c, p in h.terms) + "\n"
