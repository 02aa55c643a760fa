"""Stabilizer codes, codeword synthesis, and the far-state certificate.

A state is *far* (for locality L) when {sigma.psi : weight(sigma) <= L} is an
orthonormal set. That holds iff <psi|rho|psi> = 0 for every non-identity rho
of weight <= 2L, because <sigma.psi|tau.psi> is, up to a unit phase, the
expectation of sigma.tau (weight <= 2L), and conversely any rho of weight
m <= 2L splits into two factors supported on ceil(m/2) <= L qubits each.
``verify_far_state`` sweeps exactly that reduced family.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels, pauli
from .pauli import PauliString, StateVector

__all__ = [
    "StabilizerCode",
    "ValidationResult",
    "FarStateReport",
    "CodewordSeedError",
    "FarStateError",
    "validate_code",
    "codeword",
    "verify_far_state",
    "max_passing_locality",
    "preset_code",
    "preset_names",
    "parse_stabilizers",
    "format_stabilizers",
]

EXPECTATION_TOL = 1e-10
_PROJECTION_TOL = 1e-8


class CodewordSeedError(ValueError):
    """Seed basis state has zero projection onto the code space."""


class FarStateError(ValueError):
    """A far-state precondition failed; carries the offending report."""

    def __init__(self, message: str, report: "FarStateReport"):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class StabilizerCode:
    """Signed commuting generators defining a code space (their joint +1 eigenspace)."""

    n: int
    generators: tuple[PauliString, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.n != self.n:
                raise pauli.DimensionMismatchError(
                    f"generator on {g.n} qubits in an n={self.n} code"
                )
            if g.phase_exp not in (0, 2):
                raise ValueError("generator signs must be +1 or -1 (phase_exp 0 or 2)")

    @property
    def k(self) -> int:
        """Encoded qubits, n - #generators (meaningful once validated)."""
        return self.n - len(self.generators)


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _gf2_rank(rows: list[int]) -> int:
    rank = 0
    pivots: list[int] = []
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return rank


def validate_code(code: StabilizerCode) -> ValidationResult:
    """Check commutation, GF(2) independence, and -I exclusion.

    With phase_exp restricted to {0, 2} (enforced on construction) and
    independent generators, no nonempty product can equal -I, so the third
    invariant follows from the first two.
    """
    if not code.generators:
        return ValidationResult(False, "no generators")
    gens = code.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not pauli.commutes(gens[i], gens[j]):
                return ValidationResult(
                    False,
                    f"generators {i} and {j} anticommute"
                    f" ({pauli.format_pauli(gens[i])}, {pauli.format_pauli(gens[j])})",
                )
    rows = [g.x_mask | (g.z_mask << code.n) for g in gens]
    rank = _gf2_rank(rows)
    if rank != len(gens):
        return ValidationResult(
            False, f"generators dependent over GF(2): rank {rank} < {len(gens)}"
        )
    return ValidationResult(True)


def codeword(code: StabilizerCode, seed: int | None = None) -> StateVector:
    """Normalized projection of a seed basis state onto the code space.

    Applies (I + S_i)/2 for each generator in turn. With ``seed=None`` the
    basis states 0, 1, 2, ... are tried in order until one projects to a
    nonzero vector (always succeeds for a valid code).
    """
    result = validate_code(code)
    if not result:
        raise ValueError(f"invalid stabilizer code: {result.reason}")
    if seed is not None:
        return _project_seed(code, seed)
    for trial in range(1 << code.n):
        try:
            return _project_seed(code, trial)
        except CodewordSeedError:
            continue
    raise CodewordSeedError("no basis state has nonzero projection")  # pragma: no cover


def _project_seed(code: StabilizerCode, seed: int) -> StateVector:
    if not 0 <= seed < (1 << code.n):
        raise ValueError(f"seed {seed} out of range for n={code.n}")
    amps = np.zeros(1 << code.n, dtype=np.complex128)
    amps[seed] = 1.0
    gen_masks = [(pauli.index_masks(g), pauli._full_phase(g)) for g in code.generators]
    for (xi, zi), phase in gen_masks:
        amps = 0.5 * (amps + _kernels.apply_pauli(xi, zi, phase, amps))
    nrm = np.linalg.norm(amps)
    if nrm < _PROJECTION_TOL:
        raise CodewordSeedError(
            f"basis state {seed} is orthogonal to the code space; try another seed"
        )
    return StateVector(code.n, amps / nrm)


@dataclass
class FarStateReport:
    """Outcome of the expectation sweep behind the orthonormality condition."""

    max_checked_weight: int
    checked: int
    violations: list[tuple[PauliString, complex]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def first_witness(self) -> tuple[PauliString, complex] | None:
        return self.violations[0] if self.violations else None


def verify_far_state(
    psi: StateVector, locality: int, tol: float = EXPECTATION_TOL
) -> FarStateReport:
    """Certify that {sigma.psi : weight(sigma) <= locality} is orthonormal.

    Sweeps <psi|rho|psi> over every non-identity rho of weight <= 2*locality;
    violations are reported in enumeration order.
    """
    if not psi.is_normalized():
        raise ValueError("state must be normalized to 1e-12 before certification")
    if locality < 0:
        raise ValueError("locality must be non-negative")
    if 2 * locality > psi.n:
        raise ValueError(f"2*locality = {2 * locality} exceeds n = {psi.n}")
    xs, zs = pauli.pauli_masks(psi.n, 2 * locality)
    xs, zs = xs[1:], zs[1:]  # index 0 is the identity
    values = pauli.batch_expectations(psi, xs, zs)
    bad = np.flatnonzero(np.abs(values) > tol)
    violations = [
        (PauliString(psi.n, int(xs[i]), int(zs[i]), 0), complex(values[i])) for i in bad
    ]
    return FarStateReport(
        max_checked_weight=2 * locality, checked=len(xs), violations=violations
    )


def max_passing_locality(psi: StateVector) -> tuple[int, int | None]:
    """Largest L for which verify_far_state passes, plus the first dirty weight.

    Scans expectations weight-by-weight and stops at the first weight with a
    violation; returns (max_L, first_violating_weight) with the second item
    None when no violation exists up to weight n.
    """
    if not psi.is_normalized():
        raise ValueError("state must be normalized to 1e-12 before certification")
    n = psi.n
    offending = None
    for w in range(1, n + 1):
        xs, zs = pauli.pauli_masks_exact(n, w)
        values = pauli.batch_expectations(psi, xs, zs)
        if np.any(np.abs(values) > EXPECTATION_TOL):
            offending = w
            break
    if offending is None:
        return n // 2, None
    return min((offending - 1) // 2, n // 2), offending


_FIVE_QUBIT_GENERATORS = ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")

# Circulant graph state on 12 vertices (connection offsets {3, 5, 6, 7, 9}):
# the 12 cyclic shifts below are independent, commute, and generate a group
# whose minimum nonzero weight is 6, making it a [[12,0,6]] self-dual code.
_SELF_DUAL_12_SEED = "XIIZIZZZIZII"


def _cyclic_shifts(seedtext: str, count: int) -> tuple[str, ...]:
    return tuple(seedtext[-k:] + seedtext[:-k] for k in range(count))


_PRESETS: dict[str, tuple[str, ...]] = {
    "five_qubit_513": _FIVE_QUBIT_GENERATORS,
    "self_dual_12_0_6": _cyclic_shifts(_SELF_DUAL_12_SEED, 12),
}


def preset_names() -> tuple[str, ...]:
    return tuple(_PRESETS)


def preset_code(name: str) -> StabilizerCode:
    try:
        rows = _PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; known: {', '.join(_PRESETS)}") from None
    gens = tuple(pauli.parse_pauli(row) for row in rows)
    return StabilizerCode(gens[0].n, gens)


def parse_stabilizers(text: str) -> StabilizerCode:
    """Parse the stabilizer file format: one sign+IXYZ generator per line.

    '#' starts a comment (whole line or trailing); blank lines are skipped;
    every generator must share one length.
    """
    gens: list[PauliString] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            g = pauli.parse_pauli(line)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if gens and g.n != gens[0].n:
            raise ValueError(
                f"line {lineno}: generator length {g.n} != {gens[0].n} of earlier lines"
            )
        gens.append(g)
    if not gens:
        raise ValueError("no generators found")
    return StabilizerCode(gens[0].n, tuple(gens))


def format_stabilizers(code: StabilizerCode) -> str:
    return "\n".join(pauli.format_pauli(g) for g in code.generators) + "\n"
