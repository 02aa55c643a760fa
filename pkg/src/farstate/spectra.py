"""Dense Hermitian diagonalization and per-instance certification of the distance chain.

``verify_theorem`` measures, for a certified far state psi and a non-trivial
local Hamiltonian H, the distance from psi to every eigenspace of H (minimum
over unit vectors in the space, min_E ||psi - E|| = sqrt(2 - 2||P.psi||)),
and checks it against the three analytic lower bounds plus the exact-norm
identity ||H'psi|| = ||h'||_2 that the far-state condition implies.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import bounds, codes, hamiltonian, pauli
from .codes import FarStateError, FarStateReport
from .hamiltonian import LocalHamiltonian
from .pauli import StateVector

__all__ = [
    "EigenDecomposition",
    "Eigenspace",
    "EigenspaceDistance",
    "BoundReport",
    "TrivialHamiltonianError",
    "max_qubits",
    "eig_hermitian",
    "group_eigenspaces",
    "eigenspace_distance",
    "operator_norm",
    "verify_theorem",
]

CHAIN_TOL = 1e-9
EQ_NORM_TOL = 1e-9
_HERMITIAN_TOL = 1e-10
_DEFAULT_MAX_QUBITS = 12


class TrivialHamiltonianError(ValueError):
    """The Hamiltonian is a multiple of the identity; every state is an eigenstate."""


def max_qubits() -> int:
    """Dimension guard in qubits; FARSTATE_MAX_QUBITS overrides the default 12."""
    raw = os.environ.get("FARSTATE_MAX_QUBITS", "").strip()
    return int(raw) if raw else _DEFAULT_MAX_QUBITS


@dataclass
class EigenDecomposition:
    """Full spectrum in ascending order with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    basis: np.ndarray
    residual: float


@dataclass
class Eigenspace:
    """A maximal run of numerically equal eigenvalues; basis is a column view."""

    eigenvalue: float
    dimension: int
    start: int
    stop: int
    basis: np.ndarray


def _check_hermitian(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("matrix must be square")
    if np.abs(mat - mat.conj().T).max() > _HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian within 1e-10")
    return mat


def eig_hermitian(mat: np.ndarray) -> EigenDecomposition:
    """Full Hermitian eigendecomposition with the reconstruction residual recorded."""
    mat = _check_hermitian(mat)
    cap = 1 << max_qubits()
    if mat.shape[0] > cap:
        raise ValueError(
            f"dimension {mat.shape[0]} exceeds guard {cap}"
            " (raise FARSTATE_MAX_QUBITS to override)"
        )
    eigenvalues, basis = np.linalg.eigh(mat)
    residual = float(
        np.linalg.norm(mat @ basis - basis * eigenvalues[np.newaxis, :], axis=0).max()
    )
    return EigenDecomposition(eigenvalues=eigenvalues, basis=basis, residual=residual)


def group_eigenspaces(
    decomp: EigenDecomposition, tol: float | None = None
) -> list[Eigenspace]:
    """Split the ascending spectrum into maximal runs with consecutive gaps <= tol.

    Default tol is 1e-8 * max(1, spectral radius): random ensembles stay
    nondegenerate, structured presets collapse to true eigenspaces.
    """
    lam = decomp.eigenvalues
    if tol is None:
        radius = float(np.abs(lam).max()) if lam.size else 0.0
        tol = 1e-8 * max(1.0, radius)
    spaces: list[Eigenspace] = []
    start = 0
    for i in range(1, lam.size + 1):
        if i == lam.size or lam[i] - lam[i - 1] > tol:
            spaces.append(
                Eigenspace(
                    eigenvalue=float(lam[start]),
                    dimension=i - start,
                    start=start,
                    stop=i,
                    basis=decomp.basis[:, start:i],
                )
            )
            start = i
    return spaces


def eigenspace_distance(psi: StateVector, space: Eigenspace) -> float:
    """min over unit vectors E in the eigenspace of ||psi - E||.

    Expanding ||psi - E||^2 = 2 - 2 Re<psi|E> and maximizing over the unit
    ball of the space gives sqrt(2 - 2||P.psi||); global phase drops out.
    """
    if not psi.is_normalized():
        raise ValueError("state must be normalized")
    overlap = float(np.linalg.norm(space.basis.conj().T @ psi.amplitudes))
    return float(np.sqrt(max(0.0, 2.0 - 2.0 * min(overlap, 1.0))))


def operator_norm(mat: np.ndarray) -> float:
    """Largest |eigenvalue| of a Hermitian matrix."""
    mat = _check_hermitian(mat)
    return float(np.abs(np.linalg.eigvalsh(mat)).max())


@dataclass
class EigenspaceDistance:
    eigenvalue: float
    dimension: int
    distance: float


@dataclass
class BoundReport:
    """Measured distances and every lower bound of the chain, with pass flags."""

    n: int
    locality: int
    eigenspaces: list[EigenspaceDistance]
    min_distance: float
    bound_intrinsic: float
    bound_generic: float
    bound_coarse: float
    l2_norm: float
    l1_norm: float
    operator_norm: float
    eq_norm_max_error: float
    distance_ge_intrinsic: bool
    intrinsic_ge_generic: bool
    generic_ge_coarse: bool
    norm_identity_ok: bool

    @property
    def margin(self) -> float:
        return self.min_distance - self.bound_intrinsic

    @property
    def passed(self) -> bool:
        return (
            self.distance_ge_intrinsic
            and self.intrinsic_ge_generic
            and self.generic_ge_coarse
            and self.norm_identity_ok
        )


def verify_theorem(
    psi: StateVector,
    ham: LocalHamiltonian,
    far_report: FarStateReport | None = None,
    grouping_tol: float | None = None,
) -> BoundReport:
    """Diagonalize, measure all eigenspace distances, and certify the chain.

    ``far_report`` may carry a precomputed verify_far_state(psi, ham.locality)
    result (the sweep driver reuses one state across many Hamiltonians).
    """
    if ham.n != psi.n:
        raise pauli.DimensionMismatchError(f"qubit counts differ: {ham.n} != {psi.n}")
    if not ham.non_trivial():
        raise TrivialHamiltonianError(
            "Hamiltonian is a multiple of the identity; no distance bound applies"
        )
    locality = ham.locality
    if far_report is None:
        far_report = codes.verify_far_state(psi, locality)
    if not far_report.passed:
        witness, value = far_report.first_witness()
        raise FarStateError(
            f"state is not a certified far state for locality {locality}:"
            f" <{pauli.format_pauli(witness)}> = {value:.6g}",
            far_report,
        )
    if far_report.max_checked_weight < 2 * locality:
        raise ValueError(
            f"far-state report only covers weight {far_report.max_checked_weight}"
            f" < {2 * locality}"
        )

    coeffs = hamiltonian.coefficients(ham)
    h_i = coeffs.identity_coeff
    a_sum = float(sum(abs(c) for _, c in coeffs.non_identity_items()))
    b_sum = float(sum(c * c for _, c in coeffs.non_identity_items()))

    decomp = eig_hermitian(hamiltonian.to_dense(ham))
    spaces = group_eigenspaces(decomp, grouping_tol)

    overlaps = decomp.basis.conj().T @ psi.amplitudes
    weights = np.abs(overlaps) ** 2

    h_psi = hamiltonian.apply_hamiltonian(ham, psi)
    h_psi_sq = float(np.vdot(h_psi.amplitudes, h_psi.amplitudes).real)
    cross = float(np.vdot(psi.amplitudes, h_psi.amplitudes).real)

    records: list[EigenspaceDistance] = []
    eq_norm_max_error = 0.0
    for space in spaces:
        p_norm = float(np.sqrt(weights[space.start : space.stop].sum()))
        distance = float(np.sqrt(max(0.0, 2.0 - 2.0 * min(p_norm, 1.0))))
        records.append(
            EigenspaceDistance(
                eigenvalue=space.eigenvalue,
                dimension=space.dimension,
                distance=distance,
            )
        )
        energy = space.eigenvalue
        shifted_state_norm = float(
            np.sqrt(max(0.0, h_psi_sq - 2.0 * energy * cross + energy * energy))
        )
        shifted_coeff_norm = float(np.sqrt(b_sum + (h_i - energy) ** 2))
        eq_norm_max_error = max(
            eq_norm_max_error, abs(shifted_state_norm - shifted_coeff_norm)
        )

    argmin = min(range(len(records)), key=lambda i: records[i].distance)
    min_distance = records[argmin].distance
    e_min = records[argmin].eigenvalue

    intrinsic = bounds.bound_intrinsic(coeffs)
    generic = bounds.bound_generic(psi.n, locality, 2)
    coarse = bounds.bound_coarse(psi.n, locality, 2)

    l2_norm = float(np.sqrt(b_sum + (h_i - e_min) ** 2))
    l1_norm = a_sum + abs(h_i - e_min)
    op_norm = float(np.abs(decomp.eigenvalues - e_min).max())

    return BoundReport(
        n=psi.n,
        locality=locality,
        eigenspaces=records,
        min_distance=min_distance,
        bound_intrinsic=intrinsic,
        bound_generic=generic,
        bound_coarse=coarse,
        l2_norm=l2_norm,
        l1_norm=l1_norm,
        operator_norm=op_norm,
        eq_norm_max_error=eq_norm_max_error,
        distance_ge_intrinsic=min_distance >= intrinsic - CHAIN_TOL,
        intrinsic_ge_generic=intrinsic >= generic - CHAIN_TOL,
        generic_ge_coarse=generic >= coarse - CHAIN_TOL,
        norm_identity_ok=eq_norm_max_error <= EQ_NORM_TOL,
    )
