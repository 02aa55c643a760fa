import numpy as np
import pytest

from farstate import codes, hamiltonian as hm, pauli, spectra
from farstate.codes import FarStateError
from farstate.hamiltonian import LocalHamiltonian, apply_hamiltonian, coefficients, shift
from farstate.pauli import StateVector, basis_state, parse_pauli
from farstate.spectra import (
    Eigenspace,
    TrivialHamiltonianError,
    eig_hermitian,
    eigenspace_distance,
    group_eigenspaces,
    operator_norm,
    verify_theorem,
)

import oracles


def ham(n, word_coeffs):
    return LocalHamiltonian.from_terms(
        n, [(c, parse_pauli(w)) for w, c in word_coeffs.items()]
    )


def space_from_block(block):
    return Eigenspace(eigenvalue=0.0, dimension=block.shape[1], start=0,
                      stop=block.shape[1], basis=block)


class TestEigHermitian:
    def test_diagonal(self):
        decomp = eig_hermitian(np.diag([3.0, -1.0, 2.0, 0.0]))
        assert np.allclose(decomp.eigenvalues, [-1, 0, 2, 3])

    def test_pauli_x(self):
        decomp = eig_hermitian(oracles.dense_from_letters("X"))
        assert np.allclose(decomp.eigenvalues, [-1, 1])
        minus, plus = decomp.basis[:, 0], decomp.basis[:, 1]
        for vec, sign in ((minus, -1.0), (plus, 1.0)):
            aligned = vec / vec[np.argmax(np.abs(vec))]
            assert np.allclose(aligned / np.linalg.norm(aligned),
                               np.array([1, sign]) / np.sqrt(2), atol=1e-12)

    def test_reconstruction_random(self):
        rng = np.random.default_rng(8)
        raw = rng.normal(size=(32, 32)) + 1j * rng.normal(size=(32, 32))
        mat = raw + raw.conj().T
        decomp = eig_hermitian(mat)
        recon = decomp.basis @ np.diag(decomp.eigenvalues) @ decomp.basis.conj().T
        assert np.abs(recon - mat).max() <= 1e-9
        assert decomp.residual <= 1e-9 * max(1.0, np.linalg.norm(mat, 2))

    def test_orthonormal_columns(self):
        decomp = eig_hermitian(oracles.dense_from_letters("ZZ"))
        gram = decomp.basis.conj().T @ decomp.basis
        assert np.abs(gram - np.eye(4)).max() <= 1e-10

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_dimension_guard_env(self, monkeypatch):
        monkeypatch.setenv("FARSTATE_MAX_QUBITS", "1")
        with pytest.raises(ValueError, match="FARSTATE_MAX_QUBITS"):
            eig_hermitian(np.eye(4))
        monkeypatch.setenv("FARSTATE_MAX_QUBITS", "2")
        assert eig_hermitian(np.eye(4)).eigenvalues.shape == (4,)


class TestGrouping:
    def test_z_on_first_qubit(self):
        spaces = group_eigenspaces(eig_hermitian(oracles.dense_from_letters("ZI")))
        assert [(s.eigenvalue, s.dimension) for s in spaces] == [(-1.0, 2), (1.0, 2)]

    def test_identity(self):
        spaces = group_eigenspaces(eig_hermitian(np.eye(8)))
        assert len(spaces) == 1
        assert spaces[0].dimension == 8

    def test_nondegenerate_random(self):
        rng = np.random.default_rng(12)
        raw = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
        spaces = group_eigenspaces(eig_hermitian(raw + raw.conj().T))
        assert len(spaces) == 16
        assert all(s.dimension == 1 for s in spaces)

    def test_dimensions_sum(self):
        spaces = group_eigenspaces(eig_hermitian(oracles.dense_from_letters("ZZ")))
        assert sum(s.dimension for s in spaces) == 4

    def test_custom_tol_merges(self):
        decomp = eig_hermitian(np.diag([0.0, 0.5, 1.0, 1.4]))
        assert len(group_eigenspaces(decomp, tol=0.6)) == 1
        assert len(group_eigenspaces(decomp, tol=0.1)) == 4


class TestEigenspaceDistance:
    def test_inside(self):
        block = np.eye(4, dtype=complex)[:, :2]
        psi = basis_state(2, 1)
        assert eigenspace_distance(psi, space_from_block(block)) == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal(self):
        block = np.eye(4, dtype=complex)[:, :2]
        psi = basis_state(2, 3)
        assert eigenspace_distance(psi, space_from_block(block)) == pytest.approx(
            np.sqrt(2.0), abs=1e-12
        )

    def test_five_qubit_vs_z_eigenspace(self, five_qubit_state):
        decomp = eig_hermitian(oracles.dense_from_letters("ZIIII"))
        for space in group_eigenspaces(decomp):
            dist = eigenspace_distance(five_qubit_state, space)
            assert dist == pytest.approx(np.sqrt(2.0 - np.sqrt(2.0)), abs=1e-12)

    def test_global_phase_invariant(self):
        rng = np.random.default_rng(31)
        block = oracles.random_orthonormal_block(16, 2, rng)
        psi_vec = oracles.random_state(4, rng)
        space = space_from_block(block)
        base = eigenspace_distance(StateVector(4, psi_vec), space)
        for phi in (0.3, 1.7, 4.4):
            rotated = StateVector(4, np.exp(1j * phi) * psi_vec)
            assert abs(eigenspace_distance(rotated, space) - base) <= 1e-12

    def test_matches_grid_oracle_small(self):
        rng = np.random.default_rng(32)
        for dim in (1, 2, 3):
            block = oracles.random_orthonormal_block(16, dim, rng)
            psi_vec = oracles.random_state(4, rng)
            closed = eigenspace_distance(StateVector(4, psi_vec), space_from_block(block))
            brute = oracles.grid_min_subspace_distance(psi_vec, block)
            assert abs(closed - brute) <= 1e-6

    def test_unnormalized_rejected(self):
        block = np.eye(4, dtype=complex)[:, :1]
        with pytest.raises(ValueError):
            eigenspace_distance(StateVector(2, [1, 1, 0, 0]), space_from_block(block))


class TestOperatorNorm:
    def test_zz(self):
        assert operator_norm(oracles.dense_from_letters("ZZ")) == pytest.approx(1.0)

    def test_x_plus_z(self):
        mat = oracles.dense_from_letters("X") + oracles.dense_from_letters("Z")
        assert operator_norm(mat) == pytest.approx(np.sqrt(2.0), abs=1e-12)

    def test_bounded_by_l1_norm(self):
        rng = np.random.default_rng(41)
        for _ in range(100):
            n = int(rng.integers(1, 6))
            h = hm.random_local(n, min(2, n), rng)
            energy = float(rng.uniform(-2, 2))
            shifted = shift(coefficients(h), energy)
            mat = hm.to_dense(h) - energy * np.eye(1 << n)
            assert operator_norm(mat) <= shifted.l1() + 1e-9


class TestNormIdentity:
    def test_shifted_norm_equals_coefficient_norm(self, five_qubit_state):
        # holds for every shift once the far-state condition is certified
        rng = np.random.default_rng(50)
        psi = five_qubit_state
        assert codes.verify_far_state(psi, 1).passed
        for _ in range(20):
            h = hm.random_local(5, 1, rng)
            h_psi = apply_hamiltonian(h, psi)
            for _ in range(5):
                energy = float(rng.uniform(-3, 3))
                moved = h_psi.amplitudes - energy * psi.amplitudes
                state_norm = np.linalg.norm(moved)
                coeff_norm = shift(coefficients(h), energy).l2()
                assert abs(state_norm - coeff_norm) <= 1e-9


class TestDistanceInequalities:
    def test_norm_quotient_bounds_distance(self):
        # ||psi - v|| >= ||H'psi|| / ||H'|| when H'v = 0, for any psi
        rng = np.random.default_rng(60)
        for _ in range(10):
            n = int(rng.integers(2, 5))
            h = hm.random_local(n, 2, rng)
            mat = hm.to_dense(h)
            decomp = eig_hermitian(mat)
            psi_vec = oracles.random_state(n, rng)
            for j in range(0, 1 << n, 3):
                energy = decomp.eigenvalues[j]
                vec = decomp.basis[:, j]
                shifted = mat - energy * np.eye(1 << n)
                opn = operator_norm(shifted)
                lhs = np.linalg.norm(shifted @ (psi_vec - vec))
                assert lhs <= opn * np.linalg.norm(psi_vec - vec) + 1e-9
                assert (
                    np.linalg.norm(psi_vec - vec)
                    >= np.linalg.norm(shifted @ psi_vec) / opn - 1e-9
                )


class TestVerifyTheorem:
    def test_analytic_case(self, five_qubit_state):
        report = verify_theorem(five_qubit_state, ham(5, {"ZIIII": 1.0}))
        assert report.min_distance == pytest.approx(np.sqrt(2 - np.sqrt(2)), abs=1e-12)
        assert report.bound_intrinsic == pytest.approx(1 / np.sqrt(2), abs=1e-15)
        assert report.bound_generic == pytest.approx(0.25, abs=1e-15)
        assert report.passed
        assert report.margin == pytest.approx(
            np.sqrt(2 - np.sqrt(2)) - 1 / np.sqrt(2), abs=1e-12
        )
        assert [(r.eigenvalue, r.dimension) for r in report.eigenspaces] == [
            (-1.0, 16),
            (1.0, 16),
        ]

    def test_trivial_hamiltonian(self, five_qubit_state):
        with pytest.raises(TrivialHamiltonianError, match="identity"):
            verify_theorem(five_qubit_state, ham(5, {"IIIII": 3.0}))

    def test_far_state_precondition(self, ghz5):
        h = hm.random_local(5, 1, seed=4)
        with pytest.raises(FarStateError) as excinfo:
            verify_theorem(ghz5, h)
        report = excinfo.value.report
        assert str(report.first_witness()[0]) == "ZZIII"

    def test_random_ensemble_chain(self, five_qubit_state):
        rng = np.random.default_rng(70)
        for _ in range(25):
            h = hm.random_local(5, 1, rng)
            report = verify_theorem(five_qubit_state, h)
            assert report.passed
            assert report.min_distance >= report.bound_intrinsic - 1e-9
            assert report.bound_intrinsic >= report.bound_generic - 1e-9
            assert report.bound_generic >= report.bound_coarse - 1e-9
            assert report.eq_norm_max_error <= 1e-9
            assert report.operator_norm <= report.l1_norm + 1e-9

    def test_reuses_supplied_far_report(self, five_qubit_state):
        far = codes.verify_far_state(five_qubit_state, 1)
        report = verify_theorem(five_qubit_state, ham(5, {"XIIII": 0.5}), far_report=far)
        assert report.passed

    def test_stale_far_report_rejected(self, five_qubit_state):
        far = codes.verify_far_state(five_qubit_state, 0)
        with pytest.raises(ValueError, match="covers"):
            verify_theorem(five_qubit_state, ham(5, {"XIIII": 0.5}), far_report=far)

    def test_degenerate_preset_hamiltonian(self, five_qubit_state):
        # Ising at g=0 is heavily degenerate; grouping must still certify
        h = hm.preset_hamiltonian("transverse_ising", 5, J=1.0, g=0.0)
        far = codes.verify_far_state(five_qubit_state, 2)
        assert not far.passed  # locality 2 exceeds the five-qubit guarantee
        with pytest.raises(FarStateError):
            verify_theorem(five_qubit_state, h)
