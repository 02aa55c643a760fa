import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from farstate import bounds, pauli
from farstate.pauli import (
    DimensionMismatchError,
    PauliString,
    StateVector,
    apply,
    basis_state,
    commutes,
    enumerate_weight_at_most,
    expectation,
    format_pauli,
    inner,
    multiply,
    parse_pauli,
    weight,
)

import oracles


def all_strings(n, phases=(0,)):
    for x in range(1 << n):
        for z in range(1 << n):
            for e in phases:
                yield PauliString(n, x, z, e)


class TestWeight:
    def test_identity(self):
        assert weight(parse_pauli("III")) == 0

    def test_mixed(self):
        assert weight(parse_pauli("IXYZI")) == 3

    def test_full(self):
        assert weight(parse_pauli("XZ")) == 2


class TestMultiply:
    def test_x_times_z_is_minus_i_y(self):
        prod = multiply(parse_pauli("X"), parse_pauli("Z"))
        assert (prod.x_mask, prod.z_mask, prod.phase_exp) == (1, 1, 3)

    def test_square_is_identity(self):
        sigma = parse_pauli("YZ")
        sq = multiply(sigma, sigma)
        assert (sq.x_mask, sq.z_mask, sq.phase_exp) == (0, 0, 0)

    def test_xi_times_zz(self):
        # oracle: explicit 4x4 complex matrix product
        prod = multiply(parse_pauli("XI"), parse_pauli("ZZ"))
        expected = oracles.dense_from_letters("XI") @ oracles.dense_from_letters("ZZ")
        assert np.array_equal(oracles.dense_from_pauli(prod), expected)
        assert np.array_equal(expected, oracles.dense_from_letters("YZ", phase_exp=3))

    def test_mismatched_n(self):
        with pytest.raises(DimensionMismatchError):
            multiply(parse_pauli("X"), parse_pauli("XX"))

    @pytest.mark.parametrize("n", [1, 2])
    def test_exhaustive_against_dense(self, n):
        dense0 = {
            (x, z): oracles.dense_from_pauli(PauliString(n, x, z))
            for x in range(1 << n)
            for z in range(1 << n)
        }
        for a, b in itertools.product(list(all_strings(n)), repeat=2):
            prod = multiply(a, b)
            got = oracles.PHASE[prod.phase_exp] * dense0[(prod.x_mask, prod.z_mask)]
            want = dense0[(a.x_mask, a.z_mask)] @ dense0[(b.x_mask, b.z_mask)]
            assert np.array_equal(got, want)

    def test_randomized_against_dense(self):
        rng = np.random.default_rng(11)
        for _ in range(60):
            n = int(rng.integers(1, 7))
            a = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)),
                            int(rng.integers(4)))
            b = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)),
                            int(rng.integers(4)))
            got = oracles.dense_from_pauli(multiply(a, b))
            want = oracles.dense_from_pauli(a) @ oracles.dense_from_pauli(b)
            assert np.array_equal(got, want)

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_associative(self, data):
        n = data.draw(st.integers(1, 5))
        draws = [
            PauliString(
                n,
                data.draw(st.integers(0, (1 << n) - 1)),
                data.draw(st.integers(0, (1 << n) - 1)),
                data.draw(st.integers(0, 3)),
            )
            for _ in range(3)
        ]
        a, b, c = draws
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


class TestCommutes:
    def test_zz_vs_xx(self):
        assert commutes(parse_pauli("ZZ"), parse_pauli("XX"))

    def test_x_vs_z(self):
        assert not commutes(parse_pauli("X"), parse_pauli("Z"))

    def test_identity_is_central(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            n = int(rng.integers(1, 7))
            p = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
            assert commutes(p, pauli.identity(n))

    @pytest.mark.parametrize("n", [1, 2])
    def test_exhaustive_against_commutator(self, n):
        dense0 = {
            (x, z): oracles.dense_from_pauli(PauliString(n, x, z))
            for x in range(1 << n)
            for z in range(1 << n)
        }
        for a, b in itertools.product(list(all_strings(n)), repeat=2):
            da = dense0[(a.x_mask, a.z_mask)]
            db = dense0[(b.x_mask, b.z_mask)]
            assert commutes(a, b) == np.array_equal(da @ db, db @ da)


class TestEnumeration:
    def test_counts_match_param_count(self):
        for n in range(1, 9):
            for w in range(n + 1):
                assert len(enumerate_weight_at_most(n, w)) == bounds.param_count(n, w, 2)

    def test_small_examples(self):
        assert len(enumerate_weight_at_most(2, 1)) == 7
        assert len(enumerate_weight_at_most(5, 2)) == 106
        assert enumerate_weight_at_most(1, 0) == [pauli.identity(1)]

    def test_order_prefix(self):
        got = [format_pauli(p) for p in enumerate_weight_at_most(3, 2)[:16]]
        assert got == [
            "III",
            "XII", "YII", "ZII", "IXI", "IYI", "IZI", "IIX", "IIY", "IIZ",
            "XXI", "XYI", "XZI", "YXI", "YYI", "YZI",
        ]

    def test_unique_and_deterministic(self):
        first = enumerate_weight_at_most(5, 3)
        second = enumerate_weight_at_most(5, 3)
        assert first == second
        assert len({(p.x_mask, p.z_mask) for p in first}) == len(first)

    def test_all_phase_zero(self):
        assert all(p.phase_exp == 0 for p in enumerate_weight_at_most(4, 4))

    def test_bad_weight(self):
        with pytest.raises(ValueError):
            enumerate_weight_at_most(3, 5)


class TestApply:
    def test_z_eigenbasis(self):
        z = parse_pauli("Z")
        assert np.array_equal(apply(z, basis_state(1, 0)).amplitudes, [1, 0])
        assert np.array_equal(apply(z, basis_state(1, 1)).amplitudes, [0, -1])

    def test_bit_flip(self):
        assert np.array_equal(apply(parse_pauli("X"), basis_state(1, 0)).amplitudes, [0, 1])

    def test_y_on_zero(self):
        assert np.array_equal(apply(parse_pauli("Y"), basis_state(1, 0)).amplitudes, [0, 1j])

    def test_qubit_zero_is_most_significant(self):
        # X on qubit 0 of two qubits maps |00> -> |10>, i.e. index 0 -> index 2
        out = apply(parse_pauli("XI"), basis_state(2, 0))
        assert np.argmax(np.abs(out.amplitudes)) == 2

    def test_norm_preserved(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            n = int(rng.integers(1, 7))
            psi = StateVector(n, oracles.random_state(n, rng))
            p = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)),
                            int(rng.integers(4)))
            assert abs(apply(p, psi).norm - 1.0) <= 1e-14

    def test_matches_dense_action(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            n = int(rng.integers(1, 6))
            psi = oracles.random_state(n, rng)
            p = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)),
                            int(rng.integers(4)))
            got = apply(p, StateVector(n, psi)).amplitudes
            want = oracles.dense_from_pauli(p) @ psi
            assert np.allclose(got, want, atol=1e-14)

    def test_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            apply(parse_pauli("X"), basis_state(2, 0))


class TestInner:
    def test_self_inner(self):
        rng = np.random.default_rng(9)
        psi = StateVector(3, oracles.random_state(3, rng))
        assert abs(inner(psi, psi) - 1.0) <= 1e-12

    def test_orthogonal_basis(self):
        assert inner(basis_state(1, 0), basis_state(1, 1)) == 0

    def test_plus_with_zero(self):
        plus = StateVector(1, np.array([1, 1]) / np.sqrt(2))
        assert abs(inner(plus, basis_state(1, 0)) - 1 / np.sqrt(2)) <= 1e-15

    def test_conjugates_first_argument(self):
        a = StateVector(1, np.array([1j, 0]))
        b = basis_state(1, 0)
        assert inner(a, b) == pytest.approx(-1j)


class TestExpectation:
    def test_matches_dense(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            n = int(rng.integers(1, 6))
            psi = oracles.random_state(n, rng)
            p = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
            want = np.vdot(psi, oracles.dense_from_pauli(p) @ psi)
            assert abs(expectation(p, StateVector(n, psi)) - want) <= 1e-12


class TestTextFormat:
    def test_parse_examples(self):
        p = parse_pauli("XZZXI")
        assert (p.n, p.weight, p.phase_exp) == (5, 4, 0)
        m = parse_pauli("-ZZ")
        assert (m.x_mask, m.z_mask, m.phase_exp) == (0, 3, 2)

    def test_parse_errors(self):
        for bad in ("AB", "", "+", "X B", "xz"):
            with pytest.raises(ValueError):
                parse_pauli(bad)

    def test_format_rejects_imaginary_phase(self):
        with pytest.raises(ValueError):
            format_pauli(PauliString(1, 1, 1, 1))

    @given(st.data())
    @settings(max_examples=80, deadline=None)
    def test_round_trip(self, data):
        n = data.draw(st.integers(1, 8))
        p = PauliString(
            n,
            data.draw(st.integers(0, (1 << n) - 1)),
            data.draw(st.integers(0, (1 << n) - 1)),
            data.draw(st.sampled_from([0, 2])),
        )
        assert parse_pauli(format_pauli(p)) == p


class TestStateVector:
    def test_length_checked(self):
        with pytest.raises(ValueError):
            StateVector(2, [1, 0])

    def test_immutable(self):
        psi = basis_state(2, 0)
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 5.0

    def test_masks_reject_out_of_range(self):
        with pytest.raises(ValueError):
            PauliString(2, 4, 0)
