import numpy as np
import pytest
from hypothesis import given, strategies as st

from haarmana.algebra import (
    InvalidDimensionError,
    check_dim,
    clock_op,
    inv2,
    omega,
    pauli_op,
    phase_point_op,
    phase_point_op_multi,
    phase_point_ops,
    shift_op,
    verify_algebra,
)

odd_d = st.sampled_from([3, 5, 7, 9, 11, 15])


def brute_point_op(d, p, q):
    """A(p,q) = T_{(p,q)} P T_{(p,q)}^dagger with parity P|j> = |-j>, all from raw matrix products."""
    w = np.exp(2j * np.pi / d)
    x = np.roll(np.eye(d), 1, axis=0)
    z = np.diag(w ** np.arange(d))
    phase = w ** (-((d + 1) // 2) * p * q)
    t = phase * np.linalg.matrix_power(z, p) @ np.linalg.matrix_power(x, q)
    parity = np.zeros((d, d))
    parity[(-np.arange(d)) % d, np.arange(d)] = 1
    return t @ parity @ t.conj().T


class TestDims:
    @pytest.mark.parametrize("d,want", [(3, 2), (5, 3), (9, 5)])
    def test_inv2(self, d, want):
        assert inv2(d) == want

    @given(st.integers(1, 200).map(lambda k: 2 * k + 1))
    def test_inv2_property(self, d):
        assert (2 * inv2(d)) % d == 1

    @pytest.mark.parametrize("d", [2, 4, 1, 0, -3, 3.5, True])
    def test_invalid(self, d):
        with pytest.raises(InvalidDimensionError):
            check_dim(d)


class TestPauli:
    def test_shift_moves_last_to_first(self):
        e2 = np.zeros(3)
        e2[2] = 1
        assert np.allclose(shift_op(3) @ e2, [1, 0, 0])

    def test_clock_diagonal(self):
        w = omega(3)
        assert np.allclose(np.diag(clock_op(3)), [1, w, w * w])

    def test_commutation(self):
        z, x = clock_op(5), shift_op(5)
        assert np.abs(z @ x - omega(5) * x @ z).max() < 1e-14

    def test_examples(self):
        assert np.allclose(pauli_op(3, 0, 0), np.eye(3))
        assert np.allclose(pauli_op(3, 1, 0), clock_op(3))
        want = omega(3) ** -2 * clock_op(3) @ shift_op(3)
        assert np.allclose(pauli_op(3, 1, 1), want)

    @given(odd_d, st.integers(-20, 20), st.integers(-20, 20))
    def test_unitary_and_periodic(self, d, a1, a2):
        t = pauli_op(d, a1, a2)
        assert np.abs(t @ t.conj().T - np.eye(d)).max() < 1e-12
        assert np.abs(t - pauli_op(d, a1 + d, a2 - d)).max() < 1e-12


class TestPointOps:
    @given(odd_d, st.integers(0, 14), st.integers(0, 14))
    def test_matches_brute_force(self, d, p, q):
        assert np.abs(phase_point_op(d, p, q) - brute_point_op(d, p % d, q % d)).max() < 1e-12

    @pytest.mark.parametrize("d", [3, 5])
    def test_weyl_construction_agrees(self, d):
        for p in range(d):
            for q in range(d):
                diff = phase_point_op(d, p, q, construction="weyl") - phase_point_op(d, p, q)
                assert np.abs(diff).max() < 1e-12

    def test_d3_trace_inner_products(self):
        ops = [phase_point_op(3, p, q) for p in range(3) for q in range(3)]
        gram = np.array([[np.trace(a @ b) for b in ops] for a in ops])
        assert np.abs(gram - 3 * np.eye(9)).max() < 1e-12

    @given(odd_d, st.integers(0, 14), st.integers(0, 14))
    def test_spectrum_and_trace(self, d, p, q):
        a = phase_point_op(d, p, q)
        assert np.abs(a - a.conj().T).max() < 1e-12
        eig = np.sort(np.linalg.eigvalsh(a))
        want = np.r_[-np.ones((d - 1) // 2), np.ones((d + 1) // 2)]
        assert np.abs(eig - want).max() < 1e-9
        assert abs(np.trace(a) - 1) < 1e-12

    def test_stack_and_slices(self):
        ops = phase_point_ops(7)
        assert ops.shape == (7, 7, 7, 7)
        for p in (0, 3, 6):
            assert np.array_equal(phase_point_ops(7, p), ops[p])
            for q in range(7):
                assert np.array_equal(ops[p, q], phase_point_op(7, p, q))

    def test_unknown_construction(self):
        with pytest.raises(ValueError):
            phase_point_op(3, 0, 0, construction="nope")


class TestMulti:
    def test_two_qutrits(self):
        a = phase_point_op_multi([3, 3], [(1, 2), (0, 1)])
        assert a.shape == (9, 9)
        assert np.abs(a - a.conj().T).max() < 1e-12
        eig = np.linalg.eigvalsh(a)
        assert np.sum(eig > 0) == 5 and np.sum(eig < 0) == 4
        assert np.abs(np.abs(eig) - 1).max() < 1e-12

    def test_single_reduces(self):
        assert np.array_equal(phase_point_op_multi([3], [(2, 1)]), phase_point_op(3, 2, 1))

    def test_mixed_dims_trace(self):
        assert abs(np.trace(phase_point_op_multi([3, 5], [(1, 1), (4, 2)])) - 1) < 1e-12

    def test_mismatch(self):
        with pytest.raises(InvalidDimensionError):
            phase_point_op_multi([3, 5], [(0, 0)])
        with pytest.raises(InvalidDimensionError):
            phase_point_op_multi([3, 4], [(0, 0), (0, 0)])


class TestVerify:
    @pytest.mark.parametrize("d", [3, 7, 15])
    def test_residuals_small(self, d):
        rep = verify_algebra(d)
        assert rep.ok, rep.lines()
        assert all(v < 1e-9 for v in rep.residuals.values())
        assert all(line.startswith("PASS") for line in rep.lines())

    def test_perturbation_detected(self):
        rep = verify_algebra(5, perturb=True)
        assert not rep.ok
        assert "spectrum" in rep.failures and "trace" in rep.failures

    def test_cap(self):
        with pytest.raises(InvalidDimensionError):
            verify_algebra(33)
