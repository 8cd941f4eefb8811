import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from conftest import haar_vector, random_density
from haarmana.algebra import InvalidDimensionError, pauli_op, phase_point_op
from haarmana.wigner import (
    PATHS,
    StateError,
    WignerFunction,
    entropy_deficit,
    jensen_bound,
    mana,
    renyi2,
    wigner_fft,
    wigner_norm,
    wigner_pure,
    wigner_rho,
    wigner_values,
)


def brute_wigner(rho):
    d = rho.shape[0]
    return np.array([[np.trace(rho @ phase_point_op(d, p, q)).real / d for q in range(d)] for p in range(d)])


def cat_state():
    return np.array([0, 1, -1]) / math.sqrt(2)


class TestExamples:
    def test_basis_state(self):
        psi = np.array([1, 0, 0], dtype=complex)
        w = wigner_pure(psi)
        want = np.zeros((3, 3))
        want[:, 0] = 1 / 3
        assert np.abs(w.values - want).max() < 1e-12
        assert w.norm == pytest.approx(1.0)

    def test_cat_state_norm(self):
        w = wigner_pure(cat_state())
        assert w.norm == pytest.approx(5 / 3, abs=1e-12)
        assert mana(w) == pytest.approx(math.log(5 / 3), abs=1e-12)
        assert np.abs(w.values - brute_wigner(np.outer(cat_state(), cat_state()))).max() < 1e-12

    def test_maximally_mixed(self):
        w = wigner_rho(np.eye(3) / 3)
        assert np.abs(w.values - 1 / 9).max() < 1e-15
        assert w.mana == pytest.approx(0.0, abs=1e-14)
        assert w.s2 == pytest.approx(math.log(3))
        assert w.delta == pytest.approx(0.0, abs=1e-14)

    def test_rank_one_matches_pure(self):
        e0 = np.zeros(5, dtype=complex)
        e0[0] = 1
        assert np.abs(wigner_rho(np.outer(e0, e0)).values - wigner_pure(e0).values).max() < 1e-12

    def test_haar_d5_constraints(self, rng):
        w = wigner_pure(haar_vector(rng, 5))
        assert abs(w.values.sum() - 1) < 1e-10
        assert abs((w.values ** 2).sum() - 1 / 5) < 1e-10
        assert w.mana <= 0.5 * math.log(5) + 1e-12

    def test_half_half_entropy(self):
        rho = np.diag([0.5, 0.5, 0.0]).astype(complex)
        assert renyi2(rho) == pytest.approx(math.log(2))
        assert entropy_deficit(rho) == pytest.approx(math.log(1.5))
        assert entropy_deficit(np.ones(3) / math.sqrt(3)) == pytest.approx(math.log(3))


class TestPaths:
    @pytest.mark.parametrize("d", [3, 5, 7, 9, 15, 27])
    def test_agreement_200_states(self, rng, d):
        psi = np.stack([haar_vector(rng, d) for _ in range(100)])
        rho = np.stack([random_density(rng, d, rank=2) for _ in range(100)])
        for arr, pure in ((psi, True), (rho, False)):
            ref = wigner_values(arr, pure=pure, path="fft")
            for path in PATHS:
                assert np.abs(wigner_values(arr, pure=pure, path=path) - ref).max() < 1e-10

    @pytest.mark.parametrize("d", [3, 5])
    def test_against_operator_traces(self, rng, d):
        rho = random_density(rng, d)
        assert np.abs(wigner_rho(rho).values - brute_wigner(rho)).max() < 1e-12

    def test_fft_vs_direct_d27(self, rng):
        psi = haar_vector(rng, 27)
        assert np.abs(wigner_values(psi, path="fft") - wigner_values(psi, path="direct")).max() < 1e-10

    def test_unknown_path(self):
        with pytest.raises(ValueError):
            wigner_values(np.ones(3) / math.sqrt(3), path="magic")

    def test_batch_needs_flag(self):
        with pytest.raises(ValueError):
            wigner_values(np.zeros((2, 3, 3)))


class TestInvariants:
    @given(st.sampled_from([3, 5, 7, 9]), st.integers(0, 2 ** 32 - 1), st.integers(1, 9))
    def test_constraint_closure_and_bounds(self, d, seed, rank):
        rng = np.random.default_rng(seed)
        rho = random_density(rng, d, rank=min(rank, d))
        w = wigner_rho(rho)
        res = w.residuals()
        assert res["normalization"] < 1e-10 and res["purity"] < 1e-10
        bound = math.sqrt(math.exp(-w.s2) / d)
        assert np.abs(w.values).max() <= bound + 1e-12
        assert w.mana <= jensen_bound(d, w.s2) + 1e-10
        assert w.norm >= 1 - 1e-12

    @pytest.mark.parametrize("d", [3, 5, 9])
    def test_stabilizer_states_have_zero_mana(self, d):
        for j in range(d):
            e = np.zeros(d, dtype=complex)
            e[j] = 1
            for a1 in range(d):
                for a2 in range(d):
                    assert abs(wigner_pure(pauli_op(d, a1, a2) @ e).mana) < 1e-10

    def test_marginals_identical_across_points(self, rng):
        d, n = 5, 10_000
        psi = rng.normal(size=(n, d)) + 1j * rng.normal(size=(n, d))
        psi /= np.linalg.norm(psi, axis=1, keepdims=True)
        w = wigner_values(psi, pure=True)
        a, b, c = w[:, 0, 0], w[:, 2, 3], w[:, 4, 1]
        # with 1e4 each, p > 1e-3 corresponds to KS statistic well below 0.03
        assert stats.ks_2samp(a, b).pvalue > 1e-3
        assert stats.ks_2samp(a, c).pvalue > 1e-3


class TestValidation:
    def test_unnormalized(self):
        with pytest.raises(StateError):
            wigner_pure(np.array([1, 1, 0], dtype=complex))

    def test_not_hermitian(self):
        rho = np.eye(3, dtype=complex) / 3
        rho[0, 1] = 0.1
        with pytest.raises(StateError):
            wigner_rho(rho)

    def test_negative_eigenvalue(self):
        with pytest.raises(StateError):
            wigner_rho(np.diag([0.7, 0.5, -0.2]).astype(complex))

    def test_tiny_negative_eigenvalue_accepted(self):
        wigner_rho(np.diag([0.5, 0.5 + 5e-13, -5e-13]).astype(complex))

    def test_even_dimension(self):
        with pytest.raises(InvalidDimensionError):
            wigner_pure(np.ones(4) / 2)

    def test_wigner_fft_dispatch(self):
        assert wigner_norm(wigner_fft(cat_state())) == pytest.approx(5 / 3)
        assert wigner_fft(np.eye(3) / 3).norm == pytest.approx(1.0)
        with pytest.raises(InvalidDimensionError):
            wigner_fft(np.zeros((3, 3, 3)))


def test_csv_round_trip(rng):
    w = wigner_rho(random_density(rng, 5))
    text = w.to_csv()
    assert text.splitlines()[0] == "p,q,w"
    assert len(text.splitlines()) == 26
    back = WignerFunction.from_csv(text, w.s2)
    assert np.array_equal(back.values, w.values)


def test_csv_file(tmp_path):
    w = wigner_pure(cat_state())
    path = tmp_path / "w.csv"
    w.to_csv(path)
    assert WignerFunction.from_csv(path.read_text()).norm == pytest.approx(5 / 3)
