import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from haarmana.design_probe import (
    DISTINGUISH_COLUMNS,
    OutOfRegimeError,
    chebyshev_coeffs,
    confusion_probability,
    empirical_distinguish,
    haar_tail_bound,
    reconstruct_wigner_norm,
    t_design_norm,
    write_distinguish_csv,
)
from haarmana.ensembles import EnsembleSpec, sample_batch
from haarmana.predictions import exact_pure_norm
from haarmana.wigner import WignerFunction, wigner_pure, wigner_rho, wigner_values

KS = [8, 16, 32, 64, 128, 256]


def closed_form(k):
    return 4 / math.pi * (-1) ** (k + 1) / (4 * k * k - 1)


class TestCoefficients:
    def test_leading(self):
        c = chebyshev_coeffs(10).coeffs
        assert c[0] == pytest.approx(2 / math.pi, abs=1e-14)
        assert c[2] == pytest.approx(4 / (3 * math.pi), abs=1e-14)
        assert abs(c[1]) < 1e-10 and abs(c[3]) < 1e-10

    def test_closed_form_pattern(self):
        c = chebyshev_coeffs(100).coeffs
        for k in range(1, 51):
            assert abs(c[2 * k] - closed_form(k)) < 1e-8

    def test_odd_vanish_and_k2_decay(self):
        c = chebyshev_coeffs(256).coeffs
        assert np.abs(c[1::2]).max() < 1e-10
        k = np.arange(2, 129)
        scaled = k ** 2 * np.abs(c[2 * k])
        assert scaled.min() > 0.25 and scaled.max() < 0.35

    def test_series_approximates_abs(self):
        s = chebyshev_coeffs(200)
        x = np.linspace(-1, 1, 101)
        assert np.abs(s(x) - np.abs(x)).max() < 5e-3

    def test_order_too_small(self):
        with pytest.raises(ValueError):
            chebyshev_coeffs(1)


class TestReconstruction:
    def test_maximally_mixed(self):
        assert reconstruct_wigner_norm(wigner_rho(np.eye(3) / 3), 64) == pytest.approx(1.0, abs=1e-2)

    def test_cat_state(self):
        w = wigner_pure(np.array([0, 1, -1]) / math.sqrt(2))
        assert reconstruct_wigner_norm(w, 128) == pytest.approx(5 / 3, abs=1e-2)
        assert reconstruct_wigner_norm(w, 128, rescale=False) == pytest.approx(5 / 3, abs=1e-2)

    @pytest.mark.parametrize("d", [3, 5, 9])
    def test_convergence(self, d):
        states = sample_batch(EnsembleSpec("reduced", d, 2), 25, 31)
        states = list(states) + [np.outer(v, v.conj()) for v in sample_batch(EnsembleSpec("pure", d), 25, 32)]
        errs = []
        for rho in states:
            w = WignerFunction(wigner_values(rho), -math.log(np.sum(np.abs(rho) ** 2)))
            errs.append([abs(reconstruct_wigner_norm(w, k) - w.norm) for k in KS])
        errs = np.array(errs)
        env = errs.max(axis=0)
        assert env[-1] < 1e-2
        # worst case over the 50 states shrinks with K and stays O(1/K)
        assert np.all(np.diff(env) <= 1e-12)
        assert np.all(env[1:] * np.array(KS[1:]) < 5.0)
        assert np.all(errs[:, -1] < errs[:, 0])

    def test_rescaled_beats_raw_at_d9(self):
        w = wigner_pure(sample_batch(EnsembleSpec("pure", 9), 1, 5)[0])
        err = abs(reconstruct_wigner_norm(w, 64) - w.norm)
        raw = abs(reconstruct_wigner_norm(w, 64, rescale=False) - w.norm)
        assert err < raw


class TestBounds:
    def test_tail_examples(self):
        assert haar_tail_bound(100, 1.0) == pytest.approx(0.01)
        assert haar_tail_bound(10, 0.1) == 1.0
        assert haar_tail_bound(10, 1e9) < 1e-15

    @pytest.mark.parametrize("delta", [0, -1])
    def test_tail_rejects(self, delta):
        with pytest.raises(ValueError):
            haar_tail_bound(10, delta)

    def test_confusion_plugin(self):
        got = confusion_probability(1e4, 1, 0.5)
        assert t_design_norm(1, 0.5) == 1.0
        assert got == pytest.approx(1 / (1e4 * (math.sqrt(2 / math.pi) * 100 - 1)), rel=1e-12)

    def test_confusion_slope(self):
        ds = np.logspace(3, 6, 13)
        ps = [confusion_probability(d, 1, 0.5) for d in ds]
        slope = np.polyfit(np.log(ds), np.log(ps), 1)[0]
        assert abs(slope + 1.5) < 0.1

    def test_out_of_regime(self):
        assert t_design_norm(2, 0.5) == pytest.approx(2 ** 16)
        with pytest.raises(OutOfRegimeError):
            confusion_probability(1e6, 2, 0.5)
        confusion_probability(2.0 ** 33, 2, 0.5)

    @given(st.floats(1.0, 3.0), st.floats(0.5, 1.0))
    def test_design_norm_at_least_one(self, t, eps):
        assert t_design_norm(t, eps) >= 1.0

    @pytest.mark.parametrize("args", [(1, 0.0), (1, 1.5), (0.5, 0.5)])
    def test_design_norm_rejects(self, args):
        with pytest.raises(ValueError):
            t_design_norm(*args)


class TestEmpirical:
    def test_threshold_zero(self):
        r = empirical_distinguish(5, 200, 0.0, 1)
        assert r.empirical_rate == 0.0

    def test_d9_half(self):
        thr = exact_pure_norm(9) - 0.5
        r = empirical_distinguish(9, 10_000, thr, 2)
        assert r.analytic_bound == pytest.approx(1 / (9 * 0.25))
        assert r.empirical_rate <= r.analytic_bound + 3 * r.stderr
        assert "upper bound" in r.assumption

    def test_d27_low_threshold(self):
        r = empirical_distinguish(27, 2000, 1.05, 3)
        assert r.empirical_rate <= r.analytic_bound

    def test_csv(self, tmp_path):
        r = empirical_distinguish(3, 50, 1.2, 4)
        path = tmp_path / "d.csv"
        write_distinguish_csv(path, [r])
        lines = path.read_text().splitlines()
        assert lines[0] == ",".join(DISTINGUISH_COLUMNS)
        assert lines[1].startswith("3,1.2,50,")
