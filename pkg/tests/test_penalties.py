# Copyright 2023 The UMPR Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest
from umpr.algorithms.optimizer import exhaustive_oracle_1d
from umpr.algorithms.penalties import BootstrapComplexity
from umpr.algorithms.penalties import MaximalDiscrepancy
from umpr.algorithms.penalties import PenaltySpec
from umpr.algorithms.penalties import RademacherComplexity
from umpr.algorithms.penalties import SimulatedMaximalDiscrepancy
from umpr.algorithms.penalties import chi
from umpr.algorithms.penalties import compute_penalty
from umpr.algorithms.penalties import gamma
from umpr.algorithms.penalties import gamma_prime
from umpr.algorithms.penalties import get_penalty
from umpr.algorithms.penalties import log_psi
from umpr.algorithms.penalties import penalty_md
from umpr.algorithms.penalties import penalty_vc
from umpr.algorithms.penalties import sample_multinomial_weights
from umpr.algorithms.penalties import sample_rademacher
from umpr.algorithms.penalties import tail_bound
from umpr.algorithms.penalties import utility_lower_bound
from umpr.algorithms.penalties import zeta_truncated
from umpr.algorithms.penalties.discrepancy import discrepancy_weights
from umpr.algorithms.penalties.discrepancy import paired_weights
from umpr.common.constant import PenaltyKind
from umpr.common.exceptions import PenaltyError
from umpr.common.schema.dataset import Dataset
from umpr.sieve import PolynomialClass

from tests.conftest import random_instance


class TestClosedForms:

    def test_chi(self):
        assert chi(4, 500, 0.05) == pytest.approx(0.038152, abs=1e-6)
        assert chi(math.e, 37, 1.0) == pytest.approx(math.sqrt(1 / 37))
        assert chi(4, 2000, 0.05) / chi(4, 8000, 0.05) == pytest.approx(2)

    def test_chi_needs_two_rules(self):
        with pytest.raises(PenaltyError):
            chi(1, 500, 0.05)

    def test_log_psi(self):
        assert log_psi(4, 3) == pytest.approx(math.log(8))
        assert log_psi(4, 100) == pytest.approx(16.876, abs=1e-3)
        assert log_psi(7, 7) == pytest.approx(7 * math.log(2))

    @pytest.mark.parametrize("m, n, M, expected, expected_prime", [
        (100, 100, 5, 200, 280),
        (10, 1000, 1, 184, 344),
        (10, 500, 1, 152, 280),
    ])
    def test_gamma(self, m, n, M, expected, expected_prime):  # noqa
        assert gamma(m, n, M) == expected
        assert gamma_prime(m, n, M) == expected_prime

    def test_zeta_and_tail(self):
        zeta = zeta_truncated([4, 10, 20], 0.05)
        assert zeta == pytest.approx(sum(v ** -1.05 for v in (4, 10, 20)))
        assert tail_bound(PenaltyKind.VC, 500, 0.0, 5, zeta) == \
            pytest.approx(zeta)
        assert tail_bound(PenaltyKind.MD, 500, 10.0, 5, zeta) < zeta

    def test_lower_bound_below_penalized_value(self):
        assert utility_lower_bound(3.0, 5, 0.5, 500, 0.05) < 3.0
        with pytest.raises(PenaltyError):
            utility_lower_bound(3.0, 5, 0.5, 500, 1.5)


class TestVcPenalty:

    def test_example_value(self):
        spec = PenaltySpec(kind="vc", include_technical_term=False)
        value = penalty_vc(PolynomialClass(d=1, k=1), 500, spec, 5)
        expected = 40 * math.sqrt(4 * (1 + math.log(250)) / 500)
        assert value.value == pytest.approx(expected)
        assert value.value == pytest.approx(9.1364, abs=1e-3)
        assert value.diagnostics == ()

    def test_technical_term(self):
        poly = PolynomialClass(d=1, k=1)
        off = penalty_vc(poly, 500, PenaltySpec(
            kind="vc", include_technical_term=False), 5)
        on = penalty_vc(poly, 500, PenaltySpec(kind="vc", alpha=0.05), 5)
        assert on.value - off.value == pytest.approx(
            40 * math.sqrt(1.05 * math.log(2) / 1000))

    def test_linear_in_bound(self):
        poly = PolynomialClass(d=2, k=3)
        spec = PenaltySpec(kind="vc")
        assert penalty_vc(poly, 500, spec, 10).value == pytest.approx(
            2 * penalty_vc(poly, 500, spec, 5).value)

    def test_at_alpha(self):
        poly = PolynomialClass(d=1, k=3)
        value = penalty_vc(poly, 500, PenaltySpec(kind="vc", alpha=1.0), 5)
        moved = value.at_alpha(0.05)
        assert moved.base == value.base
        assert moved.technical == pytest.approx(40 * chi(4, 500, 0.05))
        assert value.at_alpha(0.05, False).value == value.base


class TestDataDependentPenalties:

    def test_identical_halves_cancel(self, pref1, exact):
        data = Dataset(y=[1, -1, 1, 1, -1, 1], x=[[0.1], [0.4], [0.9]] * 2)
        spec = PenaltySpec(kind="md", include_technical_term=False)
        value = penalty_md(PolynomialClass(d=1, k=0), data, pref1, spec,
                           optimizer=exact)
        assert value.value == 0
        assert len(value.diagnostics) == 1

    def test_md_is_the_signed_oracle(self, rng, pref1, exact):
        data = random_instance(rng, 10)
        spec = PenaltySpec(kind="md", include_technical_term=False)
        for k in (1, 2):
            value = penalty_md(PolynomialClass(d=1, k=k), data, pref1,
                               spec, optimizer=exact)
            assert value.base == exhaustive_oracle_1d(
                data, k, discrepancy_weights(10), pref1)

    def test_duplicated_pairs_cancel(self, rng, pref1, exact):
        x = np.repeat(rng.uniform(-2, 2, size=4), 2)[:, None]
        y = np.repeat(rng.choice([-1, 1], size=4), 2)
        spec = PenaltySpec(kind="smd", m=5, include_technical_term=False)
        value = compute_penalty(PolynomialClass(d=1, k=2),
                                Dataset(y=y, x=x), pref1, spec,
                                optimizer=exact, rng=rng)
        assert value.base == 0
        assert len(value.diagnostics) == 5

    def test_unit_signs_interleave_halves(self):
        w = paired_weights(np.ones(3), 6)
        np.testing.assert_array_equal(w, [2, -2, 2, -2, 2, -2])
        odd = paired_weights(np.ones(2), 5)
        assert odd[-1] == 0

    @pytest.mark.parametrize("kind, n, m", [
        ("smd", 8, 3), ("rc", 10, 2), ("bc", 6, 2),
    ])
    def test_average_of_oracle_maxima(self, pref1, exact, kind, n, m):
        data = random_instance(np.random.default_rng(n), n)
        spec = PenaltySpec(kind=kind, m=m, include_technical_term=False)
        poly = PolynomialClass(d=1, k=2)
        penalty = get_penalty(spec, optimizer=exact)
        value = penalty.evaluate(poly, data, pref1,
                                 rng=np.random.default_rng(11))
        weights = penalty.draw_weights(n, np.random.default_rng(11))
        maxima = [exhaustive_oracle_1d(data, 2, row, pref1)
                  for row in weights]
        assert value.diagnostics == tuple(maxima)
        assert value.base == pytest.approx(
            penalty.scale(n) * np.mean(maxima))

    @pytest.mark.parametrize("kind", ["md", "smd", "rc", "bc"])
    def test_annealer_reaches_oracle_maxima(self, pref1, fast_optimizer,
                                            kind):
        n = 10
        data = random_instance(np.random.default_rng(21), n)
        spec = PenaltySpec(kind=kind, m=3, include_technical_term=False)
        penalty = get_penalty(spec, optimizer=fast_optimizer)
        value = penalty.evaluate(PolynomialClass(d=1, k=2), data, pref1,
                                 rng=np.random.default_rng(11))
        weights = penalty.draw_weights(n, np.random.default_rng(11))
        maxima = [exhaustive_oracle_1d(data, 2, row, pref1)
                  for row in weights]
        assert value.diagnostics == pytest.approx(tuple(maxima), abs=1e-9)
        assert value.base == pytest.approx(
            penalty.scale(n) * np.mean(maxima), abs=1e-9)

    def test_unit_rademacher_doubles_best_utility(self, monkeypatch,
                                                   rng, pref1, exact):
        monkeypatch.setattr(
            RademacherComplexity, "draw_weights",
            lambda self, n, _: np.full((self.spec.m, n), 2.0))
        data = random_instance(rng, 10)
        spec = PenaltySpec(kind="rc", m=2, include_technical_term=False)
        value = compute_penalty(PolynomialClass(d=1, k=1), data, pref1,
                                spec, optimizer=exact, rng=rng)
        assert value.base == pytest.approx(
            2 * exhaustive_oracle_1d(data, 1, None, pref1))

    def test_bootstrap_without_resampling(self, monkeypatch, rng, pref1,
                                          exact):
        monkeypatch.setattr(
            BootstrapComplexity, "draw_weights",
            lambda self, n, _: np.zeros((self.spec.m, n)))
        spec = PenaltySpec(kind="bc", m=3, include_technical_term=False)
        value = compute_penalty(PolynomialClass(d=1, k=2),
                                random_instance(rng, 8), pref1, spec,
                                optimizer=exact, rng=rng)
        assert value.base == 0

    def test_bootstrap_prefactor(self):
        penalty = BootstrapComplexity(PenaltySpec(kind="bc"))
        assert penalty.scale(2) == 4

    @pytest.mark.parametrize("kind, coefficient", [
        ("md", lambda m, n, M: 24 * M),
        ("smd", gamma),
        ("rc", gamma),
        ("bc", gamma_prime),
    ])
    def test_technical_term_by_differencing(self, pref1, exact, kind,
                                            coefficient):
        data = random_instance(np.random.default_rng(5), 20)
        poly = PolynomialClass(d=1, k=3)
        values = [
            compute_penalty(poly, data, pref1, PenaltySpec(
                kind=kind, m=4, alpha=0.1, include_technical_term=flag),
                optimizer=exact, rng=np.random.default_rng(9))
            for flag in (True, False)]
        assert values[0].base == values[1].base
        assert values[0].value - values[1].value == pytest.approx(
            coefficient(4, 20, 5.0) * chi(4, 20, 0.1))

    def test_bit_identical_for_a_fixed_stream(self, toy_data, pref1,
                                              fast_optimizer):
        spec = PenaltySpec(kind="rc", m=2)
        poly = PolynomialClass(d=1, k=2)
        first, second = (
            compute_penalty(poly, toy_data, pref1, spec,
                            optimizer=fast_optimizer,
                            rng=np.random.default_rng(4))
            for _ in range(2))
        assert first == second

    def test_needs_two_observations(self, pref1, exact):
        data = Dataset(y=[1], x=[[0.0]])
        for kind in ("md", "smd", "bc"):
            with pytest.raises(PenaltyError):
                compute_penalty(PolynomialClass(d=1, k=1), data, pref1,
                                PenaltySpec(kind=kind), optimizer=exact)

    def test_spec_kind_must_match(self, toy_data, pref1):
        with pytest.raises(PenaltyError):
            penalty_md(PolynomialClass(d=1, k=1), toy_data, pref1,
                       PenaltySpec(kind="rc"))
        with pytest.raises(PenaltyError):
            MaximalDiscrepancy(PenaltySpec(kind="smd"))

    def test_spec_validation(self):
        with pytest.raises(PenaltyError):
            PenaltySpec(kind="vc", alpha=-1)
        with pytest.raises(PenaltyError):
            SimulatedMaximalDiscrepancy(PenaltySpec(kind="smd", m=0))


class TestSamplers:

    def test_rademacher_signs(self, rng):
        assert set(np.unique(sample_rademacher(500, rng))) == {-1, 1}

    def test_multinomial_conserves_mass(self, rng):
        for n in (1, 2, 7, 50):
            assert sample_multinomial_weights(n, rng).sum() == n

    def test_two_throws(self, rng):
        draws = np.array([sample_multinomial_weights(2, rng)
                          for _ in range(10 ** 4)])
        assert np.mean(draws[:, 0] == 0) == pytest.approx(0.25, abs=0.02)
        assert np.mean(np.maximum(draws[:, 0] - 1, 0)) == pytest.approx(
            0.25, abs=0.01)

    @pytest.mark.parametrize("n", [2, 5, 10])
    def test_centered_weight_parts(self, rng, n):
        draws = np.array([sample_multinomial_weights(n, rng)[0] - 1.0
                          for _ in range(10 ** 5)])
        expected = ((n - 1) / n) ** n
        for part in (np.maximum(draws, 0), np.maximum(-draws, 0)):
            se = part.std(ddof=1) / np.sqrt(len(part))
            assert abs(part.mean() - expected) < 3 * se + 1e-12
