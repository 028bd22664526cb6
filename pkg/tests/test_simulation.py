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

import itertools

import numpy as np
import pytest
from umpr.algorithms.optimizer import OptimizerConfig
from umpr.algorithms.penalties import PenaltySpec
from umpr.algorithms.penalties import tail_bound
from umpr.algorithms.penalties import zeta_truncated
from umpr.algorithms.selection import umpr_select
from umpr.common.config import BaseConfig
from umpr.common.constant import PenaltyKind
from umpr.common.exceptions import ConfigError
from umpr.common.exceptions import DataError
from umpr.common.schema.preference import Preference
from umpr.core.utility import conditional_utility
from umpr.core.utility import empirical_utility
from umpr.core.utility import sequential_mean
from umpr.core.utility import utility_terms
from umpr.sieve import HierarchySpec
from umpr.sieve import PolynomialClass
from umpr.sieve import PredictionRule
from umpr.simulation import DEFAULT_ROSTER
from umpr.simulation import DgpSpec
from umpr.simulation import ExperimentConfig
from umpr.simulation import catalog_preference
from umpr.simulation import check_compatible
from umpr.simulation import excess_utility
from umpr.simulation import format_report
from umpr.simulation import maximal_expected_utility
from umpr.simulation import oracle_decisions
from umpr.simulation import oracle_utility
from umpr.simulation import parse_preference
from umpr.simulation import parse_roster
from umpr.simulation import read_report
from umpr.simulation import rgeu_experiment
from umpr.simulation import sample_dgp
from umpr.simulation import true_probability
from umpr.simulation.dgp import beta_inverse_cdf
from umpr.simulation.experiment import report_columns
from umpr.utils.util import child_rng


def quick_config(**kwargs) -> ExperimentConfig:
    settings = dict(
        dgp="1", preference="1", n=60, out_of_sample=400, replications=4,
        estimators="oracle,ml1,mu1,umpr-vc", K=2, seed=20230601,
        optimizer=OptimizerConfig(restarts=4, iterations=150))
    settings.update(kwargs)
    return ExperimentConfig(**settings)


class TestDgp:

    def test_beta_quantile(self):
        x = 5 * beta_inverse_cdf(0.5, 1.3) - 2.5
        assert x == pytest.approx(5 * (1 - 0.5 ** (1 / 1.3)) - 2.5)
        assert x == pytest.approx(-0.4337, abs=5e-4)

    def test_true_probability(self):
        assert true_probability("dgp1", [0.0])[0] == 0.5
        assert true_probability(1, [1.0])[0] == pytest.approx(0.42556,
                                                               abs=1e-5)
        assert true_probability("DGP2", [[0.0, 0.0]])[0] == pytest.approx(
            0.81757, abs=1e-5)

    def test_support(self, rng):
        first = sample_dgp("1", 5000, rng)
        assert first.d == 1
        assert np.all(np.abs(first.x) <= 2.5)
        second = sample_dgp("2", 5000, rng)
        assert second.d == 2
        assert np.all(np.abs(second.x) <= 3.5)

    def test_label_frequency(self, rng):
        data = sample_dgp("2", 10 ** 5, rng)
        hits = (data.y == 1).astype(float)
        p = true_probability("2", data.x)
        se = hits.std(ddof=1) / np.sqrt(data.n)
        assert abs(hits.mean() - p.mean()) < 4 * se

    def test_reproducible(self):
        first = sample_dgp("1", 50, np.random.default_rng(3))
        second = sample_dgp("1", 50, np.random.default_rng(3))
        np.testing.assert_array_equal(first.x, second.x)
        np.testing.assert_array_equal(first.y, second.y)

    def test_spec_aliases(self):
        assert DgpSpec(id="DGP1") == DgpSpec(id=1)
        assert DgpSpec(id="2").d == 2
        assert str(DgpSpec(id="dgp2")) == "DGP2"
        with pytest.raises(ConfigError):
            DgpSpec(id="3")

    def test_empty_sample(self, rng):
        with pytest.raises(DataError):
            sample_dgp("1", 0, rng)


class TestPreferences:

    @pytest.mark.parametrize("pid, bound", [
        (1, 5.0), (2, 5.625), (3, 7.5), (4, 22.5),
    ])
    def test_catalog_bounds(self, pid, bound):
        assert catalog_preference(pid).M == pytest.approx(bound)

    def test_catalog_values_respect_bound(self, rng):
        for pid, dgp in ((1, "1"), (2, "1"), (3, "2"), (4, "2")):
            x = sample_dgp(dgp, 2000, rng).x
            catalog_preference(pid).evaluate(x)

    def test_banded_weight(self):
        b, c = catalog_preference(4).evaluate(
            np.array([[0.2, 0.3], [2.0, 1.0]]))
        np.testing.assert_array_equal(b, [60.0, 20.0])
        np.testing.assert_array_equal(c, [0.75, 0.75])

    def test_parse(self):
        assert parse_preference("3").M == 7.5
        assert parse_preference("20,0.5").M == 5.0
        for text in ("5", "x", "20,1.5", "1,2,3"):
            with pytest.raises(ConfigError):
                parse_preference(text)

    def test_compatibility(self):
        check_compatible("1", "dgp1")
        check_compatible("20,0.7", "dgp2")
        with pytest.raises(ConfigError, match="DGP2"):
            check_compatible("3", "dgp1")


class TestOracle:

    def test_discrete_distributions(self, rng):
        for _ in range(20):
            support = rng.integers(1, 7)
            x = rng.normal(size=(support, 1))
            mass = rng.dirichlet(np.ones(support))
            p_star = rng.uniform(0, 1, size=support)
            b = rng.uniform(0, 30, size=support)
            c = rng.uniform(0.05, 0.95, size=support)
            pref = Preference(b=lambda _: b, c=lambda _: c, M=30.0)
            best = max(
                float(np.sum(mass * conditional_utility(
                    np.asarray(d), x, p_star, pref)))
                for d in itertools.product((1, -1), repeat=support))
            bayes = np.where(p_star >= c, 1, -1)
            attained = float(np.sum(mass * conditional_utility(
                bayes, x, p_star, pref)))
            expected = float(np.sum(mass * 2 * b * np.abs(p_star - c)))
            assert best == pytest.approx(expected, rel=1e-12, abs=1e-12)
            assert attained == pytest.approx(expected, rel=1e-12,
                                             abs=1e-12)

    def test_oracle_utility_is_empirical_utility(self, rng):
        pref = catalog_preference(1)
        test = sample_dgp("1", 300, rng)
        decisions = oracle_decisions("1", pref, test.x)
        assert oracle_utility("1", pref, test) == sequential_mean(
            utility_terms(test, decisions, pref))

    def test_oracle_utility_near_maximum(self, rng):
        pref = catalog_preference(1)
        test = sample_dgp("1", 2 * 10 ** 5, rng)
        terms = utility_terms(test, oracle_decisions("1", pref, test.x),
                              pref)
        se = terms.std(ddof=1) / np.sqrt(test.n)
        quadrature = maximal_expected_utility(
            "1", pref, sample_dgp("1", 10 ** 6, rng).x)
        assert abs(oracle_utility("1", pref, test) - quadrature) < 4 * se

    def test_cubic_class_holds_the_bayes_rule(self, rng):
        pref = catalog_preference(1)
        rule = PredictionRule(polynomial=PolynomialClass(d=1, k=3),
                              coefficients=[0.5, -0.5, 0.0, 0.2])
        x = sample_dgp("1", 5000, rng).x
        assert excess_utility(rule, "1", pref, x) == pytest.approx(
            0.0, abs=1e-12)

    def test_excess_utility_nonnegative(self, rng):
        pref = catalog_preference(1)
        x = sample_dgp("1", 5000, rng).x
        for _ in range(5):
            rule = PredictionRule(polynomial=PolynomialClass(d=1, k=2),
                                  coefficients=rng.normal(size=3))
            assert excess_utility(rule, "1", pref, x) >= 0


class TestRoster:

    def test_tokens(self):
        roster = parse_roster("oracle, ML3,umpr-md@0.5,umpr-bc-notech,"
                              "umpr-smd-cv,aic,bic,lasso,svm,cv")
        assert [est.token for est in roster][:3] == [
            "oracle", "ml3", "umpr-md@0.5"]
        assert roster[2].alpha == 0.5
        assert roster[3].variant == "notech"
        assert roster[4].variant == "cv"

    def test_default_roster(self):
        assert [est.token for est in parse_roster(DEFAULT_ROSTER)] == \
            list(DEFAULT_ROSTER)

    @pytest.mark.parametrize("text", [
        "", "oracle,oracle", "mu", "ml0", "umpr-xx", "umpr-vc@-1",
        "umpr-md-fast", "probit2", "oracle2",
    ])
    def test_rejected(self, text):
        with pytest.raises(ConfigError):
            parse_roster(text)


class TestExperimentConfig:

    def test_incompatible_preference(self):
        with pytest.raises(ConfigError, match="DGP2"):
            quick_config(preference="3")

    def test_validation(self):
        with pytest.raises(ConfigError):
            quick_config(n=1)
        with pytest.raises(ConfigError):
            quick_config(folds=1)
        with pytest.raises(ConfigError):
            quick_config(alpha_grid="")

    def test_degrees(self):
        assert quick_config(K=4).degrees == (1, 2, 3, 4)

    def test_echo_round_trip(self):
        config = quick_config(alpha_grid=(1.0, 0.1), threads=3)
        echo = config.echo()
        assert "threads" not in echo
        again = ExperimentConfig(
            dgp=echo["dgp"], preference=echo["preference"],
            n=int(echo["n"]), out_of_sample=int(echo["out_of_sample"]),
            replications=int(echo["replications"]),
            estimators=echo["estimators"], K=int(echo["hierarchy.K"]),
            alpha=float(echo["alpha"]), alpha_grid=echo["alpha.grid"],
            m=int(echo["m"]), folds=int(echo["cv.folds"]),
            optimizer=OptimizerConfig(
                restarts=int(echo["optimizer.restarts"]),
                iterations=int(echo["optimizer.iterations"]),
                initial_temperature=float(
                    echo["optimizer.initial_temperature"]),
                cooling=float(echo["optimizer.cooling"]),
                step=float(echo["optimizer.step"])),
            lasso_grid=int(echo["lasso.grid"]),
            svm_iterations=int(echo["svm.iterations"]),
            svm_grid=int(echo["svm.grid"]), seed=int(echo["seed"]),
            threads=3)
        assert again == config


class TestExperiment:

    def test_oracle_only(self):
        report = rgeu_experiment(quick_config(estimators="oracle"))
        summary = report.summary("oracle")
        assert summary.rgeu_pct == 100.0
        assert summary.se_pct == 0.0
        assert summary.frequencies == {}
        assert summary.successes == 4

    def test_report_shape(self):
        report = rgeu_experiment(quick_config())
        assert [s.estimator for s in report.estimators] == [
            "oracle", "ml1", "mu1", "umpr-vc"]
        for name in ("ml1", "mu1"):
            assert report.summary(name).frequencies == {1: 100.0, 2: 0.0}
        selected = report.summary("umpr-vc").frequencies
        assert sum(selected.values()) == pytest.approx(100.0)
        with pytest.raises(KeyError):
            report.summary("bic")

    def test_failures_are_counted(self):
        report = rgeu_experiment(quick_config(estimators="oracle,mu3"))
        summary = report.summary("mu3")
        assert summary.failures == 4
        assert summary.failed_replications == (0, 1, 2, 3)
        assert np.isnan(summary.rgeu_pct)

    def test_thread_count_does_not_matter(self):
        serial = format_report(rgeu_experiment(quick_config(threads=1)))
        pooled = format_report(rgeu_experiment(quick_config(threads=3)))
        assert serial == pooled

    def test_roster_does_not_change_streams(self):
        alone = rgeu_experiment(quick_config(estimators="mu2"))
        mixed = rgeu_experiment(quick_config(estimators="oracle,ml2,mu2"))
        assert alone.summary("mu2") == mixed.summary("mu2")

    def test_tsv_round_trip(self):
        report = rgeu_experiment(quick_config())
        echo, table = read_report(format_report(report))
        assert echo["seed"] == "20230601"
        assert echo["estimators"] == "oracle,ml1,mu1,umpr-vc"
        assert list(table.columns) == report_columns((1, 2))
        assert table.loc[0, "rgeu_pct"] == pytest.approx(100.0)
        assert "wall_time" not in format_report(report)


def reproduction(dgp, preference, n, estimators, replications, **kwargs):
    """one cell of the published tables, at the shipped design"""
    return rgeu_experiment(ExperimentConfig(
        dgp=dgp, preference=preference, n=n, out_of_sample=5000,
        replications=replications, estimators=estimators, m=10,
        seed=20230601, threads=int(BaseConfig.THREADS), **kwargs))


@pytest.mark.slow
class TestReproduction:
    """Monte Carlo agreement with the published relative gains"""

    def test_dgp2_pref3_ordering_short_run(self):
        report = reproduction(
            "2", "3", 500, "oracle,ml3,mu3,umpr-smd-notech,aic,svm", 25)
        rgeu = {s.estimator: s.rgeu_pct for s in report.estimators}
        assert rgeu["mu3"] > rgeu["ml3"]
        assert rgeu["umpr-smd-notech"] > rgeu["aic"] > rgeu["svm"]

    def test_dgp1_pref1_cubic_fits(self):
        report = reproduction("1", "1", 1000, "oracle,ml3,mu3", 200)
        assert report.summary("ml3").rgeu_pct == pytest.approx(97.21,
                                                               abs=3)
        assert report.summary("mu3").rgeu_pct == pytest.approx(69.94,
                                                               abs=3)

    def test_dgp2_pref3_against_baselines(self):
        report = reproduction(
            "2", "3", 500,
            "oracle,ml3,mu3,umpr-smd-notech,aic,lasso,svm", 200)
        rgeu = {s.estimator: s.rgeu_pct for s in report.estimators}
        expected = {"mu3": 68.14, "ml3": 60.09, "aic": 60.07,
                    "lasso": 59.75, "svm": 26.86}
        for name, value in expected.items():
            assert rgeu[name] == pytest.approx(value, abs=3), name
        assert rgeu["mu3"] > rgeu["ml3"]
        assert rgeu["umpr-smd-notech"] > rgeu["aic"] > rgeu["svm"]


@pytest.mark.slow
class TestSelectionFrequencies:

    def test_vc_penalty_keeps_the_linear_class(self):
        report = reproduction("2", "4", 1000, "umpr-vc", 200)
        assert report.summary("umpr-vc").frequencies[1] >= 95

    def test_cross_validation_picks_the_cubic_class(self):
        report = reproduction("1", "1", 1000, "cv", 200)
        assert report.summary("cv").frequencies[3] == pytest.approx(
            58, abs=10)


@pytest.mark.slow
class TestTailBound:

    def test_penalized_utility_rarely_overshoots(self):
        n, eps, replications, seed = 200, 0.5, 2000, 20230601
        pref = parse_preference("1")
        hierarchy = HierarchySpec.truncated(1, (1, 2, 3))
        spec = PenaltySpec(kind="vc", alpha=0.05)
        optimizer = OptimizerConfig(restarts=5, iterations=400)
        test = sample_dgp("1", 10 ** 5, child_rng(seed, "test"))

        overshoots = 0
        for j in range(replications):
            rng = child_rng(seed, j)
            data = sample_dgp("1", n, rng)
            result = umpr_select(hierarchy, data, pref, spec,
                                 optimizer=optimizer, rng=rng)
            gap = result.chosen.penalized - empirical_utility(
                result.rule, test, pref)
            overshoots += gap > eps

        zeta = zeta_truncated([cls.vc_dimension() for cls in hierarchy],
                              spec.alpha)
        bound = tail_bound(PenaltyKind.VC, n, eps, pref.M, zeta)
        frequency = overshoots / replications
        se = np.sqrt(frequency * (1 - frequency) / replications)
        assert frequency <= bound + 3 * se
