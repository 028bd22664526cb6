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

"""
Estimators compared by the experiment harness, addressed by roster
tokens such as `mu3`, `umpr-smd-notech` or `lasso`.

All estimators of one replication share a `ReplicationContext`, so the
MU fits, the logit fits and the penalty draws of each kind are computed
once and reused. Every cached quantity consumes its own named stream, so
a token's result does not depend on the rest of the roster.
"""

import re
import typing

import numpy as np
from pydantic import BaseModel
from umpr.algorithms.base import AlgorithmBase
from umpr.algorithms.comparators.lasso import lasso_logit
from umpr.algorithms.comparators.logit import LogitFit
from umpr.algorithms.comparators.logit import ic_select
from umpr.algorithms.comparators.logit import logit_mle
from umpr.algorithms.comparators.svm import l1_svm
from umpr.algorithms.optimizer.annealing import as_optimizer
from umpr.algorithms.penalties.base import PenaltySpec
from umpr.algorithms.penalties.base import PenaltyValue
from umpr.algorithms.selection.cross_validation import cv_select_alpha
from umpr.algorithms.selection.cross_validation import cv_select_k
from umpr.algorithms.selection.umpr import MuFit
from umpr.algorithms.selection.umpr import fit_hierarchy
from umpr.algorithms.selection.umpr import penalize_hierarchy
from umpr.algorithms.selection.umpr import select_penalized
from umpr.common.class_factory import ClassFactory
from umpr.common.class_factory import ClassType
from umpr.common.constant import Criterion
from umpr.common.constant import Link
from umpr.common.constant import PenaltyKind
from umpr.common.exceptions import ConfigError
from umpr.common.exceptions import EstimationError
from umpr.common.schema.dataset import Dataset
from umpr.core.utility import empirical_utility
from umpr.sieve.polynomial import HierarchySpec
from umpr.utils.util import child_rng

from .oracle import oracle_utility

__all__ = ("EstimateOutcome", "ReplicationContext", "EstimatorBase",
           "parse_estimator", "parse_roster", "DEFAULT_ROSTER")

DEFAULT_ROSTER = ("oracle", "ml1", "ml2", "ml3", "mu1", "mu2", "mu3",
                  "umpr-vc", "umpr-md")

_TOKEN = re.compile(r"^(?P<family>[a-z]+)(?P<rest>.*)$")


class EstimateOutcome(BaseModel):
    """test-set utility of a fitted rule and the degree it was fit on"""
    utility: float
    k: typing.Optional[int] = None

    class Config:
        allow_mutation = False


class ReplicationContext:
    """
    Training and test samples of replication `index` plus the fits
    shared by every estimator of that replication.

    `config` is an `ExperimentConfig`.
    """

    def __init__(self, config, index: int, seed: int, train: Dataset,
                 test: Dataset):
        self.config = config
        self.index = index
        self.seed = seed
        self.train = train
        self.test = test
        self.pref = config.pref
        self.optimizer = as_optimizer(config.optimizer)
        self.hierarchy = HierarchySpec.truncated(
            train.d, config.degrees, Link.IDENTITY)
        self.logit_hierarchy = HierarchySpec.truncated(
            train.d, config.degrees, Link.LOGISTIC)
        self._mu_fits = None
        self._logit_fits = None
        self._penalties = {}
        self._oracle = None

    def stream(self, *keys) -> np.random.Generator:
        return child_rng(self.seed, self.index, *keys)

    @property
    def mu_fits(self) -> typing.List[MuFit]:
        if self._mu_fits is None:
            self._mu_fits = fit_hierarchy(
                self.hierarchy, self.train, self.pref, self.optimizer,
                self.stream("mu"))
        return self._mu_fits

    @property
    def logit_fits(self) -> typing.List[LogitFit]:
        if self._logit_fits is None:
            self._logit_fits = [logit_mle(cls, self.train)
                                for cls in self.logit_hierarchy]
        return self._logit_fits

    def penalty_spec(self, kind: PenaltyKind) -> PenaltySpec:
        return PenaltySpec(kind=kind, alpha=self.config.alpha,
                           m=self.config.m, include_technical_term=True)

    def penalties(self, kind: PenaltyKind) -> typing.List[PenaltyValue]:
        """per-class penalties at the configured α, technical term on"""
        if kind not in self._penalties:
            self._penalties[kind] = penalize_hierarchy(
                self.hierarchy, self.train, self.pref,
                self.penalty_spec(kind), optimizer=self.optimizer,
                rng=self.stream("penalty", kind.value))
        return self._penalties[kind]

    @property
    def oracle_utility(self) -> float:
        if self._oracle is None:
            self._oracle = oracle_utility(self.config.dgp, self.pref,
                                          self.test)
        return self._oracle

    def degree_index(self, k: int) -> int:
        try:
            return list(self.config.degrees).index(k)
        except ValueError:
            raise EstimationError(
                f"degree {k} is not in the hierarchy {self.config.degrees}")

    def test_utility(self, rule) -> float:
        return empirical_utility(rule, self.test, self.pref)


class EstimatorBase(AlgorithmBase):  # noqa
    """builds one rule per replication and scores it on the test set"""
    family = ""

    def __init__(self, token: str, logger=None):
        super(EstimatorBase, self).__init__(logger=logger)
        self.token = token

    @classmethod
    def from_token(cls, token: str, rest: str) -> "EstimatorBase":
        if rest:
            raise ConfigError(f"unknown estimator {token!r}",
                              key="estimators")
        return cls(token)

    def run(self, ctx: ReplicationContext) -> EstimateOutcome:
        raise NotImplementedError()


@ClassFactory.register(ClassType.ESTIMATOR, alias="oracle")
class OracleEstimator(EstimatorBase):
    family = "oracle"

    def run(self, ctx):
        return EstimateOutcome(utility=ctx.oracle_utility)


class _FixedDegree(EstimatorBase):  # noqa

    def __init__(self, token: str, k: int, logger=None):
        super(_FixedDegree, self).__init__(token, logger=logger)
        self.k = k

    @classmethod
    def from_token(cls, token, rest):
        if not rest.isdigit() or int(rest) < 1:
            raise ConfigError(
                f"estimator {token!r} needs a degree, e.g. {cls.family}3",
                key="estimators")
        return cls(token, int(rest))


@ClassFactory.register(ClassType.ESTIMATOR, alias="ml")
class MaximumLikelihood(_FixedDegree):
    """logit MLE over Λ(P_k)"""
    family = "ml"

    def run(self, ctx):
        fit = ctx.logit_fits[ctx.degree_index(self.k)]
        return EstimateOutcome(utility=ctx.test_utility(fit.rule), k=self.k)


@ClassFactory.register(ClassType.ESTIMATOR, alias="mu")
class MaximumUtility(_FixedDegree):
    """MU fit over P_k"""
    family = "mu"

    def run(self, ctx):
        rule, _ = ctx.mu_fits[ctx.degree_index(self.k)]
        return EstimateOutcome(utility=ctx.test_utility(rule), k=self.k)


@ClassFactory.register(ClassType.ESTIMATOR, alias="umpr")
class PenalizedSelection(EstimatorBase):
    """
    `umpr-<kind>` at the configured α, `umpr-<kind>@<alpha>` at a fixed
    α, `umpr-<kind>-notech` without the technical term and
    `umpr-<kind>-cv` with α cross-validated over the configured grid.
    """
    family = "umpr"
    _REST = re.compile(r"^-(?P<kind>[a-z]+)"
                       r"(?:@(?P<alpha>[0-9.eE+-]+)"
                       r"|-(?P<variant>notech|cv))?$")

    def __init__(self, token: str, kind: PenaltyKind,
                 alpha: float = None, variant: str = "", logger=None):
        super(PenalizedSelection, self).__init__(token, logger=logger)
        self.kind = kind
        self.alpha = alpha
        self.variant = variant

    @classmethod
    def from_token(cls, token, rest):
        match = cls._REST.match(rest)
        if match is None:
            raise ConfigError(f"unknown estimator {token!r}",
                              key="estimators")
        try:
            kind = PenaltyKind(match.group("kind"))
        except ValueError:
            raise ConfigError(
                f"unknown penalty {match.group('kind')!r} in {token!r}",
                key="estimators")
        alpha = match.group("alpha")
        if alpha is not None:
            try:
                alpha = float(alpha)
            except ValueError:
                raise ConfigError(f"bad alpha in {token!r}",
                                  key="estimators")
            if not np.isfinite(alpha) or alpha < 0:
                raise ConfigError(f"alpha must be >= 0 in {token!r}",
                                  key="estimators")
        return cls(token, kind, alpha, match.group("variant") or "")

    def penalties(self, ctx) -> typing.Tuple[typing.List[PenaltyValue],
                                             float]:
        values = ctx.penalties(self.kind)
        if self.variant == "notech":
            alpha = ctx.config.alpha
            return [p.at_alpha(alpha, False) for p in values], alpha
        if self.variant == "cv":
            alpha = cv_select_alpha(
                ctx.config.alpha_grid, ctx.hierarchy, ctx.train, ctx.pref,
                ctx.penalty_spec(self.kind), folds=ctx.config.folds,
                optimizer=ctx.optimizer,
                rng=ctx.stream("cv-alpha", self.kind.value))
            return [p.at_alpha(alpha) for p in values], alpha
        if self.alpha is not None:
            return [p.at_alpha(self.alpha) for p in values], self.alpha
        return values, ctx.config.alpha

    def run(self, ctx):
        values, alpha = self.penalties(ctx)
        result = select_penalized(ctx.hierarchy, ctx.mu_fits, values,
                                  method=self.token, alpha=alpha)
        return EstimateOutcome(utility=ctx.test_utility(result.rule),
                               k=result.chosen_k)


class _InformationCriterion(EstimatorBase):  # noqa
    criterion: Criterion = None

    def run(self, ctx):
        result = ic_select(ctx.logit_hierarchy, ctx.train, self.criterion,
                           fits=ctx.logit_fits)
        return EstimateOutcome(utility=ctx.test_utility(result.rule),
                               k=result.chosen_k)


@ClassFactory.register(ClassType.ESTIMATOR, alias="aic")
class AkaikeSelection(_InformationCriterion):
    family = "aic"
    criterion = Criterion.AIC


@ClassFactory.register(ClassType.ESTIMATOR, alias="bic")
class SchwarzSelection(_InformationCriterion):
    family = "bic"
    criterion = Criterion.BIC


@ClassFactory.register(ClassType.ESTIMATOR, alias="lasso")
class LassoEstimator(EstimatorBase):
    """cross-validated ℓ1 logit over Λ(P_K)"""
    family = "lasso"

    def run(self, ctx):
        fit = lasso_logit(ctx.train, degree=max(ctx.config.degrees),
                          folds=ctx.config.folds, rng=ctx.stream("lasso"),
                          grid_size=ctx.config.lasso_grid)
        return EstimateOutcome(utility=ctx.test_utility(fit.rule))


@ClassFactory.register(ClassType.ESTIMATOR, alias="svm")
class SvmEstimator(EstimatorBase):
    """cross-validated ℓ1 hinge loss over P_K"""
    family = "svm"

    def run(self, ctx):
        fit = l1_svm(ctx.train, degree=max(ctx.config.degrees),
                     folds=ctx.config.folds, rng=ctx.stream("svm"),
                     iterations=ctx.config.svm_iterations,
                     grid_size=ctx.config.svm_grid)
        return EstimateOutcome(utility=ctx.test_utility(fit.rule))


@ClassFactory.register(ClassType.ESTIMATOR, alias="cv")
class CrossValidatedDegree(EstimatorBase):
    """MU fit on the degree with the best T-fold held-out utility"""
    family = "cv"

    def run(self, ctx):
        result = cv_select_k(ctx.hierarchy, ctx.train, ctx.pref,
                             folds=ctx.config.folds, optimizer=ctx.optimizer,
                             rng=ctx.stream("cv"))
        return EstimateOutcome(utility=ctx.test_utility(result.rule),
                               k=result.chosen_k)


def parse_estimator(token: str) -> EstimatorBase:
    token = str(token).strip().lower()
    match = _TOKEN.match(token)
    if match is None or not ClassFactory.is_exists(
            ClassType.ESTIMATOR, match.group("family")):
        raise ConfigError(f"unknown estimator {token!r}", key="estimators")
    _cls = ClassFactory.get_cls(ClassType.ESTIMATOR, match.group("family"))
    return _cls.from_token(token, match.group("rest"))


def parse_roster(text: typing.Union[str, typing.Sequence[str]]
                 ) -> typing.List[EstimatorBase]:
    """comma separated tokens; duplicates are rejected"""
    tokens = text.split(",") if isinstance(text, str) else list(text)
    tokens = [str(t).strip().lower() for t in tokens if str(t).strip()]
    if not tokens:
        raise ConfigError("empty estimator roster", key="estimators")
    seen = set()
    for token in tokens:
        if token in seen:
            raise ConfigError(f"estimator {token!r} listed twice",
                              key="estimators")
        seen.add(token)
    return [parse_estimator(token) for token in tokens]
