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

"""Maximum utility fits and penalized selection across the sieve."""

import typing

import numpy as np
from umpr.algorithms.optimizer.annealing import as_optimizer
from umpr.algorithms.optimizer.base import WeightedObjective
from umpr.algorithms.penalties.base import PenaltySpec
from umpr.algorithms.penalties.base import PenaltyValue
from umpr.algorithms.penalties.factory import get_penalty
from umpr.common.logger import logging
from umpr.common.schema.dataset import Dataset
from umpr.common.schema.preference import Preference
from umpr.sieve.polynomial import HierarchySpec
from umpr.sieve.polynomial import PolynomialClass
from umpr.sieve.polynomial import PredictionRule

from .base import ClassRecord
from .base import SelectionResult
from .base import first_argmax

__all__ = ("MuFit", "mu_fit", "fit_hierarchy", "penalize_hierarchy",
           "select_penalized", "umpr_select")

logger = logging.bind(instance="selection")

MuFit = typing.Tuple[PredictionRule, float]


def mu_fit(polynomial: PolynomialClass, data: Dataset, pref: Preference,
           optimizer=None, rng: np.random.Generator = None) -> MuFit:
    """
    Maximum utility estimator over one class.

    :return: the fitted rule and its empirical utility S_n
    """
    if rng is None:
        rng = np.random.default_rng()
    objective = WeightedObjective(data, pref, polynomial)
    return as_optimizer(optimizer).maximize(objective, rng)


def fit_hierarchy(hierarchy: HierarchySpec, data: Dataset, pref: Preference,
                  optimizer=None,
                  rng: np.random.Generator = None) -> typing.List[MuFit]:
    optimizer = as_optimizer(optimizer)
    return [mu_fit(cls, data, pref, optimizer, rng) for cls in hierarchy]


def penalize_hierarchy(hierarchy: HierarchySpec, data: Dataset,
                       pref: Preference, spec: PenaltySpec,
                       M: float = None,  # noqa
                       optimizer=None, rng: np.random.Generator = None
                       ) -> typing.List[PenaltyValue]:
    penalty = get_penalty(spec, optimizer=as_optimizer(optimizer))
    return [penalty.evaluate(cls, data, pref, M=M, rng=rng)
            for cls in hierarchy]


def select_penalized(hierarchy: HierarchySpec, fits: typing.Sequence[MuFit],
                     penalties: typing.Sequence[PenaltyValue],
                     method: str = "umpr",
                     alpha: float = None) -> SelectionResult:
    """argmax of S_n(f_k) - C_n(k), smallest k on ties"""
    records = []
    for index, (cls, (_, utility), pen) in enumerate(
            zip(hierarchy, fits, penalties)):
        records.append(ClassRecord(
            index=index, k=cls.k, utility=utility, penalty=pen.value,
            penalized=utility - pen.value, detail=pen))
    chosen = first_argmax([rec.penalized for rec in records])
    return SelectionResult(method=method, chosen_index=chosen,
                           rule=fits[chosen][0], per_k=records, alpha=alpha)


def umpr_select(hierarchy: HierarchySpec, data: Dataset, pref: Preference,
                spec: PenaltySpec, M: float = None, optimizer=None,  # noqa
                rng: np.random.Generator = None,
                fits: typing.Sequence[MuFit] = None) -> SelectionResult:
    """
    Fit every class, then penalize it, consuming the stream class by
    class (fit before penalty). Precomputed `fits` skip the fitting.
    """
    if rng is None:
        rng = np.random.default_rng()
    optimizer = as_optimizer(optimizer)
    penalty = get_penalty(spec, optimizer=optimizer)
    fitted, penalties = [], []
    for index, cls in enumerate(hierarchy):
        fitted.append(fits[index] if fits is not None
                      else mu_fit(cls, data, pref, optimizer, rng))
        penalties.append(penalty.evaluate(cls, data, pref, M=M, rng=rng))
    result = select_penalized(hierarchy, fitted, penalties,
                              method=f"umpr-{spec.kind.value}",
                              alpha=spec.alpha)
    logger.debug(f"{spec.label} penalty selects k={result.chosen_k}")
    return result
