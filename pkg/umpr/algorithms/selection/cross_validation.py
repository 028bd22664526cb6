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

"""T-fold cross-validation of the degree k and of the tuning parameter α."""

import typing

import numpy as np
from umpr.algorithms.optimizer.annealing import as_optimizer
from umpr.algorithms.penalties.base import PenaltySpec
from umpr.common.exceptions import EstimationError
from umpr.common.logger import logging
from umpr.common.schema.dataset import Dataset
from umpr.common.schema.preference import Preference
from umpr.core.utility import empirical_utility
from umpr.core.utility import sequential_mean
from umpr.sieve.polynomial import HierarchySpec

from .base import ClassRecord
from .base import SelectionResult
from .base import first_argmax
from .umpr import fit_hierarchy
from .umpr import mu_fit
from .umpr import penalize_hierarchy
from .umpr import select_penalized

__all__ = ("fold_partition", "cv_select_k", "cv_alpha_scores",
           "cv_select_alpha")

logger = logging.bind(instance="cross_validation")

Folds = typing.Sequence[np.ndarray]


def fold_partition(n: int, folds: int,
                   rng: np.random.Generator) -> typing.List[np.ndarray]:
    """
    Random permutation cut into contiguous blocks; block sizes differ by
    at most one.
    """
    if folds < 2:
        raise EstimationError(f"need at least 2 folds, got {folds}")
    if n < folds:
        raise EstimationError(f"{folds} folds but only {n} observations")
    return np.array_split(rng.permutation(n), folds)


def _check_folds(n: int, partition: Folds) -> typing.List[np.ndarray]:
    partition = [np.asarray(f, dtype=np.int64) for f in partition]
    if len(partition) < 2:
        raise EstimationError("need at least 2 folds")
    for t, fold in enumerate(partition):
        if fold.size == 0:
            raise EstimationError(f"fold {t} holds no observations")
    if not np.array_equal(np.sort(np.concatenate(partition)), np.arange(n)):
        raise EstimationError("folds must partition the observations")
    return partition


def _complement(n: int, fold: np.ndarray) -> np.ndarray:
    mask = np.ones(n, dtype=bool)
    mask[fold] = False
    return np.flatnonzero(mask)


def cv_select_k(hierarchy: HierarchySpec, data: Dataset, pref: Preference,
                folds: int = 10, optimizer=None,
                rng: np.random.Generator = None,
                partition: Folds = None) -> SelectionResult:
    """
    CV(k) = mean over folds of the held-out utility of the rule fit on
    the complement; the winner is refit on all data, smallest k on ties.
    """
    if rng is None:
        rng = np.random.default_rng()
    optimizer = as_optimizer(optimizer)
    if partition is None:
        partition = fold_partition(data.n, folds, rng)
    partition = _check_folds(data.n, partition)

    records = []
    for index, cls in enumerate(hierarchy):
        scores = []
        for fold in partition:
            train = data.subset(_complement(data.n, fold))
            rule, _ = mu_fit(cls, train, pref, optimizer, rng)
            scores.append(empirical_utility(rule, data.subset(fold), pref))
        score = sequential_mean(scores)
        records.append(ClassRecord(index=index, k=cls.k, utility=score,
                                   penalized=score))
    chosen = first_argmax([rec.penalized for rec in records])
    rule, _ = mu_fit(hierarchy[chosen], data, pref, optimizer, rng)
    logger.debug(f"{len(partition)}-fold CV selects k={records[chosen].k}")
    return SelectionResult(method="cv-k", chosen_index=chosen, rule=rule,
                           per_k=records)


def cv_alpha_scores(alpha_grid: typing.Sequence[float],
                    hierarchy: HierarchySpec, data: Dataset,
                    pref: Preference, spec: PenaltySpec, folds: int = 10,
                    M: float = None, optimizer=None,  # noqa
                    rng: np.random.Generator = None,
                    partition: Folds = None) -> typing.Dict[float, float]:
    """
    Mean held-out utility of the UMPR chosen on each fold complement,
    per α. Fits and inner maxima are computed once per fold at the
    complement's size; only the technical term changes with α.
    """
    if not len(alpha_grid):
        raise EstimationError("empty alpha grid")
    if rng is None:
        rng = np.random.default_rng()
    optimizer = as_optimizer(optimizer)
    if partition is None:
        partition = fold_partition(data.n, folds, rng)
    partition = _check_folds(data.n, partition)

    per_alpha = {float(a): [] for a in alpha_grid}
    for fold in partition:
        train = data.subset(_complement(data.n, fold))
        held_out = data.subset(fold)
        fits = fit_hierarchy(hierarchy, train, pref, optimizer, rng)
        penalties = penalize_hierarchy(hierarchy, train, pref, spec, M,
                                       optimizer, rng)
        for alpha in per_alpha:
            result = select_penalized(
                hierarchy, fits, [p.at_alpha(alpha) for p in penalties])
            per_alpha[alpha].append(
                empirical_utility(result.rule, held_out, pref))
    return {a: sequential_mean(s) for a, s in per_alpha.items()}


def cv_select_alpha(alpha_grid: typing.Sequence[float],
                    hierarchy: HierarchySpec, data: Dataset,
                    pref: Preference, spec: PenaltySpec, folds: int = 10,
                    M: float = None, optimizer=None,  # noqa
                    rng: np.random.Generator = None,
                    partition: Folds = None) -> float:
    """cross-validated α; ties go to the largest α"""
    grid = sorted({float(a) for a in alpha_grid}, reverse=True)
    if not grid:
        raise EstimationError("empty alpha grid")
    if len(grid) == 1:
        return grid[0]
    scores = cv_alpha_scores(grid, hierarchy, data, pref, spec, folds, M,
                             optimizer, rng, partition)
    alpha = grid[first_argmax([scores[a] for a in grid])]
    logger.debug(f"{spec.label} CV scores {scores}, alpha={alpha}")
    return alpha
