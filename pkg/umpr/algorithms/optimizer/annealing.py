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

import typing

import numpy as np
from scipy.special import logit
from umpr.common.class_factory import ClassFactory
from umpr.common.class_factory import ClassType
from umpr.common.constant import Link
from umpr.sieve.polynomial import PredictionRule

from .base import OptimizerBase
from .base import OptimizerConfig
from .base import WeightedObjective
from .oracle import ORACLE_MAX_N
from .oracle import oracle_decisions

__all__ = ("SimulatedAnnealing", "maximize_weighted_utility",
           "as_optimizer")

_MIN_TEMPERATURE = np.finfo(float).tiny
# singular values below this fraction of the largest are dropped
_RANK_TOLERANCE = 1e-12
_CUTOFF_CLIP = 1e-6


@ClassFactory.register(ClassType.OPTIMIZER, alias="annealing")
class SimulatedAnnealing(OptimizerBase):
    """
    Multi-restart simulated annealing over polynomial coefficients.

    The search runs in a whitened basis of the design matrix, where a unit
    step moves every fitted score by a comparable amount whatever the
    scale of the monomials. All restarts advance together: one proposal
    matrix of shape (restarts, rank) per iteration, Gaussian steps,
    Metropolis acceptance and geometric cooling.

    Besides `restarts` random starts, one start regresses the threshold
    shifted towards the favourable decisions, and for one covariate on
    small samples one start realizes the exact maximizing decisions. The
    best state ever visited is returned, the lowest row winning ties.
    """

    def maximize(
            self, objective: WeightedObjective, rng: np.random.Generator
    ) -> typing.Tuple[PredictionRule, float]:
        cfg = self.config
        basis = _whitening(objective.design)
        seeds = self._starts(objective)
        seed_values = objective.batch_values(seeds)

        # seeds lead, in whitened coordinates
        lead = seeds @ np.linalg.pinv(basis).T
        shape = (cfg.restarts, basis.shape[1])
        state = np.vstack([lead, rng.standard_normal(shape)])
        current = objective.batch_values(state @ basis.T)
        best_state = state.copy()
        best = current.copy()
        temperature = cfg.initial_temperature
        rows = state.shape[0]

        for _ in range(cfg.iterations):
            proposal = state + cfg.step * rng.standard_normal(state.shape)
            value = objective.batch_values(proposal @ basis.T)
            delta = value - current
            # improvements and ties always pass
            accept = rng.random(rows) < np.exp(
                np.minimum(delta, 0.0) / temperature)
            state[accept] = proposal[accept]
            current[accept] = value[accept]
            improved = current > best
            best_state[improved] = state[improved]
            best[improved] = current[improved]
            temperature = max(temperature * cfg.cooling, _MIN_TEMPERATURE)

        winner = int(np.argmax(best))
        coefficients = best_state[winner] @ basis.T
        start = int(np.argmax(seed_values))
        # an exact seed may lose a few ulps in the whitened round trip
        if seed_values[start] >= best[winner]:
            coefficients, winner = seeds[start], start
        value = objective.value(coefficients)
        self.logger.debug(
            f"{objective.polynomial}: best {value:.6g} from row {winner}"
            f" of {rows} after {cfg.iterations} iterations")
        return objective.rule(coefficients), value

    @staticmethod
    def _starts(objective: WeightedObjective) -> np.ndarray:
        design = objective.design
        threshold = _threshold_scale(objective)
        shifted = threshold + 0.5 * np.sign(objective.terms)
        starts = [np.linalg.lstsq(design, shifted, rcond=None)[0]]
        if objective.data.d == 1 and objective.n <= ORACLE_MAX_N:
            starts.insert(0, _exact_start(objective, threshold))
        return np.vstack(starts)


def _threshold_scale(objective: WeightedObjective) -> np.ndarray:
    """the cutoff on the scale of the linear predictor"""
    if objective.polynomial.link == Link.LOGISTIC:
        return logit(np.clip(objective.cutoff, _CUTOFF_CLIP,
                             1 - _CUTOFF_CLIP))
    return np.asarray(objective.cutoff, dtype=float)


def _whitening(design: np.ndarray) -> np.ndarray:
    """
    Map T of shape (basis size, rank) with design @ T = sqrt(n) U, U having
    orthonormal columns.
    """
    _, s, vt = np.linalg.svd(design, full_matrices=False)
    rank = max(int(np.sum(s > s[0] * _RANK_TOLERANCE)), 1)
    return vt[:rank].T * (np.sqrt(design.shape[0]) / s[:rank])


def _exact_start(objective: WeightedObjective,
                 threshold: np.ndarray) -> np.ndarray:
    """
    Coefficients whose decisions are the exact maximizing ones.

    The maximizing labels change sign at most k times along sorted x. A
    polynomial h with a root between each pair of groups where the label
    flips carries that sign pattern; added with a large enough multiple
    to the projection of the threshold on the class, its sign relative to
    the threshold follows h at every observation.
    """
    data, design = objective.data, objective.design
    labels = oracle_decisions(data, objective.polynomial.k,
                              objective.weights, objective.pref)
    x = data.x[:, 0]
    order = np.argsort(x, kind="stable")
    xs, ls = x[order], labels[order]
    flips = np.flatnonzero((ls[1:] != ls[:-1]) & (xs[1:] != xs[:-1]))
    roots = (xs[flips] + xs[flips + 1]) / 2
    h = np.prod(x[:, None] - roots[None, :], axis=1)
    h *= ls[0] * (-1.0) ** len(roots)

    fitted = design @ np.linalg.lstsq(design, threshold, rcond=None)[0]
    residual = threshold - fitted
    scale = np.abs(h)
    lam = 2 * np.max(np.abs(residual) / scale) + 1 / np.max(scale)
    return np.linalg.lstsq(design, fitted + lam * h, rcond=None)[0]


def maximize_weighted_utility(
        objective: WeightedObjective,
        config: OptimizerConfig = None,
        rng: np.random.Generator = None,
) -> typing.Tuple[PredictionRule, float]:
    """
    Maximize (1/n) Σ w_i s_i over the objective's polynomial class.

    :return: best rule visited and its objective value
    """
    if rng is None:
        rng = np.random.default_rng()
    return as_optimizer(config).maximize(objective, rng)


def as_optimizer(optimizer=None, logger=None) -> OptimizerBase:
    """accept an optimizer instance, an `OptimizerConfig` or None"""
    if isinstance(optimizer, OptimizerBase):
        return optimizer
    return SimulatedAnnealing(config=optimizer, logger=logger)
