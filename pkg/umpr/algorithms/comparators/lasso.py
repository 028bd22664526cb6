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

"""ℓ1-penalized logit over Λ(P_k), λ chosen by cross-validation."""

import typing

import numpy as np
from pydantic import BaseModel
from scipy.special import expit
from umpr.algorithms.selection.cross_validation import fold_partition
from umpr.common.constant import Link
from umpr.common.exceptions import EstimationError
from umpr.common.logger import logging
from umpr.common.schema.dataset import Dataset
from umpr.sieve.polynomial import PolynomialClass
from umpr.sieve.polynomial import PredictionRule

__all__ = ("soft_threshold", "LassoFit", "lambda_max", "lambda_grid",
           "lasso_path", "lasso_fit", "lasso_logit")

logger = logging.bind(instance="lasso")

GRID_SIZE = 50
GRID_RATIO = 1e-4
MAX_ITERATIONS = 2000
TOLERANCE = 1e-7


class LassoFit(BaseModel):
    rule: PredictionRule
    lam: float
    converged: bool
    cv_scores: typing.Dict[float, float] = {}

    class Config:
        allow_mutation = False


def soft_threshold(x, t):
    """prox of t·|.|: sign(x)·max(|x| - t, 0)"""
    return np.sign(x) * np.maximum(np.abs(x) - t, 0)


class _Standardized:
    """monomial design with non-intercept columns centered and scaled"""

    def __init__(self, design: np.ndarray):
        self.mean = design[:, 1:].mean(axis=0)
        sd = design[:, 1:].std(axis=0)
        self.sd = np.where(sd > 0, sd, 1.0)
        self.matrix = self.apply(design)

    def apply(self, design: np.ndarray) -> np.ndarray:
        out = design.copy()
        out[:, 1:] = (design[:, 1:] - self.mean) / self.sd
        return out

    def to_raw(self, beta: np.ndarray) -> np.ndarray:
        raw = beta.copy()
        raw[1:] = beta[1:] / self.sd
        raw[0] = beta[0] - np.sum(beta[1:] * self.mean / self.sd)
        return raw


def _nll(Z: np.ndarray, target: np.ndarray, beta: np.ndarray) -> float:  # noqa
    """mean negative log-likelihood, target in {0, 1}"""
    eta = Z @ beta
    return float(np.mean(np.logaddexp(0.0, eta) - target * eta))


def lambda_max(Z: np.ndarray, target: np.ndarray) -> float:  # noqa
    """smallest λ at which every penalized coefficient is zero"""
    residual = target - target.mean()
    return float(np.max(np.abs(Z[:, 1:].T @ residual)) / len(target))


def lambda_grid(lam_max: float, size: int = GRID_SIZE,
                ratio: float = GRID_RATIO) -> np.ndarray:
    """decreasing log-spaced grid from lam_max down to ratio·lam_max"""
    if lam_max <= 0:
        return np.zeros(1)
    return np.geomspace(lam_max, ratio * lam_max, size)


def _fista(Z, target, lam, beta, step, max_iterations,  # noqa
           tolerance) -> typing.Tuple[np.ndarray, bool]:
    n = len(target)
    momentum, previous = beta.copy(), beta.copy()
    t = 1.0
    for _ in range(max_iterations):
        gradient = Z.T @ (expit(Z @ momentum) - target) / n
        nxt = momentum - step * gradient
        nxt[1:] = soft_threshold(nxt[1:], step * lam)
        t_next = (1 + np.sqrt(1 + 4 * t * t)) / 2
        momentum = nxt + (t - 1) / t_next * (nxt - previous)
        change = np.max(np.abs(nxt - previous))
        previous, t = nxt, t_next
        if change < tolerance:
            return previous, True
    return previous, False


def lasso_path(Z: np.ndarray, target: np.ndarray,  # noqa
               lambdas: typing.Sequence[float],
               max_iterations: int = MAX_ITERATIONS,
               tolerance: float = TOLERANCE
               ) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    Warm-started proximal gradient fits along a λ path on a standardized
    design.

    :return: coefficients (len(lambdas), B) and convergence flags
    """
    step = 4.0 * len(target) / max(np.linalg.norm(Z, 2) ** 2, 1e-12)
    beta = np.zeros(Z.shape[1])
    p = np.clip(target.mean(), 1e-12, 1 - 1e-12)
    beta[0] = np.log(p / (1 - p))
    coefs, flags = [], []
    for lam in lambdas:
        beta, ok = _fista(Z, target, lam, beta, step, max_iterations,
                          tolerance)
        coefs.append(beta.copy())
        flags.append(ok)
    return np.asarray(coefs), np.asarray(flags)


def lasso_fit(polynomial: PolynomialClass, data: Dataset, lam: float,
              max_iterations: int = MAX_ITERATIONS,
              tolerance: float = TOLERANCE) -> LassoFit:
    """single-λ fit; the rule's coefficients are in raw monomials"""
    design = _Standardized(polynomial.design(data.x))
    target = (data.y + 1) / 2.0
    coefs, flags = lasso_path(design.matrix, target, [lam],
                              max_iterations, tolerance)
    return LassoFit(
        rule=PredictionRule(polynomial=polynomial,
                            coefficients=design.to_raw(coefs[0])),
        lam=float(lam), converged=bool(flags[0]))


def lasso_logit(data: Dataset, degree: int = 3,
                lambdas: typing.Sequence[float] = None, folds: int = 10,
                rng: np.random.Generator = None,
                grid_size: int = GRID_SIZE,
                max_iterations: int = MAX_ITERATIONS) -> LassoFit:
    """
    λ by T-fold cross-validation on held-out mean negative
    log-likelihood (largest λ on ties), then a full-data refit.
    """
    if rng is None:
        rng = np.random.default_rng()
    polynomial = PolynomialClass(d=data.d, k=degree, link=Link.LOGISTIC)
    raw = polynomial.design(data.x)
    full = _Standardized(raw)
    target = (data.y + 1) / 2.0
    if lambdas is None:
        lambdas = lambda_grid(lambda_max(full.matrix, target), grid_size)
    lambdas = np.sort(np.asarray(lambdas, dtype=float))[::-1]
    if not len(lambdas):
        raise EstimationError("empty lambda grid")

    losses = np.zeros(len(lambdas))
    for fold in fold_partition(data.n, folds, rng):
        mask = np.ones(data.n, dtype=bool)
        mask[fold] = False
        train = _Standardized(raw[mask])
        coefs, _ = lasso_path(train.matrix, target[mask], lambdas,
                              max_iterations)
        held_out = train.apply(raw[fold])
        losses += [_nll(held_out, target[fold], beta) for beta in coefs]
    losses /= folds
    chosen = int(np.argmin(losses))

    fit = lasso_fit(polynomial, data, lambdas[chosen], max_iterations)
    if not fit.converged:
        logger.warning(f"lasso refit at lambda={lambdas[chosen]:.3g} "
                       f"stopped before tolerance")
    return LassoFit(rule=fit.rule, lam=fit.lam, converged=fit.converged,
                    cv_scores=dict(zip(map(float, lambdas),
                                       map(float, losses))))
