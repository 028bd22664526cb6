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
ℓ1-penalized hinge loss over P_k of standardized covariates.

The fitted polynomial is pulled back to raw covariates and wrapped in
the logistic link, so sign(Λ(f) - 1/2) = sign(f) and the result is an
ordinary prediction rule.
"""

import typing

import numpy as np
from pydantic import BaseModel
from umpr.algorithms.selection.cross_validation import fold_partition
from umpr.common.constant import Link
from umpr.common.exceptions import EstimationError
from umpr.common.schema.dataset import Dataset
from umpr.sieve.polynomial import PolynomialClass
from umpr.sieve.polynomial import PredictionRule

__all__ = ("SvmFit", "hinge_loss", "svm_lambda_grid", "subgradient_path",
           "l1_svm")

ITERATIONS = 50000
STEP = 0.5
GRID_SIZE = 10
GRID_RATIO = 1e-3


class SvmFit(BaseModel):
    rule: PredictionRule
    lam: float
    center: typing.Tuple[float, ...]
    scale: typing.Tuple[float, ...]
    cv_scores: typing.Dict[float, float] = {}

    class Config:
        allow_mutation = False


def hinge_loss(design: np.ndarray, y: np.ndarray,
               coefficients: np.ndarray) -> np.ndarray:
    """mean hinge loss, one value per coefficient column"""
    margin = y[:, None] * (design @ np.atleast_2d(coefficients.T).T)
    return np.maximum(1 - margin, 0).mean(axis=0)


def svm_lambda_grid(design: np.ndarray, y: np.ndarray,
                    size: int = GRID_SIZE,
                    ratio: float = GRID_RATIO) -> np.ndarray:
    """decreasing grid from the subgradient norm at zero"""
    top = float(np.max(np.abs(design[:, 1:].T @ y)) / len(y))
    if top <= 0:
        return np.zeros(1)
    return np.geomspace(top, ratio * top, size)


def subgradient_path(design: np.ndarray, y: np.ndarray,
                     lambdas: typing.Sequence[float],
                     iterations: int = ITERATIONS,
                     step: float = STEP) -> np.ndarray:
    """
    Averaged subgradient descent with steps step/sqrt(t), all λ at once;
    the intercept is not penalized.

    :return: averaged coefficients, shape (B, len(lambdas))
    """
    lambdas = np.asarray(lambdas, dtype=float)[None, :]
    n, size = design.shape
    beta = np.zeros((size, lambdas.shape[1]))
    average = np.zeros_like(beta)
    for t in range(1, iterations + 1):
        margin = y[:, None] * (design @ beta)
        active = (margin < 1) * y[:, None]
        gradient = -design.T @ active / n
        gradient[1:] += lambdas * np.sign(beta[1:])
        beta -= step / np.sqrt(t) * gradient
        average += (beta - average) / t
    return average


def _standardize(x: np.ndarray) -> typing.Tuple[np.ndarray, np.ndarray]:
    center = x.mean(axis=0)
    scale = x.std(axis=0)
    return center, np.where(scale > 0, scale, 1.0)


def l1_svm(data: Dataset, degree: int = 3,
           lambdas: typing.Sequence[float] = None, folds: int = 10,
           rng: np.random.Generator = None, iterations: int = ITERATIONS,
           grid_size: int = GRID_SIZE) -> SvmFit:
    """
    λ by T-fold cross-validation on held-out hinge loss (largest λ on
    ties), then a full-data refit. Standardization uses training data
    only.
    """
    if rng is None:
        rng = np.random.default_rng()
    if iterations < 1:
        raise EstimationError(f"iterations must be >= 1, got {iterations}")
    standard = PolynomialClass(d=data.d, k=degree, link=Link.IDENTITY)
    y = data.y.astype(float)
    center, scale = _standardize(data.x)
    design = standard.design((data.x - center) / scale)
    if lambdas is None:
        lambdas = svm_lambda_grid(design, y, grid_size)
    lambdas = np.sort(np.asarray(lambdas, dtype=float))[::-1]
    if not len(lambdas):
        raise EstimationError("empty lambda grid")

    losses = np.zeros(len(lambdas))
    for fold in fold_partition(data.n, folds, rng):
        mask = np.ones(data.n, dtype=bool)
        mask[fold] = False
        c_t, s_t = _standardize(data.x[mask])
        train = standard.design((data.x[mask] - c_t) / s_t)
        coefs = subgradient_path(train, y[mask], lambdas, iterations)
        held_out = standard.design((data.x[fold] - c_t) / s_t)
        losses += hinge_loss(held_out, y[fold], coefs)
    losses /= folds
    chosen = int(np.argmin(losses))

    beta = subgradient_path(design, y, lambdas[chosen:chosen + 1],
                            iterations)[:, 0]
    polynomial = PolynomialClass(d=data.d, k=degree, link=Link.LOGISTIC)
    rule = PredictionRule(polynomial=polynomial,
                          coefficients=polynomial.pullback(beta, center,
                                                           scale))
    return SvmFit(rule=rule, lam=float(lambdas[chosen]),
                  center=tuple(center), scale=tuple(scale),
                  cv_scores=dict(zip(map(float, lambdas),
                                     map(float, losses))))
