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

"""Logit maximum likelihood by IRLS and information-criterion selection."""

import math
import typing

import numpy as np
from pydantic import BaseModel
from scipy.special import expit
from umpr.algorithms.selection.base import ClassRecord
from umpr.algorithms.selection.base import SelectionResult
from umpr.algorithms.selection.base import first_argmax
from umpr.common.constant import Criterion
from umpr.common.constant import Link
from umpr.common.exceptions import EstimationError
from umpr.common.logger import logging
from umpr.common.schema.dataset import Dataset
from umpr.sieve.polynomial import HierarchySpec
from umpr.sieve.polynomial import PolynomialClass
from umpr.sieve.polynomial import PredictionRule

__all__ = ("LogitFit", "log_likelihood", "logit_mle", "ic_penalty",
           "ic_choose", "ic_select")

logger = logging.bind(instance="logit")

MAX_ITERATIONS = 100
TOLERANCE = 1e-8
SEPARATION_NORM = 30.0
MAX_HALVINGS = 40


class LogitFit(BaseModel):
    rule: PredictionRule
    log_likelihood: float
    converged: bool
    iterations: int
    separated: bool = False

    class Config:
        allow_mutation = False

    def mean_log_likelihood(self, n: int) -> float:
        return self.log_likelihood / n


def log_likelihood(linear: np.ndarray, y: np.ndarray) -> float:
    """Σ log Λ(y_i η_i), computed without overflow"""
    return float(-np.sum(np.logaddexp(0.0, -y * linear)))


def logit_mle(polynomial: PolynomialClass, data: Dataset,
              max_iterations: int = MAX_ITERATIONS,
              tolerance: float = TOLERANCE) -> LogitFit:
    """
    Newton-Raphson (IRLS) with step halving, from zero coefficients.
    Separation (coefficient sup-norm above 30) stops the iterations and
    the fit is returned flagged.
    """
    if polynomial.link != Link.LOGISTIC:
        raise EstimationError(f"logit fit needs a logistic class, "
                              f"got {polynomial}")
    X = polynomial.design(data.x)  # noqa
    y = data.y.astype(float)
    target = (y + 1) / 2
    beta = np.zeros(polynomial.size)
    current = log_likelihood(X @ beta, y)
    converged = separated = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        p = expit(X @ beta)
        gradient = X.T @ (target - p)
        hessian = X.T @ (X * (p * (1 - p))[:, None])
        step = np.linalg.lstsq(hessian, gradient, rcond=None)[0]
        candidate = beta + step
        value = log_likelihood(X @ candidate, y)
        for _ in range(MAX_HALVINGS):
            if value >= current:
                break
            step = step / 2
            candidate = beta + step
            value = log_likelihood(X @ candidate, y)
        else:
            converged = True
            break
        change = np.max(np.abs(candidate - beta))
        beta, current = candidate, value
        if np.max(np.abs(beta)) > SEPARATION_NORM:
            separated = True
            break
        if change < tolerance:
            converged = True
            break
    if separated:
        logger.warning(f"{polynomial}: separation after {iterations} "
                       f"iterations, |beta|_inf > {SEPARATION_NORM:g}")
    elif not converged:
        logger.warning(f"{polynomial}: IRLS did not converge in "
                       f"{max_iterations} iterations")
    return LogitFit(
        rule=PredictionRule(polynomial=polynomial, coefficients=beta),
        log_likelihood=current, converged=converged and not separated,
        iterations=iterations, separated=separated)


def ic_penalty(n_params: int, n: int, criterion: Criterion) -> float:
    """AIC: B/n; BIC: B·log(n)/(2n)"""
    criterion = Criterion(criterion)
    if criterion == Criterion.AIC:
        return n_params / n
    return n_params * math.log(n) / (2 * n)


def ic_choose(mean_loglik: typing.Sequence[float],
              n_params: typing.Sequence[int], n: int,
              criterion: Criterion) -> int:
    """index maximizing mean log-likelihood minus the criterion penalty"""
    return first_argmax([
        ll - ic_penalty(b, n, criterion)
        for ll, b in zip(mean_loglik, n_params)])


def ic_select(hierarchy: HierarchySpec, data: Dataset,
              criterion: Criterion,
              fits: typing.Sequence[LogitFit] = None) -> SelectionResult:
    criterion = Criterion(criterion)
    if fits is None:
        fits = [logit_mle(cls, data) for cls in hierarchy]
    records = []
    for index, (cls, fit) in enumerate(zip(hierarchy, fits)):
        mean_ll = fit.mean_log_likelihood(data.n)
        penalty = ic_penalty(cls.size, data.n, criterion)
        records.append(ClassRecord(index=index, k=cls.k, utility=mean_ll,
                                   penalty=penalty,
                                   penalized=mean_ll - penalty))
    chosen = first_argmax([rec.penalized for rec in records])
    return SelectionResult(method=criterion.value, chosen_index=chosen,
                           rule=fits[chosen].rule, per_k=records)
