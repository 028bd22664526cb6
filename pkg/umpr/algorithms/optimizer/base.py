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
from pydantic import BaseModel
from pydantic import validator
from umpr.algorithms.base import AlgorithmBase
from umpr.common.constant import MAX_ABS_SCORE
from umpr.common.exceptions import DimensionMismatch
from umpr.common.exceptions import EstimationError
from umpr.common.schema.dataset import Dataset
from umpr.common.schema.preference import Preference
from umpr.core.utility import sequential_mean
from umpr.core.utility import utility_coefficients
from umpr.sieve.polynomial import PolynomialClass
from umpr.sieve.polynomial import PredictionRule

__all__ = ("OptimizerConfig", "WeightedObjective", "OptimizerBase")


class OptimizerConfig(BaseModel):
    restarts: int = 20
    iterations: int = 3000
    initial_temperature: float = 1.0
    cooling: float = 0.995
    step: float = 0.5

    class Config:
        allow_mutation = False

    @validator("restarts")
    def _restarts(cls, v):
        if v < 1:
            raise EstimationError(f"restarts must be >= 1, got {v}")
        return v

    @validator("iterations")
    def _iterations(cls, v):
        if v < 0:
            raise EstimationError(f"iterations must be >= 0, got {v}")
        return v

    @validator("cooling")
    def _cooling(cls, v):
        if not 0 < v < 1:
            raise EstimationError(
                f"cooling factor must lie in (0, 1), got {v}")
        return v

    @validator("initial_temperature", "step")
    def _positive(cls, v, field):
        if not v > 0:
            raise EstimationError(f"{field.name} must be positive, got {v}")
        return v


class WeightedObjective:
    """
    (1/n) Σ_i w_i s(Y_i, X_i, f) over f in a polynomial class.

    Unit weights give S_n(f); signed or bootstrap weights give the inner
    maxima of the data-dependent penalties.
    """

    def __init__(self, data: Dataset, pref: Preference,
                 polynomial: PolynomialClass,
                 weights: typing.Optional[np.ndarray] = None):
        if polynomial.d != data.d:
            raise DimensionMismatch(polynomial.d, data.d)
        if weights is None:
            weights = np.ones(data.n)
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (data.n,):
            raise EstimationError(
                f"expected {data.n} weights, got shape {weights.shape}")
        if not np.all(np.isfinite(weights)):
            raise EstimationError("non-finite objective weight")
        self.data = data
        self.pref = pref
        self.polynomial = polynomial
        self.weights = weights
        self.n = data.n
        _, self.cutoff = pref.evaluate(data.x)
        self.terms = weights * utility_coefficients(data.y, data.x, pref)
        self.design = polynomial.design(data.x)

    def decisions(self, coefficients: np.ndarray) -> np.ndarray:
        """
        Decisions for one coefficient vector (B,) or a batch (R, B);
        returns (n,) or (n, R).
        """
        linear = self.design @ np.asarray(coefficients).T
        f = np.clip(self.polynomial.transform(linear),
                    -MAX_ABS_SCORE, MAX_ABS_SCORE)
        cutoff = self.cutoff if f.ndim == 1 else self.cutoff[:, None]
        return np.where(f - cutoff >= 0, 1.0, -1.0)

    def batch_values(self, coefficients: np.ndarray) -> np.ndarray:
        """objective for each row of an (R, B) batch, search precision"""
        return self.terms @ self.decisions(coefficients) / self.n

    def value(self, coefficients: np.ndarray) -> float:
        """objective summed in index order"""
        return sequential_mean(self.terms * self.decisions(coefficients))

    def value_of_decisions(self, decisions) -> float:
        return sequential_mean(self.terms * np.asarray(decisions))

    def rule(self, coefficients) -> PredictionRule:
        return PredictionRule(polynomial=self.polynomial,
                              coefficients=coefficients)


class OptimizerBase(AlgorithmBase):  # noqa

    def __init__(self, config: OptimizerConfig = None, logger=None):
        super(OptimizerBase, self).__init__(logger=logger)
        self.config = config or OptimizerConfig()

    def maximize(
            self, objective: WeightedObjective, rng: np.random.Generator
    ) -> typing.Tuple[PredictionRule, float]:
        raise NotImplementedError()
