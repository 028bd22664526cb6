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
from umpr.algorithms.optimizer.annealing import as_optimizer
from umpr.algorithms.optimizer.base import OptimizerBase
from umpr.algorithms.optimizer.base import OptimizerConfig
from umpr.algorithms.optimizer.base import WeightedObjective
from umpr.common.constant import PenaltyKind
from umpr.common.exceptions import PenaltyError
from umpr.common.schema.dataset import Dataset
from umpr.common.schema.preference import Preference
from umpr.core.utility import sequential_mean
from umpr.sieve.polynomial import PolynomialClass

from .bounds import chi

__all__ = ("PenaltySpec", "PenaltyValue", "PenaltyBase")


class PenaltySpec(BaseModel):
    kind: PenaltyKind
    alpha: float = 0.05
    m: int = 10
    include_technical_term: bool = True

    class Config:
        allow_mutation = False

    @validator("alpha")
    def _alpha(cls, v):
        if not np.isfinite(v) or v < 0:
            raise PenaltyError(f"alpha must be >= 0, got {v}")
        return v

    @validator("m")
    def _replications(cls, v):
        if v < 1:
            raise PenaltyError(f"replication count m must be >= 1, got {v}")
        return v

    @property
    def label(self) -> str:
        text = self.kind.value.upper()
        if not self.include_technical_term:
            text += " no-tech"
        return text


class PenaltyValue(BaseModel):
    """
    C_n(k; α) = base + technical, where technical = coefficient·χ_n(k; α)
    when the technical term is on. `diagnostics` holds the inner maxima
    (one per replication; one for MD; none for VC).
    """
    kind: PenaltyKind
    value: float
    base: float
    technical: float
    coefficient: float
    vc_dim: int
    n: int
    alpha: float
    include_technical_term: bool
    diagnostics: typing.Tuple[float, ...] = ()

    class Config:
        allow_mutation = False

    @classmethod
    def assemble(cls, spec: PenaltySpec, base: float, coefficient: float,
                 vc_dim: int, n: int,
                 diagnostics: typing.Sequence[float] = ()) -> "PenaltyValue":
        technical = (coefficient * chi(vc_dim, n, spec.alpha)
                     if spec.include_technical_term else 0.0)
        return cls(
            kind=spec.kind, value=base + technical, base=base,
            technical=technical, coefficient=coefficient, vc_dim=vc_dim,
            n=n, alpha=spec.alpha,
            include_technical_term=spec.include_technical_term,
            diagnostics=tuple(float(v) for v in diagnostics),
        )

    def at_alpha(self, alpha: float,
                 include_technical_term: bool = None) -> "PenaltyValue":
        """same inner maxima, technical term re-evaluated at alpha"""
        if include_technical_term is None:
            include_technical_term = self.include_technical_term
        spec = PenaltySpec(kind=self.kind, alpha=alpha,
                           include_technical_term=include_technical_term)
        return self.assemble(spec, self.base, self.coefficient, self.vc_dim,
                             self.n, self.diagnostics)


class PenaltyBase(AlgorithmBase):  # noqa
    """
    A complexity penalty for one class of the sieve. Simulated kinds draw
    all their weight vectors from the stream first, then run the inner
    maximizations with the same stream.
    """
    kind: PenaltyKind = None

    def __init__(
            self, spec: PenaltySpec,
            optimizer: typing.Union[OptimizerBase, OptimizerConfig] = None,
            logger=None):
        super(PenaltyBase, self).__init__(logger=logger)
        if spec.kind != self.kind:
            raise PenaltyError(
                f"{self.__class__.__name__} cannot evaluate a "
                f"{spec.kind.value} penalty")
        self.spec = spec
        self.optimizer = as_optimizer(optimizer, logger=self.logger)

    def coefficient(self, n: int, M: float) -> float:  # noqa
        raise NotImplementedError()

    def draw_weights(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """objective weights, one row per inner maximization"""
        raise NotImplementedError()

    def scale(self, n: int) -> float:
        """factor applied to the averaged inner maxima"""
        return 1.0

    def check(self, n: int):
        if n < 2:
            raise PenaltyError(
                f"{self.kind.value} penalty needs n >= 2, got {n}")

    def evaluate(self, polynomial: PolynomialClass, data: Dataset,
                 pref: Preference, M: float = None,  # noqa
                 rng: np.random.Generator = None) -> PenaltyValue:
        M = pref.M if M is None else M  # noqa
        n = data.n
        self.check(n)
        if rng is None:
            rng = np.random.default_rng()
        weights = self.draw_weights(n, rng)
        maxima = []
        for row in weights:
            objective = WeightedObjective(data, pref, polynomial, row)
            _, value = self.optimizer.maximize(objective, rng)
            maxima.append(value)
        base = self.scale(n) * sequential_mean(maxima)
        self.logger.debug(
            f"{self.kind.value} penalty on {polynomial}: base {base:.6g} "
            f"from {len(maxima)} inner maxima")
        return PenaltyValue.assemble(
            self.spec, base, self.coefficient(n, M),
            polynomial.vc_dimension(), n, maxima)
