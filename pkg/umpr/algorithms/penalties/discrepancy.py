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

"""Maximal discrepancy penalties, plain and Rademacher-simulated."""

import numpy as np
from umpr.common.class_factory import ClassFactory
from umpr.common.class_factory import ClassType
from umpr.common.constant import PenaltyKind
from umpr.common.exceptions import PenaltyError

from .base import PenaltyBase
from .bounds import gamma
from .samplers import sample_rademacher

__all__ = ("MaximalDiscrepancy", "SimulatedMaximalDiscrepancy",
           "discrepancy_weights", "paired_weights")


def discrepancy_weights(n: int) -> np.ndarray:
    """
    Weights turning (1/n) Σ w_i s_i into mean(first half) - mean(second
    half); the first half holds ceil(n/2) observations.
    """
    n1 = (n + 1) // 2
    n2 = n - n1
    w = np.empty(n)
    w[:n1] = n / n1
    w[n1:] = -n / n2
    return w


def paired_weights(sigma: np.ndarray, n: int) -> np.ndarray:
    """
    Weights for (2/n') Σ_i σ_i [s_{2i} - s_{2i+1}] over the n' = 2⌊n/2⌋
    paired observations; an odd last observation gets weight 0.
    """
    pairs = n // 2
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (pairs,):
        raise PenaltyError(f"expected {pairs} signs, got {sigma.shape}")
    w = np.zeros(n)
    factor = 2.0 * n / (2 * pairs)
    w[0:2 * pairs:2] = factor * sigma
    w[1:2 * pairs:2] = -factor * sigma
    return w


@ClassFactory.register(ClassType.PENALTY, alias="md")
class MaximalDiscrepancy(PenaltyBase):
    kind = PenaltyKind.MD

    def coefficient(self, n: int, M: float) -> float:  # noqa
        return 24 * M

    def draw_weights(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return discrepancy_weights(n)[None, :]


@ClassFactory.register(ClassType.PENALTY, alias="smd")
class SimulatedMaximalDiscrepancy(PenaltyBase):
    kind = PenaltyKind.SMD

    def coefficient(self, n: int, M: float) -> float:  # noqa
        return gamma(self.spec.m, n, M)

    def draw_weights(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return np.vstack([
            paired_weights(sample_rademacher(n // 2, rng), n)
            for _ in range(self.spec.m)
        ])
