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

import numpy as np
from umpr.common.class_factory import ClassFactory
from umpr.common.class_factory import ClassType
from umpr.common.constant import PenaltyKind

from .base import PenaltyBase
from .bounds import gamma_prime
from .samplers import sample_multinomial_weights

__all__ = ("BootstrapComplexity",)


@ClassFactory.register(ClassType.PENALTY, alias="bc")
class BootstrapComplexity(PenaltyBase):
    """
    (n/(n-1))^n · (1/m) Σ_j max_f (1/n) Σ_i (W_i^(j) - 1) s_i, plus γ'·χ.
    The prefactor does not touch the technical term.
    """
    kind = PenaltyKind.BC

    def coefficient(self, n: int, M: float) -> float:  # noqa
        return gamma_prime(self.spec.m, n, M)

    def scale(self, n: int) -> float:
        return (n / (n - 1)) ** n

    def draw_weights(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return np.vstack([
            sample_multinomial_weights(n, rng) - 1.0
            for _ in range(self.spec.m)
        ])
