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
from .bounds import gamma
from .samplers import sample_rademacher

__all__ = ("RademacherComplexity",)


@ClassFactory.register(ClassType.PENALTY, alias="rc")
class RademacherComplexity(PenaltyBase):
    """(1/m) Σ_j max_f (2/n) Σ_i σ_i^(j) s_i, plus γ·χ"""
    kind = PenaltyKind.RC

    def coefficient(self, n: int, M: float) -> float:  # noqa
        return gamma(self.spec.m, n, M)

    def check(self, n: int):
        pass

    def draw_weights(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return np.vstack([
            2.0 * sample_rademacher(n, rng) for _ in range(self.spec.m)
        ])
