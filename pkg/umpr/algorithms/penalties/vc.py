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

import math

import numpy as np
from umpr.common.class_factory import ClassFactory
from umpr.common.class_factory import ClassType
from umpr.common.constant import PenaltyKind
from umpr.common.exceptions import PenaltyError
from umpr.common.schema.dataset import Dataset
from umpr.common.schema.preference import Preference
from umpr.sieve.polynomial import PolynomialClass

from .base import PenaltyBase
from .base import PenaltySpec
from .base import PenaltyValue
from .bounds import log_psi

__all__ = ("VCPenalty", "penalty_vc")


@ClassFactory.register(ClassType.PENALTY, alias="vc")
class VCPenalty(PenaltyBase):
    """8M·sqrt(2 log ψ / n), deterministic"""
    kind = PenaltyKind.VC

    def coefficient(self, n: int, M: float) -> float:  # noqa
        return 8 * M

    def value_at(self, polynomial: PolynomialClass, n: int,
                 M: float) -> PenaltyValue:  # noqa
        if n < 1:
            raise PenaltyError(f"sample size must be >= 1, got {n}")
        vc_dim = polynomial.vc_dimension()
        base = 8 * M * math.sqrt(2 * log_psi(vc_dim, n) / n)
        return PenaltyValue.assemble(
            self.spec, base, self.coefficient(n, M), vc_dim, n)

    def evaluate(self, polynomial: PolynomialClass, data: Dataset,
                 pref: Preference, M: float = None,  # noqa
                 rng: np.random.Generator = None) -> PenaltyValue:
        return self.value_at(polynomial, data.n,
                             pref.M if M is None else M)


def penalty_vc(polynomial: PolynomialClass, n: int, spec: PenaltySpec,
               M: float) -> PenaltyValue:  # noqa
    return VCPenalty(spec).value_at(polynomial, n, M)
