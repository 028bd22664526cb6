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

"""Lookup of registered penalties and functional entry points."""

import numpy as np
from umpr.algorithms.optimizer.base import OptimizerConfig
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

__all__ = ("get_penalty", "compute_penalty", "penalty_md", "penalty_smd",
           "penalty_rc", "penalty_bc")


def get_penalty(spec: PenaltySpec, optimizer=None,
                logger=None) -> PenaltyBase:
    _cls = ClassFactory.get_cls(ClassType.PENALTY, spec.kind.value)
    if _cls is None:
        raise PenaltyError(f"no penalty registered as {spec.kind.value}")
    return _cls(spec, optimizer=optimizer, logger=logger)


def compute_penalty(polynomial: PolynomialClass, data: Dataset,
                    pref: Preference, spec: PenaltySpec,
                    M: float = None,  # noqa
                    optimizer: OptimizerConfig = None,
                    rng: np.random.Generator = None) -> PenaltyValue:
    return get_penalty(spec, optimizer=optimizer).evaluate(
        polynomial, data, pref, M=M, rng=rng)


def _expect(spec: PenaltySpec, kind: PenaltyKind):
    if spec.kind != kind:
        raise PenaltyError(
            f"expected a {kind.value} spec, got {spec.kind.value}")


def penalty_md(polynomial, data, pref, spec, M=None,  # noqa
               optimizer=None, rng=None) -> PenaltyValue:
    _expect(spec, PenaltyKind.MD)
    return compute_penalty(polynomial, data, pref, spec, M, optimizer, rng)


def penalty_smd(polynomial, data, pref, spec, M=None,  # noqa
                optimizer=None, rng=None) -> PenaltyValue:
    _expect(spec, PenaltyKind.SMD)
    return compute_penalty(polynomial, data, pref, spec, M, optimizer, rng)


def penalty_rc(polynomial, data, pref, spec, M=None,  # noqa
               optimizer=None, rng=None) -> PenaltyValue:
    _expect(spec, PenaltyKind.RC)
    return compute_penalty(polynomial, data, pref, spec, M, optimizer, rng)


def penalty_bc(polynomial, data, pref, spec, M=None,  # noqa
               optimizer=None, rng=None) -> PenaltyValue:
    _expect(spec, PenaltyKind.BC)
    return compute_penalty(polynomial, data, pref, spec, M, optimizer, rng)
