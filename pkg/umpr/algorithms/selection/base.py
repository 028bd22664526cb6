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
from umpr.algorithms.penalties.base import PenaltyValue
from umpr.sieve.polynomial import PredictionRule

__all__ = ("ClassRecord", "SelectionResult", "first_argmax")


def first_argmax(values: typing.Sequence[float]) -> int:
    """index of the maximum, the earliest one on ties"""
    return int(np.argmax(np.asarray(values, dtype=float)))


class ClassRecord(BaseModel):
    """One row of the per-class diagnostics"""
    index: int
    k: int
    utility: float
    penalty: float = 0.0
    penalized: float
    detail: typing.Optional[PenaltyValue] = None

    class Config:
        allow_mutation = False


class SelectionResult(BaseModel):
    method: str
    chosen_index: int
    rule: PredictionRule
    per_k: typing.List[ClassRecord]
    alpha: typing.Optional[float] = None

    class Config:
        allow_mutation = False
        arbitrary_types_allowed = True

    @property
    def chosen_k(self) -> int:
        return self.per_k[self.chosen_index].k

    @property
    def chosen(self) -> ClassRecord:
        return self.per_k[self.chosen_index]

    def table(self) -> typing.List[typing.Dict]:
        rows = []
        for rec in self.per_k:
            rows.append({
                "k": rec.k,
                "utility": rec.utility,
                "penalty": rec.penalty,
                "penalized": rec.penalized,
                "chosen": "*" if rec.index == self.chosen_index else "",
            })
        return rows
