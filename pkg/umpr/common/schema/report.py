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

__all__ = ("EstimatorSummary", "ExperimentReport")


class EstimatorSummary(BaseModel):
    """
    One row of an experiment report. `frequencies` maps each class
    degree k to the percentage of successful replications choosing it;
    it is empty for estimators that do not select over the sieve.
    """
    estimator: str
    rgeu_pct: float
    se_pct: float
    successes: int
    failures: int = 0
    failed_replications: typing.Tuple[int, ...] = ()
    frequencies: typing.Dict[int, float] = {}

    class Config:
        allow_mutation = False

    @validator("frequencies")
    def _sums_to_hundred(cls, v):
        if v and abs(sum(v.values()) - 100.0) > 1e-6:
            raise ValueError(
                f"selection frequencies sum to {sum(v.values())}, not 100")
        return v


class ExperimentReport(BaseModel):
    config: typing.Dict[str, str]
    seed: int
    replications: int
    estimators: typing.List[EstimatorSummary]
    degrees: typing.Tuple[int, ...] = (1, 2, 3)
    metadata: typing.Dict[str, typing.Any] = {}

    class Config:
        allow_mutation = False

    def summary(self, estimator: str) -> EstimatorSummary:
        for row in self.estimators:
            if row.estimator == estimator:
                return row
        raise KeyError(estimator)

    def rows(self) -> typing.List[typing.Dict]:
        """flat rows in report column order; NaN where not applicable"""
        rows = []
        for est in self.estimators:
            row = {"estimator": est.estimator, "rgeu_pct": est.rgeu_pct,
                   "se_pct": est.se_pct}
            for k in self.degrees:
                row[f"freq_k{k}"] = (est.frequencies.get(k, 0.0)
                                     if est.frequencies else np.nan)
            row["failures"] = est.failures
            rows.append(row)
        return rows
