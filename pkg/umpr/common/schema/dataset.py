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
from umpr.common.exceptions import DataError

__all__ = ("Observation", "Dataset")


def _check_labels(y: np.ndarray):
    bad = np.flatnonzero((y != 1) & (y != -1))
    if len(bad):
        raise DataError(
            f"label must be -1 or 1, got {y[bad[0]]} at index {bad[0]}",
            index=int(bad[0]))


def _check_finite(x: np.ndarray):
    bad = np.flatnonzero(~np.all(np.isfinite(x), axis=-1))
    if len(bad):
        raise DataError(
            f"non-finite covariate at index {bad[0]}", index=int(bad[0]))


class Observation(BaseModel):
    y: int
    x: np.ndarray

    class Config:
        allow_mutation = False
        arbitrary_types_allowed = True

    @validator("y")
    def _label(cls, v):
        if v not in (-1, 1):
            raise DataError(f"label must be -1 or 1, got {v}")
        return v

    @validator("x", pre=True)
    def _covariates(cls, v):
        x = np.atleast_1d(np.asarray(v, dtype=float))
        if x.ndim != 1 or x.size < 1:
            raise DataError("covariate must be a non-empty vector")
        _check_finite(x[None, :])
        return x

    @property
    def d(self) -> int:
        return int(self.x.size)


class Dataset(BaseModel):
    """
    Ordered i.i.d. sample; `y` has shape (n,) and `x` shape (n, d).
    Index order is part of the data.
    """
    y: np.ndarray
    x: np.ndarray

    class Config:
        allow_mutation = False
        arbitrary_types_allowed = True

    @validator("y", pre=True)
    def _labels(cls, v):
        y = np.asarray(v)
        if y.ndim != 1 or y.size < 1:
            raise DataError("no observations")
        _check_labels(y)
        return y.astype(np.int64)

    @validator("x", pre=True)
    def _covariates(cls, v):
        x = np.asarray(v, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        if x.ndim != 2 or x.shape[1] < 1:
            raise DataError("covariates must form an (n, d) array, d >= 1")
        _check_finite(x)
        return x

    @validator("x")
    def _aligned(cls, v, values):
        y = values.get("y")
        if y is not None and len(y) != len(v):
            raise DataError(
                f"{len(y)} labels but {len(v)} covariate rows")
        return v

    @classmethod
    def from_observations(
            cls, observations: typing.Sequence[Observation]) -> "Dataset":
        if not len(observations):
            raise DataError("no observations")
        d = observations[0].d
        for i, obs in enumerate(observations):
            if obs.d != d:
                raise DataError(
                    f"observation {i} has dimension {obs.d}, expected {d}",
                    index=i)
        return cls(y=[o.y for o in observations],
                   x=np.vstack([o.x for o in observations]))

    @property
    def n(self) -> int:
        return int(len(self.y))

    @property
    def d(self) -> int:
        return int(self.x.shape[1])

    @property
    def observations(self) -> typing.List[Observation]:
        return [Observation(y=int(y), x=x) for y, x in zip(self.y, self.x)]

    def subset(self, index) -> "Dataset":
        index = np.asarray(index)
        return Dataset(y=self.y[index], x=self.x[index])

    def __len__(self):
        return self.n
