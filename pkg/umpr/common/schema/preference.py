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
from umpr.common.exceptions import PreferenceError

__all__ = ("Preference",)

# relative slack when checking the declared utility bound
_M_RTOL = 1e-12


class Preference(BaseModel):
    """
    Decision maker's preference: weight b(x), cutoff c(x) and the
    declared bound M on normalized utilities 0.25·b(x)·|y+1-2c(x)|.

    `b` and `c` take an (n, d) covariate array and return n values
    (scalars broadcast).
    """
    b: typing.Callable
    c: typing.Callable
    M: float
    name: str = "custom"

    class Config:
        allow_mutation = False
        arbitrary_types_allowed = True

    @validator("M")
    def _positive_bound(cls, v):
        if not np.isfinite(v) or v <= 0:
            raise PreferenceError(f"utility bound M must be positive, got {v}")
        return float(v)

    def evaluate(self, x: np.ndarray) -> typing.Tuple[np.ndarray, np.ndarray]:
        """
        Evaluate b and c on the rows of x and check their ranges.

        :param x: (n, d) covariates
        :return: b(x), c(x) as float arrays of length n
        """
        x = np.asarray(x, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        n = len(x)
        b = np.broadcast_to(
            np.asarray(self.b(x), dtype=float), (n,)).copy()
        c = np.broadcast_to(
            np.asarray(self.c(x), dtype=float), (n,)).copy()
        bad = np.flatnonzero(~(np.isfinite(b) & np.isfinite(c)))
        if len(bad):
            raise PreferenceError(
                f"non-finite b(x) or c(x) at observation {bad[0]}",
                index=int(bad[0]))
        bad = np.flatnonzero(b < 0)
        if len(bad):
            raise PreferenceError(
                f"b(x) = {b[bad[0]]} < 0 at observation {bad[0]}",
                index=int(bad[0]))
        bad = np.flatnonzero((c <= 0) | (c >= 1))
        if len(bad):
            raise PreferenceError(
                f"c(x) = {c[bad[0]]} outside (0, 1) at observation {bad[0]}",
                index=int(bad[0]))
        bound = 0.25 * b * np.maximum(2 * (1 - c), 2 * c)
        bad = np.flatnonzero(bound > self.M * (1 + _M_RTOL))
        if len(bad):
            raise PreferenceError(
                f"utility {bound[bad[0]]} exceeds M = {self.M} "
                f"at observation {bad[0]}", index=int(bad[0]))
        return b, c

    def __str__(self):
        return f"{self.name} (M={self.M:g})"
