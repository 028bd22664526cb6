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

"""Data generating processes of the simulation designs."""

import typing

import numpy as np
from pydantic import BaseModel
from pydantic import validator
from scipy.special import expit
from umpr.common.class_factory import ClassFactory
from umpr.common.class_factory import ClassType
from umpr.common.exceptions import ConfigError
from umpr.common.exceptions import DataError
from umpr.common.schema.dataset import Dataset

__all__ = ("DgpBase", "BetaCubicDgp", "UniformWaveDgp", "DgpSpec",
           "sample_dgp", "true_probability", "beta_inverse_cdf", "wave")


class DgpBase:
    """
    (Y, X) with Y = +1 with probability p*(X), -1 otherwise. All covariate
    draws come before the label draws.
    """
    name = ""
    d = 1

    def draw_covariates(self, n: int, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError()

    def true_probability(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError()

    def sample(self, n: int, rng: np.random.Generator) -> Dataset:
        if n < 1:
            raise DataError(f"sample size must be >= 1, got {n}")
        x = self.draw_covariates(n, rng)
        v = rng.random(n)
        y = np.where(v < self.true_probability(x), 1, -1)
        return Dataset(y=y, x=x)

    def _as_matrix(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim == 0 or (x.ndim == 1 and self.d > 1):
            x = x.reshape(-1, self.d)
        elif x.ndim == 1:
            x = x[:, None]
        return x


def beta_inverse_cdf(u, beta: float) -> np.ndarray:
    """Beta(1, beta) quantile: 1 - (1 - u)^(1/beta)"""
    return 1 - (1 - np.asarray(u, dtype=float)) ** (1 / beta)


def wave(v) -> np.ndarray:
    """(1.5 - 0.1v)·exp(-(0.25v + 0.1v² - 0.04v³))"""
    v = np.asarray(v, dtype=float)
    return (1.5 - 0.1 * v) * np.exp(-(0.25 * v + 0.1 * v ** 2
                                      - 0.04 * v ** 3))


@ClassFactory.register(ClassType.DGP, alias="dgp1")
class BetaCubicDgp(DgpBase):
    """
    X = 5·Beta(1, 1.3) - 2.5 on [-2.5, 2.5], p*(x) = Λ(-0.5x + 0.2x³).
    """
    name = "DGP1"
    d = 1
    shape = 1.3

    def draw_covariates(self, n, rng):
        u = rng.random(n)
        return (5 * beta_inverse_cdf(u, self.shape) - 2.5)[:, None]

    def true_probability(self, x):
        x = self._as_matrix(x)[:, 0]
        return expit(-0.5 * x + 0.2 * x ** 3)


@ClassFactory.register(ClassType.DGP, alias="dgp2")
class UniformWaveDgp(DgpBase):
    """
    X₁, X₂ iid Uniform[-3.5, 3.5], p*(x) = Λ(Q(1.5x₁ + 1.5x₂)).
    """
    name = "DGP2"
    d = 2
    half_width = 3.5

    def draw_covariates(self, n, rng):
        return rng.uniform(-self.half_width, self.half_width, size=(n, 2))

    def true_probability(self, x):
        x = self._as_matrix(x)
        return expit(wave(1.5 * x[:, 0] + 1.5 * x[:, 1]))


class DgpSpec(BaseModel):
    """`id` accepts "1", "dgp1" or "DGP1" and is stored as the alias"""
    id: str

    class Config:
        allow_mutation = False

    @validator("id", pre=True)
    def _registered(cls, v):
        alias = str(v).strip().lower()
        if not alias.startswith("dgp"):
            alias = f"dgp{alias}"
        if not ClassFactory.is_exists(ClassType.DGP, alias):
            raise ConfigError(f"unknown dgp {v!r}, expected one of "
                              f"{ClassFactory.list(ClassType.DGP)}",
                              key="dgp")
        return alias

    def generator(self) -> DgpBase:
        return ClassFactory.get_cls(ClassType.DGP, self.id)()

    @property
    def d(self) -> int:
        return self.generator().d

    @property
    def label(self) -> str:
        return self.generator().name or self.id

    def __str__(self):
        return self.label


def _as_spec(spec: typing.Union[DgpSpec, str, int]) -> DgpSpec:
    return spec if isinstance(spec, DgpSpec) else DgpSpec(id=spec)


def sample_dgp(spec, n: int, rng: np.random.Generator = None) -> Dataset:
    if rng is None:
        rng = np.random.default_rng()
    return _as_spec(spec).generator().sample(n, rng)


def true_probability(spec, x) -> np.ndarray:
    return _as_spec(spec).generator().true_probability(x)
