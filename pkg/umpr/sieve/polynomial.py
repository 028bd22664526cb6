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

"""Polynomial sieves P_k and their logistic transforms."""

import itertools
import typing
from functools import lru_cache

import numpy as np
from pydantic import BaseModel
from pydantic import validator
from scipy.special import comb
from scipy.special import expit
from umpr.common.constant import Link
from umpr.common.constant import MAX_ABS_SCORE
from umpr.common.constant import MAX_BASIS_SIZE
from umpr.common.exceptions import DataError
from umpr.common.exceptions import DimensionMismatch
from umpr.common.exceptions import SieveError

__all__ = (
    "basis_size", "enumerate_basis", "PolynomialClass",
    "PredictionRule", "HierarchySpec", "parse_rule",
)


def basis_size(d: int, k: int) -> int:
    if d < 1 or k < 0:
        raise SieveError(f"need d >= 1 and k >= 0, got d={d}, k={k}")
    size = comb(int(d) + int(k), int(k), exact=True)
    if size > MAX_BASIS_SIZE:
        raise SieveError(
            f"basis of degree {k} in {d} covariates has {size} monomials")
    return int(size)


@lru_cache(maxsize=64)
def _basis(d: int, k: int) -> np.ndarray:
    basis_size(d, k)
    rows = []
    for degree in range(k + 1):
        # combinations_with_replacement yields decreasing lex exponents
        for combo in itertools.combinations_with_replacement(
                range(d), degree):
            rows.append(np.bincount(combo, minlength=d) if combo
                        else np.zeros(d, dtype=np.int64))
    basis = np.asarray(rows, dtype=np.int64).reshape(-1, d)
    basis.setflags(write=False)
    return basis


def enumerate_basis(d: int, k: int) -> np.ndarray:
    """
    Exponent vectors of total degree <= k in graded lexicographic order.

    :return: read-only int array of shape (C(d+k, k), d); row 0 is the
        intercept
    """
    return _basis(int(d), int(k))


class PolynomialClass(BaseModel):
    d: int
    k: int
    link: Link = Link.IDENTITY

    class Config:
        allow_mutation = False

    @validator("d")
    def _dimension(cls, v):
        if v < 1:
            raise SieveError(f"dimension must be >= 1, got {v}")
        return v

    @validator("k")
    def _degree(cls, v, values):
        if v < 0:
            raise SieveError(f"degree must be >= 0, got {v}")
        if "d" in values:
            basis_size(values["d"], v)
        return v

    @property
    def basis(self) -> np.ndarray:
        return enumerate_basis(self.d, self.k)

    @property
    def size(self) -> int:
        return basis_size(self.d, self.k)

    def vc_dimension(self) -> int:
        """
        VC dimension of {sign(f - c)}: C(d+k, k), plus one under the
        logistic link. Nominal, so an upper bound for degenerate covariates.
        """
        return self.size + (1 if self.link == Link.LOGISTIC else 0)

    def design(self, x) -> np.ndarray:
        """monomial design matrix of shape (n, basis size)"""
        x = np.asarray(x, dtype=float)
        if x.ndim == 1:
            x = x[None, :] if self.d > 1 or x.size == 1 else x[:, None]
        if x.shape[1] != self.d:
            raise DimensionMismatch(self.d, x.shape[1])
        if not np.all(np.isfinite(x)):
            raise DataError("non-finite covariate")
        return np.prod(x[:, None, :] ** self.basis[None, :, :], axis=2)

    def transform(self, linear) -> np.ndarray:
        if self.link == Link.LOGISTIC:
            return expit(linear)
        return linear

    def pad(self, coefficients, target: "PolynomialClass") -> np.ndarray:
        """zero-pad coefficients of this class into a larger nested class"""
        if target.d != self.d or target.k < self.k:
            raise SieveError(f"{self} is not nested in {target}")
        out = np.zeros(target.size)
        out[:self.size] = coefficients
        return out

    def pullback(self, coefficients, center, scale) -> np.ndarray:
        """
        Coefficients, in raw covariates x, of the polynomial whose
        coefficients are given in z = (x - center) / scale.
        """
        center = np.broadcast_to(np.asarray(center, dtype=float), (self.d,))
        scale = np.broadcast_to(np.asarray(scale, dtype=float), (self.d,))
        if np.any(scale == 0):
            raise SieveError("zero scale in pullback")
        index = {tuple(p): j for j, p in enumerate(self.basis)}
        out = np.zeros(self.size)
        for coef, p in zip(np.asarray(coefficients, dtype=float), self.basis):
            if coef == 0:
                continue
            # expand prod_l ((x_l - m_l) / s_l)^p_l term by term
            for q in itertools.product(*(range(e + 1) for e in p)):
                term = coef
                for e, qe, m, s in zip(p, q, center, scale):
                    term *= (comb(int(e), int(qe), exact=True)
                             * (-m) ** int(e - qe) / s ** int(e))
                out[index[tuple(q)]] += term
        return out

    def __str__(self):
        return f"P_{self.k}(d={self.d}, {self.link.value})"


class PredictionRule(BaseModel):
    """f in a polynomial class; the decision is sign(f(x) - c(x))"""
    polynomial: PolynomialClass
    coefficients: np.ndarray

    class Config:
        allow_mutation = False
        arbitrary_types_allowed = True

    @validator("coefficients", pre=True)
    def _coefficients(cls, v, values):
        coef = np.array(v, dtype=float).reshape(-1)
        polynomial = values.get("polynomial")
        if polynomial is not None and coef.size != polynomial.size:
            raise SieveError(
                f"{polynomial} needs {polynomial.size} coefficients, "
                f"got {coef.size}")
        if not np.all(np.isfinite(coef)):
            raise SieveError("non-finite coefficient")
        coef.setflags(write=False)
        return coef

    @classmethod
    def zero(cls, polynomial: PolynomialClass) -> "PredictionRule":
        return cls(polynomial=polynomial, coefficients=np.zeros(
            polynomial.size))

    @property
    def d(self) -> int:
        return self.polynomial.d

    def evaluate(self, x) -> np.ndarray:
        """f(x) for each row of x"""
        linear = self.polynomial.design(x) @ self.coefficients
        return self.polynomial.transform(linear)

    def decide(self, x, cutoff) -> np.ndarray:
        """sign(f(x) - c(x)) with sign(0) = +1 and |f| clamped"""
        f = np.clip(self.evaluate(x), -MAX_ABS_SCORE, MAX_ABS_SCORE)
        return np.where(f - np.asarray(cutoff, dtype=float) >= 0, 1, -1)

    def padded_to(self, target: PolynomialClass) -> "PredictionRule":
        if target.link != self.polynomial.link:
            raise SieveError("cannot pad across links")
        return PredictionRule(
            polynomial=target,
            coefficients=self.polynomial.pad(self.coefficients, target))

    def to_record(self) -> str:
        head = [str(self.polynomial.d), str(self.polynomial.k),
                self.polynomial.link.value]
        return ",".join(head + [repr(float(c)) for c in self.coefficients])

    def __str__(self):
        return self.to_record()


def parse_rule(record: str) -> PredictionRule:
    """inverse of `PredictionRule.to_record`"""
    fields = [f.strip() for f in str(record).strip().split(",")]
    if len(fields) < 4:
        raise SieveError(f"rule record too short: {record!r}")
    try:
        d, k = int(fields[0]), int(fields[1])
        link = Link(fields[2].lower())
        coef = [float(f) for f in fields[3:]]
    except ValueError as err:
        raise SieveError(f"malformed rule record {record!r}: {err}")
    return PredictionRule(
        polynomial=PolynomialClass(d=d, k=k, link=link), coefficients=coef)


class HierarchySpec(BaseModel):
    """Truncated nested sieve F_1 ⊆ ... ⊆ F_K"""
    classes: typing.List[PolynomialClass]

    class Config:
        allow_mutation = False

    @validator("classes")
    def _nested(cls, v):
        if not v:
            raise SieveError("hierarchy needs at least one class")
        for prev, nxt in zip(v, v[1:]):
            if (nxt.d != prev.d or nxt.link != prev.link
                    or nxt.k < prev.k):
                raise SieveError(f"{nxt} does not contain {prev}")
        return v

    @classmethod
    def truncated(cls, d: int, degrees: typing.Sequence[int] = (1, 2, 3),
                  link: Link = Link.IDENTITY) -> "HierarchySpec":
        return cls(classes=[
            PolynomialClass(d=d, k=k, link=link) for k in degrees])

    @property
    def K(self) -> int:  # noqa
        return len(self.classes)

    @property
    def d(self) -> int:
        return self.classes[0].d

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, item) -> PolynomialClass:
        return self.classes[item]

    def __len__(self):
        return self.K
