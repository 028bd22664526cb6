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
import pytest
from umpr.common.constant import Link
from umpr.common.exceptions import DimensionMismatch
from umpr.common.exceptions import SieveError
from umpr.sieve import HierarchySpec
from umpr.sieve import PolynomialClass
from umpr.sieve import PredictionRule
from umpr.sieve import basis_size
from umpr.sieve import enumerate_basis
from umpr.sieve import parse_rule


class TestBasis:

    def test_univariate_powers(self):
        np.testing.assert_array_equal(
            enumerate_basis(1, 3)[:, 0], [0, 1, 2, 3])

    def test_bivariate_cubic(self):
        basis = enumerate_basis(2, 3)
        assert basis.shape == (10, 2)
        assert len({tuple(row) for row in basis}) == 10
        assert basis_size(2, 3) == 10

    def test_graded_order(self):
        basis = enumerate_basis(2, 2)
        np.testing.assert_array_equal(basis[0], [0, 0])
        assert list(basis.sum(axis=1)) == sorted(basis.sum(axis=1))

    def test_intercept_only(self):
        np.testing.assert_array_equal(enumerate_basis(2, 0), [[0, 0]])

    def test_bad_arguments(self):
        with pytest.raises(SieveError):
            basis_size(0, 2)
        with pytest.raises(SieveError):
            PolynomialClass(d=1, k=-1)

    def test_basis_is_read_only(self):
        with pytest.raises(ValueError):
            enumerate_basis(1, 2)[0, 0] = 5


class TestPredictionRule:

    def test_identity_evaluation(self):
        poly = PolynomialClass(d=1, k=1)
        rule = PredictionRule(polynomial=poly, coefficients=[0.0, 1.0])
        assert rule.evaluate([[0.7]])[0] == pytest.approx(0.7)

    def test_logistic_zero_is_half(self):
        poly = PolynomialClass(d=2, k=3, link=Link.LOGISTIC)
        rule = PredictionRule.zero(poly)
        np.testing.assert_allclose(
            rule.evaluate([[1.0, -2.0], [0.3, 0.4]]), [0.5, 0.5])

    def test_cubic_evaluation(self):
        poly = PolynomialClass(d=1, k=3)
        rule = PredictionRule(polynomial=poly,
                              coefficients=[0.0, -0.5, 0.0, 0.2])
        assert rule.evaluate([[1.0]])[0] == pytest.approx(-0.3)

    def test_logistic_stays_inside_unit_interval(self, rng):
        poly = PolynomialClass(d=1, k=2, link=Link.LOGISTIC)
        rule = PredictionRule(polynomial=poly,
                              coefficients=rng.normal(size=3))
        f = rule.evaluate(rng.uniform(-3, 3, size=(100, 1)))
        assert np.all((f > 0) & (f < 1))

    def test_decide_ties_go_positive(self):
        poly = PolynomialClass(d=1, k=0)
        rule = PredictionRule(polynomial=poly, coefficients=[0.5])
        np.testing.assert_array_equal(
            rule.decide([[1.0], [2.0]], [0.5, 0.6]), [1, -1])

    def test_wrong_coefficient_count(self):
        with pytest.raises(SieveError):
            PredictionRule(polynomial=PolynomialClass(d=1, k=2),
                           coefficients=[1.0, 2.0])

    def test_dimension_mismatch(self):
        rule = PredictionRule.zero(PolynomialClass(d=2, k=1))
        with pytest.raises(DimensionMismatch):
            rule.evaluate(np.zeros((3, 1)))

    def test_padding_keeps_values(self, rng):
        small = PolynomialClass(d=2, k=1)
        large = PolynomialClass(d=2, k=3)
        rule = PredictionRule(polynomial=small,
                              coefficients=rng.normal(size=small.size))
        x = rng.normal(size=(20, 2))
        np.testing.assert_allclose(rule.padded_to(large).evaluate(x),
                                   rule.evaluate(x))

    def test_record_round_trip(self, rng):
        poly = PolynomialClass(d=2, k=2, link=Link.LOGISTIC)
        rule = PredictionRule(polynomial=poly,
                              coefficients=rng.normal(size=poly.size))
        again = parse_rule(rule.to_record())
        assert again.polynomial == poly
        np.testing.assert_array_equal(again.coefficients,
                                      rule.coefficients)

    def test_malformed_record(self):
        with pytest.raises(SieveError):
            parse_rule("1,2,identity")
        with pytest.raises(SieveError):
            parse_rule("1,1,probit,0.0,1.0")

    def test_pullback(self, rng):
        poly = PolynomialClass(d=2, k=3)
        beta = rng.normal(size=poly.size)
        center, scale = np.array([0.3, -1.0]), np.array([2.0, 0.5])
        x = rng.normal(size=(15, 2))
        raw = poly.design(x) @ poly.pullback(beta, center, scale)
        standardized = poly.design((x - center) / scale) @ beta
        np.testing.assert_allclose(raw, standardized, rtol=1e-9, atol=1e-9)


class TestVcDimension:

    @pytest.mark.parametrize("d, k, link, expected", [
        (1, 3, Link.IDENTITY, 4),
        (2, 3, Link.IDENTITY, 10),
        (1, 3, Link.LOGISTIC, 5),
    ])
    def test_values(self, d, k, link, expected):
        assert PolynomialClass(d=d, k=k, link=link).vc_dimension() == \
            expected

    def test_nondecreasing_in_degree(self):
        dims = [PolynomialClass(d=2, k=k).vc_dimension() for k in range(6)]
        assert dims == sorted(dims)


class TestHierarchy:

    def test_truncated(self):
        hierarchy = HierarchySpec.truncated(2, (1, 2, 3))
        assert hierarchy.K == 3
        assert [cls.k for cls in hierarchy] == [1, 2, 3]
        assert hierarchy.d == 2

    def test_must_be_nested(self):
        with pytest.raises(SieveError):
            HierarchySpec(classes=[PolynomialClass(d=1, k=3),
                                   PolynomialClass(d=1, k=1)])
        with pytest.raises(SieveError):
            HierarchySpec(classes=[])
