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

"""
Utility kernel s(y, x, f) = b(x)[y + 1 - 2c(x)] sign(f(x) - c(x)).

Averages are accumulated in index order with `np.cumsum` so that a
value never depends on numpy's pairwise summation blocking.
"""

import numpy as np
from umpr.common.exceptions import DimensionMismatch
from umpr.common.exceptions import PreferenceError
from umpr.common.schema.dataset import Dataset
from umpr.common.schema.dataset import Observation
from umpr.common.schema.preference import Preference

__all__ = (
    "sign", "sequential_mean", "utility_coefficients", "utility_s",
    "utility_terms", "empirical_utility", "utility_bound",
    "constant_preference", "misclassification_cost", "conditional_utility",
)


def sign(z) -> np.ndarray:
    """sign with sign(0) = +1"""
    return np.where(np.asarray(z) >= 0, 1, -1)


def sequential_mean(values) -> float:
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return 0.0
    return float(np.cumsum(values)[-1] / values.size)


def utility_coefficients(y, x, pref: Preference) -> np.ndarray:
    """
    a_i = b(x_i)[y_i + 1 - 2c(x_i)], so that s_i = a_i · decision_i.
    """
    b, c = pref.evaluate(x)
    return b * (np.asarray(y, dtype=float) + 1 - 2 * c)


def utility_s(obs: Observation, decision: int, pref: Preference) -> float:
    if decision not in (-1, 1):
        raise ValueError(f"decision must be -1 or 1, got {decision}")
    a = utility_coefficients([obs.y], obs.x[None, :], pref)
    return float(a[0] * decision)


def utility_terms(data: Dataset, decisions, pref: Preference) -> np.ndarray:
    decisions = np.asarray(decisions)
    if decisions.shape != (data.n,):
        raise ValueError(
            f"expected {data.n} decisions, got shape {decisions.shape}")
    return utility_coefficients(data.y, data.x, pref) * decisions


def empirical_utility(rule, data: Dataset, pref: Preference) -> float:
    """
    S_n(f): mean utility of the decisions sign(f(x) - c(x)).

    :param rule: a `PredictionRule`
    """
    if rule.d != data.d:
        raise DimensionMismatch(rule.d, data.d)
    _, c = pref.evaluate(data.x)
    decisions = rule.decide(data.x, c)
    return sequential_mean(utility_terms(data, decisions, pref))


def utility_bound(b_max: float, c_min: float, c_max: float) -> float:
    """
    Tightest M = sup 0.25·b(x)·|y + 1 - 2c(x)| given the ranges of b and c.
    """
    if not np.isfinite(b_max) or b_max < 0:
        raise PreferenceError(
            f"b must be bounded and nonnegative, got {b_max}")
    if not 0 < c_min <= c_max < 1:
        raise PreferenceError(
            f"c range [{c_min}, {c_max}] not inside (0, 1)")
    return 0.25 * b_max * max(2 * (1 - c_min), 2 * c_max)


def constant_preference(b: float, c: float, name: str = None) -> Preference:
    return Preference(
        b=lambda x, _b=float(b): np.full(len(x), _b),
        c=lambda x, _c=float(c): np.full(len(x), _c),
        M=utility_bound(b, c, c),
        name=name or f"b={b:g},c={c:g}",
    )


def misclassification_cost(y, x, pref: Preference) -> np.ndarray:
    """b(x)[y(1 - 2c(x)) + 1], nonnegative under a valid preference"""
    b, c = pref.evaluate(x)
    return b * (np.asarray(y, dtype=float) * (1 - 2 * c) + 1)


def conditional_utility(decisions, x, p_star, pref: Preference) -> np.ndarray:
    """E[s | X = x] = 2·b(x)·(p*(x) - c(x))·decision"""
    b, c = pref.evaluate(x)
    return 2 * b * (np.asarray(p_star, dtype=float) - c) * np.asarray(
        decisions)
