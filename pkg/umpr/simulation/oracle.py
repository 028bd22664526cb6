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

"""The Bayes rule sign(p*(x) - c(x)) and its utility."""

import numpy as np
from umpr.common.schema.dataset import Dataset
from umpr.common.schema.preference import Preference
from umpr.core.utility import sequential_mean
from umpr.core.utility import sign
from umpr.core.utility import utility_terms

from .dgp import true_probability

__all__ = ("oracle_decisions", "oracle_utility",
           "maximal_expected_utility", "excess_utility")


def oracle_decisions(spec, pref: Preference, x) -> np.ndarray:
    _, c = pref.evaluate(x)
    return sign(true_probability(spec, x) - c)


def oracle_utility(spec, pref: Preference, testset: Dataset) -> float:
    """empirical utility of sign(p* - c) on the test set"""
    decisions = oracle_decisions(spec, pref, testset.x)
    return sequential_mean(utility_terms(testset, decisions, pref))


def maximal_expected_utility(spec, pref: Preference, x) -> float:
    """S* = 2·E[b|p* - c|], averaged over a covariate sample"""
    b, c = pref.evaluate(x)
    gap = np.abs(true_probability(spec, x) - c)
    return sequential_mean(2 * b * gap)


def excess_utility(rule, spec, pref: Preference, x) -> float:
    """
    S* - S(f) = 4·E[b(p* - c)(1{p* >= c} - 1{f >= c})], averaged over a
    covariate sample; nonnegative for every rule.
    """
    b, c = pref.evaluate(x)
    p_star = true_probability(spec, x)
    best = (p_star >= c).astype(float)
    chosen = (rule.decide(x, c) > 0).astype(float)
    return sequential_mean(4 * b * (p_star - c) * (best - chosen))
