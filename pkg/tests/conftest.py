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

import os

import numpy as np
import pytest
from umpr.algorithms.optimizer.base import OptimizerBase
from umpr.algorithms.optimizer.base import OptimizerConfig
from umpr.algorithms.optimizer.oracle import oracle_decisions
from umpr.common.schema.dataset import Dataset
from umpr.core.utility import constant_preference
from umpr.sieve.polynomial import PredictionRule


class ExactOptimizer(OptimizerBase):
    """
    Exact maximum for one covariate from the label-sequence oracle. The
    returned rule is a placeholder; only the value is meaningful.
    """

    def maximize(self, objective, rng):
        decisions = oracle_decisions(objective.data, objective.polynomial.k,
                                     objective.weights, objective.pref)
        return (PredictionRule.zero(objective.polynomial),
                objective.value_of_decisions(decisions))


def pytest_collection_modifyitems(config, items):
    if os.environ.get("UMPR_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set UMPR_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def rng():
    return np.random.default_rng(20230601)


@pytest.fixture
def pref1():
    """b = 20, c = 0.5"""
    return constant_preference(20, 0.5)


@pytest.fixture
def fast_optimizer():
    return OptimizerConfig(restarts=10, iterations=400)


@pytest.fixture
def exact_optimizer():
    """settings that reach the exact optimum on the small 1-D cases"""
    return OptimizerConfig(restarts=20, iterations=2000)


def random_instance(rng, n, d=1):
    """labels and covariates with both classes present"""
    x = rng.uniform(-2, 2, size=(n, d))
    y = rng.choice([-1, 1], size=n)
    y[0], y[1] = 1, -1
    return Dataset(y=y, x=x)


@pytest.fixture
def toy_data(rng):
    return random_instance(rng, 40)


@pytest.fixture
def exact():
    return ExactOptimizer()
