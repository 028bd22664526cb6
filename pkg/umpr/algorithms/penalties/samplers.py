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
from umpr.common.exceptions import PenaltyError

__all__ = ("sample_rademacher", "sample_multinomial_weights")


def sample_rademacher(length: int, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. signs, each ±1 with probability 1/2"""
    if length < 1:
        raise PenaltyError(f"length must be >= 1, got {length}")
    return rng.integers(0, 2, size=length) * 2 - 1


def sample_multinomial_weights(n: int,
                               rng: np.random.Generator) -> np.ndarray:
    """
    Bootstrap counts: Multinomial(n; 1/n, ..., 1/n) drawn as n uniform
    category throws, so the counts always sum to n.
    """
    if n < 1:
        raise PenaltyError(f"n must be >= 1, got {n}")
    return np.bincount(rng.integers(0, n, size=n), minlength=n)
