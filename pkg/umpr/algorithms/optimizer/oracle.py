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
Exact maximum of the weighted utility for one covariate.

Along sorted x, sign(f(x) - c) of a degree-k polynomial changes sign at
most k times, and every label sequence with at most k alternations is
attained. The maximum is found by dynamic programming over groups of
tied x values with state (alternations used, current label).
"""

import numpy as np
from umpr.common.exceptions import EstimationError
from umpr.common.schema.dataset import Dataset
from umpr.common.schema.preference import Preference
from umpr.core.utility import sequential_mean
from umpr.core.utility import utility_coefficients

__all__ = ("ORACLE_MAX_N", "oracle_decisions", "exhaustive_oracle_1d")

ORACLE_MAX_N = 25

_LABELS = (1, -1)


def oracle_decisions(data: Dataset, k: int, weights,
                     pref: Preference) -> np.ndarray:
    """
    Maximizing decisions (in index order) over all label sequences with
    at most k alternations along sorted x; tied x share one label.
    """
    if data.d != 1:
        raise EstimationError(f"oracle needs one covariate, got d={data.d}")
    if data.n > ORACLE_MAX_N:
        raise EstimationError(
            f"oracle enumerates at most {ORACLE_MAX_N} observations, "
            f"got {data.n}")
    if k < 0:
        raise EstimationError(f"degree must be >= 0, got {k}")
    weights = np.ones(data.n) if weights is None else np.asarray(
        weights, dtype=float)
    terms = weights * utility_coefficients(data.y, data.x, pref)

    x = data.x[:, 0]
    order = np.argsort(x, kind="stable")
    _, starts = np.unique(x[order], return_index=True)
    groups = np.split(order, starts[1:])
    gains = np.array([terms[g].sum() for g in groups])

    # score[j, l]: best sum with j alternations used, current label _LABELS[l]
    score = np.full((k + 1, 2), -np.inf)
    score[0, 0], score[0, 1] = gains[0], -gains[0]
    back = []
    for gain in gains[1:]:
        nxt = np.full_like(score, -np.inf)
        pointer = np.zeros((k + 1, 2, 2), dtype=np.int64)
        for j in range(k + 1):
            for lab in range(2):
                stay = score[j, lab]
                switch = score[j - 1, 1 - lab] if j > 0 else -np.inf
                if stay >= switch:
                    best, pointer[j, lab] = stay, (j, lab)
                else:
                    best, pointer[j, lab] = switch, (j - 1, 1 - lab)
                nxt[j, lab] = best + _LABELS[lab] * gain
        back.append(pointer)
        score = nxt

    j, lab = np.unravel_index(int(np.argmax(score)), score.shape)
    group_labels = [lab]
    for pointer in reversed(back):
        j, lab = pointer[j, lab]
        group_labels.append(lab)
    group_labels.reverse()

    decisions = np.empty(data.n)
    for g, lab in zip(groups, group_labels):
        decisions[g] = _LABELS[lab]
    return decisions


def exhaustive_oracle_1d(data: Dataset, k: int, weights,
                         pref: Preference) -> float:
    """
    Exact max over degree-k rules of (1/n) Σ w_i s_i for d = 1.

    :return: the maximum, summed in index order
    """
    decisions = oracle_decisions(data, k, weights, pref)
    weights = np.ones(data.n) if weights is None else np.asarray(
        weights, dtype=float)
    terms = weights * utility_coefficients(data.y, data.x, pref)
    return sequential_mean(terms * decisions)
