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

"""Catalog of decision maker preferences used by the simulation designs."""

import typing

import numpy as np
from umpr.common.exceptions import ConfigError
from umpr.common.exceptions import PreferenceError
from umpr.common.schema.preference import Preference
from umpr.core.utility import constant_preference
from umpr.core.utility import utility_bound

__all__ = ("PREFERENCE_DGP", "catalog_preference", "parse_preference",
           "check_compatible")

# catalog id -> dgp alias it is designed for
PREFERENCE_DGP = {1: "dgp1", 2: "dgp1", 3: "dgp2", 4: "dgp2"}


def _sloped_cutoff(x):
    return 0.5 + 0.025 * x[:, 0]


def _banded_weight(x):
    return 20 + 40 * (np.abs(x[:, 0] + x[:, 1]) < 1.5)


def catalog_preference(pid: int) -> Preference:
    """
    1: b = 20, c = 0.5
    2: b = 20, c = 0.5 + 0.025x        (x in [-2.5, 2.5])
    3: b = 20, c = 0.75
    4: b = 20 + 40·1{|x₁ + x₂| < 1.5}, c = 0.75
    """
    if pid == 1:
        return constant_preference(20, 0.5, name="preference 1")
    if pid == 2:
        return Preference(b=lambda x: np.full(len(x), 20.0),
                          c=_sloped_cutoff,
                          M=utility_bound(20, 0.4375, 0.5625),
                          name="preference 2")
    if pid == 3:
        return constant_preference(20, 0.75, name="preference 3")
    if pid == 4:
        return Preference(b=_banded_weight,
                          c=lambda x: np.full(len(x), 0.75),
                          M=utility_bound(60, 0.75, 0.75),
                          name="preference 4")
    raise ConfigError(f"unknown preference {pid}, expected 1-4",
                      key="preference")


def parse_preference(text: typing.Union[str, int]) -> Preference:
    """
    "1".."4" picks a catalog entry; "b,c" builds a constant preference
    with M derived from b and c.
    """
    text = str(text).strip()
    if "," not in text:
        try:
            pid = int(text)
        except ValueError:
            raise ConfigError(f"preference must be 1-4 or 'b,c', "
                              f"got {text!r}", key="preference")
        return catalog_preference(pid)
    try:
        b, c = (float(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"preference 'b,c' needs two numbers, "
                          f"got {text!r}", key="preference")
    try:
        return constant_preference(b, c)
    except PreferenceError as err:
        raise ConfigError(str(err), key="preference") from err


def check_compatible(preference: typing.Union[str, int], dgp: str):
    """catalog preferences run only with the dgp they are designed for"""
    try:
        pid = int(str(preference).strip())
    except ValueError:
        return
    expected = PREFERENCE_DGP.get(pid)
    if expected is not None and expected != dgp:
        raise ConfigError(
            f"preference {pid} is defined for {expected.upper()}, "
            f"not {dgp.upper()}", key="preference")
