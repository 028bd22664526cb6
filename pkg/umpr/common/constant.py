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
"""System const variable"""

from enum import Enum


class Link(Enum):
    """
    Transformation applied to the polynomial
    """
    IDENTITY = 'identity'
    LOGISTIC = 'logistic'


class PenaltyKind(Enum):
    """
    Allowable complexity penalties
    """
    VC = 'vc'
    MD = 'md'
    SMD = 'smd'
    RC = 'rc'
    BC = 'bc'


class Criterion(Enum):
    AIC = 'aic'
    BIC = 'bic'


class SelectionMethod(Enum):
    UMPR = 'umpr'
    CV_K = 'cv-k'
    CV_ALPHA = 'cv-alpha'


class ExitCode(Enum):
    OK = 0
    CONFIG_ERROR = 2
    RUNTIME_ERROR = 3


# |f(x)| is clamped here before comparing against the cutoff
MAX_ABS_SCORE = 1e12

# basis sizes above this raise SieveError
MAX_BASIS_SIZE = 10 ** 6
