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

"""Basic Exceptions"""


class UmprError(Exception):
    """Base class for library exceptions"""
    pass


class DataError(UmprError):
    """Invalid observation or dataset"""

    def __init__(self, message, index: int = None, row: int = None):
        self.index = index
        self.row = row
        super(DataError, self).__init__(message)


class PreferenceError(UmprError):
    """b(x), c(x) or M violate their ranges"""

    def __init__(self, message, index: int = None):
        self.index = index
        super(PreferenceError, self).__init__(message)


class SieveError(UmprError):
    """Base class for polynomial class and rule exceptions"""
    pass


class DimensionMismatch(SieveError):
    def __init__(self, expected: int, actual: int, what: str = "covariate"):
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"{what} dimension mismatch: expected {expected}, got {actual}")


class PenaltyError(UmprError):
    """Base class for complexity penalty exceptions"""
    pass


class EstimationError(UmprError):
    """Base class for optimizer and estimator exceptions"""
    pass


class ConfigError(UmprError):
    """Invalid configuration key or value"""

    def __init__(self, message, key: str = None):
        self.key = key
        super(ConfigError, self).__init__(message)
