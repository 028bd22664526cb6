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

from .utility import conditional_utility
from .utility import constant_preference
from .utility import empirical_utility
from .utility import misclassification_cost
from .utility import sequential_mean
from .utility import sign
from .utility import utility_bound
from .utility import utility_coefficients
from .utility import utility_s
from .utility import utility_terms
