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

from .annealing import SimulatedAnnealing
from .annealing import as_optimizer
from .annealing import maximize_weighted_utility
from .base import OptimizerConfig
from .base import WeightedObjective
from .oracle import exhaustive_oracle_1d
from .oracle import oracle_decisions
