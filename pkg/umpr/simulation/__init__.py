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

from .dgp import BetaCubicDgp
from .dgp import DgpBase
from .dgp import DgpSpec
from .dgp import UniformWaveDgp
from .dgp import sample_dgp
from .dgp import true_probability
from .estimators import DEFAULT_ROSTER
from .estimators import EstimateOutcome
from .estimators import EstimatorBase
from .estimators import ReplicationContext
from .estimators import parse_estimator
from .estimators import parse_roster
from .experiment import ExperimentConfig
from .experiment import format_report
from .experiment import read_report
from .experiment import rgeu_experiment
from .experiment import write_report
from .oracle import excess_utility
from .oracle import maximal_expected_utility
from .oracle import oracle_decisions
from .oracle import oracle_utility
from .preferences import catalog_preference
from .preferences import check_compatible
from .preferences import parse_preference
