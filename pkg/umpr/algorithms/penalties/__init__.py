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

from .base import PenaltySpec
from .base import PenaltyValue
from .bootstrap import BootstrapComplexity
from .bounds import chi
from .bounds import gamma
from .bounds import gamma_prime
from .bounds import log_psi
from .bounds import tail_bound
from .bounds import utility_lower_bound
from .bounds import zeta_truncated
from .discrepancy import MaximalDiscrepancy
from .discrepancy import SimulatedMaximalDiscrepancy
from .factory import compute_penalty
from .factory import get_penalty
from .factory import penalty_bc
from .factory import penalty_md
from .factory import penalty_rc
from .factory import penalty_smd
from .rademacher import RademacherComplexity
from .samplers import sample_multinomial_weights
from .samplers import sample_rademacher
from .vc import VCPenalty
from .vc import penalty_vc
