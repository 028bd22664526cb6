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

from .lasso import LassoFit
from .lasso import lambda_grid
from .lasso import lambda_max
from .lasso import lasso_fit
from .lasso import lasso_logit
from .lasso import soft_threshold
from .logit import LogitFit
from .logit import ic_choose
from .logit import ic_penalty
from .logit import ic_select
from .logit import logit_mle
from .svm import SvmFit
from .svm import hinge_loss
from .svm import l1_svm
from .svm import subgradient_path
