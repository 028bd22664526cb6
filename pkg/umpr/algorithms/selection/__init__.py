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

from .base import ClassRecord
from .base import SelectionResult
from .cross_validation import cv_alpha_scores
from .cross_validation import cv_select_alpha
from .cross_validation import cv_select_k
from .cross_validation import fold_partition
from .umpr import fit_hierarchy
from .umpr import mu_fit
from .umpr import penalize_hierarchy
from .umpr import select_penalized
from .umpr import umpr_select
