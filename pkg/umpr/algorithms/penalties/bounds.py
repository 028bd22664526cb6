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

"""Closed-form building blocks of the complexity penalties."""

import math
import typing

from umpr.common.constant import PenaltyKind
from umpr.common.exceptions import PenaltyError

__all__ = (
    "chi", "log_psi", "gamma_level", "gamma", "gamma_prime",
    "zeta_truncated", "tail_bound", "utility_lower_bound",
)


def chi(vc_dim: float, n: int, alpha: float) -> float:
    """technical term sqrt((1 + α) ln V / (2n))"""
    if vc_dim < 2:
        raise PenaltyError(f"technical term needs V >= 2, got V={vc_dim}")
    if n < 1:
        raise PenaltyError(f"sample size must be >= 1, got {n}")
    if alpha < 0:
        raise PenaltyError(f"alpha must be >= 0, got {alpha}")
    return math.sqrt((1 + alpha) * math.log(vc_dim) / (2 * n))


def log_psi(vc_dim: float, n: int) -> float:
    """
    log of the growth-function bound: n ln 2 if n <= V,
    else V (1 + ln n - ln V).
    """
    if vc_dim < 1 or n < 1:
        raise PenaltyError(f"need V >= 1 and n >= 1, got V={vc_dim}, n={n}")
    if n <= vc_dim:
        return n * math.log(2)
    return vc_dim * (1 + math.log(n) - math.log(vc_dim))


def gamma_level(m: int, n: int) -> typing.Optional[int]:
    """
    The integer l with n / (l+1)^2 <= m < n / l^2, or None when m >= n.
    """
    if m < 1 or n < 1:
        raise PenaltyError(f"need m >= 1 and n >= 1, got m={m}, n={n}")
    if m >= n:
        return None
    for level in range(1, math.isqrt(n) + 2):
        if n <= m * (level + 1) ** 2 and m * level ** 2 < n:
            return level
    raise PenaltyError(f"no level found for m={m}, n={n}")


def gamma(m: int, n: int, M: float) -> float:  # noqa
    level = gamma_level(m, n)
    if level is None:
        return 40 * M
    return (16 * level + 40) * M


def gamma_prime(m: int, n: int, M: float) -> float:  # noqa
    level = gamma_level(m, n)
    if level is None:
        return 56 * M
    return (32 * level + 56) * M


def zeta_truncated(vc_dims: typing.Iterable[float], alpha: float) -> float:
    """Σ_k V_k^{-(1+α)} over a finite hierarchy"""
    return float(sum(v ** -(1 + alpha) for v in vc_dims))


def tail_bound(kind: PenaltyKind, n: int, eps: float, M: float,  # noqa
               zeta: float, m: int = 1) -> float:
    """
    Upper bound on P(penalized utility - expected utility > eps) for the
    selected rule under a penalty of the given kind.
    """
    kind = PenaltyKind(kind)
    if kind == PenaltyKind.VC:
        return zeta * math.exp(-n * eps ** 2 / (32 * M ** 2))
    if kind == PenaltyKind.MD:
        return zeta * math.exp(-n * eps ** 2 / (288 * M ** 2))
    scale = gamma_prime(m, n, M) if kind == PenaltyKind.BC else gamma(
        m, n, M)
    return 2 * zeta * math.exp(-2 * n * eps ** 2 / scale ** 2)


def utility_lower_bound(penalized: float, M: float, zeta: float,  # noqa
                        n: int, delta: float) -> float:
    """
    Lower confidence bound, at level 1 - delta, on the expected utility of
    the rule selected with the VC penalty.
    """
    if not 0 < delta < 1:
        raise PenaltyError(f"delta must lie in (0, 1), got {delta}")
    return penalized - 8 * M * math.sqrt(
        max(math.log(zeta / delta), 0.0) / (2 * n))
