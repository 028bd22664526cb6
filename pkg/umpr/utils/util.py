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

"""This script contains some common tools."""
import os
import zlib
from copy import deepcopy
from functools import wraps
from typing import Union

import numpy as np

__all__ = (
    "singleton", "EnvBaseContext",
    "stream_key", "child_rng", "fresh_seed",
)


def singleton(cls):
    """Set class to singleton class.

    :param cls: class
    :return: instance
    """
    __instances__ = {}

    @wraps(cls)
    def get_instance(*args, **kw):
        """Get class instance and save it into glob list."""
        if cls not in __instances__:
            __instances__[cls] = cls(*args, **kw)

        return __instances__[cls]

    return get_instance


class EnvBaseContext:
    """The Context provides the capability of obtaining the context"""
    parameters = os.environ

    def __enter__(self):
        self._raw = deepcopy(self.parameters)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.parameters = self._raw

    @classmethod
    def get(cls, param: str, default: str = None) -> str:
        """get the value of the key `param` in `PARAMETERS`,
        if not exist, the default value is returned"""
        value = cls.parameters.get(
            param) or cls.parameters.get(str(param).upper())
        return value or default


def stream_key(name: Union[str, int]) -> int:
    """Stable integer key of a named random stream."""
    if isinstance(name, int):
        return name
    return zlib.crc32(str(name).encode("utf-8"))


def child_rng(seed: int, *keys: Union[str, int]) -> np.random.Generator:
    """
    Derive an independent generator from a master seed and a key path.

    Streams are split as ``SeedSequence(entropy=seed, spawn_key=keys)``,
    so the stream of replication ``j`` (and of any named sub-stream inside
    it) does not depend on the order in which streams are created.
    """
    spawn_key = tuple(stream_key(k) for k in keys)
    return np.random.default_rng(
        np.random.SeedSequence(entropy=int(seed), spawn_key=spawn_key)
    )


def fresh_seed() -> int:
    """draw a 63-bit master seed from system entropy"""
    return int(np.random.SeedSequence().entropy) & ((1 << 63) - 1)
