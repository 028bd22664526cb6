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

import json
import os
import sys
from typing import Dict
from typing import Iterable

import yaml
from umpr.common.exceptions import ConfigError
from umpr.utils.util import EnvBaseContext
from umpr.utils.util import singleton

__all__ = ("BaseConfig", "Config", "parse_flat", "dump_flat")

_FLAT_SUFFIX = (".cfg", ".conf", ".ini")


def parse_flat(lines: Iterable[str], source: str = "<text>") -> Dict:
    """
    Parse flat `key = value` lines; `#` starts a comment.

    :param lines: text lines
    :param source: name used in error messages
    :return: ordered dict of raw string values
    """
    raw = {}
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(
                f"{source}:{lineno}: expected `key = value`, got {text!r}")
        key, value = text.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        raw[key] = value.strip()
    return raw


def dump_flat(data: Dict, prefix: str = "") -> str:
    """Inverse of `parse_flat`, one `key = value` per line."""
    return "".join(f"{prefix}{k} = {v}\n" for k, v in data.items())


def _url2dict(arg):
    if arg.endswith(('.yaml', '.yml')):
        with open(arg, encoding="utf-8") as f:
            raw_dict = yaml.load(f, Loader=yaml.FullLoader)
    elif arg.endswith(".json"):
        with open(arg, encoding="utf-8") as f:
            raw_dict = json.load(f)
    elif arg.endswith(_FLAT_SUFFIX):
        with open(arg, encoding="utf-8") as f:
            raw_dict = parse_flat(f, source=arg)
    else:
        try:
            raw_dict = json.loads(arg)
        except json.JSONDecodeError:
            raise ConfigError(
                f'config {arg} must be cfg, yaml or json')
    if raw_dict is None:
        return {}
    if not isinstance(raw_dict, dict):
        raise ConfigError(f"config {arg} does not hold a mapping")
    return raw_dict


def _dict2config(config, dic):
    """Convert dictionary to config.

    :param Config config: config
    :param dict dic: dictionary

    """
    if isinstance(dic, dict):
        for key, value in dic.items():
            if isinstance(value, dict):
                config[key] = Config()
                _dict2config(config[key], value)
            else:
                config[key] = value


class Config(dict):
    """A Config class is inherit from dict.

    Config class can parse arguments from a config file
    of flat `key = value` lines, yaml or json.
    :param args: tuple of Config initial arguments
    :type args: tuple of str or dict
    :param kwargs: dict of Config initial argumnets
    :type kwargs: dict
    """

    def __init__(self, *args, **kwargs):
        """Init config class with multiple config files or dictionary."""
        super(Config, self).__init__()
        for arg in args:
            if isinstance(arg, str):
                _dict2config(self, _url2dict(arg))
            elif isinstance(arg, dict):
                _dict2config(self, arg)
            else:
                raise TypeError('args is not dict or str')
        if kwargs:
            _dict2config(self, kwargs)

    def flatten(self, prefix: str = "") -> Dict:
        """nested sections become dotted keys"""
        flat = {}
        for key, value in self.items():
            name = f"{prefix}{key}"
            if isinstance(value, dict):
                flat.update(Config(value).flatten(prefix=f"{name}."))
            else:
                flat[name] = value
        return flat


@singleton
class BaseConfig:
    """ Base configuration """
    with EnvBaseContext() as Context:
        __cfg_search = os.path.join(
            sys.prefix, "share", "umpr", "configs"
        )
        if not os.path.isdir(__cfg_search):
            __cfg_search = os.path.abspath(
                os.path.join(__file__, "..", "..", "..", "configs")
            )
        CONFIG_PATH = Context.get("UMPR_CFG_PATH", __cfg_search)

        LOG_DIR = Context.get("UMPR_LOG_DIR", "")  # empty: stderr only
        LOG_LEVEL = Context.get("UMPR_LOG_LEVEL", "INFO")

        # default worker count when the `threads` key is absent
        THREADS = Context.get("UMPR_THREADS", "1")
