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

"""
Documented key schema of the command line. Every key has a default,
a parser and a one-line description; unknown keys are rejected.
"""

import os
import typing

from umpr.algorithms.optimizer.base import OptimizerConfig
from umpr.algorithms.penalties.base import PenaltySpec
from umpr.common.config import BaseConfig
from umpr.common.config import Config
from umpr.common.constant import PenaltyKind
from umpr.common.constant import SelectionMethod
from umpr.common.exceptions import ConfigError
from umpr.common.exceptions import UmprError
from umpr.simulation.estimators import DEFAULT_ROSTER
from umpr.simulation.experiment import ExperimentConfig

__all__ = ("Option", "OPTION_SCHEMA", "resolve_options", "load_options",
           "find_config", "parse_overrides", "optimizer_config",
           "penalty_spec", "experiment_config", "describe_options")


class Option(typing.NamedTuple):
    default: str
    parse: typing.Callable[[str], typing.Any]
    doc: str


def _text(value: str) -> str:
    return value


def _int(value: str) -> int:
    return int(value)


def _float(value: str) -> float:
    return float(value)


def _optional_int(value: str) -> typing.Optional[int]:
    return int(value) if value else None


def _switch(value: str) -> bool:
    value = value.lower()
    if value in ("on", "true", "yes", "1"):
        return True
    if value in ("off", "false", "no", "0"):
        return False
    raise ValueError(f"expected on/off, got {value!r}")


def _floats(value: str) -> typing.Tuple[float, ...]:
    return tuple(float(a) for a in value.split(",") if a.strip())


def _penalty(value: str) -> PenaltyKind:
    return PenaltyKind(value.lower())


def _method(value: str) -> SelectionMethod:
    return SelectionMethod(value.lower())


OPTION_SCHEMA: typing.Dict[str, Option] = {
    "data": Option("", _text, "dataset CSV with header y,x1,...,xd"),
    "output": Option("", _text, "report file; standard output if empty"),
    "preference": Option("1", _text,
                         "catalog preference 1-4 or constant 'b,c'"),
    "bound": Option("", lambda v: float(v) if v else None,
                    "utility bound M for penalties; preference's M if "
                    "empty"),
    "k": Option("3", _int, "polynomial degree fitted by `fit`/`penalty`"),
    "hierarchy.K": Option("3", _int,
                          "truncation: P_1, ..., P_K, then P_K"),
    "rule": Option("", _text,
                   "rule record d,k,link,coeffs... to evaluate instead of "
                   "fitting"),
    "method": Option("umpr", _method, "selection method umpr|cv-k|cv-alpha"),
    "penalty": Option("vc", _penalty, "complexity penalty vc|md|smd|rc|bc"),
    "alpha": Option("0.05", _float, "technical term level α >= 0"),
    "alpha.grid": Option("1,0.5,0.1,0.05", _floats,
                         "α candidates for cross-validation"),
    "technical_term": Option("on", _switch, "include the technical term"),
    "m": Option("10", _int, "replications of simulated penalties"),
    "cv.folds": Option("10", _int, "cross-validation folds"),
    "seed": Option("", _optional_int,
                   "master seed; drawn from system entropy if empty"),
    "threads": Option("", _optional_int,
                      "experiment worker threads; UMPR_THREADS if empty"),
    "optimizer.restarts": Option("20", _int, "annealing restarts"),
    "optimizer.iterations": Option("3000", _int,
                                   "annealing iterations per restart"),
    "optimizer.initial_temperature": Option("1.0", _float,
                                            "initial temperature"),
    "optimizer.cooling": Option("0.995", _float,
                                "geometric cooling factor in (0, 1)"),
    "optimizer.step": Option("0.5", _float, "proposal step scale"),
    "dgp": Option("1", _text, "data generating process 1|2"),
    "n": Option("500", _int, "training sample size"),
    "out_of_sample": Option("5000", _int, "test sample size ℓ"),
    "replications": Option("500", _int, "Monte Carlo replications S"),
    "estimators": Option(",".join(DEFAULT_ROSTER), _text,
                         "comma separated estimator roster"),
    "lasso.grid": Option("50", _int, "LASSO λ grid size"),
    "svm.iterations": Option("50000", _int, "ℓ1-SVM subgradient steps"),
    "svm.grid": Option("10", _int, "ℓ1-SVM λ grid size"),
}


def _as_text(value) -> str:
    if isinstance(value, bool):
        return "on" if value else "off"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return "" if value is None else str(value)


def resolve_options(*layers: typing.Dict) -> Config:
    """
    Merge raw layers (later wins) over the defaults and parse every
    value.
    """
    raw = {key: opt.default for key, opt in OPTION_SCHEMA.items()}
    for layer in layers:
        for key, value in layer.items():
            if key not in OPTION_SCHEMA:
                raise ConfigError(f"unknown key {key!r}", key=key)
            raw[key] = _as_text(value).strip()
    options = Config()
    for key, value in raw.items():
        try:
            options[key] = OPTION_SCHEMA[key].parse(value)
        except (TypeError, ValueError) as err:
            raise ConfigError(f"bad value {value!r} for {key}: {err}",
                              key=key)
    if options["threads"] is None:
        options["threads"] = int(BaseConfig.THREADS)
    return options


def find_config(path: str) -> str:
    """a path as given, else a shipped config under CONFIG_PATH"""
    if os.path.isfile(path):
        return path
    for candidate in (os.path.join(BaseConfig.CONFIG_PATH, path),
                      os.path.join(BaseConfig.CONFIG_PATH, "experiments",
                                   path)):
        if os.path.isfile(candidate):
            return candidate
    raise ConfigError(f"config file {path} not found")


def load_options(path: str = None) -> typing.Dict:
    """flat raw layer from a config file"""
    if not path:
        return {}
    return Config(find_config(path)).flatten()


def parse_overrides(pairs: typing.Sequence[str]) -> typing.Dict:
    raw = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"expected key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        raw[key.strip()] = value.strip()
    return raw


def optimizer_config(options: Config) -> OptimizerConfig:
    try:
        return OptimizerConfig(
            restarts=options["optimizer.restarts"],
            iterations=options["optimizer.iterations"],
            initial_temperature=options["optimizer.initial_temperature"],
            cooling=options["optimizer.cooling"],
            step=options["optimizer.step"])
    except UmprError as err:
        raise ConfigError(str(err), key="optimizer") from err


def penalty_spec(options: Config) -> PenaltySpec:
    try:
        return PenaltySpec(kind=options["penalty"], alpha=options["alpha"],
                           m=options["m"],
                           include_technical_term=options["technical_term"])
    except UmprError as err:
        raise ConfigError(str(err), key="penalty") from err


def experiment_config(options: Config) -> ExperimentConfig:
    try:
        return _experiment_config(options)
    except ValueError as err:
        raise ConfigError(str(err)) from err


def _experiment_config(options: Config) -> ExperimentConfig:
    return ExperimentConfig(
        dgp=options["dgp"], preference=options["preference"],
        n=options["n"], out_of_sample=options["out_of_sample"],
        replications=options["replications"],
        estimators=options["estimators"], K=options["hierarchy.K"],
        alpha=options["alpha"], alpha_grid=options["alpha.grid"],
        m=options["m"], folds=options["cv.folds"],
        optimizer=optimizer_config(options),
        lasso_grid=options["lasso.grid"],
        svm_iterations=options["svm.iterations"],
        svm_grid=options["svm.grid"], seed=options["seed"],
        threads=options["threads"])


def describe_options() -> str:
    width = max(len(key) for key in OPTION_SCHEMA)
    return "\n".join(
        f"  {key:<{width}}  {opt.doc} (default: {opt.default or '-'})"
        for key, opt in OPTION_SCHEMA.items())
