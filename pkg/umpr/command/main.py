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
umpr command line.

    umpr fit        data=train.csv preference=1 k=3
    umpr select     data=train.csv method=umpr penalty=md seed=7
    umpr penalty    data=train.csv penalty=bc k=2 m=10 seed=7
    umpr experiment --config table1_dgp1_pref1_n500.cfg threads=8

Settings come from `--config` (flat `key = value`, yaml or json) and are
overridden by positional `key=value` pairs.
"""

import argparse
import sys
import typing

import numpy as np
import pandas as pd
from umpr.algorithms.optimizer.annealing import as_optimizer
from umpr.algorithms.penalties.factory import compute_penalty
from umpr.algorithms.selection.base import SelectionResult
from umpr.algorithms.selection.cross_validation import cv_select_alpha
from umpr.algorithms.selection.cross_validation import cv_select_k
from umpr.algorithms.selection.umpr import mu_fit
from umpr.algorithms.selection.umpr import umpr_select
from umpr.common.config import Config
from umpr.common.constant import ExitCode
from umpr.common.constant import Link
from umpr.common.constant import SelectionMethod
from umpr.common.exceptions import ConfigError
from umpr.common.exceptions import DataError
from umpr.common.exceptions import SieveError
from umpr.common.exceptions import UmprError
from umpr.common.fileops import FileOps
from umpr.common.logger import logging
from umpr.core.utility import empirical_utility
from umpr.sieve.polynomial import HierarchySpec
from umpr.sieve.polynomial import PolynomialClass
from umpr.sieve.polynomial import parse_rule
from umpr.simulation.experiment import rgeu_experiment
from umpr.simulation.experiment import write_report
from umpr.simulation.preferences import parse_preference
from umpr.utils.util import fresh_seed

from .options import describe_options
from .options import experiment_config
from .options import load_options
from .options import optimizer_config
from .options import parse_overrides
from .options import penalty_spec
from .options import resolve_options

__all__ = ("main", "cmd_fit", "cmd_select", "cmd_penalty",
           "cmd_experiment")

logger = logging.bind(instance="command")

SMOKE_PROFILE = {"replications": "25"}

Out = typing.TextIO


def _emit(out: Out, **fields):
    for key, value in fields.items():
        out.write(f"{key} = {value}\n")


def _seeded(options: Config, out: Out) -> np.random.Generator:
    """one generator from `seed`; a drawn seed is printed"""
    seed = options["seed"]
    if seed is None:
        seed = fresh_seed()
        _emit(out, seed=seed)
    return np.random.default_rng(seed)


def _dataset(options: Config):
    if not options["data"]:
        raise ConfigError("missing dataset, set data=<path>", key="data")
    return FileOps.read_dataset(options["data"])


def _hierarchy(options: Config, d: int) -> HierarchySpec:
    degrees = range(1, options["hierarchy.K"] + 1)
    return HierarchySpec.truncated(d, degrees, Link.IDENTITY)


def cmd_fit(options: Config, out: Out = sys.stdout):
    """MU fit over P_k, or the utility of a supplied rule"""
    data = _dataset(options)
    pref = parse_preference(options["preference"])
    if options["rule"]:
        rule = parse_rule(options["rule"])
        value = empirical_utility(rule, data, pref)
    else:
        polynomial = PolynomialClass(d=data.d, k=options["k"],
                                     link=Link.IDENTITY)
        rng = _seeded(options, out)
        rule, value = mu_fit(polynomial, data, pref,
                             optimizer_config(options), rng)
    _emit(out, rule=rule.to_record(), utility=repr(value))


def _print_selection(result: SelectionResult, out: Out):
    _emit(out, method=result.method, chosen_k=result.chosen_k)
    if result.alpha is not None:
        _emit(out, alpha=repr(result.alpha))
    _emit(out, rule=result.rule.to_record())
    frame = pd.DataFrame(result.table())
    out.write(frame.to_string(index=False, float_format="%.6f") + "\n")


def cmd_select(options: Config, out: Out = sys.stdout):
    data = _dataset(options)
    pref = parse_preference(options["preference"])
    hierarchy = _hierarchy(options, data.d)
    optimizer = as_optimizer(optimizer_config(options))
    rng = _seeded(options, out)
    method = options["method"]
    if method == SelectionMethod.CV_K:
        result = cv_select_k(hierarchy, data, pref,
                             folds=options["cv.folds"],
                             optimizer=optimizer, rng=rng)
    else:
        spec = penalty_spec(options)
        if method == SelectionMethod.CV_ALPHA:
            alpha = cv_select_alpha(
                options["alpha.grid"], hierarchy, data, pref, spec,
                folds=options["cv.folds"], M=options["bound"],
                optimizer=optimizer, rng=rng)
            spec = spec.copy(update={"alpha": alpha})
        result = umpr_select(hierarchy, data, pref, spec,
                             M=options["bound"], optimizer=optimizer,
                             rng=rng)
    logger.info(f"{result.method} selects k={result.chosen_k}")
    _print_selection(result, out)


def cmd_penalty(options: Config, out: Out = sys.stdout):
    """one penalty value for P_k with its inner maxima"""
    data = _dataset(options)
    pref = parse_preference(options["preference"])
    polynomial = PolynomialClass(d=data.d, k=options["k"],
                                 link=Link.IDENTITY)
    rng = _seeded(options, out)
    value = compute_penalty(polynomial, data, pref, penalty_spec(options),
                            M=options["bound"],
                            optimizer=optimizer_config(options), rng=rng)
    _emit(out, kind=value.kind.value, k=polynomial.k,
          value=repr(value.value), base=repr(value.base),
          technical=repr(value.technical),
          coefficient=repr(value.coefficient), vc_dim=value.vc_dim,
          n=value.n, alpha=repr(value.alpha),
          diagnostics=",".join(repr(v) for v in value.diagnostics))


def cmd_experiment(options: Config, out: Out = sys.stdout):
    config = experiment_config(options)
    report = rgeu_experiment(config, progress=True)
    text = write_report(report, options["output"] or None)
    if not options["output"]:
        out.write(text)
    else:
        logger.info(f"report written to {options['output']}")


COMMANDS = {
    "fit": (cmd_fit, "fit a maximum utility rule over one class"),
    "select": (cmd_select, "select a class by penalty or cross-validation"),
    "penalty": (cmd_penalty, "evaluate one complexity penalty"),
    "experiment": (cmd_experiment, "run a Monte Carlo RGEU experiment"),
}


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None,
                        help="flat key = value, yaml or json settings")
    common.add_argument("overrides", nargs="*", metavar="key=value",
                        help="settings overriding the config file")
    parser = argparse.ArgumentParser(
        prog="umpr", description="utility maximizing prediction rules",
        epilog="keys:\n" + describe_options(),
        formatter_class=argparse.RawDescriptionHelpFormatter)
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    for name, (_, helps) in COMMANDS.items():
        sub = subparsers.add_parser(name, parents=[common], help=helps)
        if name == "experiment":
            sub.add_argument("--smoke", action="store_true",
                             help="short profile with 25 replications")
    return parser


def main(argv: typing.Sequence[str] = None, out: Out = None) -> int:
    out = out or sys.stdout
    args = _parser().parse_args(argv)
    try:
        layers = [load_options(args.config)]
        if getattr(args, "smoke", False):
            layers.append(SMOKE_PROFILE)
        layers.append(parse_overrides(args.overrides))
        options = resolve_options(*layers)
        COMMANDS[args.command][0](options, out)
    except (ConfigError, DataError, SieveError) as err:
        logger.error(str(err))
        return ExitCode.CONFIG_ERROR.value
    except UmprError as err:
        logger.error(str(err))
        return ExitCode.RUNTIME_ERROR.value
    except Exception as err:  # noqa
        logger.exception(f"{args.command} failed: {err}")
        return ExitCode.RUNTIME_ERROR.value
    return ExitCode.OK.value


if __name__ == "__main__":
    sys.exit(main())
