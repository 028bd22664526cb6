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

"""Monte Carlo estimate of relative generalized expected utility."""

import io
import time
import typing
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import as_completed

import numpy as np
import pandas as pd
from pydantic import BaseModel
from pydantic import root_validator
from pydantic import validator
from tqdm import tqdm
from umpr.algorithms.optimizer.base import OptimizerConfig
from umpr.common.config import dump_flat
from umpr.common.config import parse_flat
from umpr.common.exceptions import ConfigError
from umpr.common.logger import logging
from umpr.common.schema.preference import Preference
from umpr.common.schema.report import EstimatorSummary
from umpr.common.schema.report import ExperimentReport
from umpr.core.utility import sequential_mean
from umpr.utils.util import child_rng
from umpr.utils.util import fresh_seed

from .dgp import DgpSpec
from .dgp import sample_dgp
from .estimators import DEFAULT_ROSTER
from .estimators import EstimatorBase
from .estimators import ReplicationContext
from .estimators import parse_roster
from .preferences import check_compatible
from .preferences import parse_preference

__all__ = ("ExperimentConfig", "rgeu_experiment", "format_report",
           "write_report", "read_report", "report_columns")

logger = logging.bind(instance="experiment")

# (ratio, chosen degree) per estimator token, None when it failed
Replication = typing.Dict[str, typing.Optional[
    typing.Tuple[float, typing.Optional[int]]]]


def _positive(name: str, v: int, minimum: int = 1) -> int:
    if v < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {v}", key=name)
    return v


class ExperimentConfig(BaseModel):
    dgp: DgpSpec
    preference: str = "1"
    n: int = 500
    out_of_sample: int = 5000
    replications: int = 500
    estimators: typing.Tuple[str, ...] = DEFAULT_ROSTER
    K: int = 3  # noqa
    alpha: float = 0.05
    alpha_grid: typing.Tuple[float, ...] = (1.0, 0.5, 0.1, 0.05)
    m: int = 10
    folds: int = 10
    optimizer: OptimizerConfig = OptimizerConfig()
    lasso_grid: int = 50
    svm_iterations: int = 50000
    svm_grid: int = 10
    seed: typing.Optional[int] = None
    threads: int = 1

    class Config:
        allow_mutation = False

    @validator("dgp", pre=True)
    def _dgp(cls, v):
        return v if isinstance(v, DgpSpec) else DgpSpec(id=v)

    @validator("preference", pre=True)
    def _preference(cls, v):
        text = str(v).strip()
        parse_preference(text)
        return text

    @validator("n")
    def _n(cls, v):
        return _positive("n", v, 2)

    @validator("out_of_sample", "replications", "m", "lasso_grid",
               "svm_iterations", "svm_grid", "threads")
    def _at_least_one(cls, v, field):
        return _positive(field.name, v)

    @validator("folds")
    def _folds(cls, v):
        return _positive("cv.folds", v, 2)

    @validator("estimators", pre=True)
    def _roster(cls, v):
        return tuple(est.token for est in parse_roster(v))

    @validator("K")
    def _truncation(cls, v):  # noqa
        return _positive("hierarchy.K", v)

    @validator("alpha")
    def _alpha(cls, v):
        if not np.isfinite(v) or v < 0:
            raise ConfigError(f"alpha must be >= 0, got {v}", key="alpha")
        return v

    @validator("alpha_grid", pre=True)
    def _alpha_grid(cls, v):
        if isinstance(v, str):
            v = [part for part in v.split(",") if part.strip()]
        grid = tuple(float(a) for a in v)
        if not grid or any(not np.isfinite(a) or a < 0 for a in grid):
            raise ConfigError(f"alpha grid must hold values >= 0, "
                              f"got {grid}", key="alpha.grid")
        return grid

    @root_validator(skip_on_failure=True)
    def _compatible(cls, values):
        check_compatible(values["preference"], values["dgp"].id)
        return values

    @property
    def degrees(self) -> typing.Tuple[int, ...]:
        """F_k = P_k for k < K and P_K beyond"""
        return tuple(range(1, self.K + 1))

    @property
    def pref(self) -> Preference:
        return parse_preference(self.preference)

    def echo(self) -> typing.Dict[str, str]:
        """
        Flat `key = value` form of every setting that affects results;
        `threads` is left out.
        """
        opt = self.optimizer
        echo = {
            "dgp": self.dgp.id,
            "preference": self.preference,
            "n": str(self.n),
            "out_of_sample": str(self.out_of_sample),
            "replications": str(self.replications),
            "estimators": ",".join(self.estimators),
            "hierarchy.K": str(self.K),
            "alpha": repr(self.alpha),
            "alpha.grid": ",".join(repr(a) for a in self.alpha_grid),
            "m": str(self.m),
            "cv.folds": str(self.folds),
            "optimizer.restarts": str(opt.restarts),
            "optimizer.iterations": str(opt.iterations),
            "optimizer.initial_temperature": repr(opt.initial_temperature),
            "optimizer.cooling": repr(opt.cooling),
            "optimizer.step": repr(opt.step),
            "lasso.grid": str(self.lasso_grid),
            "svm.iterations": str(self.svm_iterations),
            "svm.grid": str(self.svm_grid),
        }
        if self.seed is not None:
            echo["seed"] = str(self.seed)
        return echo


def _replicate(config: ExperimentConfig, roster: typing.List[EstimatorBase],
               seed: int, j: int) -> Replication:
    train = sample_dgp(config.dgp, config.n, child_rng(seed, j, "train"))
    test = sample_dgp(config.dgp, config.out_of_sample,
                      child_rng(seed, j, "test"))
    ctx = ReplicationContext(config, j, seed, train, test)
    denominator = ctx.oracle_utility
    if denominator == 0:
        logger.warning(f"replication {j}: oracle test utility is zero, "
                       f"ratios undefined")
        return {est.token: None for est in roster}

    outcomes = {}
    for est in roster:
        try:
            outcome = est.run(ctx)
        except Exception as err:  # noqa
            logger.warning(f"replication {j}: {est.token} failed: {err}")
            outcomes[est.token] = None
            continue
        ratio = outcome.utility / denominator
        if not np.isfinite(ratio):
            logger.warning(f"replication {j}: {est.token} ratio {ratio}")
            outcomes[est.token] = None
            continue
        outcomes[est.token] = (float(ratio), outcome.k)
    return outcomes


def _summarize(token: str, per_replication: typing.Sequence,
               degrees: typing.Sequence[int]) -> EstimatorSummary:
    failed = tuple(j for j, res in enumerate(per_replication) if res is None)
    done = [res for res in per_replication if res is not None]
    ratios = np.array([ratio for ratio, _ in done])
    rgeu = 100 * sequential_mean(ratios) if len(ratios) else np.nan
    se = (100 * np.std(ratios, ddof=1) / np.sqrt(len(ratios))
          if len(ratios) > 1 else np.nan)
    chosen = [k for _, k in done if k is not None]
    frequencies = {}
    if chosen:
        frequencies = {k: 100 * chosen.count(k) / len(chosen)
                       for k in degrees}
    return EstimatorSummary(
        estimator=token, rgeu_pct=float(rgeu), se_pct=float(se),
        successes=len(done), failures=len(failed),
        failed_replications=failed, frequencies=frequencies)


def rgeu_experiment(config: ExperimentConfig,
                    progress: bool = False) -> ExperimentReport:
    """
    Replication j draws its training and test samples and every
    estimator stream from `child_rng(seed, j, ...)`; results are reduced
    in j order, so the report does not depend on `threads`.
    """
    seed = config.seed if config.seed is not None else fresh_seed()
    roster = parse_roster(config.estimators)
    total = config.replications
    logger.info(f"{total} replications of {config.dgp} / preference "
                f"{config.preference}, n={config.n}, "
                f"{len(roster)} estimators, seed {seed}")

    start = time.perf_counter()
    results = {}
    with ThreadPoolExecutor(max_workers=config.threads) as executor:
        todos = {executor.submit(_replicate, config, roster, seed, j): j
                 for j in range(total)}
        for done in tqdm(as_completed(todos), total=total,
                         desc="replications", disable=not progress):
            results[todos[done]] = done.result()
    wall_time = time.perf_counter() - start

    summaries = []
    for est in roster:
        summary = _summarize(
            est.token, [results[j][est.token] for j in range(total)],
            config.degrees)
        if summary.failures:
            logger.warning(f"{est.token}: {summary.failures} of {total} "
                           f"replications failed")
        summaries.append(summary)
    logger.info(f"experiment finished in {wall_time:.1f}s")
    return ExperimentReport(
        config=config.echo(), seed=seed, replications=total,
        estimators=summaries, degrees=config.degrees,
        metadata={"wall_time": wall_time})


def report_columns(degrees: typing.Sequence[int] = (1, 2, 3)
                   ) -> typing.List[str]:
    return (["estimator", "rgeu_pct", "se_pct"]
            + [f"freq_k{k}" for k in degrees] + ["failures"])


def format_report(report: ExperimentReport) -> str:
    """
    Tab separated table under a `# key = value` header echoing the
    resolved config and seed. Wall time is not written.
    """
    header = dump_flat({**report.config, "seed": str(report.seed)},
                       prefix="# ")
    frame = pd.DataFrame(report.rows(),
                         columns=report_columns(report.degrees))
    body = frame.to_csv(sep="\t", index=False, float_format="%.4f",
                        na_rep="")
    return header + body


def write_report(report: ExperimentReport, path: str = None) -> str:
    text = format_report(report)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def read_report(text: str) -> typing.Tuple[typing.Dict[str, str],
                                           pd.DataFrame]:
    """inverse of `format_report`: config echo and the table"""
    lines = text.splitlines()
    echo = parse_flat(
        [line[1:] for line in lines if line.startswith("#")],
        source="<report>")
    table = pd.read_csv(
        io.StringIO("\n".join(ln for ln in lines
                              if not ln.startswith("#"))),
        sep="\t")
    return echo, table
