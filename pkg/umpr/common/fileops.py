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

import os

import numpy as np
import pandas as pd
from umpr.common.exceptions import DataError
from umpr.common.schema.dataset import Dataset

__all__ = ("FileOps",)


class FileOps:
    """
    Dataset files: UTF-8 CSV with header `y,x1,...,xd`, labels -1/1 and
    decimal-point covariates, one observation per line.
    Errors name the 1-based data row (the header is not counted).
    """

    @classmethod
    def _check_header(cls, columns, path: str) -> int:
        columns = [str(c).strip() for c in columns]
        if not columns or columns[0] != "y":
            raise DataError(f"{path}: header must start with `y`, "
                            f"got {','.join(columns)!r}")
        for j, name in enumerate(columns[1:], start=1):
            if name != f"x{j}":
                raise DataError(
                    f"{path}: column {j + 1} must be named x{j}, got {name!r}")
        if len(columns) < 2:
            raise DataError(f"{path}: no covariate columns")
        return len(columns) - 1

    @classmethod
    def read_dataset(cls, path: str) -> Dataset:
        if not os.path.isfile(path):
            raise DataError(f"dataset {path} does not exist")
        try:
            frame = pd.read_csv(path, dtype=str, keep_default_na=False,
                                skipinitialspace=True, encoding="utf-8")
        except pd.errors.EmptyDataError:
            raise DataError(f"{path}: no observations")
        except pd.errors.ParserError as err:
            raise DataError(f"{path}: {err}")
        d = cls._check_header(frame.columns, path)
        if frame.empty:
            raise DataError(f"{path}: no observations")

        values = frame.apply(pd.to_numeric, errors="coerce")
        bad = values.isna().any(axis=1).to_numpy()
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise DataError(
                f"{path}: row {i + 1}: cannot parse "
                f"{','.join(frame.iloc[i])!r}", index=i, row=i + 1)
        # to_numeric may round the last digit; float() is correctly rounded
        values = frame.astype(float)
        y = values["y"].to_numpy()
        bad = np.flatnonzero((y != 1) & (y != -1))
        if len(bad):
            i = int(bad[0])
            raise DataError(
                f"{path}: row {i + 1}: label must be -1 or 1, "
                f"got {frame['y'].iloc[i]!r}", index=i, row=i + 1)
        x = values[[f"x{j}" for j in range(1, d + 1)]].to_numpy(dtype=float)
        bad = np.flatnonzero(~np.all(np.isfinite(x), axis=1))
        if len(bad):
            i = int(bad[0])
            raise DataError(f"{path}: row {i + 1}: non-finite covariate",
                            index=i, row=i + 1)
        return Dataset(y=y.astype(np.int64), x=x)

    @classmethod
    def write_dataset(cls, data: Dataset, path: str) -> str:
        frame = pd.DataFrame(
            data.x, columns=[f"x{j}" for j in range(1, data.d + 1)])
        frame.insert(0, "y", data.y)
        dirname = os.path.dirname(path)
        if dirname:
            os.makedirs(dirname, exist_ok=True)
        frame.to_csv(path, index=False, float_format="%.17g",
                     encoding="utf-8")
        return path
