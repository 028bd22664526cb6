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

import pytest
import yaml
from umpr.command.options import OPTION_SCHEMA
from umpr.command.options import describe_options
from umpr.command.options import find_config
from umpr.command.options import load_options
from umpr.command.options import optimizer_config
from umpr.command.options import parse_overrides
from umpr.command.options import penalty_spec
from umpr.command.options import resolve_options
from umpr.common.class_factory import ClassFactory
from umpr.common.class_factory import ClassType
from umpr.common.config import Config
from umpr.common.config import dump_flat
from umpr.common.config import parse_flat
from umpr.common.constant import PenaltyKind
from umpr.common.constant import SelectionMethod
from umpr.common.exceptions import ConfigError


class TestFlatFormat:

    def test_comments_and_blanks(self):
        raw = parse_flat(["# header", "", "n = 500  # trailing",
                          "estimators = oracle,mu1"])
        assert raw == {"n": "500", "estimators": "oracle,mu1"}

    def test_value_keeps_later_equals(self):
        assert parse_flat(["rule = a=b"]) == {"rule": "a=b"}

    def test_errors_name_the_line(self):
        with pytest.raises(ConfigError, match="x.cfg:2"):
            parse_flat(["n = 1", "oops"], source="x.cfg")
        with pytest.raises(ConfigError, match="empty key"):
            parse_flat([" = 3"])

    def test_dump(self):
        text = dump_flat({"n": "500", "seed": "7"}, prefix="# ")
        assert text == "# n = 500\n# seed = 7\n"
        lines = [line[2:] for line in text.splitlines()]
        assert parse_flat(lines) == {"n": "500", "seed": "7"}


class TestConfigFiles:

    def test_yaml_sections_flatten(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text(yaml.dump({"n": 200, "optimizer": {"restarts": 4}}),
                        encoding="utf-8")
        flat = Config(str(path)).flatten()
        assert flat == {"n": 200, "optimizer.restarts": 4}

    def test_json(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"dgp": "2", "preference": "3"}),
                        encoding="utf-8")
        config = Config(str(path))
        assert config["dgp"] == "2"
        assert config["preference"] == "3"

    def test_sections_are_plain_mappings(self):
        config = Config({"dgp": "2", "optimizer": {"restarts": 4}})
        assert config["optimizer"]["restarts"] == 4
        with pytest.raises(AttributeError):
            getattr(config, "dgp")

    def test_flat_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("n = 100\ncv.folds = 5\n", encoding="utf-8")
        assert load_options(str(path)) == {"n": "100", "cv.folds": "5"}

    def test_not_a_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="mapping"):
            Config(str(path))

    def test_missing(self):
        with pytest.raises(ConfigError, match="not found"):
            find_config("no_such_settings.cfg")

    def test_no_file_is_empty_layer(self):
        assert load_options(None) == {}


class TestResolveOptions:

    def test_defaults(self):
        options = resolve_options()
        assert set(options) == set(OPTION_SCHEMA)
        assert options["n"] == 500
        assert options["k"] == 3
        assert options["method"] == SelectionMethod.UMPR
        assert options["penalty"] == PenaltyKind.VC
        assert options["technical_term"] is True
        assert options["alpha.grid"] == (1.0, 0.5, 0.1, 0.05)
        assert options["seed"] is None
        assert options["bound"] is None
        assert options["threads"] >= 1

    def test_later_layers_win(self):
        options = resolve_options({"n": "100", "m": "4"}, {"n": "50"})
        assert options["n"] == 50
        assert options["m"] == 4

    def test_typed_values_from_yaml(self):
        options = resolve_options({"technical_term": False,
                                   "alpha.grid": [1, 0.1],
                                   "seed": 11})
        assert options["technical_term"] is False
        assert options["alpha.grid"] == (1.0, 0.1)
        assert options["seed"] == 11

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown key") as err:
            resolve_options({"colour": "red"})
        assert err.value.key == "colour"

    @pytest.mark.parametrize("key,value", [
        ("n", "abc"), ("technical_term", "maybe"), ("penalty", "aic"),
        ("method", "grid"), ("alpha", "small"),
    ])
    def test_bad_value(self, key, value):
        with pytest.raises(ConfigError, match=key):
            resolve_options({key: value})

    def test_switch_spellings(self):
        for text in ("on", "TRUE", "yes", "1"):
            assert resolve_options(
                {"technical_term": text})["technical_term"] is True
        for text in ("off", "False", "no", "0"):
            assert resolve_options(
                {"technical_term": text})["technical_term"] is False


class TestOverrides:

    def test_pairs(self):
        raw = parse_overrides(["n=20", "rule=1,1,identity,0.0,1.0"])
        assert raw == {"n": "20", "rule": "1,1,identity,0.0,1.0"}

    def test_malformed(self):
        with pytest.raises(ConfigError, match="key=value"):
            parse_overrides(["n"])


class TestDerivedSettings:

    def test_penalty_spec(self):
        spec = penalty_spec(resolve_options(
            {"penalty": "bc", "m": "3", "alpha": "0.1"}))
        assert spec.kind == PenaltyKind.BC
        assert spec.m == 3
        assert spec.alpha == 0.1

    def test_penalty_spec_rejects_zero_replications(self):
        with pytest.raises(ConfigError):
            penalty_spec(resolve_options({"m": "0"}))

    def test_optimizer_config(self):
        config = optimizer_config(resolve_options(
            {"optimizer.restarts": "2", "optimizer.iterations": "30"}))
        assert config.restarts == 2
        assert config.iterations == 30

    def test_describe_lists_every_key(self):
        text = describe_options()
        for key in OPTION_SCHEMA:
            assert key in text


class TestClassRegistry:

    def test_groups(self):
        groups = {ClassType.OPTIMIZER, ClassType.PENALTY, ClassType.DGP,
                  ClassType.ESTIMATOR}
        assert set(ClassFactory.__registry__) == groups
        assert sorted(ClassFactory.list(ClassType.PENALTY)) == [
            "bc", "md", "rc", "smd", "vc"]

    def test_type_is_required(self):
        with pytest.raises(TypeError):
            ClassFactory.register(alias="anything")
