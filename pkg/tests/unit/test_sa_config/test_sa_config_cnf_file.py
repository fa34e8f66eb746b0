# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

import os

from selfaffine import sa_config

# pylint: disable=unused-import
from .fixtures.cnf_file import (
    fixture_cnf_file,
    fixture_cnf_file_invalid_json,
    fixture_cnf_file_not_object,
)
from .fixtures.env_vars import fixture_clean_env


# pylint:disable=unused-argument
class TestSelfAffineConfigCnfFile:

    def test_get_cnf_dict_default_path_no_file(self, clean_env, mocker):
        mocker.patch("selfaffine.sa_config.os.path.isfile", return_value=False)
        test_config = sa_config.SelfAffineConfig()
        assert test_config.get_cnf_dict() is None
        assert test_config["graph_depth_cap"] == 12

    def test_get_cnf_dict_custom_path_no_file(self, clean_env, mocker):
        mocker.patch.dict(os.environ, {"SELFAFFINE_CONFIG_FILE": "nothing-is-here"})
        mock_error = mocker.patch("selfaffine.sa_config.logger.error")
        test_config = sa_config.SelfAffineConfig()
        assert test_config.get_cnf_dict() is None
        assert mock_error.call_count == 2

    def test_get_cnf_dict(self, clean_env, cnf_file, mocker):
        mocker.patch.dict(os.environ, {"SELFAFFINE_CONFIG_FILE": "selfaffine-config.json"})
        test_config = sa_config.SelfAffineConfig()
        assert test_config.get_cnf_dict() == {
            "graphDepthCap": 9,
            "approxDps": 50,
            "telemetryExporter": "console",
        }

    def test_update_with_cnf_file(self, clean_env, cnf_file, mocker):
        mocker.patch.dict(os.environ, {"SELFAFFINE_CONFIG_FILE": "selfaffine-config.json"})
        test_config = sa_config.SelfAffineConfig()
        assert test_config["graph_depth_cap"] == 9
        assert test_config["approx_dps"] == 50
        assert test_config["telemetry_exporter"] == "console"

    def test_env_var_overrides_cnf_file(self, clean_env, cnf_file, mocker):
        mocker.patch.dict(
            os.environ,
            {
                "SELFAFFINE_CONFIG_FILE": "selfaffine-config.json",
                "SELFAFFINE_GRAPH_DEPTH_CAP": "7",
            },
        )
        test_config = sa_config.SelfAffineConfig()
        assert test_config["graph_depth_cap"] == 7
        assert test_config["approx_dps"] == 50

    def test_get_cnf_dict_not_valid_json(self, clean_env, cnf_file_invalid_json, mocker):
        mocker.patch.dict(os.environ, {"SELFAFFINE_CONFIG_FILE": "selfaffine-config.json"})
        test_config = sa_config.SelfAffineConfig()
        assert test_config.get_cnf_dict() is None
        assert test_config["graph_depth_cap"] == 12

    def test_get_cnf_dict_not_object(self, clean_env, cnf_file_not_object, mocker):
        mocker.patch.dict(os.environ, {"SELFAFFINE_CONFIG_FILE": "selfaffine-config.json"})
        test_config = sa_config.SelfAffineConfig()
        assert test_config.get_cnf_dict() is None
