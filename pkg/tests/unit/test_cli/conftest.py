# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

import json
import os

import pytest

from selfaffine import cli

# ==================================================================
# CLI fixtures
# ==================================================================

@pytest.fixture(name="clean_env", autouse=True)
def fixture_clean_env(mocker):
    env = {k: v for k, v in os.environ.items() if not k.startswith("SELFAFFINE_")}
    mocker.patch.dict(os.environ, env, clear=True)


@pytest.fixture(name="mock_meters", autouse=True)
def fixture_mock_meters(mocker):
    mock_configurator = mocker.patch("selfaffine.cli.SelfAffineConfigurator")
    return mock_configurator.return_value.configure.return_value


@pytest.fixture(name="run_json")
def fixture_run_json(capsys):
    """Runs the CLI and returns (exit_code, envelope dict or None)"""

    def _run(*argv):
        exit_code = cli.run(list(argv) + ["--no-timing"])
        out = capsys.readouterr().out
        return exit_code, json.loads(out) if out else None

    return _run


@pytest.fixture(name="run_error")
def fixture_run_error(capsys):
    """Runs the CLI and returns (exit_code, error dict from stderr)"""

    def _run(*argv):
        exit_code = cli.run(list(argv))
        captured = capsys.readouterr()
        assert captured.out == ""
        errors = [line for line in captured.err.splitlines() if line.startswith("{")]
        return exit_code, json.loads(errors[-1])

    return _run
