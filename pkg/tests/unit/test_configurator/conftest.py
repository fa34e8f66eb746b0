# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

import pytest

from selfaffine import configurator

# ==================================================================
# Configurator state fixtures
# ==================================================================

@pytest.fixture(name="unconfigured", autouse=True)
def fixture_unconfigured(mocker):
    mocker.patch.object(configurator.SelfAffineConfigurator, "_configured", False)


@pytest.fixture(name="mock_config_console")
def fixture_mock_config_console(mocker):
    mock_config = mocker.Mock()
    mock_config.configure_mock(**{"get": mocker.Mock(return_value="console")})
    return mock_config


@pytest.fixture(name="mock_config_none")
def fixture_mock_config_none(mocker):
    mock_config = mocker.Mock()
    mock_config.configure_mock(**{"get": mocker.Mock(return_value="none")})
    return mock_config

# ==================================================================
# Configurator Otel fixtures
# ==================================================================

@pytest.fixture(name="mock_tracerprovider")
def fixture_mock_tracerprovider(mocker):
    return mocker.patch("selfaffine.configurator.TracerProvider")


@pytest.fixture(name="mock_span_processor")
def fixture_mock_span_processor(mocker):
    return mocker.patch("selfaffine.configurator.SimpleSpanProcessor")


@pytest.fixture(name="mock_span_exporter")
def fixture_mock_span_exporter(mocker):
    return mocker.patch("selfaffine.configurator.ConsoleSpanExporter")


@pytest.fixture(name="mock_meterprovider")
def fixture_mock_meterprovider(mocker):
    return mocker.patch("selfaffine.configurator.MeterProvider")


@pytest.fixture(name="mock_pemreader")
def fixture_mock_pemreader(mocker):
    return mocker.patch("selfaffine.configurator.PeriodicExportingMetricReader")


@pytest.fixture(name="mock_metric_exporter")
def fixture_mock_metric_exporter(mocker):
    return mocker.patch("selfaffine.configurator.ConsoleMetricExporter")


@pytest.fixture(name="mock_logging_instrumentor")
def fixture_mock_logging_instrumentor(mocker):
    return mocker.patch("selfaffine.configurator.LoggingInstrumentor")


@pytest.fixture(name="mock_meter_manager")
def fixture_mock_meter_manager(mocker):
    return mocker.patch("selfaffine.configurator.SelfAffineMeterManager")
