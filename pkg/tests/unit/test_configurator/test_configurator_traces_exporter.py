# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

from selfaffine import configurator

# otel fixtures
from .fixtures.trace import get_trace_mocks


class TestConfiguratorTracesExporter:

    def test_configure_traces_exporter(
        self,
        mocker,
        mock_tracerprovider,
        mock_span_processor,
        mock_span_exporter,
    ):
        trace_mocks = get_trace_mocks(mocker)
        mock_sys = mocker.patch("selfaffine.configurator.sys")
        mock_resource = mocker.Mock()

        configurator.SelfAffineConfigurator()._configure_traces_exporter(mock_resource)

        mock_tracerprovider.assert_called_once_with(resource=mock_resource)
        mock_span_exporter.assert_called_once_with(out=mock_sys.stderr)
        mock_span_processor.assert_called_once_with(mock_span_exporter.return_value)
        mock_tracerprovider.return_value.add_span_processor.assert_called_once_with(
            mock_span_processor.return_value
        )
        trace_mocks.set_tracer_provider.assert_called_once_with(
            mock_tracerprovider.return_value
        )
