# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

import os
from unittest import mock

from opentelemetry.test.test_base import TestBase

from selfaffine import cli


class TestCliTelemetry(TestBase):
    """Spans and metrics of CLI commands against in-memory providers"""

    def setUp(self):
        super().setUp()
        env = {k: v for k, v in os.environ.items() if not k.startswith("SELFAFFINE_")}
        self.env_patch = mock.patch.dict(os.environ, env, clear=True)
        self.env_patch.start()
        self.stdout_patch = mock.patch("sys.stdout")
        self.stdout_patch.start()

    def tearDown(self):
        self.stdout_patch.stop()
        self.env_patch.stop()
        super().tearDown()

    def _metric_names(self):
        data = self.memory_metrics_reader.get_metrics_data()
        if data is None:
            return set()
        return {
            metric.name
            for resource_metrics in data.resource_metrics
            for scope_metrics in resource_metrics.scope_metrics
            for metric in scope_metrics.metrics
        }

    def test_command_span(self):
        assert cli.run(["eval", "--a", "1/2", "--x", "1/4", "--no-timing"]) == 0
        spans = self.memory_exporter.get_finished_spans()
        assert len(spans) == 1
        span = spans[0]
        assert span.name == "selfaffine.eval"
        assert span.attributes["selfaffine.command"] == "eval"
        assert span.attributes["selfaffine.input.a"] == "1/2"
        assert span.attributes["selfaffine.input.x"] == "0.(02)"

    def test_error_still_ends_span(self):
        assert cli.run(["eval", "--a", "3/2", "--x", "1/4"]) == 3
        spans = self.memory_exporter.get_finished_spans()
        assert [span.name for span in spans] == ["selfaffine.eval"]

    def test_classification_metrics(self):
        assert cli.run(["classify", "--a", "3/5", "--x", "3/4", "--no-timing"]) == 0
        assert {
            "selfaffine.command.duration",
            "selfaffine.classification.count",
        } <= self._metric_names()

    def test_usage_error_has_no_span(self):
        with mock.patch("sys.stderr"):
            assert cli.run(["eval", "--a", "1/2"]) == 2
        assert not self.memory_exporter.get_finished_spans()
