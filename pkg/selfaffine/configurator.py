# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

"""Module to initialize OpenTelemetry SDK components for the selfaffine CLI"""

import logging
import sys

from opentelemetry import metrics, trace
from opentelemetry.instrumentation.logging import LoggingInstrumentor
from opentelemetry.sdk.metrics import MeterProvider
from opentelemetry.sdk.metrics.export import (
    ConsoleMetricExporter,
    PeriodicExportingMetricReader,
)
from opentelemetry.sdk.resources import SERVICE_NAME, Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import (
    ConsoleSpanExporter,
    SimpleSpanProcessor,
)

from selfaffine.sa_config import SelfAffineConfig
from selfaffine.sa_meter_manager import SelfAffineMeterManager
from selfaffine.version import __version__

logger = logging.getLogger(__name__)


class SelfAffineConfigurator:
    """Installs SDK tracer and meter providers when telemetry is enabled.

    With the default exporter "none" the OpenTelemetry API keeps its no-op
    providers and spans cost nothing. All exporters write to stderr.
    """

    _configured = False

    def configure(self, sa_config: SelfAffineConfig) -> SelfAffineMeterManager:
        """Configure OTel components per config and return the CLI meter manager"""
        exporter = sa_config.get("telemetry_exporter", "none")
        if exporter == "console" and not SelfAffineConfigurator._configured:
            resource = self._resource()
            self._configure_traces_exporter(resource)
            self._configure_metrics_exporter(resource)
            self._configure_logging_instrumentor()
            SelfAffineConfigurator._configured = True
        elif exporter != "console":
            logger.debug("Telemetry exporter is %s; keeping no-op providers", exporter)
        return SelfAffineMeterManager()

    def _resource(self) -> Resource:
        return Resource.create(
            {
                SERVICE_NAME: "selfaffine",
                "service.version": __version__,
            }
        )

    def _configure_traces_exporter(self, resource: Resource) -> None:
        """Console span exporter behind a SimpleSpanProcessor, so spans flush per command"""
        provider = TracerProvider(resource=resource)
        provider.add_span_processor(
            SimpleSpanProcessor(ConsoleSpanExporter(out=sys.stderr))
        )
        trace.set_tracer_provider(provider)
        logger.debug("Configured console span exporter")

    def _configure_metrics_exporter(self, resource: Resource) -> None:
        logger.debug("Creating PeriodicExportingMetricReader using console")
        reader = PeriodicExportingMetricReader(
            ConsoleMetricExporter(out=sys.stderr)
        )
        metrics.set_meter_provider(
            MeterProvider(
                resource=resource,
                metric_readers=[reader],
            )
        )

    def _configure_logging_instrumentor(self) -> None:
        # log records gain otelTraceID/otelSpanID; the package format is kept
        LoggingInstrumentor().instrument(set_logging_format=False)
