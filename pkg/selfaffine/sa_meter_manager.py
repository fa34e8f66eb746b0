# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

import logging

from opentelemetry.metrics import get_meter

from selfaffine.sa_constants import INTL_SA_METER_NAME

logger = logging.getLogger(__name__)


class SelfAffineMeterManager:
    """selfaffine CLI Meter Manager"""

    def __init__(self) -> None:
        # Returns named `Meter` to handle instrument creation.
        # A convenience wrapper for MeterProvider.get_meter
        self.meter = get_meter(INTL_SA_METER_NAME)

        self.command_duration = self.meter.create_histogram(
            name="selfaffine.command.duration",
            description="measures the wall time of one CLI command",
            unit="ms",
        )
        self.classification_count = self.meter.create_counter(
            name="selfaffine.classification.count",
            description="counts derivative classifications by tag",
        )

    def record_command(self, command: str, duration_ms: float, exit_code: int) -> None:
        self.command_duration.record(
            duration_ms,
            {"command": command, "exit_code": exit_code},
        )

    def record_classification(self, tag: str) -> None:
        self.classification_count.add(1, {"tag": tag})
