# Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved.
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
"""Models package for the DCSK cooperative simulator."""

from awslabs.dcsk_cc_simulator.models.analysis_models import (
    GammaParams,
    MoschopoulosSeries,
    SystemConfig,
)
from awslabs.dcsk_cc_simulator.models.channel_models import (
    ChannelProfile,
    ChannelRealization,
    LinkGeometry,
)
from awslabs.dcsk_cc_simulator.models.common import (
    BerKernel,
    Combining,
    Experiment,
    RelayModel,
    RelayPolicy,
    SweepSystem,
    ThroughputSystem,
)
from awslabs.dcsk_cc_simulator.models.cooperation_models import (
    EnergyPolicy,
    NoiseConfig,
    PeriodOutcome,
)
from awslabs.dcsk_cc_simulator.models.modem_models import (
    DetectionResult,
    Frame,
    ModulationConfig,
    WalshMatrix,
)
from awslabs.dcsk_cc_simulator.models.sweep_models import (
    FadingGainRow,
    PdfValidationReport,
    ReproductionResult,
    SweepConfig,
    SweepPoint,
    SweepResult,
    ThroughputRow,
)


__all__ = [
    # Shared enums
    'BerKernel',
    'Combining',
    'Experiment',
    'RelayModel',
    'RelayPolicy',
    'SweepSystem',
    'ThroughputSystem',
    # Modem
    'WalshMatrix',
    'ModulationConfig',
    'Frame',
    'DetectionResult',
    # Channel
    'ChannelProfile',
    'ChannelRealization',
    'LinkGeometry',
    # Cooperation
    'EnergyPolicy',
    'NoiseConfig',
    'PeriodOutcome',
    # Analysis
    'GammaParams',
    'MoschopoulosSeries',
    'SystemConfig',
    # Sweeps
    'SweepConfig',
    'SweepPoint',
    'SweepResult',
    'ThroughputRow',
    'PdfValidationReport',
    'FadingGainRow',
    'ReproductionResult',
]
