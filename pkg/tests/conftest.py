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
"""Test fixtures for the dcsk-cc-simulator tests."""

import numpy as np
import pytest
import tempfile
from awslabs.dcsk_cc_simulator.models import (
    ChannelProfile,
    LinkGeometry,
    ModulationConfig,
    SystemConfig,
    WalshMatrix,
)
from awslabs.dcsk_cc_simulator.services import walsh
from awslabs.dcsk_cc_simulator.services.dcsk_common import derive_rng
from typing import Generator
from unittest.mock import AsyncMock


@pytest.fixture
def temp_workspace_dir() -> Generator[str, None, None]:
    """Create a temporary directory for CSV output."""
    with tempfile.TemporaryDirectory() as temp_dir:
        yield temp_dir


@pytest.fixture
def rng() -> np.random.Generator:
    """Return a seeded random stream."""
    return derive_rng(12345, 0)


@pytest.fixture
def walsh_n4() -> WalshMatrix:
    """Return the 8x8 Walsh matrix of the 4-user system."""
    return walsh.generate(3)


@pytest.fixture
def modulation_n4() -> ModulationConfig:
    """Return the 4-user frame geometry with beta = 32."""
    return ModulationConfig(num_users=4, beta=32)


@pytest.fixture
def iv_system_config() -> SystemConfig:
    """Return the reference configuration at Eb/N0 = 10 (linear)."""
    return SystemConfig(
        num_users=4,
        beta=32,
        m=2.0,
        num_paths=2,
        geometry=LinkGeometry(),
        eb_over_n0=10.0,
    )


@pytest.fixture
def flat_profile() -> ChannelProfile:
    """Return the flat unit channel: one path, fading off."""
    return ChannelProfile(num_paths=1, m=1.0, delays=(0,), fading=False)


@pytest.fixture
def mock_context() -> AsyncMock:
    """Create a mock MCP context for testing."""
    context = AsyncMock()
    context.error = AsyncMock()
    return context
