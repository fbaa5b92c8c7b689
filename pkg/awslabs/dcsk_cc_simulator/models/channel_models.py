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
"""Pydantic models for the Nakagami-m tapped-delay-line channel."""

import numpy as np
from awslabs.dcsk_cc_simulator.consts import NAKAGAMI_MIN_M
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Tuple


class ChannelProfile(BaseModel):
    """Statistical description of one multipath link.

    All paths share the fading factor m and the scale Omega_l = 1/L, so the
    receiver captures unit total power.

    Attributes:
        num_paths: Number of resolvable paths L.
        m: Nakagami fading factor shared by all paths (>= 0.5).
        delays: Integer chip delay of each path, starting at 0 and strictly increasing.
        fading: When False, gains are the deterministic sqrt(Omega_l) (diagnostic mode).
    """
    model_config = ConfigDict(frozen=True)

    num_paths: int = Field(ge=1)
    m: float = Field(ge=NAKAGAMI_MIN_M, allow_inf_nan=False)
    delays: Tuple[int, ...]
    fading: bool = True

    @model_validator(mode='after')
    def validate_delays(self):
        """Validate that the delay profile matches the number of paths.

        Returns:
            The validated model.

        Raises:
            ValueError: If the delay list is inconsistent with the tapped delay line.
        """
        if len(self.delays) != self.num_paths:
            raise ValueError(
                f'Expected {self.num_paths} delays, got {len(self.delays)}'
            )
        if self.delays[0] != 0:
            raise ValueError('The first path delay must be 0')
        if any(b <= a for a, b in zip(self.delays, self.delays[1:])):
            raise ValueError('Path delays must be strictly increasing')
        return self

    @property
    def omega_per_path(self) -> float:
        """Mean power Omega_l = 1/L of each path."""
        return 1.0 / self.num_paths

    @property
    def max_delay(self) -> int:
        """Largest path delay in chips."""
        return self.delays[-1]


class ChannelRealization(BaseModel):
    """Path amplitudes drawn for one or more links.

    Attributes:
        gains: Non-negative path amplitudes alpha_l, shape (..., L).
        delays: Chip delays copied from the profile.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    gains: np.ndarray
    delays: Tuple[int, ...]

    @model_validator(mode='after')
    def validate_gains(self):
        """Validate that the gains are finite magnitudes matching the delays."""
        if self.gains.shape[-1:] != (len(self.delays),):
            raise ValueError('The last axis of gains must have one entry per path')
        if not np.all(np.isfinite(self.gains)) or np.any(self.gains < 0):
            raise ValueError('Path gains must be finite and non-negative')
        return self


class LinkGeometry(BaseModel):
    """Relative terminal distances that set the path loss 1/d**2 of each link type.

    Attributes:
        d_sd: Source to destination distance.
        d_sr: Source to relay (user to user) distance.
        d_rd: Relay to destination distance.
    """
    model_config = ConfigDict(frozen=True)

    d_sd: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    d_sr: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    d_rd: float = Field(default=1.0, gt=0, allow_inf_nan=False)
