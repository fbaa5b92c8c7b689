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
"""Pydantic models for the two-phase cooperative protocol."""

import numpy as np
from awslabs.dcsk_cc_simulator.services.dcsk_common import db_to_linear
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Literal, Optional


class EnergyPolicy(BaseModel):
    """Uniform energy allocation over the two transmission phases.

    Attributes:
        eb: Energy per information bit per user.
        num_users: Number of users N.
        phase1_fraction: Share of Eb spent on the own frame in the first phase.
    """
    model_config = ConfigDict(frozen=True)

    eb: float = Field(ge=0, allow_inf_nan=False)
    num_users: int = Field(ge=1)

    phase1_fraction: Literal[0.5] = 0.5

    @property
    def phase1_frame_energy(self) -> float:
        """Energy of a user's own frame in the first phase, Eb/2."""
        return self.eb * self.phase1_fraction

    @property
    def per_relayed_user(self) -> float:
        """Energy a relay spends on each forwarded user, Eb / (2(N - 1))."""
        if self.num_users < 2:
            return 0.0
        return self.eb * (1.0 - self.phase1_fraction) / (self.num_users - 1)

    @property
    def nc_frame_energy(self) -> float:
        """Energy of a direct non-cooperative frame, Eb."""
        return self.eb


class NoiseConfig(BaseModel):
    """White Gaussian noise level, N0/2 per real chip.

    Attributes:
        n0: Noise spectral level N0 (0 disables noise).
        eb_over_n0_db: The sweep control parameter this level was derived from, if any.
    """
    model_config = ConfigDict(frozen=True)

    n0: float = Field(ge=0, allow_inf_nan=False)
    eb_over_n0_db: Optional[float] = None

    @classmethod
    def from_eb_n0_db(cls, eb: float, eb_over_n0_db: float) -> 'NoiseConfig':
        """Derive the noise level that gives the requested Eb/N0.

        Args:
            eb: Energy per information bit.
            eb_over_n0_db: Target Eb/N0 in dB.

        Returns:
            The corresponding noise configuration.
        """
        return cls(n0=eb / db_to_linear(eb_over_n0_db), eb_over_n0_db=eb_over_n0_db)

    @classmethod
    def noiseless(cls) -> 'NoiseConfig':
        """Return the n0 = 0 diagnostic configuration."""
        return cls(n0=0.0)


class PeriodOutcome(BaseModel):
    """Destination decisions and relay bookkeeping for P transmission periods.

    Attributes:
        decided_bits: Destination decisions, shape (P, N).
        true_bits: Transmitted bits, shape (P, N).
        relay_decode_flags: Whether relay K decoded user k correctly, shape (P, N, N - 1);
            column j of relay K refers to the j-th user other than K. Empty for the
            non-cooperative system.
        metrics_phase1: Destination GML metric pairs from the first phase, shape (P, N, 2).
        metrics_phase2: Destination GML metric pairs from the second phase, shape (P, N, 2),
            or None for the non-cooperative system.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    decided_bits: np.ndarray
    true_bits: np.ndarray
    relay_decode_flags: np.ndarray
    metrics_phase1: np.ndarray
    metrics_phase2: Optional[np.ndarray] = None

    @model_validator(mode='after')
    def validate_shapes(self):
        """Validate that decisions and ground truth line up."""
        if self.decided_bits.shape != self.true_bits.shape or self.decided_bits.ndim != 2:
            raise ValueError('decided_bits and true_bits must both have shape (P, N)')
        return self

    @property
    def num_periods(self) -> int:
        """Number of periods P."""
        return self.decided_bits.shape[0]

    @property
    def num_users(self) -> int:
        """Number of users N."""
        return self.decided_bits.shape[1]

    @property
    def bits(self) -> int:
        """Destination bits decided, P * N."""
        return int(self.decided_bits.size)

    def errors_per_user(self) -> np.ndarray:
        """Count destination errors for each user."""
        return np.sum(self.decided_bits != self.true_bits, axis=0)

    def errors(self) -> int:
        """Count destination errors over all users."""
        return int(np.sum(self.decided_bits != self.true_bits))

    def relay_failures(self) -> int:
        """Count relay decode failures over all relay/user pairs."""
        return int(np.sum(~self.relay_decode_flags))

    def period(self, index: int) -> 'PeriodOutcome':
        """Return the outcome of a single period, keeping the (1, N) leading shape."""
        window = slice(index, index + 1)
        return PeriodOutcome(
            decided_bits=self.decided_bits[window],
            true_bits=self.true_bits[window],
            relay_decode_flags=self.relay_decode_flags[window],
            metrics_phase1=self.metrics_phase1[window],
            metrics_phase2=None if self.metrics_phase2 is None else self.metrics_phase2[window],
        )
