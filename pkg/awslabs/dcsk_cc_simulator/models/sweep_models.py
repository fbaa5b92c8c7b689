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
"""Pydantic models for Monte Carlo sweeps and the reports built from them."""

import math
import os
from awslabs.dcsk_cc_simulator.consts import (
    DEFAULT_BATCH_PERIODS,
    DEFAULT_BETA,
    DEFAULT_DELAYS,
    DEFAULT_DISTANCE_RD,
    DEFAULT_DISTANCE_SD,
    DEFAULT_DISTANCE_SR,
    DEFAULT_FADING_M,
    DEFAULT_MASTER_SEED,
    DEFAULT_MAX_BITS,
    DEFAULT_MIN_ERRORS,
    DEFAULT_NUM_PATHS,
    DEFAULT_NUM_USERS,
    DEFAULT_WORKERS,
    MIN_MIN_ERRORS,
    NAKAGAMI_MIN_M,
    WORKERS_ENV,
)
from awslabs.dcsk_cc_simulator.models.analysis_models import GammaParams, SystemConfig
from awslabs.dcsk_cc_simulator.models.channel_models import ChannelProfile, LinkGeometry
from awslabs.dcsk_cc_simulator.models.common import (
    BerKernel,
    Combining,
    Experiment,
    RelayModel,
    RelayPolicy,
    SweepSystem,
)
from awslabs.dcsk_cc_simulator.models.modem_models import ModulationConfig
from awslabs.dcsk_cc_simulator.services.dcsk_common import db_to_linear, is_strictly_increasing
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing import Dict, List, Optional, Tuple


class SweepConfig(BaseModel):
    """Configuration of an Eb/N0 sweep over one or more system variants.

    Attributes:
        systems: System variants to evaluate.
        num_users: Number of users N.
        beta: Sub-spreading factor.
        m: Nakagami fading factor.
        num_paths: Number of paths L.
        d_sd: Source to destination distance.
        d_sr: Source to relay distance.
        d_rd: Relay to destination distance.
        delays: Chip delay of each path.
        eb_n0_grid_db: Strictly increasing Eb/N0 grid in dB.
        min_errors: Destination errors (summed over users) that end a simulated point.
        max_bits: Destination bits after which a simulated point ends regardless.
        master_seed: Seed every random stream of the sweep is derived from.
        workers: Parallel worker processes (default from DCSK_WORKERS, else 1).
        batch_periods: Transmission periods simulated per replication.
        noiseless: Run with n0 = 0 (diagnostic).
        relay_policy: What relays forward in the second phase.
        combining: Whether the destination drops the phase-2 metric of users no relay forwarded.
        record_wall_time: When False, wall time is reported as 0 so output is byte-identical.
    """
    model_config = ConfigDict(frozen=True)

    systems: List[SweepSystem] = Field(
        default_factory=lambda: [SweepSystem.CC_SIM, SweepSystem.CC_ANALYTICAL], min_length=1
    )
    num_users: int = Field(default=DEFAULT_NUM_USERS, ge=1)
    beta: int = Field(default=DEFAULT_BETA, ge=2)
    m: float = Field(default=DEFAULT_FADING_M, ge=NAKAGAMI_MIN_M, allow_inf_nan=False)
    num_paths: int = Field(default=DEFAULT_NUM_PATHS, ge=1)
    d_sd: float = Field(default=DEFAULT_DISTANCE_SD, gt=0, allow_inf_nan=False)
    d_sr: float = Field(default=DEFAULT_DISTANCE_SR, gt=0, allow_inf_nan=False)
    d_rd: float = Field(default=DEFAULT_DISTANCE_RD, gt=0, allow_inf_nan=False)
    delays: Tuple[int, ...] = DEFAULT_DELAYS
    eb_n0_grid_db: List[float] = Field(min_length=1)
    min_errors: int = Field(default=DEFAULT_MIN_ERRORS, ge=MIN_MIN_ERRORS)
    max_bits: int = Field(default=DEFAULT_MAX_BITS, ge=1)
    master_seed: int = Field(default=DEFAULT_MASTER_SEED, ge=0, le=2**64 - 1)
    workers: int = Field(
        default_factory=lambda: int(os.getenv(WORKERS_ENV, DEFAULT_WORKERS)), ge=1
    )
    batch_periods: int = Field(default=DEFAULT_BATCH_PERIODS, ge=1)
    noiseless: bool = False
    relay_policy: RelayPolicy = RelayPolicy.PER_USER
    combining: Combining = Combining.BLIND
    record_wall_time: bool = True

    @field_validator('eb_n0_grid_db')
    @classmethod
    def grid_must_increase(cls, v: List[float]) -> List[float]:
        """Validate that the Eb/N0 grid is finite and strictly increasing.

        Args:
            v: The grid in dB.

        Returns:
            The validated grid.

        Raises:
            ValueError: If the grid has non-finite or non-increasing values.
        """
        if not all(math.isfinite(x) for x in v):
            raise ValueError('Eb/N0 grid values must be finite')
        if not is_strictly_increasing(v):
            raise ValueError('Eb/N0 grid must be strictly increasing')
        return v

    @model_validator(mode='after')
    def validate_system(self):
        """Validate cross-field consistency of the system description.

        Returns:
            The validated model.

        Raises:
            ValueError: If the user count, delays, or systems are inconsistent.
        """
        if len(self.delays) != self.num_paths:
            raise ValueError(f'Expected {self.num_paths} delays, got {len(self.delays)}')
        if any(s.is_cooperative for s in self.systems) and self.num_users < 2:
            raise ValueError('Cooperative systems need at least 2 users')
        if self.delays[-1] >= self.beta:
            raise ValueError('Path delays must stay below the sub-segment length beta')
        ModulationConfig(num_users=self.num_users, beta=self.beta)
        return self

    def modulation(self) -> ModulationConfig:
        """Return the frame geometry."""
        return ModulationConfig(num_users=self.num_users, beta=self.beta)

    def channel_profile(self) -> ChannelProfile:
        """Return the per-link channel profile."""
        return ChannelProfile(num_paths=self.num_paths, m=self.m, delays=self.delays)

    def geometry(self) -> LinkGeometry:
        """Return the link distances."""
        return LinkGeometry(d_sd=self.d_sd, d_sr=self.d_sr, d_rd=self.d_rd)

    def system_config(self, eb_n0_db: float, system: SweepSystem) -> SystemConfig:
        """Return the analytical configuration of an analytical system at one grid point.

        Args:
            eb_n0_db: Eb/N0 in dB.
            system: CC_ANALYTICAL or CC_ANALYTICAL_EXACT.

        The exact variant also carries the path delays, so its link SNRs include
        the carrier cross-correlation of delayed paths.

        Returns:
            The matching SystemConfig.
        """
        exact = system is SweepSystem.CC_ANALYTICAL_EXACT
        return SystemConfig(
            num_users=self.num_users,
            beta=self.beta,
            m=self.m,
            num_paths=self.num_paths,
            geometry=self.geometry(),
            eb_over_n0=db_to_linear(eb_n0_db),
            kernel=BerKernel.EXACT if exact else BerKernel.GAUSSIAN,
            relay_model=RelayModel.PER_RELAY if exact else RelayModel.ALL_OR_NOTHING,
            destination_branches=2 if exact else 1,
            delays=self.delays if exact else None,
            combining=self.combining,
        )


class SweepPoint(BaseModel):
    """Result of one system at one grid point.

    Attributes:
        eb_n0_db: Eb/N0 in dB.
        system: System variant.
        ber: Bit error rate (simulated estimate or analytical value).
        stderr: Standard error sqrt(BER (1 - BER) / bits); 0 for analytical systems.
        bits: Destination bits simulated (0 for analytical systems).
        errors: Destination errors counted (0 for analytical systems).
        throughput: Normalized throughput 1 - BER.
        wall_ms: Wall time spent on the point in milliseconds.
        per_user_errors: Destination errors of each user (simulated systems only).
    """
    eb_n0_db: float
    system: SweepSystem
    ber: float = Field(ge=0, le=1)
    stderr: float = Field(default=0.0, ge=0)
    bits: int = Field(default=0, ge=0)
    errors: int = Field(default=0, ge=0)
    throughput: float = Field(ge=0, le=1)
    wall_ms: float = Field(default=0.0, ge=0)
    per_user_errors: List[int] = Field(default_factory=list)

    @model_validator(mode='after')
    def validate_counts(self):
        """Validate that errors never exceed bits."""
        if self.errors > self.bits:
            raise ValueError('errors must not exceed bits')
        return self


class SweepResult(BaseModel):
    """All points of a sweep, in grid order then system order.

    Attributes:
        config: The configuration that produced the result.
        points: One entry per (grid point, system).
    """
    config: SweepConfig
    points: List[SweepPoint] = Field(default_factory=list)

    @property
    def grid(self) -> List[float]:
        """The Eb/N0 grid in dB."""
        return list(self.config.eb_n0_grid_db)

    def curve(self, system: SweepSystem) -> List[float]:
        """Return the BER of one system across the grid.

        Args:
            system: The system variant.

        Returns:
            BER values in grid order.

        Raises:
            KeyError: If the system was not part of the sweep.
        """
        values = [p.ber for p in self.points if p.system == system]
        if not values:
            raise KeyError(f'System {system.value} not present in sweep result')
        return values

    def curves(self) -> Dict[SweepSystem, List[float]]:
        """Return the BER curve of every swept system."""
        return {s: self.curve(s) for s in self.config.systems}


class ThroughputRow(BaseModel):
    """Normalized throughput of the compared systems at one grid point.

    Attributes:
        eb_n0_db: Eb/N0 in dB.
        eta_cc: Throughput of the cooperative system.
        eta_nc: Throughput of the non-cooperative system, if a curve was supplied.
        eta_mimo: Throughput of the multi-antenna relay system, if a curve was supplied.
        crossover: True where eta_cc - eta_nc changes sign relative to the previous point.
    """
    eb_n0_db: float
    eta_cc: float = Field(ge=0, le=1)
    eta_nc: Optional[float] = Field(default=None, ge=0, le=1)
    eta_mimo: Optional[float] = Field(default=None, ge=0, le=1)
    crossover: bool = False


class PdfValidationReport(BaseModel):
    """Outcome of checking the sum-of-gammas density against sampled sums.

    Attributes:
        p2: First summand.
        p3: Second summand.
        samples: Number of sampled sums.
        bins: Number of equiprobable histogram bins.
        integrated_abs_error: Sum over bins of |empirical mass - model mass|.
        tolerance: Pass threshold for the integrated absolute error.
        density_bins: Number of uniform bins of the density comparison.
        density_abs_error: Integral of |histogram density - sum_gamma_pdf| over those bins.
        density_max_z: Largest standardized gap between a bin count and the density's
            expected count.
        density_z_limit: Pass threshold for density_max_z.
        passed: Whether both the mass and the density check pass.
        series_terms: Terms used by the series (1 on the equal-scale branch).
        residual: Mixture weight outside the retained series terms.
    """
    p2: GammaParams
    p3: GammaParams
    samples: int
    bins: int
    integrated_abs_error: float
    tolerance: float
    density_bins: int
    density_abs_error: float
    density_max_z: float
    density_z_limit: float
    passed: bool
    series_terms: int
    residual: float


class FadingGainRow(BaseModel):
    """Eb/N0 needed by the cooperative system at one fading factor.

    Attributes:
        m: Nakagami fading factor.
        target_ber: BER the row is solved for.
        eb_n0_db: Required Eb/N0 in dB.
        gain_db: Improvement over the previous (smaller) m in the table, None for the first row.
    """
    m: float
    target_ber: float = Field(gt=0, lt=0.5)
    eb_n0_db: float
    gain_db: Optional[float] = None


class ReproductionResult(BaseModel):
    """Everything one preset experiment produced.

    Attributes:
        experiment: The preset that was run.
        sweeps: Sweep results, one per configuration of the preset.
        throughput: Throughput table (throughput preset only).
        gain_table: Fading-depth gain rows (fading preset only).
    """
    experiment: Experiment
    sweeps: List[SweepResult] = Field(default_factory=list)
    throughput: List[ThroughputRow] = Field(default_factory=list)
    gain_table: List[FadingGainRow] = Field(default_factory=list)
