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
"""Pydantic models for the closed-form and series BER analysis."""

import numpy as np
from awslabs.dcsk_cc_simulator.consts import NAKAGAMI_MIN_M
from awslabs.dcsk_cc_simulator.models.channel_models import LinkGeometry
from awslabs.dcsk_cc_simulator.models.common import BerKernel, Combining, RelayModel
from awslabs.dcsk_cc_simulator.services.dcsk_common import db_to_linear
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Optional, Tuple


class GammaParams(BaseModel):
    """Shape/scale pair of a gamma-distributed link SNR, G(x, y).

    Attributes:
        shape: Shape parameter x.
        scale: Scale parameter y.
    """
    model_config = ConfigDict(frozen=True)

    shape: float = Field(gt=0, allow_inf_nan=False)
    scale: float = Field(gt=0, allow_inf_nan=False)

    @property
    def mean(self) -> float:
        """Mean SNR, shape * scale."""
        return self.shape * self.scale

    @property
    def variance(self) -> float:
        """SNR variance, shape * scale**2."""
        return self.shape * self.scale**2


class MoschopoulosSeries(BaseModel):
    """Truncated single-gamma-family expansion of a sum of independent gammas.

    The density is C * sum_i xi_i * g(x; rho + i, y0), where g is the gamma
    density with the given shape and scale, so C * xi_i are mixture weights.
    Weights are kept as logarithms because C underflows for widely separated
    scales while the weights themselves stay representable.

    Attributes:
        components: The summed gamma variates that were kept.
        log_c: Natural log of the leading coefficient C = prod_k (y0 / y_k)**x_k.
        rho: Total shape, sum_k x_k.
        y0: Smallest scale.
        log_weights: Natural log of the mixture weights C * xi_i, i = 0 .. K-1.
        z: Auxiliary sequence z_1 .. z_{K-1}.
        terms: Number of retained terms K.
        residual: Mixture weight not represented by the retained terms, 1 - C * sum(xi).
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    components: Tuple[GammaParams, ...]
    log_c: float = Field(le=0)
    rho: float = Field(gt=0)
    y0: float = Field(gt=0)
    log_weights: np.ndarray
    z: np.ndarray
    terms: int = Field(ge=1)
    residual: float

    @property
    def c(self) -> float:
        """Leading coefficient C (0.0 if it underflows)."""
        return float(np.exp(self.log_c))

    @property
    def weights(self) -> np.ndarray:
        """Mixture weights C * xi_i."""
        return np.exp(self.log_weights)

    @property
    def xi(self) -> np.ndarray:
        """Coefficients xi_i, with xi_0 = 1."""
        return np.exp(self.log_weights - self.log_c)


class SystemConfig(BaseModel):
    """Parameters of one analytical evaluation of the cooperative system.

    Attributes:
        num_users: Number of users N.
        beta: Sub-spreading factor.
        m: Nakagami fading factor.
        num_paths: Number of paths L.
        geometry: Relative link distances.
        eb_over_n0: Eb/N0 on a linear scale.
        kernel: Conditional BER kernel.
        relay_model: How relay failures combine into the system BER.
        destination_branches: Metric-level EGC branches at the destination (1 for the Gaussian analysis).
        delays: Chip delay of each path. When set, link SNRs include the carrier
            cross-correlation and sub-segment boundary leakage of delayed paths.
        combining: Whether the destination drops the phase-2 metric of users no relay forwarded.
    """
    model_config = ConfigDict(frozen=True)

    num_users: int = Field(ge=1)
    beta: int = Field(ge=2)
    m: float = Field(ge=NAKAGAMI_MIN_M, allow_inf_nan=False)
    num_paths: int = Field(ge=1)
    geometry: LinkGeometry = Field(default_factory=LinkGeometry)
    eb_over_n0: float = Field(gt=0, allow_inf_nan=False)
    kernel: BerKernel = BerKernel.GAUSSIAN
    relay_model: RelayModel = RelayModel.ALL_OR_NOTHING
    destination_branches: int = Field(default=1, ge=1, le=2)
    delays: Optional[Tuple[int, ...]] = None
    combining: Combining = Combining.BLIND

    @model_validator(mode='after')
    def validate_delays(self) -> 'SystemConfig':
        """Check the delays describe num_paths paths inside one sub-segment."""
        if self.delays is None:
            return self
        if len(self.delays) != self.num_paths:
            raise ValueError(f'Expected {self.num_paths} path delays, got {len(self.delays)}')
        if self.delays[0] != 0 or any(b <= a for a, b in zip(self.delays, self.delays[1:])):
            raise ValueError('Path delays must start at 0 and strictly increase')
        if self.delays[-1] >= self.beta:
            raise ValueError(f'Path delays must be below beta = {self.beta}')
        return self

    @property
    def diversity_shape(self) -> float:
        """Shape m * L of a single link's SNR."""
        return self.m * self.num_paths

    def at_eb_n0_db(self, eb_over_n0_db: float) -> 'SystemConfig':
        """Return a copy evaluated at a different Eb/N0 given in dB."""
        return self.model_copy(update={'eb_over_n0': db_to_linear(eb_over_n0_db)})
