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
"""Pydantic models for Walsh codes, DCSK frames, and detection results."""

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing import Literal


ChipVector = npt.NDArray[np.float64]


class WalshMatrix(BaseModel):
    """The 2N x 2N Walsh code matrix of signs.

    Attributes:
        n: Exponent with 2**n equal to the order.
        entries: Square array of small signed integers in {+1, -1}.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: int = Field(ge=0)
    entries: np.ndarray

    @model_validator(mode='after')
    def validate_entries(self):
        """Validate shape and sign alphabet of the entries.

        Returns:
            The validated model.

        Raises:
            ValueError: If the matrix is not 2**n square or holds values other than +1/-1.
        """
        order = 2**self.n
        if self.entries.shape != (order, order):
            raise ValueError(f'Walsh entries must be {order}x{order}, got {self.entries.shape}')
        if not np.all(np.abs(self.entries) == 1):
            raise ValueError('Walsh entries must be +1 or -1')
        self.entries.setflags(write=False)
        return self

    @property
    def order(self) -> int:
        """Matrix order 2N."""
        return 2**self.n

    @property
    def num_users(self) -> int:
        """Number of users N the matrix accommodates."""
        return self.order // 2


class ModulationConfig(BaseModel):
    """Frame geometry of the N-user MA-DCSK system.

    Time is counted in chips (Ts = 1), so the bit duration is T = 2N * beta chips.

    Attributes:
        num_users: Number of users N (2N must be a power of two).
        beta: Chips per carrier sub-segment (sub-spreading factor).
    """
    model_config = ConfigDict(frozen=True)

    num_users: int = Field(ge=1)
    beta: int = Field(ge=2)

    @field_validator('num_users')
    @classmethod
    def must_fill_walsh_order(cls, v: int) -> int:
        """Validate that 2N is a power of two.

        Args:
            v: The number of users.

        Returns:
            The validated number of users.

        Raises:
            ValueError: If 2N is not a power of two.
        """
        if v & (v - 1):
            raise ValueError(f'2N must be a power of two, got N={v}')
        return v

    @property
    def subsegments(self) -> int:
        """Sub-segments per frame, 2N."""
        return 2 * self.num_users

    @property
    def frame_len(self) -> int:
        """Chips per frame, 2N * beta."""
        return self.subsegments * self.beta

    @property
    def walsh_exponent(self) -> int:
        """Exponent n with 2**n = 2N."""
        return self.subsegments.bit_length() - 1


class Frame(BaseModel):
    """One DCSK symbol on air for a single user.

    Attributes:
        chips: Real chip vector of length 2N * beta.
        user: 1-based user index.
        bit: The transmitted bit.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    chips: np.ndarray
    user: int = Field(ge=1)
    bit: Literal[0, 1]

    @property
    def energy(self) -> float:
        """Total chip energy of the frame."""
        return float(np.sum(self.chips**2))


class DetectionResult(BaseModel):
    """GML decision and the two candidate-bit metrics it was taken from.

    Attributes:
        bit: Decided bit (ties decode to 0).
        metric_b0: Statistic for the hypothesis b = 0.
        metric_b1: Statistic for the hypothesis b = 1.
    """
    model_config = ConfigDict(frozen=True)

    bit: Literal[0, 1]
    metric_b0: float
    metric_b1: float

    @model_validator(mode='after')
    def validate_decision(self):
        """Validate that the decision follows the metrics."""
        expected = 0 if self.metric_b0 >= self.metric_b1 else 1
        if self.bit != expected:
            raise ValueError('bit must be 0 iff metric_b0 >= metric_b1')
        return self
