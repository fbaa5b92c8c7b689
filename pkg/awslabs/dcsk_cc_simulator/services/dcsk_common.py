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
"""Common utilities shared by the DCSK simulation and analysis services.

This module provides the exception hierarchy used across the package, the
counter-based random stream derivation that keeps sweeps reproducible, and
small dB conversion helpers.
"""

import math
import numpy as np
from awslabs.dcsk_cc_simulator.consts import (
    EXIT_CONFIG_ERROR,
    EXIT_IO_ERROR,
    EXIT_NUMERICAL_ERROR,
)
from typing import Optional, Sequence


class SimulationError(Exception):
    """Base exception for simulation and analysis failures.

    Attributes:
        error_code: Short machine-readable code (e.g., 'ConfigError', 'NumericalError').
        message: Human-readable error message.
        exit_code: Process exit code the command-line surface reports.
    """
    def __init__(self, message: str, error_code: str = 'Unknown', exit_code: int = 1):
        """Initialize SimulationError.

        Args:
            message: Human-readable error message.
            error_code: Short machine-readable code.
            exit_code: Process exit code for the command-line surface.
        """
        self.error_code = error_code
        self.message = message
        self.exit_code = exit_code
        super().__init__(message)


class ConfigurationError(SimulationError):
    """Raised when a configuration is inconsistent or cannot be parsed."""
    def __init__(self, message: str):
        """Initialize ConfigurationError.

        Args:
            message: Description of the configuration problem.
        """
        super().__init__(message=message, error_code='ConfigError', exit_code=EXIT_CONFIG_ERROR)


class NumericalError(SimulationError):
    """Raised when a quadrature or series evaluation misses its tolerance.

    Attributes:
        residual: Residual estimate at the point of failure (tail mass or error estimate).
    """
    def __init__(self, message: str, residual: Optional[float] = None):
        """Initialize NumericalError.

        Args:
            message: Description of the numerical failure.
            residual: Residual estimate at the point of failure, if known.
        """
        self.residual = residual
        if residual is not None:
            message = f'{message} (residual {residual:.3e})'
        super().__init__(
            message=message, error_code='NumericalError', exit_code=EXIT_NUMERICAL_ERROR
        )


class DataFileError(SimulationError):
    """Raised when an input or output file cannot be read, parsed, or written.

    Attributes:
        path: The offending file path.
    """
    def __init__(self, path: str, reason: str):
        """Initialize DataFileError.

        Args:
            path: The offending file path.
            reason: Why the file could not be used.
        """
        self.path = path
        super().__init__(
            message=f'{path}: {reason}', error_code='IOError', exit_code=EXIT_IO_ERROR
        )


def derive_rng(master_seed: int, *stream_key: int) -> np.random.Generator:
    """Derive an independent random stream from the master seed and a stream key.

    Streams are keyed by integers such as (point index, system index,
    replication index) and backed by the counter-based Philox bit generator,
    so the same key always yields the same stream regardless of which worker
    evaluates it or in what order.

    Args:
        master_seed: Non-negative 64-bit master seed.
        *stream_key: Non-negative integers identifying the stream.

    Returns:
        A numpy Generator positioned at the start of the keyed stream.
    """
    seed_sequence = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(stream_key))
    return np.random.Generator(np.random.Philox(seed_sequence))


def db_to_linear(value_db: float) -> float:
    """Convert a power ratio in dB to linear scale."""
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    """Convert a linear power ratio to dB."""
    return 10.0 * math.log10(value)


def is_strictly_increasing(values: Sequence[float]) -> bool:
    """Check that a sequence is strictly increasing."""
    return all(b > a for a, b in zip(values, values[1:]))
