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
"""Chaotic carrier generation from the degree-2 Chebyshev map x -> 1 - 2x**2.

Each carrier segment is iterated from a seed-derived initial condition,
after a fixed warm-up, and then normalized to exactly zero sample mean and
unit sample mean-square.
"""

import numpy as np
from awslabs.dcsk_cc_simulator.consts import (
    CHAOS_MAX_ATTEMPTS,
    CHAOS_MIN_BETA,
    CHAOS_WARMUP_ITERATIONS,
)
from awslabs.dcsk_cc_simulator.services.dcsk_common import SimulationError
from loguru import logger
from typing import Tuple, Union


_SEED_SPACING = 0x9E3779B97F4A7C15
_UINT64_MODULUS = 2**64


def seed_to_initial_condition(seeds: Union[int, np.ndarray]) -> np.ndarray:
    """Map 64-bit seeds to initial conditions in the open interval (-1, 1).

    The top 53 bits select a dyadic midpoint u in (0, 1), which maps to 2u - 1.
    """
    seeds = np.asarray(seeds, dtype=np.uint64)
    u = ((seeds >> np.uint64(11)).astype(np.float64) + 0.5) / 2.0**53
    return 2.0 * u - 1.0


def chebyshev_orbit(
    x0: Union[float, np.ndarray], length: int, warmup: int = CHAOS_WARMUP_ITERATIONS
) -> np.ndarray:
    """Iterate the Chebyshev map from one or many initial conditions.

    Args:
        x0: Initial condition(s) in [-1, 1], any shape S.
        length: Number of samples kept after the warm-up.
        warmup: Number of discarded iterations.

    Returns:
        Array of shape S + (length,).
    """
    x = np.array(x0, dtype=np.float64)
    for _ in range(warmup):
        x = 1.0 - 2.0 * x * x
    orbit = np.empty(x.shape + (length,), dtype=np.float64)
    for k in range(length):
        orbit[..., k] = x
        x = 1.0 - 2.0 * x * x
    return orbit


def _normalize(orbit: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    centered = orbit - orbit.mean(axis=-1, keepdims=True)
    power = np.mean(centered * centered, axis=-1, keepdims=True)
    degenerate = ~np.isfinite(power[..., 0]) | (power[..., 0] <= 0.0)
    safe_power = np.where(power > 0.0, power, 1.0)
    return centered / np.sqrt(safe_power), degenerate


def generate_carriers(beta: int, seeds: np.ndarray) -> np.ndarray:
    """Generate one normalized carrier segment per seed.

    Args:
        beta: Chips per segment (>= 2).
        seeds: Array of 64-bit seeds, any shape S.

    Returns:
        Array of shape S + (beta,) with zero sample mean and unit sample mean-square per row.

    Raises:
        ValueError: If beta < 2.
        SimulationError: If an orbit stays degenerate after every reseeding attempt.
    """
    if beta < CHAOS_MIN_BETA:
        raise ValueError(f'beta must be at least {CHAOS_MIN_BETA}, got {beta}')
    seeds = np.asarray(seeds, dtype=np.uint64)
    flat_seeds = seeds.reshape(-1)
    carriers, degenerate = _normalize(
        chebyshev_orbit(seed_to_initial_condition(flat_seeds), beta)
    )

    attempt = 1
    while np.any(degenerate):
        if attempt >= CHAOS_MAX_ATTEMPTS:
            bad = int(flat_seeds[np.flatnonzero(degenerate)[0]])
            logger.error(f'Chaotic orbit degenerate after {attempt} attempts for seed {bad}')
            raise SimulationError(
                f'Degenerate chaotic orbit for seed {bad} after {attempt} attempts',
                error_code='DegenerateCarrier',
            )
        idx = np.flatnonzero(degenerate)
        logger.debug(f'Reseeding {idx.size} degenerate chaotic orbit(s), attempt {attempt}')
        perturbed = np.array(
            [(int(flat_seeds[i]) + attempt * _SEED_SPACING) % _UINT64_MODULUS for i in idx],
            dtype=np.uint64,
        )
        retried, still_bad = _normalize(
            chebyshev_orbit(seed_to_initial_condition(perturbed), beta)
        )
        carriers[idx] = retried
        degenerate[idx] = still_bad
        attempt += 1

    return carriers.reshape(seeds.shape + (beta,))


def generate_carrier(beta: int, seed: int) -> np.ndarray:
    """Generate a single normalized carrier segment of beta chips.

    Deterministic in (beta, seed).
    """
    return generate_carriers(beta, np.array([seed], dtype=np.uint64))[0]


def draw_seeds(rng: np.random.Generator, shape) -> np.ndarray:
    """Draw fresh 64-bit carrier seeds from a random stream."""
    return rng.integers(0, _UINT64_MODULUS - 1, size=shape, dtype=np.uint64, endpoint=True)
