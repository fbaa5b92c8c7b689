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
"""Tests for the Chebyshev chaotic carrier generator."""

import numpy as np
import pytest
from awslabs.dcsk_cc_simulator.services import chaos
from awslabs.dcsk_cc_simulator.services.chaos import (
    chebyshev_orbit,
    draw_seeds,
    generate_carrier,
    generate_carriers,
    seed_to_initial_condition,
)
from awslabs.dcsk_cc_simulator.services.dcsk_common import SimulationError


class TestChebyshevOrbit:
    """Tests for the raw map iteration."""

    def test_map_recursion(self):
        """Test that consecutive samples follow x_{k+1} = 1 - 2 x_k**2."""
        orbit = chebyshev_orbit(0.3, 50, warmup=0)
        assert orbit[0] == pytest.approx(0.3)
        np.testing.assert_allclose(orbit[1:], 1.0 - 2.0 * orbit[:-1] ** 2, rtol=0, atol=1e-15)

    def test_orbit_stays_in_interval(self):
        """Test that the orbit never leaves [-1, 1]."""
        orbit = chebyshev_orbit(seed_to_initial_condition(np.arange(100, dtype=np.uint64)), 256)
        assert orbit.shape == (100, 256)
        assert np.all(np.abs(orbit) <= 1.0)

    def test_initial_conditions_in_open_interval(self):
        """Test that seed mapping lands strictly inside (-1, 1), including extreme seeds."""
        seeds = np.array([0, 1, 2**63, 2**64 - 1], dtype=np.uint64)
        x0 = seed_to_initial_condition(seeds)
        assert np.all(x0 > -1.0)
        assert np.all(x0 < 1.0)

    def test_long_orbit_has_zero_mean(self):
        """Test that the sample mean of a 10**6 chip orbit is close to 0."""
        orbit = chebyshev_orbit(seed_to_initial_condition(12345), 10**6)
        assert abs(float(np.mean(orbit))) < 5e-3


class TestGenerateCarrier:
    """Tests for normalized carrier segments."""

    def test_deterministic(self):
        """Test that the same (beta, seed) gives the same carrier."""
        np.testing.assert_array_equal(generate_carrier(32, 99), generate_carrier(32, 99))

    def test_different_seeds_differ(self):
        """Test that distinct seeds give distinct carriers."""
        assert not np.array_equal(generate_carrier(32, 1), generate_carrier(32, 2))

    def test_normalized(self):
        """Test that carriers have zero sample mean and unit mean-square."""
        carriers = generate_carriers(32, np.arange(1000, dtype=np.uint64))
        assert carriers.shape == (1000, 32)
        np.testing.assert_allclose(carriers.mean(axis=-1), 0.0, atol=1e-9)
        np.testing.assert_allclose(np.mean(carriers**2, axis=-1), 1.0, atol=1e-9)

    def test_batch_matches_single(self):
        """Test that a batch row equals the carrier generated alone from its seed."""
        seeds = np.array([[5, 6], [7, 8]], dtype=np.uint64)
        batch = generate_carriers(16, seeds)
        assert batch.shape == (2, 2, 16)
        np.testing.assert_array_equal(batch[1, 0], generate_carrier(16, 7))

    def test_minimum_beta(self):
        """Test that beta = 2 gives the +-1 pattern after normalization."""
        carrier = generate_carrier(2, 3)
        np.testing.assert_allclose(np.abs(carrier), 1.0, atol=1e-9)

    def test_beta_too_small(self):
        """Test that beta < 2 is rejected."""
        with pytest.raises(ValueError):
            generate_carrier(1, 3)

    def test_finite_output(self):
        """Test that carriers for many random seeds are finite."""
        seeds = draw_seeds(np.random.default_rng(7), (500,))
        assert np.all(np.isfinite(generate_carriers(32, seeds)))

    def test_cross_correlation_is_small(self):
        """Test that independent carriers are nearly uncorrelated in at least 99% of pairs."""
        beta = 32
        carriers = generate_carriers(beta, np.arange(2000, dtype=np.uint64))
        corr = np.sum(carriers[0::2] * carriers[1::2], axis=-1) / beta
        assert np.mean(np.abs(corr) < 5.0 / np.sqrt(beta)) >= 0.99

    def test_degenerate_orbit_is_reseeded(self, monkeypatch):
        """Test that a constant orbit is replaced by a perturbed seed's orbit."""
        real_orbit = chaos.chebyshev_orbit
        calls = []

        def constant_first(x0, length, warmup=64):
            calls.append(1)
            if len(calls) == 1:
                return np.ones(np.shape(x0) + (length,))
            return real_orbit(x0, length, warmup)

        monkeypatch.setattr(chaos, 'chebyshev_orbit', constant_first)
        carrier = generate_carrier(32, 11)
        assert len(calls) == 2
        assert np.mean(carrier**2) == pytest.approx(1.0)

    def test_persistently_degenerate_orbit_fails(self, monkeypatch):
        """Test that a seed that stays degenerate raises SimulationError."""
        monkeypatch.setattr(
            chaos,
            'chebyshev_orbit',
            lambda x0, length, warmup=64: np.zeros(np.shape(x0) + (length,)),
        )
        with pytest.raises(SimulationError) as exc_info:
            generate_carrier(32, 11)
        assert exc_info.value.error_code == 'DegenerateCarrier'


class TestDrawSeeds:
    """Tests for draw_seeds."""

    def test_shape_and_dtype(self):
        """Test that seeds come out as uint64 of the requested shape."""
        seeds = draw_seeds(np.random.default_rng(1), (3, 4))
        assert seeds.shape == (3, 4)
        assert seeds.dtype == np.uint64

    def test_reproducible(self):
        """Test that equal generator states give equal seeds."""
        a = draw_seeds(np.random.default_rng(1), (10,))
        b = draw_seeds(np.random.default_rng(1), (10,))
        np.testing.assert_array_equal(a, b)
