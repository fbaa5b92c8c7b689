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
"""Tests for the Nakagami-m channel, propagation and noise."""

import numpy as np
import pytest
from awslabs.dcsk_cc_simulator.models import ChannelProfile, ChannelRealization
from awslabs.dcsk_cc_simulator.services.channel import (
    add_noise,
    fading_gains,
    propagate,
    propagate_superposition,
    sample_fading,
    sample_gamma,
)
from awslabs.dcsk_cc_simulator.services.dcsk_common import derive_rng
from pydantic import ValidationError
from scipy import stats


class TestSampleGamma:
    """Tests for the gamma sampler."""

    def test_shape_one_is_exponential(self):
        """Test that G(1, theta) passes a KS test against the exponential law."""
        draws = sample_gamma(1.0, 2.0, derive_rng(1, 0), size=10**6)
        assert stats.kstest(draws, 'expon', args=(0, 2.0)).pvalue > 0.01

    def test_mean(self):
        """Test that G(4, 1.25) has mean 5 within 1%."""
        draws = sample_gamma(4.0, 1.25, derive_rng(1, 1), size=10**6)
        assert np.mean(draws) == pytest.approx(5.0, rel=0.01)

    def test_sum_of_equal_scales(self):
        """Test that G(2, t) + G(2, t) has the moments of G(4, t)."""
        rng = derive_rng(1, 2)
        sums = sample_gamma(2.0, 0.5, rng, size=10**6) + sample_gamma(2.0, 0.5, rng, size=10**6)
        assert np.mean(sums) == pytest.approx(2.0, rel=0.02)
        assert np.var(sums) == pytest.approx(1.0, rel=0.02)

    def test_single_draw_is_float(self, rng):
        """Test that size None returns a plain float."""
        assert isinstance(sample_gamma(2.0, 1.0, rng), float)

    def test_invalid_parameters(self, rng):
        """Test that non-positive shape or scale raises ValueError."""
        with pytest.raises(ValueError):
            sample_gamma(0.0, 1.0, rng)
        with pytest.raises(ValueError):
            sample_gamma(1.0, -1.0, rng)
        with pytest.raises(ValueError):
            sample_gamma(float('nan'), 1.0, rng)


class TestSampleFading:
    """Tests for Nakagami-m path amplitudes."""

    @pytest.mark.parametrize('m', [0.5, 1.0, 2.0, 4.0])
    def test_power_moments(self, m):
        """Test that alpha**2 has mean Omega and variance Omega**2 / m within 2%."""
        profile = ChannelProfile(num_paths=1, m=m, delays=(0,))
        realization = sample_fading(profile, derive_rng(2, int(m * 10)), size=(10**6,))
        power = realization.gains[:, 0] ** 2
        assert np.mean(power) == pytest.approx(1.0, rel=0.02)
        assert np.var(power) == pytest.approx(1.0 / m, rel=0.02)

    def test_total_power_is_unit(self):
        """Test that two paths with Omega = 1/2 each capture unit mean power."""
        profile = ChannelProfile(num_paths=2, m=2.0, delays=(0, 1))
        gains = fading_gains(profile, derive_rng(3, 0), (10**6,))
        assert gains.shape == (10**6, 2)
        assert np.mean(np.sum(gains**2, axis=-1)) == pytest.approx(1.0, rel=0.01)

    def test_fading_off_is_deterministic(self, rng):
        """Test that disabling fading gives sqrt(Omega) on every path."""
        profile = ChannelProfile(num_paths=2, m=2.0, delays=(0, 1), fading=False)
        gains = sample_fading(profile, rng, (3,)).gains
        np.testing.assert_allclose(gains, np.sqrt(0.5))

    def test_block_fading_is_independent_per_frame(self):
        """Test that consecutive frames' gains are uncorrelated."""
        profile = ChannelProfile(num_paths=1, m=2.0, delays=(0,))
        power = fading_gains(profile, derive_rng(4, 0), (10**5,))[:, 0] ** 2
        corr = np.corrcoef(power[:-1], power[1:])[0, 1]
        assert abs(corr) < 0.015

    def test_m_below_half_rejected(self):
        """Test that m < 0.5 is rejected by the profile."""
        with pytest.raises(ValidationError):
            ChannelProfile(num_paths=1, m=0.4, delays=(0,))

    def test_delay_profile_validation(self):
        """Test that delay lists must start at 0, increase, and match L."""
        with pytest.raises(ValidationError):
            ChannelProfile(num_paths=2, m=1.0, delays=(0,))
        with pytest.raises(ValidationError):
            ChannelProfile(num_paths=2, m=1.0, delays=(1, 2))
        with pytest.raises(ValidationError):
            ChannelProfile(num_paths=2, m=1.0, delays=(0, 0))


class TestPropagate:
    """Tests for tapped-delay-line propagation."""

    def test_identity_channel(self):
        """Test that L = 1, alpha = 1, d = 1 is the identity."""
        x = np.random.default_rng(0).normal(size=64)
        realization = ChannelRealization(gains=np.array([1.0]), delays=(0,))
        np.testing.assert_array_equal(propagate(x, realization, 1.0), x)

    def test_impulse_response(self):
        """Test that an impulse comes out as (a, b, 0, ...) / d."""
        x = np.zeros(16)
        x[0] = 1.0
        realization = ChannelRealization(gains=np.array([0.6, 0.8]), delays=(0, 1))
        y = propagate(x, realization, 2.0)
        np.testing.assert_allclose(y[:3], [0.3, 0.4, 0.0])
        np.testing.assert_array_equal(y[3:], 0.0)

    def test_zero_gain_path_contributes_nothing(self):
        """Test that a path with alpha = 0 is the same as omitting it."""
        x = np.random.default_rng(1).normal(size=64)
        two = ChannelRealization(gains=np.array([0.7, 0.0]), delays=(0, 3))
        one = ChannelRealization(gains=np.array([0.7]), delays=(0,))
        np.testing.assert_allclose(propagate(x, two, 1.0), propagate(x, one, 1.0))

    def test_linearity(self):
        """Test that propagate(a x + b y) = a propagate(x) + b propagate(y)."""
        rng = np.random.default_rng(2)
        x, y = rng.normal(size=64), rng.normal(size=64)
        realization = ChannelRealization(gains=np.array([0.9, 0.4]), delays=(0, 2))
        lhs = propagate(2.0 * x - 3.0 * y, realization, 1.5)
        rhs = 2.0 * propagate(x, realization, 1.5) - 3.0 * propagate(y, realization, 1.5)
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_delay_must_stay_below_beta(self):
        """Test that a delay of beta chips or more is rejected."""
        realization = ChannelRealization(gains=np.array([1.0, 1.0]), delays=(0, 32))
        with pytest.raises(ValueError):
            propagate(np.zeros(256), realization, 1.0, beta=32)

    def test_non_positive_distance(self):
        """Test that d <= 0 is rejected."""
        realization = ChannelRealization(gains=np.array([1.0]), delays=(0,))
        with pytest.raises(ValueError):
            propagate(np.zeros(8), realization, 0.0)

    def test_superposition_equals_sum_of_links(self):
        """Test that propagate_superposition sums the per-link outputs at each receiver."""
        rng = np.random.default_rng(3)
        frames = rng.normal(size=(3, 64))
        gains = rng.uniform(size=(3, 2, 2))
        delays = (0, 1)
        out = propagate_superposition(frames, gains, delays, 2.0, beta=8)
        assert out.shape == (2, 64)
        for receiver in range(2):
            expected = sum(
                propagate(frames[n], ChannelRealization(gains=gains[n, receiver], delays=delays), 2.0)
                for n in range(3)
            )
            np.testing.assert_allclose(out[receiver], expected, atol=1e-12)


class TestAddNoise:
    """Tests for white Gaussian noise."""

    def test_zero_noise_is_identity(self, rng):
        """Test that n0 = 0 returns the input unchanged."""
        x = np.arange(10.0)
        y = add_noise(x, 0.0, rng)
        np.testing.assert_array_equal(y, x)
        assert y is not x

    def test_variance_and_mean(self):
        """Test that noise has variance N0/2 within 1% and zero mean."""
        n0 = 2.0
        samples = add_noise(np.zeros(10**7), n0, derive_rng(5, 0))
        assert np.var(samples) == pytest.approx(n0 / 2, rel=0.01)
        assert abs(np.mean(samples)) < 4 * np.sqrt(n0 / 2 / samples.size)

    def test_negative_n0(self, rng):
        """Test that a negative noise level raises ValueError."""
        with pytest.raises(ValueError):
            add_noise(np.zeros(4), -1.0, rng)
