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
"""Nakagami-m tapped-delay-line channel, path loss, and white Gaussian noise."""

import numpy as np
from awslabs.dcsk_cc_simulator.models.channel_models import ChannelProfile, ChannelRealization
from typing import Optional, Sequence, Tuple, Union


def sample_gamma(
    shape: float,
    scale: float,
    rng: np.random.Generator,
    size: Optional[Union[int, Tuple[int, ...]]] = None,
) -> Union[float, np.ndarray]:
    """Draw from the gamma distribution G(shape, scale).

    numpy's sampler is the Marsaglia-Tsang squeeze with shape boosting below
    one, valid for every positive shape including m = 0.5.

    Args:
        shape: Shape parameter (> 0).
        scale: Scale parameter (> 0).
        rng: Random stream.
        size: Output shape; None draws a single float.

    Returns:
        One draw, or an array of draws of the requested size.

    Raises:
        ValueError: If shape or scale is not positive and finite.
    """
    if not (np.isfinite(shape) and shape > 0):
        raise ValueError(f'Gamma shape must be positive, got {shape}')
    if not (np.isfinite(scale) and scale > 0):
        raise ValueError(f'Gamma scale must be positive, got {scale}')
    draw = rng.gamma(shape, scale, size=size)
    return float(draw) if size is None else draw


def fading_gains(
    profile: ChannelProfile, rng: np.random.Generator, size: Tuple[int, ...] = ()
) -> np.ndarray:
    """Draw path amplitudes of shape size + (L,) without wrapping them in a model."""
    omega = profile.omega_per_path
    if not profile.fading:
        return np.full(tuple(size) + (profile.num_paths,), np.sqrt(omega))
    power = rng.gamma(profile.m, omega / profile.m, size=tuple(size) + (profile.num_paths,))
    return np.sqrt(power)


def sample_fading(
    profile: ChannelProfile, rng: np.random.Generator, size: Tuple[int, ...] = ()
) -> ChannelRealization:
    """Draw independent Nakagami-m amplitudes for every path.

    Each alpha_l is sqrt(G) with G ~ G(m, Omega_l / m), so E[alpha_l**2] = Omega_l.

    Args:
        profile: Channel profile.
        rng: Random stream.
        size: Leading shape for drawing many links at once.

    Returns:
        Realization with gains of shape size + (L,).
    """
    return ChannelRealization(gains=fading_gains(profile, rng, size), delays=profile.delays)


def _check_delays(delays: Sequence[int], frame_len: int, beta: Optional[int]) -> None:
    max_delay = max(delays)
    if beta is not None and max_delay >= beta:
        raise ValueError(f'Maximum path delay {max_delay} must be below beta = {beta}')
    if max_delay >= frame_len:
        raise ValueError(f'Maximum path delay {max_delay} must be below the frame length')


def _delayed_copies(chips: np.ndarray, delays: Sequence[int]) -> np.ndarray:
    """Stack delayed copies of chips along a new path axis, shape (..., L, F)."""
    frame_len = chips.shape[-1]
    copies = np.zeros(chips.shape[:-1] + (len(delays), frame_len), dtype=np.float64)
    for path, tau in enumerate(delays):
        copies[..., path, tau:] = chips[..., : frame_len - tau]
    return copies


def propagate(
    frame_chips: np.ndarray,
    realization: ChannelRealization,
    path_loss_distance: float,
    beta: Optional[int] = None,
) -> np.ndarray:
    """Pass chips through one link: output[t] = (1/d) sum_l alpha_l input[t - tau_l].

    Chips before the frame start are zero; inter-symbol interference is ignored.
    A delayed copy overlaps its own carrier and spills its last chips into the
    next sub-segment; analysis.correlated_link_params models both effects.

    Args:
        frame_chips: Chips of shape (..., F).
        realization: Path gains broadcastable to (..., L).
        path_loss_distance: Link distance d (amplitude loss 1/d).
        beta: Sub-segment length; when given, delays must stay below it.

    Returns:
        Received chips with the same shape as the input.

    Raises:
        ValueError: If the distance is not positive or a delay is too large.
    """
    if path_loss_distance <= 0:
        raise ValueError(f'Path loss distance must be positive, got {path_loss_distance}')
    chips = np.asarray(frame_chips, dtype=np.float64)
    _check_delays(realization.delays, chips.shape[-1], beta)
    copies = _delayed_copies(chips, realization.delays)
    return np.sum(realization.gains[..., :, None] * copies, axis=-2) / path_loss_distance


def propagate_superposition(
    frames: np.ndarray,
    gains: np.ndarray,
    delays: Sequence[int],
    path_loss_distance: float,
    beta: Optional[int] = None,
) -> np.ndarray:
    """Propagate N transmitted frames to M receivers and sum at each receiver.

    Args:
        frames: Transmitted chips of shape (..., N, F).
        gains: Path gains of shape (..., N, M, L) for link transmitter n -> receiver m.
        delays: Path delays in chips.
        path_loss_distance: Common link distance.
        beta: Sub-segment length; when given, delays must stay below it.

    Returns:
        Received chips of shape (..., M, F).
    """
    if path_loss_distance <= 0:
        raise ValueError(f'Path loss distance must be positive, got {path_loss_distance}')
    _check_delays(delays, frames.shape[-1], beta)
    copies = _delayed_copies(frames, delays)
    return np.einsum('...nml,...nlf->...mf', gains, copies) / path_loss_distance


def add_noise(chips: np.ndarray, n0: float, rng: np.random.Generator) -> np.ndarray:
    """Add i.i.d. zero-mean Gaussian noise of variance N0/2 per chip.

    Raises:
        ValueError: If n0 is negative.
    """
    if n0 < 0:
        raise ValueError(f'n0 must be non-negative, got {n0}')
    chips = np.asarray(chips, dtype=np.float64)
    if n0 == 0:
        return chips.copy()
    return chips + rng.normal(0.0, np.sqrt(n0 / 2.0), size=chips.shape)
