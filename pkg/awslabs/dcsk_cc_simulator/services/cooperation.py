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
"""Two-phase decode-and-forward protocol and the non-cooperative baseline.

Phase 1: every user broadcasts its own frame at Eb/2. Each user receives the
other N - 1 frames (its own signal is cancelled) and decodes all of them,
while the destination receives the superposition of all N frames.

Phase 2: each user re-modulates, with fresh carriers, the bits it decoded
correctly at Eb / (2(N - 1)) each and transmits their sum. The destination
adds the phase-1 and phase-2 GML metrics of each user (EGC) and decides.

Every link of every phase gets an independent fading draw per period, and
every frame gets a fresh carrier. The batch functions simulate P periods at
once; the single-period functions are the P = 1 case.
"""

import numpy as np
from awslabs.dcsk_cc_simulator.models.channel_models import ChannelProfile, LinkGeometry
from awslabs.dcsk_cc_simulator.models.common import Combining, RelayPolicy
from awslabs.dcsk_cc_simulator.models.cooperation_models import (
    EnergyPolicy,
    NoiseConfig,
    PeriodOutcome,
)
from awslabs.dcsk_cc_simulator.models.modem_models import ModulationConfig, WalshMatrix
from awslabs.dcsk_cc_simulator.services import walsh as walsh_codes
from awslabs.dcsk_cc_simulator.services.channel import (
    add_noise,
    fading_gains,
    propagate_superposition,
)
from awslabs.dcsk_cc_simulator.services.chaos import draw_seeds, generate_carriers
from awslabs.dcsk_cc_simulator.services.dcsk_common import ConfigurationError
from awslabs.dcsk_cc_simulator.services.modem import decide, detect_metrics, modulate_batch
from loguru import logger
from typing import Optional, Sequence, Tuple, Union


def egc_combine(
    metrics_phase1: Union[Sequence[float], np.ndarray],
    metrics_phase2: Union[Sequence[float], np.ndarray],
) -> np.ndarray:
    """Add the candidate-bit metrics of the two phases component-wise.

    Args:
        metrics_phase1: Metric pair(s) of shape (..., 2).
        metrics_phase2: Metric pair(s) of the same shape.

    Returns:
        The combined metric pairs.

    Raises:
        ValueError: If any metric is not finite or the shapes disagree.
    """
    m1 = np.asarray(metrics_phase1, dtype=np.float64)
    m2 = np.asarray(metrics_phase2, dtype=np.float64)
    if m1.shape != m2.shape:
        raise ValueError(f'Metric shapes differ: {m1.shape} vs {m2.shape}')
    if not (np.all(np.isfinite(m1)) and np.all(np.isfinite(m2))):
        raise ValueError('Metrics must be finite')
    return m1 + m2


def _prepare(
    cfg: ModulationConfig,
    energy: EnergyPolicy,
    bits: np.ndarray,
    walsh: Optional[WalshMatrix],
) -> Tuple[np.ndarray, WalshMatrix]:
    bits = np.asarray(bits)
    if bits.ndim != 2 or bits.shape[1] != cfg.num_users:
        raise ValueError(f'bits must have shape (P, {cfg.num_users}), got {bits.shape}')
    if not np.all((bits == 0) | (bits == 1)):
        raise ValueError('bits must be 0 or 1')
    if energy.num_users != cfg.num_users:
        raise ConfigurationError(
            f'Energy policy is for {energy.num_users} users, modulation for {cfg.num_users}'
        )
    if walsh is None:
        walsh = walsh_codes.generate(cfg.walsh_exponent)
    elif walsh.order != cfg.subsegments:
        raise ConfigurationError(f'Walsh order {walsh.order} does not match 2N')
    return bits.astype(np.int8), walsh


def _forward_mask(correct: np.ndarray, policy: RelayPolicy) -> np.ndarray:
    """Which (relay, user) components are forwarded, shape (P, N, N)."""
    num_users = correct.shape[-1]
    off_diagonal = ~np.eye(num_users, dtype=bool)
    if policy == RelayPolicy.IDLE:
        return np.zeros_like(correct)
    if policy == RelayPolicy.ALL_OR_NOTHING:
        relay_ok = np.all(correct | ~off_diagonal, axis=-1, keepdims=True)
        return relay_ok & off_diagonal
    return correct & off_diagonal


def run_cc_periods(
    cfg: ModulationConfig,
    profile: ChannelProfile,
    geometry: LinkGeometry,
    energy: EnergyPolicy,
    noise: NoiseConfig,
    bits: np.ndarray,
    rng: np.random.Generator,
    walsh: Optional[WalshMatrix] = None,
    policy: RelayPolicy = RelayPolicy.PER_USER,
    combining: Combining = Combining.BLIND,
) -> PeriodOutcome:
    """Simulate P periods of the cooperative system.

    Args:
        cfg: Frame geometry.
        profile: Channel profile shared by every link.
        geometry: Link distances.
        energy: Energy allocation.
        noise: Noise level.
        bits: Transmitted bits of shape (P, N).
        rng: Random stream, consumed in a fixed order.
        walsh: Walsh matrix; generated from cfg when omitted.
        policy: What relays forward in phase 2.
        combining: Whether the destination drops the phase-2 metric of users
            no relay forwarded.

    Returns:
        Destination decisions, relay flags and both phases' metrics.

    Raises:
        ConfigurationError: If fewer than 2 users or the parts disagree.
        ValueError: If bits have the wrong shape or alphabet.
    """
    if cfg.num_users < 2:
        raise ConfigurationError('Cooperation needs at least 2 users')
    bits, walsh = _prepare(cfg, energy, bits, walsh)
    signatures = walsh_codes.signature_table(walsh)
    periods, num_users = bits.shape
    off_diagonal = ~np.eye(num_users, dtype=bool)

    # Phase 1: broadcast
    carriers = generate_carriers(cfg.beta, draw_seeds(rng, (periods, num_users)))
    frames = modulate_batch(signatures, bits, carriers, energy.phase1_frame_energy)

    gains_uu = fading_gains(profile, rng, (periods, num_users, num_users)) * off_diagonal[
        ..., None
    ]
    rx_users = propagate_superposition(frames, gains_uu, profile.delays, geometry.d_sr, cfg.beta)
    rx_users = add_noise(rx_users, noise.n0, rng)
    relay_bits = decide(detect_metrics(rx_users, cfg, walsh))  # (P, relay, user)
    correct = relay_bits == bits[:, None, :]

    gains_sd = fading_gains(profile, rng, (periods, num_users, 1))
    rx_dest1 = propagate_superposition(frames, gains_sd, profile.delays, geometry.d_sd, cfg.beta)
    rx_dest1 = add_noise(rx_dest1[:, 0], noise.n0, rng)
    metrics_phase1 = detect_metrics(rx_dest1, cfg, walsh)

    # Phase 2: relays forward what they decoded
    forward = _forward_mask(correct, policy)
    relay_carriers = generate_carriers(
        cfg.beta, draw_seeds(rng, (periods, num_users, num_users))
    )
    components = modulate_batch(
        signatures,
        np.broadcast_to(relay_bits, (periods, num_users, num_users)),
        relay_carriers,
        energy.per_relayed_user,
    )
    relay_frames = np.sum(components * forward[..., None], axis=2)

    gains_rd = fading_gains(profile, rng, (periods, num_users, 1))
    rx_dest2 = propagate_superposition(
        relay_frames, gains_rd, profile.delays, geometry.d_rd, cfg.beta
    )
    rx_dest2 = add_noise(rx_dest2[:, 0], noise.n0, rng)
    metrics_phase2 = detect_metrics(rx_dest2, cfg, walsh)

    phase2 = metrics_phase2
    if combining == Combining.INFORMED:
        phase2 = np.where(forward.any(axis=1)[..., None], metrics_phase2, 0.0)
    decided = decide(egc_combine(metrics_phase1, phase2))
    flags = correct[:, off_diagonal].reshape(periods, num_users, num_users - 1)
    logger.debug(
        f'Simulated {periods} cooperative periods, '
        f'{int(np.sum(~flags))} relay decode failures',
    )
    return PeriodOutcome(
        decided_bits=decided,
        true_bits=bits,
        relay_decode_flags=flags,
        metrics_phase1=metrics_phase1,
        metrics_phase2=metrics_phase2,
    )


def run_nc_periods(
    cfg: ModulationConfig,
    profile: ChannelProfile,
    geometry: LinkGeometry,
    energy: EnergyPolicy,
    noise: NoiseConfig,
    bits: np.ndarray,
    rng: np.random.Generator,
    walsh: Optional[WalshMatrix] = None,
) -> PeriodOutcome:
    """Simulate P periods of direct transmission at the full energy Eb per bit.

    Args:
        cfg: Frame geometry.
        profile: Channel profile of the direct links.
        geometry: Link distances; only d_sd is used.
        energy: Energy allocation.
        noise: Noise level.
        bits: Transmitted bits of shape (P, N).
        rng: Random stream.
        walsh: Walsh matrix; generated from cfg when omitted.

    Returns:
        Destination decisions; relay fields are empty.
    """
    bits, walsh = _prepare(cfg, energy, bits, walsh)
    signatures = walsh_codes.signature_table(walsh)
    periods, num_users = bits.shape

    carriers = generate_carriers(cfg.beta, draw_seeds(rng, (periods, num_users)))
    frames = modulate_batch(signatures, bits, carriers, energy.nc_frame_energy)
    gains_sd = fading_gains(profile, rng, (periods, num_users, 1))
    rx_dest = propagate_superposition(frames, gains_sd, profile.delays, geometry.d_sd, cfg.beta)
    rx_dest = add_noise(rx_dest[:, 0], noise.n0, rng)
    metrics = detect_metrics(rx_dest, cfg, walsh)

    logger.debug(f'Simulated {periods} non-cooperative periods')
    return PeriodOutcome(
        decided_bits=decide(metrics),
        true_bits=bits,
        relay_decode_flags=np.ones((periods, num_users, 0), dtype=bool),
        metrics_phase1=metrics,
    )


def run_cc_period(
    cfg: ModulationConfig,
    profile: ChannelProfile,
    geometry: LinkGeometry,
    energy: EnergyPolicy,
    noise: NoiseConfig,
    bits: Sequence[int],
    rng: np.random.Generator,
    walsh: Optional[WalshMatrix] = None,
    policy: RelayPolicy = RelayPolicy.PER_USER,
    combining: Combining = Combining.BLIND,
) -> PeriodOutcome:
    """Simulate one cooperative period for an N-vector of bits."""
    return run_cc_periods(
        cfg,
        profile,
        geometry,
        energy,
        noise,
        np.asarray(bits)[None, :],
        rng,
        walsh,
        policy,
        combining,
    )


def run_nc_period(
    cfg: ModulationConfig,
    profile: ChannelProfile,
    geometry: LinkGeometry,
    energy: EnergyPolicy,
    noise: NoiseConfig,
    bits: Sequence[int],
    rng: np.random.Generator,
    walsh: Optional[WalshMatrix] = None,
) -> PeriodOutcome:
    """Simulate one non-cooperative period for an N-vector of bits."""
    return run_nc_periods(
        cfg, profile, geometry, energy, noise, np.asarray(bits)[None, :], rng, walsh
    )
