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
"""Walsh-coded DCSK modulation and GML detection.

A user's frame is the Kronecker product of its Walsh row with one carrier
segment. Detection works on the sub-segment correlation matrix R: the
metric of candidate row w is the off-diagonal quadratic form
sum_{i != j} w_i w_j R_ij, which equals |sum_i w_i s_i|**2 - tr(R).
All helpers broadcast over leading batch axes.
"""

import numpy as np
from awslabs.dcsk_cc_simulator.models.modem_models import (
    DetectionResult,
    Frame,
    ModulationConfig,
    WalshMatrix,
)
from awslabs.dcsk_cc_simulator.services.walsh import signature_table, user_rows
from typing import Sequence, Union


def _check_walsh(cfg: ModulationConfig, walsh: WalshMatrix) -> None:
    if walsh.order != cfg.subsegments:
        raise ValueError(
            f'Walsh order {walsh.order} does not match 2N = {cfg.subsegments}'
        )


def modulate(
    cfg: ModulationConfig,
    user: int,
    bit: int,
    carrier: np.ndarray,
    walsh: WalshMatrix,
    energy_per_frame: float,
) -> Frame:
    """Build the frame of one user for one bit.

    Args:
        cfg: Frame geometry.
        user: 1-based user index.
        bit: Transmitted bit, 0 or 1.
        carrier: Normalized carrier segment of beta chips.
        walsh: Walsh matrix of order 2N.
        energy_per_frame: Total chip energy of the frame.

    Returns:
        The frame, sub-segment j equal to w_{2K - b, j} times the scaled carrier.

    Raises:
        ValueError: If the user, bit, carrier length, energy or Walsh order is invalid.
    """
    _check_walsh(cfg, walsh)
    bit = int(bit)
    if bit not in (0, 1):
        raise ValueError(f'bit must be 0 or 1, got {bit}')
    if energy_per_frame < 0:
        raise ValueError(f'energy_per_frame must be non-negative, got {energy_per_frame}')
    carrier = np.asarray(carrier, dtype=np.float64)
    if carrier.shape != (cfg.beta,):
        raise ValueError(f'carrier must have {cfg.beta} chips, got shape {carrier.shape}')
    try:
        rows = user_rows(walsh, user)
    except IndexError as e:
        raise ValueError(str(e)) from e

    chips = np.kron(rows[bit].astype(np.float64), carrier)
    raw_energy = float(np.dot(chips, chips))
    if raw_energy > 0:
        chips = chips * np.sqrt(energy_per_frame / raw_energy)
    return Frame(chips=chips, user=user, bit=bit)


def modulate_batch(
    signatures: np.ndarray,
    bits: np.ndarray,
    carriers: np.ndarray,
    energy_per_frame: Union[float, np.ndarray],
) -> np.ndarray:
    """Build frames for a batch of users and bits.

    Args:
        signatures: Candidate rows from walsh.signature_table, shape (N, 2, 2N).
        bits: Bits of shape (..., N).
        carriers: Normalized carriers of shape (..., N, beta).
        energy_per_frame: Frame energy, scalar or broadcastable to (..., N).

    Returns:
        Frames of shape (..., N, 2N * beta).
    """
    bits = np.asarray(bits, dtype=np.intp)
    num_users = signatures.shape[0]
    rows = signatures[np.arange(num_users), bits]
    beta = carriers.shape[-1]
    frames = rows[..., :, None] * carriers[..., None, :]
    frames = frames.reshape(frames.shape[:-2] + (-1,))
    # unit-power carriers give 2N * beta raw energy per frame
    scale = np.sqrt(np.asarray(energy_per_frame, dtype=np.float64) / (2 * num_users * beta))
    return frames * scale[..., None]


def _segments(received: np.ndarray, cfg: ModulationConfig) -> np.ndarray:
    received = np.asarray(received, dtype=np.float64)
    if received.shape[-1] != cfg.frame_len:
        raise ValueError(
            f'Received frame must have {cfg.frame_len} chips, got {received.shape[-1]}'
        )
    return received.reshape(received.shape[:-1] + (cfg.subsegments, cfg.beta))


def correlation_matrix(received: np.ndarray, cfg: ModulationConfig) -> np.ndarray:
    """Compute inner products of all pairs of received sub-segments.

    Args:
        received: Chips of shape (..., 2N * beta).
        cfg: Frame geometry.

    Returns:
        Symmetric matrices of shape (..., 2N, 2N).

    Raises:
        ValueError: If the chip count does not match the frame length.
    """
    segs = _segments(received, cfg)
    r = segs @ np.swapaxes(segs, -1, -2)
    # enforce exact symmetry against matmul rounding
    return 0.5 * (r + np.swapaxes(r, -1, -2))


def gml_metric(r: np.ndarray, row: Sequence[float]) -> np.ndarray:
    """Evaluate sum_{i != j} w_i w_j R_ij for one candidate row."""
    w = np.asarray(row, dtype=np.float64)
    quad = np.einsum('i,...ij,j->...', w, r, w)
    return quad - np.einsum('...ii->...', r)


def gml_detect(r: np.ndarray, user: int, walsh: WalshMatrix) -> DetectionResult:
    """Decide one user's bit from a correlation matrix.

    Args:
        r: Correlation matrix of shape (2N, 2N).
        user: 1-based user index.
        walsh: Walsh matrix of order 2N.

    Returns:
        The decision with both candidate metrics; ties decode to 0.

    Raises:
        ValueError: If the matrix does not match the Walsh order.
    """
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (walsh.order, walsh.order):
        raise ValueError(f'R must be {walsh.order}x{walsh.order}, got {r.shape}')
    try:
        row_b0, row_b1 = user_rows(walsh, user)
    except IndexError as e:
        raise ValueError(str(e)) from e
    metric_b0 = float(gml_metric(r, row_b0))
    metric_b1 = float(gml_metric(r, row_b1))
    return DetectionResult(
        bit=0 if metric_b0 >= metric_b1 else 1, metric_b0=metric_b0, metric_b1=metric_b1
    )


def detect_metrics(
    received: np.ndarray, cfg: ModulationConfig, walsh: WalshMatrix
) -> np.ndarray:
    """Compute both candidate metrics for every user of a batch of received frames.

    Equivalent to gml_detect on correlation_matrix(received) for each user,
    evaluated through the despread vectors sum_i w_i s_i.

    Args:
        received: Chips of shape (..., 2N * beta).
        cfg: Frame geometry.
        walsh: Walsh matrix of order 2N.

    Returns:
        Metrics of shape (..., N, 2), last axis indexed by candidate bit.
    """
    _check_walsh(cfg, walsh)
    segs = _segments(received, cfg)
    despread = np.einsum('kbi,...ic->...kbc', signature_table(walsh), segs)
    total_energy = np.sum(segs * segs, axis=(-2, -1))
    return np.sum(despread * despread, axis=-1) - total_energy[..., None, None]


def decide(metrics: np.ndarray) -> np.ndarray:
    """Turn (..., 2) metric pairs into bits, ties toward 0."""
    metrics = np.asarray(metrics)
    return (metrics[..., 1] > metrics[..., 0]).astype(np.int8)
