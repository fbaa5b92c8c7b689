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
"""DCSK cooperative simulator MCP Server implementation."""

import asyncio
import os
import sys
from awslabs.dcsk_cc_simulator.consts import (
    DEFAULT_BETA,
    DEFAULT_DISTANCE_RD,
    DEFAULT_DISTANCE_SD,
    DEFAULT_DISTANCE_SR,
    DEFAULT_FADING_M,
    DEFAULT_LOG_LEVEL,
    DEFAULT_MASTER_SEED,
    DEFAULT_MAX_BITS,
    DEFAULT_MIN_ERRORS,
    DEFAULT_NUM_PATHS,
    DEFAULT_NUM_USERS,
    LOG_LEVEL_ENV,
)
from awslabs.dcsk_cc_simulator.models.analysis_models import GammaParams
from awslabs.dcsk_cc_simulator.models.common import SweepSystem
from awslabs.dcsk_cc_simulator.models.sweep_models import (
    PdfValidationReport,
    SweepConfig,
    SweepResult,
    ThroughputRow,
)
from awslabs.dcsk_cc_simulator.services import harness
from loguru import logger
from mcp.server.fastmcp import Context, FastMCP
from pydantic import Field
from typing import Dict, List, Optional, Tuple


# Logging
logger.remove()
logger.add(sys.stderr, level=os.getenv(LOG_LEVEL_ENV, DEFAULT_LOG_LEVEL))


mcp = FastMCP(
    'awslabs-dcsk-cc-simulator',
    instructions="""
# Multi-user DCSK with decode-and-forward cooperation

This MCP server simulates and analyzes an N-user multiple-access DCSK system
in which users relay each other's bits over Nakagami-m multipath fading.

## Available Tools

- **simulate_sweep**: Monte Carlo and analytical BER over an Eb/N0 grid.
- **analyze_ber**: Analytical BER curves only (fast).
- **throughput_report**: Normalized throughput from BER curves, with an optional MIMO relay curve.
- **validate_pdf**: Check the sum-of-gammas SNR density against sampled sums.

## Systems

- `cc_sim`: simulated cooperative system
- `nc_sim`: simulated direct (non-cooperative) system
- `cc_analytical`: Gaussian-approximation analysis with all-or-nothing relays
- `cc_analytical_exact`: exact receiver kernel with per-relay decode mixture

Simulated points at low BER are expensive; keep grids in the 1e-2 to 1e-4 regime
or lower max_bits for quick answers.
""",
    dependencies=[
        'pydantic',
        'numpy',
        'scipy',
    ],
)


def _path_delays(delays: Optional[List[int]], num_paths: int) -> Tuple[int, ...]:
    return tuple(range(num_paths)) if delays is None else tuple(delays)


@mcp.tool(name='simulate_sweep')
async def mcp_simulate_sweep(
    ctx: Context,
    eb_n0_grid_db: List[float] = Field(description='Strictly increasing Eb/N0 grid in dB'),
    systems: List[str] = Field(
        default=['cc_sim', 'cc_analytical'],
        description='Systems to evaluate: cc_sim, nc_sim, cc_analytical, cc_analytical_exact',
    ),
    num_users: int = Field(
        default=DEFAULT_NUM_USERS, description='Number of users N (2N a power of two)'
    ),
    beta: int = Field(default=DEFAULT_BETA, description='Sub-spreading factor (chips per segment)'),
    m: float = Field(default=DEFAULT_FADING_M, description='Nakagami fading factor (>= 0.5)'),
    num_paths: int = Field(default=DEFAULT_NUM_PATHS, description='Number of paths L'),
    delays: Optional[List[int]] = Field(
        default=None, description='Chip delay of each path; default 0, 1, ..., L-1'
    ),
    d_sd: float = Field(default=DEFAULT_DISTANCE_SD, description='Source-destination distance'),
    d_sr: float = Field(default=DEFAULT_DISTANCE_SR, description='User-user distance'),
    d_rd: float = Field(default=DEFAULT_DISTANCE_RD, description='Relay-destination distance'),
    combining: str = Field(
        default='blind',
        description='blind (always add phase-2 metrics) or informed (drop unforwarded users)',
    ),
    min_errors: int = Field(
        default=DEFAULT_MIN_ERRORS, description='Errors that end a point (>= 10)'
    ),
    max_bits: int = Field(default=DEFAULT_MAX_BITS, description='Bit budget per simulated point'),
    master_seed: int = Field(default=DEFAULT_MASTER_SEED, description='Master seed'),
    workers: int = Field(default=1, description='Parallel worker processes'),
) -> SweepResult:
    """Run an Eb/N0 sweep of simulated and analytical systems.

    Delays default to one path per chip offset (0, 1, ...) and distances to 1.
    Simulated points stop at min_errors destination errors or max_bits bits.

    Returns:
        SweepResult: BER, standard error, counts and throughput per point and system.
    """
    logger.debug(f'MCP tool simulate_sweep called for {systems} over {eb_n0_grid_db}')
    try:
        cfg = SweepConfig(
            systems=[SweepSystem(s) for s in systems],
            eb_n0_grid_db=eb_n0_grid_db,
            num_users=num_users,
            beta=beta,
            m=m,
            num_paths=num_paths,
            delays=_path_delays(delays, num_paths),
            d_sd=d_sd,
            d_sr=d_sr,
            d_rd=d_rd,
            combining=combining,
            min_errors=min_errors,
            max_bits=max_bits,
            master_seed=master_seed,
            workers=workers,
        )
        return await asyncio.to_thread(harness.run_sweep, cfg)
    except Exception as e:
        logger.error(f'Error in mcp_simulate_sweep: {str(e)}')
        await ctx.error(f'Error running sweep: {str(e)}')
        raise


@mcp.tool(name='analyze_ber')
async def mcp_analyze_ber(
    ctx: Context,
    eb_n0_grid_db: List[float] = Field(description='Strictly increasing Eb/N0 grid in dB'),
    exact: bool = Field(
        default=False,
        description='Use the exact receiver kernel with per-relay decoding instead of the Gaussian approximation',
    ),
    num_users: int = Field(default=DEFAULT_NUM_USERS, description='Number of users N'),
    beta: int = Field(default=DEFAULT_BETA, description='Sub-spreading factor'),
    m: float = Field(default=DEFAULT_FADING_M, description='Nakagami fading factor (>= 0.5)'),
    num_paths: int = Field(default=DEFAULT_NUM_PATHS, description='Number of paths L'),
    delays: Optional[List[int]] = Field(
        default=None, description='Chip delay of each path; default 0, 1, ..., L-1'
    ),
    d_sd: float = Field(default=DEFAULT_DISTANCE_SD, description='Source-destination distance'),
    d_sr: float = Field(default=DEFAULT_DISTANCE_SR, description='User-user distance'),
    d_rd: float = Field(default=DEFAULT_DISTANCE_RD, description='Relay-destination distance'),
    combining: str = Field(
        default='blind',
        description='blind (always add phase-2 metrics) or informed (drop unforwarded users)',
    ),
) -> SweepResult:
    """Evaluate the analytical BER of the cooperative system over a grid.

    Returns:
        SweepResult: Analytical BER and throughput per grid point.
    """
    system = SweepSystem.CC_ANALYTICAL_EXACT if exact else SweepSystem.CC_ANALYTICAL
    try:
        cfg = SweepConfig(
            systems=[system],
            eb_n0_grid_db=eb_n0_grid_db,
            num_users=num_users,
            beta=beta,
            m=m,
            num_paths=num_paths,
            delays=_path_delays(delays, num_paths),
            d_sd=d_sd,
            d_sr=d_sr,
            d_rd=d_rd,
            combining=combining,
            record_wall_time=False,
        )
        return await asyncio.to_thread(harness.run_sweep, cfg)
    except Exception as e:
        logger.error(f'Error in mcp_analyze_ber: {str(e)}')
        await ctx.error(f'Error analyzing BER: {str(e)}')
        raise


@mcp.tool(name='throughput_report')
async def mcp_throughput_report(
    ctx: Context,
    eb_n0_grid_db: List[float] = Field(description='Eb/N0 grid in dB shared by all curves'),
    ber_curves: Dict[str, List[float]] = Field(
        description="BER curves keyed by 'cc', 'nc' and optionally 'mimo', one value per grid point"
    ),
    num_users: int = Field(default=DEFAULT_NUM_USERS, description='Number of users N'),
    mimo_ber_file: Optional[str] = Field(
        default=None, description='Two-column (eb_n0_db, ber) CSV of the MIMO relay system'
    ),
) -> List[ThroughputRow]:
    """Compute normalized throughput from BER curves.

    Returns:
        List[ThroughputRow]: eta_cc, eta_nc, eta_mimo per grid point with crossovers flagged.
    """
    try:
        return harness.throughput_report(
            ber_curves, num_users, mimo_ber_file, grid_db=eb_n0_grid_db
        )
    except Exception as e:
        logger.error(f'Error in mcp_throughput_report: {str(e)}')
        await ctx.error(f'Error computing throughput: {str(e)}')
        raise


@mcp.tool(name='validate_pdf')
async def mcp_validate_pdf(
    ctx: Context,
    x2: float = Field(default=4.0, description='Shape of the first gamma summand'),
    y2: float = Field(default=1.25, description='Scale of the first gamma summand'),
    x3: float = Field(default=12.0, description='Shape of the second gamma summand'),
    y3: float = Field(default=10.0 / 24.0, description='Scale of the second gamma summand'),
    samples: int = Field(default=1_000_000, description='Sampled sums (>= 100000)'),
    seed: int = Field(default=DEFAULT_MASTER_SEED, description='Sampling seed'),
) -> PdfValidationReport:
    """Compare the sum-of-gammas density with a histogram of sampled sums.

    Returns:
        PdfValidationReport: Integrated absolute error, pass/fail and series diagnostics.
    """
    try:
        return await asyncio.to_thread(
            harness.validate_pdf,
            GammaParams(shape=x2, scale=y2),
            GammaParams(shape=x3, scale=y3),
            samples,
            seed,
        )
    except Exception as e:
        logger.error(f'Error in mcp_validate_pdf: {str(e)}')
        await ctx.error(f'Error validating density: {str(e)}')
        raise


def main():
    """Run the MCP server."""
    logger.info('Starting dcsk-cc-simulator MCP server')
    mcp.run()


if __name__ == '__main__':
    main()
