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
"""Monte Carlo sweep engine, throughput report, density validation, and presets.

Simulated points run in replications of batch_periods periods. Replication r
of point p for system s draws everything from the stream keyed
(master_seed, p, s, r), replications are aggregated in index order, and the
point stops at the first replication where the error or bit budget is met.
Results therefore do not depend on the number of workers.
"""

import math
import numpy as np
import time
from awslabs.dcsk_cc_simulator.consts import (
    DEFAULT_EB,
    DEFAULT_MASTER_SEED,
    GRID_MATCH_TOLERANCE_DB,
    PDF_DENSITY_BINS,
    PDF_DENSITY_MAX_Z,
    PDF_DENSITY_TAIL,
    PDF_VALIDATION_BINS_PER_SAMPLE,
    PDF_VALIDATION_MAX_BINS,
    PDF_VALIDATION_MIN_BINS,
    PDF_VALIDATION_MIN_SAMPLES,
    PDF_VALIDATION_TOLERANCE,
    PRESET_FADING_GRID_DB,
    PRESET_FADING_M_VALUES,
    PRESET_FADING_TARGET_BERS,
    PRESET_SIM_GRID_DB,
    PRESET_SIM_MAX_BITS,
)
from awslabs.dcsk_cc_simulator.models.analysis_models import GammaParams, SystemConfig
from awslabs.dcsk_cc_simulator.models.common import Experiment, SweepSystem, ThroughputSystem
from awslabs.dcsk_cc_simulator.models.cooperation_models import EnergyPolicy, NoiseConfig
from awslabs.dcsk_cc_simulator.models.sweep_models import (
    FadingGainRow,
    PdfValidationReport,
    ReproductionResult,
    SweepConfig,
    SweepPoint,
    SweepResult,
    ThroughputRow,
)
from awslabs.dcsk_cc_simulator.services import analysis
from awslabs.dcsk_cc_simulator.services.channel import sample_gamma
from awslabs.dcsk_cc_simulator.services.cooperation import run_cc_periods, run_nc_periods
from awslabs.dcsk_cc_simulator.services.dcsk_common import (
    ConfigurationError,
    NumericalError,
    derive_rng,
)
from awslabs.dcsk_cc_simulator.utils.csv_utils import read_ber_curve
from concurrent.futures import Executor, ProcessPoolExecutor
from loguru import logger
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union


# Stable per-system stream ids, independent of the order systems are requested in
_SYSTEM_STREAM_IDS: Dict[SweepSystem, int] = {s: i for i, s in enumerate(SweepSystem)}

ReplicationTask = Tuple[SweepConfig, int, SweepSystem, int, float, int]


def _run_replication(task: ReplicationTask) -> Tuple[int, int, List[int]]:
    """Simulate one replication and return (errors, bits, per-user errors)."""
    cfg, point, system, replication, eb_n0_db, periods = task
    rng = derive_rng(cfg.master_seed, point, _SYSTEM_STREAM_IDS[system], replication)
    bits = rng.integers(0, 2, size=(periods, cfg.num_users), dtype=np.int8)
    noise = (
        NoiseConfig.noiseless()
        if cfg.noiseless
        else NoiseConfig.from_eb_n0_db(DEFAULT_EB, eb_n0_db)
    )
    energy = EnergyPolicy(eb=DEFAULT_EB, num_users=cfg.num_users)
    args = (cfg.modulation(), cfg.channel_profile(), cfg.geometry(), energy, noise, bits, rng)
    if system == SweepSystem.CC_SIM:
        outcome = run_cc_periods(*args, policy=cfg.relay_policy, combining=cfg.combining)
    else:
        outcome = run_nc_periods(*args)
    return outcome.errors(), outcome.bits, outcome.errors_per_user().tolist()


def _simulate_point(
    cfg: SweepConfig,
    point: int,
    system: SweepSystem,
    eb_n0_db: float,
    executor: Optional[Executor],
) -> Tuple[int, int, List[int]]:
    bits_per_replication = cfg.batch_periods * cfg.num_users
    max_replications = math.ceil(cfg.max_bits / bits_per_replication)

    def periods_for(replication: int) -> int:
        remaining_bits = cfg.max_bits - replication * bits_per_replication
        return min(cfg.batch_periods, math.ceil(remaining_bits / cfg.num_users))

    errors, bits = 0, 0
    per_user = np.zeros(cfg.num_users, dtype=np.int64)
    next_replication = 0
    wave = cfg.workers
    while next_replication < max_replications:
        indices = range(next_replication, min(next_replication + wave, max_replications))
        tasks = [(cfg, point, system, r, eb_n0_db, periods_for(r)) for r in indices]
        runner = executor.map if executor is not None else map
        results = runner(_run_replication, tasks)
        for replication_errors, replication_bits, replication_per_user in results:
            errors += replication_errors
            bits += replication_bits
            per_user += np.asarray(replication_per_user, dtype=np.int64)
            if errors >= cfg.min_errors or bits >= cfg.max_bits:
                return errors, bits, per_user.tolist()
        next_replication = indices[-1] + 1
        logger.debug(f'{system.value} at {eb_n0_db} dB: {errors} errors in {bits} bits')
    return errors, bits, per_user.tolist()


def _evaluate_point(
    cfg: SweepConfig,
    point: int,
    system: SweepSystem,
    eb_n0_db: float,
    executor: Optional[Executor],
) -> SweepPoint:
    started = time.perf_counter()
    throughput_system = (
        ThroughputSystem.NC if system == SweepSystem.NC_SIM else ThroughputSystem.CC
    )
    if system.is_simulated:
        errors, bits, per_user = _simulate_point(cfg, point, system, eb_n0_db, executor)
        ber = errors / bits
        stderr = math.sqrt(ber * (1.0 - ber) / bits)
    else:
        try:
            ber = analysis.system_ber_cc(cfg.system_config(eb_n0_db, system))
        except NumericalError as e:
            logger.error(f'Analytical evaluation failed for {system.value} at {eb_n0_db} dB')
            raise NumericalError(
                f'{system.value} at {eb_n0_db} dB: {e.message}', residual=e.residual
            ) from e
        errors, bits, per_user, stderr = 0, 0, [], 0.0
    wall_ms = (time.perf_counter() - started) * 1000.0 if cfg.record_wall_time else 0.0

    logger.info(
        f'{system.value} at {eb_n0_db} dB: BER {ber:.4e}',
        extra={'eb_n0_db': eb_n0_db, 'system': system.value, 'errors': errors, 'bits': bits},
    )
    return SweepPoint(
        eb_n0_db=eb_n0_db,
        system=system,
        ber=ber,
        stderr=stderr,
        bits=bits,
        errors=errors,
        throughput=analysis.throughput(ber, throughput_system, cfg.num_users),
        wall_ms=wall_ms,
        per_user_errors=per_user,
    )


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """Evaluate every requested system at every grid point.

    Simulated systems run until min_errors destination errors (summed over
    users) or max_bits destination bits; analytical systems are evaluated
    directly.

    Args:
        cfg: The sweep configuration.

    Returns:
        Points in grid order, then in the order systems were requested.

    Raises:
        NumericalError: If an analytical evaluation fails; the message names the point.
    """
    logger.info(
        f'Starting sweep of {len(cfg.eb_n0_grid_db)} point(s) for '
        f'{", ".join(s.value for s in cfg.systems)} with {cfg.workers} worker(s)'
    )
    simulated = any(s.is_simulated for s in cfg.systems)
    executor = None
    if simulated and cfg.workers > 1:
        executor = ProcessPoolExecutor(max_workers=cfg.workers)
    points = []
    try:
        for point, eb_n0_db in enumerate(cfg.eb_n0_grid_db):
            for system in cfg.systems:
                points.append(_evaluate_point(cfg, point, system, eb_n0_db, executor))
    finally:
        if executor is not None:
            executor.shutdown(wait=True, cancel_futures=True)
    logger.info(f'Sweep finished: {len(points)} result(s)')
    return SweepResult(config=cfg, points=points)


def _curves_from(
    ber_curves: Union[SweepResult, Mapping[str, Sequence[float]]],
    grid_db: Optional[Sequence[float]],
) -> Tuple[List[float], Dict[ThroughputSystem, List[float]]]:
    if isinstance(ber_curves, SweepResult):
        present = set(ber_curves.config.systems)
        curves: Dict[ThroughputSystem, List[float]] = {}
        for candidate in (
            SweepSystem.CC_SIM,
            SweepSystem.CC_ANALYTICAL,
            SweepSystem.CC_ANALYTICAL_EXACT,
        ):
            if candidate in present:
                curves[ThroughputSystem.CC] = ber_curves.curve(candidate)
                break
        if SweepSystem.NC_SIM in present:
            curves[ThroughputSystem.NC] = ber_curves.curve(SweepSystem.NC_SIM)
        grid = ber_curves.grid
    else:
        if grid_db is None:
            raise ConfigurationError('A grid is required when BER curves are given as a mapping')
        curves = {ThroughputSystem(k): list(v) for k, v in ber_curves.items()}
        grid = list(grid_db)

    if ThroughputSystem.CC not in curves:
        raise ConfigurationError('A cooperative BER curve is required')
    for system, curve in curves.items():
        if len(curve) != len(grid):
            raise ConfigurationError(
                f'{system.value} curve has {len(curve)} points, the grid has {len(grid)}'
            )
    return grid, curves


def throughput_report(
    ber_curves: Union[SweepResult, Mapping[str, Sequence[float]]],
    n_users: int,
    mimo_ber_file: Optional[str] = None,
    grid_db: Optional[Sequence[float]] = None,
) -> List[ThroughputRow]:
    """Compute normalized throughput of the cooperative, direct and MIMO relay systems.

    Args:
        ber_curves: A sweep result, or a mapping from 'cc' / 'nc' / 'mimo' to BER lists.
        n_users: Number of users N.
        mimo_ber_file: Optional two-column (eb_n0_db, ber) CSV with the MIMO relay BER.
        grid_db: The Eb/N0 grid in dB, required with a mapping.

    Returns:
        One row per grid point, with eta_cc / eta_nc crossovers flagged.

    Raises:
        ConfigurationError: If curves or the MIMO file do not match the grid.
        DataFileError: If the MIMO file is unreadable or malformed.
    """
    grid, curves = _curves_from(ber_curves, grid_db)
    if mimo_ber_file is not None:
        rows = read_ber_curve(mimo_ber_file)
        if len(rows) != len(grid) or any(
            abs(db - g) > GRID_MATCH_TOLERANCE_DB for (db, _), g in zip(rows, grid)
        ):
            raise ConfigurationError(f'{mimo_ber_file}: Eb/N0 values do not match the sweep grid')
        curves[ThroughputSystem.MIMO] = [ber for _, ber in rows]

    def eta(system: ThroughputSystem, i: int) -> Optional[float]:
        if system not in curves:
            return None
        return analysis.throughput(curves[system][i], system, n_users)

    table: List[ThroughputRow] = []
    previous_sign = 0.0
    for i, eb_n0_db in enumerate(grid):
        eta_cc = eta(ThroughputSystem.CC, i)
        eta_nc = eta(ThroughputSystem.NC, i)
        crossover = False
        if eta_cc is not None and eta_nc is not None:
            sign = float(np.sign(eta_cc - eta_nc))
            crossover = sign != 0 and previous_sign != 0 and sign != previous_sign
            if crossover:
                leader = 'cooperative' if sign > 0 else 'direct'
                logger.info(f'Throughput crossover at {eb_n0_db} dB, {leader} system ahead')
            previous_sign = sign or previous_sign
        table.append(
            ThroughputRow(
                eb_n0_db=eb_n0_db,
                eta_cc=eta_cc,
                eta_nc=eta_nc,
                eta_mimo=eta(ThroughputSystem.MIMO, i),
                crossover=crossover,
            )
        )
    return table


def validate_pdf(
    p2: GammaParams, p3: GammaParams, samples: int, seed: int = DEFAULT_MASTER_SEED
) -> PdfValidationReport:
    """Check the sum-of-gammas distribution against sampled sums.

    The samples are split into equiprobable bins at their own quantiles and each
    bin's empirical mass is compared with the model mass. A second, finer check
    compares a uniform-grid histogram with sum_gamma_pdf bin by bin, scaled by
    the counting noise of each bin.

    Args:
        p2: First summand.
        p3: Second summand.
        samples: Number of sampled sums (>= 100000).
        seed: Master seed of the sampling stream.

    Returns:
        The validation report.

    Raises:
        ValueError: If fewer than 100000 samples are requested.
        NumericalError: If the series does not converge.
    """
    if samples < PDF_VALIDATION_MIN_SAMPLES:
        raise ValueError(f'samples must be at least {PDF_VALIDATION_MIN_SAMPLES}, got {samples}')
    series = analysis.moschopoulos_series((p2, p3))
    rng = derive_rng(seed, 0)
    sums = np.sort(
        sample_gamma(p2.shape, p2.scale, rng, size=samples)
        + sample_gamma(p3.shape, p3.scale, rng, size=samples)
    )

    bins = int(
        np.clip(
            math.floor(samples * PDF_VALIDATION_BINS_PER_SAMPLE),
            PDF_VALIDATION_MIN_BINS,
            PDF_VALIDATION_MAX_BINS,
        )
    )
    inner_edges = np.quantile(sums, np.arange(1, bins) / bins)
    counts = np.diff(np.searchsorted(sums, inner_edges, side='right'), prepend=0, append=samples)
    empirical = counts / samples
    cdf = np.concatenate(([0.0], np.atleast_1d(analysis.series_cdf(series, inner_edges)), [1.0]))
    model = np.diff(cdf)
    error = float(np.sum(np.abs(empirical - model)))

    mass_passed = error < PDF_VALIDATION_TOLERANCE

    # density on a uniform grid between the extreme sample quantiles
    lo, hi = np.quantile(sums, [PDF_DENSITY_TAIL, 1.0 - PDF_DENSITY_TAIL])
    edges = np.linspace(lo, hi, PDF_DENSITY_BINS + 1)
    hist, _ = np.histogram(sums, bins=edges)
    width = edges[1] - edges[0]
    density = np.asarray(analysis.sum_gamma_pdf(p2, p3, 0.5 * (edges[1:] + edges[:-1])))
    expected = samples * width * density
    density_error = float(np.sum(np.abs(hist / (samples * width) - density)) * width)
    max_z = float(np.max(np.abs(hist - expected) / np.sqrt(np.maximum(expected, 1.0))))

    passed = mass_passed and max_z < PDF_DENSITY_MAX_Z
    logger.info(
        f'Sum-of-gammas check: error {error:.3e} over {bins} bins, '
        f'density z {max_z:.2f} over {PDF_DENSITY_BINS} bins, '
        f'{"passed" if passed else "failed"}'
    )
    return PdfValidationReport(
        p2=p2,
        p3=p3,
        samples=samples,
        bins=bins,
        integrated_abs_error=error,
        tolerance=PDF_VALIDATION_TOLERANCE,
        density_bins=PDF_DENSITY_BINS,
        density_abs_error=density_error,
        density_max_z=max_z,
        density_z_limit=PDF_DENSITY_MAX_Z,
        passed=passed,
        series_terms=series.terms,
        residual=series.residual,
    )


def fading_gain_table(
    base_cfg: SystemConfig, m_values: Sequence[float], target_ber: float
) -> List[FadingGainRow]:
    """Solve the Eb/N0 needed at target_ber for each fading factor.

    Args:
        base_cfg: Configuration whose m is replaced by each value in turn.
        m_values: Fading factors, in table order.
        target_ber: Target BER.

    Returns:
        One row per m; gain_db is the saving against the previous row.
    """
    rows: List[FadingGainRow] = []
    for m in m_values:
        cfg = SystemConfig.model_validate({**base_cfg.model_dump(), 'm': m})
        required = analysis.required_eb_n0_db(cfg, target_ber)
        gain = rows[-1].eb_n0_db - required if rows else None
        rows.append(FadingGainRow(m=m, target_ber=target_ber, eb_n0_db=required, gain_db=gain))
        logger.info(f'm = {m:g} needs {required:.3f} dB for BER {target_ber:g}')
    return rows


def preset_configs(
    experiment: Experiment,
    master_seed: int = DEFAULT_MASTER_SEED,
    workers: int = 1,
    max_bits: Optional[int] = None,
) -> List[SweepConfig]:
    """Build the sweep configurations of a preset experiment.

    ber and throughput sweep every system over 0-20 dB; fading sweeps the analytical
    cooperative BER over 0-30 dB for m = 1, 2, 3, 4.
    """
    if experiment == Experiment.FADING:
        return [
            SweepConfig(
                systems=[SweepSystem.CC_ANALYTICAL],
                m=m,
                eb_n0_grid_db=list(PRESET_FADING_GRID_DB),
                master_seed=master_seed,
            )
            for m in PRESET_FADING_M_VALUES
        ]
    return [
        SweepConfig(
            systems=[
                SweepSystem.CC_SIM,
                SweepSystem.NC_SIM,
                SweepSystem.CC_ANALYTICAL,
                SweepSystem.CC_ANALYTICAL_EXACT,
            ],
            eb_n0_grid_db=list(PRESET_SIM_GRID_DB),
            max_bits=max_bits or PRESET_SIM_MAX_BITS,
            master_seed=master_seed,
            workers=workers,
        )
    ]


def reproduce(
    experiment: Experiment,
    master_seed: int = DEFAULT_MASTER_SEED,
    workers: int = 1,
    max_bits: Optional[int] = None,
    mimo_ber_file: Optional[str] = None,
) -> ReproductionResult:
    """Run a preset experiment.

    Args:
        experiment: ber (BER curves), throughput, or fading (fading depth).
        master_seed: Master seed of the simulated sweeps.
        workers: Parallel worker processes.
        max_bits: Override of the per-point bit budget of simulated systems.
        mimo_ber_file: MIMO relay BER curve for the throughput table.

    Returns:
        The sweeps and derived tables of the preset.
    """
    logger.info(f'Reproducing {experiment.value}')
    sweeps = [run_sweep(cfg) for cfg in preset_configs(experiment, master_seed, workers, max_bits)]
    result = ReproductionResult(experiment=experiment, sweeps=sweeps)

    if experiment == Experiment.THROUGHPUT:
        result.throughput = throughput_report(
            sweeps[0], sweeps[0].config.num_users, mimo_ber_file
        )
    elif experiment == Experiment.FADING:
        base = sweeps[0].config.system_config(0.0, SweepSystem.CC_ANALYTICAL)
        for target in PRESET_FADING_TARGET_BERS:
            result.gain_table.extend(fading_gain_table(base, PRESET_FADING_M_VALUES, target))
    return result
