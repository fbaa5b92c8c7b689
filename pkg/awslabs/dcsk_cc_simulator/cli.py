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
"""Command-line interface: simulate, analyze, throughput, validate-pdf, reproduce."""

import os
import sys
import typer
from awslabs.dcsk_cc_simulator.consts import (
    CSV_COLUMNS,
    DEFAULT_LOG_LEVEL,
    DEFAULT_MASTER_SEED,
    EXIT_CONFIG_ERROR,
    EXIT_IO_ERROR,
    EXIT_NUMERICAL_ERROR,
    LOG_LEVEL_ENV,
    PDF_VALIDATION_MIN_SAMPLES,
)
from awslabs.dcsk_cc_simulator.models.analysis_models import GammaParams
from awslabs.dcsk_cc_simulator.models.common import Experiment
from awslabs.dcsk_cc_simulator.models.sweep_models import SweepConfig, SweepResult
from awslabs.dcsk_cc_simulator.services import harness
from awslabs.dcsk_cc_simulator.services.dcsk_common import (
    ConfigurationError,
    DataFileError,
    NumericalError,
    SimulationError,
)
from awslabs.dcsk_cc_simulator.utils.csv_utils import (
    load_config_file,
    read_sweep_curves,
    sweep_rows,
    write_gain_table_csv,
    write_sweep_csv,
    write_throughput_csv,
)
from contextlib import contextmanager
from loguru import logger
from typing import Any, Dict, Iterator, List, Optional


app = typer.Typer(
    name='dcsk-cc',
    help='Simulate and analyze multi-user DCSK with decode-and-forward cooperation.',
    no_args_is_help=True,
)


@app.callback()
def configure_logging(
    verbose: bool = typer.Option(False, '--verbose', '-v', help='Log at DEBUG level.'),
) -> None:
    """Set up loguru before any command runs."""
    logger.remove()
    level = 'DEBUG' if verbose else os.getenv(LOG_LEVEL_ENV, DEFAULT_LOG_LEVEL)
    logger.add(sys.stderr, level=level)


@contextmanager
def exit_codes() -> Iterator[None]:
    """Translate package errors into the documented process exit codes."""
    try:
        yield
    except NumericalError as e:
        _fail(e.message, EXIT_NUMERICAL_ERROR)
    except (DataFileError, OSError) as e:
        _fail(str(e), EXIT_IO_ERROR)
    except (ConfigurationError, ValueError) as e:
        # pydantic ValidationError is a ValueError
        _fail(str(e), EXIT_CONFIG_ERROR)
    except SimulationError as e:
        _fail(e.message, e.exit_code)


def _fail(message: str, code: int) -> None:
    logger.error(message)
    typer.echo(f'Error: {message}', err=True)
    raise typer.Exit(code=code)


def _split(value: Optional[str]) -> Optional[List[str]]:
    if value is None:
        return None
    return [item.strip() for item in value.split(',') if item.strip()]


def build_config(config_file: Optional[str], overrides: Dict[str, Any]) -> SweepConfig:
    """Merge file values with command-line overrides; flags win over the file.

    Raises:
        ConfigurationError: If the file has unknown keys.
        DataFileError: If the file cannot be read.
        ValidationError: If the merged values are invalid.
    """
    values: Dict[str, Any] = load_config_file(config_file) if config_file else {}
    values.update({k: v for k, v in overrides.items() if v is not None})
    return SweepConfig.model_validate(values)


def _emit_sweep(result: SweepResult, output: Optional[str]) -> None:
    if output:
        write_sweep_csv(result, output)
        typer.echo(output)
    else:
        typer.echo(','.join(CSV_COLUMNS))
        for row in sweep_rows(result):
            typer.echo(','.join(row))


def _sweep_overrides(
    systems: Optional[str],
    grid: Optional[str],
    num_users: Optional[int],
    beta: Optional[int],
    m: Optional[float],
    num_paths: Optional[int],
    delays: Optional[str],
    seed: Optional[int],
    d_sd: Optional[float] = None,
    d_sr: Optional[float] = None,
    d_rd: Optional[float] = None,
    combining: Optional[str] = None,
) -> Dict[str, Any]:
    return {
        'systems': _split(systems),
        'eb_n0_grid_db': _split(grid),
        'num_users': num_users,
        'beta': beta,
        'm': m,
        'num_paths': num_paths,
        'delays': _split(delays),
        'master_seed': seed,
        'd_sd': d_sd,
        'd_sr': d_sr,
        'd_rd': d_rd,
        'combining': combining,
    }


SYSTEMS_HELP = 'Comma-separated systems (cc_sim, nc_sim, cc_analytical, cc_analytical_exact).'
COMBINING_HELP = 'blind (always add phase-2 metrics) or informed (drop unforwarded users).'


@app.command()
def simulate(
    config: Optional[str] = typer.Option(None, '--config', '-c', help='key=value config file.'),
    systems: Optional[str] = typer.Option(None, help=SYSTEMS_HELP),
    grid: Optional[str] = typer.Option(None, help='Comma-separated Eb/N0 grid in dB.'),
    num_users: Optional[int] = typer.Option(None, '--num-users', help='Number of users N.'),
    beta: Optional[int] = typer.Option(None, help='Sub-spreading factor.'),
    m: Optional[float] = typer.Option(None, '--m', help='Nakagami fading factor.'),
    num_paths: Optional[int] = typer.Option(None, '--num-paths', help='Number of paths L.'),
    delays: Optional[str] = typer.Option(None, help='Comma-separated path delays in chips.'),
    seed: Optional[int] = typer.Option(None, '--seed', help='Master seed.'),
    d_sd: Optional[float] = typer.Option(None, '--d-sd', help='Source-destination distance.'),
    d_sr: Optional[float] = typer.Option(None, '--d-sr', help='User-user distance.'),
    d_rd: Optional[float] = typer.Option(None, '--d-rd', help='Relay-destination distance.'),
    combining: Optional[str] = typer.Option(None, help=COMBINING_HELP),
    min_errors: Optional[int] = typer.Option(None, '--min-errors', help='Errors per point.'),
    max_bits: Optional[int] = typer.Option(None, '--max-bits', help='Bit budget per point.'),
    workers: Optional[int] = typer.Option(None, help='Parallel worker processes.'),
    batch_periods: Optional[int] = typer.Option(None, '--batch-periods'),
    relay_policy: Optional[str] = typer.Option(
        None, '--relay-policy', help='per_user, all_or_nothing or idle.'
    ),
    noiseless: Optional[bool] = typer.Option(None, '--noiseless/--noisy'),
    wall_time: Optional[bool] = typer.Option(None, '--wall-time/--no-wall-time'),
    output: Optional[str] = typer.Option(None, '--output', '-o', help='CSV file to write.'),
) -> None:
    """Run a Monte Carlo and analytical sweep and emit CSV."""
    with exit_codes():
        overrides = _sweep_overrides(
            systems, grid, num_users, beta, m, num_paths, delays, seed, d_sd, d_sr, d_rd, combining
        )
        overrides.update(
            {
                'min_errors': min_errors,
                'max_bits': max_bits,
                'workers': workers,
                'batch_periods': batch_periods,
                'relay_policy': relay_policy,
                'noiseless': noiseless,
                'record_wall_time': wall_time,
            }
        )
        _emit_sweep(harness.run_sweep(build_config(config, overrides)), output)


@app.command()
def analyze(
    config: Optional[str] = typer.Option(None, '--config', '-c', help='key=value config file.'),
    systems: Optional[str] = typer.Option(
        'cc_analytical', help='cc_analytical and/or cc_analytical_exact.'
    ),
    grid: Optional[str] = typer.Option(None, help='Comma-separated Eb/N0 grid in dB.'),
    num_users: Optional[int] = typer.Option(None, '--num-users'),
    beta: Optional[int] = typer.Option(None),
    m: Optional[float] = typer.Option(None, '--m'),
    num_paths: Optional[int] = typer.Option(None, '--num-paths'),
    delays: Optional[str] = typer.Option(None),
    d_sd: Optional[float] = typer.Option(None, '--d-sd'),
    d_sr: Optional[float] = typer.Option(None, '--d-sr'),
    d_rd: Optional[float] = typer.Option(None, '--d-rd'),
    combining: Optional[str] = typer.Option(None, help=COMBINING_HELP),
    output: Optional[str] = typer.Option(None, '--output', '-o', help='CSV file to write.'),
) -> None:
    """Evaluate analytical BER curves only."""
    with exit_codes():
        overrides = _sweep_overrides(
            systems, grid, num_users, beta, m, num_paths, delays, None, d_sd, d_sr, d_rd, combining
        )
        overrides['record_wall_time'] = False
        cfg = build_config(config, overrides)
        simulated = [s.value for s in cfg.systems if s.is_simulated]
        if simulated:
            raise ConfigurationError(f'analyze evaluates analytical systems only, got {simulated}')
        _emit_sweep(harness.run_sweep(cfg), output)


@app.command()
def throughput(
    input_csv: str = typer.Option(..., '--input', '-i', help='Sweep CSV to read BER curves from.'),
    num_users: int = typer.Option(4, '--num-users', help='Number of users N.'),
    mimo_ber_file: Optional[str] = typer.Option(
        None, '--mimo-ber-file', help='Two-column (eb_n0_db, ber) CSV of the MIMO relay system.'
    ),
    output: Optional[str] = typer.Option(None, '--output', '-o', help='CSV file to write.'),
) -> None:
    """Report normalized throughput of the cooperative, direct and MIMO relay systems."""
    with exit_codes():
        grid, curves = read_sweep_curves(input_csv)
        cc_key = next(
            (k for k in ('cc_sim', 'cc_analytical', 'cc_analytical_exact') if k in curves), None
        )
        if cc_key is None:
            raise ConfigurationError(f'{input_csv} holds no cooperative BER curve')
        mapping = {'cc': curves[cc_key]}
        if 'nc_sim' in curves:
            mapping['nc'] = curves['nc_sim']
        rows = harness.throughput_report(mapping, num_users, mimo_ber_file, grid_db=grid)
        if output:
            write_throughput_csv(rows, output)
            typer.echo(output)
        else:
            for row in rows:
                typer.echo(row.model_dump_json())


@app.command('validate-pdf')
def validate_pdf(
    x2: float = typer.Option(4.0, '--x2', help='Shape of the first summand.'),
    y2: float = typer.Option(1.25, '--y2', help='Scale of the first summand.'),
    x3: float = typer.Option(12.0, '--x3', help='Shape of the second summand.'),
    y3: float = typer.Option(10.0 / 24.0, '--y3', help='Scale of the second summand.'),
    samples: int = typer.Option(
        1_000_000, help=f'Sampled sums (at least {PDF_VALIDATION_MIN_SAMPLES}).'
    ),
    seed: int = typer.Option(DEFAULT_MASTER_SEED, '--seed'),
) -> None:
    """Check the sum-of-gammas density against sampled sums; exit 3 when it fails."""
    with exit_codes():
        report = harness.validate_pdf(
            GammaParams(shape=x2, scale=y2), GammaParams(shape=x3, scale=y3), samples, seed
        )
        typer.echo(report.model_dump_json(indent=2))
        if not report.passed:
            raise NumericalError(
                f'Integrated absolute error {report.integrated_abs_error:.3e} '
                f'(limit {report.tolerance:g}), density z {report.density_max_z:.2f} '
                f'(limit {report.density_z_limit:g})'
            )


@app.command()
def reproduce(
    experiment: Experiment = typer.Argument(
        ..., help='Preset experiment: ber, throughput or fading.'
    ),
    output_dir: str = typer.Option('results', '--output-dir', help='Directory for CSV files.'),
    seed: int = typer.Option(DEFAULT_MASTER_SEED, '--seed'),
    workers: int = typer.Option(1, help='Parallel worker processes.'),
    max_bits: Optional[int] = typer.Option(None, '--max-bits', help='Bit budget per point.'),
    mimo_ber_file: Optional[str] = typer.Option(None, '--mimo-ber-file'),
) -> None:
    """Run a preset experiment and write its CSV files."""
    with exit_codes():
        result = harness.reproduce(experiment, seed, workers, max_bits, mimo_ber_file)
        written = []
        for sweep in result.sweeps:
            suffix = f'_m{sweep.config.m:g}' if experiment == Experiment.FADING else ''
            path = os.path.join(output_dir, f'{experiment.value}{suffix}.csv')
            written.append(write_sweep_csv(sweep, path))
        if result.throughput:
            path = os.path.join(output_dir, f'{experiment.value}_throughput.csv')
            written.append(write_throughput_csv(result.throughput, path))
        if result.gain_table:
            path = os.path.join(output_dir, f'{experiment.value}_gains.csv')
            written.append(write_gain_table_csv(result.gain_table, path))
        for path in written:
            typer.echo(path)


def main() -> None:
    """Run the command-line interface."""
    app()


if __name__ == '__main__':
    main()
