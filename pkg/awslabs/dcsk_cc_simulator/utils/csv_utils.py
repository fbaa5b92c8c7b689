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
"""CSV and configuration file helpers for sweeps and reports."""

import csv
import os
from awslabs.dcsk_cc_simulator.consts import CSV_COLUMNS, CSV_SIGNIFICANT_DIGITS
from awslabs.dcsk_cc_simulator.models.sweep_models import (
    FadingGainRow,
    SweepConfig,
    SweepResult,
    ThroughputRow,
)
from awslabs.dcsk_cc_simulator.services.dcsk_common import ConfigurationError, DataFileError
from dotenv import dotenv_values
from loguru import logger
from typing import Any, Dict, List, Optional, Sequence, Tuple


LIST_KEYS = ('systems', 'eb_n0_grid_db', 'delays')


def format_float(value: Optional[float]) -> str:
    """Format a float with 10 significant digits; None becomes an empty field."""
    if value is None:
        return ''
    return f'{value:.{CSV_SIGNIFICANT_DIGITS}g}'


def _write_rows(path: str, header: Sequence[str], rows: List[List[str]]) -> str:
    try:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, 'w', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as e:
        raise DataFileError(path, f'cannot write: {e}') from e
    logger.info(f'Wrote {len(rows)} row(s) to {path}')
    return path


def sweep_rows(result: SweepResult) -> List[List[str]]:
    """Render sweep points as CSV fields in the fixed column order."""
    return [
        [
            format_float(p.eb_n0_db),
            p.system.value,
            format_float(p.ber),
            format_float(p.stderr),
            str(p.bits),
            str(p.errors),
            format_float(p.throughput),
            format_float(p.wall_ms),
        ]
        for p in result.points
    ]


def write_sweep_csv(result: SweepResult, path: str) -> str:
    """Write a sweep result as CSV.

    Args:
        result: The sweep result.
        path: Destination file; parent directories are created.

    Returns:
        The path written.

    Raises:
        DataFileError: If the file cannot be written.
    """
    return _write_rows(path, CSV_COLUMNS, sweep_rows(result))


def write_throughput_csv(rows: List[ThroughputRow], path: str) -> str:
    """Write a throughput table as CSV."""
    return _write_rows(
        path,
        ('eb_n0_db', 'eta_cc', 'eta_nc', 'eta_mimo', 'crossover'),
        [
            [
                format_float(r.eb_n0_db),
                format_float(r.eta_cc),
                format_float(r.eta_nc),
                format_float(r.eta_mimo),
                str(int(r.crossover)),
            ]
            for r in rows
        ],
    )


def write_gain_table_csv(rows: List[FadingGainRow], path: str) -> str:
    """Write a fading-depth gain table as CSV."""
    return _write_rows(
        path,
        ('m', 'target_ber', 'eb_n0_db', 'gain_db'),
        [
            [
                format_float(r.m),
                format_float(r.target_ber),
                format_float(r.eb_n0_db),
                format_float(r.gain_db),
            ]
            for r in rows
        ],
    )


def _read_rows(path: str) -> List[List[str]]:
    if not os.path.exists(path):
        raise DataFileError(path, 'file not found')
    try:
        with open(path, newline='') as f:
            return [row for row in csv.reader(f) if row and any(c.strip() for c in row)]
    except (OSError, csv.Error, UnicodeDecodeError) as e:
        raise DataFileError(path, f'cannot read: {e}') from e


def read_ber_curve(path: str) -> List[Tuple[float, float]]:
    """Read a two-column (eb_n0_db, ber) CSV; a header row is optional.

    Args:
        path: The CSV file.

    Returns:
        (eb_n0_db, ber) pairs in file order.

    Raises:
        DataFileError: If the file is missing, malformed, or holds a BER outside [0, 1].
    """
    rows = _read_rows(path)
    if rows:
        try:
            float(rows[0][0])
        except ValueError:
            rows = rows[1:]
    if not rows:
        raise DataFileError(path, 'no data rows')

    curve = []
    for line, row in enumerate(rows, start=1):
        if len(row) != 2:
            raise DataFileError(path, f'row {line} has {len(row)} columns, expected 2')
        try:
            eb_n0_db, ber = float(row[0]), float(row[1])
        except ValueError as e:
            raise DataFileError(path, f'row {line} is not numeric') from e
        if not 0.0 <= ber <= 1.0:
            raise DataFileError(path, f'row {line} has BER {ber} outside [0, 1]')
        curve.append((eb_n0_db, ber))
    return curve


def read_sweep_curves(path: str) -> Tuple[List[float], Dict[str, List[float]]]:
    """Read a sweep CSV back into a grid and per-system BER curves.

    Raises:
        DataFileError: If the header or any row is malformed.
    """
    rows = _read_rows(path)
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise DataFileError(path, 'missing or unexpected sweep CSV header')
    grid: List[float] = []
    curves: Dict[str, List[float]] = {}
    try:
        for row in rows[1:]:
            eb_n0_db, system, ber = float(row[0]), row[1], float(row[2])
            if not grid or eb_n0_db != grid[-1]:
                grid.append(eb_n0_db)
            curves.setdefault(system, []).append(ber)
    except (ValueError, IndexError) as e:
        raise DataFileError(path, f'malformed sweep row: {e}') from e
    return grid, curves


def load_config_file(path: str) -> Dict[str, Any]:
    """Load a flat key=value sweep configuration file.

    Keys mirror SweepConfig fields; systems, eb_n0_grid_db and delays take
    comma-separated lists. Values are left as strings for pydantic to coerce.

    Args:
        path: The configuration file.

    Returns:
        Field values keyed by SweepConfig field name.

    Raises:
        DataFileError: If the file does not exist.
        ConfigurationError: If a key is unknown or has no value.
    """
    if not os.path.isfile(path):
        raise DataFileError(path, 'config file not found')
    raw = dotenv_values(path)
    known = set(SweepConfig.model_fields)
    values: Dict[str, Any] = {}
    for key, value in raw.items():
        if key not in known:
            raise ConfigurationError(f'Unknown configuration key: {key}')
        if value is None or value.strip() == '':
            raise ConfigurationError(f'Configuration key {key} has no value')
        if key in LIST_KEYS:
            values[key] = [item.strip() for item in value.split(',') if item.strip()]
        else:
            values[key] = value.strip()
    logger.debug(f'Loaded {len(values)} configuration value(s) from {path}')
    return values
