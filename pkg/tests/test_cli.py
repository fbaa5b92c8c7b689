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
"""Tests for the command-line interface."""

import json
import os
import pytest
from awslabs.dcsk_cc_simulator.cli import app
from awslabs.dcsk_cc_simulator.consts import CSV_COLUMNS
from awslabs.dcsk_cc_simulator.models import (
    Combining,
    Experiment,
    GammaParams,
    PdfValidationReport,
    ReproductionResult,
    SweepConfig,
    SweepPoint,
    SweepResult,
    SweepSystem,
)
from awslabs.dcsk_cc_simulator.services import harness
from awslabs.dcsk_cc_simulator.services.dcsk_common import NumericalError
from typer.testing import CliRunner


@pytest.fixture
def runner() -> CliRunner:
    """Return a typer test runner."""
    return CliRunner()


def _data_lines(output: str):
    width = len(CSV_COLUMNS) - 1
    return [
        line
        for line in output.splitlines()
        if line.count(',') == width and '|' not in line and line[:1].isdigit()
    ]


class TestAnalyze:
    """Tests for the analyze command."""

    def test_prints_csv(self, runner):
        """Test that analyze prints the header and one row per grid point."""
        result = runner.invoke(app, ['analyze', '--grid', '0,10'])
        assert result.exit_code == 0
        assert ','.join(CSV_COLUMNS) in result.output
        rows = _data_lines(result.output)
        assert len(rows) == 2
        assert all(',cc_analytical,' in row for row in rows)

    def test_rejects_simulated_systems(self, runner):
        """Test that asking analyze for a simulated system exits with code 2."""
        result = runner.invoke(app, ['analyze', '--grid', '0', '--systems', 'cc_sim'])
        assert result.exit_code == 2

    def test_invalid_grid(self, runner):
        """Test that a decreasing grid exits with code 2."""
        result = runner.invoke(app, ['analyze', '--grid', '10,0'])
        assert result.exit_code == 2

    def test_link_distances(self, runner):
        """Test that shorter relay hops lower the analytical BER."""
        base = ['analyze', '--grid', '14', '--systems', 'cc_analytical_exact']
        unit = runner.invoke(app, base)
        near = runner.invoke(app, base + ['--d-sr', '0.5', '--d-rd', '0.5'])
        assert unit.exit_code == 0 and near.exit_code == 0
        ber_unit = float(_data_lines(unit.output)[0].split(',')[2])
        ber_near = float(_data_lines(near.output)[0].split(',')[2])
        assert ber_near < ber_unit

    def test_informed_combining_lowers_the_exact_curve(self, runner):
        """Test that informed combining removes the idle-branch penalty from the analysis."""
        base = ['analyze', '--grid', '6', '--systems', 'cc_analytical_exact']
        blind = runner.invoke(app, base)
        informed = runner.invoke(app, base + ['--combining', 'informed'])
        assert blind.exit_code == 0 and informed.exit_code == 0
        ber_blind = float(_data_lines(blind.output)[0].split(',')[2])
        ber_informed = float(_data_lines(informed.output)[0].split(',')[2])
        assert ber_informed < ber_blind

    def test_invalid_distance(self, runner):
        """Test that a non-positive distance exits with code 2."""
        result = runner.invoke(app, ['analyze', '--grid', '0', '--d-sd', '0'])
        assert result.exit_code == 2

    def test_numerical_failure(self, runner, monkeypatch):
        """Test that a numerical failure exits with code 3."""

        def fail(cfg):
            raise NumericalError('series did not converge', residual=0.1)

        monkeypatch.setattr(harness, 'run_sweep', fail)
        result = runner.invoke(app, ['analyze', '--grid', '0'])
        assert result.exit_code == 3


class TestSimulate:
    """Tests for the simulate command."""

    def test_noiseless_run_to_file(self, runner, temp_workspace_dir):
        """Test that a noiseless single-path run writes an error-free CSV."""
        path = os.path.join(temp_workspace_dir, 'sim.csv')
        result = runner.invoke(
            app,
            [
                'simulate',
                '--systems',
                'cc_sim',
                '--grid',
                '0',
                '--noiseless',
                '--max-bits',
                '512',
                '--num-paths',
                '1',
                '--delays',
                '0',
                '--no-wall-time',
                '-o',
                path,
            ],
        )
        assert result.exit_code == 0
        with open(path) as f:
            lines = f.read().splitlines()
        assert lines == [','.join(CSV_COLUMNS), '0,cc_sim,0,0,512,0,1,0']

    def test_link_options_reach_the_config(self, runner, monkeypatch):
        """Test that distance and combining flags are forwarded to the sweep."""
        seen = []

        def capture(cfg):
            seen.append(cfg)
            return SweepResult(config=cfg, points=[])

        monkeypatch.setattr(harness, 'run_sweep', capture)
        result = runner.invoke(
            app,
            [
                'simulate',
                '--grid',
                '10',
                '--d-sr',
                '0.5',
                '--d-rd',
                '0.8',
                '--combining',
                'informed',
            ],
        )
        assert result.exit_code == 0
        assert (seen[0].d_sd, seen[0].d_sr, seen[0].d_rd) == (1.0, 0.5, 0.8)
        assert seen[0].combining == Combining.INFORMED

    def test_config_file_with_override(self, runner, temp_workspace_dir):
        """Test that command-line flags win over config file values."""
        config = os.path.join(temp_workspace_dir, 'sweep.env')
        with open(config, 'w') as f:
            f.write('systems=cc_analytical\neb_n0_grid_db=0,5,10\n')
        result = runner.invoke(app, ['simulate', '-c', config, '--grid', '0,10', '--no-wall-time'])
        assert result.exit_code == 0
        assert len(_data_lines(result.output)) == 2

    def test_unknown_config_key(self, runner, temp_workspace_dir):
        """Test that an unknown config key exits with code 2."""
        config = os.path.join(temp_workspace_dir, 'bad.env')
        with open(config, 'w') as f:
            f.write('grid=0,1\n')
        result = runner.invoke(app, ['simulate', '-c', config])
        assert result.exit_code == 2

    def test_missing_config_file(self, runner, temp_workspace_dir):
        """Test that a missing config file exits with code 4."""
        result = runner.invoke(
            app, ['simulate', '-c', os.path.join(temp_workspace_dir, 'none.env')]
        )
        assert result.exit_code == 4


class TestThroughput:
    """Tests for the throughput command."""

    def test_from_sweep_csv(self, runner, temp_workspace_dir):
        """Test that throughput reads an analytical sweep and prints one JSON row per point."""
        sweep = os.path.join(temp_workspace_dir, 'ana.csv')
        assert runner.invoke(app, ['analyze', '--grid', '0,10', '-o', sweep]).exit_code == 0
        result = runner.invoke(app, ['throughput', '-i', sweep])
        assert result.exit_code == 0
        rows = [json.loads(line) for line in result.output.splitlines() if line.startswith('{')]
        assert [r['eb_n0_db'] for r in rows] == [0.0, 10.0]
        assert all(r['eta_nc'] is None for r in rows)

    def test_missing_input(self, runner, temp_workspace_dir):
        """Test that a missing sweep CSV exits with code 4."""
        result = runner.invoke(app, ['throughput', '-i', os.path.join(temp_workspace_dir, 'x.csv')])
        assert result.exit_code == 4


class TestValidatePdf:
    """Tests for the validate-pdf command."""

    def test_passes_for_equal_scales(self, runner):
        """Test that equal scales pass and the JSON report is printed."""
        result = runner.invoke(
            app, ['validate-pdf', '--x2', '2', '--y2', '1', '--x3', '3', '--y3', '1']
        )
        assert result.exit_code == 0
        assert '"passed": true' in result.output

    def test_failed_check_exits_three(self, runner, monkeypatch):
        """Test that a failed comparison exits with code 3."""
        p = GammaParams(shape=1.0, scale=1.0)
        report = PdfValidationReport(
            p2=p,
            p3=p,
            samples=100_000,
            bins=4,
            integrated_abs_error=0.1,
            tolerance=5e-3,
            density_bins=100,
            density_abs_error=0.2,
            density_max_z=12.0,
            density_z_limit=5.0,
            passed=False,
            series_terms=1,
            residual=0.0,
        )
        monkeypatch.setattr(harness, 'validate_pdf', lambda *args: report)
        result = runner.invoke(app, ['validate-pdf'])
        assert result.exit_code == 3

    def test_too_few_samples(self, runner):
        """Test that fewer than 10**5 samples exits with code 2."""
        result = runner.invoke(app, ['validate-pdf', '--samples', '10'])
        assert result.exit_code == 2


class TestReproduce:
    """Tests for the reproduce command."""

    def test_writes_one_file_per_sweep(self, runner, monkeypatch, temp_workspace_dir):
        """Test that the fading preset writes one CSV per m and the gain table."""
        sweeps = []
        for m in (1.0, 2.0):
            cfg = SweepConfig(systems=[SweepSystem.CC_ANALYTICAL], m=m, eb_n0_grid_db=[0.0])
            point = SweepPoint(
                eb_n0_db=0.0, system=SweepSystem.CC_ANALYTICAL, ber=0.1, throughput=0.9
            )
            sweeps.append(SweepResult(config=cfg, points=[point]))
        monkeypatch.setattr(
            harness,
            'reproduce',
            lambda *args: ReproductionResult(experiment=Experiment.FADING, sweeps=sweeps),
        )
        result = runner.invoke(app, ['reproduce', 'fading', '--output-dir', temp_workspace_dir])
        assert result.exit_code == 0
        assert sorted(os.listdir(temp_workspace_dir)) == ['fading_m1.csv', 'fading_m2.csv']

    def test_unknown_preset(self, runner):
        """Test that an unknown preset name is rejected by the parser."""
        result = runner.invoke(app, ['reproduce', 'fig3'])
        assert result.exit_code != 0
