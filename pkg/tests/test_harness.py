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
"""Tests for the sweep engine, throughput report, density check and presets."""

import os
import pytest
from awslabs.dcsk_cc_simulator.consts import PRESET_SIM_MAX_BITS
from awslabs.dcsk_cc_simulator.models import (
    Experiment,
    GammaParams,
    SweepConfig,
    SweepPoint,
    SweepResult,
    SweepSystem,
)
from awslabs.dcsk_cc_simulator.services import analysis, harness
from awslabs.dcsk_cc_simulator.services.dcsk_common import (
    ConfigurationError,
    DataFileError,
    NumericalError,
)
from awslabs.dcsk_cc_simulator.utils.csv_utils import write_sweep_csv
from scipy import stats


P2_REF = GammaParams(shape=4.0, scale=1.25)
P3_REF = GammaParams(shape=12.0, scale=10.0 / 24.0)


def _sim_config(**overrides) -> SweepConfig:
    values = dict(
        systems=[SweepSystem.CC_SIM, SweepSystem.NC_SIM],
        eb_n0_grid_db=[4.0, 8.0],
        min_errors=10,
        max_bits=20_000,
        batch_periods=64,
        workers=1,
        record_wall_time=False,
    )
    values.update(overrides)
    return SweepConfig(**values)


class TestRunSweep:
    """Tests for run_sweep."""

    def test_noiseless_sweep_has_no_errors(self):
        """Test that a noiseless single-path sweep counts zero errors up to max_bits."""
        cfg = _sim_config(noiseless=True, num_paths=1, delays=(0,), max_bits=2048)
        result = harness.run_sweep(cfg)
        assert len(result.points) == 4
        for point in result.points:
            assert point.errors == 0
            assert point.bits == 2048
            assert point.ber == 0.0
            assert point.throughput == 1.0

    def test_points_in_grid_then_system_order(self):
        """Test that points are ordered by grid point, then by requested system."""
        result = harness.run_sweep(_sim_config())
        assert [(p.eb_n0_db, p.system) for p in result.points] == [
            (4.0, SweepSystem.CC_SIM),
            (4.0, SweepSystem.NC_SIM),
            (8.0, SweepSystem.CC_SIM),
            (8.0, SweepSystem.NC_SIM),
        ]

    def test_min_errors_stop(self):
        """Test that a low-SNR point stops once min_errors errors are counted."""
        cfg = _sim_config(
            systems=[SweepSystem.CC_SIM], eb_n0_grid_db=[0.0], min_errors=100, max_bits=10**7
        )
        point = harness.run_sweep(cfg).points[0]
        assert point.errors >= 100
        assert point.bits % (64 * 4) == 0
        assert point.bits < 10**7
        assert point.stderr <= point.ber / 5
        assert sum(point.per_user_errors) == point.errors

    def test_max_bits_stop(self):
        """Test that the bit budget is never exceeded, even with a partial last batch."""
        cfg = _sim_config(systems=[SweepSystem.NC_SIM], eb_n0_grid_db=[30.0], max_bits=1000)
        point = harness.run_sweep(cfg).points[0]
        assert point.bits == 1000

    def test_worker_count_does_not_change_results(self, temp_workspace_dir):
        """Test that one worker and eight workers write byte-identical CSV files."""
        serial = harness.run_sweep(_sim_config(workers=1))
        parallel = harness.run_sweep(_sim_config(workers=8))
        a = write_sweep_csv(serial, os.path.join(temp_workspace_dir, 'serial.csv'))
        b = write_sweep_csv(parallel, os.path.join(temp_workspace_dir, 'parallel.csv'))
        with open(a, 'rb') as fa, open(b, 'rb') as fb:
            assert fa.read() == fb.read()

    def test_seed_changes_results(self):
        """Test that a different master seed gives a different estimate."""
        a = harness.run_sweep(_sim_config(master_seed=1)).points
        b = harness.run_sweep(_sim_config(master_seed=2)).points
        assert [p.bits for p in a] != [p.bits for p in b] or [p.errors for p in a] != [
            p.errors for p in b
        ]

    def test_analytical_points(self):
        """Test that analytical points carry no counts and throughput 1 - BER."""
        cfg = SweepConfig(
            systems=[SweepSystem.CC_ANALYTICAL, SweepSystem.CC_ANALYTICAL_EXACT],
            eb_n0_grid_db=[0.0, 10.0],
        )
        result = harness.run_sweep(cfg)
        for point in result.points:
            assert point.bits == 0
            assert point.errors == 0
            assert point.stderr == 0.0
            assert point.throughput == pytest.approx(1.0 - point.ber)
        curve = result.curve(SweepSystem.CC_ANALYTICAL)
        assert curve[1] < curve[0]

    def test_analytical_failure_names_the_point(self, monkeypatch):
        """Test that a failing analytical evaluation is re-raised with its grid point."""

        def fail(cfg):
            raise NumericalError('quadrature missed its tolerance', residual=1e-3)

        monkeypatch.setattr(analysis, 'system_ber_cc', fail)
        cfg = SweepConfig(systems=[SweepSystem.CC_ANALYTICAL], eb_n0_grid_db=[10.0])
        with pytest.raises(NumericalError) as exc_info:
            harness.run_sweep(cfg)
        assert '10.0 dB' in exc_info.value.message
        assert exc_info.value.residual == pytest.approx(1e-3)


class TestThroughputReport:
    """Tests for throughput_report."""

    def test_error_free_curves(self):
        """Test that zero BER gives throughput 1 for CC and NC."""
        rows = harness.throughput_report(
            {'cc': [0.0, 0.0], 'nc': [0.0, 0.0]}, 4, grid_db=[0.0, 2.0]
        )
        assert [(r.eta_cc, r.eta_nc, r.eta_mimo) for r in rows] == [(1.0, 1.0, None)] * 2

    def test_mimo_file(self, temp_workspace_dir):
        """Test that an error-free MIMO relay curve gives (N - 1)/N."""
        path = os.path.join(temp_workspace_dir, 'mimo.csv')
        with open(path, 'w') as f:
            f.write('eb_n0_db,ber\n0,0\n2,0\n')
        rows = harness.throughput_report({'cc': [0.1, 0.01]}, 4, path, grid_db=[0.0, 2.0])
        assert [r.eta_mimo for r in rows] == [pytest.approx(0.75)] * 2
        assert all(r.eta_cc > r.eta_mimo for r in rows)

    def test_crossover_flag(self):
        """Test that the point where the leading system changes is flagged."""
        rows = harness.throughput_report(
            {'cc': [0.2, 0.1, 0.01], 'nc': [0.1, 0.05, 0.02]}, 4, grid_db=[0.0, 2.0, 4.0]
        )
        assert [r.crossover for r in rows] == [False, False, True]

    def test_from_sweep_result(self):
        """Test that a sweep result supplies the CC and NC curves."""
        cfg = SweepConfig(systems=[SweepSystem.CC_SIM, SweepSystem.NC_SIM], eb_n0_grid_db=[0.0])
        result = SweepResult(
            config=cfg,
            points=[
                SweepPoint(eb_n0_db=0.0, system=SweepSystem.CC_SIM, ber=0.0, throughput=1.0),
                SweepPoint(eb_n0_db=0.0, system=SweepSystem.NC_SIM, ber=0.5, throughput=0.5),
            ],
        )
        row = harness.throughput_report(result, 4)[0]
        assert row.eta_cc == 1.0
        assert row.eta_nc == 0.5

    def test_grid_mismatch(self, temp_workspace_dir):
        """Test that a MIMO file on another grid raises ConfigurationError."""
        path = os.path.join(temp_workspace_dir, 'mimo.csv')
        with open(path, 'w') as f:
            f.write('0,0.1\n3,0.05\n')
        with pytest.raises(ConfigurationError):
            harness.throughput_report({'cc': [0.1, 0.05]}, 4, path, grid_db=[0.0, 2.0])

    def test_malformed_mimo_file(self, temp_workspace_dir):
        """Test that a malformed MIMO file raises DataFileError."""
        path = os.path.join(temp_workspace_dir, 'mimo.csv')
        with open(path, 'w') as f:
            f.write('0,0.1,9\n')
        with pytest.raises(DataFileError):
            harness.throughput_report({'cc': [0.1]}, 4, path, grid_db=[0.0])

    def test_missing_cc_curve(self):
        """Test that a report without a cooperative curve raises ConfigurationError."""
        with pytest.raises(ConfigurationError):
            harness.throughput_report({'nc': [0.1]}, 4, grid_db=[0.0])

    def test_length_mismatch(self):
        """Test that a curve of the wrong length raises ConfigurationError."""
        with pytest.raises(ConfigurationError):
            harness.throughput_report({'cc': [0.1, 0.2]}, 4, grid_db=[0.0])


class TestValidatePdf:
    """Tests for the sampled sum-of-gammas check."""

    def test_equal_scales(self):
        """Test that equal scales pass with 10**6 samples."""
        report = harness.validate_pdf(
            GammaParams(shape=2.0, scale=1.0), GammaParams(shape=3.0, scale=1.0), 10**6
        )
        assert report.passed
        assert report.series_terms == 1
        assert report.bins == 4

    def test_reference_parameters(self):
        """Test that the reference SR/RD parameters pass with 10**6 samples."""
        report = harness.validate_pdf(
            GammaParams(shape=4.0, scale=1.25), GammaParams(shape=12.0, scale=10.0 / 24.0), 10**6
        )
        assert report.passed
        assert report.integrated_abs_error < report.tolerance
        assert report.series_terms > 1

    def test_density_check(self):
        """Test that the histogram density of the reference parameters follows sum_gamma_pdf."""
        report = harness.validate_pdf(P2_REF, P3_REF, 10**6)
        assert report.density_bins == 100
        assert report.density_max_z < report.density_z_limit
        assert report.density_abs_error < 0.02

    def test_density_check_catches_a_wrong_shape(self, monkeypatch):
        """Test that a density with the right mean but the wrong spread fails the check."""

        def single_gamma(p2, p3, x):
            shape = p2.shape + p3.shape
            return stats.gamma.pdf(x, a=shape, scale=(p2.mean + p3.mean) / shape)

        monkeypatch.setattr(analysis, 'sum_gamma_pdf', single_gamma)
        report = harness.validate_pdf(P2_REF, P3_REF, 10**6)
        assert report.integrated_abs_error < report.tolerance
        assert report.density_max_z > report.density_z_limit
        assert not report.passed

    def test_reproducible(self):
        """Test that the same seed gives the same report."""
        p2, p3 = GammaParams(shape=4.0, scale=1.25), GammaParams(shape=12.0, scale=0.5)
        a = harness.validate_pdf(p2, p3, 10**5, seed=3)
        b = harness.validate_pdf(p2, p3, 10**5, seed=3)
        assert a == b

    def test_too_few_samples(self):
        """Test that fewer than 10**5 samples are rejected."""
        with pytest.raises(ValueError):
            harness.validate_pdf(GammaParams(shape=1, scale=1), GammaParams(shape=1, scale=2), 10)


class TestPresets:
    """Tests for fading_gain_table and the preset experiments."""

    def test_fading_gain_table(self, iv_system_config):
        """Test that the first row has no gain and later gains are positive."""
        rows = harness.fading_gain_table(iv_system_config, [1.0, 2.0], 1e-3)
        assert [r.m for r in rows] == [1.0, 2.0]
        assert rows[0].gain_db is None
        assert rows[1].gain_db == pytest.approx(rows[0].eb_n0_db - rows[1].eb_n0_db)
        assert rows[1].gain_db > 0

    def test_simulation_presets(self):
        """Test that the BER preset sweeps all four systems over 0-20 dB."""
        (cfg,) = harness.preset_configs(Experiment.BER, master_seed=5, workers=2)
        assert cfg.systems == [
            SweepSystem.CC_SIM,
            SweepSystem.NC_SIM,
            SweepSystem.CC_ANALYTICAL,
            SweepSystem.CC_ANALYTICAL_EXACT,
        ]
        assert cfg.eb_n0_grid_db == [float(x) for x in range(0, 21, 2)]
        assert cfg.max_bits == PRESET_SIM_MAX_BITS
        assert cfg.master_seed == 5
        assert cfg.workers == 2

    def test_fading_presets(self):
        """Test that the fading preset sweeps the analytical BER for m = 1..4 over 0-30 dB."""
        configs = harness.preset_configs(Experiment.FADING)
        assert [c.m for c in configs] == [1.0, 2.0, 3.0, 4.0]
        assert all(c.systems == [SweepSystem.CC_ANALYTICAL] for c in configs)
        assert all(c.eb_n0_grid_db[-1] == 30.0 for c in configs)

    @pytest.mark.slow
    def test_reproduce_fading(self):
        """Test that the fading preset yields four sweeps and two gain tables."""
        result = harness.reproduce(Experiment.FADING)
        assert len(result.sweeps) == 4
        assert len(result.gain_table) == 8
        for target in (1e-4, 1e-5):
            gains = [r.gain_db for r in result.gain_table if r.target_ber == target][1:]
            assert gains[0] > gains[1] > gains[2] > 0


@pytest.mark.slow
class TestReferenceScenario:
    """Long sweeps at the reference parameters (N = 4, beta = 32, m = 2, L = 2)."""

    def test_worker_count_does_not_change_results(self, temp_workspace_dir):
        """Test that one and eight workers write byte-identical CSV files over a wide grid."""
        cfg = _sim_config(
            systems=[SweepSystem.CC_SIM, SweepSystem.NC_SIM, SweepSystem.CC_ANALYTICAL_EXACT],
            eb_n0_grid_db=[6.0, 10.0, 14.0],
            min_errors=200,
            max_bits=200_000,
            batch_periods=256,
        )
        serial = harness.run_sweep(cfg)
        parallel = harness.run_sweep(cfg.model_copy(update={'workers': 8}))
        a = write_sweep_csv(serial, os.path.join(temp_workspace_dir, 'serial.csv'))
        b = write_sweep_csv(parallel, os.path.join(temp_workspace_dir, 'parallel.csv'))
        with open(a, 'rb') as fa, open(b, 'rb') as fb:
            assert fa.read() == fb.read()

    def test_cooperation_leads_at_twenty_db(self):
        """Test that the cooperative system beats the direct one at 20 dB."""
        cfg = _sim_config(
            eb_n0_grid_db=[20.0], min_errors=100, max_bits=4_000_000, batch_periods=1024
        )
        points = {p.system: p for p in harness.run_sweep(cfg).points}
        cc, nc = points[SweepSystem.CC_SIM], points[SweepSystem.NC_SIM]
        assert cc.ber + 3 * (cc.stderr + nc.stderr) < nc.ber

    def test_carrier_correction_moves_toward_simulation(self):
        """Test that the delay-aware exact analysis is closer to cc_sim at 12 dB."""
        cfg = _sim_config(
            systems=[SweepSystem.CC_SIM],
            eb_n0_grid_db=[12.0],
            min_errors=5000,
            max_bits=2_000_000,
            batch_periods=512,
        )
        simulated = harness.run_sweep(cfg).points[0].ber
        corrected_cfg = cfg.system_config(12.0, SweepSystem.CC_ANALYTICAL_EXACT)
        corrected = analysis.system_ber_cc(corrected_cfg)
        plain = analysis.system_ber_cc(corrected_cfg.model_copy(update={'delays': None}))
        assert plain < corrected
        assert abs(simulated - corrected) < abs(simulated - plain)
