# ---------------------------------------------------------------------------- #
#                                                                              #
#    Setup                                                                  ####
#                                                                              #
# ---------------------------------------------------------------------------- #


# ---------------------------------------------------------------------------- #
# Imports                                                                   ####
# ---------------------------------------------------------------------------- #


# ## Python StdLib Imports ----
import json
import math
import tempfile
from pathlib import Path
from unittest.mock import patch

# ## Python Third Party Imports ----
import pandas as pd
from parameterized import parameterized
from pytest import raises

# ## Local First Party Imports ----
from tests.setup import BaseTester, name_func_predefined_name, quadrature_omega
from v2v_urllc.harness import (
    ExperimentKind,
    ExperimentSpec,
    design_frames,
    run_experiment,
    synthetic_reports,
    truncate_topology,
    validate,
)
from v2v_urllc.harness.cli import EXIT_ERROR, EXIT_OK, EXIT_VALIDATION, build_parser, load_settings, main
from v2v_urllc.link_mc import LinkDrawConfig


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Testing                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class HarnessTester(BaseTester):

    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        cls.sparse = cls.reference.with_updates(avg_density=(0.001,) * 4, num_cues=2)


class TestExperimentSpec(HarnessTester):

    @parameterized.expand(
        [
            ("unsorted", {"kind": "density_sweep", "values": (0.005, 0.001)}),
            ("not_finite", {"kind": "density_sweep", "values": (0.001, math.inf)}),
            ("no_values", {"kind": "reliability_sweep"}),
            ("no_drops", {"kind": "cdf", "num_drops": 0}),
            ("no_workers", {"kind": "cdf", "workers": 0}),
            ("unknown_kind", {"kind": "histogram"}),
        ],
        name_func=name_func_predefined_name,
    )
    def test_invalid(self, _: str, kwargs: dict) -> None:
        with raises(ValueError):
            ExperimentSpec(**kwargs)

    def test_axis(self) -> None:
        assert ExperimentSpec("bandwidth_sweep", values=(1e5,)).axis == "bandwidth"
        assert ExperimentSpec("cdf").axis is None
        assert ExperimentSpec("cdf").to_dict()["kind"] == "cdf"


class TestSweeps(HarnessTester):

    def test_density_sweep(self) -> None:
        spec = ExperimentSpec(ExperimentKind.DENSITY_SWEEP, self.reference, values=(0.001, 0.005), cue_counts=(2, 8))
        table = run_experiment(spec, omega=self.omega).table
        assert len(table) == 8
        assert set(table["scheme"]) == {"SP", "RP"}
        sp = table[(table["scheme"] == "SP") & (table["num_cues"] == 2)]
        assert sp["zeta"].is_monotonic_increasing
        for _, group in table.groupby(["num_cues", "density"]):
            assert group.loc[group["scheme"] == "SP", "zeta"].item() <= group.loc[group["scheme"] == "RP", "zeta"].item()

    def test_reliability_sweep(self) -> None:
        spec = ExperimentSpec(ExperimentKind.RELIABILITY_SWEEP, self.reference, values=(1e-7, 1e-5, 1e-3))
        table = run_experiment(spec, omega=self.omega).table
        sp = table[table["scheme"] == "SP"]
        assert sp["zeta"].is_monotonic_decreasing
        assert (table["error"] == "").all()

    def test_bandwidth_sweep(self) -> None:
        spec = ExperimentSpec(ExperimentKind.BANDWIDTH_SWEEP, self.reference, values=(2e5, 5e5, 8e5))
        table = run_experiment(spec, omega=self.omega).table
        assert len(table) == 6
        frames = design_frames(self.reference, self.omega)
        for _, row in table.iterrows():
            assert math.isclose(row["latency_ms"] * 1e-3 * row["bandwidth"], frames[row["scheme"]].zeta)
        assert table["within_coherence"].tolist() == [True, True, False] * 2

    def test_convergence(self) -> None:
        table = run_experiment(ExperimentSpec(ExperimentKind.CONVERGENCE, self.config), omega=self.omega).table
        rp = table[table["scheme"] == "RP"]
        assert not rp.empty
        assert (rp["eta_max"] - rp["eta_min"]).iloc[-1] <= self.config.mu_eta
        assert (table["scheme"] == "SP").any()

    def test_design_frames(self) -> None:
        frames = design_frames(self.reference, self.omega)
        assert list(frames) == ["RP", "SP", "RP@SP"]
        assert frames["RP@SP"].zeta == frames["SP"].zeta


class TestDrops(HarnessTester):

    def test_truncate(self) -> None:
        small = truncate_topology(self.topology, 1, 0)
        assert small.num_pairs == 1
        assert small.num_cues == 0
        assert small.counts == (1, 0, 0, 0)

    def test_cdf_rows(self) -> None:
        spec = ExperimentSpec(ExperimentKind.CDF, self.sparse, num_drops=2, seed=7)
        result = run_experiment(spec, omega=self.omega)
        table = result.table
        assert set(table["frame"]) == {"RP", "SP", "RP@SP"}
        assert set(table["allocation"]) == {"optimized", "equal_power"}
        assert len(table) == 2 * 3 * 2
        assert table["drop_seed"].nunique() == 2

    def test_cdf_reruns_are_identical(self) -> None:
        spec = ExperimentSpec(ExperimentKind.CDF, self.sparse, num_drops=2, seed=7)
        with tempfile.TemporaryDirectory() as tmp:
            first = run_experiment(spec, Path(tmp) / "a", omega=self.omega)
            second = run_experiment(spec, Path(tmp) / "b", omega=self.omega)
            assert first.csv_path.read_bytes() == second.csv_path.read_bytes()
            summary = json.loads(first.summary_path.read_text(encoding="utf-8"))
            assert summary["experiment"] == "cdf"
            assert summary["seed"] == 7
            assert summary["num_rows"] == 12
            assert summary["units"]["min_info_bits"] == "bits"
            assert first.csv_path.name == "cdf.csv"

    def test_more_drops_extend_the_table(self) -> None:
        two = run_experiment(ExperimentSpec(ExperimentKind.CDF, self.sparse, num_drops=2, seed=7), omega=self.omega).table
        three = run_experiment(ExperimentSpec(ExperimentKind.CDF, self.sparse, num_drops=3, seed=7), omega=self.omega).table
        pd.testing.assert_frame_equal(three[three["drop"] < 2].reset_index(drop=True), two)

    def test_workers_do_not_change_results(self) -> None:
        serial = run_experiment(ExperimentSpec(ExperimentKind.CDF, self.sparse, num_drops=2, seed=7), omega=self.omega).table
        pooled = run_experiment(
            ExperimentSpec(ExperimentKind.CDF, self.sparse, num_drops=2, seed=7, workers=2), omega=self.omega
        ).table
        pd.testing.assert_frame_equal(serial, pooled)

    def test_failed_drops_are_recorded(self) -> None:
        empty = self.sparse.with_updates(avg_density=(0.0,) * 4)
        result = run_experiment(ExperimentSpec(ExperimentKind.CDF, empty, num_drops=1), omega=self.omega)
        optimized = result.table[result.table["allocation"] == "optimized"]
        assert optimized["error"].str.startswith("ValueError").all()
        assert result.num_errors == 3
        assert result.summary["num_errors"] == 3

    def test_link_validation(self) -> None:
        link = LinkDrawConfig(frame_length=8, num_rx_antennas=16, num_bs_antennas=16, num_symbol_trials=1)
        spec = ExperimentSpec(ExperimentKind.LINK_VALIDATION, self.sparse, num_drops=1, link=link, link_draws=2, max_link_pairs=2)
        table = run_experiment(spec, omega=self.omega).table
        assert {"link", "measured", "closed_form", "relative_error", "error"} <= set(table.columns)
        assert table["link"].str.match(r"^(pair|cue):\d+$").all()

    def test_schedule_trace(self) -> None:
        spec = ExperimentSpec(
            ExperimentKind.SCHEDULE_TRACE, self.sparse, values=tuple(i * 1e-3 for i in range(6)), solve_allocation=False
        )
        table = run_experiment(spec, omega=self.omega).table
        assert table["action"].iloc[0] == "RunAlgorithm1"
        assert table["action"].iloc[1] == "BroadcastPilotAllocation"
        assert "ReallocatePower" in set(table["action"])

    def test_synthetic_reports(self) -> None:
        spec = ExperimentSpec(ExperimentKind.SCHEDULE_TRACE, self.sparse, values=(0.0, 1e-3, 2e-3), seed=3)
        first, second = synthetic_reports(spec), synthetic_reports(spec)
        assert [r.densities for r in first] == [r.densities for r in second]
        assert first[0].densities == self.sparse.avg_density
        assert all(report.has_locations for report in first)


class TestValidate(HarnessTester):

    def test_unknown_suite(self) -> None:
        with raises(ValueError):
            validate(["omega", "nonsense"], omega=self.omega)

    def test_passing_suites(self) -> None:
        report = validate(["derivatives", "frame_grid"], omega=quadrature_omega())
        assert report["result"], report
        assert set(report["suites"]) == {"derivatives", "frame_grid"}
        assert all(suite["error"] == "" for suite in report["suites"].values())

    def test_corrupted_table_is_caught(self) -> None:
        bad = quadrature_omega().scaled("c2b_p", 1.05)
        report = validate(["omega", "frame_grid"], omega=bad, omega_samples=2_000_000)
        assert not report["result"]
        assert not report["suites"]["omega"]["result"]
        assert report["suites"]["omega"]["failed"] == ["montecarlo"]
        assert report["suites"]["omega"]["details"]["montecarlo"]["failed"] == ["c2b_p"]
        assert report["suites"]["frame_grid"]["result"]


class TestCli(HarnessTester):

    def setUp(self) -> None:
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.table = self.dir / "omega.json"
        self.table.write_text(json.dumps(self.omega.to_dict()), encoding="utf-8")

    def tearDown(self) -> None:
        self.tmp.cleanup()

    def test_frame(self) -> None:
        assert main(["frame", "--omega", str(self.table), "--out", str(self.dir / "out")]) == EXIT_OK
        payload = json.loads((self.dir / "out" / "frame.json").read_text(encoding="utf-8"))
        assert set(payload) == {"SP", "RP"}
        assert payload["SP"]["frame"]["zeta"] <= payload["RP"]["frame"]["zeta"]

    def test_sweep_writes_csv(self) -> None:
        argv = ["sweep", "density", "--values", "0.001,0.005", "--omega", str(self.table), "--out", str(self.dir)]
        assert main(argv) == EXIT_OK
        assert len(pd.read_csv(self.dir / "density_sweep.csv")) == 4
        assert (self.dir / "density_sweep.summary.json").exists()

    def test_invalid_override(self) -> None:
        assert main(["frame", "--omega", str(self.table), "--set", "reliability=2"]) == EXIT_ERROR

    def test_missing_config_file(self) -> None:
        assert main(["frame", "--omega", str(self.table), "--config", str(self.dir / "missing.json")]) == EXIT_ERROR

    def test_validation_failure_exit_code(self) -> None:
        failing = {"result": False, "seed": 1, "suites": {"omega": {"result": False, "runtime_s": 0.0, "failed": ["x"]}}}
        with patch("v2v_urllc.harness.cli.validate", return_value=failing):
            assert main(["validate", "--omega", str(self.table), "--out", str(self.dir)]) == EXIT_VALIDATION

    def test_validate_single_suite(self) -> None:
        assert main(["validate", "--suite", "derivatives", "--omega", str(self.table), "--out", str(self.dir)]) == EXIT_OK

    def test_settings_precedence(self) -> None:
        config = self.dir / "config.json"
        config.write_text(
            json.dumps({"scenario": {"num_cues": 3, "reliability": 1e-4}, "schedule": {"epoch_threshold": 0.2}}),
            encoding="utf-8",
        )
        args = build_parser().parse_args(
            ["frame", "--config", str(config), "--num-cues", "5", "--set", "allocation_latency=0.001", "--density", "0.002"]
        )
        scenario, schedule = load_settings(args)
        assert scenario.num_cues == 5
        assert scenario.reliability == 1e-4
        assert scenario.avg_density == (0.002,) * 4
        assert schedule.epoch_threshold == 0.2
        assert schedule.allocation_latency == 0.001
