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

# ## Python Third Party Imports ----
import pandas as pd
from parameterized import parameterized
from pytest import raises

# ## Local First Party Imports ----
from tests.setup import BaseTester, name_func_predefined_name
from v2v_urllc.gp_alloc import AllocationResult
from v2v_urllc.scheduler import (
    ScheduleAction,
    ScheduleContext,
    ScheduleState,
    TrafficReport,
    check_determinism,
    check_reallocation_spacing,
    check_redesign_on_epochs,
    coherence_time,
    initial_state,
    is_density_epoch,
    read_reports,
    run_schedule,
    step,
    velocity,
    write_trace,
)
from v2v_urllc.sinr_bounds import PilotKind
from v2v_urllc.utils.config import ScheduleConfig
from v2v_urllc.utils.errors import StaleReportError


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Testing                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


DENSITIES = (0.0, 0.005, 0.005, 0.005)
REFRESH = ScheduleAction.REALLOCATE_POWER.value


class SchedulerTester(BaseTester):

    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        cls.context = ScheduleContext(cls.config, ScheduleConfig(), cls.omega, solve_allocation=False)

    def stream(self, count: int, spacing: float = 1e-3, densities: tuple = DENSITIES) -> list[TrafficReport]:
        return [TrafficReport(i * spacing, densities, self.topology) for i in range(count)]


class TestTimescale(SchedulerTester):

    def test_velocity(self) -> None:
        schedule = ScheduleConfig(v_free=20.0, rho_max=0.04)
        assert math.isclose(velocity(0.02, schedule), 10.0)
        assert velocity(0.08, schedule) == 0.0

    def test_free_flow_coherence(self) -> None:
        assert math.isclose(coherence_time(0.0, ScheduleConfig()) * 1e3, 3.808, abs_tol=1e-3)

    def test_coherence_grows_with_density(self) -> None:
        values = [coherence_time(rho, ScheduleConfig()) for rho in (0.0, 0.01, 0.02, 0.03)]
        assert values == sorted(values)

    def test_static_scene(self) -> None:
        assert coherence_time(0.04, ScheduleConfig()) == math.inf
        assert coherence_time(0.0, ScheduleConfig(v_free=0.0)) == math.inf


class TestEpochs(SchedulerTester):

    @parameterized.expand(
        [
            ("first", None, DENSITIES, True),
            ("unchanged", DENSITIES, DENSITIES, False),
            ("small_move", DENSITIES, (0.0, 0.0054, 0.005, 0.005), False),
            ("large_move", DENSITIES, (0.0, 0.0056, 0.005, 0.005), True),
            ("empty_road_fills", DENSITIES, (0.001, 0.005, 0.005, 0.005), True),
        ],
        name_func=name_func_predefined_name,
    )
    def test_is_density_epoch(self, _: str, previous: tuple, current: tuple, expected: bool) -> None:
        assert is_density_epoch(previous, current, 0.1) is expected


class TestReports(SchedulerTester):

    @parameterized.expand(
        [("three_roads", (0.005, 0.005, 0.005)), ("negative", (0.005, -0.001, 0.005, 0.005))],
        name_func=name_func_predefined_name,
    )
    def test_invalid(self, _: str, densities: tuple) -> None:
        with raises(ValueError):
            TrafficReport(0.0, densities)

    def test_round_trip(self) -> None:
        report = TrafficReport(0.25, DENSITIES, self.topology)
        back = TrafficReport.from_dict(json.loads(json.dumps(report.to_dict())))
        assert back.timestamp == 0.25
        assert back.has_locations
        assert back.topology.num_pairs == self.topology.num_pairs
        assert not TrafficReport(0.0, DENSITIES).has_locations

    def test_read_and_write(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            source = Path(tmp) / "reports.jsonl"
            lines = [json.dumps(report.to_dict()) for report in self.stream(3)]
            source.write_text("\n".join(lines[:2]) + "\n\n" + lines[2] + "\n", encoding="utf-8")
            reports = read_reports(source)
            assert [r.timestamp for r in reports] == [0.0, 1e-3, 2e-3]
            _, rows = run_schedule(reports, self.context)
            target = write_trace(rows, Path(tmp) / "out" / "trace.csv")
            frame = pd.read_csv(target)
            assert list(frame.columns) == ["t", "action", "zeta", "eta", "T_C", "T_RA"]
            assert len(frame) == len(rows)

    def test_malformed_line(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            source = Path(tmp) / "reports.jsonl"
            source.write_text('{"timestamp": 0.0}\n', encoding="utf-8")
            with raises(ValueError):
                read_reports(source)


class TestStep(SchedulerTester):

    def test_first_report_designs_the_frame(self) -> None:
        state, actions = step(initial_state(), TrafficReport(0.0, DENSITIES), self.context)
        assert actions == [ScheduleAction.RUN_FRAME_DESIGN, ScheduleAction.BROADCAST_PILOTS]
        assert state.frame is not None and state.frame.scheme is PilotKind.SP
        assert state.epoch == 1
        assert state.allocation_done is None

    def test_first_locations_allocate_at_once(self) -> None:
        _, actions = step(initial_state(), TrafficReport(0.0, DENSITIES, self.topology), self.context)
        assert actions[-1] is ScheduleAction.REALLOCATE_POWER

    def test_maintain(self) -> None:
        state, _ = step(initial_state(), TrafficReport(0.0, DENSITIES, self.topology), self.context)
        state, actions = step(state, TrafficReport(1e-3, DENSITIES), self.context)
        assert actions == [ScheduleAction.MAINTAIN]
        assert math.isclose(state.t_ra, 1e-3)

    def test_location_refresh_keeps_the_frame(self) -> None:
        state, _ = step(initial_state(), TrafficReport(0.0, DENSITIES, self.topology), self.context)
        frame = state.frame
        state, actions = step(state, TrafficReport(10e-3, DENSITIES, self.topology), self.context)
        assert actions == [ScheduleAction.REALLOCATE_POWER]
        assert state.frame is frame

    @parameterized.expand([("same_time", 0.0), ("earlier", -1e-3)], name_func=name_func_predefined_name)
    def test_stale_report(self, _: str, timestamp: float) -> None:
        state, _ = step(initial_state(), TrafficReport(0.0, DENSITIES), self.context)
        with raises(StaleReportError):
            step(state, TrafficReport(timestamp, DENSITIES), self.context)

    def test_locations_without_a_frame(self) -> None:
        # Densities already match, so no epoch designs a frame before the allocation.
        state = ScheduleState(densities=DENSITIES)
        with raises(ValueError):
            step(state, TrafficReport(0.0, DENSITIES, self.topology), self.context)

    def test_rp_scheme(self) -> None:
        context = ScheduleContext(self.config, ScheduleConfig(), self.omega, scheme=PilotKind.RP, solve_allocation=False)
        state, _ = step(initial_state(), TrafficReport(0.0, DENSITIES), context)
        assert state.frame.scheme is PilotKind.RP
        assert 0 < state.frame.eta < 1

    def test_solves_allocation(self) -> None:
        context = ScheduleContext(self.reference, ScheduleConfig(), self.omega)
        state, _ = step(initial_state(), TrafficReport(0.0, self.reference.avg_density, self.topology), context)
        assert isinstance(state.allocation, AllocationResult)
        assert state.allocation.is_optimal


class TestSchedule(SchedulerTester):

    def test_reallocation_every_fourth_report(self) -> None:
        _, rows = run_schedule(self.stream(13), self.context)
        times = [row["t"] for row in rows if row["action"] == REFRESH]
        assert [round(t * 1e3) for t in times] == [0, 4, 8, 12]
        assert check_reallocation_spacing(rows)["result"]

    def test_allocation_latency_delays_the_window(self) -> None:
        context = ScheduleContext(self.config, ScheduleConfig(allocation_latency=0.5e-3), self.omega, solve_allocation=False)
        _, rows = run_schedule(self.stream(11), context)
        times = [row["t"] for row in rows if row["action"] == REFRESH]
        assert [round(t * 1e3) for t in times] == [0, 5, 10]
        assert check_reallocation_spacing(rows, allocation_latency=0.5e-3)["result"]

    def test_redesign_only_on_epochs(self) -> None:
        reports = self.stream(4)
        reports += [TrafficReport(4e-3, (0.0, 0.008, 0.005, 0.005)), TrafficReport(5e-3, (0.0, 0.0082, 0.005, 0.005))]
        state, rows = run_schedule(reports, self.context)
        assert state.epoch == 2
        result = check_redesign_on_epochs(rows)
        assert result["result"]
        assert result["redesigns"] == 2

    def test_trace_columns(self) -> None:
        _, rows = run_schedule(self.stream(2), self.context)
        assert set(rows[0]) == {"t", "action", "zeta", "eta", "T_C", "T_RA"}
        assert rows[0]["eta"] == 0.0
        assert math.isclose(rows[0]["T_C"], coherence_time(0.0, ScheduleConfig()))

    def test_deterministic(self) -> None:
        assert check_determinism(self.stream(6), self.context)["result"]

    def test_resume_from_state(self) -> None:
        reports = self.stream(9)
        state, _ = run_schedule(reports[:5], self.context)
        _, tail = run_schedule(reports[5:], self.context, state=state)
        _, full = run_schedule(reports, self.context)
        assert tail == full[len(full) - len(tail) :]
