# ============================================================================ #
#                                                                              #
#     Title: Semi-Persistent Scheduler                                         #
#     Purpose: Frame redesign on density epochs and power reallocation gated   #
#         by the channel coherence time, driven by traffic reports.            #
#                                                                              #
# ============================================================================ #


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Overview                                                              ####
#                                                                              #
# ---------------------------------------------------------------------------- #


# ---------------------------------------------------------------------------- #
#  Description                                                              ####
# ---------------------------------------------------------------------------- #


"""
!!! note "Summary"
    The base station receives periodic traffic reports: predicted road densities and, now and then, fresh vehicle locations. The frame only depends on the densities, so it is redesigned when they move; the powers depend on the locations, so they are reallocated only once the current allocation has outlived the channel coherence time.

???+ abstract "Details"
    On every report:

    1. If any road density moved by more than `epoch_threshold` relative to the density of the current frame, the frame is redesigned and the pilot allocation broadcast.
    2. If the report carries locations and the time since the last allocation completed exceeds the coherence time that allocation was made under, the powers are reallocated.
    3. Otherwise the current policy is maintained.

    The coherence time follows from the vehicle velocity, a linear function of density; the lightest road moves fastest and sets it.
"""


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
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, Union

# ## Python Third Party Imports ----
import pandas as pd
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.frame_design.algorithms import FrameDesign, solve_frame_rp, solve_frame_sp
from v2v_urllc.geometry.algorithms import Topology
from v2v_urllc.gp_alloc.algorithms import AllocationResult, build_gp, solve_gp
from v2v_urllc.pathloss.algorithms import FadingModel, OmegaTable
from v2v_urllc.sinr_bounds.algorithms import PilotKind
from v2v_urllc.utils.config import NUM_ROADS, ScenarioConfig, ScheduleConfig
from v2v_urllc.utils.errors import StaleReportError


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "SPEED_OF_LIGHT",
    "ScheduleAction",
    "TrafficReport",
    "ScheduleState",
    "ScheduleContext",
    "velocity",
    "coherence_time",
    "is_density_epoch",
    "initial_state",
    "step",
    "run_schedule",
    "read_reports",
    "write_trace",
]


# ---------------------------------------------------------------------------- #
# Constants                                                                 ####
# ---------------------------------------------------------------------------- #


log: logging.Logger = logging.getLogger(__name__)

SPEED_OF_LIGHT: float = 3e8
TRACE_COLUMNS: tuple[str, ...] = ("t", "action", "zeta", "eta", "T_C", "T_RA")


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Types                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class ScheduleAction(str, Enum):
    RUN_FRAME_DESIGN = "RunAlgorithm1"
    BROADCAST_PILOTS = "BroadcastPilotAllocation"
    REALLOCATE_POWER = "ReallocatePower"
    MAINTAIN = "Maintain"


@dataclass(frozen=True)
class TrafficReport:
    """
    !!! note "Summary"
        One report: its time in seconds, the predicted density of each road (vehicles per m^2) and optionally fresh locations.
    """

    timestamp: float
    densities: tuple[float, ...]
    topology: Optional[Topology] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "densities", tuple(float(x) for x in self.densities))
        if len(self.densities) != NUM_ROADS:
            raise ValueError(f"A report needs {NUM_ROADS} road densities, got {len(self.densities)}.")
        if any(x < 0 for x in self.densities):
            raise ValueError(f"Densities must be non-negative, got {self.densities}.")

    @property
    def has_locations(self) -> bool:
        return self.topology is not None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"timestamp": self.timestamp, "densities": list(self.densities)}
        if self.topology is not None:
            data["topology"] = self.topology.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TrafficReport":
        topology = data.get("topology")
        return cls(
            timestamp=float(data["timestamp"]),
            densities=tuple(data["densities"]),
            topology=Topology.from_dict(topology) if topology is not None else None,
        )


@dataclass(frozen=True)
class ScheduleState:
    """
    !!! note "Summary"
        Scheduler memory between reports.

    ???+ abstract "Details"
        - `densities` are those the current frame was designed for.
        - `t_ra` is the time since the last allocation completed and `t_c` the coherence time at the latest report.
        - `t_c_window` is the coherence time the current allocation was made under; reallocation waits until `t_ra` exceeds it.
        - `last_time` is the timestamp of the latest accepted report and `allocation_done` when the last allocation completed.
    """

    frame: Optional[FrameDesign] = None
    allocation: Optional[AllocationResult] = None
    densities: Optional[tuple[float, ...]] = None
    t_ra: float = 0.0
    t_c: float = math.inf
    t_c_window: float = math.inf
    epoch: int = 0
    last_time: Optional[float] = None
    allocation_done: Optional[float] = None

    def __post_init__(self) -> None:
        if self.t_ra < 0:
            raise ValueError(f"Time since the last allocation must be non-negative, got {self.t_ra}.")


@dataclass(frozen=True, eq=False)
class ScheduleContext:
    """
    !!! note "Summary"
        Everything the scheduler needs besides its state: scenario, scheduler settings, path-loss table and pilot scheme.

    ???+ abstract "Details"
        With `solve_allocation=False` reallocations are decided and traced but the power allocation program is not solved.
    """

    scenario: ScenarioConfig
    schedule: ScheduleConfig
    omega: OmegaTable
    scheme: PilotKind = PilotKind.SP
    solve_allocation: bool = True


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Channel timescale                                                     ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def velocity(density: float, schedule: ScheduleConfig) -> float:
    """
    !!! note "Summary"
        Mean vehicle speed (m/s) at a density, `v_free * (1 - rho / rho_max)`, floored at zero.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Half the jam density"}
        >>> from v2v_urllc.scheduler.algorithms import velocity
        >>> from v2v_urllc.utils.config import ScheduleConfig
        >>> round(velocity(0.02, ScheduleConfig(v_free=20.0, rho_max=0.04)), 6)
        10.0

        ```
    """
    return max(schedule.v_free * (1.0 - density / schedule.rho_max), 0.0)


@typechecked
def coherence_time(density: float, schedule: ScheduleConfig) -> float:
    r"""
    !!! note "Summary"
        Channel coherence time (s) at a density.

    ???+ abstract "Details"
        A static scene (`v = 0`) has no finite coherence time; `math.inf` is returned.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="60 km/h at 2 GHz"}
        >>> from v2v_urllc.scheduler.algorithms import coherence_time
        >>> from v2v_urllc.utils.config import ScheduleConfig
        >>> round(coherence_time(0.0, ScheduleConfig()) * 1e3, 3)
        3.808
        >>> coherence_time(0.04, ScheduleConfig())
        inf

        ```

    ??? equation "Calculation"
        $$
        T_C = \sqrt{\frac{9 c^2}{16 \pi f_C^2 v(\rho)^2}}
        $$
    """
    v = velocity(density, schedule)
    if v == 0:
        log.debug("Static scene at density %.4g; coherence time unbounded", density)
        return math.inf
    return math.sqrt(9.0 * SPEED_OF_LIGHT**2 / (16.0 * math.pi * schedule.carrier_frequency**2 * v**2))


def _scene_coherence(densities: Sequence[float], schedule: ScheduleConfig) -> float:
    return min(coherence_time(float(rho), schedule) for rho in densities)


@typechecked
def is_density_epoch(previous: Optional[Sequence[float]], current: Sequence[float], threshold: float) -> bool:
    """
    !!! note "Summary"
        Whether any road density moved by more than `threshold` relative to `previous`. The first report is always an epoch.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Ten percent threshold"}
        >>> from v2v_urllc.scheduler.algorithms import is_density_epoch
        >>> base = (0.005, 0.005, 0.005, 0.005)
        >>> is_density_epoch(base, (0.0054, 0.005, 0.005, 0.005), 0.1)
        False
        >>> is_density_epoch(base, (0.0056, 0.005, 0.005, 0.005), 0.1)
        True

        ```
    """
    if previous is None:
        return True
    for old, new in zip(previous, current):
        if old == 0:
            if new > 0:
                return True
        elif abs(new - old) > threshold * old:
            return True
    return False


# ---------------------------------------------------------------------------- #
#                                                                              #
#     State machine                                                         ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def initial_state() -> ScheduleState:
    """Empty state: no frame, no allocation, no report seen."""
    return ScheduleState()


def _design_frame(context: ScheduleContext, densities: tuple[float, ...]) -> FrameDesign:
    scenario = context.scenario.with_updates(avg_density=densities)
    if context.scheme is PilotKind.SP:
        return solve_frame_sp(scenario, context.omega)
    return solve_frame_rp(scenario, context.omega)


def _allocate(context: ScheduleContext, frame: FrameDesign, topology: Topology) -> Optional[AllocationResult]:
    if not context.solve_allocation:
        return None
    if topology.num_pairs == 0:
        log.info("Location refresh without V2V pairs; nothing to allocate")
        return None
    gp = build_gp(topology, FadingModel.from_config(context.scenario), frame, context.scenario)
    result = solve_gp(gp)
    if not result.is_optimal:
        log.warning("Reallocation ended %s", result.status.value)
    return result


@typechecked
def step(
    state: ScheduleState, report: TrafficReport, context: ScheduleContext
) -> tuple[ScheduleState, list[ScheduleAction]]:
    """
    !!! note "Summary"
        Advance the scheduler by one report.

    ???+ abstract "Details"
        A density epoch yields `RunAlgorithm1` then `BroadcastPilotAllocation` and replaces the frame. A location refresh whose `t_ra` exceeds the coherence window yields `ReallocatePower`, solves the allocation for the new locations and restarts `t_ra`. A report with neither yields `Maintain`. The first allocation needs no waiting. Frames are never redesigned on a pure location refresh.

    Params:
        state (ScheduleState):
            Current state.
        report (TrafficReport):
            The new report.
        context (ScheduleContext):
            Scenario, scheduler settings, path-loss table and scheme.

    Raises:
        (StaleReportError):
            If the report is not strictly newer than the last one.
        (ValueError):
            If a location refresh arrives for a state that has densities but no frame.

    Returns:
        (tuple[ScheduleState, list[ScheduleAction]]):
            The new state and the actions taken, in order.
    """
    if state.last_time is not None and not report.timestamp > state.last_time:
        raise StaleReportError(
            f"Report at t={report.timestamp} is not newer than the last accepted report at t={state.last_time}."
        )
    now = report.timestamp
    schedule = context.schedule
    actions: list[ScheduleAction] = []
    t_c = _scene_coherence(report.densities, schedule)
    t_ra = 0.0 if state.allocation_done is None else max(now - state.allocation_done, 0.0)
    new = replace(state, t_c=t_c, t_ra=t_ra, last_time=now)

    if is_density_epoch(state.densities, report.densities, schedule.epoch_threshold):
        frame = _design_frame(context, report.densities)
        actions += [ScheduleAction.RUN_FRAME_DESIGN, ScheduleAction.BROADCAST_PILOTS]
        new = replace(new, frame=frame, densities=report.densities, epoch=state.epoch + 1)
        log.debug("Density epoch %d at t=%.6f: zeta=%.1f", new.epoch, now, frame.zeta)

    first_allocation = state.allocation_done is None
    if report.topology is not None and (first_allocation or t_ra > state.t_c_window):
        if new.frame is None:
            raise ValueError("Cannot allocate power before a frame has been designed; the state carries densities but no frame.")
        allocation = _allocate(context, new.frame, report.topology)
        done = now + schedule.allocation_latency
        actions.append(ScheduleAction.REALLOCATE_POWER)
        new = replace(new, allocation=allocation, allocation_done=done, t_ra=0.0, t_c_window=t_c)

    if not actions:
        actions.append(ScheduleAction.MAINTAIN)
    return new, actions


def _trace_rows(report: TrafficReport, state: ScheduleState, actions: list[ScheduleAction]) -> list[dict[str, Any]]:
    zeta = state.frame.zeta if state.frame is not None else math.nan
    eta = state.frame.eta if state.frame is not None else math.nan
    return [
        {"t": report.timestamp, "action": action.value, "zeta": zeta, "eta": eta, "T_C": state.t_c, "T_RA": state.t_ra}
        for action in actions
    ]


@typechecked
def run_schedule(
    reports: Iterable[TrafficReport],
    context: ScheduleContext,
    state: Optional[ScheduleState] = None,
) -> tuple[ScheduleState, list[dict[str, Any]]]:
    """
    !!! note "Summary"
        Feed a report stream through `step()` and collect the action trace, one row per action with columns `t, action, zeta, eta, T_C, T_RA`.
    """
    current = state or initial_state()
    rows: list[dict[str, Any]] = []
    for report in reports:
        current, actions = step(current, report, context)
        rows.extend(_trace_rows(report, current, actions))
    log.info("Schedule processed %d actions over %d density epochs", len(rows), current.epoch)
    return current, rows


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Input and output                                                      ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def read_reports(path: Union[str, Path]) -> list[TrafficReport]:
    """
    !!! note "Summary"
        Read a line-delimited JSON report stream; blank lines are skipped.
    """
    reports: list[TrafficReport] = []
    with Path(path).open(encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                reports.append(TrafficReport.from_dict(json.loads(line)))
            except (KeyError, json.JSONDecodeError) as exc:
                raise ValueError(f"Malformed report on line {number} of {path}: {exc}") from exc
    return reports


@typechecked
def write_trace(rows: Sequence[dict[str, Any]], path: Union[str, Path]) -> Path:
    """
    !!! note "Summary"
        Write an action trace as CSV and return its path.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(list(rows), columns=list(TRACE_COLUMNS)).to_csv(target, index=False)
    return target
