# ============================================================================ #
#                                                                              #
#     Title: Experiments                                                       #
#     Purpose: Seeded, reproducible experiment runs written as CSV tables      #
#         with a JSON summary.                                                 #
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
    Every experiment is described by an `ExperimentSpec` and produces one CSV table with a header row plus a summary JSON holding the config hash, seed, wall time and column units.

???+ abstract "Details"
    | Experiment          | Rows                                                                     |
    |---------------------|--------------------------------------------------------------------------|
    | `convergence`       | one per solver iterate of the SP and RP frame designs                    |
    | `density_sweep`     | one per (CUE count, density, scheme): frame size and minimum latency     |
    | `reliability_sweep` | one per (reliability, scheme): frame size                                |
    | `bandwidth_sweep`   | one per (bandwidth, scheme): latency on the region boundary              |
    | `cdf`               | one per (drop, frame, allocation): minimum bits and CUE SINRs            |
    | `link_validation`   | one per (drop, link): measured against closed-form SINR                  |
    | `schedule_trace`    | one per scheduler action                                                 |

    Drop `i` always uses the seed `derive_seed(seed, i)`, so adding drops never changes earlier ones. Drops run in a process pool and are written in drop order. Errors are caught per drop or per sweep point and written to the `error` column.
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
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Optional, Union

# ## Python Third Party Imports ----
import numpy as np
import pandas as pd
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.fbl.algorithms import info_bits, linear_to_db
from v2v_urllc.frame_design.algorithms import (
    FrameDesign,
    feasible_region,
    solve_frame_rp,
    solve_frame_rp_at,
    solve_frame_sp,
)
from v2v_urllc.geometry.algorithms import Topology, sample_topology
from v2v_urllc.gp_alloc.algorithms import build_gp, solve_gp
from v2v_urllc.link_mc.algorithms import LinkDrawConfig, assign_pilots, draw_channels, empirical_sinr
from v2v_urllc.pathloss.algorithms import FadingModel, OmegaTable, link_gains, load_or_compute_omega
from v2v_urllc.scheduler.algorithms import ScheduleContext, TrafficReport, run_schedule
from v2v_urllc.sinr_bounds.algorithms import (
    PilotKind,
    equal_power_allocation,
    gamma_c_from_gains,
    gamma_v_from_gains,
)
from v2v_urllc.utils.config import ScenarioConfig, ScheduleConfig, config_hash
from v2v_urllc.utils.data import SEED, derive_seed, get_random_generator


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "ExperimentKind",
    "ExperimentSpec",
    "ExperimentResult",
    "COLUMN_UNITS",
    "design_frames",
    "run_experiment",
    "synthetic_reports",
    "truncate_topology",
]


# ---------------------------------------------------------------------------- #
# Constants                                                                 ####
# ---------------------------------------------------------------------------- #


log: logging.Logger = logging.getLogger(__name__)

COLUMN_UNITS: dict[str, str] = {
    "density": "vehicles/m^2",
    "reliability": "probability",
    "bandwidth": "Hz",
    "zeta": "symbols",
    "zeta_lower": "symbols",
    "eta": "fraction",
    "latency_ms": "ms",
    "min_info_bits": "bits",
    "min_cue_sinr_db": "dB",
    "cue_sinr_db": "dB, semicolon separated",
    "measured": "linear",
    "closed_form": "linear",
    "relative_error": "fraction",
    "t": "s",
    "T_C": "s",
    "T_RA": "s",
    "drop_seed": "uint64",
}


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Types                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class ExperimentKind(str, Enum):
    CONVERGENCE = "convergence"
    DENSITY_SWEEP = "density_sweep"
    RELIABILITY_SWEEP = "reliability_sweep"
    BANDWIDTH_SWEEP = "bandwidth_sweep"
    CDF = "cdf"
    LINK_VALIDATION = "link_validation"
    SCHEDULE_TRACE = "schedule_trace"


SWEEP_AXES: dict[ExperimentKind, str] = {
    ExperimentKind.DENSITY_SWEEP: "density",
    ExperimentKind.RELIABILITY_SWEEP: "reliability",
    ExperimentKind.BANDWIDTH_SWEEP: "bandwidth",
    ExperimentKind.SCHEDULE_TRACE: "t",
}


@dataclass(frozen=True)
class ExperimentSpec:
    """
    !!! note "Summary"
        What to run.

    ???+ abstract "Details"
        - `values` are the sweep points of the sweeps and the report times of `schedule_trace`; they must be finite and sorted.
        - `cue_counts` adds a series per CUE count to `density_sweep`; empty means the scenario's own count.
        - `link`, `link_draws` and `max_link_pairs` configure `link_validation`, which keeps the first `max_link_pairs` pairs of each drop.
        - `solve_allocation` lets `schedule_trace` skip the power allocation solves.
    """

    kind: ExperimentKind
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    values: tuple[float, ...] = ()
    num_drops: int = 1
    seed: int = SEED
    workers: int = 1
    cue_counts: tuple[int, ...] = ()
    schedule: ScheduleConfig = field(default_factory=ScheduleConfig)
    link: LinkDrawConfig = field(default_factory=LinkDrawConfig)
    link_draws: int = 20
    max_link_pairs: int = 4
    solve_allocation: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ExperimentKind(self.kind))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "cue_counts", tuple(int(k) for k in self.cue_counts))
        if self.num_drops < 1:
            raise ValueError(f"num_drops must be at least 1, got {self.num_drops}.")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}.")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError(f"Sweep values must be finite, got {self.values}.")
        if list(self.values) != sorted(self.values):
            raise ValueError(f"Sweep values must be sorted, got {self.values}.")
        if self.kind in SWEEP_AXES and not self.values:
            raise ValueError(f"Experiment {self.kind.value} needs sweep values.")

    @property
    def axis(self) -> Optional[str]:
        return SWEEP_AXES.get(self.kind)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "scenario": self.scenario.to_dict(),
            "values": list(self.values),
            "num_drops": self.num_drops,
            "seed": self.seed,
            "cue_counts": list(self.cue_counts),
        }


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    table: pd.DataFrame
    summary: dict[str, Any]
    csv_path: Optional[Path] = None
    summary_path: Optional[Path] = None

    @property
    def num_errors(self) -> int:
        if "error" not in self.table:
            return 0
        return int((self.table["error"].fillna("") != "").sum())


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Helpers                                                               ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _error_text(exc: Exception) -> str:
    return f"{type(exc).__name__}: {exc}"


@typechecked
def design_frames(config: ScenarioConfig, omega: OmegaTable) -> dict[str, FrameDesign]:
    """
    !!! note "Summary"
        The three frames compared per drop: RP at its own optimum, SP, and RP at the SP frame size.
    """
    sp = solve_frame_sp(config, omega)
    return {
        "RP": solve_frame_rp(config, omega),
        "SP": sp,
        "RP@SP": solve_frame_rp_at(config, omega, sp.zeta),
    }


@typechecked
def truncate_topology(topology: Topology, max_pairs: int, max_cues: int) -> Topology:
    """Keep the first `max_pairs` pairs and `max_cues` CUEs of a drop."""
    return Topology(
        receivers=topology.receivers[:max_pairs],
        transmitters=topology.transmitters[:max_pairs],
        pair_roads=topology.pair_roads[:max_pairs],
        cues=topology.cues[:max_cues],
    )


def _frame_row(frame: FrameDesign, coherence_bandwidth: float) -> dict[str, Any]:
    return {
        "scheme": frame.scheme.value,
        "zeta": frame.zeta,
        "zeta_lower": frame.zeta_lower,
        "eta": frame.eta,
        "latency_ms": 1e3 * feasible_region(frame, coherence_bandwidth).min_latency,
        "cue_branch_active": frame.cue_branch_active,
        "error": "",
    }


def _solve_scheme(config: ScenarioConfig, omega: OmegaTable, scheme: PilotKind) -> FrameDesign:
    return solve_frame_sp(config, omega) if scheme is PilotKind.SP else solve_frame_rp(config, omega)


def _sweep_point(config: ScenarioConfig, omega: OmegaTable, scheme: PilotKind, extra: dict[str, Any]) -> dict[str, Any]:
    try:
        row = _frame_row(_solve_scheme(config, omega, scheme), config.coherence_bandwidth)
    except (ValueError, RuntimeError) as exc:
        log.warning("Sweep point %s failed for %s: %s", extra, scheme.value, exc)
        row = {"scheme": scheme.value, "error": _error_text(exc)}
    return {**extra, **row}


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Sweeps                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _convergence(spec: ExperimentSpec, omega: OmegaTable) -> list[dict[str, Any]]:
    rows: list[dict[str, Any]] = []
    for scheme in (PilotKind.SP, PilotKind.RP):
        frame = _solve_scheme(spec.scenario, omega, scheme)
        for index, entry in enumerate(frame.trace):
            rows.append({"scheme": scheme.value, "step": index, **entry})
    return rows


def _density_sweep(spec: ExperimentSpec, omega: OmegaTable) -> list[dict[str, Any]]:
    rows: list[dict[str, Any]] = []
    for cues in spec.cue_counts or (spec.scenario.num_cues,):
        for rho in spec.values:
            config = spec.scenario.with_updates(avg_density=(rho,) * 4, num_cues=cues)
            for scheme in (PilotKind.SP, PilotKind.RP):
                rows.append(_sweep_point(config, omega, scheme, {"num_cues": cues, "density": rho}))
    return rows


def _reliability_sweep(spec: ExperimentSpec, omega: OmegaTable) -> list[dict[str, Any]]:
    rows: list[dict[str, Any]] = []
    for epsilon in spec.values:
        config = spec.scenario.with_updates(reliability=epsilon)
        for scheme in (PilotKind.SP, PilotKind.RP):
            rows.append(_sweep_point(config, omega, scheme, {"reliability": epsilon}))
    return rows


def _bandwidth_sweep(spec: ExperimentSpec, omega: OmegaTable) -> list[dict[str, Any]]:
    rows: list[dict[str, Any]] = []
    b_c = spec.scenario.coherence_bandwidth
    for scheme in (PilotKind.SP, PilotKind.RP):
        try:
            region = feasible_region(_solve_scheme(spec.scenario, omega, scheme), b_c)
        except (ValueError, RuntimeError) as exc:
            rows += [{"scheme": scheme.value, "bandwidth": b, "error": _error_text(exc)} for b in spec.values]
            continue
        for b in spec.values:
            rows.append(
                {
                    "scheme": scheme.value,
                    "bandwidth": b,
                    "latency_ms": 1e3 * region.latency_at(b),
                    "within_coherence": b <= b_c,
                    "error": "",
                }
            )
    return rows


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Per-drop experiments                                                  ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _cdf_drop(task: tuple[ExperimentSpec, dict[str, FrameDesign], int]) -> list[dict[str, Any]]:
    spec, frames, index = task
    seed = derive_seed(spec.seed, index)
    config = spec.scenario
    fading = FadingModel.from_config(config)
    rows: list[dict[str, Any]] = []
    try:
        topology = sample_topology(config, get_random_generator(seed))
    except (ValueError, RuntimeError) as exc:
        log.warning("Drop %d failed to sample: %s", index, exc)
        return [{"drop": index, "drop_seed": seed, "error": _error_text(exc)}]
    for label, frame in frames.items():
        for method in ("optimized", "equal_power"):
            row: dict[str, Any] = {
                "drop": index,
                "drop_seed": seed,
                "frame": label,
                "scheme": frame.scheme.value,
                "zeta": frame.zeta,
                "eta": frame.eta,
                "allocation": method,
                "num_pairs": topology.num_pairs,
                "status": "",
                "min_info_bits": math.nan,
                "min_cue_sinr_db": math.nan,
                "cue_sinr_db": "",
                "error": "",
            }
            try:
                if method == "optimized":
                    result = solve_gp(build_gp(topology, fading, frame, config))
                    row["status"] = result.status.value
                    gamma_v, gamma_c = result.gamma_v, result.gamma_c
                    usable = result.is_optimal
                else:
                    scheme = frame.pilot_scheme
                    gains = link_gains(topology, fading)
                    alloc = equal_power_allocation(topology, config, scheme)
                    gamma_v, gamma_c = gamma_v_from_gains(gains, alloc, scheme), gamma_c_from_gains(gains, alloc, scheme)
                    row["status"] = "Baseline"
                    usable = True
                if usable and gamma_v.size:
                    row["min_info_bits"] = float(np.min(info_bits(gamma_v, frame.blocklength, config.reliability)))
                if usable and gamma_c.size:
                    cue_db = np.asarray(linear_to_db(gamma_c), dtype=np.float64)
                    row["min_cue_sinr_db"] = float(cue_db.min())
                    row["cue_sinr_db"] = ";".join(f"{x:.6f}" for x in cue_db)
            except (ValueError, RuntimeError, ArithmeticError) as exc:
                log.warning("Drop %d, frame %s, %s allocation failed: %s", index, label, method, exc)
                row["error"] = _error_text(exc)
            rows.append(row)
    return rows


def _link_drop(task: tuple[ExperimentSpec, int]) -> list[dict[str, Any]]:
    spec, index = task
    seed = derive_seed(spec.seed, index)
    rng = get_random_generator(seed)
    config = spec.scenario
    link = spec.link
    try:
        full = sample_topology(config, rng)
        topology = truncate_topology(full, spec.max_link_pairs, link.num_pilots)
        gains = link_gains(topology, FadingModel.from_config(config))
        alloc = equal_power_allocation(topology, config, link.pilot_scheme)
        pilots = assign_pilots(topology.num_pairs, topology.num_cues, link.num_pilots, rng)
        draws = [draw_channels(gains, link, rng, pilots=pilots) for _ in range(spec.link_draws)]
        measured = empirical_sinr(draws, alloc, link, rng)
    except (ValueError, RuntimeError) as exc:
        log.warning("Link drop %d failed: %s", index, exc)
        return [{"drop": index, "drop_seed": seed, "error": _error_text(exc)}]
    rows: list[dict[str, Any]] = []
    pairs = [(f"pair:{r}", measured.pooled_v[r], measured.closed_form_v[0, r]) for r in range(topology.num_pairs)]
    cues = [(f"cue:{k}", measured.pooled_c[k], measured.closed_form_c[0, k]) for k in range(topology.num_cues)]
    for name, value, closed in pairs + cues:
        error = abs(value - closed) / closed if math.isfinite(closed) else math.nan
        rows.append(
            {
                "drop": index,
                "drop_seed": seed,
                "link": name,
                "measured": float(value),
                "closed_form": float(closed),
                "relative_error": error,
                "error": "",
            }
        )
    return rows


def _map_drops(func: Callable[[Any], list[dict[str, Any]]], tasks: list[Any], workers: int) -> list[dict[str, Any]]:
    """Run drop tasks, in a process pool when `workers > 1`, and concatenate rows in task order."""
    if workers == 1:
        results = [func(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(func, tasks))
    return [row for rows in results for row in rows]


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Scheduler trace                                                       ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def synthetic_reports(spec: ExperimentSpec, volatility: float = 0.05) -> list[TrafficReport]:
    """
    !!! note "Summary"
        A seeded report stream at the times `spec.values`: road densities follow a log-normal random walk from the scenario densities, and every report carries fresh locations drawn at the current densities.
    """
    rng = get_random_generator(spec.seed)
    densities = np.asarray(spec.scenario.avg_density, dtype=np.float64)
    reports: list[TrafficReport] = []
    for index, t in enumerate(spec.values):
        if index:
            densities = densities * np.exp(volatility * rng.standard_normal(densities.size))
        current = tuple(float(x) for x in densities)
        topology = sample_topology(spec.scenario.with_updates(avg_density=current), rng)
        reports.append(TrafficReport(timestamp=t, densities=current, topology=topology))
    return reports


def _schedule_trace(spec: ExperimentSpec, omega: OmegaTable) -> list[dict[str, Any]]:
    context = ScheduleContext(
        scenario=spec.scenario,
        schedule=spec.schedule,
        omega=omega,
        scheme=PilotKind.SP,
        solve_allocation=spec.solve_allocation,
    )
    _, rows = run_schedule(synthetic_reports(spec), context)
    return rows


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Runner                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def run_experiment(
    spec: ExperimentSpec,
    out_dir: Optional[Union[str, Path]] = None,
    omega: Optional[OmegaTable] = None,
    cache_dir: Optional[Union[str, Path]] = None,
) -> ExperimentResult:
    """
    !!! note "Summary"
        Run one experiment and, when `out_dir` is given, write `<kind>.csv` and `<kind>.summary.json` there.

    ???+ abstract "Details"
        The CSV depends on nothing but the `ExperimentSpec` and the path-loss table, so repeated runs write identical files; the wall time only enters the summary.

    Params:
        spec (ExperimentSpec):
            What to run.
        out_dir (Optional[Union[str, Path]]):
            Output directory, created when missing.<br>
            Default: `None`
        omega (Optional[OmegaTable]):
            Path-loss table; computed or read from the cache when omitted.<br>
            Default: `None`
        cache_dir (Optional[Union[str, Path]]):
            Cache directory for the path-loss table.<br>
            Default: `None`

    Returns:
        (ExperimentResult):
            The table, the summary and the written paths.
    """
    start = time.perf_counter()
    table_omega = omega if omega is not None else load_or_compute_omega(spec.scenario, cache_dir)
    log.info(
        "Running %s with seed %d, config %s", spec.kind.value, spec.seed, config_hash(spec.scenario)[:12]
    )
    kind = spec.kind
    if kind is ExperimentKind.CONVERGENCE:
        rows = _convergence(spec, table_omega)
    elif kind is ExperimentKind.DENSITY_SWEEP:
        rows = _density_sweep(spec, table_omega)
    elif kind is ExperimentKind.RELIABILITY_SWEEP:
        rows = _reliability_sweep(spec, table_omega)
    elif kind is ExperimentKind.BANDWIDTH_SWEEP:
        rows = _bandwidth_sweep(spec, table_omega)
    elif kind is ExperimentKind.CDF:
        frames = design_frames(spec.scenario, table_omega)
        rows = _map_drops(_cdf_drop, [(spec, frames, i) for i in range(spec.num_drops)], spec.workers)
    elif kind is ExperimentKind.LINK_VALIDATION:
        rows = _map_drops(_link_drop, [(spec, i) for i in range(spec.num_drops)], spec.workers)
    else:
        rows = _schedule_trace(spec, table_omega)

    table = pd.DataFrame(rows)
    if "error" in table:
        table["error"] = table["error"].fillna("")
    wall_time = time.perf_counter() - start
    summary: dict[str, Any] = {
        "experiment": kind.value,
        "config_hash": config_hash(spec.scenario),
        "seed": spec.seed,
        "num_drops": spec.num_drops,
        "num_rows": int(len(table)),
        "wall_time_s": wall_time,
        "units": {column: COLUMN_UNITS[column] for column in table.columns if column in COLUMN_UNITS},
        "spec": spec.to_dict(),
    }
    result = ExperimentResult(table=table, summary=summary)
    summary["num_errors"] = result.num_errors
    if out_dir is None:
        return result
    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    csv_path = target / f"{kind.value}.csv"
    summary_path = target / f"{kind.value}.summary.json"
    table.to_csv(csv_path, index=False)
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
    log.info("Wrote %d rows to %s in %.2f s", len(table), csv_path, wall_time)
    return ExperimentResult(table=table, summary=summary, csv_path=csv_path, summary_path=summary_path)
