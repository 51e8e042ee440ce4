# ============================================================================ #
#                                                                              #
#     Title: Command Line                                                      #
#     Purpose: The `v2v-urllc` console script.                                 #
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
    Sub-commands `omega`, `frame`, `allocate`, `sweep`, `cdf`, `validate-link`, `schedule` and `validate`.

???+ abstract "Details"
    - Settings come from the built-in defaults, then the `--config` JSON file, then the flags; later sources win.
    - The config file holds scenario fields at its top level, or `scenario` and `schedule` objects.
    - Results go to `--out` when given, otherwise JSON to standard output. Logs go to standard error.
    - Exit codes: `0` on success, `1` on a hard error, `2` when a validation suite fails.
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
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

# ## Local First Party Imports ----
from v2v_urllc import __version__
from v2v_urllc.frame_design.algorithms import feasible_region, solve_frame_rp, solve_frame_sp
from v2v_urllc.geometry.algorithms import sample_topology
from v2v_urllc.gp_alloc.algorithms import build_gp, recover_phi, solve_gp
from v2v_urllc.harness.experiments import ExperimentKind, ExperimentSpec, run_experiment
from v2v_urllc.harness.validation import SUITES, validate
from v2v_urllc.link_mc.algorithms import LinkDrawConfig
from v2v_urllc.pathloss.algorithms import FadingModel, OmegaTable, load_or_compute_omega, omega_montecarlo
from v2v_urllc.scheduler.algorithms import ScheduleContext, read_reports, run_schedule, write_trace
from v2v_urllc.sinr_bounds.algorithms import PilotKind
from v2v_urllc.utils.config import ScenarioConfig, ScheduleConfig, config_from_dict, config_hash, merge_config
from v2v_urllc.utils.data import SEED, get_random_generator


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = ["build_parser", "load_settings", "main"]


# ---------------------------------------------------------------------------- #
# Constants                                                                 ####
# ---------------------------------------------------------------------------- #


log: logging.Logger = logging.getLogger(__name__)

EXIT_OK: int = 0
EXIT_ERROR: int = 1
EXIT_VALIDATION: int = 2

LOG_FORMAT: str = "%(asctime)s %(levelname)s %(name)s %(message)s"

SWEEP_KINDS: dict[str, ExperimentKind] = {
    "density": ExperimentKind.DENSITY_SWEEP,
    "reliability": ExperimentKind.RELIABILITY_SWEEP,
    "bandwidth": ExperimentKind.BANDWIDTH_SWEEP,
    "convergence": ExperimentKind.CONVERGENCE,
}


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Parser                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"Expected comma separated numbers, got '{text}'.") from exc


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(item) for item in text.split(",") if item.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"Expected comma separated integers, got '{text}'.") from exc


def _assignment(text: str) -> tuple[str, Any]:
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"Expected KEY=VALUE, got '{text}'.")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.strip(), value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="JSON config file")
    common.add_argument("--seed", type=int, default=None, help=f"master seed (default {SEED})")
    common.add_argument("--out", type=Path, default=None, help="output directory")
    common.add_argument("--cache-dir", type=Path, default=None, help="path-loss table cache")
    common.add_argument("--omega", type=Path, default=None, help="path-loss table JSON to use as is")
    common.add_argument("--set", dest="overrides", type=_assignment, action="append", default=[], metavar="KEY=VALUE")
    common.add_argument("--num-cues", type=int, default=None)
    common.add_argument("--reliability", type=float, default=None)
    common.add_argument("--density", type=float, default=None, help="average density on every road")
    common.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="v2v-urllc", description="Frame design and power allocation for urban V2V URLLC.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    omega = commands.add_parser("omega", parents=[common], help="path-loss expectation table")
    omega.add_argument("--montecarlo", type=int, default=0, metavar="N", help="also estimate with N samples")

    frame = commands.add_parser("frame", parents=[common], help="optimal frame size and feasible region")
    frame.add_argument("--scheme", choices=["SP", "RP", "both"], default="both")
    frame.add_argument("--max-latency", type=float, default=None, help="seconds")

    allocate = commands.add_parser("allocate", parents=[common], help="max-min power allocation on one drop")
    allocate.add_argument("--scheme", choices=["SP", "RP"], default="SP")

    sweep = commands.add_parser("sweep", parents=[common], help="frame-size sweeps")
    sweep.add_argument("kind", choices=sorted(SWEEP_KINDS))
    sweep.add_argument("--values", type=_floats, default=())
    sweep.add_argument("--cue-counts", type=_ints, default=())

    cdf = commands.add_parser("cdf", parents=[common], help="per-drop allocation comparison")
    cdf.add_argument("--drops", type=int, default=100)
    cdf.add_argument("--workers", type=int, default=1)

    link = commands.add_parser("validate-link", parents=[common], help="antenna-level SINR against the closed forms")
    link.add_argument("--drops", type=int, default=20)
    link.add_argument("--workers", type=int, default=1)
    link.add_argument("--antennas", type=int, default=256)
    link.add_argument("--link-draws", type=int, default=20)
    link.add_argument("--max-pairs", type=int, default=4)
    link.add_argument("--frame-length", type=int, default=166)

    schedule = commands.add_parser("schedule", parents=[common], help="semi-persistent scheduling trace")
    schedule.add_argument("--reports", type=Path, default=None, help="JSONL traffic reports")
    schedule.add_argument("--times", type=_floats, default=(), help="synthetic report times in seconds")
    schedule.add_argument("--no-allocation", action="store_true")

    check = commands.add_parser("validate", parents=[common], help="self-check suites")
    check.add_argument("--suite", action="append", choices=sorted(SUITES), default=None)
    check.add_argument("--omega-samples", type=int, default=10_000_000)
    return parser


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Settings                                                              ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def load_settings(args: argparse.Namespace) -> tuple[ScenarioConfig, ScheduleConfig]:
    """
    !!! note "Summary"
        Resolve the scenario and schedule configs from defaults, the `--config` file and the flags.
    """
    scenario, schedule = ScenarioConfig(), ScheduleConfig()
    if args.config is not None:
        data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError(f"Config file {args.config} must contain a JSON object.")
        if "scenario" in data or "schedule" in data:
            scenario = config_from_dict(ScenarioConfig, data.get("scenario", {}))
            schedule = config_from_dict(ScheduleConfig, data.get("schedule", {}))
        else:
            scenario = config_from_dict(ScenarioConfig, data)
    flags: dict[str, Any] = {
        "num_cues": args.num_cues,
        "reliability": args.reliability,
        "avg_density": None if args.density is None else (args.density,) * 4,
    }
    schedule_fields = set(schedule.to_dict())
    extra = dict(args.overrides)
    scenario = merge_config(scenario, {**{k: v for k, v in extra.items() if k not in schedule_fields}, **flags})
    schedule = merge_config(schedule, {k: v for k, v in extra.items() if k in schedule_fields})
    return scenario, schedule


def _omega(args: argparse.Namespace, scenario: ScenarioConfig) -> OmegaTable:
    if args.omega is not None:
        return OmegaTable.from_dict(json.loads(Path(args.omega).read_text(encoding="utf-8")))
    return load_or_compute_omega(scenario, args.cache_dir)


def _emit(payload: Any, args: argparse.Namespace, name: str) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, default=str)
    if args.out is None:
        print(text)
        return
    args.out.mkdir(parents=True, exist_ok=True)
    path = args.out / f"{name}.json"
    path.write_text(text + "\n", encoding="utf-8")
    log.info("Wrote %s", path)


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Commands                                                              ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _cmd_omega(args: argparse.Namespace, scenario: ScenarioConfig, schedule: ScheduleConfig, seed: int) -> int:
    table = _omega(args, scenario)
    payload: dict[str, Any] = {"quadrature": table.to_dict()}
    if args.montecarlo > 0:
        estimate, errors = omega_montecarlo(scenario, args.montecarlo, get_random_generator(seed))
        payload["montecarlo"] = estimate.to_dict()
        payload["standard_errors"] = errors
    _emit(payload, args, "omega")
    return EXIT_OK


def _cmd_frame(args: argparse.Namespace, scenario: ScenarioConfig, schedule: ScheduleConfig, seed: int) -> int:
    omega = _omega(args, scenario)
    payload: dict[str, Any] = {}
    for name, solver in (("SP", solve_frame_sp), ("RP", solve_frame_rp)):
        if args.scheme not in (name, "both"):
            continue
        design = solver(scenario, omega)
        region = feasible_region(design, scenario.coherence_bandwidth, args.max_latency)
        payload[name] = {"frame": design.to_dict(), "region": region.to_dict()}
    _emit(payload, args, "frame")
    return EXIT_OK


def _cmd_allocate(args: argparse.Namespace, scenario: ScenarioConfig, schedule: ScheduleConfig, seed: int) -> int:
    omega = _omega(args, scenario)
    design = solve_frame_sp(scenario, omega) if args.scheme == PilotKind.SP.value else solve_frame_rp(scenario, omega)
    topology = sample_topology(scenario, get_random_generator(seed))
    result = solve_gp(build_gp(topology, FadingModel.from_config(scenario), design, scenario))
    payload: dict[str, Any] = {"frame": design.to_dict(), "topology": topology.to_dict(), "allocation": result.to_dict()}
    if result.is_optimal:
        payload["min_info_bits"] = recover_phi(result, design, scenario.reliability)
    _emit(payload, args, "allocation")
    return EXIT_OK


def _run(spec: ExperimentSpec, args: argparse.Namespace, omega: OmegaTable) -> int:
    result = run_experiment(spec, args.out, omega=omega)
    if args.out is None:
        print(result.table.to_csv(index=False), end="")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace, scenario: ScenarioConfig, schedule: ScheduleConfig, seed: int) -> int:
    spec = ExperimentSpec(
        kind=SWEEP_KINDS[args.kind],
        scenario=scenario,
        values=args.values,
        cue_counts=args.cue_counts,
        seed=seed,
    )
    return _run(spec, args, _omega(args, scenario))


def _cmd_cdf(args: argparse.Namespace, scenario: ScenarioConfig, schedule: ScheduleConfig, seed: int) -> int:
    spec = ExperimentSpec(kind=ExperimentKind.CDF, scenario=scenario, num_drops=args.drops, workers=args.workers, seed=seed)
    return _run(spec, args, _omega(args, scenario))


def _cmd_link(args: argparse.Namespace, scenario: ScenarioConfig, schedule: ScheduleConfig, seed: int) -> int:
    link = LinkDrawConfig(num_rx_antennas=args.antennas, num_bs_antennas=args.antennas, frame_length=args.frame_length)
    spec = ExperimentSpec(
        kind=ExperimentKind.LINK_VALIDATION,
        scenario=scenario,
        num_drops=args.drops,
        workers=args.workers,
        seed=seed,
        link=link,
        link_draws=args.link_draws,
        max_link_pairs=args.max_pairs,
    )
    return _run(spec, args, _omega(args, scenario))


def _cmd_schedule(args: argparse.Namespace, scenario: ScenarioConfig, schedule: ScheduleConfig, seed: int) -> int:
    omega = _omega(args, scenario)
    if args.reports is None:
        spec = ExperimentSpec(
            kind=ExperimentKind.SCHEDULE_TRACE,
            scenario=scenario,
            schedule=schedule,
            values=args.times,
            seed=seed,
            solve_allocation=not args.no_allocation,
        )
        return _run(spec, args, omega)
    context = ScheduleContext(scenario=scenario, schedule=schedule, omega=omega, solve_allocation=not args.no_allocation)
    _, rows = run_schedule(read_reports(args.reports), context)
    if args.out is None:
        print(json.dumps(rows, indent=2, default=str))
    else:
        write_trace(rows, args.out / "schedule_trace.csv")
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace, scenario: ScenarioConfig, schedule: ScheduleConfig, seed: int) -> int:
    omega = _omega(args, scenario)
    report = validate(args.suite, scenario, omega, seed=seed, omega_samples=args.omega_samples)
    _emit(report, args, "validation")
    for name, suite in report["suites"].items():
        log.info("%-12s %s %.2f s %s", name, "pass" if suite["result"] else "FAIL", suite["runtime_s"], suite["failed"])
    return EXIT_OK if report["result"] else EXIT_VALIDATION


COMMANDS = {
    "omega": _cmd_omega,
    "frame": _cmd_frame,
    "allocate": _cmd_allocate,
    "sweep": _cmd_sweep,
    "cdf": _cmd_cdf,
    "validate-link": _cmd_link,
    "schedule": _cmd_schedule,
    "validate": _cmd_validate,
}


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Entry point                                                           ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT)
    seed = SEED if args.seed is None else args.seed
    try:
        scenario, schedule = load_settings(args)
        log.info("Command %s, seed %d, config %s", args.command, seed, config_hash(scenario)[:12])
        return COMMANDS[args.command](args, scenario, schedule, seed)
    except (ValueError, RuntimeError, OSError, ArithmeticError) as exc:
        log.error("%s failed: %s: %s", args.command, type(exc).__name__, exc)
        log.debug("Traceback", exc_info=True)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
