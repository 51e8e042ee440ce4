# ============================================================================ #
#                                                                              #
#     Title: Validation                                                        #
#     Purpose: Named self-check suites run against independent oracles.        #
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
    Groups the check functions of every module into suites. Each suite returns a dictionary with `result`, `runtime_s` and the per-check `details`; a suite that raises is reported as failed with the error text.

???+ abstract "Details"
    | Suite         | Oracle                                                                 |
    |---------------|------------------------------------------------------------------------|
    | `omega`       | Monte Carlo over vehicle positions against the quadrature table       |
    | `derivatives` | central differences against analytic surplus derivatives              |
    | `frame_grid`  | exhaustive grids against the frame-design solvers                     |
    | `sinr_bounds` | direct re-summation and Monte Carlo over pilot assignments            |
    | `gp`          | bisection, grid search and KKT residuals against the barrier solver   |
    | `link`        | antenna-level channel simulation against the closed-form SINRs        |

    The `omega` suite referees whatever table is passed in, so a corrupted table fails that suite and no other.
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
import logging
import time
from typing import Any, Callable, Optional, Sequence

# ## Python Third Party Imports ----
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.fbl.tests import check_info_bits_shape, check_q_inv_round_trip
from v2v_urllc.frame_design.algorithms import solve_frame_rp, solve_frame_sp
from v2v_urllc.frame_design.tests import (
    check_convergence,
    check_derivatives,
    check_rp_grid,
    check_sp_grid,
)
from v2v_urllc.geometry.algorithms import sample_topology
from v2v_urllc.geometry.tests import audit_topology, check_road_relations
from v2v_urllc.gp_alloc.algorithms import build_gp, solve_gp
from v2v_urllc.gp_alloc.tests import (
    check_bisection_oracle,
    check_cue_thresholds,
    check_epigraph_tightness,
    check_grid_oracle,
    check_kkt,
)
from v2v_urllc.harness.experiments import truncate_topology
from v2v_urllc.link_mc.algorithms import LinkDrawConfig, assign_pilots
from v2v_urllc.link_mc.tests import check_closed_form, check_collision_rate, check_hardening
from v2v_urllc.pathloss.algorithms import FadingModel, OmegaTable, link_gains, load_or_compute_omega
from v2v_urllc.pathloss.tests import check_jensen, check_omega_against_montecarlo
from v2v_urllc.sinr_bounds.algorithms import PilotScheme, equal_power_allocation
from v2v_urllc.sinr_bounds.tests import (
    check_cue_crossover,
    check_instance_resummation,
    check_jensen_bound,
    check_rp_sp_relation,
    check_scale_covariance,
)
from v2v_urllc.utils.config import ScenarioConfig
from v2v_urllc.utils.data import SEED, RandomGenerator, derive_seed, get_random_generator


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = ["SUITES", "ValidationContext", "run_suite", "validate"]


# ---------------------------------------------------------------------------- #
# Constants                                                                 ####
# ---------------------------------------------------------------------------- #


log: logging.Logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Context                                                               ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class ValidationContext:
    """
    !!! note "Summary"
        Shared inputs of the suites: the scenario, the path-loss table under test and a seed. Each suite draws from its own generator, so suites can run in any order or alone.
    """

    def __init__(
        self,
        config: ScenarioConfig,
        omega: OmegaTable,
        seed: int = SEED,
        omega_samples: int = 10_000_000,
        gp_drops: int = 2,
    ) -> None:
        self.config = config
        self.omega = omega
        self.seed = seed
        self.omega_samples = omega_samples
        self.gp_drops = gp_drops

    def rng(self, suite: str) -> RandomGenerator:
        return get_random_generator(derive_seed(self.seed, sorted(SUITES).index(suite)))


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Suites                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _omega_suite(ctx: ValidationContext) -> dict[str, Any]:
    rng = ctx.rng("omega")
    return {
        "montecarlo": check_omega_against_montecarlo(ctx.config, rng, n=ctx.omega_samples, table=ctx.omega),
        "jensen": check_jensen(ctx.omega),
    }


def _derivatives_suite(ctx: ValidationContext) -> dict[str, Any]:
    return {
        "surplus_derivatives": check_derivatives(ctx.rng("derivatives")),
        "q_inverse": check_q_inv_round_trip(),
        "info_bits_shape": check_info_bits_shape(),
    }


def _frame_grid_suite(ctx: ValidationContext) -> dict[str, Any]:
    sp = solve_frame_sp(ctx.config, ctx.omega)
    rp = solve_frame_rp(ctx.config, ctx.omega)
    return {
        "sp_grid": check_sp_grid(ctx.config, ctx.omega, sp),
        "rp_grid": check_rp_grid(ctx.config, ctx.omega, rp),
        "sp_convergence": check_convergence(sp, ctx.config.mu_eta),
        "rp_convergence": check_convergence(rp, ctx.config.mu_eta),
    }


def _sinr_bounds_suite(ctx: ValidationContext) -> dict[str, Any]:
    rng = ctx.rng("sinr_bounds")
    config = ctx.config
    sp = solve_frame_sp(config, ctx.omega)
    topology = sample_topology(config, rng)
    gains = link_gains(topology, FadingModel.from_config(config))
    details: dict[str, Any] = {
        "topology": audit_topology(topology, config),
        "road_relations": check_road_relations(),
        "rp_sp_relation": check_rp_sp_relation(config, ctx.omega, sp.zeta),
        "cue_crossover": check_cue_crossover(config, ctx.omega, sp.zeta),
    }
    if topology.num_pairs:
        tau = float(max(config.num_cues, 4))
        for name, scheme in (("rp", PilotScheme.regular(tau, 2.0 * tau)), ("sp", PilotScheme.superimposed(2.0 * tau))):
            alloc = equal_power_allocation(topology, config, scheme)
            details[f"resummation_{name}"] = check_instance_resummation(gains, alloc, scheme)
            details[f"scale_{name}"] = check_scale_covariance(gains, alloc, scheme)
            details[f"jensen_{name}"] = check_jensen_bound(gains, alloc, scheme, rng, num_assignments=1000)
    return details


def _gp_suite(ctx: ValidationContext) -> dict[str, Any]:
    config = ctx.config.with_updates(num_cues=1)
    fading = FadingModel.from_config(config)
    frames = {"sp": solve_frame_sp(config, ctx.omega), "rp": solve_frame_rp(config, ctx.omega)}
    details: dict[str, Any] = {}
    for drop in range(ctx.gp_drops):
        topology = sample_topology(config, get_random_generator(derive_seed(ctx.seed, 1000 + drop)))
        topology = truncate_topology(topology, 2, 1)
        if topology.num_pairs == 0:
            continue
        for name, frame in frames.items():
            gp = build_gp(topology, fading, frame, config)
            result = solve_gp(gp)
            key = f"drop{drop}_{name}"
            details[f"{key}_kkt"] = check_kkt(gp, result)
            details[f"{key}_epigraph"] = check_epigraph_tightness(result)
            details[f"{key}_cue"] = check_cue_thresholds(result, gp.cue_threshold)
            details[f"{key}_bisection"] = check_bisection_oracle(gp, result)
            details[f"{key}_grid"] = check_grid_oracle(gp, result, points=12, cap=200_000)
    return details


def _link_suite(ctx: ValidationContext) -> dict[str, Any]:
    rng = ctx.rng("link")
    link = LinkDrawConfig(frame_length=8, num_rx_antennas=128, num_bs_antennas=128)
    config = ctx.config.with_updates(num_cues=2)
    topology = truncate_topology(sample_topology(config, rng), 4, 2)
    details: dict[str, Any] = {
        "collision_rate": check_collision_rate(link.num_pilots, rng, num_draws=20_000),
        "hardening": check_hardening(rng, num_draws=1000),
    }
    if topology.num_pairs >= 2:
        gains = link_gains(topology, FadingModel.from_config(config))
        alloc = equal_power_allocation(topology, config, link.pilot_scheme)
        pilots = assign_pilots(topology.num_pairs, topology.num_cues, 2, rng)
        details["closed_form"] = check_closed_form(gains, alloc, link, rng, pilots, num_draws=30)
    return details


SUITES: dict[str, Callable[[ValidationContext], dict[str, Any]]] = {
    "omega": _omega_suite,
    "derivatives": _derivatives_suite,
    "frame_grid": _frame_grid_suite,
    "sinr_bounds": _sinr_bounds_suite,
    "gp": _gp_suite,
    "link": _link_suite,
}


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Runner                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def run_suite(name: str, ctx: ValidationContext) -> dict[str, Any]:
    """Run one suite, catching its errors."""
    if name not in SUITES:
        raise ValueError(f"Unknown validation suite '{name}'. Choose from {sorted(SUITES)}.")
    start = time.perf_counter()
    try:
        details = SUITES[name](ctx)
        passed = all(bool(check["result"]) for check in details.values())
        error = ""
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        log.exception("Suite %s raised", name)
        details, passed, error = {}, False, f"{type(exc).__name__}: {exc}"
    runtime = time.perf_counter() - start
    failed = [key for key, check in details.items() if not check["result"]]
    log.info("Suite %s %s in %.2f s", name, "passed" if passed else "FAILED", runtime)
    return {"result": passed, "runtime_s": runtime, "failed": failed, "error": error, "details": details}


@typechecked
def validate(
    suites: Optional[Sequence[str]] = None,
    config: Optional[ScenarioConfig] = None,
    omega: Optional[OmegaTable] = None,
    seed: int = SEED,
    omega_samples: int = 10_000_000,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Run the named suites, all of them by default.

    Params:
        suites (Optional[Sequence[str]]):
            Suite names from `SUITES`.<br>
            Default: `None`
        config (Optional[ScenarioConfig]):
            Scenario; the defaults when omitted.<br>
            Default: `None`
        omega (Optional[OmegaTable]):
            Table under test; computed from `config` when omitted.<br>
            Default: `None`
        seed (int):
            Master seed.<br>
            Default: `SEED`
        omega_samples (int):
            Monte Carlo samples of the `omega` suite.<br>
            Default: `10_000_000`

    Raises:
        ValueError: If a suite name is unknown.

    Returns:
        (dict[str, Any]):
            - `result` (bool): `True` when every suite passed.
            - `suites` (dict[str, dict]): The per-suite reports.
    """
    names = list(SUITES) if suites is None else list(suites)
    unknown = sorted(set(names) - set(SUITES))
    if unknown:
        raise ValueError(f"Unknown validation suites {unknown}. Choose from {sorted(SUITES)}.")
    scenario = config if config is not None else ScenarioConfig()
    table = omega if omega is not None else load_or_compute_omega(scenario)
    ctx = ValidationContext(scenario, table, seed=seed, omega_samples=omega_samples)
    reports = {name: run_suite(name, ctx) for name in names}
    return {"result": all(report["result"] for report in reports.values()), "seed": seed, "suites": reports}
