# ============================================================================ #
#                                                                              #
#     Title: Frame Design Tests                                                #
#     Purpose: Finite-difference and grid-search oracles for the frame         #
#         design solvers.                                                      #
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
    Checks that re-derive the frame design by brute force: central finite differences for the analytic partials, dense grids for the roots and the RP tangent point.
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
from typing import Any, Optional

# ## Python Third Party Imports ----
import numpy as np
from numpy.random import Generator as RandomGenerator
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.frame_design.algorithms import (
    FrameDesign,
    _rp_terms,
    cue_floor_sp,
    cue_product_rp,
    f_rp,
    f_sp,
)
from v2v_urllc.pathloss.algorithms import OmegaTable
from v2v_urllc.sinr_bounds.algorithms import PilotKind
from v2v_urllc.utils.config import ScenarioConfig


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "check_derivatives",
    "check_sp_convexity",
    "check_unique_eta_maximum",
    "check_sp_grid",
    "check_rp_grid",
    "check_convergence",
]


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Derivatives and shape                                                  ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _rel(numeric: float, analytic: float) -> float:
    return abs(numeric - analytic) / max(abs(analytic), 1.0)


@typechecked
def check_derivatives(rng: RandomGenerator, num_points: int = 20, rtol: float = 1e-6) -> dict[str, Any]:
    """
    !!! note "Summary"
        Compare `df_SP/dzeta`, `df_RP/dzeta`, `df_RP/deta` and `d2f_RP/deta2` with central differences at `num_points` random points.

    ???+ abstract "Details"
        Errors are relative to `max(|analytic|, 1)`. Points are drawn with `zeta` in `[20, 600]`, `eta` in `[0.05, 0.9]`, `a` in `[0.005, 0.2]` and `b` in `[3, 8]`.
    """
    worst = {"sp_zeta": 0.0, "rp_zeta": 0.0, "rp_eta": 0.0, "rp_eta2": 0.0}
    for _ in range(num_points):
        zeta = float(rng.uniform(20.0, 600.0))
        eta = float(rng.uniform(0.05, 0.9))
        a = float(rng.uniform(0.005, 0.2))
        b = float(rng.uniform(3.0, 8.0))
        hz, he = 1e-4 * zeta, 1e-5

        num = (f_sp(zeta + hz, a, b, 0.0).value - f_sp(zeta - hz, a, b, 0.0).value) / (2 * hz)
        worst["sp_zeta"] = max(worst["sp_zeta"], _rel(num, f_sp(zeta, a, b, 0.0).d_zeta))

        here = f_rp(eta, zeta, a, b, 0.0)
        num = (f_rp(eta, zeta + hz, a, b, 0.0).value - f_rp(eta, zeta - hz, a, b, 0.0).value) / (2 * hz)
        worst["rp_zeta"] = max(worst["rp_zeta"], _rel(num, here.d_zeta))
        up, down = f_rp(eta + he, zeta, a, b, 0.0), f_rp(eta - he, zeta, a, b, 0.0)
        worst["rp_eta"] = max(worst["rp_eta"], _rel((up.value - down.value) / (2 * he), here.d_eta))
        worst["rp_eta2"] = max(worst["rp_eta2"], _rel((up.d_eta - down.d_eta) / (2 * he), here.d2_eta))
    return {"result": all(err <= rtol for err in worst.values()), "errors": worst, "tolerance": rtol}


@typechecked
def check_sp_convexity(a: float, b: float, zeta_max: float = 2000.0, num: int = 2000) -> dict[str, Any]:
    """
    !!! note "Summary"
        Second differences of `f_SP` are positive on a uniform grid of `(0, zeta_max]`.
    """
    grid = np.linspace(zeta_max / num, zeta_max, num)
    values = np.array([f_sp(float(z), a, b, 0.0).value for z in grid])
    second = np.diff(values, 2)
    return {"result": bool(np.all(second > 0)), "min_second_difference": float(second.min())}


@typechecked
def check_unique_eta_maximum(zeta: float, a: float, b: float, num: int = 10_000) -> dict[str, Any]:
    """
    !!! note "Summary"
        `df_RP/deta` changes sign from positive to negative exactly once on a fine grid of `(0, 1)`.

    ???+ abstract "Details"
        Very close to `eta = 1` the surplus dips below zero and recovers to zero, which adds an upward sign change; only downward changes mark maxima.
    """
    grid = np.linspace(0.0, 1.0, num + 2)[1:-1]
    _, _, d_eta, _ = _rp_terms(grid, zeta, a, b)
    downward = int(np.count_nonzero((d_eta[:-1] > 0) & (d_eta[1:] <= 0)))
    return {"result": downward == 1, "maxima": downward}


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Grid oracles                                                           ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def check_sp_grid(config: ScenarioConfig, omega: OmegaTable, frame: FrameDesign, step: float = 0.1) -> dict[str, Any]:
    """
    !!! note "Summary"
        Scan `zeta` in steps of `step` for the first size meeting the payload on every road and the CUE floor, and compare with `frame.zeta_lower`.
    """
    a_min = float(min(frame.a_sp))
    floor = cue_floor_sp(config, omega)
    grid = np.arange(step, 4.0 * frame.zeta_lower + step, step)
    x = a_min * grid
    values = grid * np.log2(1.0 + x) - frame.b * np.sqrt(grid)
    feasible = (values >= config.info_threshold) & (grid >= floor)
    if not feasible.any():
        return {"result": False, "grid_zeta": None, "zeta_lower": frame.zeta_lower}
    grid_zeta = float(grid[np.argmax(feasible)])
    slack = step + config.mu_zeta
    return {
        "result": abs(grid_zeta - frame.zeta_lower) <= slack,
        "grid_zeta": grid_zeta,
        "zeta_lower": frame.zeta_lower,
        "tolerance": slack,
    }


@typechecked
def check_rp_grid(
    config: ScenarioConfig,
    omega: OmegaTable,
    frame: FrameDesign,
    eta_step: float = 1e-3,
    zeta_step: Optional[float] = None,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Exhaustive `(eta, zeta)` grid for the smallest frame meeting the payload on the binding road and the CUE pilot length `eta * zeta >= P_C`.

    ???+ abstract "Details"
        The design itself must be feasible: `eta * zeta >= P_C` and the payload is met at the rounded size. No grid point may beat `frame.zeta_lower` by more than the grid resolution, and the grid optimum must be as close. When the CUE constraint binds, the grid can only land on it to within one `eta` step, which widens the upper tolerance by `zeta * eta_step / (eta - eta_step)`.

        `zeta_step` defaults to `max(0.5, zeta_lower / 4000)` and the grid is evaluated a block of `eta` rows at a time.
    """
    if frame.scheme is not PilotKind.RP:
        raise ValueError("check_rp_grid needs an RP design.")
    a_min = float(min(frame.a_rp))
    product_c = cue_product_rp(config, omega)
    step = zeta_step if zeta_step is not None else max(0.5, frame.zeta_lower / 4000.0)
    zetas = np.arange(step, 2.0 * frame.zeta_lower + step, step)[None, :]
    rows = np.zeros(zetas.shape[1], dtype=bool)
    etas = np.arange(eta_step, 1.0, eta_step)
    for block in np.array_split(etas, max(1, etas.size // 100)):
        values, _, _, _ = _rp_terms(block[:, None], zetas, a_min, frame.b)
        rows |= ((values >= config.info_threshold) & (block[:, None] * zetas >= product_c)).any(axis=0)

    pilot_ok = frame.eta * frame.zeta >= product_c * (1.0 - 1e-9)
    payload_ok = _rp_terms(frame.eta, frame.zeta, a_min, frame.b)[0] >= config.info_threshold - 1e-6
    if not rows.any():
        return {"result": False, "grid_zeta": None, "zeta_lower": frame.zeta_lower, "feasible": pilot_ok and payload_ok}
    grid_zeta = float(zetas[0, np.argmax(rows)])
    slack = step + config.mu_zeta
    upper = slack
    if product_c > 0 and frame.eta * frame.zeta_lower <= product_c * (1.0 + 1e-6):
        upper += frame.zeta_lower * eta_step / max(frame.eta - eta_step, eta_step)
    no_better = grid_zeta >= frame.zeta_lower - slack
    close = grid_zeta <= frame.zeta_lower + upper
    return {
        "result": bool(pilot_ok and payload_ok and no_better and close),
        "grid_zeta": grid_zeta,
        "zeta_lower": frame.zeta_lower,
        "feasible": bool(pilot_ok and payload_ok),
        "pilot_length": frame.eta * frame.zeta,
        "cue_product": product_c,
        "cue_branch_active": frame.cue_branch_active,
        "tolerance": (slack, upper),
    }


@typechecked
def check_convergence(frame: FrameDesign, mu_eta: float, max_bisection: int = 20, max_newton: int = 100) -> dict[str, Any]:
    """
    !!! note "Summary"
        Terminal bisection bracket within `mu_eta` and iteration counts within budget.
    """
    counts = dict(frame.iterations)
    newton_ok = all(v < max_newton for k, v in counts.items() if k.startswith("newton"))
    if frame.scheme is PilotKind.SP:
        return {"result": newton_ok, "iterations": counts}
    last = frame.trace[-1]
    width = last["eta_max"] - last["eta_min"]
    return {
        "result": newton_ok and width <= mu_eta and counts.get("bisection", 0) < max_bisection,
        "bracket_width": width,
        "iterations": counts,
    }
