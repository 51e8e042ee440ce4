# ============================================================================ #
#                                                                              #
#     Title: Power Allocation Tests                                            #
#     Purpose: Oracles for the allocation program: cross-module consistency,   #
#         optimality conditions, bisection and exhaustive grid search.         #
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
    Checks on the allocation program and its solution. The two independent solve paths are a bisection on `phi_prime`, where each level is a phase-I feasibility problem, and an exhaustive log-grid search over the powers.
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
import math
from typing import Any, Optional

# ## Python Third Party Imports ----
import numpy as np
from numpy.typing import NDArray
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.fbl.algorithms import info_bits
from v2v_urllc.frame_design.algorithms import FrameDesign
from v2v_urllc.gp_alloc.algorithms import (
    AllocationResult,
    BarrierSettings,
    GPInstance,
    _initial_point,
    _log_problem,
    evaluate_posynomial,
    instance_from_allocation,
    phase_one,
    recover_phi,
)
from v2v_urllc.sinr_bounds.algorithms import (
    PilotKind,
    PowerAllocation,
    gamma_c_from_gains,
    gamma_v_from_gains,
)


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "check_constraint_consistency",
    "check_epigraph_tightness",
    "check_cue_thresholds",
    "check_kkt",
    "check_recovered_bits",
    "bisect_phi",
    "grid_search_phi",
    "check_bisection_oracle",
    "check_grid_oracle",
]


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Structure                                                              ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def check_constraint_consistency(
    gp: GPInstance, alloc: PowerAllocation, phi_prime: float, rtol: float = 1e-12
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Evaluate every pair and CUE posynomial term by term at `alloc` and compare with `phi_prime / Gamma_V` and `Theta_C / Gamma_C` from `v2v_urllc.sinr_bounds`.
    """
    values = instance_from_allocation(gp, alloc, phi_prime)
    gamma_v = gamma_v_from_gains(gp.gains, alloc, gp.scheme)
    gamma_c = gamma_c_from_gains(gp.gains, alloc, gp.scheme)
    worst = 0.0
    for poly, label in zip(gp.constraints, gp.labels):
        kind, _, index = label.partition(":")
        if kind == "pair":
            expected = phi_prime / gamma_v[int(index)]
        elif kind == "cue":
            expected = gp.cue_threshold / gamma_c[int(index)]
        else:
            expected = gp.phi_floor / phi_prime
        worst = max(worst, abs(evaluate_posynomial(poly, values) - expected) / abs(expected))
    return {"result": worst <= rtol, "max_relative_error": worst}


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Optimality                                                             ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def check_epigraph_tightness(result: AllocationResult, rtol: float = 1e-6) -> dict[str, Any]:
    """
    !!! note "Summary"
        At an optimum some pair constraint is active, so the smallest `Gamma_V` equals `phi_prime`.
    """
    smallest = float(np.min(result.gamma_v))
    error = abs(smallest - result.phi_prime) / result.phi_prime
    return {"result": result.is_optimal and error <= rtol, "min_gamma_v": smallest, "relative_error": error}


@typechecked
def check_cue_thresholds(result: AllocationResult, threshold: float, rtol: float = 1e-8) -> dict[str, Any]:
    """
    !!! note "Summary"
        Every CUE of an optimal allocation meets its SINR target.
    """
    worst = float(np.min(result.gamma_c / threshold)) if result.gamma_c.size else math.inf
    return {"result": result.is_optimal and worst >= 1.0 - rtol, "min_ratio": worst}


@typechecked
def check_kkt(gp: GPInstance, result: AllocationResult, tol: float = 1e-6) -> dict[str, Any]:
    """
    !!! note "Summary"
        Optimality conditions of the final barrier subproblem at the returned point.

    ???+ abstract "Details"
        - Primal: every constraint of the log-space problem is strictly satisfied.
        - Complementarity: the gap bound `m * mu` left by the barrier weight is below `tol`.
        - Stationarity: half the squared Newton decrement of the centring step is below `tol`; it measures the barrier gradient in the local Hessian norm.
    """
    problem = _log_problem(gp)
    z = np.log(instance_from_allocation(gp, result.alloc, result.phi_prime))
    primal = float(np.max(problem.constraint_values(z)))
    residuals = {"primal": primal, "complementarity": result.gap, "stationarity": result.decrement / 2.0}
    passed = result.is_optimal and primal <= 0 and result.gap <= tol and residuals["stationarity"] <= tol
    return {"result": bool(passed), "residuals": residuals}


@typechecked
def check_recovered_bits(
    result: AllocationResult, frame: FrameDesign, epsilon: float, rtol: float = 1e-6
) -> dict[str, Any]:
    """
    !!! note "Summary"
        `recover_phi()` matches the smallest per-pair information bits at the returned allocation.
    """
    recovered = recover_phi(result, frame)
    direct = float(np.min(info_bits(result.gamma_v, frame.blocklength, epsilon)))
    error = abs(recovered - direct) / max(abs(direct), 1.0)
    return {"result": error <= rtol, "recovered": recovered, "direct": direct, "relative_error": error}


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Independent solve paths                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _level_feasible(gp: GPInstance, x0: NDArray[np.float64], level: float, settings: BarrierSettings) -> bool:
    _, s = phase_one(gp, x0, settings, fixed_phi_prime=level)
    return s < 0


@typechecked
def bisect_phi(gp: GPInstance, rtol: float = 1e-4, max_doublings: int = 80) -> float:
    """
    !!! note "Summary"
        Largest feasible `phi_prime` by bisection in log scale, each level tested by a phase-I problem with `phi_prime` pinned.

    Returns:
        (float):
            The level, or `nan` when even the floor is infeasible.
    """
    settings = BarrierSettings(tol=1e-10)
    x0 = _initial_point(gp)
    lo = gp.phi_floor * (1.0 + 1e-9)
    if not _level_feasible(gp, x0, lo, settings):
        return math.nan
    hi = 2.0 * lo
    for _ in range(max_doublings):
        if not _level_feasible(gp, x0, hi, settings):
            break
        lo, hi = hi, 2.0 * hi
    while hi / lo - 1.0 > rtol:
        mid = math.sqrt(lo * hi)
        if _level_feasible(gp, x0, mid, settings):
            lo = mid
        else:
            hi = mid
    return lo


def _grid_objective(
    gp: GPInstance,
    pv: NDArray[np.float64],
    qv: NDArray[np.float64],
    pc: NDArray[np.float64],
    qc: NDArray[np.float64],
) -> NDArray[np.float64]:
    """Smallest `Gamma_V` per grid row, `-inf` where a CUE target or the floor fails."""
    g = gp.gains
    w, c, v2b, c2b = g.v2v**2, g.c2v**2, g.v2b**2, g.c2b**2
    own = np.diag(w)
    tau = gp.scheme.pilot_length
    pq = pv * qv
    cq = pc * qc
    phi = pq @ w.T - pq * own + cq @ c.T
    den_c = (pq @ v2b)[:, None] + np.zeros_like(cq)
    if gp.scheme.kind is PilotKind.SP:
        phi = phi + (pv**2) @ w.T + (pc**2) @ c.T
        den_c = den_c + ((pv**2) @ v2b)[:, None] + ((pc**2) @ c2b)[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        gamma_v = np.min(tau * pq * own / phi, axis=1)
        gamma_c = tau * cq * c2b / den_c
    feasible = gamma_v >= gp.phi_floor
    if cq.shape[1]:
        feasible &= np.all(gamma_c >= gp.cue_threshold, axis=1)
    return np.where(feasible, gamma_v, -np.inf)


@typechecked
def grid_search_phi(gp: GPInstance, points: int = 20, decades: float = 4.0, cap: int = 500_000) -> float:
    """
    !!! note "Summary"
        Best smallest `Gamma_V` over a log grid of powers spanning `decades` decades below each upper bound.

    ???+ abstract "Details"
        Under RP the SINRs depend on the powers only through the products `p q`, so the grid runs over one product per transmitter with `points` values each. Under SP every power is a grid axis and the per-axis count is lowered until the grid has at most `cap` rows.

    Returns:
        (float):
            The best grid value, or `nan` when no grid point is feasible.
    """
    p, k = gp.num_pairs, gp.num_cues
    pv_max, pc_max = float(gp.upper[0]), float(gp.upper[2 * p]) if k else 1.0
    if gp.scheme.kind is PilotKind.RP:
        axes = [np.logspace(-2 * decades, 0, points) * pv_max**2] * p + [np.logspace(-2 * decades, 0, points) * pc_max**2] * k
        mesh = np.stack([m.reshape(-1) for m in np.meshgrid(*axes, indexing="ij")], axis=1)
        root = np.sqrt(mesh)
        values = _grid_objective(gp, root[:, :p], root[:, :p], root[:, p:], root[:, p:])
    else:
        n = 2 * p + 2 * k
        per_axis = points
        while per_axis > 2 and per_axis**n > cap:
            per_axis -= 1
        v_axis = np.logspace(-decades, 0, per_axis) * pv_max
        c_axis = np.logspace(-decades, 0, per_axis) * pc_max
        mesh = np.stack(
            [m.reshape(-1) for m in np.meshgrid(*([v_axis] * (2 * p) + [c_axis] * (2 * k)), indexing="ij")], axis=1
        )
        values = _grid_objective(
            gp, mesh[:, :p], mesh[:, p : 2 * p], mesh[:, 2 * p : 2 * p + k], mesh[:, 2 * p + k :]
        )
    best = float(np.max(values))
    return best if math.isfinite(best) else math.nan


@typechecked
def check_bisection_oracle(gp: GPInstance, result: AllocationResult, rtol: float = 0.005) -> dict[str, Any]:
    """
    !!! note "Summary"
        The barrier optimum and the bisection optimum agree within `rtol`.
    """
    oracle = bisect_phi(gp)
    if math.isnan(oracle):
        return {"result": not result.is_optimal, "oracle": oracle, "solver": result.phi_prime}
    error = abs(result.phi_prime - oracle) / oracle
    return {"result": result.is_optimal and error <= rtol, "oracle": oracle, "solver": result.phi_prime, "relative_error": error}


@typechecked
def check_grid_oracle(
    gp: GPInstance, result: AllocationResult, rtol: float = 0.02, points: int = 20, cap: Optional[int] = None
) -> dict[str, Any]:
    """
    !!! note "Summary"
        The solver is never worse than the best grid point by more than `rtol`.

    ???+ abstract "Details"
        Grid points are feasible points of the same program, so the comparison is one-sided: a coarse grid cannot certify the optimum from below.
    """
    oracle = grid_search_phi(gp, points=points) if cap is None else grid_search_phi(gp, points=points, cap=cap)
    if math.isnan(oracle):
        return {"result": True, "oracle": oracle, "solver": result.phi_prime}
    passed = result.is_optimal and result.phi_prime >= (1.0 - rtol) * oracle
    return {"result": bool(passed), "oracle": oracle, "solver": result.phi_prime}
