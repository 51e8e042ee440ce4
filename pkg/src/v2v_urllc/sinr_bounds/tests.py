# ============================================================================ #
#                                                                              #
#     Title: SINR Bound Tests                                                  #
#     Purpose: Independent oracles for the instance and worst-case bounds.     #
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
    Oracles that re-derive the bounds of `v2v_urllc.sinr_bounds.algorithms` by other means: term-by-term loops, Monte Carlo over pilot assignments, power scaling and the closed-form RP/SP relations.
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
from typing import Any, Sequence

# ## Python Third Party Imports ----
import numpy as np
from numpy.random import Generator as RandomGenerator
from numpy.typing import NDArray
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.pathloss.algorithms import LinkGains, OmegaTable
from v2v_urllc.sinr_bounds.algorithms import (
    PilotKind,
    PilotScheme,
    PowerAllocation,
    chi_conditional_sinr_c,
    chi_conditional_sinr_v,
    gamma_c_from_gains,
    gamma_c_worstcase,
    gamma_v_from_gains,
    gamma_v_worstcase,
    interference_sum,
    v2b_interference_sum,
)
from v2v_urllc.utils.config import ScenarioConfig
from v2v_urllc.utils.errors import relative_error


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "resum_gamma_v",
    "resum_gamma_c",
    "check_instance_resummation",
    "check_jensen_bound",
    "check_scale_covariance",
    "check_rp_sp_relation",
    "check_cue_crossover",
]


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Re-summation                                                           ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def resum_gamma_v(gains: LinkGains, alloc: PowerAllocation, scheme: PilotScheme) -> list[float]:
    """Term-by-term loop over every interferer of every pair."""
    out: list[float] = []
    sp = scheme.kind is PilotKind.SP
    for r in range(gains.num_pairs):
        phi = 0.0
        for t in range(gains.num_pairs):
            b2 = gains.v2v[r, t] ** 2
            if t != r:
                phi += alloc.p_v[t] * alloc.q_v[t] * b2
            if sp:
                phi += alloc.p_v[t] ** 2 * b2
        for k in range(gains.num_cues):
            b2 = gains.c2v[r, k] ** 2
            phi += alloc.p_c[k] * alloc.q_c[k] * b2
            if sp:
                phi += alloc.p_c[k] ** 2 * b2
        num = scheme.pilot_length * alloc.p_v[r] * alloc.q_v[r] * gains.v2v[r, r] ** 2
        out.append(math.inf if phi == 0 else num / phi)
    return out


def resum_gamma_c(gains: LinkGains, alloc: PowerAllocation, scheme: PilotScheme) -> list[float]:
    out: list[float] = []
    sp = scheme.kind is PilotKind.SP
    for k in range(gains.num_cues):
        den = 0.0
        for t in range(gains.num_pairs):
            den += alloc.p_v[t] * alloc.q_v[t] * gains.v2b[t] ** 2
            if sp:
                den += alloc.p_v[t] ** 2 * gains.v2b[t] ** 2
        if sp:
            for other in range(gains.num_cues):
                den += alloc.p_c[other] ** 2 * gains.c2b[other] ** 2
        num = scheme.pilot_length * alloc.p_c[k] * alloc.q_c[k] * gains.c2b[k] ** 2
        out.append(math.inf if den == 0 else num / den)
    return out


def _max_rel(a: Sequence[float], b: Sequence[float]) -> float:
    worst = 0.0
    for x, y in zip(a, b):
        if math.isinf(x) or math.isinf(y):
            if x != y:
                return math.inf
            continue
        worst = max(worst, relative_error(float(x), float(y)))
    return worst


@typechecked
def check_instance_resummation(
    gains: LinkGains,
    alloc: PowerAllocation,
    scheme: PilotScheme,
    rtol: float = 1e-12,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Compare the vectorised instance bounds with `resum_gamma_v()` and `resum_gamma_c()`.
    """
    err_v = _max_rel(gamma_v_from_gains(gains, alloc, scheme).tolist(), resum_gamma_v(gains, alloc, scheme))
    err_c = _max_rel(gamma_c_from_gains(gains, alloc, scheme).tolist(), resum_gamma_c(gains, alloc, scheme))
    return {"result": err_v <= rtol and err_c <= rtol, "error_v": err_v, "error_c": err_c, "tolerance": rtol}


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Monte Carlo over pilots                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _draw_pilots(
    num_pairs: int, num_cues: int, num_pilots: int, rng: RandomGenerator
) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
    pilots_c = rng.permutation(num_pilots)[:num_cues].astype(np.int64)
    pilots_v = rng.integers(0, num_pilots, size=num_pairs).astype(np.int64)
    return pilots_v, pilots_c


@typechecked
def check_jensen_bound(
    gains: LinkGains,
    alloc: PowerAllocation,
    scheme: PilotScheme,
    rng: RandomGenerator,
    num_assignments: int = 4000,
    n_sigma: float = 4.0,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Monte Carlo over random pilot assignments of one drop.

    ???+ abstract "Details"
        The collision-averaged bound satisfies `E[1 / gamma] = 1 / Gamma` exactly, so the empirical mean of `1 / gamma` must lie within `n_sigma` standard errors of `1 / Gamma`. The rate direction `mean(log2(1 + gamma)) >= log2(1 + 1 / mean(1 / gamma))` is checked on the same samples.

        The pilot length is rounded to an integer number of orthogonal sequences, at least `K`.
    """
    num_pilots = max(int(round(scheme.pilot_length)), gains.num_cues, 1)
    if scheme.kind is PilotKind.RP:
        exact = PilotScheme.regular(num_pilots, max(scheme.tau_sp, num_pilots + 1.0))
    else:
        exact = PilotScheme.superimposed(num_pilots)
    gamma_v = gamma_v_from_gains(gains, alloc, exact)
    gamma_c = gamma_c_from_gains(gains, alloc, exact)

    inv_v = np.zeros((num_assignments, gains.num_pairs))
    inv_c = np.zeros((num_assignments, gains.num_cues))
    with np.errstate(divide="ignore"):
        for n in range(num_assignments):
            pv, pc = _draw_pilots(gains.num_pairs, gains.num_cues, num_pilots, rng)
            inv_v[n] = 1.0 / chi_conditional_sinr_v(gains, alloc, exact, pv, pc)
            inv_c[n] = 1.0 / chi_conditional_sinr_c(gains, alloc, exact, pv, pc)

    def _accept(inv: NDArray[np.float64], gamma: NDArray[np.float64]) -> tuple[bool, bool]:
        if inv.shape[1] == 0:
            return True, True
        mean = inv.mean(axis=0)
        se = inv.std(axis=0, ddof=1) / math.sqrt(num_assignments)
        with np.errstate(divide="ignore"):
            target = 1.0 / gamma
            rate_emp = np.mean(np.log2(1.0 + 1.0 / inv), axis=0)
            rate_floor = np.log2(1.0 + 1.0 / mean)
        mean_ok = bool(np.all(np.abs(mean - target) <= n_sigma * se + 1e-12 * target))
        rate_ok = bool(np.all(rate_emp >= rate_floor * (1 - 1e-12)))
        return mean_ok, rate_ok

    v_mean, v_rate = _accept(inv_v, gamma_v)
    c_mean, c_rate = _accept(inv_c, gamma_c)
    return {
        "result": v_mean and v_rate and c_mean and c_rate,
        "inverse_mean_v": v_mean,
        "rate_direction_v": v_rate,
        "inverse_mean_c": c_mean,
        "rate_direction_c": c_rate,
        "num_pilots": num_pilots,
    }


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Scaling and closed-form relations                                      ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def check_scale_covariance(
    gains: LinkGains,
    alloc: PowerAllocation,
    scheme: PilotScheme,
    factor: float = 3.0,
    rtol: float = 1e-12,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Scaling every power by `factor` leaves the RP bounds unchanged, since every term is a product of two powers. Under SP the squared data terms scale the same way, so the bound is also invariant; the check reports the largest relative change.
    """
    before = gamma_v_from_gains(gains, alloc, scheme)
    after = gamma_v_from_gains(gains, alloc.scaled(factor), scheme)
    err = _max_rel(after.tolist(), before.tolist())
    return {"result": err <= rtol, "error": err, "tolerance": rtol}


@typechecked
def check_rp_sp_relation(config: ScenarioConfig, omega: OmegaTable, zeta: float, tolerance: float = 0.01) -> dict[str, Any]:
    """
    !!! note "Summary"
        At `tau_rp = tau_sp / 2` the RP and SP worst-case V2V bounds differ by exactly `1 / (1 + D)` relative to the RP value; the check passes when that is below `tolerance`.
    """
    rp = gamma_v_worstcase(config, omega, "RP", 0.5, zeta)
    sp = gamma_v_worstcase(config, omega, "SP", 0.0, zeta)
    d = interference_sum(config, omega)
    rel = (rp - sp) / rp
    expected = 1.0 / (1.0 + d)
    exact = bool(np.allclose(rel, expected, rtol=1e-10, atol=0.0))
    worst = float(np.max(rel))
    return {"result": exact and worst < tolerance, "relative_difference": worst, "formula_matches": exact, "tolerance": tolerance}


@typechecked
def check_cue_crossover(
    config: ScenarioConfig,
    omega: OmegaTable,
    zeta: float,
    ratios: Sequence[float] = tuple(np.linspace(0.01, 0.99, 99)),
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Check that `Gamma_C^RP <= Gamma_C^SP` exactly when `eta <= A / (2 (A + B))` across `ratios`.
    """
    a = v2b_interference_sum(config, omega)
    b = config.num_cues * config.power_ratio**2 * omega.c2b_n * omega.c2b_p
    threshold = a / (2.0 * (a + b))
    mismatches: list[float] = []
    for eta in ratios:
        rp = gamma_c_worstcase(config, omega, "RP", float(eta), zeta)
        sp = gamma_c_worstcase(config, omega, "SP", 0.0, zeta)
        if abs(eta - threshold) < 1e-12:
            continue
        if (rp <= sp) != (eta <= threshold):
            mismatches.append(float(eta))
    return {"result": not mismatches, "threshold": threshold, "mismatches": mismatches}
