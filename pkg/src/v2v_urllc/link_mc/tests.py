# ============================================================================ #
#                                                                              #
#     Title: Link-Level Checks                                                 #
#     Purpose: Statistical checks of the link simulation and of the            #
#         asymptotic SINR expressions against it.                              #
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
    Checks built on the link simulation: pilot collision rates, channel hardening and asymptotic orthogonality, LMMSE properties, the MRC array gain and the agreement between measured and closed-form SINRs.

???+ abstract "Details"
    Every check returns a dictionary with a boolean `"result"` and the measured quantities, ready to be written into a validation report.
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
from dataclasses import replace
from typing import Any, Optional, Sequence

# ## Python Third Party Imports ----
import numpy as np
from numpy.random import Generator as RandomGenerator
from scipy.stats import linregress
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.link_mc.algorithms import (
    LinkDrawConfig,
    PilotAssignment,
    assign_pilots,
    complex_normal,
    draw_channels,
    empirical_sinr,
    lmmse_estimate,
)
from v2v_urllc.pathloss.algorithms import LinkGains
from v2v_urllc.sinr_bounds.algorithms import (
    PowerAllocation,
    gamma_c_from_gains,
    gamma_v_from_gains,
)


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "check_collision_rate",
    "check_hardening",
    "check_orthogonality",
    "check_estimate_consistency",
    "check_estimation_orthogonality",
    "check_mrc_slope",
    "check_closed_form",
    "check_jensen_direction",
    "single_link_gains",
]


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Pilots and channels                                                    ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def check_collision_rate(
    num_pilots: int, rng: RandomGenerator, num_draws: int = 100_000, rtol: float = 0.02
) -> dict[str, Any]:
    """
    !!! note "Summary"
        A V2V transmitter lands on a given pilot, and two transmitters collide, each with frequency `1 / tau`.
    """
    on_zero = 0
    pair_hits = 0
    for _ in range(num_draws):
        pilots = assign_pilots(2, 0, num_pilots, rng).pilots_v
        on_zero += int(pilots[0] == 0)
        pair_hits += int(pilots[0] == pilots[1])
    target = 1.0 / num_pilots
    rates = {"fixed_pilot": on_zero / num_draws, "pair": pair_hits / num_draws}
    errors = {key: abs(value - target) / target for key, value in rates.items()}
    return {"result": all(e <= rtol for e in errors.values()), "rates": rates, "target": target, "errors": errors}


@typechecked
def check_hardening(
    rng: RandomGenerator,
    antenna_counts: Sequence[int] = (16, 64, 256),
    num_draws: int = 4000,
    slope_tol: float = 0.1,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        The variance of `g^H g / (N beta)` falls as `1 / N`: its log-log slope against `N` is `-1`.
    """
    variances = []
    for n in antenna_counts:
        h = complex_normal(rng, (num_draws, n))
        variances.append(float(np.var(np.sum(np.abs(h) ** 2, axis=1) / n, ddof=1)))
    fit = linregress(np.log(antenna_counts), np.log(variances))
    return {"result": abs(fit.slope + 1.0) <= slope_tol, "slope": float(fit.slope), "variances": variances}


@typechecked
def check_orthogonality(
    rng: RandomGenerator, num_antennas: int = 256, num_draws: int = 1000, bound: float = 0.15
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Independent channels are asymptotically orthogonal: the mean of `|g_1^H g_2| / (N sqrt(beta_1 beta_2))` is below `bound`.
    """
    g1 = complex_normal(rng, (num_draws, num_antennas))
    g2 = complex_normal(rng, (num_draws, num_antennas))
    value = float(np.mean(np.abs(np.sum(g1.conj() * g2, axis=1))) / num_antennas)
    return {"result": value < bound, "mean_normalised_inner_product": value, "bound": bound}


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Estimation                                                             ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def single_link_gains(beta_own: float, beta_bs: float = 1e-9) -> LinkGains:
    """Gains of a drop holding one V2V pair and no CUE."""
    return LinkGains(
        v2v=np.array([[beta_own]]),
        c2v=np.zeros((1, 0)),
        v2b=np.array([beta_bs]),
        c2b=np.zeros(0),
    )


@typechecked
def check_estimate_consistency(
    config: LinkDrawConfig, rng: RandomGenerator, snr: float = 1e6, rtol: float = 1e-2
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Without interference and at pilot SNR `q tau beta / sigma^2 = snr`, the estimate recovers the channel.
    """
    rp = replace(config, scheme="RP", pilot_length=max(config.pilot_length, 1))
    beta = 1e-6
    q = snr * rp.noise_power / (rp.num_pilots * beta)
    alloc = PowerAllocation(p_v=np.array([q]), q_v=np.array([q]), p_c=np.zeros(0), q_c=np.zeros(0))
    draw = draw_channels(single_link_gains(beta), rp, rng)
    estimate = lmmse_estimate(draw, alloc, rp, rng)
    truth = draw.v2v[0, 0]
    error = float(np.linalg.norm(estimate.v2v[0] - truth) / np.linalg.norm(truth))
    return {"result": error < rtol, "relative_error": error, "omega": float(estimate.omega_v[0])}


@typechecked
def check_estimation_orthogonality(
    gains: LinkGains,
    alloc: PowerAllocation,
    config: LinkDrawConfig,
    rng: RandomGenerator,
    pilots: PilotAssignment,
    num_draws: int = 10_000,
    n_sigma: float = 3.0,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        The LMMSE error is uncorrelated with the estimate: the sample mean of `g_hat^H (g - g_hat)` is zero within `n_sigma` standard errors, real and imaginary parts separately, for every pair and CUE.

    ???+ abstract "Details"
        The pilot assignment is held fixed, since the weights `omega` are conditioned on it.
    """
    p, k = gains.num_pairs, gains.num_cues
    values_v = np.zeros((num_draws, p), dtype=np.complex128)
    values_c = np.zeros((num_draws, k), dtype=np.complex128)
    omegas = []
    for i in range(num_draws):
        draw = draw_channels(gains, config, rng, pilots=pilots)
        estimate = lmmse_estimate(draw, alloc, config, rng)
        own = draw.v2v[np.arange(p), np.arange(p)]
        values_v[i] = np.sum(estimate.v2v.conj() * (own - estimate.v2v), axis=1)
        values_c[i] = np.sum(estimate.c2b.conj() * (draw.c2b - estimate.c2b), axis=1)
        omegas.append(np.concatenate([estimate.omega_v, estimate.omega_c]))
    worst = 0.0
    for values in (values_v, values_c):
        for part in (values.real, values.imag):
            if part.shape[1] == 0:
                continue
            se = part.std(axis=0, ddof=1) / math.sqrt(num_draws)
            worst = max(worst, float(np.max(np.abs(part.mean(axis=0)) / se)))
    omega = np.concatenate(omegas) if omegas else np.zeros(0)
    omega_ok = bool(np.all((omega > 0) & (omega <= 1)))
    return {"result": worst <= n_sigma and omega_ok, "max_standard_errors": worst, "omega_in_range": omega_ok}


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Combining                                                              ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def check_mrc_slope(
    config: LinkDrawConfig,
    rng: RandomGenerator,
    antenna_counts: Sequence[int] = (64, 128, 256),
    num_draws: int = 200,
    min_r_squared: float = 0.99,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        A single interference-free pair gains linearly in `N`: the measured post-MRC SNR against `N` fits a line with `R^2 > min_r_squared`.
    """
    beta = 1e-7
    power = 10.0 * config.noise_power / beta
    alloc = PowerAllocation(p_v=np.array([power]), q_v=np.array([power]), p_c=np.zeros(0), q_c=np.zeros(0))
    gains = single_link_gains(beta)
    snrs = []
    for n in antenna_counts:
        cfg = replace(config, num_rx_antennas=n, num_bs_antennas=max(n, config.num_bs_antennas))
        draws = [draw_channels(gains, cfg, rng) for _ in range(num_draws)]
        snrs.append(float(empirical_sinr(draws, alloc, cfg, rng).pooled_v[0]))
    fit = linregress(np.asarray(antenna_counts, dtype=np.float64), np.asarray(snrs))
    r_squared = float(fit.rvalue**2)
    return {"result": r_squared > min_r_squared and fit.slope > 0, "r_squared": r_squared, "snr": snrs}


@typechecked
def check_closed_form(
    gains: LinkGains,
    alloc: PowerAllocation,
    config: LinkDrawConfig,
    rng: RandomGenerator,
    pilots: PilotAssignment,
    num_draws: int = 50,
    rtol: float = 0.1,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        For a fixed drop and pilot assignment, the pooled measured SINR of every contaminated link is within `rtol` of its collision-conditioned closed form.

    ???+ abstract "Details"
        Links without any pilot collision have an unbounded asymptotic SINR and are skipped.
    """
    draws = [draw_channels(gains, config, rng, pilots=pilots) for _ in range(num_draws)]
    measured = empirical_sinr(draws, alloc, config, rng)
    pooled = np.concatenate([measured.pooled_v, measured.pooled_c])
    closed = np.concatenate([measured.closed_form_v[0], measured.closed_form_c[0]])
    mask = np.isfinite(closed)
    errors = np.abs(pooled[mask] - closed[mask]) / closed[mask]
    worst = float(errors.max()) if errors.size else 0.0
    return {
        "result": bool(errors.size) and worst <= rtol,
        "max_relative_error": worst,
        "links_compared": int(mask.sum()),
        "measured": pooled.tolist(),
        "closed_form": closed.tolist(),
    }


@typechecked
def check_jensen_direction(
    gains: LinkGains,
    alloc: PowerAllocation,
    config: LinkDrawConfig,
    rng: RandomGenerator,
    num_draws: int = 400,
    n_sigma: float = 3.0,
    pilots: Optional[PilotAssignment] = None,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Over random pilot assignments the measured SINR respects the direction of the collision-averaged bound.

    ???+ abstract "Details"
        - The mean of `1 / gamma` is at least `1 / Gamma`, up to `n_sigma` standard errors.
        - The mean of `log2(1 + gamma)` is at least `log2(1 + Gamma)`, so the finite-blocklength rate of the bound is a lower bound on the mean achieved rate.
    """
    draws = [draw_channels(gains, config, rng, pilots=pilots) for _ in range(num_draws)]
    measured = empirical_sinr(draws, alloc, config, rng)
    scheme = config.pilot_scheme
    bound = np.concatenate([gamma_v_from_gains(gains, alloc, scheme), gamma_c_from_gains(gains, alloc, scheme)])
    sinr = np.hstack([measured.sinr_v, measured.sinr_c])
    inverse = 1.0 / sinr
    se = inverse.std(axis=0, ddof=1) / math.sqrt(num_draws)
    inverse_ok = bool(np.all(inverse.mean(axis=0) + n_sigma * se >= 1.0 / bound))
    rate_ok = bool(np.all(np.mean(np.log2(1.0 + sinr), axis=0) >= np.log2(1.0 + bound)))
    return {
        "result": inverse_ok and rate_ok,
        "inverse_mean": inverse.mean(axis=0).tolist(),
        "inverse_bound": (1.0 / bound).tolist(),
        "inverse_direction": inverse_ok,
        "rate_direction": rate_ok,
    }
