# ============================================================================ #
#                                                                              #
#     Title: Path-Loss Tests                                                   #
#     Purpose: Oracles for the Omega table: Monte Carlo agreement, moment      #
#         inequalities, monotonicity and protection-region behaviour.          #
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
    Check functions that referee `omega_quadrature()`. Every function returns a dictionary with a boolean `"result"` and the quantities it was decided on.
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
from typing import Any, Optional, Sequence

# ## Python Third Party Imports ----
import numpy as np
from numpy.random import Generator as RandomGenerator
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.pathloss.algorithms import (
    OMEGA_ENTRIES,
    OmegaTable,
    omega_montecarlo,
    omega_quadrature,
    same_road_negative_moment,
)
from v2v_urllc.utils.config import ScenarioConfig
from v2v_urllc.utils.errors import relative_error


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "check_omega_against_montecarlo",
    "check_standard_error_scaling",
    "check_jensen",
    "check_alpha_monotonicity",
    "check_protection_divergence",
]


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Tests                                                                  ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def check_omega_against_montecarlo(
    config: ScenarioConfig,
    rng: RandomGenerator,
    n: int = 10_000_000,
    rtol: float = 0.01,
    n_sigma: float = 3.0,
    table: Optional[OmegaTable] = None,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Cross-validates a quadrature table against the Monte Carlo estimator.

    ???+ abstract "Details"
        An entry passes when it is within `rtol` of the Monte Carlo mean or within `n_sigma` standard errors of it. Pass `table` to referee a table that did not come from `omega_quadrature()`, for example to confirm that a corrupted entry is caught.

    Returns:
        (dict[str, Any]):
            - `result` (bool): `True` when every entry passes.
            - `errors` (dict[str, float]): Relative error per entry.
            - `sigmas` (dict[str, float]): Distance in standard errors per entry.
            - `failed` (list[str]): Entries that failed.
            - `tolerance` (float): `rtol`.
    """
    reference = omega_quadrature(config) if table is None else table
    estimate, standard_errors = omega_montecarlo(config, n, rng)
    errors: dict[str, float] = {}
    sigmas: dict[str, float] = {}
    failed: list[str] = []
    for key in OMEGA_ENTRIES:
        value, mc = getattr(reference, key), getattr(estimate, key)
        errors[key] = relative_error(value, mc)
        se = standard_errors[key]
        sigmas[key] = abs(value - mc) / se if se > 0 else (0.0 if value == mc else float("inf"))
        if errors[key] > rtol and sigmas[key] > n_sigma:
            failed.append(key)
    return {"result": not failed, "errors": errors, "sigmas": sigmas, "failed": failed, "tolerance": rtol}


@typechecked
def check_standard_error_scaling(
    config: ScenarioConfig,
    rng: RandomGenerator,
    sizes: Sequence[int] = (10_000, 100_000, 1_000_000),
    entry: str = "c2b_p",
    slope_tolerance: float = 0.15,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Log-log slope of the Monte Carlo standard error against sample size, expected to be `-1/2`.
    """
    errors = [omega_montecarlo(config, n, rng)[1][entry] for n in sizes]
    slope = float(np.polyfit(np.log(np.asarray(sizes, dtype=float)), np.log(errors), 1)[0])
    return {"result": abs(slope + 0.5) <= slope_tolerance, "slope": slope, "standard_errors": errors}


@typechecked
def check_jensen(table: OmegaTable) -> dict[str, Any]:
    """
    !!! note "Summary"
        Moment inequality `E[x ** -1] * E[x] >= 1` for the CUE-to-BS moments, with `x = d ** (2 alpha)`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Consistent table"}
        >>> from v2v_urllc.pathloss.algorithms import OmegaTable
        >>> from v2v_urllc.pathloss.tests import check_jensen
        >>> table = OmegaTable(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, c2b_n=2e-12, c2b_p=1e12)
        >>> check_jensen(table)["result"]
        True

        ```
    """
    product = table.c2b_n * table.c2b_p
    return {"result": product >= 1.0, "product": product}


@typechecked
def check_alpha_monotonicity(config: ScenarioConfig, factor: float = 2.0) -> dict[str, Any]:
    """
    !!! note "Summary"
        Raising the path-loss exponent must shrink the negative moments and grow the positive ones.
    """
    low = omega_quadrature(config)
    high = omega_quadrature(config.with_updates(pathloss_exp=config.pathloss_exp * factor))
    negative = ("v2v_n1", "v2v_n2", "v2v_n3", "c2v_n", "v2b_n", "c2b_n")
    positive = ("v2v_p1", "c2b_p")
    decreasing = {key: getattr(high, key) < getattr(low, key) for key in negative}
    increasing = {key: getattr(high, key) > getattr(low, key) for key in positive}
    return {
        "result": all(decreasing.values()) and all(increasing.values()),
        "decreasing": decreasing,
        "increasing": increasing,
    }


@typechecked
def check_protection_divergence(
    config: ScenarioConfig,
    halvings: int = 4,
    bound: Optional[float] = None,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        The same-road negative moment must grow without bound as the protection square shrinks.

    ???+ abstract "Details"
        `r_P` is halved `halvings` times. The check passes when the sequence of `v2v_n1` values is strictly increasing and the last one exceeds `bound` (by default 100 times the first value).
    """
    values: list[float] = []
    r_p = config.protection_half_length
    for _ in range(halvings + 1):
        values.append(same_road_negative_moment(config.with_updates(protection_half_length=r_p)))
        r_p /= 2
    limit = 100 * values[0] if bound is None else bound
    increasing = all(b > a for a, b in zip(values, values[1:]))
    return {"result": increasing and values[-1] > limit, "values": values, "bound": limit}
