# ============================================================================ #
#                                                                              #
#     Title: Path-Loss Module                                                  #
#     Purpose: Initialise the path-loss module by importing algorithms and     #
#         tests, and defining exports.                                         #
#                                                                              #
# ============================================================================ #


"""
!!! note "Summary"
    Large-scale fading and the table of expected distance moments used by every worst-case bound.
"""


# ## Local First Party Imports ----
from v2v_urllc.pathloss.algorithms import (
    OMEGA_ENTRIES,
    FadingModel,
    LinkGains,
    OmegaTable,
    beta,
    link_gains,
    load_or_compute_omega,
    omega_montecarlo,
    omega_quadrature,
    same_road_negative_moment,
)
from v2v_urllc.pathloss.tests import (
    check_alpha_monotonicity,
    check_jensen,
    check_omega_against_montecarlo,
    check_protection_divergence,
    check_standard_error_scaling,
)


__all__: list[str] = [
    "OMEGA_ENTRIES",
    "FadingModel",
    "LinkGains",
    "OmegaTable",
    "beta",
    "link_gains",
    "load_or_compute_omega",
    "omega_montecarlo",
    "omega_quadrature",
    "same_road_negative_moment",
    "check_alpha_monotonicity",
    "check_jensen",
    "check_omega_against_montecarlo",
    "check_protection_divergence",
    "check_standard_error_scaling",
]
