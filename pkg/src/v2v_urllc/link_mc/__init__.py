# ============================================================================ #
#                                                                              #
#     Title: Link Simulation Module                                            #
#     Purpose: Initialise the link simulation module by importing algorithms   #
#         and tests, and defining exports.                                     #
#                                                                              #
# ============================================================================ #


"""
!!! note "Summary"
    Antenna-level Monte Carlo of pilot assignment, LMMSE estimation and MRC, used to validate the asymptotic SINR expressions.
"""


# ## Local First Party Imports ----
from v2v_urllc.link_mc.algorithms import (
    ChannelDraw,
    ChannelEstimate,
    EmpiricalSINR,
    LinkDrawConfig,
    PilotAssignment,
    assign_pilots,
    combining_powers,
    complex_normal,
    draw_channels,
    empirical_sinr,
    lmmse_estimate,
    pilot_matrix,
)
from v2v_urllc.link_mc.tests import (
    check_closed_form,
    check_collision_rate,
    check_estimate_consistency,
    check_estimation_orthogonality,
    check_hardening,
    check_jensen_direction,
    check_mrc_slope,
    check_orthogonality,
    single_link_gains,
)


__all__: list[str] = [
    "ChannelDraw",
    "ChannelEstimate",
    "EmpiricalSINR",
    "LinkDrawConfig",
    "PilotAssignment",
    "assign_pilots",
    "combining_powers",
    "complex_normal",
    "draw_channels",
    "empirical_sinr",
    "lmmse_estimate",
    "pilot_matrix",
    "check_closed_form",
    "check_collision_rate",
    "check_estimate_consistency",
    "check_estimation_orthogonality",
    "check_hardening",
    "check_jensen_direction",
    "check_mrc_slope",
    "check_orthogonality",
    "single_link_gains",
]
