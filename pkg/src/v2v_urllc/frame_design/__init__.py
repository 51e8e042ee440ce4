# ============================================================================ #
#                                                                              #
#     Title: Frame Design Module                                               #
#     Purpose: Initialise the frame design module by importing algorithms      #
#         and tests, and defining exports.                                     #
#                                                                              #
# ============================================================================ #


"""
!!! note "Summary"
    Optimal frame size and pilot fraction, and the latency-bandwidth region they imply.
"""


# ## Local First Party Imports ----
from v2v_urllc.frame_design.algorithms import (
    FeasibleRegion,
    FrameDesign,
    SurplusRP,
    SurplusSP,
    algorithm_complexity,
    best_eta,
    cue_floor_sp,
    cue_product_rp,
    f_rp,
    f_sp,
    feasible_region,
    merging_coefficients,
    solve_frame_rp,
    solve_frame_rp_at,
    solve_frame_sp,
    solve_zeta_rp,
    solve_zeta_sp,
)
from v2v_urllc.frame_design.tests import (
    check_convergence,
    check_derivatives,
    check_rp_grid,
    check_sp_convexity,
    check_sp_grid,
    check_unique_eta_maximum,
)


__all__: list[str] = [
    "FeasibleRegion",
    "FrameDesign",
    "SurplusRP",
    "SurplusSP",
    "algorithm_complexity",
    "best_eta",
    "cue_floor_sp",
    "cue_product_rp",
    "f_rp",
    "f_sp",
    "feasible_region",
    "merging_coefficients",
    "solve_frame_rp",
    "solve_frame_rp_at",
    "solve_frame_sp",
    "solve_zeta_rp",
    "solve_zeta_sp",
    "check_convergence",
    "check_derivatives",
    "check_rp_grid",
    "check_sp_convexity",
    "check_unique_eta_maximum",
    "check_sp_grid",
]
