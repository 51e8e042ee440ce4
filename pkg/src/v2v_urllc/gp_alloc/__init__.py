# ============================================================================ #
#                                                                              #
#     Title: Power Allocation Module                                           #
#     Purpose: Initialise the power allocation module by importing             #
#         algorithms and tests, and defining exports.                          #
#                                                                              #
# ============================================================================ #


"""
!!! note "Summary"
    Build and solve the per-drop max-min power allocation program, recover the delivered bits and check the solution against independent solve paths.
"""


# ## Local First Party Imports ----
from v2v_urllc.gp_alloc.algorithms import (
    AllocationResult,
    AllocationStatus,
    BarrierSettings,
    GPInstance,
    Posynomial,
    allocation_from_point,
    build_gp,
    evaluate_posynomial,
    gp_constraint_count,
    instance_from_allocation,
    phase_one,
    phi_from_phi_prime,
    recover_phi,
    solve_gp,
)
from v2v_urllc.gp_alloc.tests import (
    bisect_phi,
    check_bisection_oracle,
    check_constraint_consistency,
    check_cue_thresholds,
    check_epigraph_tightness,
    check_grid_oracle,
    check_kkt,
    check_recovered_bits,
    grid_search_phi,
)


__all__: list[str] = [
    "AllocationResult",
    "AllocationStatus",
    "BarrierSettings",
    "GPInstance",
    "Posynomial",
    "allocation_from_point",
    "build_gp",
    "evaluate_posynomial",
    "gp_constraint_count",
    "instance_from_allocation",
    "phase_one",
    "phi_from_phi_prime",
    "recover_phi",
    "solve_gp",
    "bisect_phi",
    "check_bisection_oracle",
    "check_constraint_consistency",
    "check_cue_thresholds",
    "check_epigraph_tightness",
    "check_grid_oracle",
    "check_kkt",
    "check_recovered_bits",
    "grid_search_phi",
]
