# ============================================================================ #
#                                                                              #
#     Title: SINR Bounds Module                                                #
#     Purpose: Initialise the SINR bounds module by importing algorithms and   #
#         tests, and defining exports.                                         #
#                                                                              #
# ============================================================================ #


"""
!!! note "Summary"
    Lower bounds on V2V and CUE SINR for regular and superimposed pilots.
"""


# ## Local First Party Imports ----
from v2v_urllc.sinr_bounds.algorithms import (
    PilotKind,
    PilotScheme,
    PowerAllocation,
    chi_conditional_sinr_c,
    chi_conditional_sinr_v,
    equal_power_allocation,
    gamma_c_from_gains,
    gamma_c_instance,
    gamma_c_worstcase,
    gamma_v_from_gains,
    gamma_v_instance,
    gamma_v_worstcase,
    interference_sum,
    power_bounds,
    v2b_interference_sum,
)
from v2v_urllc.sinr_bounds.tests import (
    check_cue_crossover,
    check_instance_resummation,
    check_jensen_bound,
    check_rp_sp_relation,
    check_scale_covariance,
    resum_gamma_c,
    resum_gamma_v,
)


__all__: list[str] = [
    "PilotKind",
    "PilotScheme",
    "PowerAllocation",
    "chi_conditional_sinr_c",
    "chi_conditional_sinr_v",
    "equal_power_allocation",
    "gamma_c_from_gains",
    "gamma_c_instance",
    "gamma_c_worstcase",
    "gamma_v_from_gains",
    "gamma_v_instance",
    "gamma_v_worstcase",
    "interference_sum",
    "power_bounds",
    "v2b_interference_sum",
    "check_cue_crossover",
    "check_instance_resummation",
    "check_jensen_bound",
    "check_rp_sp_relation",
    "check_scale_covariance",
    "resum_gamma_c",
    "resum_gamma_v",
]
