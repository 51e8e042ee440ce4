# ============================================================================ #
#                                                                              #
#     Title: Finite-Blocklength Module                                         #
#     Purpose: Initialise the finite-blocklength module by importing           #
#         algorithms and tests, and defining exports.                          #
#                                                                              #
# ============================================================================ #


"""
!!! note "Summary"
    Short-packet achievable rates under the normal approximation.
"""


# ## Local First Party Imports ----
from v2v_urllc.fbl.algorithms import (
    LOG2E,
    RateQuery,
    db_to_linear,
    dispersion,
    info_bits,
    info_bits_coefficient,
    linear_to_db,
    q_function,
    q_inv,
    rate,
    sinr_for_info_bits,
)
from v2v_urllc.fbl.tests import check_info_bits_shape, check_q_inv_round_trip


__all__: list[str] = [
    "LOG2E",
    "RateQuery",
    "db_to_linear",
    "dispersion",
    "info_bits",
    "info_bits_coefficient",
    "linear_to_db",
    "q_function",
    "q_inv",
    "rate",
    "sinr_for_info_bits",
    "check_info_bits_shape",
    "check_q_inv_round_trip",
]
