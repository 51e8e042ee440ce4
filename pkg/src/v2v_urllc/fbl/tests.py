# ============================================================================ #
#                                                                              #
#     Title: Finite-Blocklength Tests                                          #
#     Purpose: Consistency checks for the Gaussian tail inverse and the        #
#         information-bits function.                                          #
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
    Checks on `q_inv()` and `info_bits()`. Each returns a dictionary with a boolean `"result"`.
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
from typing import Any, Sequence

# ## Python Third Party Imports ----
import numpy as np
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.fbl.algorithms import info_bits, q_function, q_inv


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = ["check_q_inv_round_trip", "check_info_bits_shape"]


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Tests                                                                  ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def check_q_inv_round_trip(
    epsilons: Sequence[float] = (1e-9, 1e-7, 1e-5, 1e-3, 0.1, 0.5, 0.9),
    rtol: float = 1e-10,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Check `Q(Qinv(epsilon)) == epsilon` to relative accuracy `rtol` across `epsilons`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Default grid"}
        >>> from v2v_urllc.fbl.tests import check_q_inv_round_trip
        >>> check_q_inv_round_trip()["result"]
        True

        ```
    """
    errors: dict[float, float] = {}
    for eps in epsilons:
        back = q_function(q_inv(eps))
        errors[eps] = abs(back - eps) / eps
    return {"result": all(err <= rtol for err in errors.values()), "errors": errors}


@typechecked
def check_info_bits_shape(blocklength: float = 166.0, epsilon: float = 1e-5) -> dict[str, Any]:
    """
    !!! note "Summary"
        Check that `info_bits()` is negative at zero SINR, increasing and concave in the SINR, and crosses zero once.
    """
    grid = np.logspace(-3, 4, 400)
    values = info_bits(grid, blocklength, epsilon)
    diffs = np.diff(values) / np.diff(grid)
    increasing = bool(np.all(diffs > 0))
    concave = bool(np.all(np.diff(diffs) <= 1e-12))
    crossings = int(np.count_nonzero(np.diff(np.sign(values)) != 0))
    negative_at_zero = info_bits(0.0, blocklength, epsilon) < 0
    return {
        "result": increasing and concave and negative_at_zero and crossings == 1,
        "increasing": increasing,
        "concave": concave,
        "crossings": crossings,
    }
