# ============================================================================ #
#                                                                              #
#     Title: Scheduler Module                                                  #
#     Purpose: Initialise the scheduler module by importing algorithms and     #
#         tests, and defining exports.                                         #
#                                                                              #
# ============================================================================ #


"""
!!! note "Summary"
    Semi-persistent scheduling driven by traffic reports.
"""


# ## Local First Party Imports ----
from v2v_urllc.scheduler.algorithms import (
    SPEED_OF_LIGHT,
    ScheduleAction,
    ScheduleContext,
    ScheduleState,
    TrafficReport,
    coherence_time,
    initial_state,
    is_density_epoch,
    read_reports,
    run_schedule,
    step,
    velocity,
    write_trace,
)
from v2v_urllc.scheduler.tests import (
    check_determinism,
    check_reallocation_spacing,
    check_redesign_on_epochs,
)


__all__: list[str] = [
    "SPEED_OF_LIGHT",
    "ScheduleAction",
    "ScheduleContext",
    "ScheduleState",
    "TrafficReport",
    "coherence_time",
    "initial_state",
    "is_density_epoch",
    "read_reports",
    "run_schedule",
    "step",
    "velocity",
    "write_trace",
    "check_determinism",
    "check_reallocation_spacing",
    "check_redesign_on_epochs",
]
