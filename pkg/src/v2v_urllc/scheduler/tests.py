# ============================================================================ #
#                                                                              #
#     Title: Scheduler Checks                                                  #
#     Purpose: Properties of an action trace.                                  #
#                                                                              #
# ============================================================================ #


"""
!!! note "Summary"
    Checks on a scheduler trace: spacing of reallocations, frame redesigns confined to density epochs, and determinism.
"""


# ## Python StdLib Imports ----
import math
from typing import Any, Sequence

# ## Python Third Party Imports ----
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.scheduler.algorithms import (
    ScheduleAction,
    ScheduleContext,
    TrafficReport,
    run_schedule,
)


__all__: list[str] = ["check_reallocation_spacing", "check_redesign_on_epochs", "check_determinism"]


@typechecked
def check_reallocation_spacing(rows: Sequence[dict[str, Any]], allocation_latency: float = 0.0) -> dict[str, Any]:
    """
    !!! note "Summary"
        Between consecutive `ReallocatePower` actions the elapsed time, less the allocation latency, exceeds the coherence time at the earlier one.
    """
    reallocations = [row for row in rows if row["action"] == ScheduleAction.REALLOCATE_POWER.value]
    violations = [
        (earlier["t"], later["t"])
        for earlier, later in zip(reallocations, reallocations[1:])
        if not later["t"] - earlier["t"] - allocation_latency > earlier["T_C"]
    ]
    return {"result": not violations, "reallocations": len(reallocations), "violations": violations}


@typechecked
def check_redesign_on_epochs(rows: Sequence[dict[str, Any]]) -> dict[str, Any]:
    """
    !!! note "Summary"
        Every `RunAlgorithm1` is immediately followed by `BroadcastPilotAllocation` at the same time, and the frame size only changes at those times.
    """
    ok = True
    redesign_times = set()
    for index, row in enumerate(rows):
        if row["action"] == ScheduleAction.RUN_FRAME_DESIGN.value:
            redesign_times.add(row["t"])
            following = rows[index + 1] if index + 1 < len(rows) else None
            ok &= following is not None and following["action"] == ScheduleAction.BROADCAST_PILOTS.value
            ok &= following is not None and following["t"] == row["t"]
    previous = math.nan
    for row in rows:
        zeta = row["zeta"]
        changed = not (math.isnan(zeta) and math.isnan(previous)) and zeta != previous
        if changed:
            ok &= row["t"] in redesign_times
        previous = zeta
    return {"result": bool(ok), "redesigns": len(redesign_times)}


@typechecked
def check_determinism(reports: Sequence[TrafficReport], context: ScheduleContext) -> dict[str, Any]:
    """
    !!! note "Summary"
        Two runs over the same report stream give identical traces.
    """
    _, first = run_schedule(reports, context)
    _, second = run_schedule(reports, context)
    return {"result": first == second, "rows": len(first)}
