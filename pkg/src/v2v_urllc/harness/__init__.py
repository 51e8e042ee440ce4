# ============================================================================ #
#                                                                              #
#     Title: Harness Module                                                    #
#     Purpose: Initialise the harness module by importing experiments and      #
#         validation suites, and defining exports.                             #
#                                                                              #
# ============================================================================ #


"""
!!! note "Summary"
    Seeded experiment runs, self-check suites and the `v2v-urllc` command line.
"""


# ## Local First Party Imports ----
from v2v_urllc.harness.experiments import (
    COLUMN_UNITS,
    ExperimentKind,
    ExperimentResult,
    ExperimentSpec,
    design_frames,
    run_experiment,
    synthetic_reports,
    truncate_topology,
)
from v2v_urllc.harness.validation import SUITES, ValidationContext, run_suite, validate


__all__: list[str] = [
    "COLUMN_UNITS",
    "ExperimentKind",
    "ExperimentResult",
    "ExperimentSpec",
    "SUITES",
    "ValidationContext",
    "design_frames",
    "run_experiment",
    "run_suite",
    "synthetic_reports",
    "truncate_topology",
    "validate",
]
