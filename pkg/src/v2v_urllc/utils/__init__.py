# ============================================================================ #
#                                                                              #
#     Title: Utilities Module                                                  #
#     Purpose: Shared configuration, error and random-number helpers.          #
#                                                                              #
# ============================================================================ #


"""
!!! note "Summary"
    Helpers shared by every sub-package: scenario configuration, error messages and tolerance checks, and seeded random generators.
"""


# ## Local First Party Imports ----
from v2v_urllc.utils.config import (
    GEOMETRY_FIELDS,
    ScenarioConfig,
    ScheduleConfig,
    config_hash,
    load_config,
    merge_config,
    save_config,
)
from v2v_urllc.utils.data import SEED, derive_seed, get_random_generator, spawn_generators
from v2v_urllc.utils.errors import (
    ConvergenceError,
    QuadratureError,
    StaleReportError,
    assert_within_tolerance,
    generate_error_message,
    is_within_tolerance,
    relative_error,
)


__all__: list[str] = [
    "GEOMETRY_FIELDS",
    "ScenarioConfig",
    "ScheduleConfig",
    "config_hash",
    "load_config",
    "merge_config",
    "save_config",
    "SEED",
    "derive_seed",
    "get_random_generator",
    "spawn_generators",
    "ConvergenceError",
    "QuadratureError",
    "StaleReportError",
    "assert_within_tolerance",
    "generate_error_message",
    "is_within_tolerance",
    "relative_error",
]
