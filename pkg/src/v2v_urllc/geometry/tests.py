# ============================================================================ #
#                                                                              #
#     Title: Geometry Tests                                                    #
#     Purpose: Invariant audits and statistical checks for sampled drops.      #
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
    Check functions for the geometry module. Each returns a dictionary whose `"result"` key says whether the check passed, alongside the measured quantity and the tolerance it was held to.
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
from collections import Counter
from typing import Any

# ## Python Third Party Imports ----
import numpy as np
from numpy.random import Generator as RandomGenerator
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.geometry.algorithms import (
    ROAD_IDS,
    RoadRelation,
    Topology,
    receiver_support,
    road_rectangle,
    road_relation,
    sample_pair_count,
    sample_topology,
    sidewalk_rectangles,
)
from v2v_urllc.utils.config import ScenarioConfig


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "audit_topology",
    "check_receiver_uniformity",
    "check_poisson_dispersion",
    "check_road_relations",
]


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Tests                                                                  ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def audit_topology(topology: Topology, config: ScenarioConfig, atol: float = 1e-9) -> dict[str, Any]:
    """
    !!! note "Summary"
        Verifies every constructive invariant of a drop.

    ???+ abstract "Details"
        Receivers must lie in their shrunk road rectangle, transmitters exactly `r_V` away and inside the same road, and CUEs on the sidewalk ring.

    Returns:
        (dict[str, Any]):
            - `result` (bool): `True` when no violation was found.
            - `violations` (list[str]): One message per failed item.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Sampled drop"}
        >>> from v2v_urllc.geometry import audit_topology, sample_topology
        >>> from v2v_urllc.utils.config import ScenarioConfig
        >>> from v2v_urllc.utils.data import get_random_generator
        >>> config = ScenarioConfig()
        >>> audit_topology(sample_topology(config, get_random_generator(3)), config)["result"]
        True

        ```
    """
    violations: list[str] = []
    for n, (rx, tx, road) in enumerate(zip(topology.receivers, topology.transmitters, topology.pair_roads)):
        if not receiver_support(config, int(road)).contains(rx, atol=atol)[0]:
            violations.append(f"receiver {n} outside the protected support of road {road}")
        if not road_rectangle(config, int(road)).contains(tx, atol=atol)[0]:
            violations.append(f"transmitter {n} outside road {road}")
        separation = float(np.hypot(*(tx - rx)))
        if abs(separation - config.pair_separation) > max(atol, 1e-9 * config.pair_separation):
            violations.append(f"pair {n} separation {separation} != {config.pair_separation}")
    pieces = sidewalk_rectangles(config)
    for k, cue in enumerate(topology.cues):
        if not any(piece.contains(cue, atol=atol)[0] for piece in pieces):
            violations.append(f"cue {k} outside the sidewalk")
    return {"result": not violations, "violations": violations}


@typechecked
def check_receiver_uniformity(
    config: ScenarioConfig,
    num_drops: int,
    rng: RandomGenerator,
    tolerance: float = 0.01,
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Compares the empirical mean receiver position on each road with the centroid of its support.

    ???+ abstract "Details"
        The error on each road is measured along the road axis and across it, relative to the support extent in that direction, so the check does not depend on where the origin sits.

    Returns:
        (dict[str, Any]):
            - `result` (bool): `True` when every relative error is within `tolerance`.
            - `error` (float): Largest relative error.
            - `tolerance` (float): The tolerance applied.
    """
    sums = {road: np.zeros(2) for road in ROAD_IDS}
    totals = {road: 0 for road in ROAD_IDS}
    for _ in range(num_drops):
        topo = sample_topology(config, rng, counts=(1, 1, 1, 1), num_cues=0)
        for rx, road in zip(topo.receivers, topo.pair_roads):
            sums[int(road)] += rx
            totals[int(road)] += 1
    worst: float = 0.0
    for road in ROAD_IDS:
        support = receiver_support(config, road)
        mean = sums[road] / max(totals[road], 1)
        cx, cy = support.centroid
        worst = max(worst, abs(mean[0] - cx) / support.width, abs(mean[1] - cy) / support.height)
    return {"result": bool(worst <= tolerance), "error": float(worst), "tolerance": tolerance}


@typechecked
def check_poisson_dispersion(
    density: float,
    config: ScenarioConfig,
    num_draws: int,
    rng: RandomGenerator,
    bounds: tuple[float, float] = (0.97, 1.03),
) -> dict[str, Any]:
    """
    !!! note "Summary"
        Variance-to-mean ratio of the pair-count sampler.

    Returns:
        (dict[str, Any]):
            - `result` (bool): `True` when the ratio lies within `bounds`.
            - `mean` (float): Empirical mean count.
            - `expected_mean` (float): `rho * S_R / 2`.
            - `dispersion` (float): Variance over mean.
    """
    draws = np.array(
        [sample_pair_count(density, config.road_length, config.road_width, rng) for _ in range(num_draws)],
        dtype=np.float64,
    )
    mean = float(draws.mean())
    dispersion = float(draws.var() / mean) if mean > 0 else float("nan")
    return {
        "result": bool(bounds[0] <= dispersion <= bounds[1]),
        "mean": mean,
        "expected_mean": density * config.road_area / 2,
        "dispersion": dispersion,
    }


@typechecked
def check_road_relations() -> dict[str, Any]:
    """
    !!! note "Summary"
        Symmetry and per-road relation counts of `road_relation()`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Grid adjacency"}
        >>> from v2v_urllc.geometry.tests import check_road_relations
        >>> check_road_relations()["result"]
        True

        ```
    """
    symmetric: bool = all(road_relation(u, j) == road_relation(j, u) for u in ROAD_IDS for j in ROAD_IDS)
    expected = Counter({RoadRelation.SAME: 1, RoadRelation.PERPENDICULAR: 2, RoadRelation.PARALLEL: 1})
    counts_ok: bool = all(Counter(road_relation(u, j) for j in ROAD_IDS) == expected for u in ROAD_IDS)
    return {"result": symmetric and counts_ok, "symmetric": symmetric, "counts": counts_ok}
