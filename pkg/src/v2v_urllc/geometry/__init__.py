# ============================================================================ #
#                                                                              #
#     Title: Geometry Module                                                   #
#     Purpose: Initialise the geometry module by importing algorithms and      #
#         tests, and defining exports.                                         #
#                                                                              #
# ============================================================================ #


"""
!!! note "Summary"
    Urban-grid scenario construction: road rectangles, random drops of V2V pairs and CUEs, road relations and the distances every path-loss and SINR computation starts from.
"""


# ## Local First Party Imports ----
from v2v_urllc.geometry.algorithms import (
    ROAD_IDS,
    Rectangle,
    RoadRelation,
    Topology,
    receiver_support,
    road_rectangle,
    road_relation,
    sample_pair_count,
    sample_pair_counts,
    sample_topology,
    sidewalk_rectangles,
)
from v2v_urllc.geometry.tests import (
    audit_topology,
    check_poisson_dispersion,
    check_receiver_uniformity,
    check_road_relations,
)


__all__: list[str] = [
    "ROAD_IDS",
    "Rectangle",
    "RoadRelation",
    "Topology",
    "receiver_support",
    "road_rectangle",
    "road_relation",
    "sample_pair_count",
    "sample_pair_counts",
    "sample_topology",
    "sidewalk_rectangles",
    "audit_topology",
    "check_poisson_dispersion",
    "check_receiver_uniformity",
    "check_road_relations",
]
