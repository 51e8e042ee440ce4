# ============================================================================ #
#                                                                              #
#     Title: Geometry Algorithms                                               #
#     Purpose: Urban-grid layout, random drops of V2V pairs and CUEs, road     #
#         relations and link distances.                                        #
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
    The urban grid is one square building block centred on the base station, wrapped by four roads laid out as a pinwheel so that the four `A_RL x A_RW` rectangles tile the ring around the block without overlap.

    Road 1 runs along the south edge, road 2 the east edge, road 3 the north edge and road 4 the west edge. Consecutive roads are perpendicular and opposite roads are parallel. CUEs live on the sidewalk, the band of width `A_SW` just inside the block.

???+ abstract "Details"
    V2V receivers are uniform over their road rectangle shrunk by the protection half length `r_P` on every side. Each transmitter sits exactly `r_V` from its receiver at a uniform bearing, resampled until it lands on the same road.
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
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

# ## Python Third Party Imports ----
import numpy as np
from numpy.random import Generator as RandomGenerator
from numpy.typing import NDArray
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.utils.config import NUM_ROADS, ScenarioConfig
from v2v_urllc.utils.errors import generate_error_message


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "ROAD_IDS",
    "RoadRelation",
    "Rectangle",
    "Topology",
    "road_relation",
    "road_rectangle",
    "receiver_support",
    "sidewalk_rectangles",
    "sample_pair_count",
    "sample_pair_counts",
    "sample_topology",
]


# ---------------------------------------------------------------------------- #
# Constants                                                                 ####
# ---------------------------------------------------------------------------- #


ROAD_IDS: tuple[int, ...] = tuple(range(1, NUM_ROADS + 1))
MAX_BEARING_ATTEMPTS: int = 1_000
BEARING_BATCH: int = 32


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Types                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class RoadRelation(str, Enum):
    SAME = "Same"
    PERPENDICULAR = "Perpendicular"
    PARALLEL = "Parallel"


@dataclass(frozen=True)
class Rectangle:
    """
    !!! note "Summary"
        Axis-aligned rectangle `[x_min, x_max] x [y_min, y_max]` in metres.
    """

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def centroid(self) -> tuple[float, float]:
        return ((self.x_min + self.x_max) / 2, (self.y_min + self.y_max) / 2)

    def shrink(self, margin: float) -> "Rectangle":
        return Rectangle(self.x_min + margin, self.x_max - margin, self.y_min + margin, self.y_max - margin)

    def contains(self, points: NDArray[np.float64], atol: float = 1e-9) -> NDArray[np.bool_]:
        points = np.atleast_2d(points)
        return (
            (points[:, 0] >= self.x_min - atol)
            & (points[:, 0] <= self.x_max + atol)
            & (points[:, 1] >= self.y_min - atol)
            & (points[:, 1] <= self.y_max + atol)
        )

    def sample(self, count: int, rng: RandomGenerator) -> NDArray[np.float64]:
        x = rng.uniform(self.x_min, self.x_max, size=count)
        y = rng.uniform(self.y_min, self.y_max, size=count)
        return np.column_stack([x, y])


@dataclass(frozen=True, eq=False)
class Topology:
    """
    !!! note "Summary"
        One realised drop: V2V receivers and transmitters per road, CUE positions and the base station at the origin.

    ???+ abstract "Details"
        Pair arrays are ordered road by road, so pair `n` lives on road `pair_roads[n]` and `counts[u - 1]` pairs belong to road `u`. Distance helpers return dense matrices indexed `[receiver, transmitter]`.
    """

    receivers: NDArray[np.float64]
    transmitters: NDArray[np.float64]
    pair_roads: NDArray[np.int64]
    cues: NDArray[np.float64]
    counts: tuple[int, ...] = field(default=(0, 0, 0, 0))

    def __post_init__(self) -> None:
        object.__setattr__(self, "receivers", np.asarray(self.receivers, dtype=np.float64).reshape(-1, 2))
        object.__setattr__(self, "transmitters", np.asarray(self.transmitters, dtype=np.float64).reshape(-1, 2))
        object.__setattr__(self, "pair_roads", np.asarray(self.pair_roads, dtype=np.int64).reshape(-1))
        object.__setattr__(self, "cues", np.asarray(self.cues, dtype=np.float64).reshape(-1, 2))
        if not (len(self.receivers) == len(self.transmitters) == len(self.pair_roads)):
            raise ValueError("Receivers, transmitters and pair_roads must have the same length.")
        derived = tuple(int(np.sum(self.pair_roads == road)) for road in ROAD_IDS)
        object.__setattr__(self, "counts", derived)

    @property
    def num_pairs(self) -> int:
        return int(len(self.receivers))

    @property
    def num_cues(self) -> int:
        return int(len(self.cues))

    @property
    def is_empty(self) -> bool:
        return self.num_pairs == 0 and self.num_cues == 0

    def v2v_distances(self) -> NDArray[np.float64]:
        diff = self.receivers[:, None, :] - self.transmitters[None, :, :]
        return np.hypot(diff[..., 0], diff[..., 1])

    def c2v_distances(self) -> NDArray[np.float64]:
        diff = self.receivers[:, None, :] - self.cues[None, :, :]
        return np.hypot(diff[..., 0], diff[..., 1])

    def v2b_distances(self) -> NDArray[np.float64]:
        return np.hypot(self.transmitters[:, 0], self.transmitters[:, 1])

    def c2b_distances(self) -> NDArray[np.float64]:
        return np.hypot(self.cues[:, 0], self.cues[:, 1])

    def to_dict(self) -> dict[str, list]:
        return {
            "receivers": self.receivers.tolist(),
            "transmitters": self.transmitters.tolist(),
            "pair_roads": self.pair_roads.tolist(),
            "cues": self.cues.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Topology":
        return cls(
            receivers=np.asarray(data.get("receivers", []), dtype=np.float64),
            transmitters=np.asarray(data.get("transmitters", []), dtype=np.float64),
            pair_roads=np.asarray(data.get("pair_roads", []), dtype=np.int64),
            cues=np.asarray(data.get("cues", []), dtype=np.float64),
        )


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Layout                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _check_road(road: int, name: str = "road") -> None:
    if road not in ROAD_IDS:
        raise ValueError(generate_error_message(parameter_name=name, value_parsed=str(road), options=[str(r) for r in ROAD_IDS]))


@typechecked
def road_relation(u: int, j: int) -> RoadRelation:
    """
    !!! note "Summary"
        Classifies road `j` relative to road `u` on the four-road grid.

    Params:
        u (int):
            Reference road, in `1..4`.
        j (int):
            Other road, in `1..4`.

    Raises:
        (ValueError):
            If either id is outside `1..4`.

    Returns:
        (RoadRelation):
            `SAME` when `u == j`, `PARALLEL` for opposite roads and `PERPENDICULAR` otherwise.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Relations of road 1"}
        >>> from v2v_urllc.geometry.algorithms import road_relation
        >>> [road_relation(1, j).value for j in (1, 2, 3, 4)]
        ['Same', 'Perpendicular', 'Parallel', 'Perpendicular']

        ```
    """
    _check_road(u, "u")
    _check_road(j, "j")
    gap: int = (j - u) % NUM_ROADS
    if gap == 0:
        return RoadRelation.SAME
    if gap == 2:
        return RoadRelation.PARALLEL
    return RoadRelation.PERPENDICULAR


@typechecked
def road_rectangle(config: ScenarioConfig, road: int) -> Rectangle:
    """
    !!! note "Summary"
        Full `A_RL x A_RW` rectangle of one road, base station at the origin.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Default south road"}
        >>> from v2v_urllc.geometry.algorithms import road_rectangle
        >>> from v2v_urllc.utils.config import ScenarioConfig
        >>> road_rectangle(ScenarioConfig(), 1)
        Rectangle(x_min=-96.0, x_max=104.0, y_min=-104.0, y_max=-96.0)

        ```
    """
    _check_road(road)
    h: float = config.block_half_side
    length: float = config.road_length
    width: float = config.road_width
    if road == 1:
        return Rectangle(-h, -h + length, -h - width, -h)
    if road == 2:
        return Rectangle(h, h + width, -h, -h + length)
    if road == 3:
        return Rectangle(h - length, h, h, h + width)
    return Rectangle(-h - width, -h, h - length, h)


@typechecked
def receiver_support(config: ScenarioConfig, road: int) -> Rectangle:
    """
    !!! note "Summary"
        Placement support of V2V receivers: the road rectangle shrunk by `r_P` on each side.

    Raises:
        (ValueError):
            If the shrunk rectangle is empty.
    """
    support: Rectangle = road_rectangle(config, road).shrink(config.protection_half_length)
    if support.width <= 0 or support.height <= 0:
        raise ValueError(
            f"Road {road} is too narrow to host a receiver: width={config.road_width}, "
            f"protection half length={config.protection_half_length}."
        )
    return support


@typechecked
def sidewalk_rectangles(config: ScenarioConfig) -> tuple[Rectangle, ...]:
    """
    !!! note "Summary"
        The sidewalk ring split into four equal-area rectangles (pinwheel), so corners are counted once.

    ???+ abstract "Details"
        The ring is the building block `[-h, h]^2` minus its inner square `[-(h - A_SW), h - A_SW]^2`, with `h = (A_RL - A_RW) / 2`. Each piece measures `(2h - A_SW) x A_SW`.
    """
    h: float = config.block_half_side
    s: float = config.sidewalk_width
    return (
        Rectangle(-h, h - s, -h, -h + s),
        Rectangle(h - s, h, -h, h - s),
        Rectangle(-h + s, h, h - s, h),
        Rectangle(-h, -h + s, -h + s, h),
    )


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Sampling                                                              ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def sample_pair_count(density: float, road_length: float, road_width: float, rng: RandomGenerator) -> int:
    """
    !!! note "Summary"
        Poisson number of V2V pairs on one road.

    ???+ abstract "Details"
        Every pair holds two vehicles, so the mean number of pairs on a road of area `S_R = A_RL * A_RW` is `rho * S_R / 2`.

    Params:
        density (float):
            Average vehicle density `rho_u` in vehicles per square metre.
        road_length (float):
            `A_RL` in metres.
        road_width (float):
            `A_RW` in metres.
        rng (RandomGenerator):
            Source of randomness.

    Raises:
        (ValueError):
            If `density` is negative.

    Returns:
        (int):
            The sampled count.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Empty road"}
        >>> from v2v_urllc.geometry.algorithms import sample_pair_count
        >>> from v2v_urllc.utils.data import get_random_generator
        >>> sample_pair_count(0.0, 200.0, 8.0, get_random_generator(1))
        0

        ```

    ??? equation "Calculation"
        $$
        D_u \sim \mathrm{Poisson}\left( \frac{\rho_u A_{RL} A_{RW}}{2} \right)
        $$
    """
    if density < 0:
        raise ValueError(generate_error_message(parameter_name="density", value_parsed=str(density), options=[">= 0"]))
    return int(rng.poisson(density * road_length * road_width / 2))


@typechecked
def sample_pair_counts(config: ScenarioConfig, rng: RandomGenerator) -> tuple[int, int, int, int]:
    """
    !!! note "Summary"
        Independent Poisson pair counts for the four roads.
    """
    c1, c2, c3, c4 = (
        sample_pair_count(rho, config.road_length, config.road_width, rng) for rho in config.avg_density
    )
    return (c1, c2, c3, c4)


def _place_transmitter(
    receiver: NDArray[np.float64],
    road: Rectangle,
    separation: float,
    rng: RandomGenerator,
) -> NDArray[np.float64]:
    for _ in range(MAX_BEARING_ATTEMPTS // BEARING_BATCH + 1):
        bearings = rng.uniform(0.0, 2 * np.pi, size=BEARING_BATCH)
        candidates = receiver + separation * np.column_stack([np.cos(bearings), np.sin(bearings)])
        inside = np.flatnonzero(road.contains(candidates, atol=0.0))
        if inside.size:
            return candidates[inside[0]]
    raise ValueError(
        f"Could not place a transmitter {separation} m from receiver {receiver.tolist()} "
        f"inside the road after {MAX_BEARING_ATTEMPTS} bearings."
    )


@typechecked
def sample_topology(
    config: ScenarioConfig,
    rng: RandomGenerator,
    counts: Optional[Sequence[int]] = None,
    num_cues: Optional[int] = None,
) -> Topology:
    """
    !!! note "Summary"
        Draws one snapshot of the grid: receivers, transmitters and CUEs.

    ???+ abstract "Details"
        Receivers are uniform over `receiver_support()`. Transmitters are placed at distance `r_V` with a uniform bearing and resampled until they fall inside the same road rectangle. CUEs are uniform over the sidewalk ring.

    Params:
        config (ScenarioConfig):
            Scenario geometry and densities.
        rng (RandomGenerator):
            Source of randomness.
        counts (Optional[Sequence[int]]):
            Pairs per road. When `None` they are drawn with `sample_pair_counts()`.<br>
            Default: `None`
        num_cues (Optional[int]):
            Overrides `config.num_cues`.<br>
            Default: `None`

    Raises:
        (ValueError):
            If a count is negative, or a road cannot host a receiver or a transmitter.

    Returns:
        (Topology):
            The realised drop.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Empty drop"}
        >>> from v2v_urllc.geometry.algorithms import sample_topology
        >>> from v2v_urllc.utils.config import ScenarioConfig
        >>> from v2v_urllc.utils.data import get_random_generator
        >>> topo = sample_topology(ScenarioConfig(num_cues=0), get_random_generator(7), counts=(0, 0, 0, 0))
        >>> topo.is_empty
        True

        ```

        ```pycon {.py .python linenums="1" title="Fixed counts"}
        >>> topo = sample_topology(ScenarioConfig(), get_random_generator(7), counts=(1, 2, 0, 3), num_cues=4)
        >>> topo.counts, topo.num_cues
        ((1, 2, 0, 3), 4)

        ```
    """
    if counts is None:
        counts = sample_pair_counts(config, rng)
    if len(counts) != NUM_ROADS or any(c < 0 for c in counts):
        raise ValueError(generate_error_message(parameter_name="counts", value_parsed=str(counts), options=["four counts >= 0"]))
    cue_count: int = config.num_cues if num_cues is None else num_cues
    if cue_count < 0:
        raise ValueError(generate_error_message(parameter_name="num_cues", value_parsed=str(cue_count), options=[">= 0"]))

    receivers: list[NDArray[np.float64]] = []
    transmitters: list[NDArray[np.float64]] = []
    roads: list[int] = []
    for road, count in zip(ROAD_IDS, counts):
        if count == 0:
            continue
        support: Rectangle = receiver_support(config, road)
        rect: Rectangle = road_rectangle(config, road)
        for rx in support.sample(int(count), rng):
            receivers.append(rx)
            transmitters.append(_place_transmitter(rx, rect, config.pair_separation, rng))
            roads.append(road)

    pieces: tuple[Rectangle, ...] = sidewalk_rectangles(config)
    which = rng.integers(0, len(pieces), size=cue_count)
    cues = np.array([pieces[int(i)].sample(1, rng)[0] for i in which], dtype=np.float64).reshape(-1, 2)

    return Topology(
        receivers=np.array(receivers, dtype=np.float64).reshape(-1, 2),
        transmitters=np.array(transmitters, dtype=np.float64).reshape(-1, 2),
        pair_roads=np.array(roads, dtype=np.int64),
        cues=cues,
    )
