# ============================================================================ #
#                                                                              #
#     Title: Path-Loss Algorithms                                              #
#     Purpose: Large-scale fading gains and the table of expected distance     #
#         moments used by the worst-case SINR bounds.                          #
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
    Large-scale fading follows `beta = theta * d ** (-alpha)`. The worst-case bounds need the expectations of `d ** (-2 alpha)` and `d ** (2 alpha)` over the uniform placement laws of the grid, collected in an `OmegaTable`.

???+ abstract "Details"
    Every V2V or CUE-to-V2V expectation involves two independent points, each uniform on an axis-aligned rectangle. Their difference has a separable, piecewise-linear density, so each four-dimensional expectation reduces exactly to a two-dimensional integral over the difference vector, evaluated by an outer adaptive rule and an inner angular Gauss-Legendre rule. Same-road interferers inside the receiver's protection square contribute nothing, and the density is not renormalised for the removed mass.

    Receivers and interfering transmitters follow the receiver law (road rectangle shrunk by `r_P`). Transmitters seen by the base station are uniform over the full road rectangle. CUEs are uniform over the sidewalk ring.

    By the rotational symmetry of the grid every road gives the same moments, so road 1 is used as the reference road, road 2 as its perpendicular peer and road 3 as its parallel peer.
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
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Callable, Optional, Union

# ## Python Third Party Imports ----
import numpy as np
from numpy.random import Generator as RandomGenerator
from numpy.typing import NDArray
from scipy import integrate
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.geometry.algorithms import Rectangle, Topology, receiver_support, road_rectangle, sidewalk_rectangles
from v2v_urllc.utils.config import GEOMETRY_FIELDS, ScenarioConfig, config_hash
from v2v_urllc.utils.data import spawn_generators
from v2v_urllc.utils.errors import QuadratureError, generate_error_message


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "OMEGA_ENTRIES",
    "FadingModel",
    "LinkGains",
    "OmegaTable",
    "beta",
    "link_gains",
    "omega_quadrature",
    "omega_montecarlo",
    "same_road_negative_moment",
    "load_or_compute_omega",
]


# ---------------------------------------------------------------------------- #
# Constants                                                                 ####
# ---------------------------------------------------------------------------- #


log: logging.Logger = logging.getLogger(__name__)

QUADRATURE_RTOL: float = 1e-4
QUADRATURE_MAX_RTOL: float = 1e-3
QUADRATURE_LIMIT: int = 200
GAUSS_ORDERS: tuple[int, int] = (32, 64)
MIN_MONTECARLO_SAMPLES: int = 10_000
NEAR_FIELD_SCALES: tuple[float, ...] = (1.5, 3.0, 6.0, 12.0, 24.0, 48.0)
UNIFORM_SHARE: float = 0.2
OMEGA_ENTRIES: tuple[str, ...] = (
    "v2v_n1",
    "v2v_n2",
    "v2v_n3",
    "v2v_p1",
    "c2v_n",
    "v2b_n",
    "c2b_n",
    "c2b_p",
)


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Types                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@dataclass(frozen=True)
class FadingModel:
    """
    !!! note "Summary"
        Path-loss law `beta = theta * d ** (-alpha)`.
    """

    theta: float = 1e-3
    alpha: float = 3.0

    def __post_init__(self) -> None:
        if not self.theta > 0:
            raise ValueError(generate_error_message("theta", str(self.theta), ["> 0"]))
        if not self.alpha > 2:
            raise ValueError(generate_error_message("alpha", str(self.alpha), ["> 2"]))

    @classmethod
    def from_config(cls, config: ScenarioConfig) -> "FadingModel":
        return cls(theta=config.pathloss_const, alpha=config.pathloss_exp)


@dataclass(frozen=True, eq=False)
class LinkGains:
    """
    !!! note "Summary"
        Large-scale gains of every link in a drop.

    ???+ abstract "Details"
        - `v2v[r, t]`: transmitter of pair `t` to receiver of pair `r`; the diagonal holds the own links.
        - `c2v[r, k]`: CUE `k` to receiver of pair `r`.
        - `v2b[t]`: transmitter of pair `t` to the base station.
        - `c2b[k]`: CUE `k` to the base station.
    """

    v2v: NDArray[np.float64]
    c2v: NDArray[np.float64]
    v2b: NDArray[np.float64]
    c2b: NDArray[np.float64]

    @property
    def num_pairs(self) -> int:
        return int(self.v2v.shape[0])

    @property
    def num_cues(self) -> int:
        return int(self.c2b.shape[0])


@dataclass(frozen=True)
class OmegaTable:
    """
    !!! note "Summary"
        Expected distance moments of the grid.

    ???+ abstract "Details"
        Entries ending in `n` are negative moments `E[d ** (-2 alpha)]` (units `m ** (-2 alpha)`); entries ending in `p` are positive moments `E[d ** (2 alpha)]`.

        | field    | link                                   |
        |----------|----------------------------------------|
        | `v2v_n1` | same-road interferer to V2V receiver   |
        | `v2v_n2` | perpendicular-road interferer          |
        | `v2v_n3` | parallel-road interferer               |
        | `v2v_p1` | own transmitter to own receiver        |
        | `c2v_n`  | CUE to V2V receiver                    |
        | `v2b_n`  | V2V transmitter to base station        |
        | `c2b_n`  | CUE to base station                    |
        | `c2b_p`  | CUE to base station, positive moment   |
    """

    v2v_n1: float
    v2v_n2: float
    v2v_n3: float
    v2v_p1: float
    c2v_n: float
    v2b_n: float
    c2b_n: float
    c2b_p: float

    def __post_init__(self) -> None:
        bad = [name for name in OMEGA_ENTRIES if not (getattr(self, name) > 0 and np.isfinite(getattr(self, name)))]
        if bad:
            raise ValueError(f"Omega entries must be positive and finite: {bad}")

    def to_dict(self) -> dict[str, float]:
        return {key: float(value) for key, value in asdict(self).items()}

    @classmethod
    def from_dict(cls, data: dict[str, float]) -> "OmegaTable":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(generate_error_message("OmegaTable", ", ".join(unknown), sorted(known)))
        return cls(**{key: float(value) for key, value in data.items()})

    def scaled(self, entry: str, factor: float) -> "OmegaTable":
        data = self.to_dict()
        if entry not in data:
            raise ValueError(generate_error_message("entry", entry, list(OMEGA_ENTRIES)))
        data[entry] *= factor
        return OmegaTable(**data)


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Gains                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def beta(model: FadingModel, d: Union[float, NDArray[np.float64]]) -> Union[float, NDArray[np.float64]]:
    r"""
    !!! note "Summary"
        Large-scale fading gain at distance `d`.

    Params:
        model (FadingModel):
            Constants `theta` and `alpha`.
        d (Union[float, NDArray[np.float64]]):
            Distance(s) in metres.

    Raises:
        (ValueError):
            If any distance is not strictly positive.

    Returns:
        (Union[float, NDArray[np.float64]]):
            `theta * d ** (-alpha)`, with the shape of `d`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Default model"}
        >>> from v2v_urllc.pathloss.algorithms import FadingModel, beta
        >>> model = FadingModel(theta=1e-3, alpha=3.0)
        >>> [float(f"{beta(model, d):.3g}") for d in (1.0, 10.0, 100.0)]
        [0.001, 1e-06, 1e-09]

        ```

    ??? equation "Calculation"
        $$
        \beta = \theta d^{-\alpha}
        $$
    """
    arr = np.asarray(d, dtype=np.float64)
    if np.any(~(arr > 0)):
        raise ValueError(generate_error_message("d", str(d), ["> 0"]))
    out = model.theta * arr ** (-model.alpha)
    return float(out) if np.ndim(d) == 0 else out


@typechecked
def link_gains(topology: Topology, model: FadingModel) -> LinkGains:
    """
    !!! note "Summary"
        Evaluates `beta()` on every link of a drop.
    """
    def _gain(d: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.asarray(beta(model, d), dtype=np.float64) if d.size else np.zeros_like(d)

    return LinkGains(
        v2v=_gain(topology.v2v_distances()),
        c2v=_gain(topology.c2v_distances()),
        v2b=_gain(topology.v2b_distances()),
        c2b=_gain(topology.c2b_distances()),
    )


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Quadrature                                                            ####
#                                                                              #
# ---------------------------------------------------------------------------- #


Density = Callable[[NDArray[np.float64]], NDArray[np.float64]]
Interval = tuple[float, float]


def _trapezoid(a: Interval, b: Interval) -> tuple[Density, list[float]]:
    """Density of `X - Y` for `X ~ U(a)` and `Y ~ U(b)` on intervals, with its kink points."""
    scale = (a[1] - a[0]) * (b[1] - b[0])

    def density(z: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.clip(np.minimum(a[1], b[1] + z) - np.maximum(a[0], b[0] + z), 0.0, None) / scale

    return density, sorted({a[0] - b[1], a[0] - b[0], a[1] - b[1], a[1] - b[0]})


def _box(a: Interval) -> tuple[Density, list[float]]:
    """Density of `X ~ U(a)`."""

    def density(z: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.where((z >= a[0]) & (z <= a[1]), 1.0 / (a[1] - a[0]), 0.0)

    return density, [a[0], a[1]]


def _pieces(lo: float, hi: float, cut: Optional[float]) -> list[Interval]:
    """Splits `[lo, hi]` at `-cut` and `cut`, dropping the middle when `cut` is given."""
    if cut is None:
        return [(lo, hi)]
    out = []
    if lo < -cut:
        out.append((lo, min(hi, -cut)))
    if hi > cut:
        out.append((max(lo, cut), hi))
    return out


def _middle(lo: float, hi: float, cut: float) -> list[Interval]:
    a, b = max(lo, -cut), min(hi, cut)
    return [(a, b)] if a < b else []


def _cells(x_range: Interval, y_range: Interval, exclusion: Optional[float]) -> list[tuple[Interval, Interval]]:
    """Rectangles covering `x_range * y_range` minus the square `|z|_inf < exclusion`."""
    if exclusion is None:
        return [(x_range, y_range)]
    cells = [(xr, y_range) for xr in _pieces(*x_range, exclusion)]
    cells += [(xr, yr) for xr in _middle(*x_range, exclusion) for yr in _pieces(*y_range, exclusion)]
    return cells


def _gap(interval: Interval) -> float:
    """Distance from zero to `interval`."""
    lo, hi = interval
    return 0.0 if lo <= 0.0 <= hi else min(abs(lo), abs(hi))


def _outer_points(interval: Interval, kinks: list[float], gap: float) -> list[float]:
    """Kinks inside `interval` plus a doubling ladder away from the end nearest zero."""
    lo, hi = interval
    points = {k for k in kinks if lo < k < hi}
    step = 2.0 * gap
    while step < max(abs(lo), abs(hi)):
        points.add(step if lo > 0 else -step)
        step *= 2.0
    return sorted(p for p in points if lo < p < hi)


class _AngularRule:
    """
    Inner integral `int f(v) (u ** 2 + v ** 2) ** (s / 2) dv` over a fixed interval, evaluated at offset `u != 0`.

    Substituting `v = |u| tan(t)` turns the near-field peak into a smooth integrand, integrated piecewise between the kinks of `f` by Gauss-Legendre rules of two orders; the largest disagreement seen is kept as the error estimate.
    """

    def __init__(self, density: Density, kinks: list[float], interval: Interval, power: float) -> None:
        self.density = density
        self.edges = np.asarray([interval[0], *(k for k in kinks if interval[0] < k < interval[1]), interval[1]])
        self.power = power
        self.rules = [np.polynomial.legendre.leggauss(order) for order in GAUSS_ORDERS]
        self.worst: float = 0.0

    def __call__(self, u: float) -> float:
        scale = abs(u)
        cuts = np.arctan(self.edges / scale)
        mid, half = (cuts[1:] + cuts[:-1]) / 2, (cuts[1:] - cuts[:-1]) / 2
        estimates = []
        for nodes, weights in self.rules:
            theta = mid[:, None] + half[:, None] * nodes[None, :]
            values = self.density(scale * np.tan(theta)) * np.cos(theta) ** (-(self.power + 2))
            estimates.append(float(np.sum(half * (values @ weights))))
        coarse, fine = estimates
        if fine != 0:
            self.worst = max(self.worst, abs(fine - coarse) / abs(fine))
        return scale ** (self.power + 1) * fine


def _separable_moment(
    fx: tuple[Density, list[float]],
    fy: tuple[Density, list[float]],
    cells: list[tuple[Interval, Interval]],
    power: float,
    entry: str,
) -> float:
    """Integral of `fx(z_x) fy(z_y) |z| ** power` over `cells`, none of which may contain the origin."""
    total, abs_error, inner_error = 0.0, 0.0, 0.0
    for x_range, y_range in cells:
        gx, gy = _gap(x_range), _gap(y_range)
        if max(gx, gy) == 0.0:
            raise ValueError(f"Moment '{entry}' diverges: cell {x_range} x {y_range} contains the origin")
        if gy >= gx:
            (outer_f, outer_k), outer, gap, inner = fy, y_range, gy, (fx, x_range)
        else:
            (outer_f, outer_k), outer, gap, inner = fx, x_range, gx, (fy, y_range)
        rule = _AngularRule(inner[0][0], inner[0][1], inner[1], power)
        points = _outer_points(outer, outer_k, gap)
        value, err = integrate.quad(
            lambda u: float(outer_f(np.asarray(u))) * rule(u),
            outer[0],
            outer[1],
            points=points or None,
            limit=QUADRATURE_LIMIT,
            epsabs=0.0,
            epsrel=QUADRATURE_RTOL,
        )
        total += value
        abs_error += err
        inner_error = max(inner_error, rule.worst)
    relative = abs_error / abs(total) + inner_error if total != 0 else float("inf")
    _check_quadrature(entry, total, relative)
    return total


def _pair_moment(
    rx: Rectangle,
    other: Rectangle,
    power: float,
    exclusion: Optional[float] = None,
    entry: str = "",
) -> float:
    """`E[|X - Y| ** power]` for `X ~ U(rx)`, `Y ~ U(other)`, with `|X - Y|_inf < exclusion` removed."""
    fx = _trapezoid((rx.x_min, rx.x_max), (other.x_min, other.x_max))
    fy = _trapezoid((rx.y_min, rx.y_max), (other.y_min, other.y_max))
    cells = _cells((fx[1][0], fx[1][-1]), (fy[1][0], fy[1][-1]), exclusion)
    return _separable_moment(fx, fy, cells, power, entry)


def _origin_moment(region: Rectangle, power: float, entry: str = "") -> float:
    """`E[|X| ** power]` for `X ~ U(region)`."""
    x_range, y_range = (region.x_min, region.x_max), (region.y_min, region.y_max)
    return _separable_moment(_box(x_range), _box(y_range), [(x_range, y_range)], power, entry)


def _check_quadrature(entry: str, value: float, relative: float) -> None:
    if not np.isfinite(value) or not relative <= QUADRATURE_MAX_RTOL:
        raise QuadratureError(entry=entry, value=value, relative_error=relative, tolerance=QUADRATURE_MAX_RTOL)
    log.debug("quadrature %s = %.6g (rel err %.2g)", entry, value, relative)


def _own_positive_moment(config: ScenarioConfig) -> float:
    two_alpha: float = 2 * config.pathloss_exp
    if config.fixed_separation:
        return config.pair_separation**two_alpha
    r_v = config.pair_separation
    value, err = integrate.quad(lambda r: r**two_alpha * 2 * r / r_v**2, 0.0, r_v, epsrel=QUADRATURE_RTOL)
    _check_quadrature("v2v_p1", value, err / value)
    return value


@typechecked
def same_road_negative_moment(config: ScenarioConfig) -> float:
    """
    !!! note "Summary"
        The same-road entry `v2v_n1` alone, used by the protection-region divergence check.
    """
    support = receiver_support(config, 1)
    return _pair_moment(support, support, -2 * config.pathloss_exp, config.protection_half_length, "v2v_n1")


@typechecked
def omega_quadrature(config: ScenarioConfig) -> OmegaTable:
    r"""
    !!! note "Summary"
        Computes every `OmegaTable` entry by deterministic numerical integration.

    ???+ abstract "Details"
        Pairs of uniform points are reduced to integrals over their difference vector, whose density is the product of two trapezoids. The domain is cut into rectangular cells around the protection square, and every cell keeps one coordinate of the difference bounded away from zero. That coordinate is integrated outermost with adaptive `scipy.integrate.quad` (absolute tolerance off, relative tolerance `1e-4`), with break points at the trapezoid kinks and on a doubling ladder away from the near field. The inner coordinate goes through the substitution `v = |u| tan(t)` and two Gauss-Legendre orders, whose disagreement joins the error estimate. Entries are computed one after another in the calling thread.

        The own-pair positive moment is `r_V ** (2 alpha)` when `config.fixed_separation` is set, and the conditional moment over a disc of radius `r_V` otherwise.

    Params:
        config (ScenarioConfig):
            Geometry and path-loss exponent.

    Raises:
        (QuadratureError):
            If an integral misses its tolerance; the exception carries the achieved error estimate.

    Returns:
        (OmegaTable):
            The table of expected moments.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Fixed separation"}
        >>> from v2v_urllc.pathloss.algorithms import omega_quadrature
        >>> from v2v_urllc.utils.config import ScenarioConfig
        >>> omega_quadrature(ScenarioConfig()).v2v_p1
        2985984.0

        ```

    ??? equation "Calculation"
        For `X ~ U([a_0, a_1])` and `Y ~ U([b_0, b_1])` the difference `Z = X - Y` has density

        $$
        f_Z(z) = \frac{\left| [a_0, a_1] \cap [b_0 + z, b_1 + z] \right|}{(a_1 - a_0)(b_1 - b_0)}
        $$

        and the two coordinates are independent, so

        $$
        \mathbb{E}\left[ \lVert X - Y \rVert^{s} \right] = \iint f_{Z_x}(z_x) f_{Z_y}(z_y) \left( z_x^2 + z_y^2 \right)^{s/2} \mathrm{d}z_x \mathrm{d}z_y.
        $$
    """
    two_alpha: float = 2 * config.pathloss_exp
    rx: Rectangle = receiver_support(config, 1)
    ring: tuple[Rectangle, ...] = sidewalk_rectangles(config)
    log.info("computing Omega table by quadrature (alpha=%s, r_P=%s)", config.pathloss_exp, config.protection_half_length)
    table = OmegaTable(
        v2v_n1=_pair_moment(rx, rx, -two_alpha, config.protection_half_length, "v2v_n1"),
        v2v_n2=_pair_moment(rx, receiver_support(config, 2), -two_alpha, entry="v2v_n2"),
        v2v_n3=_pair_moment(rx, receiver_support(config, 3), -two_alpha, entry="v2v_n3"),
        v2v_p1=_own_positive_moment(config),
        c2v_n=float(np.mean([_pair_moment(rx, piece, -two_alpha, entry="c2v_n") for piece in ring])),
        v2b_n=_origin_moment(road_rectangle(config, 1), -two_alpha, "v2b_n"),
        c2b_n=float(np.mean([_origin_moment(piece, -two_alpha, "c2b_n") for piece in ring])),
        c2b_p=float(np.mean([_origin_moment(piece, two_alpha, "c2b_p") for piece in ring])),
    )
    return table


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Monte Carlo                                                           ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _ring_sample(ring: tuple[Rectangle, ...], count: int, rng: RandomGenerator) -> NDArray[np.float64]:
    which = rng.integers(0, len(ring), size=count)
    out = np.empty((count, 2), dtype=np.float64)
    for i, piece in enumerate(ring):
        mask = which == i
        out[mask] = piece.sample(int(mask.sum()), rng)
    return out


def _clip_boxes(base: Rectangle, boxes: NDArray[np.float64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Intersects `base` with `boxes[..., (x0, x1, y0, y1)]`; empty intersections get area `0`."""
    x0, x1 = np.maximum(boxes[..., 0], base.x_min), np.minimum(boxes[..., 1], base.x_max)
    y0, y1 = np.maximum(boxes[..., 2], base.y_min), np.minimum(boxes[..., 3], base.y_max)
    area = np.clip(x1 - x0, 0.0, None) * np.clip(y1 - y0, 0.0, None)
    return np.stack([x0, x1, y0, y1], axis=-1), area


def _mixture_sample(
    base: Rectangle,
    bounds: NDArray[np.float64],
    areas: NDArray[np.float64],
    rng: RandomGenerator,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    One point per row from `UNIFORM_SHARE * U(base) + sum_k share * U(bounds[row, k])`, and its proposal density.

    Empty boxes fold their share into the uniform component, so every row is a proper mixture over `base`.
    """
    count, k = areas.shape
    share = (1.0 - UNIFORM_SHARE) / k
    rows = np.arange(count)
    available = areas > 0
    pick = rng.integers(0, k, size=count)
    use_box = (rng.uniform(size=count) >= UNIFORM_SHARE) & available[rows, pick]
    chosen = bounds[rows, pick]
    lo = np.where(use_box[:, None], chosen[:, [0, 2]], [base.x_min, base.y_min])
    hi = np.where(use_box[:, None], chosen[:, [1, 3]], [base.x_max, base.y_max])
    points = lo + (hi - lo) * rng.uniform(size=(count, 2))

    inside = (
        (points[:, None, 0] >= bounds[..., 0])
        & (points[:, None, 0] <= bounds[..., 1])
        & (points[:, None, 1] >= bounds[..., 2])
        & (points[:, None, 1] <= bounds[..., 3])
    )
    uniform_weight = UNIFORM_SHARE + share * np.sum(~available, axis=1)
    box_density = np.where(available & inside, share / np.where(available, areas, 1.0), 0.0)
    return points, uniform_weight / base.area + np.sum(box_density, axis=1)


def _pair_weights(
    rx: Rectangle,
    other: Rectangle,
    power: float,
    count: int,
    rng: RandomGenerator,
    exclusion: Optional[float] = None,
) -> NDArray[np.float64]:
    """
    Importance-weighted draws whose mean is `E[|X - Y| ** power]` for `X ~ U(rx)`, `Y ~ U(other)`.

    `X` favours the part of `rx` near `other` and `Y` favours the part of `other` near `X`, both on the scales `NEAR_FIELD_SCALES`. The uniform share bounds every weight by `1 / UNIFORM_SHARE ** 2`.
    """
    scales = np.asarray(NEAR_FIELD_SCALES)
    reach = np.stack([other.x_min - scales, other.x_max + scales, other.y_min - scales, other.y_max + scales], axis=-1)
    x_bounds, x_areas = _clip_boxes(rx, np.broadcast_to(reach, (count, *reach.shape)))
    x, qx = _mixture_sample(rx, x_bounds, x_areas, rng)
    around = np.stack(
        [x[:, :1] - scales, x[:, :1] + scales, x[:, 1:] - scales, x[:, 1:] + scales],
        axis=-1,
    )
    y_bounds, y_areas = _clip_boxes(other, around)
    y, qy = _mixture_sample(other, y_bounds, y_areas, rng)
    diff = x - y
    keep = np.ones(count, dtype=bool) if exclusion is None else np.max(np.abs(diff), axis=1) >= exclusion
    values = np.zeros(count, dtype=np.float64)
    values[keep] = np.hypot(diff[keep, 0], diff[keep, 1]) ** power
    return values / (rx.area * other.area * qx * qy)


def _ring_pair_weights(
    rx: Rectangle,
    ring: tuple[Rectangle, ...],
    power: float,
    count: int,
    rng: RandomGenerator,
) -> NDArray[np.float64]:
    which = rng.integers(0, len(ring), size=count)
    out = np.empty(count, dtype=np.float64)
    for i, piece in enumerate(ring):
        mask = which == i
        out[mask] = _pair_weights(rx, piece, power, int(mask.sum()), rng)
    return out


def _block_moments(config: ScenarioConfig, count: int, rng: RandomGenerator) -> dict[str, tuple[float, float]]:
    """Sum and sum of squares of every entry's per-sample weight over one block."""
    two_alpha: float = 2 * config.pathloss_exp
    rx = receiver_support(config, 1)
    ring = sidewalk_rectangles(config)
    weights: dict[str, NDArray[np.float64]] = {
        "v2v_n1": _pair_weights(rx, rx, -two_alpha, count, rng, config.protection_half_length),
        "v2v_n2": _pair_weights(rx, receiver_support(config, 2), -two_alpha, count, rng),
        "v2v_n3": _pair_weights(rx, receiver_support(config, 3), -two_alpha, count, rng),
        "c2v_n": _ring_pair_weights(rx, ring, -two_alpha, count, rng),
        "v2b_n": np.hypot(*road_rectangle(config, 1).sample(count, rng).T) ** (-two_alpha),
    }
    cues = np.hypot(*_ring_sample(ring, count, rng).T)
    weights["c2b_n"] = cues ** (-two_alpha)
    weights["c2b_p"] = cues**two_alpha
    if config.fixed_separation:
        weights["v2v_p1"] = np.full(count, config.pair_separation**two_alpha)
    else:
        radius = config.pair_separation * np.sqrt(rng.uniform(size=count))
        weights["v2v_p1"] = radius**two_alpha
    return {key: (float(np.sum(w)), float(np.sum(w * w))) for key, w in weights.items()}


@typechecked
def omega_montecarlo(
    config: ScenarioConfig,
    n: int,
    rng: RandomGenerator,
    block_size: int = 100_000,
    workers: int = 1,
) -> tuple[OmegaTable, dict[str, float]]:
    """
    !!! note "Summary"
        Sample-mean estimate of every `OmegaTable` entry, with standard errors.

    ???+ abstract "Details"
        The `n` samples are split into blocks, each with its own generator spawned from `rng`, so the estimate does not depend on `workers`. Blocks are reduced in order.

        The two-point negative moments are importance sampled: each point is drawn from a mixture of its uniform law and uniform laws on boxes hugging the other support, and carries the ratio of the two densities as its weight. Origin moments and the own-pair moment use plain sampling.

    Params:
        config (ScenarioConfig):
            Geometry and path-loss exponent.
        n (int):
            Number of samples per entry, at least `10_000`.
        rng (RandomGenerator):
            Parent generator.
        block_size (int):
            Samples per block.<br>
            Default: `100_000`
        workers (int):
            Threads used to evaluate blocks.<br>
            Default: `1`

    Raises:
        (ValueError):
            If `n < 10_000`.

    Returns:
        (tuple[OmegaTable, dict[str, float]]):
            The estimated table and the standard error of each entry.
    """
    if n < MIN_MONTECARLO_SAMPLES:
        raise ValueError(generate_error_message("n", str(n), [f">= {MIN_MONTECARLO_SAMPLES}"]))
    sizes = [block_size] * (n // block_size) + ([n % block_size] if n % block_size else [])
    streams = spawn_generators(rng, len(sizes))
    jobs = list(zip(sizes, streams))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(lambda job: _block_moments(config, job[0], job[1]), jobs))
    else:
        blocks = [_block_moments(config, size, stream) for size, stream in jobs]

    means: dict[str, float] = {}
    errors: dict[str, float] = {}
    for key in OMEGA_ENTRIES:
        total = sum(block[key][0] for block in blocks)
        squares = sum(block[key][1] for block in blocks)
        mean = total / n
        variance = max(squares / n - mean * mean, 0.0) * n / (n - 1)
        means[key] = mean
        errors[key] = float(np.sqrt(variance / n))
    return OmegaTable(**means), errors


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Cache                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def load_or_compute_omega(config: ScenarioConfig, cache_dir: Optional[Union[str, Path]] = None) -> OmegaTable:
    """
    !!! note "Summary"
        Returns the quadrature table, reading and writing a JSON cache keyed by the geometry fields of `config`.

    ???+ abstract "Details"
        Density, power and threshold fields do not enter the key, so sweeps over them reuse one cached table.
    """
    if cache_dir is None:
        return omega_quadrature(config)
    key: str = config_hash(config, GEOMETRY_FIELDS)[:16]
    path = Path(cache_dir) / f"omega-{key}.json"
    if path.exists():
        log.debug("Omega cache hit %s", path)
        return OmegaTable.from_dict(json.loads(path.read_text(encoding="utf-8")))
    table = omega_quadrature(config)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(table.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    log.info("Omega table cached at %s", path)
    return table
