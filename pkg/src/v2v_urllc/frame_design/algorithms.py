# ============================================================================ #
#                                                                              #
#     Title: Frame Design Algorithms                                           #
#     Purpose: Minimum frame size and pilot fraction meeting the V2V payload   #
#         and CUE SINR targets, and the latency-bandwidth feasible region.     #
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
    The frame of `zeta = L * B` symbols must let every V2V pair deliver `info_threshold` bits at reliability `1 - epsilon` under the worst-case averaged bound, while the CUEs keep their worst-case SINR above `cue_frame_threshold`.

    - SP: one Newton solve per road of `f_SP(zeta) = Theta`, started at the CUE floor, and the maximum over roads and the floor.
    - RP: bisection on the pilot fraction `eta`. At each midpoint the frame size meeting the payload is found by Newton in `zeta`, then the payload-maximising fraction at that size by Newton in `eta`; the bracket moves towards it. The fixed point is the tangent point of the level set, which has the smallest `zeta`.

    All Newton loops are safeguarded by a bracket and fall back to bisection when an iterate leaves it.
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
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, NamedTuple, Optional, Union

# ## Python Third Party Imports ----
import numpy as np
from numpy.typing import NDArray
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.fbl.algorithms import info_bits_coefficient
from v2v_urllc.pathloss.algorithms import OmegaTable
from v2v_urllc.sinr_bounds.algorithms import (
    PilotKind,
    PilotScheme,
    interference_sum,
    v2b_interference_sum,
)
from v2v_urllc.utils.config import ScenarioConfig
from v2v_urllc.utils.errors import ConvergenceError, generate_error_message


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "SurplusSP",
    "SurplusRP",
    "FrameDesign",
    "FeasibleRegion",
    "f_sp",
    "f_rp",
    "merging_coefficients",
    "cue_floor_sp",
    "cue_product_rp",
    "solve_zeta_sp",
    "solve_zeta_rp",
    "best_eta",
    "solve_frame_sp",
    "solve_frame_rp",
    "solve_frame_rp_at",
    "feasible_region",
    "algorithm_complexity",
]


# ---------------------------------------------------------------------------- #
# Constants                                                                 ####
# ---------------------------------------------------------------------------- #


log: logging.Logger = logging.getLogger(__name__)

LN2: float = math.log(2.0)
NEWTON_MAX_ITER: int = 100
BISECTION_MAX_STEPS: int = 64
BRACKET_MAX_DOUBLINGS: int = 200
ETA_SCAN_POINTS: int = 401
ETA_FLOOR: float = 1e-12


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Types                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class SurplusSP(NamedTuple):
    value: float
    d_zeta: float


class SurplusRP(NamedTuple):
    value: float
    d_zeta: float
    d_eta: float
    d2_eta: float


@dataclass(frozen=True)
class FrameDesign:
    """
    !!! note "Summary"
        Result of the frame design for one scheme.

    ???+ abstract "Details"
        - `zeta_lower` is the continuous minimum frame size; `zeta` is its ceiling, the reported integer frame size.
        - `eta` is the pilot fraction (RP only, `0.0` for SP).
        - `a_rp` and `a_sp` are the per-road merging coefficients, `b` the reliability penalty in bits per square-root symbol.
        - `cue_branch_active` flags an RP design fixed by the CUE constraint rather than the V2V payload.
        - `trace` records the iterates, one dictionary per step, for convergence studies.
    """

    scheme: PilotKind
    eta: float
    zeta: float
    zeta_lower: float
    a_rp: tuple[float, ...]
    a_sp: tuple[float, ...]
    b: float
    cue_branch_active: bool = False
    binding_road: int = 1
    iterations: dict[str, int] = field(default_factory=dict)
    trace: tuple[dict[str, float], ...] = ()

    def __post_init__(self) -> None:
        if not self.zeta >= self.zeta_lower > 0:
            raise ValueError(f"Frame size must satisfy zeta >= zeta_lower > 0, got {self.zeta} and {self.zeta_lower}.")
        if self.scheme is PilotKind.RP and not 0 < self.eta < 1:
            raise ValueError(generate_error_message("eta", str(self.eta), ["0 < eta < 1"]))

    @property
    def pilot_scheme(self) -> PilotScheme:
        return PilotScheme.from_frame(self.scheme, self.zeta, self.eta)

    @property
    def blocklength(self) -> float:
        return (1.0 - self.eta) * self.zeta if self.scheme is PilotKind.RP else self.zeta

    def to_dict(self) -> dict[str, Any]:
        return {
            "scheme": self.scheme.value,
            "eta": self.eta,
            "zeta": self.zeta,
            "zeta_lower": self.zeta_lower,
            "a_rp": list(self.a_rp),
            "a_sp": list(self.a_sp),
            "b": self.b,
            "cue_branch_active": self.cue_branch_active,
            "binding_road": self.binding_road,
            "iterations": dict(self.iterations),
        }


@dataclass(frozen=True)
class FeasibleRegion:
    """
    !!! note "Summary"
        Latency-bandwidth pairs `(L, B)` with `L * B >= zeta` and `B <= coherence_bandwidth`, optionally capped at `L <= max_latency`.
    """

    zeta_star_lower: float
    coherence_bandwidth: float
    max_latency: Optional[float] = None

    @property
    def min_latency(self) -> float:
        return self.zeta_star_lower / self.coherence_bandwidth

    @property
    def min_bandwidth(self) -> Optional[float]:
        """Smallest usable bandwidth under the latency cap, or `None` without a cap."""
        return None if self.max_latency is None else self.zeta_star_lower / self.max_latency

    @property
    def is_empty(self) -> bool:
        return self.max_latency is not None and self.min_latency > self.max_latency

    def latency_at(self, bandwidth: Union[float, NDArray[np.float64]]) -> Union[float, NDArray[np.float64]]:
        """Boundary latency `zeta / B`."""
        return self.zeta_star_lower / bandwidth

    def contains(self, latency: float, bandwidth: float) -> bool:
        if bandwidth > self.coherence_bandwidth or latency * bandwidth < self.zeta_star_lower * (1 - 1e-12):
            return False
        return self.max_latency is None or latency <= self.max_latency

    def to_dict(self) -> dict[str, Any]:
        return {
            "zeta_star_lower": self.zeta_star_lower,
            "coherence_bandwidth": self.coherence_bandwidth,
            "max_latency": self.max_latency,
            "min_latency": self.min_latency,
            "min_bandwidth": self.min_bandwidth,
        }


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Surplus functions                                                     ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def f_sp(zeta: float, a: float, b: float, theta: float) -> SurplusSP:
    r"""
    !!! note "Summary"
        Information surplus of an SP frame of `zeta` symbols over the target `theta`, with its derivative.

    Params:
        zeta (float):
            Frame size, `> 0`.
        a (float):
            SP merging coefficient, `1 / (1 + D)`.
        b (float):
            Reliability penalty `Qinv(epsilon) * log2 e`.
        theta (float):
            Target bits.

    Returns:
        (SurplusSP):
            `(f - theta, df/dzeta)`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Target met near 166 symbols"}
        >>> from v2v_urllc.frame_design.algorithms import f_sp
        >>> value, slope = f_sp(166.0, 1 / 54.333, 6.15298, 256.0)
        >>> abs(value) < 1.0, slope > 0
        (True, True)

        ```

    ??? equation "Calculation"
        $$
        f_{SP}(\zeta) = \zeta \log_2(1 + \bar{a} \zeta) - b \sqrt{\zeta}
        $$
    """
    if not zeta > 0:
        raise ValueError(generate_error_message("zeta", str(zeta), ["> 0"]))
    x = a * zeta
    value = zeta * math.log2(1.0 + x) - b * math.sqrt(zeta) - theta
    slope = math.log2(1.0 + x) + x / ((1.0 + x) * LN2) - b / (2.0 * math.sqrt(zeta))
    return SurplusSP(value, slope)


def _rp_terms(eta: Any, zeta: Any, a: float, b: float) -> tuple[Any, Any, Any, Any]:
    """Value and partials of `f_RP`, vectorised over `eta`."""
    m = 1.0 - eta
    x = a * eta * zeta
    log_term = np.log2(1.0 + x)
    value = m * zeta * log_term - b * np.sqrt(m * zeta)
    d_zeta = m * log_term + m * x / ((1.0 + x) * LN2) - 0.5 * b * np.sqrt(m / zeta)
    d_eta = -zeta * log_term + m * a * zeta**2 / ((1.0 + x) * LN2) + 0.5 * b * np.sqrt(zeta / m)
    d2_eta = (
        -2.0 * a * zeta**2 / ((1.0 + x) * LN2)
        - m * a**2 * zeta**3 / ((1.0 + x) ** 2 * LN2)
        + 0.25 * b * np.sqrt(zeta) * m ** (-1.5)
    )
    return value, d_zeta, d_eta, d2_eta


@typechecked
def f_rp(eta: float, zeta: float, a: float, b: float, theta: float) -> SurplusRP:
    r"""
    !!! note "Summary"
        Information surplus of an RP frame with pilot fraction `eta`, with the partials Algorithm-style solvers need.

    ???+ abstract "Details"
        At fixed `zeta` the surplus rises from `-theta` at `eta = 0`, peaks at an interior fraction, and returns towards `-theta` as `eta -> 1`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Edges of the pilot fraction"}
        >>> from v2v_urllc.frame_design.algorithms import f_rp
        >>> round(f_rp(1 - 1e-12, 200.0, 0.04, 6.15, 256.0).value, 3)
        -256.0
        >>> f_rp(0.01, 246.5, 2 / 53.333, 6.15298, 256.0).d_eta > 0
        True

        ```

    ??? equation "Calculation"
        $$
        f_{RP}(\eta, \zeta) = (1 - \eta) \zeta \log_2(1 + \bar{a} \eta \zeta) - b \sqrt{(1 - \eta) \zeta}
        $$
    """
    if not 0 < eta < 1:
        raise ValueError(generate_error_message("eta", str(eta), ["0 < eta < 1"]))
    if not zeta > 0:
        raise ValueError(generate_error_message("zeta", str(zeta), ["> 0"]))
    value, d_zeta, d_eta, d2_eta = _rp_terms(eta, zeta, a, b)
    return SurplusRP(float(value) - theta, float(d_zeta), float(d_eta), float(d2_eta))


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Root finding                                                          ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _safeguarded_newton(
    func: Callable[[float], tuple[float, float]],
    x0: float,
    lo: float,
    hi: float,
    tol: float,
    name: str,
) -> tuple[float, int, list[float]]:
    """
    Newton iteration for an increasing crossing `func(lo) < 0 < func(hi)`. Iterates leaving the bracket are replaced by the midpoint; stops when a step is at most `tol`.
    """
    x = x0 if lo < x0 < hi else 0.5 * (lo + hi)
    history: list[float] = [x]
    for iteration in range(1, NEWTON_MAX_ITER + 1):
        value, slope = func(x)
        if value == 0.0:
            return x, iteration, history
        if value < 0:
            lo = x
        else:
            hi = x
        step = x - value / slope if slope != 0 and math.isfinite(slope) else math.nan
        if not lo < step < hi:
            step = 0.5 * (lo + hi)
        history.append(step)
        if abs(step - x) <= tol:
            return step, iteration, history
        x = step
    raise ConvergenceError(f"{name}: Newton iteration did not converge", (lo, hi), NEWTON_MAX_ITER)


def _upper_bracket(func: Callable[[float], tuple[float, float]], start: float, name: str) -> float:
    hi = max(2.0 * start, 1.0)
    for _ in range(BRACKET_MAX_DOUBLINGS):
        if func(hi)[0] > 0:
            return hi
        hi *= 2.0
    raise ConvergenceError(f"{name}: no upper bracket found", (start, hi), BRACKET_MAX_DOUBLINGS)


@typechecked
def solve_zeta_sp(a: float, b: float, theta: float, start: float, tol: float = 1e-4) -> tuple[float, int, list[float]]:
    """
    !!! note "Summary"
        Root of `f_SP(zeta) = theta`, returned with the iteration count and the iterates.
    """

    def func(z: float) -> tuple[float, float]:
        return tuple(f_sp(z, a, b, theta))  # type: ignore[return-value]

    start = start if start > 0 else 1.0
    hi = _upper_bracket(func, start, "solve_zeta_sp")
    return _safeguarded_newton(func, start, 0.0, hi, tol, "solve_zeta_sp")


@typechecked
def solve_zeta_rp(eta: float, a: float, b: float, theta: float, start: float, tol: float = 1e-4) -> tuple[float, int]:
    """
    !!! note "Summary"
        Root in `zeta` of `f_RP(eta, zeta) = theta` at a fixed pilot fraction.
    """

    def func(z: float) -> tuple[float, float]:
        s = f_rp(eta, z, a, b, theta)
        return s.value, s.d_zeta

    start = start if start > 0 else 1.0
    hi = _upper_bracket(func, start, "solve_zeta_rp")
    root, iterations, _ = _safeguarded_newton(func, start, 0.0, hi, tol, "solve_zeta_rp")
    return root, iterations


def _eta_bracket(zeta: float, a: float, b: float) -> tuple[float, float]:
    """First sign change of `df/deta` from positive to negative on a uniform scan of `(0, 1)`."""
    grid = np.linspace(0.0, 1.0, ETA_SCAN_POINTS)[1:-1]
    _, _, d_eta, _ = _rp_terms(grid, zeta, a, b)
    if d_eta[0] <= 0:
        return ETA_FLOOR, float(grid[0])
    drops = np.nonzero((d_eta[:-1] > 0) & (d_eta[1:] <= 0))[0]
    if drops.size == 0:
        raise ConvergenceError("best_eta: the surplus has no interior maximum", (0.0, 1.0), ETA_SCAN_POINTS)
    i = int(drops[0])
    return float(grid[i]), float(grid[i + 1])


@typechecked
def best_eta(zeta: float, a: float, b: float, start: Optional[float] = None, tol: float = 1e-4) -> tuple[float, int]:
    """
    !!! note "Summary"
        Pilot fraction maximising `f_RP(., zeta)`, by Newton on `df/deta` with `d2f/deta2`.

    ???+ abstract "Details"
        The maximiser is bracketed by the first downward sign change of `df/deta`; `start` seeds Newton when it lies inside the bracket. The surplus target does not affect the maximiser.

    Returns:
        (tuple[float, int]):
            The maximiser and the Newton iteration count.
    """
    lo, hi = _eta_bracket(zeta, a, b)

    def func(e: float) -> tuple[float, float]:
        _, _, d_eta, d2_eta = _rp_terms(e, zeta, a, b)
        return -float(d_eta), -float(d2_eta)

    seed = start if start is not None else 0.5 * (lo + hi)
    root, iterations, _ = _safeguarded_newton(func, seed, lo, hi, tol, "best_eta")
    return root, iterations


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Frame design                                                          ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def merging_coefficients(config: ScenarioConfig, omega: OmegaTable) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    !!! note "Summary"
        Per-road merging coefficients `(a_RP, a_SP) = (2 / D, 1 / (1 + D))`, so that the worst-case bounds read `a_RP * eta * zeta` and `a_SP * zeta`.

    Raises:
        (ValueError):
            If some road sees no interference at all, which leaves the RP bound unbounded.
    """
    d = interference_sum(config, omega)
    if np.any(d <= 0):
        raise ValueError("Worst-case interference is zero on some road; the RP frame size is unbounded below.")
    return 2.0 / d, 1.0 / (1.0 + d)


@typechecked
def cue_floor_sp(config: ScenarioConfig, omega: OmegaTable) -> float:
    """
    !!! note "Summary"
        Smallest SP frame size meeting the CUE worst-case target: `Theta_C (A + K psi^2 Omega_C2B_N Omega_C2B_P) / psi^2`.
    """
    psi2 = config.power_ratio**2
    a = v2b_interference_sum(config, omega)
    return config.cue_frame_threshold * (a + config.num_cues * psi2 * omega.c2b_n * omega.c2b_p) / psi2


@typechecked
def cue_product_rp(config: ScenarioConfig, omega: OmegaTable) -> float:
    """
    !!! note "Summary"
        Smallest RP pilot length `eta * zeta` meeting the CUE worst-case target: `Theta_C A / (2 psi^2)`.
    """
    return config.cue_frame_threshold * v2b_interference_sum(config, omega) / (2.0 * config.power_ratio**2)


def _ceil(value: float) -> float:
    return float(math.ceil(value - 1e-9))


@typechecked
def solve_frame_sp(config: ScenarioConfig, omega: OmegaTable) -> FrameDesign:
    r"""
    !!! note "Summary"
        Minimum SP frame size.

    ???+ abstract "Details"
        Each road is solved by Newton from the CUE floor. The result is the largest per-road root or the CUE floor, whichever is larger, then rounded up to a whole symbol.

    Params:
        config (ScenarioConfig):
            Scenario.
        omega (OmegaTable):
            Distance moments.

    Raises:
        (ConvergenceError):
            If a Newton loop exhausts its budget.

    Returns:
        (FrameDesign):
            The SP design.

    ??? equation "Calculation"
        $$
        \zeta^{SP}_* = \max\left\{ \max_u \zeta^{SP}_u, \ \frac{\bar{\Theta}^C (A + K \psi^2 \Omega^{C2B}_N \Omega^{C2B}_P)}{\psi^2} \right\}
        $$
    """
    a_rp, a_sp = merging_coefficients(config, omega)
    b = info_bits_coefficient(config.reliability)
    theta = config.info_threshold
    floor = cue_floor_sp(config, omega)
    roots: dict[float, tuple[float, int, list[float]]] = {}
    for a in np.unique(a_sp):
        roots[float(a)] = solve_zeta_sp(float(a), b, theta, floor, config.mu_zeta)
    per_road = [roots[float(a)][0] for a in a_sp]
    binding = int(np.argmax(per_road))
    zeta_v = per_road[binding]
    zeta_lower = max(zeta_v, floor)
    _, iterations, history = roots[float(a_sp[binding])]
    log.debug("SP frame: per-road roots %s, CUE floor %.4f, %d Newton steps", per_road, floor, iterations)
    return FrameDesign(
        scheme=PilotKind.SP,
        eta=0.0,
        zeta=_ceil(zeta_lower),
        zeta_lower=zeta_lower,
        a_rp=tuple(float(x) for x in a_rp),
        a_sp=tuple(float(x) for x in a_sp),
        b=b,
        cue_branch_active=floor > zeta_v,
        binding_road=binding + 1,
        iterations={"newton_zeta": iterations},
        trace=tuple({"step": float(t), "zeta": float(z)} for t, z in enumerate(history)),
    )


def _bisect_road(a: float, b: float, theta: float, product_c: float, mu_zeta: float, mu_eta: float) -> tuple[float, float, list[dict[str, float]], dict[str, int]]:
    eta_min, eta_max = 0.0, 1.0
    trace: list[dict[str, float]] = []
    counts = {"bisection": 0, "newton_zeta": 0, "newton_eta": 0}
    eta_prime = 0.5
    for w in range(BISECTION_MAX_STEPS):
        eta_w = 0.5 * (eta_min + eta_max)
        start = product_c / eta_w if product_c > 0 else 1.0
        zeta_w, t = solve_zeta_rp(eta_w, a, b, theta, start, mu_zeta)
        eta_prime, delta = best_eta(zeta_w, a, b, start=eta_w, tol=mu_eta)
        if eta_prime <= eta_w:
            eta_max = eta_w
        else:
            eta_min = eta_w
        counts["bisection"] = w + 1
        counts["newton_zeta"] = max(counts["newton_zeta"], t)
        counts["newton_eta"] = max(counts["newton_eta"], delta)
        trace.append(
            {"step": float(w), "eta_min": eta_min, "eta_max": eta_max, "eta_w": eta_w, "zeta": zeta_w, "eta_prime": eta_prime}
        )
        if abs(eta_max - eta_min) <= mu_eta:
            break
    else:
        raise ConvergenceError("solve_frame_rp: bisection on eta did not converge", (eta_min, eta_max), BISECTION_MAX_STEPS)
    eta_star = min(max(eta_prime, ETA_FLOOR), 1.0 - ETA_FLOOR)
    zeta_star, _ = solve_zeta_rp(eta_star, a, b, theta, trace[-1]["zeta"], mu_zeta)
    return eta_star, zeta_star, trace, counts


def _solve_cue_branch(
    a: float, b: float, theta: float, product_c: float, zeta_v: float, eta_v: float, mu_zeta: float, mu_eta: float
) -> tuple[float, float, int]:
    """
    Smallest `zeta` whose best pilot fraction subject to `eta * zeta >= product_c` meets the payload.

    At each `zeta` the constrained maximiser is `max(best_eta(zeta), product_c / zeta)` because the surplus is unimodal in `eta`, and the surplus at that fraction increases with `zeta`.
    """
    eta_cap = 1.0 - ETA_FLOOR
    newton_eta = 0

    def fraction(z: float) -> tuple[float, bool]:
        nonlocal newton_eta
        free, steps = best_eta(z, a, b, tol=mu_eta)
        newton_eta = max(newton_eta, steps)
        pinned = product_c / z
        return (min(pinned, eta_cap), True) if pinned > free else (free, False)

    def func(z: float) -> tuple[float, float]:
        eta, pinned = fraction(z)
        s = f_rp(eta, z, a, b, theta)
        # On the pinned arc eta moves with zeta; elsewhere the eta partial vanishes at the maximiser.
        return s.value, s.d_zeta - s.d_eta * product_c / z**2 if pinned else s.d_zeta

    lo = max(zeta_v, product_c / eta_cap)
    hi = _upper_bracket(func, max(product_c / eta_v, lo), "solve_frame_rp")
    zeta, _, _ = _safeguarded_newton(func, 0.5 * (lo + hi), lo, hi, mu_zeta, "solve_frame_rp")
    # The safeguarded step may stop just short of the crossing.
    while func(zeta)[0] < 0:
        zeta += mu_zeta
    eta, _ = fraction(zeta)
    return eta, zeta, newton_eta


@typechecked
def solve_frame_rp(config: ScenarioConfig, omega: OmegaTable) -> FrameDesign:
    r"""
    !!! note "Summary"
        Minimum RP frame size and its pilot fraction.

    ???+ abstract "Details"
        Every road is solved by bisection on `eta`; the road with the largest frame size binds and gives `(eta_V, zeta_V)`. With `P_C = Theta_C A / (2 psi^2)` the minimum CUE pilot length:

        - if `eta_V * zeta_V >= P_C` the design is `(eta_V, zeta_V)`;
        - otherwise the frame size is the smallest `zeta` meeting the payload with `eta = max(best_eta(zeta), P_C / zeta)`, so the design satisfies both constraints, and `cue_branch_active` is set.

        The terminal bracket width and the iterates are kept in `trace`.

    Params:
        config (ScenarioConfig):
            Scenario.
        omega (OmegaTable):
            Distance moments.

    Raises:
        (ConvergenceError):
            If the bisection or a Newton loop exhausts its budget, or if the returned design misses the CUE pilot length.

    Returns:
        (FrameDesign):
            The RP design.
    """
    a_rp, a_sp = merging_coefficients(config, omega)
    b = info_bits_coefficient(config.reliability)
    theta = config.info_threshold
    product_c = cue_product_rp(config, omega)
    solved: dict[float, tuple[float, float, list[dict[str, float]], dict[str, int]]] = {}
    for a in np.unique(a_rp):
        solved[float(a)] = _bisect_road(float(a), b, theta, product_c, config.mu_zeta, config.mu_eta)
    per_road = [solved[float(a)][1] for a in a_rp]
    binding = int(np.argmax(per_road))
    a_bind = float(a_rp[binding])
    eta_v, zeta_v, trace, counts = solved[a_bind]
    log.debug("RP frame: per-road sizes %s, eta %.5f, CUE product %.4f", per_road, eta_v, product_c)

    cue_branch = eta_v * zeta_v < product_c
    if cue_branch:
        eta_out, zeta_lower, delta = _solve_cue_branch(a_bind, b, theta, product_c, zeta_v, eta_v, config.mu_zeta, config.mu_eta)
        counts = {**counts, "newton_eta_cue": delta}
        log.info("RP frame fixed by the CUE constraint: eta %.5f, zeta %.3f", eta_out, zeta_lower)
    else:
        eta_out, zeta_lower = eta_v, zeta_v
    if eta_out * zeta_lower < product_c * (1.0 - 1e-9):
        raise ConvergenceError(
            f"solve_frame_rp: pilot length {eta_out * zeta_lower:.6g} is below the CUE requirement {product_c:.6g}",
            (eta_out, zeta_lower),
            counts.get("bisection", 0),
        )
    return FrameDesign(
        scheme=PilotKind.RP,
        eta=eta_out,
        zeta=_ceil(zeta_lower),
        zeta_lower=zeta_lower,
        a_rp=tuple(float(x) for x in a_rp),
        a_sp=tuple(float(x) for x in a_sp),
        b=b,
        cue_branch_active=cue_branch,
        binding_road=binding + 1,
        iterations=counts,
        trace=tuple(trace),
    )


@typechecked
def solve_frame_rp_at(config: ScenarioConfig, omega: OmegaTable, zeta: float) -> FrameDesign:
    """
    !!! note "Summary"
        RP design at an imposed frame size, typically the SP one: the pilot fraction maximising the payload of the binding road.
    """
    a_rp, a_sp = merging_coefficients(config, omega)
    b = info_bits_coefficient(config.reliability)
    binding = int(np.argmin(a_rp))
    eta, delta = best_eta(zeta, float(a_rp[binding]), b, tol=config.mu_eta)
    return FrameDesign(
        scheme=PilotKind.RP,
        eta=eta,
        zeta=zeta,
        zeta_lower=zeta,
        a_rp=tuple(float(x) for x in a_rp),
        a_sp=tuple(float(x) for x in a_sp),
        b=b,
        binding_road=binding + 1,
        iterations={"newton_eta": delta},
    )


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Latency and complexity                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def feasible_region(frame: FrameDesign, coherence_bandwidth: float, max_latency: Optional[float] = None) -> FeasibleRegion:
    """
    !!! note "Summary"
        Latency-bandwidth region of a frame design; the minimum latency is `zeta / B_C`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Superimposed pilots at 166 symbols"}
        >>> from v2v_urllc.frame_design.algorithms import FrameDesign, feasible_region
        >>> from v2v_urllc.sinr_bounds.algorithms import PilotKind
        >>> frame = FrameDesign(PilotKind.SP, 0.0, 166.0, 165.9, (0.03,) * 4, (0.018,) * 4, 6.15)
        >>> round(feasible_region(frame, 500e3).min_latency * 1e3, 3)
        0.332

        ```
    """
    if not coherence_bandwidth > 0:
        raise ValueError(generate_error_message("coherence_bandwidth", str(coherence_bandwidth), ["> 0"]))
    if max_latency is not None and not max_latency > 0:
        raise ValueError(generate_error_message("max_latency", str(max_latency), ["> 0"]))
    return FeasibleRegion(frame.zeta, coherence_bandwidth, max_latency)


@typechecked
def algorithm_complexity(config: ScenarioConfig) -> dict[str, float]:
    """
    !!! note "Summary"
        Complexity orders of the frame design: `log2(Z_zeta)` for SP and `log2(1 / mu_eta) * log2(Z_zeta Z_eta)` for RP, with `Z = log10(1 / mu)` the precision in digits.
    """
    z_zeta = math.log10(1.0 / config.mu_zeta)
    z_eta = math.log10(1.0 / config.mu_eta)
    return {
        "precision_zeta_digits": z_zeta,
        "precision_eta_digits": z_eta,
        "order_sp": math.log2(z_zeta),
        "order_rp": math.log2(1.0 / config.mu_eta) * math.log2(z_zeta * z_eta),
        "bisection_steps": float(math.ceil(math.log2(1.0 / config.mu_eta))),
    }
