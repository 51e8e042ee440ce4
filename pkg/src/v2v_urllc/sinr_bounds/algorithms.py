# ============================================================================ #
#                                                                              #
#     Title: SINR Bound Algorithms                                             #
#     Purpose: Instance-level and worst-case lower bounds on the SINR of V2V   #
#         pairs and CUEs under regular and superimposed pilots.                #
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
    Two tiers of SINR bound are provided.

    - The instance bounds `gamma_v_instance()` and `gamma_c_instance()` average the massive-MIMO SINR over the random pilot collisions of one drop. They depend on the large-scale gains and the powers, and are what the power allocation optimises.
    - The worst-case bounds `gamma_v_worstcase()` and `gamma_c_worstcase()` further average over the vehicle density and the path loss with every transmitter at full power. They depend only on the scenario and the Omega table, and are what the frame design uses.

    The pilot-collision-conditioned SINRs `chi_conditional_sinr_v()` and `chi_conditional_sinr_c()` are exposed for Monte Carlo validation of the first tier. The noise term vanishes for many antennas and is omitted throughout.
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
from dataclasses import dataclass
from enum import Enum
from typing import Any, Union

# ## Python Third Party Imports ----
import numpy as np
from numpy.typing import NDArray
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.geometry.algorithms import ROAD_IDS, RoadRelation, Topology, road_relation
from v2v_urllc.pathloss.algorithms import FadingModel, LinkGains, OmegaTable, link_gains
from v2v_urllc.utils.config import ScenarioConfig
from v2v_urllc.utils.errors import generate_error_message


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "PilotKind",
    "PilotScheme",
    "PowerAllocation",
    "power_bounds",
    "equal_power_allocation",
    "gamma_v_from_gains",
    "gamma_c_from_gains",
    "gamma_v_instance",
    "gamma_c_instance",
    "chi_conditional_sinr_v",
    "chi_conditional_sinr_c",
    "interference_sum",
    "v2b_interference_sum",
    "gamma_v_worstcase",
    "gamma_c_worstcase",
]


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Types                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class PilotKind(str, Enum):
    RP = "RP"
    SP = "SP"


def _kind(scheme: Union["PilotScheme", PilotKind, str]) -> PilotKind:
    if isinstance(scheme, PilotScheme):
        return scheme.kind
    try:
        return PilotKind(scheme)
    except ValueError as exc:
        raise ValueError(generate_error_message("scheme", str(scheme), [k.value for k in PilotKind])) from exc


@dataclass(frozen=True)
class PilotScheme:
    """
    !!! note "Summary"
        Pilot layout of one coherence block of `tau_sp` symbols.

    ???+ abstract "Details"
        - `RP`: the first `tau_rp` symbols carry orthogonal pilots, the remaining `tau_sp - tau_rp` carry data.
        - `SP`: pilots and data are superimposed over all `tau_sp` symbols; `tau_rp` is unused and stored as `0`.

        Lengths are floats so a continuous frame design can be evaluated before rounding.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Blocklengths"}
        >>> from v2v_urllc.sinr_bounds.algorithms import PilotScheme
        >>> PilotScheme.regular(40, 200).blocklength
        160.0
        >>> PilotScheme.superimposed(166).blocklength
        166.0

        ```
    """

    kind: PilotKind
    tau_sp: float
    tau_rp: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", PilotKind(self.kind))
        object.__setattr__(self, "tau_sp", float(self.tau_sp))
        object.__setattr__(self, "tau_rp", float(self.tau_rp))
        if self.kind is PilotKind.RP:
            if not 0 < self.tau_rp < self.tau_sp:
                raise ValueError(generate_error_message("tau_rp", str(self.tau_rp), [f"0 < tau_rp < {self.tau_sp}"]))
        else:
            if not self.tau_sp >= 1:
                raise ValueError(generate_error_message("tau_sp", str(self.tau_sp), [">= 1"]))
            object.__setattr__(self, "tau_rp", 0.0)

    @classmethod
    def regular(cls, tau_rp: float, tau_sp: float) -> "PilotScheme":
        return cls(PilotKind.RP, tau_sp, tau_rp)

    @classmethod
    def superimposed(cls, tau_sp: float) -> "PilotScheme":
        return cls(PilotKind.SP, tau_sp)

    @classmethod
    def from_frame(cls, kind: Union[PilotKind, str], zeta: float, eta: float = 0.0) -> "PilotScheme":
        """Builds the scheme of a frame design: `tau_sp = zeta` and, for RP, `tau_rp = eta * zeta`."""
        kind = PilotKind(kind)
        if kind is PilotKind.RP:
            return cls.regular(eta * zeta, zeta)
        return cls.superimposed(zeta)

    @property
    def pilot_length(self) -> float:
        """Pilot symbols `tau` entering the bound numerators."""
        return self.tau_rp if self.kind is PilotKind.RP else self.tau_sp

    @property
    def blocklength(self) -> float:
        """Data blocklength `lambda`."""
        return self.tau_sp - self.tau_rp if self.kind is PilotKind.RP else self.tau_sp

    @property
    def eta(self) -> float:
        return self.tau_rp / self.tau_sp

    def supports(self, num_cues: int) -> bool:
        """Whether the orthogonal CUE pilots fit: `K <= tau`."""
        return num_cues <= self.pilot_length

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind.value, "tau_sp": self.tau_sp, "tau_rp": self.tau_rp}


@dataclass(frozen=True, eq=False)
class PowerAllocation:
    """
    !!! note "Summary"
        Signal powers `p_v`, `q_v` (pilot) per V2V transmitter and `p_c`, `q_c` per CUE, in watts.
    """

    p_v: NDArray[np.float64]
    q_v: NDArray[np.float64]
    p_c: NDArray[np.float64]
    q_c: NDArray[np.float64]

    def __post_init__(self) -> None:
        for name in ("p_v", "q_v", "p_c", "q_c"):
            value = np.asarray(getattr(self, name), dtype=np.float64).reshape(-1)
            if np.any(value < 0) or not np.all(np.isfinite(value)):
                raise ValueError(generate_error_message(name, str(value), ["finite and >= 0"]))
            object.__setattr__(self, name, value)
        if self.p_v.shape != self.q_v.shape or self.p_c.shape != self.q_c.shape:
            raise ValueError("Signal and pilot power vectors must have matching lengths.")

    @property
    def num_pairs(self) -> int:
        return int(self.p_v.size)

    @property
    def num_cues(self) -> int:
        return int(self.p_c.size)

    def within_bounds(self, config: ScenarioConfig, scheme: Union["PilotScheme", PilotKind, str], rtol: float = 1e-9) -> bool:
        pv_max, pc_max = power_bounds(config, scheme)
        v_ok = bool(np.all(self.p_v <= pv_max * (1 + rtol)) and np.all(self.q_v <= pv_max * (1 + rtol)))
        c_ok = bool(np.all(self.p_c <= pc_max * (1 + rtol)) and np.all(self.q_c <= pc_max * (1 + rtol)))
        return v_ok and c_ok

    def scaled(self, factor: float) -> "PowerAllocation":
        return PowerAllocation(self.p_v * factor, self.q_v * factor, self.p_c * factor, self.q_c * factor)

    def to_dict(self) -> dict[str, list[float]]:
        return {name: getattr(self, name).tolist() for name in ("p_v", "q_v", "p_c", "q_c")}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PowerAllocation":
        return cls(**{name: np.asarray(data[name], dtype=np.float64) for name in ("p_v", "q_v", "p_c", "q_c")})


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Power boxes                                                           ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def power_bounds(config: ScenarioConfig, scheme: Union[PilotScheme, PilotKind, str]) -> tuple[float, float]:
    """
    !!! note "Summary"
        Upper power bounds `(V2V, CUE)` for each of the signal and pilot powers.

    ???+ abstract "Details"
        Under SP the pilot and the data share the transmitter, so each is capped at half its maximum.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Default powers"}
        >>> from v2v_urllc.sinr_bounds.algorithms import power_bounds
        >>> from v2v_urllc.utils.config import ScenarioConfig
        >>> power_bounds(ScenarioConfig(), "RP"), power_bounds(ScenarioConfig(), "SP")
        ((0.2, 0.2), (0.1, 0.1))

        ```
    """
    share: float = 1.0 if _kind(scheme) is PilotKind.RP else 0.5
    return share * config.max_power_v, share * config.max_power_c


@typechecked
def equal_power_allocation(
    topology: Topology,
    config: ScenarioConfig,
    scheme: Union[PilotScheme, PilotKind, str],
) -> PowerAllocation:
    """
    !!! note "Summary"
        Unoptimised baseline: every signal and pilot power at its box upper bound.
    """
    pv_max, pc_max = power_bounds(config, scheme)
    return PowerAllocation(
        p_v=np.full(topology.num_pairs, pv_max),
        q_v=np.full(topology.num_pairs, pv_max),
        p_c=np.full(topology.num_cues, pc_max),
        q_c=np.full(topology.num_cues, pc_max),
    )


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Instance bounds                                                       ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _check_shapes(gains: LinkGains, alloc: PowerAllocation) -> None:
    if gains.num_pairs != alloc.num_pairs or gains.num_cues != alloc.num_cues:
        raise ValueError(
            f"Allocation sized ({alloc.num_pairs} pairs, {alloc.num_cues} CUEs) does not match the drop "
            f"({gains.num_pairs} pairs, {gains.num_cues} CUEs)."
        )


def _safe_ratio(num: NDArray[np.float64], den: NDArray[np.float64]) -> NDArray[np.float64]:
    """Elementwise `num / den` with an empty interference sum mapped to `inf`."""
    out = np.full_like(num, np.inf)
    np.divide(num, den, out=out, where=den > 0)
    return out


@typechecked
def gamma_v_from_gains(gains: LinkGains, alloc: PowerAllocation, scheme: PilotScheme) -> NDArray[np.float64]:
    """
    !!! note "Summary"
        Per-pair bound `Gamma_V` from precomputed gains. See `gamma_v_instance()`.
    """
    _check_shapes(gains, alloc)
    w = gains.v2v**2
    c = gains.c2v**2
    pq = alloc.p_v * alloc.q_v
    own = np.diag(w) if w.size else np.zeros(0)
    phi = w @ pq - pq * own + c @ (alloc.p_c * alloc.q_c)
    if scheme.kind is PilotKind.SP:
        phi = phi + w @ alloc.p_v**2 + c @ alloc.p_c**2
    return _safe_ratio(scheme.pilot_length * pq * own, phi)


@typechecked
def gamma_c_from_gains(gains: LinkGains, alloc: PowerAllocation, scheme: PilotScheme) -> NDArray[np.float64]:
    """
    !!! note "Summary"
        Per-CUE bound `Gamma_C` from precomputed gains. See `gamma_c_instance()`.
    """
    _check_shapes(gains, alloc)
    v2b = gains.v2b**2
    c2b = gains.c2b**2
    den = np.full(gains.num_cues, float(np.sum(alloc.p_v * alloc.q_v * v2b)))
    if scheme.kind is PilotKind.SP:
        den = den + float(np.sum(alloc.p_c**2 * c2b)) + float(np.sum(alloc.p_v**2 * v2b))
    return _safe_ratio(scheme.pilot_length * alloc.p_c * alloc.q_c * c2b, den)


@typechecked
def gamma_v_instance(
    topology: Topology,
    fading: FadingModel,
    alloc: PowerAllocation,
    scheme: PilotScheme,
) -> NDArray[np.float64]:
    r"""
    !!! note "Summary"
        Lower bound on the SINR of every V2V pair, averaged over the random pilot collisions.

    ???+ abstract "Details"
        The interference `Phi` sums, over every other transmitter, the product of its signal and pilot powers times the squared gain to the receiver; pilot collisions happen with probability `1 / tau`, which cancels against the pilot processing gain. Under SP the denominator also collects the squared data powers of all transmitters including the own one, since superimposed data contaminates the estimate. A pair without any interferer (possible only under RP) has an unbounded SINR, reported as `inf`.

    Params:
        topology (Topology):
            The drop.
        fading (FadingModel):
            Path-loss constants.
        alloc (PowerAllocation):
            Powers for every transmitter.
        scheme (PilotScheme):
            Pilot scheme and lengths.

    Returns:
        (NDArray[np.float64]):
            `Gamma_V` per pair, linear.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Isolated pair"}
        >>> import numpy as np
        >>> from v2v_urllc.geometry.algorithms import Topology
        >>> from v2v_urllc.pathloss.algorithms import FadingModel
        >>> from v2v_urllc.sinr_bounds.algorithms import PilotScheme, PowerAllocation, gamma_v_instance
        >>> topo = Topology(receivers=[[0.0, -100.0]], transmitters=[[12.0, -100.0]], pair_roads=[1], cues=np.zeros((0, 2)))
        >>> alloc = PowerAllocation(p_v=[0.2], q_v=[0.2], p_c=[], q_c=[])
        >>> gamma_v_instance(topo, FadingModel(), alloc, PilotScheme.regular(10, 100))
        array([inf])

        ```

    ??? equation "Calculation"
        $$
        \Gamma^V_r = \frac{\tau p_r q_r \beta_{rr}^2}{\Phi_r}, \quad
        \Phi^{RP}_r = \sum_{t \neq r} p_t q_t \beta_{rt}^2 + \sum_k p^C_k q^C_k (\beta^{C}_{rk})^2
        $$

        $$
        \Phi^{SP}_r = \Phi^{RP}_r + \sum_t p_t^2 \beta_{rt}^2 + \sum_k (p^C_k)^2 (\beta^{C}_{rk})^2
        $$
    """
    return gamma_v_from_gains(link_gains(topology, fading), alloc, scheme)


@typechecked
def gamma_c_instance(
    topology: Topology,
    fading: FadingModel,
    alloc: PowerAllocation,
    scheme: PilotScheme,
) -> NDArray[np.float64]:
    r"""
    !!! note "Summary"
        Lower bound on the SINR of every CUE at the base station, averaged over the pilot collisions with V2V transmitters.

    ???+ abstract "Details"
        CUE pilots are mutually orthogonal, so only V2V transmitters contaminate. Without V2V pairs the RP bound is unbounded (`inf`). Under SP with no pairs and a single CUE the bound reduces to `tau * q / p`.

    ??? equation "Calculation"
        $$
        \Gamma^{C,RP}_k = \frac{\tau p^C_k q^C_k (\beta^{C2B}_k)^2}{\sum_t p_t q_t (\beta^{V2B}_t)^2}
        $$

        $$
        \Gamma^{C,SP}_k = \frac{\tau p^C_k q^C_k (\beta^{C2B}_k)^2}{\sum_t p_t q_t (\beta^{V2B}_t)^2 + \sum_{k'} (p^C_{k'})^2 (\beta^{C2B}_{k'})^2 + \sum_t p_t^2 (\beta^{V2B}_t)^2}
        $$
    """
    return gamma_c_from_gains(link_gains(topology, fading), alloc, scheme)


# ---------------------------------------------------------------------------- #
#  Collision-conditioned SINRs                                              ####
# ---------------------------------------------------------------------------- #


@typechecked
def chi_conditional_sinr_v(
    gains: LinkGains,
    alloc: PowerAllocation,
    scheme: PilotScheme,
    pilots_v: NDArray[np.int64],
    pilots_c: NDArray[np.int64],
) -> NDArray[np.float64]:
    r"""
    !!! note "Summary"
        Asymptotic post-MRC SINR of every V2V pair for one realised pilot assignment.

    ???+ abstract "Details"
        Interferers contribute only when they share the pair's pilot index. Under SP the data of every transmitter adds a `p ** 2 / (tau q_r)` term whatever the pilots. Averaging `1 / gamma` over uniform pilot picks gives exactly `1 / Gamma_V`.

    ??? equation "Calculation"
        $$
        \gamma_r = \frac{p_r \beta_{rr}^2}{\sum_{t \neq r} \chi_{rt} p_t \frac{q_t}{q_r} \beta_{rt}^2 + \sum_k \chi_{rk} p^C_k \frac{q^C_k}{q_r} (\beta^C_{rk})^2 + [\text{SP}] \sum_t \frac{p_t^2}{\tau q_r} \beta_{rt}^2 + [\text{SP}] \sum_k \frac{(p^C_k)^2}{\tau q_r} (\beta^C_{rk})^2}
        $$
    """
    _check_shapes(gains, alloc)
    w = gains.v2v**2
    c = gains.c2v**2
    chi_v = (pilots_v[:, None] == pilots_v[None, :]).astype(np.float64)
    np.fill_diagonal(chi_v, 0.0)
    chi_c = (pilots_v[:, None] == pilots_c[None, :]).astype(np.float64)
    interference = (chi_v * w) @ (alloc.p_v * alloc.q_v) + (chi_c * c) @ (alloc.p_c * alloc.q_c)
    if scheme.kind is PilotKind.SP:
        interference = interference + (w @ alloc.p_v**2 + c @ alloc.p_c**2) / scheme.tau_sp
    own = np.diag(w) if w.size else np.zeros(0)
    return _safe_ratio(alloc.p_v * alloc.q_v * own, interference)


@typechecked
def chi_conditional_sinr_c(
    gains: LinkGains,
    alloc: PowerAllocation,
    scheme: PilotScheme,
    pilots_v: NDArray[np.int64],
    pilots_c: NDArray[np.int64],
) -> NDArray[np.float64]:
    """
    !!! note "Summary"
        Asymptotic post-MRC SINR of every CUE for one realised pilot assignment. Counterpart of `chi_conditional_sinr_v()`.
    """
    _check_shapes(gains, alloc)
    v2b = gains.v2b**2
    c2b = gains.c2b**2
    chi = (pilots_c[:, None] == pilots_v[None, :]).astype(np.float64)
    interference = chi @ (alloc.p_v * alloc.q_v * v2b)
    if scheme.kind is PilotKind.SP:
        interference = interference + (float(np.sum(alloc.p_c**2 * c2b)) + float(np.sum(alloc.p_v**2 * v2b))) / scheme.tau_sp
    return _safe_ratio(alloc.p_c * alloc.q_c * c2b, interference)


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Worst-case bounds                                                     ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def interference_sum(config: ScenarioConfig, omega: OmegaTable) -> NDArray[np.float64]:
    r"""
    !!! note "Summary"
        Merged worst-case interference `D_u` seen by a V2V receiver on each road, dimensionless.

    ???+ abstract "Details"
        The same-road count `rho_u S_R - 2` is clamped at zero on sparse roads. Both perpendicular roads contribute, the parallel road once, and the `K` CUEs at power ratio `psi` twice.

    Returns:
        (NDArray[np.float64]):
            `D` for roads `1..4`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Unit table"}
        >>> from v2v_urllc.pathloss.algorithms import OmegaTable
        >>> from v2v_urllc.sinr_bounds.algorithms import interference_sum
        >>> from v2v_urllc.utils.config import ScenarioConfig
        >>> unit = OmegaTable(*(1.0,) * 8)
        >>> interference_sum(ScenarioConfig(avg_density=(0.0025,) * 4, num_cues=4), unit)
        array([22., 22., 22., 22.])

        ```

    ??? equation "Calculation"
        $$
        D_u = \left[ (\rho_u S_R - 2)^+ \Omega^{V2V}_{N,1} + \sum_{j \perp u} \rho_j S_R \Omega^{V2V}_{N,2} + \rho_{j'} S_R \Omega^{V2V}_{N,3} + 2 K \psi^2 \Omega^{C2V}_N \right] \Omega^{V2V}_{P,1}
        $$
    """
    s_r: float = config.road_area
    psi2: float = config.power_ratio**2
    out = np.zeros(len(ROAD_IDS))
    for idx, u in enumerate(ROAD_IDS):
        total: float = max(config.avg_density[u - 1] * s_r - 2.0, 0.0) * omega.v2v_n1
        for j in ROAD_IDS:
            relation = road_relation(u, j)
            if relation is RoadRelation.PERPENDICULAR:
                total += config.avg_density[j - 1] * s_r * omega.v2v_n2
            elif relation is RoadRelation.PARALLEL:
                total += config.avg_density[j - 1] * s_r * omega.v2v_n3
        total += 2.0 * config.num_cues * psi2 * omega.c2v_n
        out[idx] = total * omega.v2v_p1
    return out


@typechecked
def v2b_interference_sum(config: ScenarioConfig, omega: OmegaTable) -> float:
    """
    !!! note "Summary"
        Worst-case V2V-to-base-station interference `A = sum_u rho_u S_R Omega_V2B_N Omega_C2B_P` seen by every CUE.
    """
    return float(sum(config.avg_density) * config.road_area * omega.v2b_n * omega.c2b_p)


def _frame_pilot(scheme: PilotKind, eta: float, zeta: float) -> float:
    if not zeta > 0:
        raise ValueError(generate_error_message("zeta", str(zeta), ["> 0"]))
    if scheme is PilotKind.RP:
        if not 0 < eta < 1:
            raise ValueError(generate_error_message("eta", str(eta), ["0 < eta < 1"]))
        return eta * zeta
    return zeta


@typechecked
def gamma_v_worstcase(
    config: ScenarioConfig,
    omega: OmegaTable,
    scheme: Union[PilotScheme, PilotKind, str],
    eta: float,
    zeta: float,
) -> NDArray[np.float64]:
    r"""
    !!! note "Summary"
        Worst-case averaged `Gamma_V` for a receiver on each road at frame size `zeta` and, for RP, pilot fraction `eta`.

    Params:
        config (ScenarioConfig):
            Densities, CUE count and power ratio.
        omega (OmegaTable):
            Distance moments.
        scheme (Union[PilotScheme, PilotKind, str]):
            `"RP"` or `"SP"`. Only the kind is used.
        eta (float):
            Pilot fraction `tau_rp / zeta`; ignored for SP.
        zeta (float):
            Frame size in symbols.

    Raises:
        (ValueError):
            If `zeta <= 0`, or for RP if `eta` is outside `(0, 1)`.

    Returns:
        (NDArray[np.float64]):
            Bound per road, linear. `inf` under RP when the road sees no interference at all.

    ??? equation "Calculation"
        $$
        \bar{\Gamma}^{V,RP}_u = \frac{2 \tau_{RP}}{D_u}, \qquad \bar{\Gamma}^{V,SP}_u = \frac{\tau_{SP}}{1 + D_u}
        $$
    """
    kind = _kind(scheme)
    tau = _frame_pilot(kind, eta, zeta)
    d = interference_sum(config, omega)
    if kind is PilotKind.RP:
        return _safe_ratio(np.full_like(d, 2.0 * tau), d)
    return tau / (1.0 + d)


@typechecked
def gamma_c_worstcase(
    config: ScenarioConfig,
    omega: OmegaTable,
    scheme: Union[PilotScheme, PilotKind, str],
    eta: float,
    zeta: float,
) -> float:
    r"""
    !!! note "Summary"
        Worst-case averaged `Gamma_C`, common to all CUEs.

    ???+ abstract "Details"
        The RP bound exceeds the SP bound at the same `zeta` only when `eta > A / (2 (A + B))`, where `B = K psi ** 2 Omega_C2B_N Omega_C2B_P`.

    ??? equation "Calculation"
        $$
        \bar{\Gamma}^{C,RP} = \frac{2 \tau_{RP} \psi^2}{A}, \qquad \bar{\Gamma}^{C,SP} = \frac{\tau_{SP} \psi^2}{A + K \psi^2 \Omega^{C2B}_N \Omega^{C2B}_P}
        $$
    """
    kind = _kind(scheme)
    tau = _frame_pilot(kind, eta, zeta)
    psi2: float = config.power_ratio**2
    a = v2b_interference_sum(config, omega)
    if kind is PilotKind.RP:
        return float("inf") if a == 0 else 2.0 * tau * psi2 / a
    den = a + config.num_cues * psi2 * omega.c2b_n * omega.c2b_p
    return float("inf") if den == 0 else tau * psi2 / den
