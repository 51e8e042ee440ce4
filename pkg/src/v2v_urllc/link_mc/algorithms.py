# ============================================================================ #
#                                                                              #
#     Title: Link-Level Monte Carlo                                            #
#     Purpose: Antenna-level simulation of pilot assignment, LMMSE channel     #
#         estimation and MRC combining for one drop.                           #
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
    The frame design and power allocation rest on asymptotic SINR expressions that hold for many antennas. This module draws the actual small-scale channels of a drop, runs the pilot phase, estimates the channels with the scalar-weight LMMSE estimator and measures the SINR after maximum ratio combining, so that the asymptotic expressions can be validated.

???+ abstract "Details"
    - Small-scale fading is i.i.d. `CN(0, 1)` per antenna; a link of large-scale gain `beta` has channel `sqrt(beta) h`.
    - Pilots are the columns of the `tau x tau` DFT matrix, so `a^H a = tau` and distinct pilots are orthogonal.
    - CUEs hold distinct pilots; each V2V transmitter picks one uniformly at random.
    - Under RP the pilot phase carries pilots only. Under SP every transmitter superimposes its data on its pilot, the estimate is contaminated by that data, and receivers subtract the known pilots before combining the data.
    - The estimate splits as `g_hat = omega (g + e)`. The empirical SINR of a link is the mean desired power `p omega^2 ||g||^4` over the mean of every other post-combining term: the own error projection `p |omega e^H g|^2`, the other transmitters and the noise.
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
from dataclasses import dataclass
from typing import Any, Optional, Sequence

# ## Python Third Party Imports ----
import numpy as np
from numpy.random import Generator as RandomGenerator
from numpy.typing import NDArray
from scipy.linalg import dft
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.frame_design.algorithms import FrameDesign
from v2v_urllc.pathloss.algorithms import LinkGains
from v2v_urllc.sinr_bounds.algorithms import (
    PilotKind,
    PilotScheme,
    PowerAllocation,
    chi_conditional_sinr_c,
    chi_conditional_sinr_v,
)
from v2v_urllc.utils.errors import generate_error_message


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "LinkDrawConfig",
    "PilotAssignment",
    "ChannelDraw",
    "ChannelEstimate",
    "EmpiricalSINR",
    "complex_normal",
    "pilot_matrix",
    "assign_pilots",
    "draw_channels",
    "lmmse_estimate",
    "combining_powers",
    "empirical_sinr",
]


# ---------------------------------------------------------------------------- #
# Constants                                                                 ####
# ---------------------------------------------------------------------------- #


log: logging.Logger = logging.getLogger(__name__)

HARDENING_MIN_ANTENNAS: int = 64


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Types                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@dataclass(frozen=True)
class LinkDrawConfig:
    """
    !!! note "Summary"
        Antenna-level settings of a link simulation.

    ???+ abstract "Details"
        - `num_rx_antennas` is `N`, the antennas of every V2V receiver; `num_bs_antennas` is `M`.
        - `noise_power` is `sigma^2` in watts.
        - `frame_length` is `tau_SP` and `pilot_length` is `tau_RP`; the latter is ignored under SP, where pilots span the whole frame.
        - `num_symbol_trials` is the number of pilot-phase noise and data realisations per channel draw.
    """

    num_rx_antennas: int = 256
    num_bs_antennas: int = 256
    noise_power: float = 1e-13
    scheme: str = "SP"
    frame_length: int = 166
    pilot_length: int = 0
    num_symbol_trials: int = 4

    def __post_init__(self) -> None:
        object.__setattr__(self, "scheme", PilotKind(self.scheme).value)
        if self.num_rx_antennas < 1 or self.num_bs_antennas < 1:
            raise ValueError("Antenna counts must be at least 1.")
        if not self.noise_power > 0:
            raise ValueError(generate_error_message("noise_power", str(self.noise_power), ["> 0"]))
        if self.num_symbol_trials < 1:
            raise ValueError(generate_error_message("num_symbol_trials", str(self.num_symbol_trials), [">= 1"]))
        if self.scheme == PilotKind.RP.value and not 0 < self.pilot_length < self.frame_length:
            raise ValueError(
                generate_error_message("pilot_length", str(self.pilot_length), [f"0 < pilot_length < {self.frame_length}"])
            )
        if self.frame_length < 1:
            raise ValueError(generate_error_message("frame_length", str(self.frame_length), [">= 1"]))

    @property
    def pilot_scheme(self) -> PilotScheme:
        if self.scheme == PilotKind.RP.value:
            return PilotScheme.regular(self.pilot_length, self.frame_length)
        return PilotScheme.superimposed(self.frame_length)

    @property
    def num_pilots(self) -> int:
        """Orthogonal pilot sequences available, equal to the pilot length."""
        return int(self.pilot_scheme.pilot_length)

    @classmethod
    def from_frame(cls, frame: FrameDesign, **overrides: Any) -> "LinkDrawConfig":
        """Integer pilot and frame lengths of a frame design."""
        zeta = int(math.ceil(frame.zeta))
        tau_rp = max(1, min(zeta - 1, int(round(frame.eta * zeta)))) if frame.scheme is PilotKind.RP else 0
        return cls(scheme=frame.scheme.value, frame_length=zeta, pilot_length=tau_rp, **overrides)


@dataclass(frozen=True, eq=False)
class PilotAssignment:
    """Pilot index per V2V transmitter and per CUE."""

    pilots_v: NDArray[np.int64]
    pilots_c: NDArray[np.int64]
    num_pilots: int

    def collisions(self) -> NDArray[np.bool_]:
        """`[r, t]` is true when transmitters `r != t` share a pilot."""
        out = self.pilots_v[:, None] == self.pilots_v[None, :]
        np.fill_diagonal(out, False)
        return out


@dataclass(frozen=True, eq=False)
class ChannelDraw:
    """
    !!! note "Summary"
        One realisation of every small-scale channel of a drop, with its pilot assignment.

    ???+ abstract "Details"
        `v2v[r, t]` is the `N`-vector from transmitter `t` to receiver `r`, `c2v[r, k]` from CUE `k` to receiver `r`, `v2b[t]` and `c2b[k]` the `M`-vectors to the base station. Large-scale gains are already applied.
    """

    v2v: NDArray[np.complex128]
    c2v: NDArray[np.complex128]
    v2b: NDArray[np.complex128]
    c2b: NDArray[np.complex128]
    pilots: PilotAssignment
    gains: LinkGains


@dataclass(frozen=True, eq=False)
class ChannelEstimate:
    v2v: NDArray[np.complex128]
    c2b: NDArray[np.complex128]
    omega_v: NDArray[np.float64]
    omega_c: NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class EmpiricalSINR:
    """
    !!! note "Summary"
        Per-draw post-combining powers and the matching closed-form SINRs.

    ???+ abstract "Details"
        All arrays are indexed `[draw, link]`. Powers are averaged over the symbol trials of each draw.
    """

    desired_v: NDArray[np.float64]
    interference_v: NDArray[np.float64]
    desired_c: NDArray[np.float64]
    interference_c: NDArray[np.float64]
    closed_form_v: NDArray[np.float64]
    closed_form_c: NDArray[np.float64]

    @property
    def sinr_v(self) -> NDArray[np.float64]:
        return self.desired_v / self.interference_v

    @property
    def sinr_c(self) -> NDArray[np.float64]:
        return self.desired_c / self.interference_c

    @property
    def pooled_v(self) -> NDArray[np.float64]:
        """Mean desired over mean interference across all draws."""
        return self.desired_v.mean(axis=0) / self.interference_v.mean(axis=0)

    @property
    def pooled_c(self) -> NDArray[np.float64]:
        return self.desired_c.mean(axis=0) / self.interference_c.mean(axis=0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "pooled_v": self.pooled_v.tolist(),
            "pooled_c": self.pooled_c.tolist(),
            "num_draws": int(self.desired_v.shape[0]),
        }


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Draws                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def complex_normal(rng: RandomGenerator, shape: Sequence[int]) -> NDArray[np.complex128]:
    """
    !!! note "Summary"
        I.i.d. `CN(0, 1)` samples: real and imaginary parts independent with variance `1/2` each.
    """
    return math.sqrt(0.5) * (rng.standard_normal(tuple(shape)) + 1j * rng.standard_normal(tuple(shape)))


@typechecked
def pilot_matrix(num_pilots: int) -> NDArray[np.complex128]:
    """
    !!! note "Summary"
        Orthogonal pilot book: column `l` is pilot `l`, every entry has unit modulus.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Orthogonality"}
        >>> import numpy as np
        >>> from v2v_urllc.link_mc.algorithms import pilot_matrix
        >>> a = pilot_matrix(4)
        >>> np.allclose(a.conj().T @ a, 4 * np.eye(4))
        True

        ```
    """
    return dft(num_pilots).astype(np.complex128)


@typechecked
def assign_pilots(num_pairs: int, num_cues: int, num_pilots: int, rng: RandomGenerator) -> PilotAssignment:
    """
    !!! note "Summary"
        CUEs get `K` distinct pilots; every V2V transmitter an independent uniform pick among the `tau` pilots.

    Raises:
        (ValueError):
            If `K > tau`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Every pilot taken by a CUE"}
        >>> from v2v_urllc.link_mc.algorithms import assign_pilots
        >>> from v2v_urllc.utils.data import get_random_generator
        >>> sorted(assign_pilots(3, 4, 4, get_random_generator(1)).pilots_c.tolist())
        [0, 1, 2, 3]

        ```
    """
    if num_cues > num_pilots:
        raise ValueError(f"Cannot give {num_cues} CUEs distinct pilots out of {num_pilots}.")
    pilots_c = rng.permutation(num_pilots)[:num_cues].astype(np.int64)
    pilots_v = rng.integers(0, num_pilots, size=num_pairs).astype(np.int64)
    return PilotAssignment(pilots_v=pilots_v, pilots_c=pilots_c, num_pilots=num_pilots)


@typechecked
def draw_channels(
    gains: LinkGains,
    config: LinkDrawConfig,
    rng: RandomGenerator,
    pilots: Optional[PilotAssignment] = None,
) -> ChannelDraw:
    """
    !!! note "Summary"
        Draw every small-scale channel of a drop and, unless given, a random pilot assignment.
    """
    n, m = config.num_rx_antennas, config.num_bs_antennas
    p, k = gains.num_pairs, gains.num_cues
    if pilots is None:
        pilots = assign_pilots(p, k, config.num_pilots, rng)
    return ChannelDraw(
        v2v=np.sqrt(gains.v2v)[:, :, None] * complex_normal(rng, (p, p, n)),
        c2v=np.sqrt(gains.c2v)[:, :, None] * complex_normal(rng, (p, k, n)),
        v2b=np.sqrt(gains.v2b)[:, None] * complex_normal(rng, (p, m)),
        c2b=np.sqrt(gains.c2b)[:, None] * complex_normal(rng, (k, m)),
        pilots=pilots,
        gains=gains,
    )


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Estimation                                                            ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _transmit_matrix(
    pilots: NDArray[np.complex128],
    pilot_power: NDArray[np.float64],
    data: Optional[NDArray[np.complex128]],
    data_power: NDArray[np.float64],
) -> NDArray[np.complex128]:
    """Rows are the `tau`-symbol pilot-phase sequences sent by each transmitter."""
    x = np.sqrt(pilot_power)[:, None] * pilots
    if data is not None:
        x = x + np.sqrt(data_power)[:, None] * data
    return x


@typechecked
def lmmse_estimate(
    draw: ChannelDraw,
    alloc: PowerAllocation,
    config: LinkDrawConfig,
    rng: RandomGenerator,
) -> ChannelEstimate:
    r"""
    !!! note "Summary"
        Run the pilot phase of one draw and estimate every own V2V channel and every CUE channel at the base station.

    ???+ abstract "Details"
        The received block is projected on the own pilot, `b = Y a^* / sqrt(tau)`, and scaled by the LMMSE weight `omega`, whose denominator holds the own pilot energy, the colliding pilot energies, the data contamination under SP and the noise.

    Params:
        draw (ChannelDraw):
            Channels and pilots.
        alloc (PowerAllocation):
            Signal and pilot powers.
        config (LinkDrawConfig):
            Scheme, lengths and noise power.
        rng (RandomGenerator):
            Source of the noise and, under SP, of the superimposed data.

    Returns:
        (ChannelEstimate):
            Estimates `g_hat` and weights `omega`, all in `(0, 1]`.

    ??? equation "Calculation"
        $$
        \hat{g}_r = \frac{\omega_r}{\sqrt{q_r \tau}} b_r, \quad \omega_r = \frac{q_r \tau \beta_{rr}}{q_r \tau \beta_{rr} + \sum_{t \neq r} \chi_{rt} q_t \tau \beta_{rt} + \sum_k \chi_{rk} q^C_k \tau \beta^C_{rk} + [\text{SP}] \left( \sum_t p_t \beta_{rt} + \sum_k p^C_k \beta^C_{rk} \right) + \sigma^2}
        $$
    """
    tau = config.num_pilots
    sp = config.scheme == PilotKind.SP.value
    book = pilot_matrix(tau)
    assignment = draw.pilots
    a_v = book[:, assignment.pilots_v].T
    a_c = book[:, assignment.pilots_c].T
    gains = draw.gains
    p, k = gains.num_pairs, gains.num_cues
    n, m = config.num_rx_antennas, config.num_bs_antennas
    sigma2 = config.noise_power

    data_v = complex_normal(rng, (p, tau)) if sp else None
    data_c = complex_normal(rng, (k, tau)) if sp else None
    x_v = _transmit_matrix(a_v, alloc.q_v, data_v, alloc.p_v)
    x_c = _transmit_matrix(a_c, alloc.q_c, data_c, alloc.p_c)

    y_v = np.einsum("rtn,tl->rnl", draw.v2v, x_v) + np.einsum("rkn,kl->rnl", draw.c2v, x_c)
    y_v = y_v + math.sqrt(sigma2) * complex_normal(rng, (p, n, tau))
    b_v = np.einsum("rnl,rl->rn", y_v, a_v.conj()) / math.sqrt(tau)

    chi_vv = assignment.collisions().astype(np.float64)
    chi_vc = (assignment.pilots_v[:, None] == assignment.pilots_c[None, :]).astype(np.float64)
    own = np.diag(gains.v2v) if p else np.zeros(0)
    signal_v = alloc.q_v * tau * own
    den_v = signal_v + (chi_vv * gains.v2v) @ (alloc.q_v * tau) + (chi_vc * gains.c2v) @ (alloc.q_c * tau) + sigma2
    if sp:
        den_v = den_v + gains.v2v @ alloc.p_v + gains.c2v @ alloc.p_c
    omega_v = signal_v / den_v
    g_hat_v = (omega_v / np.sqrt(alloc.q_v * tau))[:, None] * b_v

    y_c = draw.c2b.T @ x_c + draw.v2b.T @ x_v + math.sqrt(sigma2) * complex_normal(rng, (m, tau))
    b_c = (a_c.conj() @ y_c.T) / math.sqrt(tau)
    signal_c = alloc.q_c * tau * gains.c2b
    den_c = signal_c + chi_vc.T @ (alloc.q_v * tau * gains.v2b) + sigma2
    if sp:
        den_c = den_c + float(np.sum(alloc.p_c * gains.c2b)) + float(np.sum(alloc.p_v * gains.v2b))
    omega_c = signal_c / den_c
    g_hat_c = (omega_c / np.sqrt(alloc.q_c * tau))[:, None] * b_c
    return ChannelEstimate(v2v=g_hat_v, c2b=g_hat_c, omega_v=omega_v, omega_c=omega_c)


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Combining                                                             ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def combining_powers(
    draw: ChannelDraw,
    estimate: ChannelEstimate,
    alloc: PowerAllocation,
    noise_power: float,
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """
    !!! note "Summary"
        Desired and interference-plus-noise powers after MRC with the estimated channels, conditioned on the draw.

    ???+ abstract "Details"
        The desired power is the hardened part `p omega^2 ||g||^4`. The projection of the own estimation error, `p |(g_hat - omega g)^H g|^2`, is counted with the interference.

    Returns:
        (tuple[NDArray[np.float64], ...]):
            `(desired_v, interference_v, desired_c, interference_c)`.
    """
    p = draw.v2v.shape[0]
    own_v = draw.v2v[np.arange(p), np.arange(p)]
    error_v = estimate.v2v - estimate.omega_v[:, None] * own_v
    inner_vv = np.abs(np.einsum("rn,rtn->rt", estimate.v2v.conj(), draw.v2v)) ** 2
    inner_vc = np.abs(np.einsum("rn,rkn->rk", estimate.v2v.conj(), draw.c2v)) ** 2
    terms_v = inner_vv * alloc.p_v[None, :]
    others_v = terms_v.sum(axis=1) - (np.diag(terms_v) if p else np.zeros(0))
    desired_v = alloc.p_v * estimate.omega_v**2 * np.sum(np.abs(own_v) ** 2, axis=1) ** 2
    own_error_v = alloc.p_v * np.abs(np.sum(error_v.conj() * own_v, axis=1)) ** 2
    noise_v = noise_power * np.sum(np.abs(estimate.v2v) ** 2, axis=1)
    interference_v = others_v + own_error_v + inner_vc @ alloc.p_c + noise_v

    error_c = estimate.c2b - estimate.omega_c[:, None] * draw.c2b
    inner_cc = np.abs(estimate.c2b.conj() @ draw.c2b.T) ** 2
    inner_cv = np.abs(estimate.c2b.conj() @ draw.v2b.T) ** 2
    terms_c = inner_cc * alloc.p_c[None, :]
    others_c = terms_c.sum(axis=1) - (np.diag(terms_c) if terms_c.size else np.zeros(0))
    desired_c = alloc.p_c * estimate.omega_c**2 * np.sum(np.abs(draw.c2b) ** 2, axis=1) ** 2
    own_error_c = alloc.p_c * np.abs(np.sum(error_c.conj() * draw.c2b, axis=1)) ** 2
    noise_c = noise_power * np.sum(np.abs(estimate.c2b) ** 2, axis=1)
    interference_c = others_c + own_error_c + inner_cv @ alloc.p_v + noise_c
    return desired_v, interference_v, desired_c, interference_c


@typechecked
def empirical_sinr(
    draws: Sequence[ChannelDraw],
    alloc: PowerAllocation,
    config: LinkDrawConfig,
    rng: RandomGenerator,
) -> EmpiricalSINR:
    """
    !!! note "Summary"
        Measure post-MRC powers over many draws and pair them with the collision-conditioned closed forms.

    ???+ abstract "Details"
        Each draw is estimated `config.num_symbol_trials` times with fresh noise and data. Receivers with fewer than 64 antennas are outside the hardening regime the closed forms assume; a warning is logged.
    """
    if config.num_rx_antennas < HARDENING_MIN_ANTENNAS or config.num_bs_antennas < HARDENING_MIN_ANTENNAS:
        log.warning(
            "Link simulation with N=%d, M=%d antennas; channel hardening needs at least %d",
            config.num_rx_antennas,
            config.num_bs_antennas,
            HARDENING_MIN_ANTENNAS,
        )
    if not draws:
        raise ValueError("At least one channel draw is required.")
    scheme = config.pilot_scheme
    trials = config.num_symbol_trials
    out: dict[str, list[NDArray[np.float64]]] = {key: [] for key in ("dv", "iv", "dc", "ic", "fv", "fc")}
    for draw in draws:
        sums = [np.zeros(draw.gains.num_pairs), np.zeros(draw.gains.num_pairs)]
        sums += [np.zeros(draw.gains.num_cues), np.zeros(draw.gains.num_cues)]
        for _ in range(trials):
            estimate = lmmse_estimate(draw, alloc, config, rng)
            for acc, value in zip(sums, combining_powers(draw, estimate, alloc, config.noise_power)):
                acc += value
        for key, acc in zip(("dv", "iv", "dc", "ic"), sums):
            out[key].append(acc / trials)
        with np.errstate(divide="ignore"):
            out["fv"].append(chi_conditional_sinr_v(draw.gains, alloc, scheme, draw.pilots.pilots_v, draw.pilots.pilots_c))
            out["fc"].append(chi_conditional_sinr_c(draw.gains, alloc, scheme, draw.pilots.pilots_v, draw.pilots.pilots_c))
    return EmpiricalSINR(
        desired_v=np.vstack(out["dv"]),
        interference_v=np.vstack(out["iv"]),
        desired_c=np.vstack(out["dc"]),
        interference_c=np.vstack(out["ic"]),
        closed_form_v=np.vstack(out["fv"]),
        closed_form_c=np.vstack(out["fc"]),
    )
