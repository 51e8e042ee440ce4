# ============================================================================ #
#                                                                              #
#     Title: Finite-Blocklength Algorithms                                     #
#     Purpose: Normal-approximation achievable rate, channel dispersion and    #
#         the Gaussian Q machinery.                                            #
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
    The normal approximation of the maximal coding rate at blocklength `lambda` and block error probability `epsilon` is `log2(1 + gamma) - sqrt(V / lambda) * Qinv(epsilon)`. This module provides that rate, the number of information bits it carries, the channel dispersion `V` and the Gaussian tail function with its inverse.
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
import math
from dataclasses import dataclass
from typing import Union

# ## Python Third Party Imports ----
import numpy as np
from numpy.typing import NDArray
from scipy.special import erfc, log_ndtr
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.utils.errors import ConvergenceError, generate_error_message


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "LOG2E",
    "RateQuery",
    "q_function",
    "q_inv",
    "dispersion",
    "rate",
    "info_bits",
    "info_bits_coefficient",
    "sinr_for_info_bits",
    "db_to_linear",
    "linear_to_db",
]


# ---------------------------------------------------------------------------- #
# Constants                                                                 ####
# ---------------------------------------------------------------------------- #


LOG2E: float = math.log2(math.e)
Q_INV_TOL: float = 1e-13
Q_INV_MAX_ITER: int = 200
Q_INV_BRACKET: tuple[float, float] = (-40.0, 40.0)

Numeric = Union[float, NDArray[np.float64]]


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Types                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@dataclass(frozen=True)
class RateQuery:
    """
    !!! note "Summary"
        One evaluation point of the normal approximation: SINR `gamma` (linear), blocklength `blocklength = L * B` in symbols and error probability `epsilon`.
    """

    gamma: float
    blocklength: float
    epsilon: float

    def __post_init__(self) -> None:
        if not self.gamma >= 0:
            raise ValueError(generate_error_message("gamma", str(self.gamma), [">= 0"]))
        if not self.blocklength >= 1:
            raise ValueError(generate_error_message("blocklength", str(self.blocklength), [">= 1"]))
        if not 0 < self.epsilon < 1:
            raise ValueError(generate_error_message("epsilon", str(self.epsilon), ["0 < epsilon < 1"]))


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Gaussian tail                                                         ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def q_function(x: Numeric) -> Numeric:
    r"""
    !!! note "Summary"
        Gaussian tail probability `Q(x) = P(N(0, 1) > x)`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Median"}
        >>> from v2v_urllc.fbl.algorithms import q_function
        >>> q_function(0.0)
        0.5

        ```

    ??? equation "Calculation"
        $$
        Q(x) = \frac{1}{2} \operatorname{erfc}\left( \frac{x}{\sqrt{2}} \right)
        $$
    """
    out = 0.5 * erfc(np.asarray(x, dtype=np.float64) / math.sqrt(2.0))
    return float(out) if np.ndim(x) == 0 else out


@typechecked
def q_inv(epsilon: float) -> float:
    r"""
    !!! note "Summary"
        Inverse of the Gaussian tail function.

    ???+ abstract "Details"
        Newton's method on `log Q(x) - log epsilon`, which stays well conditioned deep in the tail, started at `0` and safeguarded by a bracket: an iterate that leaves the bracket is replaced by the bracket midpoint. The bracket shrinks around the root at every step.

    Params:
        epsilon (float):
            Tail probability, `0 < epsilon < 1`.

    Raises:
        (ValueError):
            If `epsilon` is outside `(0, 1)`.
        (ConvergenceError):
            If the iteration budget is exhausted.

    Returns:
        (float):
            `x` such that `Q(x) = epsilon`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Common values"}
        >>> from v2v_urllc.fbl.algorithms import q_inv
        >>> abs(q_inv(0.5)) < 1e-12
        True
        >>> round(q_inv(1e-5), 5)
        4.26489

        ```
    """
    if not 0 < epsilon < 1:
        raise ValueError(generate_error_message("epsilon", str(epsilon), ["0 < epsilon < 1"]))
    target: float = math.log(epsilon)
    lo, hi = Q_INV_BRACKET
    x: float = 0.0
    for iteration in range(1, Q_INV_MAX_ITER + 1):
        log_q = float(log_ndtr(-x))
        residual = log_q - target
        if residual == 0.0:
            return x
        if residual > 0:
            lo = x
        else:
            hi = x
        # d/dx log Q(x) = -phi(x) / Q(x)
        slope = -math.exp(-0.5 * x * x - 0.5 * math.log(2 * math.pi) - log_q)
        step_to = x - residual / slope
        if not lo < step_to < hi:
            step_to = 0.5 * (lo + hi)
        if abs(step_to - x) <= Q_INV_TOL * max(1.0, abs(x)):
            return step_to
        x = step_to
    raise ConvergenceError("q_inv did not converge", (lo, hi), Q_INV_MAX_ITER)


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Rates                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def dispersion(gamma: Numeric, high_snr: bool = False) -> Numeric:
    r"""
    !!! note "Summary"
        Channel dispersion of the complex AWGN channel, in squared bits per symbol.

    ???+ abstract "Details"
        With `high_snr=True` the dispersion is replaced by its limit `(log2 e) ** 2`, which lower-bounds the rate.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Exact and limiting values"}
        >>> from v2v_urllc.fbl.algorithms import dispersion
        >>> dispersion(0.0)
        0.0
        >>> round(dispersion(9.0), 4), round(dispersion(9.0, high_snr=True), 4)
        (2.0606, 2.0814)

        ```

    ??? equation "Calculation"
        $$
        V = \left( 1 - \frac{1}{(1 + \gamma)^2} \right) (\log_2 e)^2
        $$
    """
    g = np.asarray(gamma, dtype=np.float64)
    if high_snr:
        out = np.full_like(g, LOG2E**2)
    else:
        out = (1.0 - 1.0 / (1.0 + g) ** 2) * LOG2E**2
    return float(out) if np.ndim(gamma) == 0 else out


@typechecked
def rate(query: RateQuery, high_snr: bool = False) -> float:
    r"""
    !!! note "Summary"
        Normal-approximation achievable rate in bits per symbol. May be negative.

    Params:
        query (RateQuery):
            SINR, blocklength and error probability.
        high_snr (bool):
            Use the high-SINR dispersion.<br>
            Default: `False`

    Returns:
        (float):
            The rate.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Short packet at 20 dB"}
        >>> from v2v_urllc.fbl.algorithms import RateQuery, rate
        >>> round(rate(RateQuery(gamma=100.0, blocklength=200.0, epsilon=1e-5), high_snr=True), 4)
        6.2231

        ```

    ??? equation "Calculation"
        $$
        R(\gamma, \lambda, \epsilon) = \log_2(1 + \gamma) - \sqrt{\frac{V}{\lambda}} Q^{-1}(\epsilon)
        $$
    """
    v = dispersion(query.gamma, high_snr=high_snr)
    return math.log2(1.0 + query.gamma) - math.sqrt(v / query.blocklength) * q_inv(query.epsilon)


@typechecked
def info_bits_coefficient(epsilon: float) -> float:
    """
    !!! note "Summary"
        The penalty coefficient `b = Qinv(epsilon) * log2 e` in bits per square-root symbol.
    """
    return q_inv(epsilon) * LOG2E


@typechecked
def info_bits(gamma: Numeric, blocklength: float, epsilon: float) -> Numeric:
    r"""
    !!! note "Summary"
        Information bits delivered over `blocklength` symbols with the high-SINR dispersion. Not clamped at zero.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Zero and high SINR"}
        >>> from v2v_urllc.fbl.algorithms import info_bits
        >>> round(info_bits(0.0, 100.0, 1e-5), 3)
        -61.529
        >>> round(info_bits(1e3, 166.0, 1e-5), 1)
        1575.3

        ```

    ??? equation "Calculation"
        $$
        I = \lambda \log_2(1 + \Gamma) - b \sqrt{\lambda}, \quad b = Q^{-1}(\epsilon) \log_2 e
        $$
    """
    if not blocklength >= 1:
        raise ValueError(generate_error_message("blocklength", str(blocklength), [">= 1"]))
    g = np.asarray(gamma, dtype=np.float64)
    out = blocklength * np.log2(1.0 + g) - info_bits_coefficient(epsilon) * math.sqrt(blocklength)
    return float(out) if np.ndim(gamma) == 0 else out


@typechecked
def sinr_for_info_bits(bits: float, blocklength: float, epsilon: float) -> float:
    """
    !!! note "Summary"
        Inverse of `info_bits()` in the SINR: the `Gamma` delivering exactly `bits` bits.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Round trip"}
        >>> from v2v_urllc.fbl.algorithms import info_bits, sinr_for_info_bits
        >>> gamma = sinr_for_info_bits(256.0, 166.0, 1e-5)
        >>> round(info_bits(gamma, 166.0, 1e-5), 9)
        256.0

        ```
    """
    exponent = (bits + info_bits_coefficient(epsilon) * math.sqrt(blocklength)) / blocklength
    return 2.0**exponent - 1.0


@typechecked
def db_to_linear(value_db: Numeric) -> Numeric:
    """
    !!! note "Summary"
        `10 ** (dB / 10)`.
    """
    out = 10.0 ** (np.asarray(value_db, dtype=np.float64) / 10.0)
    return float(out) if np.ndim(value_db) == 0 else out


@typechecked
def linear_to_db(value: Numeric) -> Numeric:
    """
    !!! note "Summary"
        `10 * log10(value)`; zero maps to `-inf`.
    """
    with np.errstate(divide="ignore"):
        out = 10.0 * np.log10(np.asarray(value, dtype=np.float64))
    return float(out) if np.ndim(value) == 0 else out
