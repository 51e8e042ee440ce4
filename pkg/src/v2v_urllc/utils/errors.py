# ============================================================================ #
#                                                                              #
#     Title: Error Utilities                                                   #
#     Purpose: Standardised error messages, tolerance checks and the domain    #
#         exception types raised by the solvers and integrators.               #
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

    Provides the error-reporting vocabulary shared by every module of the package.

    It contains the message formatter used by the option dispatchers, the relative-tolerance helpers used by the oracle checks and the unit tests, and the exception types raised when an iterative solver or an integrator cannot meet its tolerance.
"""


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Setup                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


## --------------------------------------------------------------------------- #
##  Imports                                                                 ####
## --------------------------------------------------------------------------- #


# ## Python StdLib Imports ----
import math
from typing import Mapping, Optional, Union

# ## Python Third Party Imports ----
from typeguard import typechecked


## --------------------------------------------------------------------------- #
##  Exports                                                                 ####
## --------------------------------------------------------------------------- #


__all__: list[str] = [
    "generate_error_message",
    "relative_error",
    "is_within_tolerance",
    "assert_within_tolerance",
    "ConvergenceError",
    "QuadratureError",
    "StaleReportError",
]


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Exceptions                                                            ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class ConvergenceError(RuntimeError):
    """
    !!! note "Summary"
        Raised when a safeguarded Newton or bisection loop exhausts its iteration budget.

    ???+ abstract "Details"
        The last bracket and the number of iterations performed are kept on the instance so that callers (and the harness error column) can report how far the solver got.
    """

    def __init__(self, message: str, bracket: tuple[float, float], iterations: int) -> None:
        super().__init__(f"{message} (bracket=[{bracket[0]:.6g}, {bracket[1]:.6g}], iterations={iterations})")
        self.bracket: tuple[float, float] = bracket
        self.iterations: int = iterations


class QuadratureError(RuntimeError):
    """
    !!! note "Summary"
        Raised when a numerical integral cannot reach its requested relative tolerance.
    """

    def __init__(self, entry: str, value: float, relative_error: float, tolerance: float) -> None:
        super().__init__(
            f"Quadrature for '{entry}' did not converge: value={value:.6g}, "
            f"estimated relative error={relative_error:.3g} > tolerance={tolerance:.3g}"
        )
        self.entry: str = entry
        self.value: float = value
        self.relative_error: float = relative_error
        self.tolerance: float = tolerance


class StaleReportError(ValueError):
    """
    !!! note "Summary"
        Raised when a traffic report is not strictly newer than the scheduler state.
    """


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Functions                                                             ####
#                                                                              #
# ---------------------------------------------------------------------------- #


## --------------------------------------------------------------------------- #
##  Error messages                                                          ####
## --------------------------------------------------------------------------- #


@typechecked
def generate_error_message(
    parameter_name: str,
    value_parsed: str,
    options: Union[Mapping[str, Union[tuple[str, ...], list[str], str]], tuple[str, ...], list[str]],
) -> str:
    r"""
    !!! note "Summary"
        Generates a formatted error message for an invalid option or out-of-range value.

    ???+ abstract "Details"
        Used by every dispatcher and validator in the package so that `ValueError` messages share one shape: the parameter name, the value received and what would have been accepted.

    Params:
        parameter_name (str):
            The name of the parameter or field being checked.
        value_parsed (str):
            The value that was received, already rendered as a string.
        options (Union[Mapping[str, Union[tuple[str, ...], list[str], str]], tuple[str, ...], list[str]]):
            The valid options, or a mapping from canonical option to its accepted aliases.

    Returns:
        (str):
            A formatted error message string.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Setup"}
        >>> from v2v_urllc.utils.errors import generate_error_message

        ```

        ```pycon {.py .python linenums="1" title="Example 1: Pilot scheme options"}
        >>> print(generate_error_message("scheme", "XP", ["RP", "SP"]))
        Invalid 'scheme': XP. Options: ['RP', 'SP']

        ```
    """
    return f"Invalid '{parameter_name}': {value_parsed}. Options: {options}"


## --------------------------------------------------------------------------- #
##  Tolerance checks                                                        ####
## --------------------------------------------------------------------------- #


@typechecked
def relative_error(measured: float, reference: float) -> float:
    r"""
    !!! note "Summary"
        Relative deviation of a measured value from a reference value.

    ???+ abstract "Details"
        When the reference is exactly zero the absolute deviation is returned instead, so that the helper stays finite for zero-valued oracles. Two infinities of the same sign compare as zero error.

    Params:
        measured (float):
            The value produced by the code under check.
        reference (float):
            The oracle value.

    Returns:
        (float):
            $|m - r| / |r|$, or $|m - r|$ when $r = 0$.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Setup"}
        >>> from v2v_urllc.utils.errors import relative_error

        ```

        ```pycon {.py .python linenums="1" title="Example 1: One percent off"}
        >>> print(f"{relative_error(101.0, 100.0):.3f}")
        0.010

        ```
    """
    if math.isinf(measured) and math.isinf(reference) and (measured > 0) == (reference > 0):
        return 0.0
    if reference == 0:
        return abs(measured)
    return abs(measured - reference) / abs(reference)


@typechecked
def is_within_tolerance(
    measured: float,
    reference: float,
    *,
    rtol: float = 1e-6,
    atol: float = 0.0,
) -> bool:
    r"""
    !!! note "Summary"
        Checks whether a measured value agrees with a reference to a relative and absolute tolerance.

    Params:
        measured (float):
            The value produced by the code under check.
        reference (float):
            The oracle value.
        rtol (float):
            Relative tolerance.
            Default: `1e-6`
        atol (float):
            Absolute tolerance, added to the relative band.
            Default: `0.0`

    Raises:
        (ValueError):
            If either tolerance is negative.

    Returns:
        (bool):
            `True` when $|m - r| \le atol + rtol \cdot |r|$.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Setup"}
        >>> from v2v_urllc.utils.errors import is_within_tolerance

        ```

        ```pycon {.py .python linenums="1" title="Example 1: Inside a ten percent band"}
        >>> is_within_tolerance(166.0 * 1.05, 166.0, rtol=0.10)
        True

        ```

        ```pycon {.py .python linenums="1" title="Example 2: Outside"}
        >>> is_within_tolerance(200.0, 166.0, rtol=0.10)
        False

        ```
    """
    if rtol < 0 or atol < 0:
        raise ValueError(f"Tolerances must be non-negative, got rtol={rtol}, atol={atol}.")
    if measured == reference:
        return True
    return abs(measured - reference) <= atol + rtol * abs(reference)


@typechecked
def assert_within_tolerance(
    measured: float,
    reference: float,
    msg: Optional[str] = None,
    *,
    rtol: float = 1e-6,
    atol: float = 0.0,
) -> None:
    r"""
    !!! note "Summary"
        Asserts that a measured value agrees with a reference within tolerance.

    Params:
        measured (float):
            The value produced by the code under check.
        reference (float):
            The oracle value.
        msg (Optional[str]):
            Message for the raised `AssertionError`.
            Default: `None`
        rtol (float):
            Relative tolerance.
            Default: `1e-6`
        atol (float):
            Absolute tolerance.
            Default: `0.0`

    Raises:
        (AssertionError):
            If the values disagree beyond the tolerance.

    Returns:
        (None):
            Nothing.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Setup"}
        >>> from v2v_urllc.utils.errors import assert_within_tolerance

        ```

        ```pycon {.py .python linenums="1" title="Example 1: Failing assertion"}
        >>> assert_within_tolerance(1.1, 1.0, rtol=0.01)
        Traceback (most recent call last):
            ...
        AssertionError: Assertion failed: 1.1 != 1.0 (rtol=0.01, atol=0.0)

        ```

    ??? tip "See Also"
        - [`is_within_tolerance()`][v2v_urllc.utils.errors.is_within_tolerance]
    """
    if not is_within_tolerance(measured, reference, rtol=rtol, atol=atol):
        raise AssertionError(msg if msg is not None else f"Assertion failed: {measured} != {reference} ({rtol=}, {atol=})")
