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
import unittest

# ## Python Third Party Imports ----
from pytest import raises

# ## Local First Party Imports ----
from v2v_urllc.utils.errors import (
    ConvergenceError,
    QuadratureError,
    StaleReportError,
    assert_within_tolerance,
    generate_error_message,
    is_within_tolerance,
    relative_error,
)


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Testing                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


# ---------------------------------------------------------------------------- #
# Tests                                                                     ####
# ---------------------------------------------------------------------------- #


class TestErrors(unittest.TestCase):

    def test_generate_error_message(self) -> None:
        options = {"RP": ["regular"], "SP": ["superimposed"]}
        msg = generate_error_message("scheme", "XP", options)
        assert "Invalid 'scheme'" in msg
        assert "XP" in msg
        assert "'RP': ['regular']" in msg

    def test_generate_error_message_list(self) -> None:
        assert generate_error_message("scheme", "XP", ["RP", "SP"]) == "Invalid 'scheme': XP. Options: ['RP', 'SP']"

    def test_relative_error(self) -> None:
        assert math.isclose(relative_error(101.0, 100.0), 0.01)
        assert relative_error(0.5, 0.0) == 0.5
        assert relative_error(math.inf, math.inf) == 0.0

    def test_is_within_tolerance(self) -> None:
        assert is_within_tolerance(166.0 * 1.05, 166.0, rtol=0.1)
        assert not is_within_tolerance(200.0, 166.0, rtol=0.1)
        assert is_within_tolerance(1.0, 1.05, rtol=0.0, atol=0.1)
        assert is_within_tolerance(math.inf, math.inf)

    def test_is_within_tolerance_negative(self) -> None:
        with raises(ValueError, match="non-negative"):
            is_within_tolerance(1.0, 1.0, rtol=-1.0)

    def test_assert_within_tolerance(self) -> None:
        assert_within_tolerance(1.0, 1.0 + 1e-9)
        with raises(AssertionError, match="custom"):
            assert_within_tolerance(1.0, 1.1, msg="custom")
        with raises(AssertionError) as e:
            assert_within_tolerance(1.0, 1.2, rtol=0.1)
        assert "rtol=0.1" in str(e.value)

    def test_convergence_error(self) -> None:
        exc = ConvergenceError("Bisection stalled", (0.1, 0.2), 20)
        assert isinstance(exc, RuntimeError)
        assert exc.bracket == (0.1, 0.2)
        assert exc.iterations == 20
        assert "iterations=20" in str(exc)

    def test_quadrature_error(self) -> None:
        exc = QuadratureError("v2v_n1", 1.0, 0.5, 1e-6)
        assert exc.entry == "v2v_n1"
        assert exc.relative_error == 0.5
        assert "v2v_n1" in str(exc)

    def test_stale_report_is_value_error(self) -> None:
        with raises(ValueError):
            raise StaleReportError("old report")
