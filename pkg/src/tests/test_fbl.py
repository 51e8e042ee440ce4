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
import numpy as np
from parameterized import parameterized
from pytest import raises
from scipy.stats import norm

# ## Local First Party Imports ----
from tests.setup import name_func_flat_list
from v2v_urllc.fbl import (
    RateQuery,
    check_info_bits_shape,
    check_q_inv_round_trip,
    db_to_linear,
    dispersion,
    info_bits,
    info_bits_coefficient,
    linear_to_db,
    q_function,
    q_inv,
    rate,
    sinr_for_info_bits,
)


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Testing                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class TestQFunction(unittest.TestCase):

    def test_q_function_matches_scipy(self) -> None:
        x = np.linspace(-5, 8, 50)
        np.testing.assert_allclose(q_function(x), norm.sf(x), rtol=1e-12)

    @parameterized.expand([(1e-9,), (1e-5,), (1e-3,), (0.5,), (0.9,)], name_func=name_func_flat_list)
    def test_q_inv_matches_scipy(self, epsilon: float) -> None:
        assert abs(q_inv(epsilon) - norm.isf(epsilon)) <= 1e-9 * max(1.0, abs(norm.isf(epsilon)))

    def test_q_inv_known_value(self) -> None:
        assert round(q_inv(1e-5), 5) == 4.26489

    @parameterized.expand([(0.0,), (1.0,), (-0.1,)], name_func=name_func_flat_list)
    def test_q_inv_invalid(self, epsilon: float) -> None:
        with raises(ValueError, match="epsilon"):
            q_inv(epsilon)

    def test_round_trip_check(self) -> None:
        assert check_q_inv_round_trip()["result"] is True


class TestRate(unittest.TestCase):

    def test_dispersion_limits(self) -> None:
        assert dispersion(0.0) == 0.0
        assert dispersion(1e3) < dispersion(1e3, high_snr=True)
        assert abs(dispersion(1e6) - math.log2(math.e) ** 2) < 1e-9

    def test_high_snr_is_lower_bound(self) -> None:
        for gamma in (0.1, 1.0, 10.0, 100.0):
            query = RateQuery(gamma=gamma, blocklength=166.0, epsilon=1e-5)
            assert rate(query, high_snr=True) <= rate(query)

    def test_rate_value(self) -> None:
        query = RateQuery(gamma=100.0, blocklength=200.0, epsilon=1e-5)
        assert round(rate(query, high_snr=True), 4) == 6.2231

    def test_rate_query_validation(self) -> None:
        with raises(ValueError):
            RateQuery(gamma=-1.0, blocklength=10.0, epsilon=1e-5)
        with raises(ValueError):
            RateQuery(gamma=1.0, blocklength=0.5, epsilon=1e-5)
        with raises(ValueError):
            RateQuery(gamma=1.0, blocklength=10.0, epsilon=1.0)

    def test_info_bits_matches_rate(self) -> None:
        query = RateQuery(gamma=3.0, blocklength=166.0, epsilon=1e-5)
        assert abs(info_bits(3.0, 166.0, 1e-5) - 166.0 * rate(query, high_snr=True)) < 1e-9

    def test_info_bits_vectorised(self) -> None:
        values = info_bits(np.array([0.0, 1.0, 10.0]), 100.0, 1e-5)
        assert values.shape == (3,)
        assert values[0] < 0 < values[2]

    def test_info_bits_blocklength(self) -> None:
        with raises(ValueError):
            info_bits(1.0, 0.0, 1e-5)

    def test_coefficient(self) -> None:
        assert abs(info_bits_coefficient(1e-5) - q_inv(1e-5) * math.log2(math.e)) < 1e-12

    def test_reference_frame(self) -> None:
        # 166 symbols at the SINR that delivers 256 bits
        gamma = sinr_for_info_bits(256.0, 166.0, 1e-5)
        assert abs(info_bits(gamma, 166.0, 1e-5) - 256.0) < 1e-9
        assert 2.9 < gamma < 3.2

    def test_shape_check(self) -> None:
        report = check_info_bits_shape()
        assert report["result"] is True
        assert report["crossings"] == 1


class TestDecibels(unittest.TestCase):

    def test_db_round_trip(self) -> None:
        assert abs(db_to_linear(10.0) - 10.0) < 1e-12
        assert abs(linear_to_db(100.0) - 20.0) < 1e-12
        np.testing.assert_allclose(linear_to_db(db_to_linear(np.array([-3.0, 5.0]))), [-3.0, 5.0])

    def test_zero_is_minus_infinity(self) -> None:
        assert linear_to_db(0.0) == -math.inf
