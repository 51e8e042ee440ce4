# ---------------------------------------------------------------------------- #
#                                                                              #
#    Setup                                                                  ####
#                                                                              #
# ---------------------------------------------------------------------------- #


# ---------------------------------------------------------------------------- #
# Imports                                                                   ####
# ---------------------------------------------------------------------------- #


# ## Python StdLib Imports ----
import tempfile
from pathlib import Path
from unittest.mock import patch

# ## Python Third Party Imports ----
import numpy as np
from pytest import raises

# ## Local First Party Imports ----
from tests.setup import BaseTester, unit_omega, quadrature_omega
from v2v_urllc.geometry.algorithms import receiver_support
from v2v_urllc.pathloss import (
    FadingModel,
    OmegaTable,
    beta,
    check_alpha_monotonicity,
    check_jensen,
    check_omega_against_montecarlo,
    check_protection_divergence,
    check_standard_error_scaling,
    link_gains,
    load_or_compute_omega,
    omega_montecarlo,
)
from v2v_urllc.utils.data import get_random_generator


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Testing                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class TestGains(BaseTester):

    def test_beta(self) -> None:
        model = FadingModel(theta=1e-3, alpha=3.0)
        assert abs(beta(model, 10.0) - 1e-6) < 1e-18
        np.testing.assert_allclose(beta(model, np.array([1.0, 100.0])), [1e-3, 1e-9])

    def test_beta_rejects_zero(self) -> None:
        with raises(ValueError):
            beta(FadingModel(), 0.0)

    def test_fading_model_invalid(self) -> None:
        with raises(ValueError):
            FadingModel(alpha=2.0)
        with raises(ValueError):
            FadingModel(theta=0.0)

    def test_link_gains(self) -> None:
        gains = link_gains(self.topology, self.fading)
        assert gains.num_pairs == 2
        assert gains.num_cues == 2
        assert gains.v2v.shape == (2, 2)
        assert gains.c2v.shape == (2, 2)
        np.testing.assert_allclose(np.diag(gains.v2v), 1e-3 * 12.0**-3)
        assert gains.v2v[0, 0] > gains.v2v[0, 1]

    def test_link_gains_empty(self) -> None:
        gains = link_gains(self.symmetric, self.fading)
        assert gains.c2v.shape == (2, 0)
        assert gains.c2b.shape == (0,)


class TestOmegaTable(BaseTester):

    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        cls.table = quadrature_omega()
        cls.table_support = receiver_support(cls.config, 1)

    def test_fixed_separation(self) -> None:
        assert self.table.v2v_p1 == 12.0**6

    def test_disc_separation(self) -> None:
        from v2v_urllc.pathloss.algorithms import _own_positive_moment

        value = _own_positive_moment(self.config.with_updates(fixed_separation=False))
        # E[r^6] over a disc of radius 12 is 12^6 / 4
        assert abs(value - 12.0**6 / 4) / (12.0**6 / 4) < 1e-6

    def test_entries_ordered(self) -> None:
        # Same-road interferers are closest, parallel-road ones farthest.
        assert self.table.v2v_n1 > self.table.v2v_n2 > self.table.v2v_n3

    def test_jensen(self) -> None:
        assert check_jensen(self.table)["result"] is True
        assert check_jensen(unit_omega())["result"] is True

    def test_invalid_entries(self) -> None:
        with raises(ValueError):
            OmegaTable(*(1.0,) * 7, c2b_p=-1.0)
        with raises(ValueError):
            OmegaTable.from_dict({**self.table.to_dict(), "extra": 1.0})

    def test_scaled(self) -> None:
        scaled = self.table.scaled("c2b_p", 1.05)
        assert abs(scaled.c2b_p / self.table.c2b_p - 1.05) < 1e-12
        assert scaled.v2v_n1 == self.table.v2v_n1
        with raises(ValueError):
            self.table.scaled("nope", 2.0)

    def test_against_montecarlo(self) -> None:
        report = check_omega_against_montecarlo(self.config, get_random_generator(1), n=2_000_000, table=self.table)
        assert report["result"] is True, report["failed"]

    def test_default_config_within_one_percent(self) -> None:
        estimate, standard_errors = omega_montecarlo(self.config, 10_000_000, get_random_generator(11))
        for key, value in self.table.to_dict().items():
            mc = getattr(estimate, key)
            assert standard_errors[key] <= 0.0035 * mc, key
            assert abs(value - mc) <= 0.01 * mc, (key, value, mc)

    def test_closed_form_second_moments(self) -> None:
        from v2v_urllc.geometry.algorithms import Rectangle
        from v2v_urllc.pathloss.algorithms import _origin_moment, _pair_moment

        # E[x^2] = (a1^3 - a0^3) / (3 (a1 - a0)) per axis
        assert abs(_origin_moment(Rectangle(1.0, 3.0, 2.0, 5.0), 2.0) - (26 / 6 + 117 / 9)) < 1e-5
        # variances 1/12 + 4/12 per axis plus squared centroid offsets 3.5^2 and 0.5^2
        assert abs(_pair_moment(Rectangle(0.0, 1.0, 0.0, 1.0), Rectangle(3.0, 5.0, 0.0, 2.0), 2.0) - 40 / 3) < 1e-5

    def test_unprotected_same_road_diverges(self) -> None:
        from v2v_urllc.pathloss.algorithms import _pair_moment

        support = self.table_support
        with raises(ValueError):
            _pair_moment(support, support, -6.0, entry="v2v_n1")

    def test_corrupted_entry_caught(self) -> None:
        bad = self.table.scaled("c2b_p", 1.05)
        report = check_omega_against_montecarlo(self.config, get_random_generator(1), n=2_000_000, table=bad)
        assert report["result"] is False
        assert report["failed"] == ["c2b_p"]

    def test_montecarlo_minimum(self) -> None:
        with raises(ValueError):
            omega_montecarlo(self.config, 100, get_random_generator(1))

    def test_montecarlo_independent_of_workers(self) -> None:
        one, _ = omega_montecarlo(self.config, 60_000, get_random_generator(2), block_size=20_000)
        many, _ = omega_montecarlo(self.config, 60_000, get_random_generator(2), block_size=20_000, workers=3)
        assert one == many

    def test_standard_error_scaling(self) -> None:
        assert check_standard_error_scaling(self.config, get_random_generator(3))["result"] is True

    def test_alpha_monotonicity(self) -> None:
        assert check_alpha_monotonicity(self.config, factor=1.2)["result"] is True

    def test_protection_divergence(self) -> None:
        report = check_protection_divergence(self.config, halvings=3)
        assert report["result"] is True


class TestOmegaCache(BaseTester):

    def test_cache_round_trip(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            with patch("v2v_urllc.pathloss.algorithms.omega_quadrature", return_value=self.omega) as mocked:
                first = load_or_compute_omega(self.config, tmp)
                second = load_or_compute_omega(self.config.with_updates(num_cues=3), tmp)
            assert mocked.call_count == 1
            assert first == second == self.omega
            assert len(list(Path(tmp).glob("omega-*.json"))) == 1

    def test_geometry_changes_key(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            with patch("v2v_urllc.pathloss.algorithms.omega_quadrature", return_value=self.omega) as mocked:
                load_or_compute_omega(self.config, tmp)
                load_or_compute_omega(self.config.with_updates(pathloss_exp=3.5), tmp)
            assert mocked.call_count == 2

    def test_no_cache_dir(self) -> None:
        with patch("v2v_urllc.pathloss.algorithms.omega_quadrature", return_value=self.omega) as mocked:
            assert load_or_compute_omega(self.config) == self.omega
        mocked.assert_called_once()
