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

# ## Python Third Party Imports ----
import numpy as np
from parameterized import parameterized
from pytest import raises

# ## Local First Party Imports ----
from tests.setup import BaseTester, name_func_predefined_name
from v2v_urllc.frame_design import FrameDesign
from v2v_urllc.link_mc import (
    LinkDrawConfig,
    PilotAssignment,
    assign_pilots,
    check_closed_form,
    check_collision_rate,
    check_estimate_consistency,
    check_estimation_orthogonality,
    check_hardening,
    check_jensen_direction,
    check_mrc_slope,
    check_orthogonality,
    complex_normal,
    draw_channels,
    empirical_sinr,
    pilot_matrix,
)
from v2v_urllc.pathloss.algorithms import LinkGains
from v2v_urllc.sinr_bounds import PilotKind, PowerAllocation


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Testing                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def two_pair_gains() -> LinkGains:
    return LinkGains(
        v2v=np.array([[1e-6, 5e-7], [5e-7, 1e-6]]),
        c2v=np.zeros((2, 0)),
        v2b=np.array([1e-9, 1e-9]),
        c2b=np.zeros(0),
    )


def two_pair_alloc(power: float = 0.1) -> PowerAllocation:
    return PowerAllocation(p_v=np.full(2, power), q_v=np.full(2, power), p_c=np.zeros(0), q_c=np.zeros(0))


class TestLinkDrawConfig(BaseTester):

    def test_defaults(self) -> None:
        link = LinkDrawConfig()
        assert link.scheme == "SP"
        assert link.num_pilots == 166
        assert link.pilot_scheme.kind is PilotKind.SP

    def test_regular_pilots(self) -> None:
        link = LinkDrawConfig(scheme="RP", frame_length=16, pilot_length=4)
        assert link.num_pilots == 4
        assert link.pilot_scheme.blocklength == 12

    @parameterized.expand(
        [
            ("no_rp_pilots", {"scheme": "RP", "pilot_length": 0}),
            ("rp_pilots_fill_frame", {"scheme": "RP", "frame_length": 8, "pilot_length": 8}),
            ("noise", {"noise_power": 0.0}),
            ("antennas", {"num_rx_antennas": 0}),
            ("trials", {"num_symbol_trials": 0}),
            ("scheme", {"scheme": "XP"}),
        ],
        name_func=name_func_predefined_name,
    )
    def test_invalid(self, _: str, kwargs: dict) -> None:
        with raises(ValueError):
            LinkDrawConfig(**kwargs)

    def test_from_frame(self) -> None:
        sp = FrameDesign(PilotKind.SP, 0.0, 166.0, 165.9, (0.03,) * 4, (0.018,) * 4, 6.15)
        rp = FrameDesign(PilotKind.RP, 0.3, 247.0, 246.5, (0.03,) * 4, (0.018,) * 4, 6.15)
        assert LinkDrawConfig.from_frame(sp).frame_length == 166
        link = LinkDrawConfig.from_frame(rp, num_rx_antennas=64)
        assert (link.frame_length, link.pilot_length, link.num_rx_antennas) == (247, 74, 64)


class TestPilots(BaseTester):

    def test_pilot_book(self) -> None:
        book = pilot_matrix(8)
        np.testing.assert_allclose(book.conj().T @ book, 8 * np.eye(8), atol=1e-10)
        np.testing.assert_allclose(np.abs(book), 1.0)

    def test_assignment(self) -> None:
        pilots = assign_pilots(20, 3, 4, self.rng)
        assert len(set(pilots.pilots_c.tolist())) == 3
        assert pilots.pilots_v.min() >= 0 and pilots.pilots_v.max() < 4
        collisions = pilots.collisions()
        assert not collisions.diagonal().any()
        assert (collisions == collisions.T).all()

    def test_too_many_cues(self) -> None:
        with raises(ValueError):
            assign_pilots(2, 5, 4, self.rng)

    def test_collision_rate(self) -> None:
        result = check_collision_rate(4, self.rng, num_draws=20_000, rtol=0.05)
        assert result["result"], result


class TestChannels(BaseTester):

    def test_complex_normal(self) -> None:
        z = complex_normal(self.rng, (200_000,))
        assert abs(np.mean(np.abs(z) ** 2) - 1.0) < 0.01
        assert abs(np.var(z.real) - 0.5) < 0.01

    def test_draw_shapes(self) -> None:
        link = LinkDrawConfig(scheme="RP", frame_length=16, pilot_length=4, num_rx_antennas=32, num_bs_antennas=16)
        draw = draw_channels(two_pair_gains(), link, self.rng)
        assert draw.v2v.shape == (2, 2, 32)
        assert draw.c2v.shape == (2, 0, 32)
        assert draw.v2b.shape == (2, 16)
        assert draw.pilots.num_pilots == 4

    def test_draw_variance(self) -> None:
        link = LinkDrawConfig(num_rx_antennas=4096)
        draw = draw_channels(two_pair_gains(), link, self.rng)
        power = np.mean(np.abs(draw.v2v) ** 2, axis=2)
        np.testing.assert_allclose(power, two_pair_gains().v2v, rtol=0.1)

    def test_hardening(self) -> None:
        result = check_hardening(self.rng, num_draws=1000)
        assert result["result"], result

    def test_orthogonality(self) -> None:
        result = check_orthogonality(self.rng)
        assert result["result"], result


class TestEstimation(BaseTester):

    def setUp(self) -> None:
        self.link = LinkDrawConfig(scheme="RP", frame_length=16, pilot_length=4, num_rx_antennas=64, num_bs_antennas=64)

    def test_consistency(self) -> None:
        result = check_estimate_consistency(self.link, self.rng)
        assert result["result"], result
        assert result["omega"] > 0.99

    def test_orthogonal_error(self) -> None:
        pilots = PilotAssignment(np.array([0, 0]), np.zeros(0, dtype=np.int64), 4)
        result = check_estimation_orthogonality(two_pair_gains(), two_pair_alloc(), self.link, self.rng, pilots, num_draws=2000)
        assert result["result"], result

    def test_mrc_slope(self) -> None:
        result = check_mrc_slope(self.link, self.rng, num_draws=50)
        assert result["result"], result


class TestClosedForm(BaseTester):

    def setUp(self) -> None:
        self.link = LinkDrawConfig(scheme="RP", frame_length=16, pilot_length=4)

    def test_contaminated_pairs(self) -> None:
        pilots = PilotAssignment(np.array([0, 0]), np.zeros(0, dtype=np.int64), 4)
        result = check_closed_form(two_pair_gains(), two_pair_alloc(), self.link, self.rng, pilots, num_draws=30)
        assert result["result"], result
        assert result["links_compared"] == 2
        np.testing.assert_allclose(result["closed_form"], 4.0)

    def test_clean_pairs_are_skipped(self) -> None:
        pilots = PilotAssignment(np.array([0, 1]), np.zeros(0, dtype=np.int64), 4)
        result = check_closed_form(two_pair_gains(), two_pair_alloc(), self.link, self.rng, pilots, num_draws=5)
        assert result["links_compared"] == 0
        assert not result["result"]

    def test_jensen_direction(self) -> None:
        result = check_jensen_direction(two_pair_gains(), two_pair_alloc(), self.link, self.rng, num_draws=200)
        assert result["result"], result

    def test_no_draws(self) -> None:
        with raises(ValueError):
            empirical_sinr([], two_pair_alloc(), self.link, self.rng)

    def test_few_antennas_warns(self) -> None:
        link = LinkDrawConfig(scheme="RP", frame_length=16, pilot_length=4, num_rx_antennas=8, num_bs_antennas=8)
        draws = [draw_channels(two_pair_gains(), link, self.rng)]
        with self.assertLogs("v2v_urllc.link_mc.algorithms", level="WARNING"):
            measured = empirical_sinr(draws, two_pair_alloc(), link, self.rng)
        assert measured.to_dict()["num_draws"] == 1
        assert measured.sinr_v.shape == (1, 2)
        assert math.isfinite(float(measured.pooled_v[0]))
