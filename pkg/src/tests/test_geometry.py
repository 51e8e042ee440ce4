# ---------------------------------------------------------------------------- #
#                                                                              #
#    Setup                                                                  ####
#                                                                              #
# ---------------------------------------------------------------------------- #


# ---------------------------------------------------------------------------- #
# Imports                                                                   ####
# ---------------------------------------------------------------------------- #


# ## Python Third Party Imports ----
import numpy as np
from parameterized import parameterized
from pytest import raises

# ## Local First Party Imports ----
from tests.setup import BaseTester, name_func_flat_list
from v2v_urllc.geometry import (
    RoadRelation,
    Topology,
    audit_topology,
    check_poisson_dispersion,
    check_receiver_uniformity,
    check_road_relations,
    receiver_support,
    road_rectangle,
    road_relation,
    sample_pair_count,
    sample_topology,
    sidewalk_rectangles,
)
from v2v_urllc.utils.data import get_random_generator


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Testing                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class TestLayout(BaseTester):

    @parameterized.expand(
        [
            (1, 1, RoadRelation.SAME),
            (1, 2, RoadRelation.PERPENDICULAR),
            (1, 3, RoadRelation.PARALLEL),
            (2, 4, RoadRelation.PARALLEL),
            (4, 1, RoadRelation.PERPENDICULAR),
        ],
        name_func=name_func_flat_list,
    )
    def test_road_relation(self, u: int, j: int, expected: RoadRelation) -> None:
        assert road_relation(u, j) is expected

    def test_road_relation_invalid(self) -> None:
        with raises(ValueError, match="Invalid 'j'"):
            road_relation(1, 5)

    def test_road_relations_check(self) -> None:
        assert check_road_relations()["result"] is True

    def test_roads_frame_the_block(self) -> None:
        h = self.config.block_half_side
        for road in (1, 2, 3, 4):
            rect = road_rectangle(self.config, road)
            assert abs(rect.area - self.config.road_area) < 1e-9
        assert road_rectangle(self.config, 1).y_max == -h
        assert road_rectangle(self.config, 3).y_min == h

    def test_receiver_support(self) -> None:
        support = receiver_support(self.config, 1)
        assert support.height == self.config.road_width - 2 * self.config.protection_half_length

    def test_sidewalk_pinwheel(self) -> None:
        pieces = sidewalk_rectangles(self.config)
        areas = [piece.area for piece in pieces]
        h, s = self.config.block_half_side, self.config.sidewalk_width
        assert np.allclose(areas, areas[0])
        assert abs(sum(areas) - ((2 * h) ** 2 - (2 * h - 2 * s) ** 2)) < 1e-6


class TestSampling(BaseTester):

    def test_hand_topology(self) -> None:
        assert self.topology.counts == (1, 1, 0, 0)
        assert audit_topology(self.topology, self.config)["result"] is True

    def test_audit_catches_bad_separation(self) -> None:
        bad = Topology(
            receivers=[[-50.0, -100.0]],
            transmitters=[[-30.0, -100.0]],
            pair_roads=[1],
            cues=np.zeros((0, 2)),
        )
        report = audit_topology(bad, self.config)
        assert report["result"] is False
        assert any("separation" in item for item in report["violations"])

    def test_mismatched_lengths(self) -> None:
        with raises(ValueError):
            Topology(receivers=[[0.0, 0.0]], transmitters=np.zeros((0, 2)), pair_roads=[1], cues=np.zeros((0, 2)))

    def test_sampled_invariants(self) -> None:
        rng = get_random_generator(11)
        for _ in range(20):
            topo = sample_topology(self.config, rng)
            assert audit_topology(topo, self.config)["result"] is True
            assert topo.num_cues == self.config.num_cues
            assert sum(topo.counts) == topo.num_pairs

    def test_distances(self) -> None:
        d = self.topology.v2v_distances()
        assert d.shape == (2, 2)
        assert np.allclose(np.diag(d), self.config.pair_separation)
        assert np.allclose(self.topology.c2b_distances(), 94.0)

    def test_dict_round_trip(self) -> None:
        again = Topology.from_dict(self.topology.to_dict())
        np.testing.assert_array_equal(again.receivers, self.topology.receivers)
        assert again.counts == self.topology.counts

    def test_negative_counts(self) -> None:
        with raises(ValueError):
            sample_topology(self.config, get_random_generator(1), counts=(1, -1, 0, 0))

    def test_negative_density(self) -> None:
        with raises(ValueError):
            sample_pair_count(-0.1, 200.0, 8.0, get_random_generator(1))

    def test_poisson_mean_and_dispersion(self) -> None:
        report = check_poisson_dispersion(0.005, self.config, 20_000, get_random_generator(5))
        assert report["result"] is True
        assert abs(report["mean"] - report["expected_mean"]) / report["expected_mean"] < 0.02

    def test_receiver_uniformity(self) -> None:
        report = check_receiver_uniformity(self.config, 5_000, get_random_generator(9), tolerance=0.02)
        assert report["result"] is True

    def test_seed_reproducible(self) -> None:
        a = sample_topology(self.config, get_random_generator(3))
        b = sample_topology(self.config, get_random_generator(3))
        np.testing.assert_array_equal(a.transmitters, b.transmitters)
        np.testing.assert_array_equal(a.cues, b.cues)
