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
from v2v_urllc.frame_design import solve_frame_rp, solve_frame_sp
from v2v_urllc.geometry.algorithms import Topology
from v2v_urllc.gp_alloc import (
    AllocationStatus,
    Posynomial,
    allocation_from_point,
    build_gp,
    check_bisection_oracle,
    check_constraint_consistency,
    check_cue_thresholds,
    check_epigraph_tightness,
    check_grid_oracle,
    check_kkt,
    check_recovered_bits,
    evaluate_posynomial,
    gp_constraint_count,
    instance_from_allocation,
    phi_from_phi_prime,
    recover_phi,
    solve_gp,
)
from v2v_urllc.sinr_bounds import equal_power_allocation


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Testing                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


SCHEMES = [("sp",), ("rp",)]


class GPTester(BaseTester):

    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        cls.frames = {
            "sp": solve_frame_sp(cls.reference, cls.omega),
            "rp": solve_frame_rp(cls.reference, cls.omega),
        }
        topo = cls.topology
        cls.small = Topology(topo.receivers, topo.transmitters, topo.pair_roads, topo.cues[:1])


class TestPosynomial(GPTester):

    def test_evaluate(self) -> None:
        poly = Posynomial(np.array([2.0, 3.0]), np.array([[1.0, 0.0], [0.0, 2.0]]))
        assert poly.num_terms == 2
        assert poly.num_variables == 2
        assert math.isclose(evaluate_posynomial(poly, np.array([2.0, 3.0])), 31.0)
        assert math.isclose(poly.log_value(np.log(np.array([2.0, 3.0]))), math.log(31.0))

    @parameterized.expand(
        [
            ("empty", np.array([]), np.zeros((0, 2))),
            ("negative", np.array([1.0, -1.0]), np.zeros((2, 2))),
            ("mismatch", np.array([1.0, 1.0]), np.zeros((3, 2))),
        ],
        name_func=name_func_predefined_name,
    )
    def test_invalid(self, _: str, coefficients: np.ndarray, exponents: np.ndarray) -> None:
        with raises(ValueError):
            Posynomial(coefficients, exponents)


class TestBuild(GPTester):

    def test_constraint_count(self) -> None:
        assert gp_constraint_count(self.small)["constraints"] == 16.0
        assert gp_constraint_count(self.topology)["constraints"] == 21.0

    @parameterized.expand(SCHEMES, name_func=name_func_predefined_name)
    def test_layout(self, scheme: str) -> None:
        gp = build_gp(self.topology, self.fading, self.frames[scheme], self.reference)
        assert gp.num_variables == 9
        assert gp.labels == ("pair:0", "pair:1", "cue:0", "cue:1", "floor")
        assert gp.pair_constraint_indices() == [0, 1]
        assert gp.cue_constraint_indices() == [2, 3]
        assert gp.names[-1] == "phi_prime"
        assert math.isinf(gp.upper[-1])
        assert gp.cue_threshold == self.reference.cue_alloc_threshold

    def test_sp_halves_the_power_box(self) -> None:
        sp = build_gp(self.topology, self.fading, self.frames["sp"], self.reference)
        rp = build_gp(self.topology, self.fading, self.frames["rp"], self.reference)
        np.testing.assert_allclose(sp.upper[:-1], 0.5 * rp.upper[:-1])

    def test_sp_adds_data_power_terms(self) -> None:
        sp = build_gp(self.topology, self.fading, self.frames["sp"], self.reference)
        rp = build_gp(self.topology, self.fading, self.frames["rp"], self.reference)
        assert sp.constraints[0].num_terms > rp.constraints[0].num_terms

    @parameterized.expand(SCHEMES, name_func=name_func_predefined_name)
    def test_constraints_match_sinr_bounds(self, scheme: str) -> None:
        gp = build_gp(self.topology, self.fading, self.frames[scheme], self.reference)
        alloc = equal_power_allocation(self.topology, self.reference, scheme.upper())
        result = check_constraint_consistency(gp, alloc, 2.0, rtol=1e-10)
        assert result["result"], result

    def test_point_round_trip(self) -> None:
        gp = build_gp(self.topology, self.fading, self.frames["rp"], self.reference)
        alloc = equal_power_allocation(self.topology, self.reference, "RP")
        back = allocation_from_point(gp, instance_from_allocation(gp, alloc, 3.0))
        np.testing.assert_array_equal(back.p_c, alloc.p_c)

    def test_no_pairs(self) -> None:
        empty = Topology(np.zeros((0, 2)), np.zeros((0, 2)), np.zeros(0, dtype=np.int64), self.topology.cues)
        with raises(ValueError):
            build_gp(empty, self.fading, self.frames["sp"], self.reference)


class TestSolve(GPTester):

    @parameterized.expand(SCHEMES, name_func=name_func_predefined_name)
    def test_optimality(self, scheme: str) -> None:
        frame = self.frames[scheme]
        gp = build_gp(self.topology, self.fading, frame, self.reference)
        result = solve_gp(gp)
        assert result.status is AllocationStatus.OPTIMAL
        assert result.phi_prime >= gp.phi_floor
        assert result.alloc.within_bounds(self.reference, frame.pilot_scheme)
        for check in (
            check_kkt(gp, result),
            check_epigraph_tightness(result),
            check_cue_thresholds(result, self.reference.cue_alloc_threshold),
            check_recovered_bits(result, frame, self.reference.reliability),
        ):
            assert check["result"], check

    @parameterized.expand(SCHEMES, name_func=name_func_predefined_name)
    def test_bisection_oracle(self, scheme: str) -> None:
        gp = build_gp(self.small, self.fading, self.frames[scheme], self.reference)
        result = check_bisection_oracle(gp, solve_gp(gp))
        assert result["result"], result

    @parameterized.expand(SCHEMES, name_func=name_func_predefined_name)
    def test_grid_oracle(self, scheme: str) -> None:
        gp = build_gp(self.small, self.fading, self.frames[scheme], self.reference)
        result = check_grid_oracle(gp, solve_gp(gp), points=12, cap=200_000)
        assert result["result"], result

    def test_deterministic(self) -> None:
        gp = build_gp(self.topology, self.fading, self.frames["rp"], self.reference)
        assert solve_gp(gp).phi_prime == solve_gp(gp).phi_prime

    @parameterized.expand(SCHEMES, name_func=name_func_predefined_name)
    def test_tighter_cue_threshold_costs_v2v(self, scheme: str) -> None:
        frame = self.frames[scheme]
        loose = solve_gp(build_gp(self.topology, self.fading, frame, self.reference, cue_threshold=10.0))
        tight = solve_gp(build_gp(self.topology, self.fading, frame, self.reference, cue_threshold=100.0))
        assert loose.is_optimal and tight.is_optimal
        assert tight.phi_prime <= loose.phi_prime * (1 + 1e-6)
        assert check_cue_thresholds(tight, 100.0)["result"]

    def test_without_cues(self) -> None:
        gp = build_gp(self.symmetric, self.fading, self.frames["sp"], self.reference)
        assert gp.cue_constraint_indices() == []
        result = solve_gp(gp)
        assert result.is_optimal
        assert check_cue_thresholds(result, 10.0)["min_ratio"] == math.inf

    def test_infeasible_cue_target(self) -> None:
        frame = self.frames["sp"]
        gp = build_gp(self.small, self.fading, frame, self.reference, cue_threshold=1e13)
        result = solve_gp(gp)
        assert result.status is AllocationStatus.INFEASIBLE
        assert math.isnan(result.phi_prime)
        assert result.iterations["phase_one"] == 1
        assert not check_cue_thresholds(result, 1e13)["result"]
        assert check_bisection_oracle(gp, result)["result"]
        with raises(ValueError):
            recover_phi(result, frame)

    def test_to_dict(self) -> None:
        gp = build_gp(self.small, self.fading, self.frames["rp"], self.reference)
        record = solve_gp(gp).to_dict()
        assert record["status"] == "Optimal"
        assert len(record["gamma_v"]) == 2
        assert len(record["gamma_c"]) == 1


class TestRecovery(GPTester):

    def test_floor_gives_zero_bits(self) -> None:
        floor = 2 ** (6.15 / 166**0.5) - 1
        assert abs(phi_from_phi_prime(floor, 166.0, floor)) < 1e-9

    def test_monotone(self) -> None:
        floor = 0.4
        values = [phi_from_phi_prime(x, 166.0, floor) for x in (0.5, 1.0, 2.0, 4.0)]
        assert values == sorted(values)
        assert values[0] > 0

    def test_recover_at_reliability(self) -> None:
        frame = self.frames["sp"]
        result = solve_gp(build_gp(self.topology, self.fading, frame, self.reference))
        assert math.isclose(
            recover_phi(result, frame, epsilon=self.reference.reliability), recover_phi(result, frame), rel_tol=1e-6
        )
        assert recover_phi(result, frame, epsilon=1e-3) > recover_phi(result, frame)
