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
from v2v_urllc.geometry.algorithms import Topology
from v2v_urllc.pathloss.algorithms import link_gains
from v2v_urllc.sinr_bounds import (
    PilotKind,
    PilotScheme,
    PowerAllocation,
    chi_conditional_sinr_v,
    check_cue_crossover,
    check_instance_resummation,
    check_jensen_bound,
    check_rp_sp_relation,
    check_scale_covariance,
    equal_power_allocation,
    gamma_c_from_gains,
    gamma_c_instance,
    gamma_c_worstcase,
    gamma_v_from_gains,
    gamma_v_instance,
    gamma_v_worstcase,
    interference_sum,
    power_bounds,
    v2b_interference_sum,
)
from v2v_urllc.utils.data import get_random_generator


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Testing                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


SCHEMES = [
    ("rp", PilotScheme.regular(4, 40)),
    ("sp", PilotScheme.superimposed(40)),
]


class TestPilotScheme(BaseTester):

    def test_lengths(self) -> None:
        rp = PilotScheme.regular(40, 200)
        sp = PilotScheme.superimposed(166)
        assert rp.blocklength == 160.0
        assert rp.pilot_length == 40.0
        assert rp.eta == 0.2
        assert sp.blocklength == sp.pilot_length == 166.0
        assert sp.tau_rp == 0.0

    def test_from_frame(self) -> None:
        assert PilotScheme.from_frame("RP", 100.0, 0.25).tau_rp == 25.0
        assert PilotScheme.from_frame(PilotKind.SP, 100.0).kind is PilotKind.SP

    def test_invalid(self) -> None:
        with raises(ValueError, match="tau_rp"):
            PilotScheme.regular(50, 40)
        with raises(ValueError, match="tau_sp"):
            PilotScheme.superimposed(0.5)
        with raises(ValueError):
            PilotScheme("XP", 10.0)

    def test_supports(self) -> None:
        assert PilotScheme.superimposed(10).supports(10)
        assert not PilotScheme.regular(3, 10).supports(4)


class TestPowers(BaseTester):

    def test_power_bounds(self) -> None:
        assert power_bounds(self.config, "RP") == (0.2, 0.2)
        assert power_bounds(self.config, PilotScheme.superimposed(10)) == (0.1, 0.1)

    def test_equal_power(self) -> None:
        alloc = equal_power_allocation(self.topology, self.config, "SP")
        assert alloc.num_pairs == 2
        assert alloc.num_cues == 2
        assert np.all(alloc.p_v == 0.1)
        assert alloc.within_bounds(self.config, "SP")
        assert not alloc.scaled(2.0).within_bounds(self.config, "SP")

    def test_allocation_validation(self) -> None:
        with raises(ValueError):
            PowerAllocation(p_v=[-1.0], q_v=[1.0], p_c=[], q_c=[])
        with raises(ValueError):
            PowerAllocation(p_v=[1.0, 1.0], q_v=[1.0], p_c=[], q_c=[])

    def test_allocation_round_trip(self) -> None:
        alloc = equal_power_allocation(self.topology, self.config, "RP")
        again = PowerAllocation.from_dict(alloc.to_dict())
        np.testing.assert_array_equal(again.q_c, alloc.q_c)


class TestInstanceBounds(BaseTester):

    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        cls.gains = link_gains(cls.topology, cls.fading)

    def test_symmetric_pairs_sp(self) -> None:
        alloc = PowerAllocation(p_v=[0.1, 0.1], q_v=[0.1, 0.1], p_c=[], q_c=[])
        scheme = PilotScheme.superimposed(100)
        gamma = gamma_v_instance(self.symmetric, self.fading, alloc, scheme)
        w = link_gains(self.symmetric, self.fading).v2v ** 2
        expected = 100 * w[0, 0] / (w[0, 0] + 2 * w[0, 1])
        assert abs(gamma[0] - gamma[1]) <= 1e-12 * gamma[0]
        assert abs(gamma[0] - expected) <= 1e-12 * expected

    def test_isolated_pair_rp(self) -> None:
        topo = Topology(receivers=[[0.0, -100.0]], transmitters=[[12.0, -100.0]], pair_roads=[1], cues=np.zeros((0, 2)))
        alloc = PowerAllocation(p_v=[0.2], q_v=[0.2], p_c=[], q_c=[])
        assert gamma_v_instance(topo, self.fading, alloc, PilotScheme.regular(10, 100))[0] == math.inf
        assert math.isfinite(gamma_v_instance(topo, self.fading, alloc, PilotScheme.superimposed(100))[0])

    def test_lone_cue_sp(self) -> None:
        topo = Topology(receivers=np.zeros((0, 2)), transmitters=np.zeros((0, 2)), pair_roads=[], cues=[[0.0, -94.0]])
        alloc = PowerAllocation(p_v=[], q_v=[], p_c=[0.05], q_c=[0.1])
        gamma = gamma_c_instance(topo, self.fading, alloc, PilotScheme.superimposed(20))
        assert abs(gamma[0] - 20 * 0.1 / 0.05) < 1e-9
        assert gamma_c_instance(topo, self.fading, alloc, PilotScheme.regular(5, 20))[0] == math.inf

    def test_sp_below_rp_at_same_pilot_length(self) -> None:
        alloc = equal_power_allocation(self.topology, self.config, "RP")
        rp = gamma_v_from_gains(self.gains, alloc, PilotScheme.regular(20, 40))
        sp = gamma_v_from_gains(self.gains, alloc, PilotScheme.superimposed(20))
        assert np.all(sp < rp)

    def test_shape_mismatch(self) -> None:
        alloc = PowerAllocation(p_v=[0.1], q_v=[0.1], p_c=[], q_c=[])
        with raises(ValueError, match="does not match"):
            gamma_v_from_gains(self.gains, alloc, PilotScheme.superimposed(10))

    @parameterized.expand(SCHEMES, name_func=name_func_predefined_name)
    def test_resummation(self, _name: str, scheme: PilotScheme) -> None:
        alloc = equal_power_allocation(self.topology, self.config, scheme)
        alloc = PowerAllocation(alloc.p_v * [1.0, 0.5], alloc.q_v * [0.3, 1.0], alloc.p_c * [1.0, 0.7], alloc.q_c)
        assert check_instance_resummation(self.gains, alloc, scheme)["result"] is True

    @parameterized.expand(SCHEMES, name_func=name_func_predefined_name)
    def test_scale_covariance(self, _name: str, scheme: PilotScheme) -> None:
        alloc = equal_power_allocation(self.topology, self.config, scheme)
        assert check_scale_covariance(self.gains, alloc, scheme)["result"] is True

    @parameterized.expand(SCHEMES, name_func=name_func_predefined_name)
    def test_jensen_over_pilots(self, _name: str, scheme: PilotScheme) -> None:
        alloc = equal_power_allocation(self.topology, self.config, scheme)
        report = check_jensen_bound(self.gains, alloc, scheme, get_random_generator(17), num_assignments=4000)
        assert report["result"] is True, report

    def test_collision_free_rp_is_unbounded(self) -> None:
        alloc = equal_power_allocation(self.topology, self.config, "RP")
        gamma = chi_conditional_sinr_v(
            self.gains, alloc, PilotScheme.regular(4, 40), np.array([0, 1]), np.array([2, 3])
        )
        assert np.all(np.isinf(gamma))

    def test_cue_bound_positive(self) -> None:
        alloc = equal_power_allocation(self.topology, self.config, "SP")
        gamma = gamma_c_from_gains(self.gains, alloc, PilotScheme.superimposed(40))
        assert gamma.shape == (2,)
        assert np.all(gamma > 0)


class TestWorstCase(BaseTester):

    def test_interference_sum(self) -> None:
        d = interference_sum(self.reference, self.omega)
        # (2 * 20 + 2 * 4 * 1 + 4 / 3 + 2 * 4 * 0.5) per road
        np.testing.assert_allclose(d, 40.0 + 8.0 + 4.0 / 3.0 + 4.0)

    def test_sparse_road_clamped(self) -> None:
        config = self.reference.with_updates(avg_density=(0.0, 0.0, 0.0, 0.0), num_cues=0)
        np.testing.assert_array_equal(interference_sum(config, self.omega), 0.0)
        assert np.all(np.isinf(gamma_v_worstcase(config, self.omega, "RP", 0.5, 100.0)))

    def test_v2b_sum(self) -> None:
        assert abs(v2b_interference_sum(self.reference, self.omega) - 16 * 0.5) < 1e-12

    def test_sp_reference_value(self) -> None:
        gamma = gamma_v_worstcase(self.reference, self.omega, "SP", 0.0, 166.0)
        np.testing.assert_allclose(gamma, 166.0 / (1.0 + 40.0 + 8.0 + 4.0 / 3.0 + 4.0))

    def test_cue_values(self) -> None:
        sp = gamma_c_worstcase(self.reference, self.omega, "SP", 0.0, 100.0)
        rp = gamma_c_worstcase(self.reference, self.omega, "RP", 0.25, 100.0)
        assert abs(sp - 100.0 / (8.0 + 4 * 2.0)) < 1e-12
        assert abs(rp - 2 * 25.0 / 8.0) < 1e-12

    def test_invalid_frame(self) -> None:
        with raises(ValueError, match="eta"):
            gamma_v_worstcase(self.reference, self.omega, "RP", 1.0, 100.0)
        with raises(ValueError, match="zeta"):
            gamma_c_worstcase(self.reference, self.omega, "SP", 0.0, 0.0)

    def test_rp_sp_relation(self) -> None:
        report = check_rp_sp_relation(self.config, self.omega, 166.0)
        assert report["formula_matches"] is True
        assert report["result"] is True

    def test_cue_crossover(self) -> None:
        report = check_cue_crossover(self.config, self.omega, 166.0)
        assert report["result"] is True
        assert abs(report["threshold"] - 16.0 / (2 * (16.0 + 20.0))) < 1e-12
