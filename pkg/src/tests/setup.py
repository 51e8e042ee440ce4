# ============================================================================ #
#                                                                              #
#     Title: Test Setup                                                        #
#     Purpose: Setup class and shared fixtures for unit tests.                 #
#                                                                              #
# ============================================================================ #


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Setup                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #

## --------------------------------------------------------------------------- #
##  Imports                                                                 ####
## --------------------------------------------------------------------------- #


# ## Python StdLib Imports ----
import unittest
from functools import lru_cache
from typing import Callable, Union

# ## Python Third Party Imports ----
import numpy as np

# ## Local First Party Imports ----
from v2v_urllc.geometry.algorithms import Topology
from v2v_urllc.pathloss.algorithms import FadingModel, OmegaTable, omega_quadrature
from v2v_urllc.utils.config import ScenarioConfig
from v2v_urllc.utils.data import get_random_generator


## --------------------------------------------------------------------------- #
##  Exports                                                                 ####
## --------------------------------------------------------------------------- #


__all__: list[str] = [
    "name_func_flat_list",
    "name_func_predefined_name",
    "unit_omega",
    "quadrature_omega",
    "reference_config",
    "hand_topology",
    "symmetric_topology",
    "BaseTester",
]


## --------------------------------------------------------------------------- #
##  Helper functions                                                        ####
## --------------------------------------------------------------------------- #


def name_func_flat_list(
    func: Callable,
    idx: int,
    params: Union[tuple[object, ...], list[object]],
) -> str:
    return f"{func.__name__}_{int(idx)+1:02}_{'_'.join([str(param) for param in params[0]])}"


def name_func_predefined_name(
    func: Callable,
    idx: int,
    params: Union[tuple[object, ...], list[object]],
) -> str:
    return f"{func.__name__}_{int(idx)+1:02}_{params[0][0]}"


# ---------------------------------------------------------------------------- #
# Data                                                                      ####
# ---------------------------------------------------------------------------- #


P1: float = 12.0**6


@lru_cache
def unit_omega() -> OmegaTable:
    """
    Round-number moments for arithmetic unit tests. They are not the moments of any geometry; tests that check frame sizes of the grid use `quadrature_omega()`.
    """
    return OmegaTable(
        v2v_n1=20.0 / P1,
        v2v_n2=1.0 / P1,
        v2v_n3=(1.0 / 3.0) / P1,
        v2v_p1=P1,
        c2v_n=0.5 / P1,
        v2b_n=0.5e-12,
        c2b_n=2e-12,
        c2b_p=1e12,
    )


@lru_cache
def quadrature_omega() -> OmegaTable:
    return omega_quadrature(ScenarioConfig())


@lru_cache
def reference_config() -> ScenarioConfig:
    return ScenarioConfig(avg_density=(0.0025,) * 4, num_cues=4)


@lru_cache
def hand_topology() -> Topology:
    # Two pairs on roads 1 and 2, two CUEs on the sidewalk ring.
    return Topology(
        receivers=np.array([[-50.0, -100.0], [100.0, 0.0]]),
        transmitters=np.array([[-38.0, -100.0], [100.0, 12.0]]),
        pair_roads=np.array([1, 2]),
        cues=np.array([[0.0, -94.0], [-94.0, 0.0]]),
    )


@lru_cache
def symmetric_topology() -> Topology:
    # Mirror-image pairs on roads 1 and 3, no CUEs.
    return Topology(
        receivers=np.array([[0.0, -100.0], [0.0, 100.0]]),
        transmitters=np.array([[12.0, -100.0], [-12.0, 100.0]]),
        pair_roads=np.array([1, 3]),
        cues=np.zeros((0, 2)),
    )


# ---------------------------------------------------------------------------- #
# Classes                                                                   ####
# ---------------------------------------------------------------------------- #


class BaseTester(unittest.TestCase):

    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        cls.config: ScenarioConfig = ScenarioConfig()
        cls.reference: ScenarioConfig = reference_config()
        cls.omega: OmegaTable = unit_omega()
        cls.fading: FadingModel = FadingModel.from_config(cls.config)
        cls.topology: Topology = hand_topology()
        cls.symmetric: Topology = symmetric_topology()
        cls.rng = get_random_generator(42)

    @classmethod
    def tearDownClass(cls) -> None:
        super().tearDownClass()
