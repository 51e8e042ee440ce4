# ---------------------------------------------------------------------------- #
#                                                                              #
#    Setup                                                                  ####
#                                                                              #
# ---------------------------------------------------------------------------- #


# ---------------------------------------------------------------------------- #
# Imports                                                                   ####
# ---------------------------------------------------------------------------- #


# ## Python StdLib Imports ----
import json
import tempfile
import unittest
from pathlib import Path

# ## Python Third Party Imports ----
from parameterized import parameterized
from pytest import raises

# ## Local First Party Imports ----
from tests.setup import name_func_predefined_name
from v2v_urllc.utils.config import (
    GEOMETRY_FIELDS,
    ScenarioConfig,
    ScheduleConfig,
    config_from_dict,
    config_hash,
    load_config,
    merge_config,
    save_config,
)


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Testing                                                                ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class TestScenarioConfig(unittest.TestCase):

    def test_defaults(self) -> None:
        config = ScenarioConfig()
        assert config.road_length == 200.0
        assert config.avg_density == (0.005,) * 4
        assert config.num_cues == 10
        assert config.block_half_side == 96.0
        assert config.road_area == 1600.0
        assert abs(config.cue_alloc_threshold - 10.0) < 1e-12
        assert abs(config.cue_frame_threshold - 10 ** 0.5) < 1e-12
        assert config.max_power_c == 0.2
        assert config.mu_zeta == config.mu_eta == 1e-4

    @parameterized.expand(
        [
            ("road_width", {"road_width": 300.0}),
            ("sidewalk", {"sidewalk_width": 0.0}),
            ("protection", {"protection_half_length": 4.0}),
            ("separation", {"pair_separation": 250.0}),
            ("density", {"avg_density": (0.005, -0.001, 0.005, 0.005)}),
            ("roads", {"avg_density": (0.005, 0.005)}),
            ("cues", {"num_cues": -1}),
            ("reliability", {"reliability": 0.7}),
            ("exponent", {"pathloss_exp": 2.0}),
            ("thresholds", {"cue_sinr_thresholds": (1.0, 0.0)}),
            ("tolerances", {"tolerances": (1e-4,)}),
        ],
        name_func=name_func_predefined_name,
    )
    def test_invalid(self, _name: str, changes: dict) -> None:
        with raises(ValueError, match="Invalid"):
            ScenarioConfig(**changes)

    def test_dict_round_trip(self) -> None:
        config = ScenarioConfig(num_cues=4, avg_density=(0.001, 0.002, 0.003, 0.004))
        data = config.to_dict()
        assert data["avg_density"] == [0.001, 0.002, 0.003, 0.004]
        assert ScenarioConfig.from_dict(data) == config

    def test_unknown_key(self) -> None:
        with raises(ValueError, match="road_lenght"):
            config_from_dict(ScenarioConfig, {"road_lenght": 100})

    def test_json_string(self) -> None:
        config = ScenarioConfig.from_json('{"num_cues": 3, "reliability": 1e-7}')
        assert config.num_cues == 3
        assert config.reliability == 1e-7

    def test_integral_float_cue_count(self) -> None:
        assert config_from_dict(ScenarioConfig, {"num_cues": 4.0}).num_cues == 4

    def test_file_round_trip(self) -> None:
        config = ScenarioConfig(num_cues=50)
        with tempfile.TemporaryDirectory() as tmp:
            path = save_config(config, Path(tmp) / "nested" / "scenario.json")
            assert json.loads(path.read_text())["num_cues"] == 50
            assert load_config(path) == config
            assert ScenarioConfig.from_json(path) == config

    def test_load_rejects_non_object(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "bad.json"
            path.write_text("[1, 2]")
            with raises(ValueError, match="JSON object"):
                load_config(path)


class TestScheduleConfig(unittest.TestCase):

    def test_defaults(self) -> None:
        config = ScheduleConfig()
        assert abs(config.v_free - 60 / 3.6) < 1e-12
        assert config.rho_max == 0.04
        assert config.carrier_frequency == 2e9

    def test_invalid(self) -> None:
        with raises(ValueError):
            ScheduleConfig(rho_max=0.0)
        with raises(ValueError):
            ScheduleConfig(allocation_latency=-1.0)

    def test_round_trip(self) -> None:
        config = ScheduleConfig(allocation_latency=2e-4)
        assert load_config_dict(config) == config


def load_config_dict(config: ScheduleConfig) -> ScheduleConfig:
    return ScheduleConfig.from_dict(json.loads(json.dumps(config.to_dict())))


class TestMergeAndHash(unittest.TestCase):

    def test_merge_precedence(self) -> None:
        from_file = ScenarioConfig(num_cues=20, reliability=1e-6)
        merged = merge_config(from_file, {"num_cues": 4, "reliability": None})
        assert merged.num_cues == 4
        assert merged.reliability == 1e-6

    def test_merge_nothing(self) -> None:
        base = ScenarioConfig()
        assert merge_config(base) is base
        assert merge_config(base, {"num_cues": None}) is base

    def test_merge_lists(self) -> None:
        merged = merge_config(ScenarioConfig(), {"avg_density": [0.001] * 4})
        assert merged.avg_density == (0.001,) * 4

    def test_merge_unknown(self) -> None:
        with raises(ValueError):
            merge_config(ScenarioConfig(), {"speed": 3})

    def test_hash_geometry_only(self) -> None:
        a = config_hash(ScenarioConfig(), GEOMETRY_FIELDS)
        b = config_hash(ScenarioConfig(avg_density=(0.001,) * 4, num_cues=50), GEOMETRY_FIELDS)
        c = config_hash(ScenarioConfig(pathloss_exp=3.5), GEOMETRY_FIELDS)
        assert a == b
        assert a != c

    def test_hash_all_fields(self) -> None:
        assert config_hash(ScenarioConfig()) != config_hash(ScenarioConfig(num_cues=4))
        assert len(config_hash(ScheduleConfig())) == 64
