# ============================================================================ #
#                                                                              #
#     Title: Configuration                                                     #
#     Purpose: Static scenario parameters and run-level settings, with JSON    #
#         serialisation, validation and precedence merging.                    #
#                                                                              #
# ============================================================================ #


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Overview                                                              ####
#                                                                              #
# ---------------------------------------------------------------------------- #


## --------------------------------------------------------------------------- #
##  Description                                                             ####
## --------------------------------------------------------------------------- #


"""
!!! note "Summary"

    Defines `ScenarioConfig`, the single source of every static parameter of the urban grid (road geometry, densities, power budgets, fading constants, thresholds and tolerances), and `ScheduleConfig`, the settings of the semi-persistent scheduler.

    Both are frozen dataclasses validated on construction. They serialise to JSON with exactly their field names, reject unknown keys on load, and can be merged with command-line overrides: flags override file values, which override the built-in defaults.

    The defaults reproduce the reference scenario: 200 m x 8 m roads, 3 m sidewalks, 12 m pair separation, a 2 m protection square, theta = 1e-3, alpha = 3, 200 mW, psi = 1, 32 bytes, CUE thresholds of 5 dB and 10 dB, 500 kHz coherence bandwidth and epsilon = 1e-5.
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
import hashlib
import json
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence, TypeVar, Union

# ## Python Third Party Imports ----
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.utils.errors import generate_error_message


## --------------------------------------------------------------------------- #
##  Exports                                                                 ####
## --------------------------------------------------------------------------- #


__all__: list[str] = [
    "ScenarioConfig",
    "ScheduleConfig",
    "GEOMETRY_FIELDS",
    "config_from_dict",
    "load_config",
    "save_config",
    "merge_config",
    "config_hash",
]


## --------------------------------------------------------------------------- #
##  Constants                                                               ####
## --------------------------------------------------------------------------- #


NUM_ROADS: int = 4

### Fields that change the Omega table ----
GEOMETRY_FIELDS: tuple[str, ...] = (
    "road_length",
    "road_width",
    "sidewalk_width",
    "pair_separation",
    "protection_half_length",
    "pathloss_exp",
    "fixed_separation",
)

ConfigT = TypeVar("ConfigT", "ScenarioConfig", "ScheduleConfig")


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Classes                                                               ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def _require(condition: bool, name: str, value: Any, expected: str) -> None:
    if not condition:
        raise ValueError(generate_error_message(parameter_name=name, value_parsed=str(value), options=[expected]))


@dataclass(frozen=True)
class ScenarioConfig:
    """
    !!! note "Summary"
        All static parameters of one urban-grid scenario.

    ???+ abstract "Details"
        Lengths are in metres, densities in vehicles per square metre, powers in watts, thresholds linear (the SINR thresholds) or in bits (`info_threshold`), bandwidth in hertz.

        `cue_sinr_thresholds` holds the frame-design threshold first and the per-drop allocation threshold second. `tolerances` holds the Newton tolerance on the frame size first and the bisection tolerance on the pilot fraction second. `fixed_separation` selects how the own-pair positive moment is computed: exactly `pair_separation ** (2 * pathloss_exp)` when `True`, or the conditional expectation over a disc of that radius when `False`.
    """

    road_length: float = 200.0
    road_width: float = 8.0
    sidewalk_width: float = 3.0
    pair_separation: float = 12.0
    protection_half_length: float = 1.0
    avg_density: tuple[float, float, float, float] = (0.005, 0.005, 0.005, 0.005)
    num_cues: int = 10
    pathloss_const: float = 1e-3
    pathloss_exp: float = 3.0
    max_power_v: float = 0.2
    power_ratio: float = 1.0
    reliability: float = 1e-5
    info_threshold: float = 256.0
    cue_sinr_thresholds: tuple[float, float] = (10 ** (5 / 10), 10 ** (10 / 10))
    coherence_bandwidth: float = 500e3
    tolerances: tuple[float, float] = (1e-4, 1e-4)
    fixed_separation: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "avg_density", tuple(float(x) for x in self.avg_density))
        object.__setattr__(self, "cue_sinr_thresholds", tuple(float(x) for x in self.cue_sinr_thresholds))
        object.__setattr__(self, "tolerances", tuple(float(x) for x in self.tolerances))
        _require(self.road_length > self.road_width > 0, "road_length/road_width", (self.road_length, self.road_width), "A_RL > A_RW > 0")
        _require(self.sidewalk_width > 0, "sidewalk_width", self.sidewalk_width, "> 0")
        _require(
            self.sidewalk_width < (self.road_length - self.road_width) / 2,
            "sidewalk_width",
            self.sidewalk_width,
            "< half the building block side",
        )
        _require(
            0 < 2 * self.protection_half_length < min(self.road_length, self.road_width),
            "protection_half_length",
            self.protection_half_length,
            "0 < 2 r_P < min(A_RL, A_RW)",
        )
        _require(0 < self.pair_separation < self.road_length, "pair_separation", self.pair_separation, "0 < r_V < A_RL")
        _require(len(self.avg_density) == NUM_ROADS, "avg_density", self.avg_density, "four per-road densities")
        _require(all(rho >= 0 and math.isfinite(rho) for rho in self.avg_density), "avg_density", self.avg_density, ">= 0")
        _require(isinstance(self.num_cues, int) and self.num_cues >= 0, "num_cues", self.num_cues, "integer >= 0")
        _require(0 < self.reliability < 0.5, "reliability", self.reliability, "0 < epsilon < 0.5")
        for name in ("pathloss_const", "max_power_v", "power_ratio", "info_threshold", "coherence_bandwidth"):
            _require(getattr(self, name) > 0, name, getattr(self, name), "> 0")
        _require(self.pathloss_exp > 2, "pathloss_exp", self.pathloss_exp, "> 2")
        _require(len(self.cue_sinr_thresholds) == 2, "cue_sinr_thresholds", self.cue_sinr_thresholds, "(frame, allocation)")
        _require(all(x > 0 for x in self.cue_sinr_thresholds), "cue_sinr_thresholds", self.cue_sinr_thresholds, "> 0")
        _require(len(self.tolerances) == 2, "tolerances", self.tolerances, "(mu_zeta, mu_eta)")
        _require(all(x > 0 for x in self.tolerances), "tolerances", self.tolerances, "> 0")

    ### Derived quantities ----

    @property
    def road_area(self) -> float:
        return self.road_length * self.road_width

    @property
    def max_power_c(self) -> float:
        return self.power_ratio * self.max_power_v

    @property
    def cue_frame_threshold(self) -> float:
        return self.cue_sinr_thresholds[0]

    @property
    def cue_alloc_threshold(self) -> float:
        return self.cue_sinr_thresholds[1]

    @property
    def mu_zeta(self) -> float:
        return self.tolerances[0]

    @property
    def mu_eta(self) -> float:
        return self.tolerances[1]

    @property
    def block_half_side(self) -> float:
        return (self.road_length - self.road_width) / 2

    def with_updates(self, **changes: Any) -> "ScenarioConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = asdict(self)
        for key, value in out.items():
            if isinstance(value, tuple):
                out[key] = list(value)
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ScenarioConfig":
        return config_from_dict(cls, data)

    def to_json(self, path: Optional[Union[str, Path]] = None) -> str:
        text: str = json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text

    @classmethod
    def from_json(cls, source: Union[str, Path]) -> "ScenarioConfig":
        """Loads from a file path, or from a JSON string when `source` starts with `{`."""
        if isinstance(source, str) and source.lstrip().startswith("{"):
            return config_from_dict(cls, json.loads(source))
        return load_config(source, cls)


@dataclass(frozen=True)
class ScheduleConfig:
    """
    !!! note "Summary"
        Settings of the semi-persistent scheduler.

    ???+ abstract "Details"
        The velocity law is the linear closure `v = v_free * (1 - rho / rho_max)`. A report counts as a density epoch when any road's density moves by more than `epoch_threshold` relative to the density used for the current frame. `allocation_latency` is the time (s) a power allocation takes to execute; the next allocation window is measured from its completion.
    """

    v_free: float = 60 / 3.6
    rho_max: float = 0.04
    carrier_frequency: float = 2e9
    epoch_threshold: float = 0.1
    allocation_latency: float = 0.0

    def __post_init__(self) -> None:
        _require(self.v_free >= 0, "v_free", self.v_free, ">= 0")
        _require(self.rho_max > 0, "rho_max", self.rho_max, "> 0")
        _require(self.carrier_frequency > 0, "carrier_frequency", self.carrier_frequency, "> 0")
        _require(self.epoch_threshold >= 0, "epoch_threshold", self.epoch_threshold, ">= 0")
        _require(self.allocation_latency >= 0, "allocation_latency", self.allocation_latency, ">= 0")

    def with_updates(self, **changes: Any) -> "ScheduleConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ScheduleConfig":
        return config_from_dict(cls, data)


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Functions                                                             ####
#                                                                              #
# ---------------------------------------------------------------------------- #


def config_from_dict(cls: type[ConfigT], data: Mapping[str, Any]) -> ConfigT:
    """
    !!! note "Summary"
        Builds a config dataclass from a mapping, rejecting unknown keys.

    ???+ abstract "Details"
        Missing keys fall back to the dataclass defaults. JSON arrays are converted to tuples for the tuple-typed fields.

    Params:
        cls (type[ConfigT]):
            `ScenarioConfig` or `ScheduleConfig`.
        data (Mapping[str, Any]):
            Parsed JSON object.

    Raises:
        (ValueError):
            If `data` holds a key that is not a field of `cls`, or a value violates an invariant.

    Returns:
        (ConfigT):
            The validated config.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Example 1: Unknown field"}
        >>> from v2v_urllc.utils.config import ScenarioConfig, config_from_dict
        >>> config_from_dict(ScenarioConfig, {"road_lenght": 100})
        Traceback (most recent call last):
            ...
        ValueError: Invalid 'ScenarioConfig': road_lenght. Options: [...]

        ```
    """
    known: list[str] = [f.name for f in fields(cls)]
    unknown: list[str] = [key for key in data if key not in known]
    if unknown:
        raise ValueError(generate_error_message(parameter_name=cls.__name__, value_parsed=", ".join(unknown), options=known))
    kwargs: dict[str, Any] = {key: tuple(value) if isinstance(value, list) else value for key, value in data.items()}
    if "num_cues" in kwargs and isinstance(kwargs["num_cues"], float) and kwargs["num_cues"].is_integer():
        kwargs["num_cues"] = int(kwargs["num_cues"])
    return cls(**kwargs)


@typechecked
def load_config(path: Union[str, Path], cls: type = ScenarioConfig) -> Any:
    """
    !!! note "Summary"
        Reads a config dataclass from a JSON file.

    Params:
        path (Union[str, Path]):
            Location of the JSON document.
        cls (type):
            Config class to build.
            Default: `ScenarioConfig`

    Returns:
        (Any):
            The validated config instance.
    """
    with open(path, encoding="utf-8") as handle:
        data: Any = json.load(handle)
    if not isinstance(data, dict):
        raise ValueError(f"Config file {path} must contain a JSON object.")
    return config_from_dict(cls, data)


@typechecked
def save_config(config: Union[ScenarioConfig, ScheduleConfig], path: Union[str, Path]) -> Path:
    """
    !!! note "Summary"
        Writes a config dataclass as an indented JSON document and returns the path.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(config.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return target


def merge_config(base: ConfigT, overrides: Optional[Mapping[str, Any]] = None) -> ConfigT:
    """
    !!! note "Summary"
        Applies the non-`None` entries of `overrides` on top of `base`.

    ???+ abstract "Details"
        This is how command-line flags take precedence over file values: the CLI passes every flag, and flags the user did not give are `None` and therefore ignored.

    Params:
        base (ConfigT):
            Config loaded from file or defaults.
        overrides (Optional[Mapping[str, Any]]):
            Candidate replacements keyed by field name.
            Default: `None`

    Raises:
        (ValueError):
            If an override names an unknown field.

    Returns:
        (ConfigT):
            The merged, re-validated config.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Example 1: Flag beats default"}
        >>> from v2v_urllc.utils.config import ScenarioConfig, merge_config
        >>> merge_config(ScenarioConfig(), {"num_cues": 4, "reliability": None}).num_cues
        4

        ```
    """
    if not overrides:
        return base
    known: set[str] = {f.name for f in fields(base)}
    changes: dict[str, Any] = {}
    for key, value in overrides.items():
        if value is None:
            continue
        if key not in known:
            raise ValueError(generate_error_message(parameter_name=type(base).__name__, value_parsed=key, options=sorted(known)))
        changes[key] = tuple(value) if isinstance(value, list) else value
    return replace(base, **changes) if changes else base


def config_hash(config: Union[ScenarioConfig, ScheduleConfig], keys: Optional[Sequence[str]] = None) -> str:
    """
    !!! note "Summary"
        Stable SHA-256 digest of selected config fields (all fields by default).

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Example 1: Density does not change the geometry hash"}
        >>> from v2v_urllc.utils.config import GEOMETRY_FIELDS, ScenarioConfig, config_hash
        >>> a = config_hash(ScenarioConfig(), GEOMETRY_FIELDS)
        >>> b = config_hash(ScenarioConfig(avg_density=(0.001,) * 4), GEOMETRY_FIELDS)
        >>> a == b
        True

        ```
    """
    data: dict[str, Any] = config.to_dict()
    if keys is not None:
        data = {key: data[key] for key in keys}
    payload: str = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
