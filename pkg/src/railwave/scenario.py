"""Scenario geometry, radio parameters, and deterministic instance sampling.

A scenario is a static snapshot: a train of roof-mounted mobile relays (MRs)
on a straight track, one ground base station (BS), and one hovering UAV.
Instances add per-flow traffic demands and an injected set of blocked MRs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields, asdict

import numpy as np

Position = tuple[float, float, float]


class InvalidConfigError(ValueError):
    """Raised when a configuration value is missing, unknown, or out of range."""


@dataclass(frozen=True)
class RadioParams:
    """Radio-level constants. Defaults give the reference mmWave setup."""

    transmit_power_mw: float = 1000.0        # P_t
    carrier_freq_hz: float = 28e9            # f_c
    bandwidth_hz: float = 1200e6             # W
    noise_psd_dbm_per_mhz: float = -134.0    # N_0
    path_loss_exponent: float = 2.0          # alpha
    half_power_beamwidth_deg: float = 30.0   # theta_-3dB
    slot_duration_s: float = 18e-6           # delta_t
    sched_phase_s: float = 850e-6            # T_s
    si_cancellation: float = 1e-13           # beta
    transceiver_efficiency: float = 1.0      # eta

    def __post_init__(self) -> None:
        if self.transmit_power_mw <= 0:
            raise InvalidConfigError("transmit_power_mw must be positive")
        if self.carrier_freq_hz <= 0:
            raise InvalidConfigError("carrier_freq_hz must be positive")
        if self.bandwidth_hz <= 0:
            raise InvalidConfigError("bandwidth_hz must be positive")
        if self.path_loss_exponent <= 0:
            raise InvalidConfigError("path_loss_exponent must be positive")
        if not 0 < self.half_power_beamwidth_deg < 180:
            raise InvalidConfigError("half_power_beamwidth_deg must be in (0, 180)")
        if self.slot_duration_s <= 0 or self.sched_phase_s <= 0:
            raise InvalidConfigError("slot_duration_s and sched_phase_s must be positive")
        if self.si_cancellation < 0:
            raise InvalidConfigError("si_cancellation must be non-negative")
        if not 0 < self.transceiver_efficiency <= 1:
            raise InvalidConfigError("transceiver_efficiency must be in (0, 1]")


@dataclass(frozen=True)
class ScenarioConfig:
    """Full scenario description; every field has a usable default.

    ``bs_along_m`` is the BS position along the track measured from the train
    tail; ``None`` places it level with the train midpoint.
    """

    train_length_m: float = 200.0
    mr_count: int = 16
    bs_offset_m: float = 50.0      # perpendicular track offset
    bs_along_m: float | None = None
    bs_height_m: float = 10.0
    uav_ahead_m: float = 40.0      # ahead of the locomotive
    uav_height_m: float = 100.0
    mr_height_m: float = 2.5
    radio: RadioParams = field(default_factory=RadioParams)

    def __post_init__(self) -> None:
        if self.train_length_m <= 0:
            raise InvalidConfigError("train_length_m must be positive")
        if self.mr_count < 1:
            raise InvalidConfigError("mr_count must be at least 1")
        for name in ("bs_height_m", "uav_height_m", "mr_height_m"):
            if getattr(self, name) < 0:
                raise InvalidConfigError(f"{name} must be non-negative")

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        data = dict(data)
        radio_kwargs = {}
        for f in fields(RadioParams):
            if f.name in data:
                radio_kwargs[f.name] = data.pop(f.name)
        scen_names = {f.name for f in fields(cls)} - {"radio"}
        unknown = set(data) - scen_names
        if unknown:
            raise InvalidConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(radio=RadioParams(**radio_kwargs), **data)
        except TypeError as exc:
            raise InvalidConfigError(str(exc)) from exc

    @classmethod
    def from_json(cls, path: str) -> "ScenarioConfig":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidConfigError("config JSON must be an object")
        return cls.from_dict(data)

    def to_flat_dict(self) -> dict:
        """Flat key/value view with radio fields inlined (JSON-friendly)."""
        out = asdict(self)
        out.update(out.pop("radio"))
        return out

    def replace(self, **overrides) -> "ScenarioConfig":
        flat = self.to_flat_dict()
        flat.update(overrides)
        return ScenarioConfig.from_dict(flat)


@dataclass(frozen=True)
class Scenario:
    """Built geometry: immutable positions plus the radio parameters."""

    config: ScenarioConfig
    mr_positions: tuple[Position, ...]   # index 0 is MR 1
    bs_position: Position
    uav_position: Position

    @property
    def mr_count(self) -> int:
        return len(self.mr_positions)

    @property
    def radio(self) -> RadioParams:
        return self.config.radio

    def mr_position(self, mr_index: int) -> Position:
        """Position of MR ``mr_index`` (1-based)."""
        if not 1 <= mr_index <= self.mr_count:
            raise ValueError(f"MR index {mr_index} out of range 1..{self.mr_count}")
        return self.mr_positions[mr_index - 1]


@dataclass(frozen=True)
class Flow:
    """A downlink demand toward one destination MR."""

    id: int
    dest_mr: int
    qos_bps: float       # q_f
    sinr_min: float      # linear SINR threshold


@dataclass(frozen=True)
class Instance:
    """One simulated drop: scenario, flows, blocked MRs, and a slot budget."""

    scenario: Scenario
    flows: tuple[Flow, ...]
    blocked: frozenset[int]
    total_slots: int     # M
    seed: int


def distance(a: Position, b: Position) -> float:
    return math.dist(a, b)


def build_scenario(config: ScenarioConfig) -> Scenario:
    """Place MRs at the centers of equal train segments, plus BS and UAV."""
    length = config.train_length_m
    count = config.mr_count
    spacing = length / count
    mr_positions = tuple(
        ((i + 0.5) * spacing, 0.0, config.mr_height_m) for i in range(count)
    )
    bs_along = config.bs_along_m if config.bs_along_m is not None else length / 2
    bs_position = (bs_along, config.bs_offset_m, config.bs_height_m)
    uav_position = (length + config.uav_ahead_m, 0.0, config.uav_height_m)
    return Scenario(config, mr_positions, bs_position, uav_position)


def sample_instance(
    scenario: Scenario,
    flow_count: int,
    blocked_count: int,
    qos_range_bps: tuple[float, float],
    sinr_min: float,
    total_slots: int,
    seed: int,
) -> Instance:
    """Draw one instance; identical arguments always return equal instances.

    Flow destinations are a uniform subset of MRs (all of them when
    ``flow_count`` equals the MR count) and the blocked set is a uniform
    subset of MR indices, independent of the flow destinations.
    """
    count = scenario.mr_count
    if not 1 <= flow_count <= count:
        raise InvalidConfigError(f"flow_count must be in 1..{count}")
    if not 0 <= blocked_count <= count:
        raise InvalidConfigError(f"blocked_count must be in 0..{count}")
    lo, hi = qos_range_bps
    if lo <= 0 or hi < lo:
        raise InvalidConfigError("qos_range_bps must satisfy 0 < lo <= hi")
    if sinr_min < 0:
        raise InvalidConfigError("sinr_min must be non-negative")
    if total_slots < 0:
        raise InvalidConfigError("total_slots must be non-negative")
    if seed < 0:
        raise InvalidConfigError("seed must be non-negative")

    rng = np.random.default_rng(seed)
    if flow_count == count:
        dests = np.arange(1, count + 1)
    else:
        dests = np.sort(rng.choice(count, size=flow_count, replace=False)) + 1
    blocked = frozenset(int(b) + 1 for b in rng.choice(count, size=blocked_count, replace=False))
    qos = rng.uniform(lo, hi, size=flow_count)
    flows = tuple(
        Flow(id=i + 1, dest_mr=int(dests[i]), qos_bps=float(qos[i]), sinr_min=sinr_min)
        for i in range(flow_count)
    )
    return Instance(scenario, flows, blocked, total_slots, seed)


def blocked_by_power(scenario: Scenario, epsilon_mw: float) -> frozenset[int]:
    """Derive the blocked set from direct received powers below ``epsilon_mw``."""
    from .channel import received_power_mw

    if epsilon_mw < 0:
        raise InvalidConfigError("epsilon_mw must be non-negative")
    blocked = set()
    for idx in range(1, scenario.mr_count + 1):
        p = received_power_mw(scenario.bs_position, scenario.mr_position(idx), scenario.radio)
        if p < epsilon_mw:
            blocked.add(idx)
    return frozenset(blocked)
