"""Monte Carlo sweep harness with deterministic seeding and CSV output.

Each experiment sweeps one knob and reports, per (scheme, value) pair, the
mean completed-flow count and mean goodput over a fixed number of trials.
Trial seeds derive from SHA-256 of the experiment name, master seed, trial
index, and, for sweeps that change the sampled population (blocked count,
flow count, relay position, oracle comparison), the sweep value itself.
Threshold and slot-budget sweeps deliberately omit the value from the hash
so every sweep point reuses the same instances; the resulting curves are
paired and move monotonically as the knob tightens or loosens.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
from dataclasses import dataclass, field, fields

import numpy as np

from .baselines import ORACLE_MAX_FLOWS, average_deviation, exhaustive_optimal, mra, ra
from .blockage import build_graph
from .channel import evaluate_all_modes
from .relay import decide
from .scenario import (
    Instance,
    InvalidConfigError,
    Scenario,
    ScenarioConfig,
    build_scenario,
    sample_instance,
)
from .scheduling import schedule

log = logging.getLogger(__name__)

SWEEP_KINDS = (
    "blocked_count",
    "sinr_min",
    "slot_budget",
    "flow_count",
    "uav_position",
    "oracle_compare",
)

# These sweeps leave the sampled instances untouched, so the value stays out
# of the trial-seed hash and every sweep point sees the same population.
PAIRED_SWEEPS = frozenset({"sinr_min", "slot_budget"})

SCHEMES = ("UMRA", "MRA", "RA", "OS")

CSV_HEADER = ("sweep", "scheme", "value", "mean_flows", "mean_throughput_bps", "trials")


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything needed to reproduce one sweep."""

    name: str
    sweep: str
    values: tuple[float, ...]
    trials: int = 50
    seed: int = 20260814
    flow_count: int = 16
    blocked_count: int = 8
    qos_range_bps: tuple[float, float] = (5.0e6, 2.0e7)
    sinr_min: float = 7.0e4
    total_slots: int = 2400
    base: dict = field(default_factory=dict)
    schemes: tuple[str, ...] = ("UMRA", "MRA", "RA")
    oracle_max_flows: int = ORACLE_MAX_FLOWS
    oracle_override: bool = False

    def __post_init__(self) -> None:
        if self.sweep not in SWEEP_KINDS:
            raise InvalidConfigError(f"unknown sweep kind: {self.sweep!r}")
        if not self.values:
            raise InvalidConfigError("sweep needs at least one value")
        if self.trials < 1:
            raise InvalidConfigError("trials must be positive")
        bad = [s for s in self.schemes if s not in SCHEMES]
        if bad:
            raise InvalidConfigError(f"unknown scheme(s): {bad}")

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentSpec":
        if not isinstance(raw, dict):
            raise InvalidConfigError("experiment spec must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise InvalidConfigError(f"unknown experiment key(s): {sorted(unknown)}")
        kw = dict(raw)
        for key in ("values", "schemes", "qos_range_bps"):
            if key in kw and isinstance(kw[key], list):
                kw[key] = tuple(kw[key])
        try:
            return cls(**kw)
        except TypeError as exc:
            raise InvalidConfigError(str(exc)) from exc

    @classmethod
    def from_json(cls, path: str) -> "ExperimentSpec":
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidConfigError(f"cannot read experiment spec {path}: {exc}") from exc
        return cls.from_dict(raw)


# Side-street geometry that keeps the aerial relay's SINR above every
# threshold in the sweep range while neighbor relays straddle it.
CALIBRATED_BASE = {"bs_along_m": 240.0, "bs_offset_m": 215.0}


def _preset_blocked_count() -> ExperimentSpec:
    return ExperimentSpec(
        name="blocked_count",
        sweep="blocked_count",
        values=tuple(float(b) for b in range(0, 17)),
        trials=100,
        base=dict(CALIBRATED_BASE),
    )


def _preset_sinr_min() -> ExperimentSpec:
    return ExperimentSpec(
        name="sinr_min",
        sweep="sinr_min",
        values=tuple(float(v) for v in np.arange(0.0, 1.3e5 + 1.0, 1.0e4)),
        base=dict(CALIBRATED_BASE),
    )


def _preset_slot_budget() -> ExperimentSpec:
    # no blockage here so every scheme can reach the full flow count once
    # the slot budget stops binding
    return ExperimentSpec(
        name="slot_budget",
        sweep="slot_budget",
        values=(4.0, 8.0, 12.0, 16.0, 24.0, 48.0, 120.0, 480.0, 1200.0, 2400.0, 4800.0),
        blocked_count=0,
        base=dict(CALIBRATED_BASE),
    )


def _preset_flow_count() -> ExperimentSpec:
    return ExperimentSpec(
        name="flow_count",
        sweep="flow_count",
        values=(2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0),
        base=dict(CALIBRATED_BASE),
    )


def _preset_uav_position() -> ExperimentSpec:
    return ExperimentSpec(
        name="uav_position",
        sweep="uav_position",
        values=(-40.0, -20.0, 0.0, 20.0, 40.0, 60.0, 80.0),
        base=dict(CALIBRATED_BASE),
    )


def _preset_oracle_compare() -> ExperimentSpec:
    base = dict(CALIBRATED_BASE)
    base["mr_count"] = 10
    return ExperimentSpec(
        name="oracle_compare",
        sweep="oracle_compare",
        values=tuple(float(b) for b in range(0, 11)),
        trials=50,
        flow_count=10,
        total_slots=1400,
        base=base,
        schemes=("UMRA", "MRA", "RA", "OS"),
    )


PRESETS = {
    "blocked_count": _preset_blocked_count,
    "sinr_min": _preset_sinr_min,
    "slot_budget": _preset_slot_budget,
    "flow_count": _preset_flow_count,
    "uav_position": _preset_uav_position,
    "oracle_compare": _preset_oracle_compare,
}


def preset(name: str) -> ExperimentSpec:
    try:
        factory = PRESETS[name]
    except KeyError:
        raise InvalidConfigError(
            f"unknown experiment preset {name!r}; choose from {sorted(PRESETS)}"
        ) from None
    return factory()


def derive_seed(*parts: object) -> int:
    """Stable 64-bit seed from the string forms of the given parts."""
    text = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def trial_seed(spec: ExperimentSpec, value: float, trial: int) -> int:
    if spec.sweep in PAIRED_SWEEPS:
        return derive_seed(spec.name, spec.seed, trial)
    return derive_seed(spec.name, spec.seed, repr(float(value)), trial)


@dataclass(frozen=True)
class SweepRow:
    sweep: str
    scheme: str
    value: float
    mean_flows: float
    mean_throughput_bps: float
    trials: int


@dataclass(frozen=True)
class ExperimentResult:
    spec: ExperimentSpec
    rows: tuple[SweepRow, ...]
    # (scheme, value) -> per-trial lists, kept for error bars and tests
    samples: dict


def _knobs_for_value(
    spec: ExperimentSpec, base_config: ScenarioConfig, value: float
) -> tuple[ScenarioConfig, int, int, float, int]:
    config = base_config
    flow_count = spec.flow_count
    blocked_count = spec.blocked_count
    sinr_min = spec.sinr_min
    total_slots = spec.total_slots
    if spec.sweep in ("blocked_count", "oracle_compare"):
        blocked_count = int(value)
    elif spec.sweep == "flow_count":
        flow_count = int(value)
    elif spec.sweep == "sinr_min":
        sinr_min = float(value)
    elif spec.sweep == "slot_budget":
        total_slots = int(value)
    elif spec.sweep == "uav_position":
        config = config.replace(uav_ahead_m=float(value))
    return config, flow_count, blocked_count, sinr_min, total_slots


def _run_trial(
    spec: ExperimentSpec,
    scenario: Scenario,
    instance: Instance,
    seed: int,
) -> dict[str, tuple[float, float]]:
    """Per-scheme (completed flows, goodput in bit/s) for one instance."""
    params = scenario.radio
    frame_s = params.sched_phase_s + instance.total_slots * params.slot_duration_s
    graph = build_graph(instance.blocked, scenario.mr_count)
    evaluations = {
        f.id: evaluate_all_modes(f, scenario, graph) for f in instance.flows
    }
    out: dict[str, tuple[float, float]] = {}
    for scheme in spec.schemes:
        if scheme == "UMRA":
            assignment, _ = decide(instance, graph, evaluations)
            result = schedule(instance, assignment)
        elif scheme == "MRA":
            _, _, result = mra(instance, evaluations)
        elif scheme == "RA":
            _, _, result = ra(
                instance, graph, evaluations, seed=derive_seed(seed, "ra")
            )
        elif scheme == "OS":
            oracle = exhaustive_optimal(
                instance,
                graph,
                evaluations,
                max_flows=spec.oracle_max_flows,
                override_size_guard=spec.oracle_override,
            )
            out[scheme] = (
                float(oracle.best_count),
                oracle.best_throughput_bits / frame_s,
            )
            continue
        else:  # unreachable after spec validation
            raise InvalidConfigError(f"unknown scheme {scheme!r}")
        out[scheme] = (float(result.flows_completed), result.throughput_bits / frame_s)
    return out


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    base_config = ScenarioConfig.from_dict(spec.base)
    rows: list[SweepRow] = []
    samples: dict[tuple[str, float], dict[str, list[float]]] = {}
    for value in spec.values:
        config, flow_count, blocked_count, sinr_min, total_slots = _knobs_for_value(
            spec, base_config, value
        )
        scenario = build_scenario(config)
        per_scheme: dict[str, tuple[list[float], list[float]]] = {
            s: ([], []) for s in spec.schemes
        }
        for trial in range(spec.trials):
            seed = trial_seed(spec, value, trial)
            instance = sample_instance(
                scenario,
                flow_count=flow_count,
                blocked_count=blocked_count,
                qos_range_bps=spec.qos_range_bps,
                sinr_min=sinr_min,
                total_slots=total_slots,
                seed=seed,
            )
            outcome = _run_trial(spec, scenario, instance, seed)
            for scheme, (flows_done, goodput) in outcome.items():
                per_scheme[scheme][0].append(flows_done)
                per_scheme[scheme][1].append(goodput)
        for scheme in spec.schemes:
            flows_list, thr_list = per_scheme[scheme]
            rows.append(
                SweepRow(
                    sweep=spec.sweep,
                    scheme=scheme,
                    value=float(value),
                    mean_flows=float(np.mean(flows_list)),
                    mean_throughput_bps=float(np.mean(thr_list)),
                    trials=spec.trials,
                )
            )
            samples[(scheme, float(value))] = {
                "flows": list(flows_list),
                "throughput_bps": list(thr_list),
            }
        log.info("sweep %s value %s done (%d trials)", spec.sweep, value, spec.trials)
    return ExperimentResult(spec=spec, rows=tuple(rows), samples=samples)


def rows_for_scheme(result: ExperimentResult, scheme: str) -> list[SweepRow]:
    return [r for r in result.rows if r.scheme == scheme]


def oracle_gap(result: ExperimentResult, scheme: str = "UMRA") -> float:
    """Mean relative completion shortfall of a scheme against the optimum."""
    os_rows = rows_for_scheme(result, "OS")
    heur_rows = rows_for_scheme(result, scheme)
    if not os_rows:
        raise ValueError("experiment has no optimal-scheme rows")
    return average_deviation(
        [r.mean_flows for r in os_rows], [r.mean_flows for r in heur_rows]
    )


def write_csv(rows: list[SweepRow] | tuple[SweepRow, ...], path: str) -> None:
    """Write rows with repr-exact floats so reruns are byte-identical."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(
                [
                    row.sweep,
                    row.scheme,
                    repr(float(row.value)),
                    repr(float(row.mean_flows)),
                    repr(float(row.mean_throughput_bps)),
                    row.trials,
                ]
            )


def read_csv(path: str) -> list[SweepRow]:
    out: list[SweepRow] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header: {header}")
        for rec in reader:
            out.append(
                SweepRow(
                    sweep=rec[0],
                    scheme=rec[1],
                    value=float(rec[2]),
                    mean_flows=float(rec[3]),
                    mean_throughput_bps=float(rec[4]),
                    trials=int(rec[5]),
                )
            )
    return out


def write_metadata(spec: ExperimentSpec, path: str) -> None:
    """Dump every resolved knob so a run can be reproduced from the file."""
    from . import __version__

    config = ScenarioConfig.from_dict(spec.base)
    payload = {
        "version": __version__,
        "experiment": spec.name,
        "sweep": spec.sweep,
        "values": list(spec.values),
        "trials": spec.trials,
        "seed": spec.seed,
        "schemes": list(spec.schemes),
        "flow_count": spec.flow_count,
        "blocked_count": spec.blocked_count,
        "qos_range_bps": list(spec.qos_range_bps),
        "sinr_min": spec.sinr_min,
        "total_slots": spec.total_slots,
        "paired_population": spec.sweep in PAIRED_SWEEPS,
        "oracle_max_flows": spec.oracle_max_flows,
        "oracle_override": spec.oracle_override,
        "scenario": config.to_flat_dict(),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
