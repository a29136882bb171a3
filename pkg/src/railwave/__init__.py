"""Deterministic simulator for train-to-ground mmWave relay selection.

The package models a linear train of roof-mounted mobile relays served by a
trackside base station and an aerial relay hovering ahead of the train. It
evaluates per-flow link budgets, derives which transmission modes blockage
leaves open, decides a mode per flow, schedules slot service, and compares
the decision rule against an exhaustive optimum and two baselines across
Monte Carlo sweeps.
"""

from .baselines import (
    OracleResult,
    SizeGuardError,
    average_deviation,
    exhaustive_optimal,
    mra,
    ra,
)
from .blockage import BlockageGraph, build_graph, edges_as_text, forbidden_modes
from .channel import (
    AntennaPattern,
    HopBudget,
    ModeEvaluation,
    ModeLink,
    evaluate_all_modes,
    evaluate_direct,
    evaluate_relay,
    max_doppler_hz,
    noise_power_mw,
    rate_bps,
    received_power_mw,
)
from .experiments import (
    ExperimentResult,
    ExperimentSpec,
    PRESETS,
    SweepRow,
    derive_seed,
    preset,
    read_csv,
    run_experiment,
    write_csv,
    write_metadata,
)
from .modes import Mode
from .relay import (
    FlowDecision,
    ModeAssignment,
    ModeSets,
    assignment_satisfies_p1_constraints,
    decide,
    min_required_rate,
)
from .scenario import (
    Flow,
    Instance,
    InvalidConfigError,
    RadioParams,
    Scenario,
    ScenarioConfig,
    build_scenario,
    sample_instance,
)
from .scheduling import ScheduleResult, priority, schedule, slots_needed

__version__ = "0.1.0"

__all__ = [
    "AntennaPattern",
    "BlockageGraph",
    "ExperimentResult",
    "ExperimentSpec",
    "Flow",
    "FlowDecision",
    "HopBudget",
    "Instance",
    "InvalidConfigError",
    "Mode",
    "ModeAssignment",
    "ModeEvaluation",
    "ModeLink",
    "ModeSets",
    "OracleResult",
    "PRESETS",
    "RadioParams",
    "Scenario",
    "ScenarioConfig",
    "ScheduleResult",
    "SizeGuardError",
    "SweepRow",
    "assignment_satisfies_p1_constraints",
    "average_deviation",
    "build_graph",
    "build_scenario",
    "decide",
    "derive_seed",
    "edges_as_text",
    "evaluate_all_modes",
    "evaluate_direct",
    "evaluate_relay",
    "exhaustive_optimal",
    "forbidden_modes",
    "max_doppler_hz",
    "min_required_rate",
    "mra",
    "noise_power_mw",
    "preset",
    "priority",
    "ra",
    "rate_bps",
    "read_csv",
    "received_power_mw",
    "run_experiment",
    "sample_instance",
    "schedule",
    "slots_needed",
    "write_csv",
    "write_metadata",
    "__version__",
]
