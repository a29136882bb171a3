"""Per-flow transmission-mode decision and the feasibility checker.

The decision rule serves a flow directly whenever its destination is not
blocked and the direct link clears both thresholds; otherwise it takes the
highest-rate relay among the modes the blockage graph leaves open, and
abandons the flow when even that best relay fails a threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .blockage import BlockageGraph, forbidden_modes
from .channel import ModeEvaluation
from .modes import Mode, RELAY_MODES
from .scenario import Flow, Instance, RadioParams


@dataclass(frozen=True)
class FlowDecision:
    """Chosen mode with the SINR/rate it was chosen at (zeros if abandoned)."""

    mode: Mode
    sinr: float
    rate_bps: float


# flow id -> decision
ModeAssignment = dict[int, FlowDecision]


@dataclass(frozen=True)
class ModeSets:
    """Partition of flow ids by chosen mode."""

    direct: frozenset[int]
    left: frozenset[int]
    right: frozenset[int]
    uav: frozenset[int]
    abandoned: frozenset[int]

    @classmethod
    def from_assignment(cls, assignment: ModeAssignment) -> "ModeSets":
        buckets: dict[Mode, set[int]] = {m: set() for m in Mode}
        for fid, decision in assignment.items():
            buckets[decision.mode].add(fid)
        return cls(
            direct=frozenset(buckets[Mode.DIRECT]),
            left=frozenset(buckets[Mode.LEFT]),
            right=frozenset(buckets[Mode.RIGHT]),
            uav=frozenset(buckets[Mode.UAV]),
            abandoned=frozenset(buckets[Mode.ABANDONED]),
        )


def min_required_rate(flow: Flow, total_slots: int, params: RadioParams) -> float:
    """Lowest rate that can carry q_f within the slot phase.

    Traffic accrues over the whole superframe T_s + M*dt but is served only
    during the M slots, hence the ratio above one.
    """
    if total_slots < 1:
        raise ValueError("total_slots must be at least 1")
    slot_phase = total_slots * params.slot_duration_s
    return flow.qos_bps * (params.sched_phase_s + slot_phase) / slot_phase


def boundary_valid_modes(flow: Flow, mr_count: int) -> tuple[Mode, ...]:
    """Modes that exist for this destination, ignoring blockage."""
    out = [Mode.DIRECT]
    if flow.dest_mr > 1:
        out.append(Mode.LEFT)
    if flow.dest_mr < mr_count:
        out.append(Mode.RIGHT)
    out.append(Mode.UAV)
    return tuple(out)


def structurally_allowed_modes(flow: Flow, graph: BlockageGraph) -> tuple[Mode, ...]:
    """Modes neither missing at the train boundary nor graph-forbidden."""
    forbidden = forbidden_modes(flow.dest_mr, graph)
    return tuple(
        m for m in (Mode.DIRECT, Mode.LEFT, Mode.RIGHT, Mode.UAV) if m not in forbidden
    )


def decide(
    instance: Instance,
    graph: BlockageGraph,
    evaluations: dict[int, ModeEvaluation],
) -> tuple[ModeAssignment, ModeSets]:
    """Assign each flow a mode (or abandon it) independently of the others."""
    params = instance.scenario.radio
    assignment: ModeAssignment = {}
    for flow in instance.flows:
        if instance.total_slots < 1:
            assignment[flow.id] = FlowDecision(Mode.ABANDONED, 0.0, 0.0)
            continue
        r_min = min_required_rate(flow, instance.total_slots, params)
        ev = evaluations[flow.id]
        direct = ev.direct
        if (
            flow.dest_mr not in instance.blocked
            and direct.sinr >= flow.sinr_min
            and direct.rate_bps >= r_min
        ):
            assignment[flow.id] = FlowDecision(Mode.DIRECT, direct.sinr, direct.rate_bps)
            continue
        forbidden = forbidden_modes(flow.dest_mr, graph)
        best_mode = None
        best = None
        for mode in RELAY_MODES:  # fixed precedence Left > Right > Uav on ties
            if mode in forbidden:
                continue
            link = ev.for_mode(mode)
            if best is None or link.rate_bps > best.rate_bps:
                best_mode, best = mode, link
        if (
            best is not None
            and best.sinr >= flow.sinr_min
            and best.rate_bps >= r_min
        ):
            assignment[flow.id] = FlowDecision(best_mode, best.sinr, best.rate_bps)
        else:
            assignment[flow.id] = FlowDecision(Mode.ABANDONED, 0.0, 0.0)
    return assignment, ModeSets.from_assignment(assignment)


def assignment_satisfies_p1_constraints(
    instance: Instance,
    graph: BlockageGraph,
    assignment: ModeAssignment,
) -> bool:
    """Check single-mode, boundary, blockage, and threshold feasibility."""
    params = instance.scenario.radio
    flow_ids = {f.id for f in instance.flows}
    if set(assignment) != flow_ids:
        return False
    for flow in instance.flows:
        decision = assignment[flow.id]
        if decision.mode is Mode.ABANDONED:
            continue
        if decision.mode in forbidden_modes(flow.dest_mr, graph):
            return False
        if instance.total_slots < 1:
            return False
        r_min = min_required_rate(flow, instance.total_slots, params)
        if decision.sinr < flow.sinr_min or decision.rate_bps < r_min:
            return False
        if not math.isfinite(decision.rate_bps) or decision.rate_bps <= 0:
            return False
    return True
