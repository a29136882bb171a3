"""Serial slot scheduler for the per-superframe transmission phase.

Flows admitted by the mode decision are served one at a time, fewest
required slots first, until the slot budget runs out. A flow's final slot
is not truncated, so the throughput tally counts whole slots at the flow's
rate; the delivered tally clips each flow at its actual demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .modes import Mode
from .relay import ModeAssignment
from .scenario import Instance, RadioParams


def slots_needed(qos_bps: float, rate_bps: float, total_slots: int, params: RadioParams) -> int:
    """Slot count for one flow's demand at the given rate."""
    if total_slots < 1:
        raise ValueError("total_slots must be at least 1")
    if rate_bps <= 0:
        raise ValueError("rate must be positive to schedule a flow")
    demand_bits = qos_bps * (params.sched_phase_s + total_slots * params.slot_duration_s)
    return math.ceil(demand_bits / (rate_bps * params.slot_duration_s))


def priority(slots: int) -> float:
    """Serving priority; fewer required slots means earlier service."""
    if slots < 1:
        raise ValueError("slot requirement must be at least 1")
    return 1.0 / slots


@dataclass(frozen=True)
class ScheduleResult:
    """Outcome of serving one superframe's admitted flows."""

    order: tuple[int, ...]
    per_flow_slots: dict[int, int]
    served_slots: dict[int, int]
    completed: frozenset[int]
    flows_completed: int
    slots_used: int
    throughput_bits: float
    delivered_bits: float


def schedule(instance: Instance, assignment: ModeAssignment) -> ScheduleResult:
    """Serve admitted flows serially in ascending required-slot order."""
    params = instance.scenario.radio
    total_slots = instance.total_slots
    flows = {f.id: f for f in instance.flows}

    needed: dict[int, int] = {}
    rates: dict[int, float] = {}
    for fid, decision in assignment.items():
        if decision.mode is Mode.ABANDONED:
            continue
        flow = flows[fid]
        needed[fid] = slots_needed(flow.qos_bps, decision.rate_bps, total_slots, params)
        rates[fid] = decision.rate_bps

    order = tuple(sorted(needed, key=lambda fid: (needed[fid], fid)))

    served: dict[int, int] = {fid: 0 for fid in needed}
    completed: set[int] = set()
    throughput_bits = 0.0
    delivered_bits = 0.0
    remaining = total_slots
    for fid in order:
        if remaining <= 0:
            break
        take = min(needed[fid], remaining)
        served[fid] = take
        remaining -= take
        throughput_bits += take * rates[fid] * params.slot_duration_s
        demand = flows[fid].qos_bps * (
            params.sched_phase_s + total_slots * params.slot_duration_s
        )
        delivered_bits += min(take * rates[fid] * params.slot_duration_s, demand)
        if take == needed[fid]:
            completed.add(fid)

    return ScheduleResult(
        order=order,
        per_flow_slots=dict(needed),
        served_slots=served,
        completed=frozenset(completed),
        flows_completed=len(completed),
        slots_used=total_slots - remaining,
        throughput_bits=throughput_bits,
        delivered_bits=delivered_bits,
    )
