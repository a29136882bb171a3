"""Exhaustive optimum and the two reference schemes.

The exhaustive search enumerates one mode (or abandonment) per flow,
keeping the assignment that completes the most flows, breaking ties toward
higher throughput and then lexicographically by per-flow mode order
(Direct < Left < Right < Uav < Abandoned). Branch-and-bound pruning is
exact: a subtree is cut only when even its best completion count falls
short of the incumbent, or matches it with no throughput left to gain.

The max-rate baseline runs the same decision rule with the aerial relay
removed; the random baseline replaces the argmax with a uniform draw over
the modes that exist at the destination's position.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .blockage import BlockageGraph, build_graph
from .channel import ModeEvaluation, UNAVAILABLE
from .modes import Mode
from .relay import (
    FlowDecision,
    ModeAssignment,
    ModeSets,
    boundary_valid_modes,
    decide,
    min_required_rate,
    structurally_allowed_modes,
)
from .scenario import Instance
from .scheduling import ScheduleResult, schedule

log = logging.getLogger(__name__)

ORACLE_MAX_FLOWS = 12


class SizeGuardError(RuntimeError):
    """Raised when the exhaustive search would exceed the flow-count guard."""


@dataclass(frozen=True)
class OracleResult:
    best_count: int
    best_throughput_bits: float
    best_assignment: ModeAssignment
    nodes_explored: int


def _feasible_candidates(
    instance: Instance,
    graph: BlockageGraph,
    evaluations: dict[int, ModeEvaluation],
) -> list[list[FlowDecision]]:
    """Per flow, the threshold-passing modes in fixed order, then abandonment."""
    params = instance.scenario.radio
    out: list[list[FlowDecision]] = []
    for flow in instance.flows:
        options: list[FlowDecision] = []
        if instance.total_slots >= 1:
            r_min = min_required_rate(flow, instance.total_slots, params)
            ev = evaluations[flow.id]
            for mode in structurally_allowed_modes(flow, graph):
                link = ev.for_mode(mode)
                if link.sinr >= flow.sinr_min and link.rate_bps >= r_min:
                    options.append(FlowDecision(mode, link.sinr, link.rate_bps))
        options.append(FlowDecision(Mode.ABANDONED, 0.0, 0.0))
        out.append(options)
    return out


def _prefix_completions(slot_costs: list[int], budget: int) -> int:
    """How many of the given slot costs fit in the budget, cheapest first."""
    used = 0
    done = 0
    for cost in sorted(slot_costs):
        if used + cost > budget:
            break
        used += cost
        done += 1
    return done


def exhaustive_optimal(
    instance: Instance,
    graph: BlockageGraph,
    evaluations: dict[int, ModeEvaluation],
    max_flows: int = ORACLE_MAX_FLOWS,
    prune: bool = True,
    override_size_guard: bool = False,
) -> OracleResult:
    """Best achievable (completed flows, throughput) over all mode choices."""
    n_flows = len(instance.flows)
    if n_flows > max_flows and not override_size_guard:
        raise SizeGuardError(
            f"exhaustive search over {n_flows} flows exceeds the guard of "
            f"{max_flows}; pass override_size_guard=True to force it"
        )
    params = instance.scenario.radio
    dt = params.slot_duration_s
    budget = instance.total_slots
    candidates = _feasible_candidates(instance, graph, evaluations)
    flow_ids = [f.id for f in instance.flows]
    flow_qos = [f.qos_bps for f in instance.flows]

    # Per-flow bound ingredients: the cheapest slot cost any feasible mode
    # allows, and the largest whole-slot bit volume any mode can contribute.
    min_cost: list[int | None] = []
    max_contrib: list[float] = []
    costs: list[list[int]] = []
    for i, options in enumerate(candidates):
        per_option: list[int] = []
        best_cost: int | None = None
        best_bits = 0.0
        for opt in options:
            if opt.mode is Mode.ABANDONED:
                per_option.append(0)
                continue
            demand = flow_qos[i] * (params.sched_phase_s + budget * dt)
            cost = math.ceil(demand / (opt.rate_bps * dt))
            per_option.append(cost)
            if best_cost is None or cost < best_cost:
                best_cost = cost
            best_bits = max(best_bits, cost * opt.rate_bps * dt)
        costs.append(per_option)
        min_cost.append(best_cost)
        max_contrib.append(best_bits)

    suffix_min_costs: list[list[int]] = [[] for _ in range(n_flows + 1)]
    suffix_contrib = [0.0] * (n_flows + 1)
    for i in range(n_flows - 1, -1, -1):
        suffix_min_costs[i] = suffix_min_costs[i + 1] + (
            [min_cost[i]] if min_cost[i] is not None else []
        )
        suffix_contrib[i] = suffix_contrib[i + 1] + max_contrib[i]

    best: tuple[int, float] | None = None
    best_modes: list[FlowDecision] = []
    nodes = 0
    chosen: list[FlowDecision] = []
    chosen_costs: list[int] = []

    def evaluate_leaf() -> tuple[int, float]:
        active = [
            (chosen_costs[i], i)
            for i in range(n_flows)
            if chosen[i].mode is not Mode.ABANDONED
        ]
        active.sort()
        used = 0
        count = 0
        bits = 0.0
        for cost, i in active:
            if used >= budget:
                break
            take = min(cost, budget - used)
            used += take
            bits += take * chosen[i].rate_bps * dt
            if take == cost:
                count += 1
        return count, bits

    def dfs(depth: int) -> None:
        nonlocal best, best_modes, nodes
        if depth == n_flows:
            count, bits = evaluate_leaf()
            if best is None or (count, bits) > best:
                best = (count, bits)
                best_modes = list(chosen)
            return
        if prune and best is not None:
            committed = [c for c, d in zip(chosen_costs, chosen) if d.mode is not Mode.ABANDONED]
            count_bound = _prefix_completions(
                committed + suffix_min_costs[depth], budget
            )
            if count_bound < best[0]:
                return
            bits_bound = (
                sum(
                    c * d.rate_bps * dt
                    for c, d in zip(chosen_costs, chosen)
                    if d.mode is not Mode.ABANDONED
                )
                + suffix_contrib[depth]
            )
            if count_bound == best[0] and bits_bound <= best[1]:
                return
        for opt, cost in zip(candidates[depth], costs[depth]):
            nodes += 1
            chosen.append(opt)
            chosen_costs.append(cost)
            dfs(depth + 1)
            chosen.pop()
            chosen_costs.pop()

    dfs(0)
    assert best is not None
    assignment: ModeAssignment = {
        fid: decision for fid, decision in zip(flow_ids, best_modes)
    }
    result = schedule(instance, assignment)
    return OracleResult(
        best_count=result.flows_completed,
        best_throughput_bits=result.throughput_bits,
        best_assignment=assignment,
        nodes_explored=nodes,
    )


def mra(
    instance: Instance,
    evaluations: dict[int, ModeEvaluation],
) -> tuple[ModeAssignment, ModeSets, ScheduleResult]:
    """Max-rate decision with the aerial relay masked out."""
    graph = build_graph(instance.blocked, instance.scenario.mr_count)
    masked = {
        fid: ModeEvaluation(
            direct=ev.direct, left=ev.left, right=ev.right, uav=UNAVAILABLE
        )
        for fid, ev in evaluations.items()
    }
    assignment, sets = decide(instance, graph, masked)
    return assignment, sets, schedule(instance, assignment)


def ra(
    instance: Instance,
    graph: BlockageGraph,
    evaluations: dict[int, ModeEvaluation],
    seed: int,
    graph_aware: bool = False,
) -> tuple[ModeAssignment, ModeSets, ScheduleResult]:
    """Uniform-random mode pick per flow, thresholds still enforced.

    By default the draw covers every mode that exists at the destination's
    position, so a pick that the blockage graph forbids simply fails its
    thresholds and the flow is abandoned. With graph_aware=True the draw is
    restricted to modes the graph leaves open.
    """
    params = instance.scenario.radio
    rng = np.random.default_rng(seed)
    assignment: ModeAssignment = {}
    for flow in instance.flows:
        if graph_aware:
            choices = structurally_allowed_modes(flow, graph)
        else:
            choices = boundary_valid_modes(flow, instance.scenario.mr_count)
        if not choices or instance.total_slots < 1:
            assignment[flow.id] = FlowDecision(Mode.ABANDONED, 0.0, 0.0)
            continue
        pick = choices[int(rng.integers(len(choices)))]
        ev = evaluations[flow.id]
        link = ev.for_mode(pick)
        r_min = min_required_rate(flow, instance.total_slots, params)
        if link.sinr >= flow.sinr_min and link.rate_bps >= r_min:
            assignment[flow.id] = FlowDecision(pick, link.sinr, link.rate_bps)
        else:
            assignment[flow.id] = FlowDecision(Mode.ABANDONED, 0.0, 0.0)
    return assignment, ModeSets.from_assignment(assignment), schedule(instance, assignment)


def average_deviation(
    optimal_counts: list[float] | np.ndarray,
    heuristic_counts: list[float] | np.ndarray,
) -> float:
    """Mean relative completion shortfall of a heuristic against the optimum."""
    opt = np.asarray(optimal_counts, dtype=float)
    heur = np.asarray(heuristic_counts, dtype=float)
    if opt.shape != heur.shape or opt.ndim != 1:
        raise ValueError("count arrays must be one-dimensional and equal length")
    if opt.size == 0:
        raise ValueError("cannot average over zero points")
    keep = opt > 0
    if not keep.all():
        log.warning(
            "dropping %d point(s) with zero optimal count from the deviation average",
            int((~keep).sum()),
        )
    if not keep.any():
        raise ValueError("all points have a zero optimal count")
    return float(np.mean((opt[keep] - heur[keep]) / opt[keep]))
