"""Directed blockage graph over the BS and the train's MRs.

Each blocked MR b contributes a vector edge from the BS toward b (the
obstructed direct path) and edges from b toward each existing neighbor,
marking the neighbor-relay hops that blockage rules out. The BS is node 0;
MRs are nodes 1..F.
"""

from __future__ import annotations

from dataclasses import dataclass

from .modes import Mode

BS_NODE = 0


@dataclass(frozen=True)
class BlockageGraph:
    node_count: int                       # F, excluding the BS node
    blocked: frozenset[int]
    edges: frozenset[tuple[int, int]]     # directed (u, v)


def build_graph(blocked: frozenset[int] | set[int], mr_count: int) -> BlockageGraph:
    if mr_count < 1:
        raise ValueError("mr_count must be at least 1")
    blocked = frozenset(blocked)
    bad = [b for b in blocked if not 1 <= b <= mr_count]
    if bad:
        raise ValueError(f"blocked indices out of range 1..{mr_count}: {sorted(bad)}")
    edges = set()
    for b in blocked:
        edges.add((BS_NODE, b))
        if b - 1 >= 1:
            edges.add((b, b - 1))
        if b + 1 <= mr_count:
            edges.add((b, b + 1))
    return BlockageGraph(mr_count, blocked, frozenset(edges))


def forbidden_modes(mr_index: int, graph: BlockageGraph) -> frozenset[Mode]:
    """Modes ruled out for the flow destined to ``mr_index``.

    Direct is forbidden when the BS edge points at the node; a neighbor
    relay is forbidden when that neighbor's edge points at the node or the
    neighbor does not exist. The UAV mode is never graph-forbidden.
    """
    if not 1 <= mr_index <= graph.node_count:
        raise ValueError(f"MR index {mr_index} out of range 1..{graph.node_count}")
    out = set()
    if (BS_NODE, mr_index) in graph.edges:
        out.add(Mode.DIRECT)
    if mr_index == 1 or (mr_index - 1, mr_index) in graph.edges:
        out.add(Mode.LEFT)
    if mr_index == graph.node_count or (mr_index + 1, mr_index) in graph.edges:
        out.add(Mode.RIGHT)
    return frozenset(out)


def edges_as_text(graph: BlockageGraph) -> str:
    """Edge list, one ``u->v`` line per edge, BS edges first then numeric."""
    def label(node: int) -> str:
        return "BS" if node == BS_NODE else str(node)

    lines = [f"{label(u)}->{label(v)}" for u, v in sorted(graph.edges)]
    return "\n".join(lines)
