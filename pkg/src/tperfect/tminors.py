"""Vertex deletions and neighbourhood contractions with replayable traces,
plus constructive odd-wheel extraction from hub and rope-plus-bipartite
configurations.

A contraction at v (legal when N(v) is stable) merges the closed
neighbourhood of v into a single vertex, labelled by the smallest member of
the merged class.  A trace records the base graph, the step sequence, the
result, and the map from result vertices to classes of base vertices; it can
be replayed and audited independently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import networkx as nx

from .errors import PreconditionError, VerificationError
from .graphs import Graph, is_cycle_induced, is_stable, label_key, odd_girth


@dataclass(frozen=True)
class TMinorStep:
    kind: str  # "delete" or "tcontract"
    vertex: object

    def __post_init__(self):
        if self.kind not in ("delete", "tcontract"):
            raise PreconditionError(f"unknown step kind {self.kind!r}")


@dataclass(frozen=True)
class TMinorTrace:
    base: Graph
    steps: tuple
    result: Graph
    contraction_map: dict  # result vertex -> frozenset of base vertices

    def to_json(self) -> str:
        return json.dumps(
            {
                "base": {
                    "vertices": [repr(v) for v in self.base.vertices],
                    "edges": [[repr(u), repr(v)] for u, v in self.base.edges()],
                },
                "steps": [{"kind": s.kind, "vertex": repr(s.vertex)} for s in self.steps],
                "result": {
                    "vertices": [repr(v) for v in self.result.vertices],
                    "edges": [[repr(u), repr(v)] for u, v in self.result.edges()],
                },
                "contraction_map": {
                    repr(v): sorted(repr(u) for u in cls)
                    for v, cls in self.contraction_map.items()
                },
            },
            indent=2,
            sort_keys=True,
        )


class TraceBuilder:
    """Mutable helper that applies steps and tracks contraction classes."""

    def __init__(self, base: Graph):
        self.base = base
        self.graph = base
        self.steps = []
        self.classes = {v: frozenset([v]) for v in base.vertices}

    def delete(self, v):
        if v not in self.graph:
            raise PreconditionError(f"cannot delete missing vertex {v!r}")
        self.graph = self.graph.delete_vertices([v])
        del self.classes[v]
        self.steps.append(TMinorStep("delete", v))

    def tcontract(self, v):
        g = self.graph
        nbrs = g.neighbours(v)
        if not is_stable(g, nbrs):
            raise PreconditionError(
                f"contraction at {v!r} illegal: neighbourhood not stable"
            )
        merged = set(nbrs) | {v}
        rep = min(merged, key=label_key)
        new_class = frozenset().union(*(self.classes[u] for u in merged))
        outside = set(g.vertices) - merged
        new_edges = [(a, b) for a, b in g.edges() if a in outside and b in outside]
        touching = {
            w for u in merged for w in g.neighbours(u) if w in outside
        }
        new_edges += [(rep, w) for w in touching]
        self.graph = Graph(outside | {rep}, new_edges)
        for u in merged:
            del self.classes[u]
        self.classes[rep] = new_class
        self.steps.append(TMinorStep("tcontract", v))

    def trace(self) -> TMinorTrace:
        return TMinorTrace(
            base=self.base,
            steps=tuple(self.steps),
            result=self.graph,
            contraction_map=dict(self.classes),
        )


def t_contract(g: Graph, v):
    """Contract the closed neighbourhood of v; returns (graph, class map)."""
    builder = TraceBuilder(g)
    builder.tcontract(v)
    return builder.graph, dict(builder.classes)


def replay(trace: TMinorTrace) -> bool:
    """Re-apply the recorded steps and audit result and contraction map."""
    builder = TraceBuilder(trace.base)
    for step in trace.steps:
        if step.kind == "delete":
            builder.delete(step.vertex)
        else:
            builder.tcontract(step.vertex)
    if builder.graph != trace.result:
        raise VerificationError("trace replay produced a different result graph")
    if builder.classes != trace.contraction_map:
        raise VerificationError("trace replay produced a different contraction map")
    return True


def is_odd_wheel(g: Graph):
    """Hub and rim of g if it is a wheel with an odd rim, else None.

    A wheel here is a cycle of length k >= 3 plus one vertex adjacent to all
    of it; K4 counts (every vertex works as a hub, the smallest is chosen).
    """
    n = g.n
    if n < 4 or n % 2 != 0:
        # odd rim k plus hub means n = k + 1 is even
        return None
    hubs = [v for v in g.vertices if g.degree(v) == n - 1]
    if not hubs:
        return None
    hub = min(hubs, key=label_key)
    rim_vertices = [v for v in g.vertices if v != hub]
    rim_graph = g.induced_subgraph(rim_vertices)
    if any(rim_graph.degree(v) != 2 for v in rim_vertices) or not rim_graph.is_connected():
        return None
    # walk the rim in cyclic order, starting at the smallest label
    start = min(rim_vertices, key=label_key)
    prev, cur = None, start
    cycle = []
    while True:
        cycle.append(cur)
        nxt = [w for w in rim_graph.neighbours(cur) if w != prev]
        prev, cur = cur, min(nxt, key=label_key) if len(cycle) == 1 else nxt[0]
        if cur == start:
            break
    if len(cycle) % 2 == 0:
        return None
    return hub, cycle


@dataclass(frozen=True)
class OddWheelWitness:
    trace: TMinorTrace
    hub: object
    rim: tuple

    def to_json(self) -> str:
        return json.dumps(
            {
                "hub": repr(self.hub),
                "rim": [repr(v) for v in self.rim],
                "trace": json.loads(self.trace.to_json()),
            },
            indent=2,
            sort_keys=True,
        )


def verify_odd_wheel_witness(w: OddWheelWitness) -> bool:
    replay(w.trace)
    result = w.trace.result
    if is_odd_wheel(result) is None:
        raise VerificationError("trace result is not an odd wheel")
    if w.hub not in result or result.degree(w.hub) != result.n - 1:
        raise VerificationError("recorded hub is not adjacent to the whole rim")
    if set(w.rim) | {w.hub} != set(result.vertices) or w.hub in w.rim:
        raise VerificationError("recorded rim does not cover the result")
    if len(w.rim) % 2 == 0 or not is_cycle_induced(
        result.induced_subgraph(w.rim), list(w.rim)
    ):
        raise VerificationError("recorded rim is not an induced odd cycle")
    return True


def _odd_arc_triple(cycle, anchors):
    """Three anchors splitting the cycle into three odd-length arcs, if any."""
    pos = {v: i for i, v in enumerate(cycle)}
    k = len(cycle)
    idx = sorted((pos[a] for a in anchors if a in pos))
    for i, j, l in combinations(idx, 3):
        arcs = (j - i, l - j, k - (l - i))
        if all(a % 2 == 1 for a in arcs):
            return cycle[i], cycle[j], cycle[l]
    return None


def _contract_to_wheel(builder: TraceBuilder, hub) -> OddWheelWitness:
    """Shared tail: the current graph is an induced odd cycle plus ``hub``;
    repeatedly contract the smallest rim vertex not adjacent to the hub."""
    while True:
        g = builder.graph
        rim = [v for v in g.vertices if v != hub]
        free = sorted((v for v in rim if not g.has_edge(v, hub)), key=label_key)
        if not free:
            break
        builder.tcontract(free[0])
    result = builder.graph
    if is_odd_wheel(result) is None:
        raise VerificationError(
            "contraction loop did not terminate in an odd wheel",
            detail={"result": result},
        )
    rim_vertices = [u for u in result.vertices if u != hub]
    rim_graph = result.induced_subgraph(rim_vertices)
    start = min(rim_vertices, key=label_key)
    prev, cur, rim_cycle = None, start, []
    while True:
        rim_cycle.append(cur)
        nxt = [w for w in rim_graph.neighbours(cur) if w != prev]
        prev, cur = cur, min(nxt, key=label_key) if len(rim_cycle) == 1 else nxt[0]
        if cur == start:
            break
    witness = OddWheelWitness(trace=builder.trace(), hub=hub, rim=tuple(rim_cycle))
    verify_odd_wheel_witness(witness)
    return witness


def extract_wheel_from_hub(g: Graph, cycle, v) -> OddWheelWitness:
    """Odd-wheel trace for a graph that is an induced odd cycle plus one
    vertex v whose neighbours include three cycle vertices cutting it into
    three odd arcs."""
    cycle = list(cycle)
    if set(cycle) | {v} != set(g.vertices) or v in cycle:
        raise PreconditionError("graph must consist of the cycle plus v alone")
    if len(cycle) % 2 == 0 or not is_cycle_induced(g.induced_subgraph(cycle), cycle):
        raise PreconditionError("cycle is not an induced odd cycle", )
    anchors = [u for u in cycle if g.has_edge(u, v)]
    if len(anchors) < 3:
        raise PreconditionError("v has fewer than three neighbours on the cycle")
    if _odd_arc_triple(cycle, anchors) is None:
        raise PreconditionError(
            "no three neighbours of v cut the cycle into odd arcs",
        )
    builder = TraceBuilder(g)
    return _contract_to_wheel(builder, v)


def extract_wheel_via_bipartite(g: Graph, x_set, rope, a_side, b_side) -> OddWheelWitness:
    """Odd-wheel trace for a rope living inside g[X] whose complement part
    is connected bipartite with sides (A, B), where A avoids X and at least
    three rope anchors see B.

    Steps follow the inductive proof: delete the X-vertices off the chosen
    rope cycle, contract every A-vertex (collapsing g - X to one vertex),
    then run the hub contraction loop.
    """
    from .ropes import cycle_through_anchors, verify_rope

    x_set = frozenset(x_set)
    a_side = frozenset(a_side)
    b_side = frozenset(b_side)
    if set(g.vertices) != set(x_set | a_side | b_side):
        raise PreconditionError("X, A, B must partition the vertex set")
    rest = g.induced_subgraph(a_side | b_side)
    if not rest.is_connected():
        raise PreconditionError("g - X is not connected")
    if not is_stable(g, a_side) or not is_stable(g, b_side):
        raise PreconditionError("(A, B) is not a bipartition of g - X")
    if any(g.neighbours(v) & x_set for v in a_side):
        raise PreconditionError("a vertex of A has a neighbour in X")
    if not set(rope.vertices()) <= x_set:
        raise PreconditionError("rope is not contained in X")
    # the rope clauses (including anchor distances) live inside g[X]
    verify_rope(g.induced_subgraph(x_set), rope)
    b_anchors = [q for q in rope.anchors if g.neighbours(q) & b_side]
    if len(b_anchors) < 3:
        raise PreconditionError("fewer than three anchors have neighbours in B")
    chosen = sorted(b_anchors, key=label_key)[:3]
    cycle = cycle_through_anchors(rope, chosen)

    builder = TraceBuilder(g)
    for u in sorted(x_set - set(cycle), key=label_key):
        builder.delete(u)
    while True:
        current_a = sorted((v for v in a_side if v in builder.graph), key=label_key)
        if not current_a:
            break
        builder.tcontract(current_a[0])
    hub_candidates = [v for v in builder.graph.vertices if v not in set(cycle)]
    if len(hub_candidates) != 1:
        raise VerificationError(
            "bipartite part did not collapse to a single vertex",
            detail={"leftover": hub_candidates},
        )
    return _contract_to_wheel(builder, hub_candidates[0])


def connected_bipartite_containing(g: Graph, s, g_param: int) -> frozenset:
    """A minimal connected vertex set containing the stable set s, which is
    bipartite whenever the odd girth exceeds 2*|s|.

    Greedy deletion: repeatedly drop the smallest vertex outside s whose
    removal keeps s inside one connected component, restricting to that
    component.  Bipartiteness of the final set is asserted.
    """
    s = frozenset(s)
    if not s:
        raise PreconditionError("s must be non-empty")
    if not g.is_connected():
        raise PreconditionError("graph must be connected")
    if not is_stable(g, s):
        raise PreconditionError("s must be stable")
    if len(s) > 2 * g_param:
        raise PreconditionError(f"|s| = {len(s)} exceeds 2*g = {2 * g_param}")
    if odd_girth(g) < 2 * g_param + 1:
        raise PreconditionError("odd girth below 2*g + 1")

    h = set(g.vertices)
    changed = True
    while changed:
        changed = False
        for v in sorted(h - s, key=label_key):
            sub = g.induced_subgraph(h - {v})
            comps = sub.connected_components()
            hosts = [c for c in comps if s <= c]
            if hosts:
                h = set(hosts[0])
                changed = True
                break
    result = g.induced_subgraph(h)
    if result.bipartition() is None:
        raise VerificationError(
            "minimal connected superset is not bipartite",
            detail={"vertices": frozenset(h)},
        )
    return frozenset(h)


# ---------------------------------------------------------------------------
# budgeted witness search
# ---------------------------------------------------------------------------


def _empty_trace_witness(g: Graph) -> Optional[OddWheelWitness]:
    decomposition = is_odd_wheel(g)
    if decomposition is None:
        return None
    hub, rim = decomposition
    w = OddWheelWitness(
        trace=TraceBuilder(g).trace(), hub=hub, rim=tuple(rim)
    )
    verify_odd_wheel_witness(w)
    return w


def _hub_structure(g: Graph):
    """Detect 'induced odd cycle plus one vertex with an odd-arc triple'."""
    for v in sorted(g.vertices, key=label_key):
        rest = [u for u in g.vertices if u != v]
        sub = g.induced_subgraph(rest)
        if any(sub.degree(u) != 2 for u in rest) or not sub.is_connected():
            continue
        if len(rest) % 2 == 0 or len(rest) < 3:
            continue
        start = min(rest, key=label_key)
        prev, cur, cycle = None, start, []
        while True:
            cycle.append(cur)
            nxt = [w for w in sub.neighbours(cur) if w != prev]
            prev, cur = cur, min(nxt, key=label_key) if len(cycle) == 1 else nxt[0]
            if cur == start:
                break
        anchors = [u for u in cycle if g.has_edge(u, v)]
        if len(anchors) >= 3 and _odd_arc_triple(cycle, anchors) is not None:
            return cycle, v
    return None


def find_odd_wheel_tminor(g: Graph, budget: int = 4000) -> Optional[OddWheelWitness]:
    """Budgeted search for a replayable trace ending in an odd wheel.

    Absence of a result is not a proof of non-existence.  Bipartite graphs
    are rejected immediately (all their deletions and contractions stay
    bipartite, so no odd wheel can appear).
    """
    if g.bipartition() is not None:
        return None
    w = _empty_trace_witness(g)
    if w is not None:
        return w
    hub = _hub_structure(g)
    if hub is not None:
        cycle, v = hub
        return extract_wheel_from_hub(g, cycle, v)

    # exhaustive breadth-first search over traces, memoized on a canonical
    # hash (collisions only lose completeness: every hit is re-verified)
    from collections import deque

    def canon(h: Graph):
        return nx.weisfeiler_lehman_graph_hash(h.to_networkx())

    seen = {canon(g)}
    queue = deque([tuple()])
    expanded = 0
    while queue and expanded < budget:
        steps = queue.popleft()
        expanded += 1
        builder = TraceBuilder(g)
        for step in steps:
            if step.kind == "delete":
                builder.delete(step.vertex)
            else:
                builder.tcontract(step.vertex)
        h = builder.graph
        for v in sorted(h.vertices, key=label_key):
            for kind in ("tcontract", "delete"):
                if kind == "tcontract" and not is_stable(h, h.neighbours(v)):
                    continue
                child = TraceBuilder(g)
                for step in steps:
                    if step.kind == "delete":
                        child.delete(step.vertex)
                    else:
                        child.tcontract(step.vertex)
                if kind == "delete":
                    child.delete(v)
                else:
                    child.tcontract(v)
                res = child.graph
                if res.n < 4 or res.bipartition() is not None:
                    continue
                decomposition = is_odd_wheel(res)
                if decomposition is not None:
                    hub_v, rim = decomposition
                    witness = OddWheelWitness(
                        trace=child.trace(), hub=hub_v, rim=tuple(rim)
                    )
                    verify_odd_wheel_witness(witness)
                    return witness
                key = canon(res)
                if key not in seen:
                    seen.add(key)
                    queue.append(tuple(child.steps))
    return None
