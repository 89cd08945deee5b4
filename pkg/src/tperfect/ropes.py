"""Arithmetic ropes: definitions and verifier, a synthetic generator, the
stable-grading witness routines, the rope induction step, broken-rope
assembly, and the rope finder.

All constructive procedures are threshold-parameterized.  In strict mode the
published chromatic thresholds are enforced; in relaxed mode the procedures
run best-effort and success is defined by the postcondition audits, which are
always executed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from collections import deque

from .colouring import chi_exact
from .errors import PreconditionError, VerificationError
from .graphs import (
    Graph,
    covers,
    is_cycle_induced,
    is_path_induced,
    is_stable,
    label_key,
    odd_girth,
)


# ---------------------------------------------------------------------------
# threshold arithmetic
# ---------------------------------------------------------------------------


def induction_threshold(c: int) -> int:
    return 6 * c + 17


def broken_rope_threshold(r: int, c: int) -> Fraction:
    return Fraction(6**r * c) + Fraction(17, 5) * (6**r - 1)


def finder_threshold(r: int) -> Fraction:
    return Fraction(6 ** (r + 1)) + Fraction(34, 5) * (6**r - 1) - 1


# Headline colour bounds, derived from the r = 5 finder threshold: a graph of
# odd girth >= 11 without an odd-wheel t-minor has chromatic number at most
# 2*ceil(threshold) - 1 (otherwise a colour-class grading reaches the
# threshold); four rounds of odd-girth raising add 4 colours, and a clique
# peeling of an h-perfect graph adds omega - 2 over the triangle-free bound.
ODD_GIRTH11_COLOUR_BOUND = 2 * int(finder_threshold(5)) - 1  # 199049
TPERFECT_COLOUR_BOUND = ODD_GIRTH11_COLOUR_BOUND + 4  # 199053
TRIANGLE_FREE_COLOUR_BOUND = ODD_GIRTH11_COLOUR_BOUND + 3  # 199052


def hperfect_colour_bound(omega: int) -> int:
    return (omega - 2) + TRIANGLE_FREE_COLOUR_BOUND  # omega + 199050


# ---------------------------------------------------------------------------
# stable gradings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StableGrading:
    """Ordered partition of the vertex set into stable sets.  u is earlier
    than v when u's part has the smaller index."""

    parts: tuple  # tuple of frozensets

    def verify(self, g: Graph) -> bool:
        seen = set()
        for part in self.parts:
            if part & seen:
                raise VerificationError("grading parts are not disjoint")
            if not is_stable(g, part):
                raise VerificationError("grading part not stable", detail={"part": part})
            seen |= part
        if seen != set(g.vertices):
            raise VerificationError("grading does not cover the vertex set")
        return True

    def index(self) -> dict:
        return {v: i for i, part in enumerate(self.parts) for v in part}


# ---------------------------------------------------------------------------
# rope types and verifier
# ---------------------------------------------------------------------------


def _encode_label(v):
    if isinstance(v, tuple):
        return [_encode_label(x) for x in v]
    return v


def _decode_label(v):
    if isinstance(v, list):
        return tuple(_decode_label(x) for x in v)
    return v


@dataclass(frozen=True)
class ArithmeticRope:
    """r anchor vertices joined in a cyclic order by odd/even path pairs."""

    anchors: tuple  # (q_1, ..., q_r)
    paths: tuple  # ((Q_{1,1}, Q_{1,2}), ..., (Q_{r,1}, Q_{r,2})), vertex lists

    @property
    def r(self) -> int:
        return len(self.anchors)

    def vertices(self) -> frozenset:
        out = set(self.anchors)
        for p1, p2 in self.paths:
            out.update(p1)
            out.update(p2)
        return frozenset(out)

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": "rope",
                "anchors": [_encode_label(q) for q in self.anchors],
                "paths": [
                    [[_encode_label(v) for v in p1], [_encode_label(v) for v in p2]]
                    for p1, p2 in self.paths
                ],
            },
            indent=2,
            sort_keys=True,
        )


@dataclass(frozen=True)
class BrokenRope:
    """Like a rope but with r+1 anchors, no wrap-around path pair, and a
    designated end (the last anchor).  Every choice vector yields an induced
    path instead of a cycle."""

    anchors: tuple  # (q_1, ..., q_{r+1})
    paths: tuple  # ((Q_{i,1}, Q_{i,2}) for i = 1..r)

    @property
    def r(self) -> int:
        return len(self.anchors) - 1

    @property
    def end(self):
        return self.anchors[-1]

    def vertices(self) -> frozenset:
        out = set(self.anchors)
        for p1, p2 in self.paths:
            out.update(p1)
            out.update(p2)
        return frozenset(out)

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": "broken_rope",
                "anchors": [_encode_label(q) for q in self.anchors],
                "paths": [
                    [[_encode_label(v) for v in p1], [_encode_label(v) for v in p2]]
                    for p1, p2 in self.paths
                ],
            },
            indent=2,
            sort_keys=True,
        )


def rope_from_json(text: str):
    data = json.loads(text)
    anchors = tuple(_decode_label(q) for q in data["anchors"])
    paths = tuple(
        (
            [_decode_label(v) for v in p1],
            [_decode_label(v) for v in p2],
        )
        for p1, p2 in data["paths"]
    )
    if data["kind"] == "rope":
        return ArithmeticRope(anchors=anchors, paths=paths)
    return BrokenRope(anchors=anchors, paths=paths)


def _chain(rope, h) -> list:
    """Concatenate the chosen paths into one vertex sequence q_1 ... q_last
    (repeating no anchor; for ropes the last anchor q_1 is omitted)."""
    seq = [rope.anchors[0]]
    closed = isinstance(rope, ArithmeticRope)
    for i, (p1, p2) in enumerate(rope.paths):
        path = p1 if h[i] == 1 else p2
        seq.extend(path[1:])
    if closed:
        seq.pop()  # wrap-around repeats q_1
    return seq


def verify_rope(g: Graph, rope) -> bool:
    """Audit every defining clause of a rope or broken rope; raises
    VerificationError naming the first violated clause."""
    closed = isinstance(rope, ArithmeticRope)
    anchors = rope.anchors
    n_pairs = len(rope.paths)
    if closed and (len(anchors) < 2 or n_pairs != len(anchors)):
        raise VerificationError("rope must have r >= 2 anchors and r path pairs")
    if not closed and (len(anchors) < 2 or n_pairs != len(anchors) - 1):
        raise VerificationError("broken rope must have r+1 anchors and r path pairs")
    if len(set(anchors)) != len(anchors):
        raise VerificationError("anchors are not distinct")
    for v in rope.vertices():
        if v not in g:
            raise VerificationError("rope vertex missing from graph", detail={"vertex": v})
    for i, (p1, p2) in enumerate(rope.paths):
        a = anchors[i]
        b = anchors[(i + 1) % len(anchors)] if closed else anchors[i + 1]
        for j, path in enumerate((p1, p2)):
            if path[0] != a or path[-1] != b:
                raise VerificationError(
                    "path endpoints do not match the anchors",
                    detail={"pair": i + 1, "which": j + 1},
                )
            if not is_path_induced(g, path):
                raise VerificationError(
                    "constituent path not induced",
                    detail={"pair": i + 1, "which": j + 1, "path": path},
                )
        if (len(p1) - 1) % 2 != 1:
            raise VerificationError("first path of a pair must have odd length", detail={"pair": i + 1})
        if (len(p2) - 1) % 2 != 0:
            raise VerificationError("second path of a pair must have even length", detail={"pair": i + 1})
    for h in product((1, 2), repeat=n_pairs):
        seq = _chain(rope, h)
        if len(set(seq)) != len(seq):
            raise VerificationError(
                "chosen paths are not internally disjoint", detail={"choice": h}
            )
        ok = is_cycle_induced(g, seq) if closed else is_path_induced(g, seq)
        if not ok:
            raise VerificationError(
                "induced cycle clause violated" if closed else "induced path clause violated",
                detail={"choice": h, "sequence": seq},
            )
    for i, a in enumerate(anchors):
        dist = g.bfs_distances(a)
        for b in anchors[i + 1 :]:
            d = dist.get(b)
            if d is None or d < 5:
                raise VerificationError(
                    "anchor distance clause violated",
                    detail={"pair": (a, b), "distance": d},
                )
    return True


def cycle_through_anchors(rope: ArithmeticRope, chosen) -> list:
    """An induced cycle of the rope in which the three chosen anchors cut the
    cycle into three odd-length arcs: pick the odd path once per segment."""
    if len(chosen) != 3 or any(q not in rope.anchors for q in chosen):
        raise PreconditionError("need three rope anchors")
    idx = sorted(rope.anchors.index(q) for q in chosen)
    r = rope.r
    # arc j runs from chosen anchor j to the next one; give each arc exactly
    # one odd path so all three arcs have odd length
    h = []
    arc_has_odd = {0: False, 1: False, 2: False}
    for i in range(r):
        arc = sum(1 for j in idx if j <= i) % 3
        if not arc_has_odd[arc]:
            h.append(1)
            arc_has_odd[arc] = True
        else:
            h.append(2)
    return _chain(rope, tuple(h))


# ---------------------------------------------------------------------------
# generator
# ---------------------------------------------------------------------------


def generate_rope(r: int, odd_len: int, even_len: int):
    """Fabricate a graph that is exactly an r-rope with uniform path lengths.

    Returns (graph, rope).  Path interiors are internally disjoint; the
    verifier is run on the result before returning.
    """
    if r < 2:
        raise PreconditionError("r must be at least 2")
    if odd_len % 2 != 1 or odd_len < 7:
        raise PreconditionError("odd_len must be odd and at least 7")
    if even_len % 2 != 0 or even_len < 8:
        raise PreconditionError("even_len must be even and at least 8")
    anchors = tuple(("q", i + 1) for i in range(r))
    vertices = list(anchors)
    edges = []
    paths = []
    for i in range(r):
        a, b = anchors[i], anchors[(i + 1) % r]
        pair = []
        for which, length in ((1, odd_len), (2, even_len)):
            inner = [("p", i + 1, which, k + 1) for k in range(length - 1)]
            vertices.extend(inner)
            path = [a] + inner + [b]
            edges.extend(zip(path, path[1:]))
            pair.append(path)
        paths.append(tuple(pair))
    g = Graph(vertices, edges)
    rope = ArithmeticRope(anchors=anchors, paths=tuple(paths))
    verify_rope(g, rope)
    return g, rope


def generate_rope_shell(r: int, odd_len: int, even_len: int, depth: int = 6):
    """A rope embedded in a larger connected host of odd girth >= 11: a
    pendant path of the given depth is attached to the first anchor.  Returns
    (graph, rope, root) where root is the far end of the pendant path."""
    g, rope = generate_rope(r, odd_len, even_len)
    shell = [("a", k) for k in range(depth)]
    vertices = list(g.vertices) + shell
    edges = list(g.edges()) + list(zip(shell, shell[1:])) + [(shell[-1], rope.anchors[0])]
    host = Graph(vertices, edges)
    verify_rope(host, rope)
    return host, rope, shell[0]


# ---------------------------------------------------------------------------
# stable gradings and earlier witnesses
# ---------------------------------------------------------------------------


def _component_sets(g: Graph, subset):
    sub = g.induced_subgraph(subset)
    return sub.connected_components()


def _max_chi_component(g: Graph, subset):
    """Connected component of g[subset] with maximum chromatic number;
    deterministic tie-break.  Returns (component, chi)."""
    best = None
    for comp in sorted(
        _component_sets(g, subset), key=lambda c: tuple(sorted((label_key(v) for v in c)))
    ):
        k, _ = chi_exact(g.induced_subgraph(comp))
        if best is None or k > best[1]:
            best = (comp, k)
    return best if best is not None else (frozenset(), 0)


def _sorted_pair(u, v):
    return tuple(sorted((u, v), key=label_key))


def earlier_witness(g: Graph, grading: StableGrading, c: int):
    """A connected X with chi(X) >= c together with an edge uv, both ends
    earlier than all of X and at least one end adjacent to X.

    Requires chi(g) >= c + 2.  Follows the left-active partition argument.
    """
    grading.verify(g)
    if c < 0:
        raise PreconditionError("c must be non-negative")
    chi_g, _ = chi_exact(g)
    if chi_g < c + 2:
        raise PreconditionError(f"chi(g) = {chi_g} below c + 2 = {c + 2}")
    idx = grading.index()
    edges = g.edges()
    active = set()
    for w in g.vertices:
        iw = idx[w]
        for u, v in edges:
            if idx[u] < iw and idx[v] < iw and (g.has_edge(w, u) or g.has_edge(w, v)):
                active.add(w)
                break
    comp, chi_a = _max_chi_component(g, active) if active else (frozenset(), 0)
    if chi_a < c:
        raise VerificationError(
            "left-active part has too small chromatic number; "
            "the grading argument collapsed (input violates the hypothesis)",
            detail={"chi_active": chi_a, "needed": c},
        )
    i_min = min(idx[v] for v in comp)
    w = min((v for v in comp if idx[v] == i_min), key=label_key)
    witness_edge = None
    for u, v in sorted(edges, key=lambda e: (label_key(e[0]), label_key(e[1]))):
        if idx[u] < i_min and idx[v] < i_min and (g.has_edge(w, u) or g.has_edge(w, v)):
            witness_edge = _sorted_pair(u, v)
            break
    if witness_edge is None:
        raise VerificationError("left-active certificate edge disappeared")
    x = frozenset(comp)
    _audit_earlier(g, grading, c, x, witness_edge)
    return x, witness_edge


def _audit_earlier(g, grading, c, x, edge):
    idx = grading.index()
    u, v = edge
    if not g.has_edge(u, v):
        raise VerificationError("witness edge is not an edge")
    if not g.induced_subgraph(x).is_connected():
        raise VerificationError("witness set not connected")
    k, _ = chi_exact(g.induced_subgraph(x))
    if k < c:
        raise VerificationError("witness set chromatic number too small")
    if any(idx[u] >= idx[w] or idx[v] >= idx[w] for w in x):
        raise VerificationError("edge ends not earlier than the witness set")
    if not (g.neighbours(u) & x or g.neighbours(v) & x):
        raise VerificationError("neither edge end has a neighbour in the witness set")


def has_triangle(g: Graph) -> bool:
    for u, v in g.edges():
        if g.neighbours(u) & g.neighbours(v):
            return True
    return False


def earlier_witness_tf(g: Graph, grading: StableGrading, c: int):
    """Triangle-free refinement: returns (X, u, v) where additionally u has
    no neighbour in X and v has one.  Requires chi(g) >= c + 3."""
    if has_triangle(g):
        raise PreconditionError("graph contains a triangle")
    chi_g, _ = chi_exact(g)
    if chi_g < c + 3:
        raise PreconditionError(f"chi(g) = {chi_g} below c + 3 = {c + 3}")
    x_prime, (e1, e2) = earlier_witness(g, grading, c + 1)
    with_nbr = [w for w in (e1, e2) if g.neighbours(w) & x_prime]
    v_prime = min(with_nbr, key=label_key)
    u_prime = e2 if v_prime == e1 else e1
    comp, _ = _max_chi_component(g, x_prime - g.neighbours(v_prime))
    if not comp:
        # X' is swallowed by N(v') (possible only when chi(X') = 1); any
        # single neighbour of v' in X' works, and it cannot touch u' in a
        # triangle-free graph
        t = min(g.neighbours(v_prime) & x_prime, key=label_key)
        result = (frozenset([t]), u_prime, v_prime)
        _audit_earlier_tf(g, grading, c, *result)
        return result
    if g.neighbours(u_prime) & comp:
        result = (frozenset(comp), v_prime, u_prime)
    else:
        w = min(
            (
                t
                for t in (g.neighbours(v_prime) & x_prime)
                if g.neighbours(t) & comp
            ),
            key=label_key,
        )
        result = (frozenset(comp | {w}), u_prime, v_prime)
    x, u, v = result
    _audit_earlier_tf(g, grading, c, x, u, v)
    return result


def _audit_earlier_tf(g, grading, c, x, u, v):
    idx = grading.index()
    if not g.has_edge(u, v):
        raise VerificationError("u and v are not adjacent")
    if not g.induced_subgraph(x).is_connected():
        raise VerificationError("witness set not connected")
    k, _ = chi_exact(g.induced_subgraph(x))
    if k < c:
        raise VerificationError("witness set chromatic number too small")
    if any(idx[u] >= idx[w] or idx[v] >= idx[w] for w in x):
        raise VerificationError("u or v not earlier than the witness set")
    if g.neighbours(u) & x:
        raise VerificationError("u has a neighbour in the witness set")
    if not (g.neighbours(v) & x):
        raise VerificationError("v has no neighbour in the witness set")


# ---------------------------------------------------------------------------
# rope induction step
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InductionResult:
    b_prime: frozenset
    c_prime: frozenset
    q_prime: object
    q0: tuple  # even-length induced path q .. q'
    q1: tuple  # odd-length induced path q .. q'


def _lex_shortest_path(g: Graph, source, target) -> Optional[list]:
    """Deterministic shortest path: BFS expanding neighbours in label order."""
    if source == target:
        return [source]
    parent = {source: None}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in sorted(g.neighbours(u), key=label_key):
            if w not in parent:
                parent[w] = u
                if w == target:
                    path = [w]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                queue.append(w)
    return None


def audit_induction_step(g: Graph, b_set, c_set, q, c: int, res: InductionResult):
    """Machine-check the eight output clauses of the induction step."""
    b_set, c_set = frozenset(b_set), frozenset(c_set)
    bp, cp, qp = res.b_prime, res.c_prime, res.q_prime
    q0, q1 = list(res.q0), list(res.q1)
    if not (bp <= b_set and cp <= c_set and qp in c_set - cp):
        raise VerificationError("output sets not nested in the inputs")
    if not g.induced_subgraph(cp | {qp}).is_connected():
        raise VerificationError("clause 1: g[C' + q'] not connected")
    k, _ = chi_exact(g.induced_subgraph(cp))
    if k < c:
        raise VerificationError(f"clause 2: chi(C') = {k} below {c}")
    if not covers(g, bp, cp):
        raise VerificationError("clause 3: B' does not cover C'")
    pathset = set(q0) | set(q1)
    near_qp = g.ball(qp, 2)
    for b in bp:
        bad = g.neighbours(b) & (pathset - near_qp)
        if bad:
            raise VerificationError(
                "clause 4: B' not anticomplete to the paths outside N^2[q']",
                detail={"vertex": b, "touches": bad},
            )
    allowed = c_set | {q} | ((b_set & (g.ball(qp, 2) - {qp})) - g.ball(q, 3))
    if not pathset <= allowed:
        raise VerificationError(
            "clause 5: path vertices outside C + q + (B near q' away from q)",
            detail={"extra": pathset - allowed},
        )
    for w in cp:
        bad = g.neighbours(w) & (pathset - {qp})
        if bad:
            raise VerificationError(
                "clause 6: C' not anticomplete to the paths minus q'",
                detail={"vertex": w, "touches": bad},
            )
    dist = g.bfs_distances(q)
    if min((dist.get(w, 10**9) for w in cp | {qp}), default=10**9) < 5:
        raise VerificationError("clause 7: q too close to C' + q'")
    for path, parity, name in ((q0, 0, "Q_0"), (q1, 1, "Q_1")):
        if path[0] != q or path[-1] != qp:
            raise VerificationError(f"clause 8: {name} does not join q and q'")
        if (len(path) - 1) % 2 != parity:
            raise VerificationError(f"clause 8: {name} has the wrong parity")
        ambient = (c_set - cp) | (b_set - bp) | {q}
        if not set(path) <= ambient:
            raise VerificationError(f"clause 8: {name} leaves the allowed ambient set")
        if not is_path_induced(g, path):
            raise VerificationError(f"clause 8: {name} not induced")
    return True


def rope_induction_step(
    g: Graph,
    b_set,
    c_set,
    q,
    c: int,
    threshold: Optional[int] = None,
    strict: bool = True,
) -> InductionResult:
    """One induction step: from a covered, connected, chromatically rich C
    produce a smaller covered C' at distance >= 5 behind an odd/even pair of
    induced paths from q to a new connector q'.

    Strict mode enforces chi(C) >= 6c + 17 (or the given threshold); relaxed
    mode proceeds best-effort and reports which proof branch collapsed.  All
    eight output clauses are machine-verified before returning.
    """
    b_set, c_set = frozenset(b_set), frozenset(c_set)
    if odd_girth(g) < 11:
        raise PreconditionError("odd girth below 11")
    if b_set & c_set:
        raise PreconditionError("B and C are not disjoint")
    if q in c_set:
        raise PreconditionError("q must lie outside C")
    if not covers(g, b_set, c_set):
        raise PreconditionError("B does not cover C")
    if not g.induced_subgraph(c_set | {q}).is_connected():
        raise PreconditionError("g[C + q] not connected")
    if strict:
        need = induction_threshold(c) if threshold is None else threshold
        # chi(C) <= |C|, so a small C settles the comparison for free
        if len(c_set) < need:
            raise PreconditionError(f"chi(C) <= {len(c_set)} below threshold {need}")
        chi_c, _ = chi_exact(g.induced_subgraph(c_set))
        if chi_c < need:
            raise PreconditionError(f"chi(C) = {chi_c} below threshold {need}")

    # levelling of C + q from q
    sub = g.induced_subgraph(c_set | {q})
    dist_q = sub.bfs_distances(q)
    depth = max(dist_q.values())
    levels = [frozenset(v for v, d in dist_q.items() if d == i) for i in range(depth + 1)]

    # choose t >= 4 with chromatically richest M_{t+1}
    best_t = None
    for t in range(4, depth):
        k, _ = chi_exact(g.induced_subgraph(levels[t + 1]))
        if best_t is None or k > best_t[1]:
            best_t = (t, k)
    if best_t is None:
        raise VerificationError(
            "branch collapse: levelling from q has depth below 5",
            detail={"branch": "levelling", "depth": depth},
        )
    t = best_t[0]

    far = levels[t + 1] - g.ball(q, 4)
    c_star, chi_star = _max_chi_component(g, far)
    if not c_star:
        raise VerificationError(
            "branch collapse: no component of the far level avoids the 4-ball of q",
            detail={"branch": "far-component"},
        )
    m_set = frozenset().union(*levels[:t]) if t > 0 else frozenset()

    b0 = frozenset(v for v in b_set if not (g.neighbours(v) & m_set))
    b1, b2 = set(), set()
    for v in b_set - b0:
        h = g.induced_subgraph(m_set | {v})
        d = h.bfs_distances(q).get(v)
        if d is None:
            b0 |= {v}  # unreachable through M behaves like the no-neighbour class
            continue
        (b1 if d % 2 == 1 else b2).add(v)
    b_parts = (b0, frozenset(b1), frozenset(b2))
    c_parts = tuple(
        frozenset(v for v in c_star if g.neighbours(v) & b_parts[i]) for i in range(3)
    )

    chi_parts = []
    for part in c_parts:
        k, _ = chi_exact(g.induced_subgraph(part))
        chi_parts.append(k)

    if chi_parts[0] >= c + 3:
        result = _induction_branch_near(g, b_parts[0], c_parts[0], q, c, levels, t, m_set)
    else:
        h = next((i for i in (1, 2) if chi_parts[i] >= c + 3), None)
        if h is None:
            raise VerificationError(
                "branch collapse: no part of the far component is chromatically rich",
                detail={"branch": "partition", "chi_parts": tuple(chi_parts), "needed": c + 3},
            )
        result = _induction_branch_through(
            g, b_parts[h], c_parts[h], q, c, m_set, h
        )
    audit_induction_step(g, b_set, c_set, q, c, result)
    return result


def _induction_branch_near(g, b0, c0, q, c, levels, t, m_set):
    """Case chi(C_0) >= c + 3: grade C_0 by first adjacency into M_t and walk
    two level-respecting paths down to q."""
    m_t = sorted(levels[t], key=label_key)
    assigned = set()
    parts = []
    for m in m_t:
        w = frozenset(v for v in c0 - assigned if g.has_edge(v, m))
        assigned |= w
        parts.append(w)
    if assigned != set(c0):
        raise VerificationError(
            "branch collapse: far vertices without adjacency into the last level",
            detail={"branch": "grading-near"},
        )
    sub = g.induced_subgraph(c0)
    grading = StableGrading(parts=tuple(p for p in parts))
    x, u_prime, q_prime = earlier_witness_tf(sub, grading, c)
    c_prime = frozenset(x)

    walkable = m_set | frozenset(m_t)
    path_u = _lex_shortest_path(g.induced_subgraph(walkable | {u_prime}), q, u_prime)
    path_q = _lex_shortest_path(g.induced_subgraph(walkable | {q_prime}), q, q_prime)
    if path_u is None or path_q is None:
        raise VerificationError(
            "branch collapse: no level path from q to the connectors",
            detail={"branch": "paths-near"},
        )
    long_path = path_u + [q_prime]
    even, odd = (path_q, long_path) if (len(path_q) - 1) % 2 == 0 else (long_path, path_q)
    return InductionResult(
        b_prime=b0, c_prime=c_prime, q_prime=q_prime, q0=tuple(even), q1=tuple(odd)
    )


def _induction_branch_through(g, b_h, c_h, q, c, m_set, h):
    """Case chi(C_h) >= c + 3 for h in {1, 2}: grade C_h by the first vertex
    of M whose second neighbourhood through B_h reaches it, and route the two
    paths through cover vertices b_{u'}, b_{q'}."""
    sub_m = g.induced_subgraph(m_set | {q}) if q not in m_set else g.induced_subgraph(m_set)
    dist_m = sub_m.bfs_distances(q)
    order = sorted(m_set | {q}, key=lambda v: (dist_m.get(v, 10**9), label_key(v)))
    parts = []
    assigned = set()
    b_nbrs_of_m = {}
    for m in order:
        bs = frozenset(v for v in b_h if g.has_edge(v, m))
        b_nbrs_of_m[m] = bs
        w = frozenset(
            v
            for v in c_h - assigned
            if any(g.has_edge(v, b) for b in bs)
        )
        assigned |= w
        parts.append(w)
    if assigned != set(c_h):
        raise VerificationError(
            "branch collapse: far vertices unreachable through the cover",
            detail={"branch": "grading-through"},
        )
    sub = g.induced_subgraph(c_h)
    grading = StableGrading(parts=tuple(parts))
    x, u_prime, q_prime = earlier_witness_tf(sub, grading, c)
    c_prime = frozenset(x)

    idx = grading.index()
    i_u, i_q = idx[u_prime], idx[q_prime]
    k = max(i_u, i_q)
    head = set(order[: k + 1])
    b_prime = frozenset(
        v for v in b_h if not any(g.has_edge(v, m) for m in head)
    )
    pool = b_h - b_prime
    b_u = min(
        (v for v in pool if g.has_edge(v, order[i_u]) and g.has_edge(v, u_prime)),
        key=label_key,
        default=None,
    )
    b_q = min(
        (v for v in pool if g.has_edge(v, order[i_q]) and g.has_edge(v, q_prime)),
        key=label_key,
        default=None,
    )
    if b_u is None or b_q is None:
        raise VerificationError(
            "branch collapse: missing cover connector for the grading witnesses",
            detail={"branch": "connectors-through"},
        )
    base_u = _lex_shortest_path(g.induced_subgraph(m_set | {q, b_u}), q, b_u)
    base_q = _lex_shortest_path(g.induced_subgraph(m_set | {q, b_q}), q, b_q)
    if base_u is None or base_q is None:
        raise VerificationError(
            "branch collapse: cover connectors unreachable through the levels",
            detail={"branch": "paths-through"},
        )
    path_via_u = base_u + [u_prime, q_prime]
    path_via_q = base_q + [q_prime]
    even, odd = (
        (path_via_q, path_via_u)
        if (len(path_via_q) - 1) % 2 == 0
        else (path_via_u, path_via_q)
    )
    return InductionResult(
        b_prime=b_prime, c_prime=c_prime, q_prime=q_prime, q0=tuple(even), q1=tuple(odd)
    )


# ---------------------------------------------------------------------------
# broken ropes and the finder
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BrokenRopeResult:
    b_prime: frozenset
    c_prime: frozenset
    anchors: tuple
    rope: BrokenRope


def audit_broken_rope(g: Graph, b_set, c_set, q1, c: int, res: BrokenRopeResult):
    """Machine-check the seven output clauses plus the rope clauses."""
    bp, cp = res.b_prime, res.c_prime
    rope = res.rope
    anchors = rope.anchors
    end = rope.end
    if anchors[0] != q1:
        raise VerificationError("rope does not start at q1")
    if not g.induced_subgraph(cp | {end}).is_connected():
        raise VerificationError("clause 1: g[C' + end] not connected")
    k, _ = chi_exact(g.induced_subgraph(cp))
    if k < c:
        raise VerificationError(f"clause 2: chi(C') = {k} below {c}")
    if not covers(g, bp, cp):
        raise VerificationError("clause 3: B' does not cover C'")
    all_path_vertices = set()
    for i, (p1, p2) in enumerate(rope.paths):
        seg = set(p1) | set(p2)
        all_path_vertices |= seg
        outside = seg - g.ball(anchors[i + 1], 2)
        for b in bp:
            if g.neighbours(b) & outside:
                raise VerificationError(
                    "clause 4: B' touches a path outside N^2[next anchor]",
                    detail={"pair": i + 1, "vertex": b},
                )
        if not outside <= (frozenset(c_set) | {q1}):
            raise VerificationError(
                "clause 5: path vertices outside N^2[next anchor] leave C + q1",
                detail={"pair": i + 1, "extra": outside - (frozenset(c_set) | {q1})},
            )
    for w in cp:
        if g.neighbours(w) & (all_path_vertices - {end}):
            raise VerificationError(
                "clause 6: C' touches the rope outside its end", detail={"vertex": w}
            )
    for a in anchors[:-1]:
        dist = g.bfs_distances(a)
        if min((dist.get(w, 10**9) for w in cp | {end}), default=10**9) < 5:
            raise VerificationError(
                "clause 7: an anchor is too close to C' + end", detail={"anchor": a}
            )
    verify_rope(g, rope)
    return True


def build_broken_rope(
    g: Graph,
    b_set,
    c_set,
    q1,
    r: int,
    c: int,
    strict: bool = True,
) -> BrokenRopeResult:
    """Iterate the induction step r times, chaining each new connector as the
    next start vertex, and assemble the resulting broken rope."""
    if r < 1:
        raise PreconditionError("r must be at least 1")
    b_cur, c_cur, q_cur = frozenset(b_set), frozenset(c_set), q1
    if strict:
        need = broken_rope_threshold(r, c)
        if Fraction(len(c_cur)) < need:
            raise PreconditionError(
                f"chi(C) <= {len(c_cur)} below broken-rope threshold {need}"
            )
        chi_c, _ = chi_exact(g.induced_subgraph(c_cur))
        if Fraction(chi_c) < need:
            raise PreconditionError(
                f"chi(C) = {chi_c} below broken-rope threshold {need}"
            )
    anchors = [q1]
    pairs = []
    for step in range(r, 0, -1):
        # strict mode chains the published intermediate targets; relaxed mode
        # demands only the final bound at every depth
        if strict and step > 1:
            c_target = int(broken_rope_threshold(step - 1, c).__ceil__())
        else:
            c_target = c
        try:
            res = rope_induction_step(g, b_cur, c_cur, q_cur, c_target, strict=False)
        except VerificationError as failure:
            raise VerificationError(
                f"broken-rope induction failed at depth {r - step + 1}",
                detail={"depth": r - step + 1, "cause": failure.detail or str(failure)},
            ) from failure
        pairs.append((list(res.q1), list(res.q0)))
        anchors.append(res.q_prime)
        b_cur, c_cur, q_cur = res.b_prime, res.c_prime, res.q_prime
    result = BrokenRopeResult(
        b_prime=b_cur,
        c_prime=c_cur,
        anchors=tuple(anchors),
        rope=BrokenRope(anchors=tuple(anchors), paths=tuple(tuple(p) for p in pairs)),
    )
    audit_broken_rope(g, b_set, c_set, q1, c, result)
    return result


def _rope_from_chains(g: Graph, x_set) -> Optional[ArithmeticRope]:
    """Fallback recovery: decompose g[X] into maximal chains between branch
    vertices and reassemble a rope when the chains form parallel odd/even
    pairs around a single anchor cycle."""
    sub = g.induced_subgraph(x_set)
    branch = sorted((v for v in sub.vertices if sub.degree(v) >= 3), key=label_key)
    if len(branch) < 2:
        return None
    branch_set = set(branch)
    chains = []
    seen_edges = set()
    for a in branch:
        for w in sorted(sub.neighbours(a), key=label_key):
            if (a, w) in seen_edges:
                continue
            path = [a, w]
            seen_edges.add((a, w))
            seen_edges.add((w, a))
            while path[-1] not in branch_set:
                nxt = [
                    u
                    for u in sub.neighbours(path[-1])
                    if u != path[-2]
                ]
                if len(nxt) != 1:
                    break
                seen_edges.add((path[-1], nxt[0]))
                seen_edges.add((nxt[0], path[-1]))
                path.append(nxt[0])
            if path[-1] in branch_set and len(path) > 2:
                chains.append(path)
            elif path[-1] in branch_set and path[-1] != a:
                chains.append(path)
    by_ends = {}
    for chain in chains:
        key = tuple(sorted((chain[0], chain[-1]), key=label_key))
        if chain[0] != key[0]:
            chain = chain[::-1]
        by_ends.setdefault(key, [])
        if chain not in by_ends[key]:
            by_ends[key].append(chain)
    # keep only endpoint pairs with exactly one odd and one even chain
    pair_edges = {}
    for key, lst in by_ends.items():
        odd = [ch for ch in lst if (len(ch) - 1) % 2 == 1]
        even = [ch for ch in lst if (len(ch) - 1) % 2 == 0]
        if len(odd) == 1 and len(even) == 1:
            pair_edges[key] = (odd[0], even[0])
    # two-anchor special case: both pairs run between the same endpoints
    if len(by_ends) == 1 and not pair_edges:
        (key, lst), = by_ends.items()
        odd = [ch for ch in lst if (len(ch) - 1) % 2 == 1]
        even = [ch for ch in lst if (len(ch) - 1) % 2 == 0]
        if len(odd) == 2 and len(even) == 2:
            a, b = key
            back_odd, back_even = odd[1][::-1], even[1][::-1]
            rope = ArithmeticRope(
                anchors=(a, b),
                paths=((odd[0], even[0]), (back_odd, back_even)),
            )
            try:
                verify_rope(g, rope)
            except VerificationError:
                return None
            return rope
    # the anchor cycle: every branch vertex must meet exactly two pairs
    incidence = {b: [] for b in branch}
    for a, b in pair_edges:
        incidence[a].append((a, b))
        incidence[b].append((a, b))
    anchors_cycle = [b for b in branch if len(incidence.get(b, [])) == 2]
    if len(anchors_cycle) < 2 or len(anchors_cycle) != len(pair_edges):
        return None
    start = anchors_cycle[0]
    order = [start]
    prev_edge = None
    while True:
        cur = order[-1]
        options = [e for e in incidence[cur] if e != prev_edge]
        if not options:
            return None
        edge = options[0]
        nxt = edge[1] if edge[0] == cur else edge[0]
        prev_edge = edge
        if nxt == start:
            break
        if nxt in order:
            return None
        order.append(nxt)
    if len(order) != len(pair_edges):
        return None
    paths = []
    for i, a in enumerate(order):
        b = order[(i + 1) % len(order)]
        key = tuple(sorted((a, b), key=label_key))
        odd, even = pair_edges[key]
        if odd[0] != a:
            odd = odd[::-1]
        if even[0] != a:
            even = even[::-1]
        paths.append((odd, even))
    rope = ArithmeticRope(anchors=tuple(order), paths=tuple(paths))
    try:
        verify_rope(g, rope)
    except VerificationError:
        return None
    return rope


def find_rope(
    g: Graph,
    x_set,
    r: int,
    c: int = 3,
    strict: bool = False,
) -> ArithmeticRope:
    """Find an r-rope inside X: BFS levelling, broken rope in a deep level,
    and a closing path through the lower levels.  Relaxed mode falls back to
    chain-decomposition recovery when the constructive pipeline collapses
    (desk-scale inputs rarely reach the pipeline's chromatic demands)."""
    x_set = frozenset(x_set)
    if odd_girth(g) < 11:
        raise PreconditionError("odd girth below 11")
    if strict:
        need = finder_threshold(r)
        if Fraction(len(x_set)) < need:
            raise PreconditionError(
                f"chi(X) <= {len(x_set)} below finder threshold {need}"
            )
        chi_x, _ = chi_exact(g.induced_subgraph(x_set))
        if Fraction(chi_x) < need:
            raise PreconditionError(
                f"chi(X) = {chi_x} below finder threshold {need}"
            )
    failure_report = None
    try:
        rope = _find_rope_pipeline(g, x_set, r, c)
        if rope is not None:
            return rope
    except (VerificationError, PreconditionError) as e:
        failure_report = getattr(e, "detail", None) or str(e)
    rope = _rope_from_chains(g, x_set)
    if rope is not None and rope.r >= r:
        return rope
    raise VerificationError(
        "no verified rope found",
        detail={"pipeline_failure": failure_report},
    )


def _find_rope_pipeline(g: Graph, x_set, r: int, c: int) -> Optional[ArithmeticRope]:
    comps = g.induced_subgraph(x_set).connected_components()
    if len(comps) == 1:
        comp = comps[0]
    else:
        comp, _ = _max_chi_component(g, x_set)
    sub = g.induced_subgraph(comp)
    root = min(comp, key=label_key)
    dist = sub.bfs_distances(root)
    depth = max(dist.values())
    levels = [frozenset(v for v, d in dist.items() if d == i) for i in range(depth + 1)]
    best = None
    for s in range(4, depth):
        k, _ = chi_exact(g.induced_subgraph(levels[s + 1]))
        if best is None or k > best[1]:
            best = (s, k)
    if best is None:
        raise VerificationError(
            "rope pipeline: levelling too shallow", detail={"depth": depth}
        )
    s = best[0]
    c_comp, _ = _max_chi_component(g, levels[s + 1])
    q1_candidates = sorted(
        (v for v in levels[s] if g.neighbours(v) & c_comp), key=label_key
    )
    if not q1_candidates:
        raise VerificationError("rope pipeline: no connector into the deep level")
    q1 = q1_candidates[0]
    b_level = frozenset(levels[s])
    c_level = frozenset(c_comp)
    broken = build_broken_rope(g, b_level, c_level, q1, r, c, strict=False)
    rope = _close_broken_rope(g, broken, levels, s, q1)
    verify_rope(g, rope)
    return rope


def _close_broken_rope(g, broken: BrokenRopeResult, levels, s, q1) -> ArithmeticRope:
    rope = broken.rope
    end = rope.end
    anchors = rope.anchors
    dist_to_anchors = {a: g.bfs_distances(a) for a in anchors}
    x = min(
        (
            v
            for v in broken.c_prime
            if all(dist_to_anchors[a].get(v, 10**9) >= 5 for a in anchors)
        ),
        key=label_key,
        default=None,
    )
    if x is None:
        raise VerificationError(
            "rope pipeline: no deep vertex far from all anchors",
            detail={"branch": "closing-x"},
        )
    b = min((v for v in broken.b_prime if g.has_edge(v, x)), key=label_key, default=None)
    if b is None:
        raise VerificationError(
            "rope pipeline: far vertex is uncovered", detail={"branch": "closing-b"}
        )
    p1 = _lex_shortest_path(g.induced_subgraph(broken.c_prime | {end, b}), end, b)
    if p1 is None or len(p1) - 1 < 4:
        raise VerificationError(
            "rope pipeline: closing path through C' too short or missing",
            detail={"branch": "closing-p1"},
        )
    a1 = min((v for v in levels[s - 1] if g.has_edge(v, q1)), key=label_key, default=None)
    a2 = min((v for v in levels[s - 1] if g.has_edge(v, b)), key=label_key, default=None)
    if a1 is None or a2 is None:
        raise VerificationError(
            "rope pipeline: no hooks into the level below", detail={"branch": "closing-hooks"}
        )
    low = frozenset().union(*levels[: s - 1]) if s >= 1 else frozenset()
    p2 = _lex_shortest_path(g.induced_subgraph(low | {a1, a2}), a1, a2)
    if p2 is None:
        raise VerificationError(
            "rope pipeline: hooks not connected through the lower levels",
            detail={"branch": "closing-p2"},
        )
    # closing path: end ... b, then a2 ... a1 through the lower levels, then q1
    closing = p1 + p2[::-1] + [q1]
    # stitched rope: extend the last pair along the closing path so the pair
    # joins the last moving anchor back to q1
    ext = closing[1:]  # drop the duplicate end vertex
    new_last = []
    for path in rope.paths[-1]:
        new_last.append(list(path) + ext)
    swap = (len(closing) - 1) % 2 == 1
    odd_path, even_path = new_last[0], new_last[1]
    if swap:
        odd_path, even_path = even_path, odd_path
    new_paths = list(rope.paths[:-1]) + [(odd_path, even_path)]
    return ArithmeticRope(anchors=anchors[:-1], paths=tuple(new_paths))
