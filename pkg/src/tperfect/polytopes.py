"""Stable set polytope relaxations and exact perfection oracles.

Builds the edge/odd-cycle relaxation, the clique relaxation, and their common
refinement for a graph, enumerates their vertices exactly, and decides
whether each relaxation coincides with the stable set polytope.  Negative
answers come with a machine-checked fractional vertex witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import networkx as nx

from .errors import CapExceededError, VerificationError
from .geometry import (
    HPolytope,
    Inequality,
    VRep,
    enumerate_vertices,
    point_in_hull,
    qvec,
    _rank,
)
from .graphs import Graph, is_stable, label_key

# Vertex enumeration cost grows quickly with dimension; refuse above this.
POLYTOPE_DIM_CAP = 16


def vertex_order(g: Graph) -> tuple:
    """The fixed coordinate order used by every polytope built from g."""
    return tuple(sorted(g.vertices, key=label_key))


def incidence_vector(order: tuple, subset) -> tuple:
    s = set(subset)
    return qvec([1 if v in s else 0 for v in order])


def all_stable_sets(g: Graph) -> list:
    """Every stable set of g (including the empty set), as frozensets."""
    order = vertex_order(g)
    out = []

    def extend(i, current, forbidden):
        if i == len(order):
            out.append(frozenset(current))
            return
        v = order[i]
        if v not in forbidden:
            extend(i + 1, current + [v], forbidden | g.neighbours(v))
        extend(i + 1, current, forbidden)

    extend(0, [], set())
    return out


def maximal_stable_sets(g: Graph) -> list:
    """Inclusion-maximal stable sets, via cliques of the complement."""
    comp = nx.complement(g.to_networkx())
    return sorted(
        (frozenset(c) for c in nx.find_cliques(comp)),
        key=lambda s: tuple(label_key(v) for v in sorted(s, key=label_key)),
    )


def maximal_cliques(g: Graph) -> list:
    return sorted(
        (frozenset(c) for c in nx.find_cliques(g.to_networkx())),
        key=lambda s: tuple(label_key(v) for v in sorted(s, key=label_key)),
    )


def _canonical_cycle(cyc) -> tuple:
    """Rotation/reflection-invariant representative of a cyclic vertex list."""
    cyc = list(cyc)
    k = len(cyc)
    i0 = min(range(k), key=lambda i: label_key(cyc[i]))
    fwd = tuple(cyc[(i0 + j) % k] for j in range(k))
    bwd = tuple(cyc[(i0 - j) % k] for j in range(k))
    return min(fwd, bwd, key=lambda t: tuple(label_key(v) for v in t))


def chordless_odd_cycles(g: Graph) -> list:
    """All chordless cycles of odd length, canonically oriented and sorted."""
    found = {
        _canonical_cycle(c)
        for c in nx.chordless_cycles(g.to_networkx())
        if len(c) % 2 == 1
    }
    return sorted(found, key=lambda t: (len(t), tuple(label_key(v) for v in t)))


def all_odd_cycles(g: Graph) -> list:
    """All simple cycles of odd length (not only chordless ones)."""
    found = {
        _canonical_cycle(c)
        for c in nx.simple_cycles(g.to_networkx())
        if len(c) % 2 == 1
    }
    return sorted(found, key=lambda t: (len(t), tuple(label_key(v) for v in t)))


def _nonneg_rows(order) -> list:
    rows = []
    for i, v in enumerate(order):
        coeffs = [Fraction(0)] * len(order)
        coeffs[i] = Fraction(-1)
        rows.append(Inequality(tuple(coeffs), Fraction(0), tag="nonneg", source=(v,)))
    return rows


def _subset_row(order, subset, rhs, tag, source) -> Inequality:
    s = set(subset)
    coeffs = tuple(Fraction(1) if v in s else Fraction(0) for v in order)
    return Inequality(coeffs, Fraction(rhs), tag=tag, source=source)


def tstab(g: Graph, cycles: str = "chordless") -> HPolytope:
    """Edge and odd-cycle relaxation of the stable set polytope.

    ``cycles`` selects which odd cycles contribute rows; the chordless ones
    already determine the polytope, ``"all"`` adds the implied rows too.
    Isolated vertices get an explicit x_v <= 1 row to keep the system bounded.
    """
    order = vertex_order(g)
    rows = _nonneg_rows(order)
    for u, v in g.edges():
        rows.append(_subset_row(order, (u, v), 1, "edge", (u, v)))
    for v in order:
        if g.degree(v) == 0:
            rows.append(_subset_row(order, (v,), 1, "edge", (v,)))
    cyc_fn = chordless_odd_cycles if cycles == "chordless" else all_odd_cycles
    for cyc in cyc_fn(g):
        rows.append(_subset_row(order, cyc, (len(cyc) - 1) // 2, "oddcycle", tuple(cyc)))
    return HPolytope(dim=len(order), inequalities=tuple(rows))


def qstab(g: Graph) -> HPolytope:
    """Clique relaxation: nonnegativity plus one row per maximal clique."""
    order = vertex_order(g)
    rows = _nonneg_rows(order)
    for clq in maximal_cliques(g):
        src = tuple(sorted(clq, key=label_key))
        rows.append(_subset_row(order, clq, 1, "clique", src))
    return HPolytope(dim=len(order), inequalities=tuple(rows))


def hstab(g: Graph, cycles: str = "chordless") -> HPolytope:
    """Clique and odd-cycle relaxation (intersection of the two above)."""
    order = vertex_order(g)
    rows = _nonneg_rows(order)
    for clq in maximal_cliques(g):
        src = tuple(sorted(clq, key=label_key))
        rows.append(_subset_row(order, clq, 1, "clique", src))
    cyc_fn = chordless_odd_cycles if cycles == "chordless" else all_odd_cycles
    for cyc in cyc_fn(g):
        rows.append(_subset_row(order, cyc, (len(cyc) - 1) // 2, "oddcycle", tuple(cyc)))
    return HPolytope(dim=len(order), inequalities=tuple(rows))


def ssp_vertices(g: Graph) -> VRep:
    """Vertices of the stable set polytope: incidence vectors of stable sets."""
    order = vertex_order(g)
    return VRep.from_points(incidence_vector(order, s) for s in all_stable_sets(g))


def relaxation_vertices(g: Graph, p: HPolytope) -> VRep:
    if p.dim > POLYTOPE_DIM_CAP:
        raise CapExceededError(
            f"vertex enumeration capped at dimension {POLYTOPE_DIM_CAP}, got {p.dim}"
        )
    return enumerate_vertices(p)


@dataclass(frozen=True)
class ImperfectionWitness:
    """A fractional vertex of a relaxation, proving it exceeds the stable
    set polytope.  ``point`` is given in the coordinate order ``order``."""

    relaxation: str  # "tstab" or "hstab"
    order: tuple
    point: tuple  # QVec of Fractions
    tight_tags: tuple  # (tag, source) of each inequality tight at the point

    def coordinates(self) -> dict:
        return dict(zip(self.order, self.point))

    def to_json(self) -> str:
        return json.dumps(
            {
                "relaxation": self.relaxation,
                "order": [repr(v) for v in self.order],
                "point": {
                    repr(v): f"{x.numerator}/{x.denominator}"
                    for v, x in zip(self.order, self.point)
                },
                "tight": [
                    {"tag": tag, "source": [repr(s) for s in source]}
                    for tag, source in self.tight_tags
                ],
            },
            indent=2,
            sort_keys=True,
        )


def verify_witness(g: Graph, w: ImperfectionWitness) -> bool:
    """Audit a fractional-vertex witness from scratch.

    Checks that the point lies in the claimed relaxation, is a vertex of it
    (tight rows of full rank), has a non-integral coordinate, and lies outside
    the stable set polytope.  Raises VerificationError naming the first
    violated clause.
    """
    if w.relaxation == "tstab":
        p = tstab(g)
    elif w.relaxation == "hstab":
        p = hstab(g)
    else:
        raise VerificationError("unknown relaxation", detail={"relaxation": w.relaxation})
    if tuple(w.order) != vertex_order(g):
        raise VerificationError("witness coordinate order mismatch")
    x = qvec(w.point)
    if not p.contains(x):
        raise VerificationError("witness point violates the relaxation", detail={"point": x})
    tight = p.tight_inequalities(x)
    if _rank([list(i.coeffs) for i in tight]) != p.dim:
        raise VerificationError("witness point is not a vertex of the relaxation")
    if all(c.denominator == 1 for c in x):
        raise VerificationError("witness point is integral")
    stables = [incidence_vector(w.order, s) for s in all_stable_sets(g)]
    if point_in_hull(stables, x):
        raise VerificationError("witness point lies in the stable set polytope")
    return True


def _fractional_witness(g: Graph, relaxation: str, p: HPolytope) -> Optional[ImperfectionWitness]:
    order = vertex_order(g)
    verts = relaxation_vertices(g, p)
    for x in verts.vertices:  # lexicographic order: deterministic witness
        if any(c.denominator != 1 for c in x):
            tight = p.tight_inequalities(x)
            w = ImperfectionWitness(
                relaxation=relaxation,
                order=order,
                point=x,
                tight_tags=tuple((i.tag, i.source) for i in tight),
            )
            verify_witness(g, w)
            return w
    return None


def is_t_perfect(g: Graph):
    """Exact test whether the edge/odd-cycle relaxation equals the stable set
    polytope.  Returns (True, None) or (False, witness)."""
    w = _fractional_witness(g, "tstab", tstab(g))
    return (w is None), w


def is_h_perfect(g: Graph):
    """Exact test whether the clique/odd-cycle relaxation equals the stable
    set polytope.  Returns (True, None) or (False, witness)."""
    w = _fractional_witness(g, "hstab", hstab(g))
    return (w is None), w


def complement_graph(g: Graph) -> Graph:
    order = vertex_order(g)
    edges = [
        (u, v)
        for i, u in enumerate(order)
        for v in order[i + 1 :]
        if not g.has_edge(u, v)
    ]
    return Graph(order, edges)


def is_hbar_perfect(g: Graph):
    """Test of the complement graph against the clique/odd-cycle relaxation.
    The witness, if any, lives in the complement."""
    return is_h_perfect(complement_graph(g))
