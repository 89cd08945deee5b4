"""Exact colouring, fractional colouring, odd-girth/clique reductions, and
the certifying pipeline that either colours a graph or refutes t-perfection.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import networkx as nx

from .errors import CapExceededError, PreconditionError, VerificationError
from .geometry import solve_lp
from .graphs import COMBINATORIAL_CAP, Graph, is_stable, label_key, odd_girth, shortest_odd_cycle
from .polytopes import (
    POLYTOPE_DIM_CAP,
    ImperfectionWitness,
    complement_graph,
    is_t_perfect,
    maximal_stable_sets,
    vertex_order,
)


@dataclass(frozen=True)
class Colouring:
    """Proper vertex colouring with contiguous colour indices from 0."""

    assignment: dict
    num_colours: int

    def classes(self) -> list:
        out = [set() for _ in range(self.num_colours)]
        for v, c in self.assignment.items():
            out[c].add(v)
        return [frozenset(s) for s in out]

    def to_json(self) -> str:
        return json.dumps(
            {
                "num_colours": self.num_colours,
                "assignment": {repr(v): c for v, c in self.assignment.items()},
            },
            indent=2,
            sort_keys=True,
        )


def verify_colouring(g: Graph, col: Colouring) -> bool:
    """Audit properness, coverage and colour-index contiguity."""
    if set(col.assignment) != set(g.vertices):
        raise VerificationError("colouring does not cover the vertex set")
    used = set(col.assignment.values())
    if used and (used != set(range(col.num_colours)) or min(used) != 0):
        raise VerificationError("colour indices not contiguous from 0")
    if not used and col.num_colours != 0:
        raise VerificationError("empty assignment with positive colour count")
    for u, v in g.edges():
        if col.assignment[u] == col.assignment[v]:
            raise VerificationError(
                "monochromatic edge", detail={"edge": (u, v), "colour": col.assignment[u]}
            )
    return True


@dataclass(frozen=True)
class FractionalColouring:
    """Weighted stable sets covering every vertex with total weight >= 1."""

    weights: tuple  # tuple of (frozenset, Fraction > 0)

    @property
    def total(self) -> Fraction:
        return sum((w for _, w in self.weights), Fraction(0))

    def to_json(self) -> str:
        return json.dumps(
            {
                "total": f"{self.total.numerator}/{self.total.denominator}",
                "sets": [
                    {
                        "vertices": [repr(v) for v in sorted(s, key=label_key)],
                        "weight": f"{w.numerator}/{w.denominator}",
                    }
                    for s, w in self.weights
                ],
            },
            indent=2,
            sort_keys=True,
        )


def verify_fractional_colouring(g: Graph, fc: FractionalColouring) -> bool:
    for s, w in fc.weights:
        if w <= 0:
            raise VerificationError("non-positive weight in fractional colouring")
        if not is_stable(g, s):
            raise VerificationError("non-stable set in fractional colouring", detail={"set": s})
    for v in g.vertices:
        cover = sum((w for s, w in fc.weights if v in s), Fraction(0))
        if cover < 1:
            raise VerificationError("vertex not fractionally covered", detail={"vertex": v})
    return True


# ---------------------------------------------------------------------------
# exact chromatic number
# ---------------------------------------------------------------------------


def _greedy_dsatur(g: Graph):
    """DSATUR greedy colouring; returns (k, assignment)."""
    assignment = {}
    saturation = {v: set() for v in g.vertices}
    uncoloured = set(g.vertices)
    while uncoloured:
        v = min(
            uncoloured,
            key=lambda u: (-len(saturation[u]), -g.degree(u), label_key(u)),
        )
        c = 0
        while c in saturation[v]:
            c += 1
        assignment[v] = c
        uncoloured.remove(v)
        for w in g.neighbours(v):
            saturation[w].add(c)
    k = (max(assignment.values()) + 1) if assignment else 0
    return k, assignment


def _greedy_clique(g: Graph) -> frozenset:
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), label_key(v)))
    clique = []
    for v in order:
        if all(g.has_edge(v, u) for u in clique):
            clique.append(v)
    return frozenset(clique)


def chi_exact(g: Graph):
    """Exact chromatic number with a witness colouring.

    Branch and bound over DSATUR orderings: at each step branch on a vertex
    of maximum saturation, trying existing colours and at most one new one.
    """
    if g.n > COMBINATORIAL_CAP:
        raise CapExceededError(f"chi_exact capped at {COMBINATORIAL_CAP} vertices")
    if g.n == 0:
        return 0, Colouring({}, 0)

    ub, best_assignment = _greedy_dsatur(g)
    lb = len(_greedy_clique(g))
    if lb == ub:
        col = Colouring(dict(best_assignment), ub)
        verify_colouring(g, col)
        return ub, col

    vertices = list(g.vertices)
    best = {"k": ub, "assignment": dict(best_assignment)}

    def search(assignment, used):
        nonlocal best
        if used >= best["k"]:
            return
        if len(assignment) == len(vertices):
            best = {"k": used, "assignment": dict(assignment)}
            return
        # pick the uncoloured vertex with maximum saturation
        cand, cand_sat = None, None
        for v in vertices:
            if v in assignment:
                continue
            sat = {assignment[w] for w in g.neighbours(v) if w in assignment}
            key = (len(sat), g.degree(v))
            if cand is None or key > cand_sat:
                cand, cand_sat, cand_colours = v, key, sat
        for c in range(min(used + 1, best["k"] - 1)):
            if c in cand_colours:
                continue
            assignment[cand] = c
            search(assignment, max(used, c + 1))
            del assignment[cand]

    search({}, 0)
    k = best["k"]
    col = Colouring(best["assignment"], k)
    verify_colouring(g, col)
    return k, col


def maximum_stable_set(g: Graph) -> frozenset:
    comp = nx.complement(g.to_networkx())
    clique, _ = nx.max_weight_clique(comp, weight=None)
    return frozenset(clique)


def clique_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    clique, size = nx.max_weight_clique(g.to_networkx(), weight=None)
    return size


# ---------------------------------------------------------------------------
# fractional chromatic number
# ---------------------------------------------------------------------------


def chi_fractional(g: Graph):
    """Exact fractional chromatic number with an optimal fractional colouring.

    Solved in the dual form: maximize the total vertex weight subject to one
    unit-capacity row per maximal stable set.  The row prices of that program
    are the optimal stable-set weights.
    """
    if g.n > COMBINATORIAL_CAP:
        raise CapExceededError(f"chi_fractional capped at {COMBINATORIAL_CAP} vertices")
    order = vertex_order(g)
    if not order:
        return Fraction(0), FractionalColouring(())
    stables = maximal_stable_sets(g)
    a_rows = [[Fraction(1) if v in s else Fraction(0) for v in order] for s in stables]
    b = [Fraction(1)] * len(stables)
    c = [Fraction(1)] * len(order)
    value, _, prices = solve_lp(a_rows, b, c)
    weights = tuple(
        (s, w) for s, w in zip(stables, prices) if w > 0
    )
    fc = FractionalColouring(weights)
    verify_fractional_colouring(g, fc)
    if fc.total != value:
        raise VerificationError("duality gap in fractional colouring")
    return value, fc


def fractional_bound_check(g: Graph, ell: int) -> bool:
    """Check the fractional bound for graphs of odd girth at least 2*ell+1:
    chi* <= 2 + 1/ell, with equality exactly when a (2*ell+1)-cycle exists.

    The t-perfection precondition is oracle-checked when the graph is within
    the polytope cap.
    """
    if ell < 1:
        raise PreconditionError("ell must be a positive integer")
    og = odd_girth(g)
    if og < 2 * ell + 1:
        raise PreconditionError(f"odd girth {og} below 2*ell+1 = {2 * ell + 1}")
    if g.n <= POLYTOPE_DIM_CAP:
        ok, _ = is_t_perfect(g)
        if not ok:
            raise PreconditionError("graph is not t-perfect")
    value, _ = chi_fractional(g)
    bound = Fraction(2) + Fraction(1, ell)
    has_tight_cycle = og == 2 * ell + 1
    return value <= bound and ((value == bound) == has_tight_cycle)


# ---------------------------------------------------------------------------
# reductions
# ---------------------------------------------------------------------------


def _largest_support_set(g: Graph) -> frozenset:
    """Maximum-cardinality stable set in the support of an optimal fractional
    colouring; ties broken lexicographically."""
    _, fc = chi_fractional(g)
    if not fc.weights:
        return frozenset()
    return max(
        (s for s, _ in fc.weights),
        key=lambda s: (len(s), [label_key(v) for v in sorted(s, key=label_key, reverse=True)]),
    )


def reduce_odd_girth(g: Graph, ell: int) -> frozenset:
    """A stable set whose removal raises the odd girth past 2*ell+1.

    Returns S stable with |S| >= ell*|V|/(2*ell+1) and odd girth of g - S at
    least 2*ell+3.  S is the largest support set of an optimal fractional
    colouring.  Postconditions are always verified; a failure (possible only
    on inputs that are not t-perfect) raises VerificationError carrying a
    violating odd cycle.
    """
    if ell < 1:
        raise PreconditionError("ell must be a positive integer")
    if g.n == 0:
        return frozenset()
    og = odd_girth(g)
    if og < 2 * ell + 1:
        raise PreconditionError(f"odd girth {og} below 2*ell+1 = {2 * ell + 1}")
    s = _largest_support_set(g)
    if not is_stable(g, s):
        raise VerificationError("reduction set not stable", detail={"set": s})
    if Fraction(len(s)) < Fraction(ell * g.n, 2 * ell + 1):
        raise VerificationError(
            "reduction set too small",
            detail={"set": s, "size": len(s), "required": Fraction(ell * g.n, 2 * ell + 1)},
        )
    h = g.delete_vertices(s)
    if odd_girth(h) < 2 * ell + 3:
        raise VerificationError(
            "odd girth did not rise",
            detail={"set": s, "violating_cycle": shortest_odd_cycle(h)},
        )
    return s


def reduce_clique(g: Graph) -> frozenset:
    """A stable set whose removal lowers the clique number.

    Valid for inputs whose clique/odd-cycle relaxation is exact and whose
    clique number is at least 3; the postcondition is always verified.
    """
    omega = clique_number(g)
    if omega < 3:
        raise PreconditionError("clique number below 3")
    s = _largest_support_set(g)
    if not is_stable(g, s):
        raise VerificationError("reduction set not stable", detail={"set": s})
    if clique_number(g.delete_vertices(s)) >= omega:
        raise VerificationError(
            "clique number did not drop", detail={"set": s, "omega": omega}
        )
    return s


# ---------------------------------------------------------------------------
# certification pipeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Outcome of the certifying pipeline: a proper colouring, or evidence
    that the input is not t-perfect (fractional vertex or replayable trace
    ending in an odd wheel)."""

    kind: str  # "colouring" or "witness"
    colouring: Optional[Colouring] = None
    witness: object = None  # ImperfectionWitness or TMinorTrace

    def to_json(self) -> str:
        if self.kind == "colouring":
            return json.dumps(
                {"kind": "colouring", "certificate": json.loads(self.colouring.to_json())},
                indent=2,
                sort_keys=True,
            )
        return json.dumps(
            {"kind": "witness", "certificate": json.loads(self.witness.to_json())},
            indent=2,
            sort_keys=True,
        )


def certify(g: Graph, rounds: int = 4) -> Certificate:
    """Colour g by rounds of odd-girth raising plus exact colouring of the
    remainder, or return a verified refutation of t-perfection.

    Each round extracts one stable colour class and raises the odd girth of
    the remainder by 2; the loop exits early once the remainder is bipartite.
    A failed round triggers the refutation path: a fractional relaxation
    vertex when the graph fits the polytope cap, otherwise a replayable
    sequence of deletions and contractions ending in an odd wheel.
    """
    if g.n > COMBINATORIAL_CAP:
        raise CapExceededError(f"certify capped at {COMBINATORIAL_CAP} vertices")
    if g.n <= POLYTOPE_DIM_CAP:
        # within the polytope cap the exact oracle settles the dichotomy:
        # a refutation is emitted even when the reduction rounds would
        # happen to colour the graph anyway
        ok, w = is_t_perfect(g)
        if not ok:
            return Certificate(kind="witness", witness=w)
    remainder = g
    classes = []
    for ell in range(1, rounds + 1):
        if remainder.n == 0 or remainder.bipartition() is not None:
            break
        try:
            s = reduce_odd_girth(remainder, ell)
        except VerificationError as failure:
            return Certificate(kind="witness", witness=_refute(g, failure))
        classes.append(s)
        remainder = remainder.delete_vertices(s)

    _, rest = chi_exact(remainder)
    assignment = {}
    for i, s in enumerate(classes):
        for v in s:
            assignment[v] = i
    offset = len(classes)
    for v, c in rest.assignment.items():
        assignment[v] = offset + c
    used = sorted(set(assignment.values()))
    relabel = {c: i for i, c in enumerate(used)}
    assignment = {v: relabel[c] for v, c in assignment.items()}
    col = Colouring(assignment, len(used))
    verify_colouring(g, col)
    return Certificate(kind="colouring", colouring=col)


def _refute(g: Graph, failure: VerificationError):
    """Turn a failed reduction into an independently checkable witness."""
    if g.n <= POLYTOPE_DIM_CAP:
        ok, w = is_t_perfect(g)
        if ok:
            raise VerificationError(
                "reduction failed on a graph the polytope oracle accepts",
                detail={"reduction_failure": failure.detail},
            )
        return w
    from .tminors import find_odd_wheel_tminor

    trace = find_odd_wheel_tminor(g)
    if trace is None:
        raise VerificationError(
            "reduction failed but no witness found within budget",
            detail={"reduction_failure": failure.detail},
        )
    return trace


def hbar_colour(g: Graph) -> Colouring:
    """Colour by peeling closed neighbourhoods: the part outside N(v) is
    coloured exactly, the part inside recurses with fresh colours.  On inputs
    whose complement has an exact clique/odd-cycle relaxation this uses at
    most (w+1 choose 2) colours for clique number w."""
    if g.n > COMBINATORIAL_CAP:
        raise CapExceededError(f"hbar_colour capped at {COMBINATORIAL_CAP} vertices")
    if g.n == 0:
        return Colouring({}, 0)
    if g.m == 0:
        return Colouring({v: 0 for v in g.vertices}, 1)
    v = max(g.vertices, key=lambda u: (g.degree(u), label_key(u)))
    outside = g.delete_vertices(g.neighbours(v))
    k1, col1 = chi_exact(outside)
    inner = g.induced_subgraph(g.neighbours(v))
    col2 = hbar_colour(inner)
    assignment = dict(col1.assignment)
    for u, c in col2.assignment.items():
        assignment[u] = k1 + c
    col = Colouring(assignment, k1 + col2.num_colours)
    verify_colouring(g, col)
    return col
