"""Graph file formats (graph6, edge list, JSON adjacency) and parsing of the
JSON certificates the library emits.

Certificate JSON stores vertex labels as their Python reprs; parsing uses
ast.literal_eval, which covers every label kind the library produces (ints,
strings, and nested tuples of those).
"""

from __future__ import annotations

import ast
import json
from fractions import Fraction

import networkx as nx

from .errors import PreconditionError
from .graphs import Graph, label_key


# ---------------------------------------------------------------------------
# graph formats
# ---------------------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    """graph6 string; vertices are relabelled 0..n-1 in canonical label order."""
    order = sorted(g.vertices, key=label_key)
    index = {v: i for i, v in enumerate(order)}
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((index[u], index[v]) for u, v in g.edges())
    return nx.to_graph6_bytes(h, header=False).decode("ascii").strip()

def from_graph6(text: str) -> Graph:
    text = text.strip()
    if not text:
        raise PreconditionError("empty graph6 input")
    try:
        h = nx.from_graph6_bytes(text.encode("ascii"))
    except (nx.NetworkXError, ValueError, UnicodeEncodeError) as e:
        raise PreconditionError(f"malformed graph6 input: {e}") from e
    return Graph.from_networkx(h)


def to_edge_list(g: Graph) -> str:
    """Header line "n m", then one "u v" line per edge, 0-based in canonical
    label order."""
    order = sorted(g.vertices, key=label_key)
    index = {v: i for i, v in enumerate(order)}
    lines = [f"{g.n} {g.m}"]
    lines += sorted(
        f"{min(index[u], index[v])} {max(index[u], index[v])}" for u, v in g.edges()
    )
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    """Parse "n m" header plus "u v" edge lines; blank lines and lines
    starting with # are ignored."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise PreconditionError(f"line {lineno}: expected header 'n m'")
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise PreconditionError(f"line {lineno}: non-integer header") from None
            continue
        if len(parts) != 2:
            raise PreconditionError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise PreconditionError(f"line {lineno}: non-integer endpoint") from None
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise PreconditionError(f"line {lineno}: endpoint out of range 0..{n - 1}")
        if u == v:
            raise PreconditionError(f"line {lineno}: loop rejected")
        edges.append((u, v))
    if header is None:
        raise PreconditionError("missing 'n m' header line")
    if len(edges) != header[1]:
        raise PreconditionError(
            f"edge count mismatch: header says {header[1]}, found {len(edges)}"
        )
    return Graph(range(header[0]), edges)


def encode_label(v):
    """JSON-safe label encoding: tuples become lists, recursively."""
    if isinstance(v, tuple):
        return [encode_label(x) for x in v]
    return v


def decode_label(v):
    if isinstance(v, list):
        return tuple(decode_label(x) for x in v)
    return v


def to_json_graph(g: Graph) -> str:
    order = sorted(g.vertices, key=label_key)
    adjacency = [
        [encode_label(v), [encode_label(w) for w in sorted(g.neighbours(v), key=label_key)]]
        for v in order
    ]
    return json.dumps({"adjacency": adjacency}, indent=2)


def from_json_graph(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PreconditionError(f"malformed JSON graph at offset {e.pos}: {e.msg}") from e
    if not isinstance(data, dict) or "adjacency" not in data:
        raise PreconditionError("JSON graph needs an 'adjacency' member")
    vertices = []
    edges = []
    for entry in data["adjacency"]:
        v = decode_label(entry[0])
        vertices.append(v)
        for w in entry[1]:
            edges.append((v, decode_label(w)))
    seen = set(vertices)
    for u, v in edges:
        if u not in seen or v not in seen:
            raise PreconditionError(f"adjacency references unknown vertex {v!r}")
    return Graph(vertices, [(u, v) for u, v in edges if label_key(u) < label_key(v)])


_FORMATS = {
    "graph6": (from_graph6, to_graph6),
    "edges": (from_edge_list, to_edge_list),
    "json": (from_json_graph, to_json_graph),
}


def parse_graph(text: str, fmt: str) -> Graph:
    if fmt not in _FORMATS:
        raise PreconditionError(f"unknown graph format {fmt!r}")
    return _FORMATS[fmt][0](text)


def serialize_graph(g: Graph, fmt: str) -> str:
    if fmt not in _FORMATS:
        raise PreconditionError(f"unknown graph format {fmt!r}")
    return _FORMATS[fmt][1](g)


def guess_format(path: str) -> str:
    if path.endswith(".g6"):
        return "graph6"
    if path.endswith(".json"):
        return "json"
    return "edges"


# ---------------------------------------------------------------------------
# certificate parsing (labels stored as reprs)
# ---------------------------------------------------------------------------


def parse_label(text: str):
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError) as e:
        raise PreconditionError(f"unparseable label {text!r}") from e


def _parse_fraction(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den) if den else 1)


def parse_colouring(data: dict):
    from .colouring import Colouring

    assignment = {parse_label(k): v for k, v in data["assignment"].items()}
    return Colouring(assignment=assignment, num_colours=data["num_colours"])


def parse_fractional_colouring(data: dict):
    from .colouring import FractionalColouring

    weights = tuple(
        (
            frozenset(parse_label(v) for v in entry["vertices"]),
            _parse_fraction(entry["weight"]),
        )
        for entry in data["sets"]
    )
    return FractionalColouring(weights=weights)


def parse_witness(data: dict):
    from .geometry import qvec
    from .polytopes import ImperfectionWitness

    order = tuple(parse_label(v) for v in data["order"])
    point = qvec(_parse_fraction(data["point"][repr(v)]) for v in order)
    tight = tuple(
        (entry["tag"], tuple(parse_label(s) for s in entry["source"]))
        for entry in data["tight"]
    )
    return ImperfectionWitness(
        relaxation=data["relaxation"], order=order, point=point, tight_tags=tight
    )


def _parse_trace_graph(data: dict) -> Graph:
    vertices = [parse_label(v) for v in data["vertices"]]
    edges = [(parse_label(u), parse_label(v)) for u, v in data["edges"]]
    return Graph(vertices, edges)


def parse_trace(data: dict):
    from .tminors import TMinorStep, TMinorTrace

    return TMinorTrace(
        base=_parse_trace_graph(data["base"]),
        steps=tuple(
            TMinorStep(kind=s["kind"], vertex=parse_label(s["vertex"]))
            for s in data["steps"]
        ),
        result=_parse_trace_graph(data["result"]),
        contraction_map={
            parse_label(v): frozenset(parse_label(u) for u in cls)
            for v, cls in data["contraction_map"].items()
        },
    )


def parse_wheel_witness(data: dict):
    from .tminors import OddWheelWitness

    return OddWheelWitness(
        trace=parse_trace(data["trace"]),
        hub=parse_label(data["hub"]),
        rim=tuple(parse_label(v) for v in data["rim"]),
    )


def identify_certificate(data: dict) -> str:
    """Classify a certificate JSON object by its members."""
    if "kind" in data and "certificate" in data:
        return "certificate"
    if "assignment" in data and "num_colours" in data:
        return "colouring"
    if "sets" in data and "total" in data:
        return "fractional"
    if "relaxation" in data and "point" in data:
        return "witness"
    if "hub" in data and "rim" in data and "trace" in data:
        return "wheel"
    if "contraction_map" in data and "steps" in data:
        return "trace"
    if data.get("kind") in ("rope", "broken_rope"):
        return "rope"
    raise PreconditionError("unrecognized certificate shape")
