import itertools
import json

import pytest

from tperfect.corpus import make
from tperfect.errors import PreconditionError
from tperfect.graphio import (
    from_edge_list,
    from_graph6,
    from_json_graph,
    guess_format,
    identify_certificate,
    parse_colouring,
    parse_graph,
    parse_label,
    parse_trace,
    parse_witness,
    serialize_graph,
    to_edge_list,
    to_graph6,
    to_json_graph,
)
from tperfect.graphs import Graph


def test_graph6_roundtrip_all_five_vertex_graphs():
    pairs = list(itertools.combinations(range(5), 2))
    seen = set()
    for r in range(len(pairs) + 1):
        for edges in itertools.combinations(pairs, r):
            g = Graph(range(5), list(edges))
            s = to_graph6(g)
            h = from_graph6(s)
            assert to_graph6(h) == s
            assert h.m == g.m
            seen.add(s)
    assert len(seen) == 2**10


def test_graph6_malformed():
    with pytest.raises(PreconditionError):
        from_graph6("")
    with pytest.raises(PreconditionError):
        from_graph6("\x01\x02")


def test_edge_list_roundtrip():
    g = make("petersen")
    h = from_edge_list(to_edge_list(g))
    assert h.n == g.n and h.m == g.m


def test_edge_list_single_vertex():
    assert from_edge_list("1 0\n").n == 1


def test_edge_list_diagnostics():
    with pytest.raises(PreconditionError, match="line 2: loop"):
        from_edge_list("1 1\n0 0\n")
    with pytest.raises(PreconditionError, match="line 3"):
        from_edge_list("3 2\n0 1\n1 9\n")
    with pytest.raises(PreconditionError, match="header"):
        from_edge_list("")
    with pytest.raises(PreconditionError, match="mismatch"):
        from_edge_list("3 2\n0 1\n")


def test_json_graph_roundtrip_with_tuple_labels():
    g = Graph([("a", 1), 0, "x"], [(("a", 1), 0), (0, "x")])
    h = from_json_graph(to_json_graph(g))
    assert set(h.vertices) == set(g.vertices)
    assert set(h.edges()) == set(g.edges())


def test_json_graph_malformed():
    with pytest.raises(PreconditionError):
        from_json_graph("{not json")
    with pytest.raises(PreconditionError):
        from_json_graph("{}")


def test_format_dispatch():
    g = make("C5")
    for fmt in ("graph6", "edges", "json"):
        text = serialize_graph(g, fmt)
        h = parse_graph(text, fmt)
        assert h.n == 5 and h.m == 5
    with pytest.raises(PreconditionError):
        parse_graph("", "nope")
    assert guess_format("a.g6") == "graph6"
    assert guess_format("a.json") == "json"
    assert guess_format("a.txt") == "edges"


def test_parse_label():
    assert parse_label("('a', 1)") == ("a", 1)
    assert parse_label("3") == 3
    with pytest.raises(PreconditionError):
        parse_label("not a literal ][")


def test_certificate_parsers():
    from tperfect.colouring import certify, chi_exact, verify_colouring
    from tperfect.polytopes import is_t_perfect, verify_witness

    g = make("C5")
    _, col = chi_exact(g)
    parsed = parse_colouring(json.loads(col.to_json()))
    assert verify_colouring(g, parsed)

    k4 = make("K4")
    _, w = is_t_perfect(k4)
    parsed = parse_witness(json.loads(w.to_json()))
    assert verify_witness(k4, parsed)

    data = json.loads(certify(g).to_json())
    assert identify_certificate(data) == "certificate"
    assert identify_certificate(data["certificate"]) == "colouring"


def test_identify_certificate_shapes():
    assert identify_certificate({"relaxation": "tstab", "point": {}}) == "witness"
    assert identify_certificate({"kind": "rope", "anchors": [], "paths": []}) == "rope"
    with pytest.raises(PreconditionError):
        identify_certificate({"mystery": 1})
