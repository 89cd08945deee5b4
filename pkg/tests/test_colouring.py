import math
from fractions import Fraction

import pytest

from tperfect.errors import PreconditionError, VerificationError
from tperfect.colouring import (
    Certificate,
    Colouring,
    certify,
    chi_exact,
    chi_fractional,
    clique_number,
    fractional_bound_check,
    hbar_colour,
    maximum_stable_set,
    reduce_clique,
    reduce_odd_girth,
    verify_colouring,
    verify_fractional_colouring,
)
from tperfect.corpus import complement, cycle, complete, fig1a, join, make, wheel
from tperfect.graphs import Graph, odd_girth

F = Fraction


def test_chi_exact_values():
    assert chi_exact(cycle(5))[0] == 3
    assert chi_exact(complete(4))[0] == 4
    assert chi_exact(fig1a())[0] == 4
    assert chi_exact(make("petersen"))[0] == 3
    assert chi_exact(make("grotzsch"))[0] == 4


def test_chi_exact_witness_is_proper():
    for name in ("C7", "K4", "petersen", "fig1b"):
        g = make(name)
        k, col = chi_exact(g)
        assert col.num_colours == k
        assert verify_colouring(g, col)


def test_verify_colouring_rejects_improper():
    g = cycle(5)
    bad = Colouring({v: 0 for v in g.vertices}, 1)
    with pytest.raises(VerificationError):
        verify_colouring(g, bad)


def test_chi_fractional_values():
    assert chi_fractional(cycle(7))[0] == F(7, 3)
    assert chi_fractional(complete(4))[0] == 4
    assert chi_fractional(make("petersen"))[0] == F(5, 2)
    value, fc = chi_fractional(cycle(5))
    assert value == F(5, 2)
    assert verify_fractional_colouring(cycle(5), fc)
    assert fc.total == value


def test_fractional_below_integral():
    for name in ("C5", "C7", "K4", "petersen", "fig1a"):
        g = make(name)
        assert chi_fractional(g)[0] <= chi_exact(g)[0]


def test_fractional_bound_check():
    assert fractional_bound_check(cycle(5), 2)
    assert fractional_bound_check(cycle(9), 3)
    assert fractional_bound_check(cycle(6), 2)
    with pytest.raises(PreconditionError):
        fractional_bound_check(complete(4), 1)  # not t-perfect


def test_reduce_odd_girth_on_cycles():
    s = reduce_odd_girth(cycle(5), 2)
    assert len(s) == 2
    assert odd_girth(cycle(5).delete_vertices(s)) is math.inf
    s6 = reduce_odd_girth(cycle(6), 2)
    assert len(s6) == 3


def test_reduce_odd_girth_fig1a():
    g = fig1a()
    s = reduce_odd_girth(g, 1)
    assert 3 * len(s) >= g.n
    assert odd_girth(g.delete_vertices(s)) >= 5


def test_reduce_odd_girth_preconditions():
    with pytest.raises(PreconditionError):
        reduce_odd_girth(cycle(5), 0)
    with pytest.raises(PreconditionError):
        reduce_odd_girth(cycle(3), 2)  # odd girth below 2*ell+1


def test_reduce_clique():
    k3 = complete(3)
    s = reduce_clique(k3)
    assert clique_number(k3.delete_vertices(s)) < 3
    prism = complement(cycle(6))
    s = reduce_clique(prism)
    assert clique_number(prism.delete_vertices(s)) == 2
    pendant = Graph(range(4), [(0, 1), (0, 2), (1, 2), (2, 3)])
    s = reduce_clique(pendant)
    assert clique_number(pendant.delete_vertices(s)) == 2


def test_certify_colouring_branch():
    g = make("fig1b")
    cert = certify(g)
    assert cert.kind == "colouring"
    assert verify_colouring(g, cert.colouring)
    assert cert.colouring.num_colours <= 8


def test_certify_witness_branch():
    for name in ("K4", "W5", "W7"):
        cert = certify(make(name))
        assert cert.kind == "witness"
    k4 = certify(complete(4))
    assert k4.witness.point == tuple(F(1, 3) for _ in range(4))


def test_certificate_json_kinds():
    import json

    for name in ("C5", "K4"):
        data = json.loads(certify(make(name)).to_json())
        assert data["kind"] in ("colouring", "witness")
        assert "certificate" in data


def test_hbar_colour():
    col5 = hbar_colour(cycle(5))
    assert col5.num_colours == 3  # matches C(3, 2)
    colk4 = hbar_colour(complete(4))
    assert colk4.num_colours == 4
    g = join(cycle(5), cycle(5))
    col = hbar_colour(g)
    assert verify_colouring(g, col)
    assert col.num_colours <= 10  # C(5, 2) at clique number 4
    assert chi_exact(g)[0] == 6


def test_maximum_stable_set():
    assert len(maximum_stable_set(cycle(7))) == 3
    assert len(maximum_stable_set(complete(5))) == 1
    assert clique_number(make("petersen")) == 2
