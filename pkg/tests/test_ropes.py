import random
from fractions import Fraction
from itertools import product

import pytest

from tperfect.colouring import chi_exact
from tperfect.corpus import cycle, grotzsch
from tperfect.errors import PreconditionError, VerificationError
from tperfect.graphs import Graph, is_cycle_induced, odd_girth
from tperfect.ropes import (
    ArithmeticRope,
    StableGrading,
    broken_rope_threshold,
    build_broken_rope,
    cycle_through_anchors,
    earlier_witness,
    earlier_witness_tf,
    find_rope,
    finder_threshold,
    generate_rope,
    generate_rope_shell,
    induction_threshold,
    rope_from_json,
    rope_induction_step,
    verify_rope,
    _chain,
)


def test_threshold_formulas():
    assert induction_threshold(3) == 35
    assert broken_rope_threshold(1, 3) == 35
    assert broken_rope_threshold(5, 3) == 49763
    assert finder_threshold(5) == 99525
    # each induction round multiplies by 6 and adds 17
    for r in range(1, 5):
        assert broken_rope_threshold(r + 1, 3) == 6 * broken_rope_threshold(r, 3) + 17


def test_generate_and_verify():
    g, rope = generate_rope(2, 7, 8)
    assert verify_rope(g, rope)
    lengths = sorted(len(_chain(rope, h)) for h in product((1, 2), repeat=2))
    assert lengths == [14, 15, 15, 16]
    g5, rope5 = generate_rope(5, 7, 8)
    assert verify_rope(g5, rope5)
    assert rope5.r == 5


def test_generate_rejects_bad_lengths():
    with pytest.raises(PreconditionError):
        generate_rope(2, 6, 8)  # odd length must be odd
    with pytest.raises(PreconditionError):
        generate_rope(2, 7, 7)
    with pytest.raises(PreconditionError):
        generate_rope(1, 7, 8)


def test_chord_mutation_rejected():
    g, rope = generate_rope(3, 7, 8)
    path = rope.paths[0][0]
    bad = Graph(g.vertices, list(g.edges()) + [(path[1], path[4])])
    with pytest.raises(VerificationError):
        verify_rope(bad, rope)


def test_rope_json_roundtrip():
    _, rope = generate_rope(3, 7, 8)
    assert rope_from_json(rope.to_json()) == rope


def test_cycle_through_anchors():
    g, rope = generate_rope(5, 7, 8)
    chosen = (rope.anchors[0], rope.anchors[2], rope.anchors[3])
    cyc = cycle_through_anchors(rope, chosen)
    assert len(cyc) % 2 == 1
    assert is_cycle_induced(g, cyc)
    assert set(chosen) <= set(cyc)


def test_earlier_witness_triangle():
    t = Graph("abc", [("a", "b"), ("a", "c"), ("b", "c")])
    grading = StableGrading(parts=(frozenset("a"), frozenset("b"), frozenset("c")))
    x, edge = earlier_witness(t, grading, 1)
    assert x == frozenset("c") and edge == ("a", "b")


def test_earlier_witness_precondition():
    c4 = cycle(4)
    grading = StableGrading(parts=tuple(frozenset([i]) for i in range(4)))
    with pytest.raises(PreconditionError):
        earlier_witness(c4, grading, 1)


def test_earlier_witness_tf():
    g = grotzsch()
    k, col = chi_exact(g)
    grading = StableGrading(parts=tuple(frozenset(c) for c in col.classes()))
    x, u, v = earlier_witness_tf(g, grading, 1)
    sub = g.induced_subgraph(x)
    assert chi_exact(sub)[0] >= 1
    assert not (g.neighbours(u) & x)
    assert g.neighbours(v) & x
    c5 = cycle(5)
    with pytest.raises(PreconditionError):
        earlier_witness_tf(
            c5, StableGrading(parts=tuple(frozenset([i]) for i in range(5))), 1
        )


def test_grading_validation():
    g = cycle(5)
    bad = StableGrading(parts=(frozenset([0, 1]), frozenset([2, 3, 4])))
    with pytest.raises((PreconditionError, VerificationError)):
        earlier_witness(g, bad, 1)


def test_rope_induction_step(layered):
    g, b_set, c_set, q1 = layered
    res = rope_induction_step(g, b_set, c_set, q1, 0, strict=False)
    assert res.q0[0] == q1 and res.q1[0] == q1
    assert res.q0[-1] == res.q_prime and res.q1[-1] == res.q_prime
    assert len(res.q0) % 2 == 1  # even number of edges
    assert len(res.q1) % 2 == 0  # odd number of edges


def test_rope_induction_strict_threshold(layered):
    g, b_set, c_set, q1 = layered
    with pytest.raises(PreconditionError):
        rope_induction_step(g, b_set, c_set, q1, 3, strict=True)


def test_build_broken_rope(layered):
    g, b_set, c_set, q1 = layered
    res = build_broken_rope(g, b_set, c_set, q1, 2, 0, strict=False)
    assert res.rope.r == 2
    assert verify_rope(g, res.rope)


def test_find_rope_layered(layered):
    g, _, _, _ = layered
    rope = find_rope(g, frozenset(g.vertices), 2, c=0)
    assert isinstance(rope, ArithmeticRope)
    assert rope.r >= 2
    assert verify_rope(g, rope)


def test_find_rope_shell_recovery():
    host, _, _ = generate_rope_shell(3, 7, 8)
    rec = find_rope(host, frozenset(host.vertices), 3, c=0)
    assert verify_rope(host, rec)


def test_find_rope_strict_threshold(layered):
    g, _, _, _ = layered
    with pytest.raises(PreconditionError):
        find_rope(g, frozenset(g.vertices), 5, strict=True)


def test_find_rope_rejects_low_odd_girth():
    with pytest.raises(PreconditionError):
        find_rope(cycle(9), frozenset(range(9)), 2)


def test_seeded_path_chord_mutations():
    g, rope = generate_rope(4, 7, 8)
    rng = random.Random(17)
    for _ in range(20):
        i = rng.randrange(rope.r)
        which = rng.randrange(2)
        path = rope.paths[i][which]
        a = rng.randrange(1, len(path) - 3)
        b = rng.randrange(a + 2, len(path) - 1)
        bad = Graph(g.vertices, list(g.edges()) + [(path[a], path[b])])
        with pytest.raises(VerificationError):
            verify_rope(bad, rope)
