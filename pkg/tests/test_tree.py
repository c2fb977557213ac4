import random

import pytest

from qplink.errors import DomainError, ParseError
from qplink.rational import machine_accepts
from qplink.tree import (StarClass, StarSpec, WeightedPlanarTree, classify, decompose, parse_tree,
                         positivity_hypotheses, sqp_by_transplant, star_classify, star_positive_case,
                         transplant_ok_star, transplant_ok_stick)

from _gen import corollary_tree, random_weighted_tree

ADJACENT_ZERO_NODES = "(0 (-2) (-2) (0 (-2) (-2)))"
NOT_TRANSPLANTED = "(0 (2 (-1)) (2) (-2))"


def _flags(c):
    return (c.very_strongly_qp, c.positive, c.strongly_qp_certified, c.unknown)


def test_parse_and_print():
    t = parse_tree("(-2 (-2) (-2 (-2)))")
    assert t.weights == (-2, -2, -2, -2)
    assert t.neighbors[2] == (0, 3)
    assert parse_tree(t.to_sexpr()) == t
    for bad in ["", "(", "(x)", "(1) (2)", "(1 (2)"]:
        with pytest.raises(ParseError):
            parse_tree(bad)


def test_tree_validation():
    with pytest.raises(DomainError):
        WeightedPlanarTree((1, 2), ((1,), ()))
    with pytest.raises(DomainError):
        WeightedPlanarTree((1, 2, 3), ((1,), (0, 2), (1, 0)))


def test_decompose_examples():
    d = decompose(parse_tree("(-2 (-2 (-2)))"))
    assert d.stick_tuples() == [(-2, -2, -2)] and not d.stars
    d = decompose(parse_tree("(0 (-2) (-2) (-2))"))
    assert not d.sticks and d.star_specs() == [StarSpec(0, (-2, -2, -2))]
    d = decompose(parse_tree(ADJACENT_ZERO_NODES))
    assert not d.sticks and len(d.stars) == 2


def test_decompose_covers_non_nodes_once():
    rng = random.Random(8)
    for _ in range(300):
        t = random_weighted_tree(rng, rng.randint(1, 14))
        d = decompose(t)
        nodes = set(t.nodes)
        counted = [v for path in d.sticks for v in path]
        assert len(counted) == len(set(counted))
        for v in set(range(len(t))) - nodes:
            in_stick = v in counted
            twig = any(u in nodes for u in t.neighbors[v])
            assert in_stick or twig
        assert len(d.stars) == len(nodes)


def test_star_classify_examples():
    assert star_classify(StarSpec(-2, (-2, -2, -2)))[0] is StarClass.VERY_STRONGLY_QP
    assert star_classify(StarSpec(3, (-1, -3, -5)))[0] is StarClass.POSITIVE
    assert star_classify(StarSpec(0, (-2, -2, -3)))[0] is StarClass.UNKNOWN
    assert star_classify(StarSpec(0, (1, -3, -5)))[0] is StarClass.STRONGLY_QP
    assert star_positive_case(StarSpec(0, (2, 2, -2))) == "no-odd-negative"
    with pytest.raises(DomainError):
        StarSpec(0, (1, 2))


def test_classify_examples():
    assert _flags(classify(parse_tree("(-2 (-2 (-2 (-2 (-2)))))"))) == (True, True, True, False)
    c = classify(parse_tree("(3 (-1) (-3) (-5))"))
    assert c.positive and not c.very_strongly_qp
    c = classify(parse_tree(ADJACENT_ZERO_NODES))
    assert c.unknown and not c.positive
    assert positivity_hypotheses(parse_tree(ADJACENT_ZERO_NODES)) == (True, False)


def test_transplant_predicates():
    assert transplant_ok_stick((-2, -2), "first")
    assert transplant_ok_stick((-1, 2), "first") and not transplant_ok_stick((-1, 2), "last")
    assert not transplant_ok_star(StarSpec(0, (2, 2, -2)), 0)
    assert transplant_ok_star(StarSpec(0, (2, 2, -2)), 2)
    assert all(transplant_ok_star(StarSpec(0, (-4, -4, -4)), i) for i in range(3))
    with pytest.raises(DomainError, match="no qp certificate"):
        transplant_ok_star(StarSpec(0, (-2, -2, -3)), 0)
    with pytest.raises(DomainError, match="no qp certificate"):
        transplant_ok_stick((1, 1), "first")


def test_positive_stick_end_rule():
    # a merely positive stick transplants only at a negative end
    for r in [(2, -1), (-1, 2), (1, -1), (3, -2, 1)]:
        assert machine_accepts(r)
        assert transplant_ok_stick(r, "first") == (r[0] < 0)
        assert transplant_ok_stick(r, "last") == (r[-1] < 0)


def test_transplant_examples():
    assert sqp_by_transplant(parse_tree("(-2 (-2) (-4 (-2)) (-6))")) is not None
    c = classify(parse_tree(NOT_TRANSPLANTED))
    assert c.positive
    assert sqp_by_transplant(parse_tree(NOT_TRANSPLANTED)) is None


def test_transplant_certificate_order_is_subtree_prefix():
    rng = random.Random(12)
    for _ in range(100):
        t = corollary_tree(rng, rng.randint(4, 14))
        cert = sqp_by_transplant(t)
        assert cert is not None
        owner = {v: k for k, p in enumerate(cert.pieces) for v in p["vertices"]}
        seen = set()
        for k in cert.order:
            if seen:
                assert any(owner[u] in seen for v in cert.pieces[k]["vertices"] for u in t.neighbors[v])
            seen.add(k)


def test_corollary_trees():
    rng = random.Random(23)
    for _ in range(200):
        assert sqp_by_transplant(corollary_tree(rng, rng.randint(1, 16))) is not None


def test_vsqp_iff_all_even_negative():
    rng = random.Random(1)
    for _ in range(500):
        t = random_weighted_tree(rng, rng.randint(1, 10), -6, 2)
        c = classify(t)
        assert c.very_strongly_qp == all(w < 0 and w % 2 == 0 for w in t.weights)
        if c.very_strongly_qp or c.positive:
            assert c.strongly_qp_certified
        assert c.unknown == (not c.strongly_qp_certified)


def test_positive_matches_pieces_under_hypotheses():
    rng = random.Random(2)
    checked = 0
    for _ in range(800):
        t = random_weighted_tree(rng, rng.randint(1, 10))
        if positivity_hypotheses(t) != (True, True):
            assert not classify(t).positive
            continue
        d = decompose(t)
        expect = all(machine_accepts(r) for r in d.stick_tuples()) and \
            all(star_positive_case(s) is not None for s in d.star_specs())
        assert classify(t).positive == expect
        checked += 1
    assert checked > 100


def test_relabel_and_reflection_invariance():
    rng = random.Random(3)
    for _ in range(500):
        t = random_weighted_tree(rng, rng.randint(1, 12))
        perm = list(range(len(t)))
        rng.shuffle(perm)
        base = _flags(classify(t))
        assert _flags(classify(t.relabeled(perm))) == base
        assert _flags(classify(t.reflected())) == base
        assert _flags(classify(parse_tree(t.to_sexpr(rng.randrange(len(t)))))) == base
