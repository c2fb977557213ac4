import itertools
import random

import pytest

from qplink.braid_core import BandRepresentation, band, braided_surface, trefoil
from qplink.covers import (BranchedCyclicCover, ConnSumS1xS2, DoubleKnotExterior, LensSpaceManifold, Pretzel,
                           ProductS1Fg, Rational, SeifertFibered, Sphere3, Torus3, Tree, TreeManifold,
                           branched_cover_euler,
                           cyclic_suspension, double_branched_cover, double_branched_cover_report, double_of_exterior,
                           dummy_suspension, homology_order, link_at_infinity_product, manifold_from_json,
                           singularity_excluded)
from qplink.diagram import four_plat_diagram, link_determinant
from qplink.errors import DomainError, ParseError
from qplink.rational import LensSpace, lens_equivalent

from _gen import random_brep

ANNULUS = BandRepresentation(2, (band(2, [], 1),) * 2)
SLICE = BandRepresentation(3, (band(3, [2, 2, 2], 1), band(3, [], 2)))


def test_branched_cover_euler():
    assert branched_cover_euler(2, 1, 0) == 2
    assert branched_cover_euler(1, 5, -7) == 5
    assert branched_cover_euler(3, 1, 1) == 1
    with pytest.raises(DomainError):
        branched_cover_euler(0, 1, 1)


def test_branched_cover_euler_linear():
    rng = random.Random(0)
    for _ in range(200):
        q = rng.randint(1, 6)
        a, b, c, d = (rng.randint(-9, 9) for _ in range(4))
        assert branched_cover_euler(q, a + c, b + d) == branched_cover_euler(q, a, b) + branched_cover_euler(q, c, d)
    assert branched_cover_euler(2, 1, 0) == 2


def test_cyclic_suspension():
    assert cyclic_suspension(ANNULUS, 2).cspan_euler == 2
    d = cyclic_suspension(trefoil(), 2)
    assert isinstance(d.manifold, BranchedCyclicCover) and d.manifold.q == 2
    assert d.cspan_euler == 3
    assert cyclic_suspension(trefoil(), 2, ["fibered"]).provenance == ("fibered",)
    with pytest.raises(DomainError):
        cyclic_suspension(trefoil(), 2, ["bogus"])


def test_cyclic_suspension_degree_one_is_the_ball():
    # degree 1: no branching, the C-span is the 4-ball itself
    d = cyclic_suspension(trefoil(), 1)
    assert isinstance(d.manifold, Sphere3) and d.cspan_euler == 1


@pytest.mark.xfail(strict=True, reason="the degree-1 suspension is unbranched, so its C-span is the 4-ball "
                                       "(Euler characteristic 1) rather than n - k; documented deviation")
def test_cyclic_suspension_degree_one_equals_surface_euler():
    b = trefoil()
    assert cyclic_suspension(b, 1).cspan_euler == braided_surface(b).total_euler


def test_dummy_suspension():
    d = dummy_suspension(SLICE)
    assert braided_surface(SLICE).connected and braided_surface(SLICE).total_euler == 1
    assert isinstance(d.manifold, Sphere3)
    t = dummy_suspension(trefoil())
    assert t.manifold == ConnSumS1xS2((2,))
    e = dummy_suspension(BandRepresentation(2))
    assert e.manifold == ConnSumS1xS2((0, 0)) and e.cspan_euler == 2


def test_dummy_suspension_counts():
    rng = random.Random(6)
    for _ in range(200):
        b = random_brep(rng, rng.randint(1, 5), rng.randint(0, 5))
        s = braided_surface(b)
        d = dummy_suspension(b)
        counts = (0,) if isinstance(d.manifold, Sphere3) else d.manifold.counts
        assert len(counts) == len(s.components)
        assert all(c >= 0 for c in counts)
        assert d.cspan_euler == s.total_euler


def test_double_of_exterior():
    a = double_of_exterior("annulus", tb=1)
    assert a.cspan_euler == 2 and isinstance(a.manifold, DoubleKnotExterior)
    c = double_of_exterior("cable", rep=trefoil())
    assert c.cspan_euler == 4 and c.annotations["single_copy_value"] == 3
    with pytest.raises(DomainError):
        double_of_exterior("annulus", tb=-1)
    with pytest.raises(DomainError):
        double_of_exterior("cable", rep=ANNULUS)
    with pytest.raises(DomainError):
        double_of_exterior("sideways", tb=1)


def test_double_branched_cover_examples():
    assert double_branched_cover(Rational((-2, -2))) == LensSpaceManifold(3, 1)
    m = double_branched_cover(Pretzel((-2, -2, -2)))
    assert isinstance(m, SeifertFibered) and m.notation == "M(O,o;0;-3;(2,1),(2,1),(2,1))"
    assert double_branched_cover(Tree("(-2 (-2) (-2))")) == TreeManifold("(-2 (-2) (-2))")
    with pytest.raises(DomainError):
        double_branched_cover(object())


def test_pretzel_cover_invariances():
    rng = random.Random(5)
    for _ in range(200):
        t = [rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]) for _ in range(rng.randint(3, 6))]
        s = t[:]
        rng.shuffle(s)
        base = double_branched_cover(Pretzel(tuple(t)))
        assert double_branched_cover(Pretzel(tuple(s))) == base
        assert double_branched_cover(Pretzel(tuple(t + [1, -1]))) == base


def test_lens_order_matches_determinant():
    for n in range(1, 5):
        for r in itertools.product([x for x in range(-4, 5) if x], repeat=n):
            try:
                m = double_branched_cover(Rational(r))
            except DomainError:
                continue
            assert homology_order(m) == link_determinant(four_plat_diagram(r)), r


def test_chain_gives_lk1():
    for k in range(2, 9):
        m = double_branched_cover(Rational((-2,) * (k - 1)))
        assert lens_equivalent(LensSpace(m.P, m.Q), LensSpace(k, 1))


def test_report_certificates():
    r = double_branched_cover_report(Rational((-2, -2)))
    assert r["clink_realizable"] is True
    r = double_branched_cover_report(Pretzel((3, -3, -2)))
    assert r["clink_realizable"] is None


def test_infinity():
    assert link_at_infinity_product(1) == Torus3() and singularity_excluded(Torus3())
    assert link_at_infinity_product(0) == ProductS1Fg(0)
    m = link_at_infinity_product(2)
    assert m == ProductS1Fg(2) and not singularity_excluded(m)
    with pytest.raises(DomainError):
        link_at_infinity_product(-1)


def test_manifold_json_roundtrip():
    samples = [LensSpaceManifold(5, 2), double_branched_cover(Pretzel((3, -3, -2))), ConnSumS1xS2((0, 2)),
               cyclic_suspension(trefoil(), 3).manifold, DoubleKnotExterior("K"), ProductS1Fg(3), Torus3(),
               Sphere3(), double_branched_cover(Tree("(0 (-2) (-2) (-2))"))]
    for m in samples:
        assert manifold_from_json(m.to_json()) == m
    with pytest.raises(ParseError):
        manifold_from_json({"kind": "Klein"})
