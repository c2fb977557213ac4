import pytest

from qplink.braid_core import (BandRepresentation, band, braided_surface, closure_linking_matrix, connected_sum,
                               nabla, rho0, trefoil)
from qplink.catalog import (HopfSpec, annulus_strongly_qp, hopf_canonical, hopf_classify, hopf_is_fibered,
                            hopf_is_qp, hopf_named_qp_fibered, lambda_hminus, lambda_hminus_via_mirror,
                            mu_of_braided_fiber, parse_hopf, realize_enhancement, strip_boundary_classify)
from qplink.errors import DomainError, ParseError


def all_specs(pmax=6):
    return [HopfSpec(s, p, q) for s in "+-" for p in range(1, pmax + 1) for q in range(0, p + 1)]


def test_spec_validation():
    for bad in [("+", 0, 0), ("+", 2, 3), ("*", 1, 0), ("-", 2, -1)]:
        with pytest.raises(DomainError):
            HopfSpec(*bad)
    assert parse_hopf("-,3,2") == HopfSpec("-", 3, 2)
    assert parse_hopf("−,3,2") == HopfSpec("-", 3, 2)
    with pytest.raises(ParseError):
        parse_hopf("3,2")


def test_canonical():
    assert hopf_canonical(HopfSpec("-", 1, 0)) == HopfSpec("+", 1, 0)
    assert hopf_canonical(HopfSpec("-", 2, 0)) == hopf_canonical(HopfSpec("+", 1, 1))
    assert hopf_canonical(HopfSpec("+", 2, 0)) == hopf_canonical(HopfSpec("-", 1, 1)) == HopfSpec("+", 2, 0)
    assert hopf_canonical(HopfSpec("-", 3, 2)) == HopfSpec("-", 3, 2)
    for h in all_specs():
        assert hopf_canonical(hopf_canonical(h)) == hopf_canonical(h)


def test_classify_examples():
    c = hopf_classify(HopfSpec("+", 4, 0))
    assert c.qp and c.fibered
    c = hopf_classify(HopfSpec("-", 3, 2))
    assert c.qp and c.fibered and c.strongly_qp is False
    c = hopf_classify(HopfSpec("-", 2, 2))
    assert c.qp and not c.fibered


def test_classify_respects_canonical():
    for h in all_specs():
        a, b = hopf_classify(h), hopf_classify(hopf_canonical(h))
        assert (a.qp, a.fibered, a.strongly_qp) == (b.qp, b.fibered, b.strongly_qp)


def test_named_list_matches_qp_and_fibered():
    for h in all_specs(8):
        c = hopf_canonical(h)
        assert (hopf_is_qp(c) and hopf_is_fibered(c)) == (hopf_named_qp_fibered(h) is not None), h


def test_lambda_values():
    assert lambda_hminus(2, 1) == 1
    assert lambda_hminus(3, 2) == 0
    assert lambda_hminus(5, 4) == -8
    for bad in [(2, 2), (1, 3), (2, -1)]:
        with pytest.raises(DomainError):
            lambda_hminus(*bad)


@pytest.mark.xfail(strict=True, reason="lambda(H-(p,0)) from the closed formula (0) disagrees with "
                                       "the mirror relation lambda + rho = mu ((p-1)^2); kept as documented tension")
def test_lambda_q0_consistency():
    assert lambda_hminus(2, 0) == lambda_hminus_via_mirror(2)


def test_mu():
    assert mu_of_braided_fiber(BandRepresentation(1)) == 0
    assert mu_of_braided_fiber(trefoil()) == 2
    for p in range(2, 6):
        bands = tuple(band(p, [], i) for i in range(1, p)) * p
        rep = BandRepresentation(p, bands)
        assert braided_surface(rep).total_euler == p - p * (p - 1)
        assert mu_of_braided_fiber(rep) == (p - 1) ** 2
    with pytest.raises(DomainError, match="disconnected"):
        mu_of_braided_fiber(BandRepresentation(2))


def test_mu_additive_under_connected_sum():
    for a, b in [(trefoil(), trefoil()), (trefoil(), rho0()), (rho0(), BandRepresentation(1))]:
        assert mu_of_braided_fiber(connected_sum(a, b)) == mu_of_braided_fiber(a) + mu_of_braided_fiber(b)


def test_realize_enhancement_examples():
    r = realize_enhancement(1)
    assert (r.q, r.m) == (1, 0)
    assert (realize_enhancement(0).q, realize_enhancement(0).m) == (0, 0)
    assert (realize_enhancement(-3).q, realize_enhancement(-3).m) == (3, 0)


def test_realize_enhancement_wide_range():
    for target in list(range(-2000, 2001)) + [-10 ** 6, 10 ** 6, -10 ** 6 + 7]:
        r = realize_enhancement(target)
        assert r.q >= 0 and r.m >= 0
        assert 2 * r.q - r.q * r.q + r.m == target


def test_annulus():
    v = annulus_strongly_qp(None, 0, True)
    assert v.boundary_sqp and not v.annulus_qp
    v = annulus_strongly_qp(None, -1, True)
    assert v.boundary_sqp and v.annulus_qp
    v = annulus_strongly_qp(1, 1, False)
    assert v.boundary_sqp and v.annulus_qp
    assert not annulus_strongly_qp(1, 2, False).annulus_qp
    with pytest.raises(DomainError):
        annulus_strongly_qp(None, 0, False)


def test_strips():
    assert strip_boundary_classify(3, True).strongly_qp
    v = strip_boundary_classify(-4, False)
    assert v.strongly_qp and v.s == -2
    assert not strip_boundary_classify(2, False).strongly_qp
    with pytest.raises(DomainError):
        strip_boundary_classify(3, False)


def test_nabla_closure_is_hopf_family():
    # the closure of the full twist on p strands is H(p,0): p components, pairwise lk 1
    m = closure_linking_matrix(nabla(4))
    assert all(m[i][j] == 1 for i in range(4) for j in range(4) if i != j)
