import itertools

import pytest

from qplink.diagram import (MAX_COMPONENTS, OrientationAssignment, PDDiagram, all_orientations, crossing_signs,
                            find_positive_orientation, four_plat_diagram, goeritz_matrix, link_determinant,
                            pretzel_diagram, seifert_algorithm, unknot_diagram)
from qplink.errors import DomainError, ParseError
from qplink.pretzel import has_positive_orientation
from qplink.rational import continued_fraction, machine_accepts

TREFOIL = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]
FIGURE_EIGHT = [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]
NONZERO4 = [x for x in range(-4, 5) if x]


def test_trefoil_seifert():
    d = PDDiagram.from_json(TREFOIL)
    s = seifert_algorithm(d, OrientationAssignment((0,)))
    assert (s.seifert_circles, s.crossings, s.euler, s.positive) == (2, 3, -1, True)


def test_unknot_seifert():
    s = seifert_algorithm(unknot_diagram(), OrientationAssignment(()))
    assert (s.seifert_circles, s.crossings, s.euler) == (1, 0, 1)


def test_figure_eight_never_positive():
    d = PDDiagram.from_json(FIGURE_EIGHT)
    assert all(not seifert_algorithm(d, o).positive for o in all_orientations(d))
    assert find_positive_orientation(d) is None


def test_pd_validation():
    with pytest.raises((DomainError, ParseError)):
        PDDiagram.from_json([[1, 2, 3, 4]])
    with pytest.raises((DomainError, ParseError)):
        PDDiagram.from_json("nonsense")


def test_pd_roundtrip():
    d = PDDiagram.from_json(TREFOIL)
    assert PDDiagram.from_json(d.to_json()) == d


def test_generators_shape():
    d = pretzel_diagram((-1, -1, -1))
    assert d.crossing_count == 3 and d.component_count == 1
    assert four_plat_diagram((-2,)).crossing_count == 2
    assert four_plat_diagram((-2,)).component_count == 2
    r = four_plat_diagram((-2, -2))
    assert r.crossing_count == 4 and r.component_count == 1
    assert pretzel_diagram((2, -3, 4, 1)).crossing_count == 10


def test_generator_errors():
    with pytest.raises(DomainError):
        pretzel_diagram((1, 2))
    with pytest.raises(DomainError):
        four_plat_diagram((2, 0))


def test_positive_orientation_examples():
    assert find_positive_orientation(pretzel_diagram((-1, -1, -1))) is not None
    assert find_positive_orientation(pretzel_diagram((2, 2, 4))) is None
    assert find_positive_orientation(pretzel_diagram((2, 4, -6))) is not None


def test_knot_has_one_class():
    d = pretzel_diagram((-3, 1, 1))
    assert d.component_count == 1
    assert len(list(all_orientations(d))) == 1


def test_seifert_euler_projective_invariance():
    for t in [(2, 2, -2), (-1, -1, -1, 2), (3, 2, 1)]:
        d = pretzel_diagram(t)
        for o in all_orientations(d):
            flipped = OrientationAssignment(tuple(1 - b for b in o.bits))
            assert seifert_algorithm(d, o) == seifert_algorithm(d, flipped)
            assert crossing_signs(d, o) == crossing_signs(d, flipped)


def test_orientation_cap():
    d = PDDiagram((), MAX_COMPONENTS + 1)
    assert len(list(all_orientations(d))) == 1  # free loops need no bits
    loops = [[2 * k + 1, 2 * k + 1, 2 * k + 2, 2 * k + 2] for k in range(MAX_COMPONENTS + 1)]
    with pytest.raises(DomainError):
        list(all_orientations(PDDiagram.from_json(loops)))


def test_determinants():
    assert link_determinant(unknot_diagram()) == 1
    assert link_determinant(PDDiagram.from_json(TREFOIL)) == 3
    assert link_determinant(PDDiagram.from_json(FIGURE_EIGHT)) == 5
    assert link_determinant(four_plat_diagram((2, 2))) == abs(continued_fraction((2, 2))[0])


def test_goeritz_is_symmetric():
    g = goeritz_matrix(pretzel_diagram((3, -2, 5)))
    assert all(g[i][j] == g[j][i] for i in range(len(g)) for j in range(len(g)))


def test_determinant_needs_connected_diagram():
    split = PDDiagram.from_json(TREFOIL + [[7, 11, 8, 10], [9, 7, 10, 12], [11, 9, 12, 8]])
    with pytest.raises(DomainError):
        link_determinant(split)
    with pytest.raises(DomainError):
        link_determinant(PDDiagram((), 2))


def test_machine_matches_diagram_search_n4():
    for n in range(1, 5):
        for r in itertools.product(NONZERO4, repeat=n):
            assert machine_accepts(r) == (find_positive_orientation(four_plat_diagram(r)) is not None), r


def test_pretzel_criterion_matches_search_nonzero():
    for p in (3, 4):
        for t in itertools.product(NONZERO4, repeat=p):
            assert has_positive_orientation(t) == (find_positive_orientation(pretzel_diagram(t)) is not None), t


def test_determinant_matches_continued_fraction():
    for n in range(1, 5):
        for r in itertools.product(NONZERO4, repeat=n):
            try:
                P, _ = continued_fraction(r)
            except DomainError:
                continue
            assert link_determinant(four_plat_diagram(r)) == abs(P), r
