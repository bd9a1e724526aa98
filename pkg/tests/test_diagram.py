import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from njac.diagram import (
    ElementaryDiagram,
    NewtonDiagram,
    diagram_of,
    minkowski_sum,
    reconstruct_from_support,
)
from njac.errors import InconsistentOracle, ZeroPolynomial
from njac.parsing import parse_polynomial as P
from njac.rationals import INF, Q


EX1 = NewtonDiagram([(0, 5), (1, 3), (4, 1)])


class TestDiagramOf:
    def test_paper_example(self):
        d = diagram_of(P("y^5+2*x*y^3-x^3*y^2+3*x^4*y"))
        assert d.vertices == ((0, 5), (1, 3), (4, 1))

    def test_unit(self):
        assert diagram_of(P("1")).vertices == ((0, 0),)

    def test_two_support_points(self):
        assert diagram_of(P("x+y^3")).vertices == ((0, 3), (1, 0))

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomial):
            diagram_of(P("0"))

    def test_collinear_point_dropped(self):
        # (1,2) lies on the segment (0,4)-(2,0)
        d = diagram_of(P("y^4 + x*y^2 + x^2"))
        assert d.vertices == ((0, 4), (2, 0))


class TestMinkowski:
    def test_unit_element(self):
        assert EX1.minkowski_sum(NewtonDiagram.unit()) == EX1

    def test_example_decomposition_sums_back(self):
        total = minkowski_sum(
            ElementaryDiagram(1, 2), ElementaryDiagram(3, 2), ElementaryDiagram(INF, 1)
        )
        assert total == EX1

    def test_point_translation(self):
        d = NewtonDiagram([(0, 2)]).minkowski_sum(NewtonDiagram([(3, 0)]))
        assert d.vertices == ((3, 2),)

    def test_commutative(self):
        a, b = EX1, NewtonDiagram([(0, 1), (2, 0)])
        assert a.minkowski_sum(b) == b.minkowski_sum(a)


class TestDecomposition:
    def test_paper_example(self):
        assert EX1.elementary_decomposition() == (
            ElementaryDiagram(1, 2),
            ElementaryDiagram(3, 2),
            ElementaryDiagram(INF, 1),
        )

    def test_unit_diagram(self):
        assert NewtonDiagram.unit().elementary_decomposition() == ()

    def test_pure_power_of_x(self):
        assert NewtonDiagram([(2, 0)]).elementary_decomposition() == (ElementaryDiagram(2, INF),)

    def test_inclinations_paper(self):
        assert EX1.inclinations() == {Q(1, 2), Q(3, 2), INF}

    def test_inclinations_single_edge(self):
        assert NewtonDiagram([(0, 3), (1, 0)]).inclinations() == {Q(1, 3)}

    def test_elementary_invariants(self):
        with pytest.raises(ValueError):
            ElementaryDiagram(INF, INF)
        with pytest.raises(ValueError):
            ElementaryDiagram(0, 0)


class TestSupport:
    def test_paper_example(self):
        assert EX1.support((1, 1)) == 4

    def test_unit(self):
        assert NewtonDiagram.unit().support((7, 3)) == 0

    def test_single_edge(self):
        assert NewtonDiagram([(0, 3), (1, 0)]).support((1, 1)) == 1


class TestTranspose:
    def test_swap(self):
        assert NewtonDiagram([(0, 3), (1, 0)]).transpose().vertices == ((0, 1), (3, 0))

    def test_unit(self):
        assert NewtonDiagram.unit().transpose() == NewtonDiagram.unit()

    def test_involution(self):
        assert EX1.transpose().transpose() == EX1


def corpus_diagrams():
    return [
        NewtonDiagram.unit(),
        EX1,
        NewtonDiagram([(0, 3), (1, 0)]),
        NewtonDiagram([(0, 4), (1, 2), (4, 0)]),
        NewtonDiagram([(2, 0)]),
        NewtonDiagram([(0, 7)]),
        NewtonDiagram([(1, 5), (2, 2), (5, 1)]),
    ]


class TestReconstruction:
    @pytest.mark.parametrize("d", corpus_diagrams())
    def test_roundtrip_refine(self, d):
        got = reconstruct_from_support(d.support, d.width + 1, d.height + 1)
        assert got == d

    @pytest.mark.parametrize("d", corpus_diagrams())
    def test_roundtrip_exhaustive(self, d):
        got = reconstruct_from_support(d.support, d.width, d.height, method="exhaustive")
        assert got == d

    def test_constant_zero_oracle(self):
        got = reconstruct_from_support(lambda v: 0, 5, 5)
        assert got == NewtonDiagram.unit()

    def test_paper_style_example(self):
        d = NewtonDiagram([(0, 4), (1, 2), (4, 0)])
        assert reconstruct_from_support(d.support, 4, 4) == d

    def test_known_corners_skip_large_queries(self):
        d = NewtonDiagram([(0, 3), (1, 0)])
        seen = []

        def oracle(v):
            seen.append((v.v1, v.v2))
            return d.support((v.v1, v.v2))

        got = reconstruct_from_support(oracle, 1, 3, known_left=(0, 3), known_right=(1, 0))
        assert got == d
        assert all(m <= 4 and n <= 4 for m, n in seen)

    def test_inconsistent_oracle_detected(self):
        with pytest.raises(InconsistentOracle):
            reconstruct_from_support(lambda v: v.v1 * v.v2, 3, 3)


class TestInvariantsProperties:
    small = st.lists(
        st.tuples(st.integers(min_value=0, max_value=6), st.integers(min_value=0, max_value=6)),
        min_size=1,
        max_size=5,
    )

    @given(small, small)
    @settings(max_examples=60, deadline=None)
    def test_support_additive_under_minkowski(self, p1, p2):
        d1 = NewtonDiagram.from_points(p1)
        d2 = NewtonDiagram.from_points(p2)
        s = d1.minkowski_sum(d2)
        for v in [(1, 1), (2, 1), (1, 3), (5, 2)]:
            assert s.support(v) == d1.support(v) + d2.support(v)

    @given(small)
    @settings(max_examples=60, deadline=None)
    def test_decomposition_sums_back(self, pts):
        d = NewtonDiagram.from_points(pts)
        total = minkowski_sum(*d.elementary_decomposition())
        assert total == d

    @given(small)
    @settings(max_examples=40, deadline=None)
    def test_transpose_involution(self, pts):
        d = NewtonDiagram.from_points(pts)
        assert d.transpose().transpose() == d

    @given(small)
    @settings(max_examples=30, deadline=None)
    def test_reconstruction_roundtrip(self, pts):
        d = NewtonDiagram.from_points(pts)
        assert reconstruct_from_support(d.support, d.width, d.height) == d


def test_diagram_of_product_is_minkowski_sum():
    fs = [P("y^2-x^3"), P("x+y^3"), P("y^5+2*x*y^3-x^3*y^2+3*x^4*y"), P("x*y+x^2")]
    for f in fs:
        for g in fs:
            assert diagram_of(f * g) == diagram_of(f).minkowski_sum(diagram_of(g))
