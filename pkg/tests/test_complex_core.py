"""
Tests for vertex labels, simplicial complexes and their constructors.
"""

import pytest

from icotri.complex_core import (
    Vertex,
    SimplicialComplex,
    closure,
    cycle,
    is_subcomplex,
    join,
    simplex,
    standard_ball,
    standard_sphere,
)
from icotri.utils import ComplexConstructionError, ComplexFormatError, InvalidFaceError, NotPureError


class TestVertexLabels:
    """Test label parsing and ordering."""

    @pytest.mark.parametrize("text", ["x12", "x_12", "x_{12}"])
    def test_ordered_forms(self, text):
        assert Vertex.parse(text) == Vertex.pair(1, 2)

    def test_unordered_form(self):
        assert Vertex.parse("x{1<=2}") == Vertex.pair(1, 2)
        assert Vertex.parse("x21", label_kind="unordered") == Vertex.pair(1, 2)

    def test_render(self):
        assert str(Vertex.pair(3, 1)) == "x31"

    def test_atom_fallback(self):
        v = Vertex.parse("a1")
        assert not v.is_pair
        assert str(v) == "a1"

    def test_transposed(self):
        assert Vertex.pair(1, 2).transposed() == Vertex.pair(2, 1)
        assert Vertex.pair(3, 3).transposed() == Vertex.pair(3, 3)
        assert Vertex.atom("c").transposed() == Vertex.atom("c")

    def test_pairs_sort_before_atoms(self):
        assert sorted([Vertex.atom("a"), Vertex.pair(4, 4), Vertex.pair(1, 2)]) == [
            Vertex.pair(1, 2), Vertex.pair(4, 4), Vertex.atom("a")
        ]

    def test_pair_range(self):
        with pytest.raises(ValueError):
            Vertex.pair(0, 5)


class TestConstruction:
    """Test facet-set construction and basic structure."""

    def test_facet_containing_another_rejected(self):
        with pytest.raises(ComplexConstructionError, match="facet contains another facet"):
            SimplicialComplex([simplex("a b c"), simplex("a b")])

    def test_from_faces_keeps_maximal(self):
        k = SimplicialComplex.from_faces([simplex("a b c"), simplex("a b"), simplex("c d")])
        assert k.facets == {simplex("a b c"), simplex("c d")}
        assert not k.is_pure()

    def test_void_and_empty_face(self):
        void = SimplicialComplex.void()
        empty = SimplicialComplex([frozenset()])
        assert void.dim == -2
        assert empty.dim == -1
        assert void != empty
        assert empty.faces(-1) == {frozenset()}

    def test_equality_is_facet_equality(self):
        a = SimplicialComplex([simplex("a b"), simplex("b c")], name="one")
        b = SimplicialComplex([simplex("b c"), simplex("a b")], name="two")
        assert a == b
        assert hash(a) == hash(b)

    def test_standard_sphere(self):
        s = standard_sphere(["x11", "x22", "x33", "x44"])
        assert s.f_vector() == (4, 6, 4)
        assert s.neighborliness() == 3

    def test_standard_ball_boundary(self):
        assert standard_ball("a b c d".split()).boundary() == standard_sphere("a b c d".split())

    def test_too_few_vertices(self):
        with pytest.raises(ComplexConstructionError, match="too few vertices"):
            standard_sphere(["a"])

    def test_repeated_vertex(self):
        with pytest.raises(ComplexConstructionError, match="repeated vertex"):
            standard_ball(["a", "a"])

    def test_faces_by_closure_agrees(self, cp2):
        for d in range(cp2.dim + 1):
            assert cp2.faces_by_closure(d) == cp2.faces(d)


class TestLocalStructure:
    """Test links, stars and degrees."""

    def test_link_of_octahedron_vertex(self, octahedron):
        lk = octahedron.link(simplex("a1"))
        assert lk == cycle(["a2", "a3", "b2", "b3"])

    def test_star_is_facets_through_face(self, octahedron):
        assert len(octahedron.star(simplex("a1")).facets) == 4

    def test_link_of_non_face(self, octahedron):
        with pytest.raises(InvalidFaceError):
            octahedron.link(simplex("a1 b1"))

    def test_face_degree(self, s2xs2_12):
        assert s2xs2_12.face_degree(simplex("x12")) == 10

    def test_induced_subcomplex(self, octahedron):
        k = octahedron.induced_subcomplex(simplex("a1 b1 a2"))
        assert k.facets == {simplex("a1 a2"), simplex("b1 a2")}

    def test_boundary_requires_pure(self):
        k = SimplicialComplex.from_faces([simplex("a b c"), simplex("c d")])
        with pytest.raises(NotPureError):
            k.boundary()


class TestGlobalPredicates:
    """Test pseudomanifold and component checks."""

    def test_weak_pseudomanifold(self, icosahedron, square_pyramid_ball):
        assert icosahedron.is_weak_pseudomanifold()
        assert not square_pyramid_ball.is_weak_pseudomanifold()

    def test_strong_components(self):
        two = SimplicialComplex(list(standard_sphere("a b c".split()).facets) +
                                list(standard_sphere("d e f".split()).facets))
        assert len(two.strong_components()) == 2

    def test_neighborliness_of_cycle(self):
        assert cycle("a b c d e".split()).neighborliness() == 1


class TestJoin:
    """Test the simplicial join."""

    def test_join_of_zero_spheres_is_square(self):
        k = join(standard_sphere(["a", "b"]), standard_sphere(["c", "d"]))
        assert k == cycle(["a", "c", "b", "d"])

    def test_join_with_empty_face_is_identity(self, octahedron):
        assert join(octahedron, SimplicialComplex([frozenset()])) == octahedron

    def test_overlap_rejected(self):
        with pytest.raises(ComplexConstructionError, match="overlapping vertex sets"):
            join(closure(simplex("a b")), closure(simplex("b c")))

    def test_subcomplex(self, octahedron):
        assert is_subcomplex(closure(simplex("a1 a2 a3")), octahedron)
        assert not is_subcomplex(closure(simplex("a1 b1")), octahedron)


class TestJsonCodec:
    """Test JSON import and export."""

    def test_roundtrip(self, cp2):
        assert SimplicialComplex.from_json(cp2.to_json()) == cp2

    def test_roundtrip_atoms(self, octahedron):
        back = SimplicialComplex.from_json(octahedron.to_json())
        assert back == octahedron
        assert back.name == "octahedron"

    def test_unordered_labels(self):
        text = '{"label_kind": "unordered", "facets": [["x21", "x{3<=4}"]]}'
        k = SimplicialComplex.from_json(text)
        assert k.facets == {simplex("x12 x34")}

    def test_vertex_list_mismatch(self):
        with pytest.raises(ComplexFormatError, match="vertex list"):
            SimplicialComplex.from_json('{"vertices": ["x11"], "facets": [["x11", "x22"]]}')

    def test_non_closed_facet_list(self):
        with pytest.raises(ComplexConstructionError):
            SimplicialComplex.from_json('{"facets": [["x11", "x22"], ["x11"]]}')

    def test_malformed_json_line_info(self):
        with pytest.raises(ComplexFormatError) as exc:
            SimplicialComplex.from_json('{\n"facets": [[\n', path="broken.json")
        assert "line" in exc.value.details
