"""
Tests for the product cell complex, subdivision certificates, prism fills
and the equivariant subdivision search.
"""

import pytest
from sympy import Rational

from icotri.catalog import index_permutation, ordered_labels
from icotri.complex_core import SimplicialComplex, Vertex, simplex
from icotri.product_subdivision import (
    DiagonalAssignment,
    ProductCell,
    ProductCellComplex,
    cw_quotient_census,
    embed,
    graph_purity_violations,
    prism_boundary_complex,
    prism_fills,
    prism_layers,
    search_equivariant_pure_subdivisions,
    simplex_volume,
    square_diagonals,
    staircase_triangulations,
    verify_quotient_subdivision,
    verify_subdivision,
)
from icotri.utils import SubdivisionError


def _atoms(prefix):
    return [Vertex.atom(f"{prefix}{i}") for i in range(1, 4)]


class TestProductCells:
    """Test cells, charts and exact volumes."""

    def test_embed(self):
        assert embed(Vertex.pair(2, 4)) == (1, 0, 0, 0, 0, 1)
        assert embed(Vertex.pair(1, 1)) == (0,) * 6

    def test_embed_needs_pair(self):
        with pytest.raises(SubdivisionError):
            embed(Vertex.atom("a"))

    def test_factors_must_be_proper(self):
        with pytest.raises(SubdivisionError):
            ProductCell.of([1, 2, 3, 4], [1])
        with pytest.raises(SubdivisionError):
            ProductCell.of([], [1])

    def test_square(self):
        cell = ProductCell.of([1, 2], [3, 4])
        assert cell.dim == 2
        assert len(cell.vertices) == 4
        assert len(cell.faces()) == 9
        assert len(cell.facets()) == 4
        assert str(cell) == "12x34"
        assert cell.transposed() == ProductCell.of([3, 4], [1, 2])

    def test_volumes(self):
        assert ProductCell.of([1, 2, 3], [1, 2, 3]).volume() == Rational(1, 4)
        assert ProductCell.of([1, 2, 3], [1, 2]).volume() == Rational(1, 2)

    def test_chart(self):
        cell = ProductCell.of([1, 2, 3], [2, 4])
        assert cell.chart(Vertex.pair(1, 2)) == (0, 0, 0)
        assert cell.chart(Vertex.pair(3, 4)) == (0, 1, 1)
        with pytest.raises(SubdivisionError, match="outside"):
            cell.chart(Vertex.pair(4, 4))

    def test_simplex_volume(self):
        cell = ProductCell.of([1, 2], [1, 2])
        assert simplex_volume(cell, simplex("x11 x12 x22")) == Rational(1, 2)
        with pytest.raises(SubdivisionError):
            simplex_volume(cell, simplex("x11 x12"))

    def test_counts(self):
        cells = ProductCellComplex()
        assert cells.counts() == (16, 48, 68, 48, 16)
        assert len(cells.cells()) == 196

    def test_cell_of(self):
        assert ProductCellComplex.cell_of(simplex("x12 x34")) == ProductCell.of([1, 3], [2, 4])
        assert ProductCellComplex.cell_of(simplex("x11 x22 x33 x44")) is None


class TestCertificate:
    """Test the subdivision certificate."""

    def test_s2xs2_16_is_certified(self, s2xs2_16, metrics):
        cert = verify_subdivision(s2xs2_16)
        assert cert.certified, cert.failures
        assert cert.cells_checked == 180
        assert metrics.get_counters()["subdivision.cells_checked"] == 180

    def test_wrong_vertex_set(self, cp2):
        cert = verify_subdivision(cp2)
        assert cert.failures == ["vertex set mismatch"]
        with pytest.raises(SubdivisionError):
            cert.require_certified()

    def test_missing_facet(self, s2xs2_16):
        dropped = min(s2xs2_16.facets, key=lambda f: sorted(f))
        broken = SimplicialComplex(set(s2xs2_16.facets) - {dropped})
        cert = verify_subdivision(broken)
        assert not cert.certified
        assert any("not tiled" in f for f in cert.failures)


class TestPrisms:
    """Test prism triangulations and fills."""

    def test_six_staircases(self):
        a, b = _atoms("a"), _atoms("b")
        triangulations = staircase_triangulations(a, b)
        assert len(triangulations) == 6
        assert len(set(triangulations)) == 6
        assert all(len(t.facets) == 3 for t in triangulations)

    def test_canonical_fill(self):
        a, b = _atoms("a"), _atoms("b")
        diagonals = [simplex("a1 b2"), simplex("a2 b3"), simplex("a1 b3")]
        fills = prism_fills(a, b, diagonals)
        assert fills == [SimplicialComplex([simplex("a1 b1 b2 b3"), simplex("a1 a2 b2 b3"),
                                            simplex("a1 a2 a3 b3")])]
        assert fills[0].boundary() == prism_boundary_complex(a, b, diagonals)

    def test_cyclic_pattern_has_no_fill(self):
        a, b = _atoms("a"), _atoms("b")
        assert prism_fills(a, b, [simplex("a1 b2"), simplex("a2 b3"), simplex("a3 b1")]) == []

    def test_one_diagonal_per_square(self):
        a, b = _atoms("a"), _atoms("b")
        with pytest.raises(SubdivisionError):
            prism_fills(a, b, [simplex("a1 b2"), simplex("a2 b1"), simplex("a1 b3")])
        with pytest.raises(SubdivisionError):
            prism_fills(a, b, [simplex("a1 b2")])

    def test_layers(self):
        bottom, top = prism_layers(ProductCell.of([1, 2, 3], [1, 2]))
        assert bottom == [Vertex.pair(1, 1), Vertex.pair(2, 1), Vertex.pair(3, 1)]
        assert top == [Vertex.pair(1, 2), Vertex.pair(2, 2), Vertex.pair(3, 2)]
        with pytest.raises(SubdivisionError):
            prism_layers(ProductCell.of([1, 2], [1, 2]))


class TestGraphPurity:
    """Test the edge-graph purity filter."""

    def test_transposed_edge(self):
        assert graph_purity_violations([simplex("x12 x21")]) == [
            ("a", (Vertex.pair(1, 2), Vertex.pair(2, 1)))
        ]

    def test_common_neighbour(self):
        found = graph_purity_violations([simplex("x13 x12"), simplex("x13 x21")])
        assert ("b", (Vertex.pair(1, 3), Vertex.pair(1, 2))) in found

    def test_diagonal_vertices_are_fixed(self):
        assert graph_purity_violations([simplex("x11 x12"), simplex("x11 x21")]) == []

    def test_square_diagonals(self):
        first, second = square_diagonals(ProductCell.of([1, 2], [3, 4]))
        assert first == simplex("x13 x24")
        assert second == simplex("x14 x23")

    def test_equivariance(self):
        c = ProductCell.of([1, 2], [3, 4])
        good = DiagonalAssignment({c: simplex("x13 x24"), c.transposed(): simplex("x31 x42")})
        bad = DiagonalAssignment({c: simplex("x13 x24"), c.transposed(): simplex("x41 x32")})
        assert good.is_equivariant()
        assert not bad.is_equivariant()


class TestQuotient:
    """Test the quotient census and the cover of CP2_10."""

    def test_census(self):
        census = cw_quotient_census()
        assert census.counts == (10, 24, 31, 24, 10)
        assert (census.regular, census.singular) == (4, 6)
        assert census.euler_characteristic == 3
        assert len(census.absorbed) == 6

    def test_cp2_facets_lie_over_cells(self, s2xs2_16, cp2):
        report = verify_quotient_subdivision(s2xs2_16, cp2)
        assert report.covered
        assert report.by_cell_kind == {"regular": 12, "singular": 36}


@pytest.mark.slow
class TestSearch:
    """The search finds exactly two subdivisions."""

    def test_results(self, s2xs2_16):
        report = search_equivariant_pure_subdivisions()
        sigma = index_permutation("(1 2)", ordered_labels())
        assert set(report.complexes) == {s2xs2_16, sigma.apply_complex(s2xs2_16)}
        assert report.free_orbits == 3
        assert report.branches == 8
        assert all(a.is_equivariant() for a in report.surviving)
