"""
Tests for the catalog of named complexes and the icosahedron helpers.
"""

import pytest

from icotri.catalog import (
    CATALOG_NAMES,
    EXPECTED_F_VECTORS,
    a4_basic_facets,
    a4_orbit_minimum,
    antipodal_map,
    antipodal_quadruple_pairs,
    build,
    build_s2xs2_12_from_pair,
    check_antimorphism,
    cp2_edge_link_report,
    distance2_complex,
    figure2_pair,
    index_permutation,
    join_f_vector,
    off_diagonal_labels,
    ordered_labels,
    phi_psi,
    quadruple_report,
    require_icosahedron,
    s2xs2_12_a4_basic_facets,
    s2xs2_12_generators,
    structural_report_s2xs2_12,
    verify_join_embeddings,
)
from icotri.complex_core import Vertex, simplex
from icotri.perm_group import Permutation
from icotri.utils import CatalogError, IcosahedronError


class TestBuild:
    """Test catalog construction and validation."""

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_f_vectors(self, name):
        entry = build(name)
        assert entry.name == name
        assert entry.complex.f_vector() == EXPECTED_F_VECTORS[name]

    def test_unknown_name(self):
        with pytest.raises(CatalogError, match="unknown catalog entry"):
            build("CP2_9")

    def test_recipe_only_for_cp2(self):
        with pytest.raises(CatalogError, match="unknown recipe"):
            build("S2_4", "orbits")

    def test_cp2_recipes_agree(self):
        assert build("CP2_10", "quotient").complex == build("CP2_10", "orbits").complex

    def test_orbit_sizes(self):
        assert build("S2xS2_16").orbit_sizes == (24, 24, 24, 12, 12)
        assert build("CP2_10", "orbits").orbit_sizes == (12, 12, 12, 6, 6)
        assert build("S2xS2_12").orbit_sizes == (12, 60)

    def test_basic_facets_one_per_orbit(self):
        assert len(build("S2xS2_12").basic_facets()) == 2
        assert len(build("S2_4").basic_facets()) == 4

    def test_index_permutation(self):
        p = index_permutation("(1 2 3)", ordered_labels())
        assert p(Vertex.pair(1, 3)) == Vertex.pair(2, 1)
        assert p(Vertex.pair(4, 4)) == Vertex.pair(4, 4)

    def test_s2_4_neighborliness(self):
        assert build("S2_4").complex.neighborliness() == 3


class TestIcosahedra:
    """Test the icosahedron, its antipode and the antimorphic pair."""

    def test_antipode_is_index_transposition(self, icosahedron):
        assert antipodal_map(icosahedron) == Permutation.transposition_of_indices(off_diagonal_labels())

    def test_row_and_column_triangles(self, icosahedron):
        for i in range(1, 5):
            row = frozenset(Vertex.pair(i, j) for j in range(1, 5) if j != i)
            column = frozenset(Vertex.pair(j, i) for j in range(1, 5) if j != i)
            assert row in icosahedron.facets
            assert column in icosahedron.facets
        assert simplex("x41 x42 x43") in icosahedron.facets

    def test_octahedron_is_rejected(self, octahedron):
        with pytest.raises(IcosahedronError):
            require_icosahedron(octahedron)

    def test_distance2_of_i1_is_i2(self):
        pair = figure2_pair()
        assert distance2_complex(pair.I1) == pair.I2
        assert pair.is_antimorphic()
        assert pair.antipodes_agree()

    def test_identity_is_not_an_antimorphism_of_one_icosahedron(self):
        pair = figure2_pair()
        assert not check_antimorphism(pair.identity(), pair.I1, pair.I1)

    def test_common_antipode_is_g6(self):
        pair = figure2_pair()
        _, g = s2xs2_12_generators()
        antipode = antipodal_map(pair.I1)
        assert all((g ** 6)(v) == antipode(v) for v in pair.I1.vertices)

    def test_phi(self):
        bij = phi_psi(figure2_pair())
        assert len(bij.phi) == len(bij.psi) == 20
        assert bij.phi[simplex("x12 x13 x14")] == simplex("x21 x31 x41")

    def test_pair_builds_s2xs2_12(self, s2xs2_12):
        assert build_s2xs2_12_from_pair(figure2_pair()) == s2xs2_12

    def test_quadruples(self, icosahedron):
        pairs = antipodal_quadruple_pairs(icosahedron)
        assert len(pairs) == 5
        for p in pairs:
            assert len(p.first) == len(p.second) == 4

    def test_quadruple_action(self, icosahedron):
        report = quadruple_report(icosahedron)
        assert report.transitive
        assert report.stabilizer_order == 24
        assert report.automorphisms == 120


class TestJoins:
    """Test join f-vectors and the embeddings into joins."""

    def test_join_f_vector(self):
        assert join_f_vector((4, 6, 4), (12, 30, 20)) == (16, 84, 216, 308, 240, 80)

    def test_embeddings(self):
        report = verify_join_embeddings()
        assert report.passed, report.failures


class TestStructure:
    """Test the structural facts of the small 4-manifolds."""

    def test_cp2_edge_link(self):
        report = cp2_edge_link_report()
        assert report.link_f_vector == (8, 18, 12)
        assert report.passed

    @pytest.mark.slow
    def test_s2xs2_12(self):
        report = structural_report_s2xs2_12()
        failed = [name for name, ok in report.checks.items() if not ok]
        assert not failed
        assert report.values["triangle degrees"] == {3: 40, 5: 120}

    def test_s2xs2_12_a4_basic_facets(self, s2xs2_12):
        basic = s2xs2_12_a4_basic_facets()
        assert all(f in s2xs2_12.facets for f in basic)
        assert set(a4_basic_facets(s2xs2_12)) == {a4_orbit_minimum(f) for f in basic}

    def test_a4_orbit_minimum_is_canonical(self):
        f = simplex("x12 x13 x23 x31 x32")
        assert a4_orbit_minimum(a4_orbit_minimum(f)) == a4_orbit_minimum(f)
