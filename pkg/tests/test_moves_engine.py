"""
Tests for bistellar moves, starrings, GBMs and move scripts.
"""

import json

import pytest

from icotri.catalog import a4_basic_facets, a4_orbit_minimum, s2xs2_12_a4_basic_facets
from icotri.complex_core import SimplicialComplex, closure, join, simplex, standard_sphere
from icotri.moves_engine import (
    BUILTIN_SCRIPTS,
    CP2_9_F_VECTOR,
    CP2_9_LABELS,
    K4_10_F_VECTOR,
    K4_10_LABELS,
    BistellarMove,
    MoveScript,
    apply_bistellar,
    apply_gbm,
    builtin_script,
    find_proper_moves,
    gbm_as_flips,
    relabel_by_names,
    replay_script,
    star_vertex,
)
from icotri.utils import ComplexConstructionError, ComplexFormatError, InvalidMoveError, ScriptError


@pytest.fixture
def tetrahedron_boundary():
    return standard_sphere("a b c d".split())


@pytest.fixture
def suspended_torus_link():
    """S(abc) * S(xyz) * S(uw): lk(u) is the join of two triangles' boundaries."""
    return join(standard_sphere("a b c".split()), standard_sphere("x y z".split()),
                standard_sphere("u w".split()))


class TestBistellarMove:
    """Test the A ↦ B move and its validation."""

    def test_parse(self):
        move = BistellarMove.parse("x22 x33 x44 -> x23 x24 x34")
        assert move.A == simplex("x22 x33 x44")
        assert str(move) == "x22 x33 x44 -> x23 x24 x34"

    def test_parse_needs_arrow(self):
        with pytest.raises(ComplexFormatError):
            BistellarMove.parse("x11 x12")

    def test_star_then_remove_vertex(self, tetrahedron_boundary):
        starred = star_vertex(tetrahedron_boundary, "a b c", "e")
        assert starred.f_vector() == (5, 9, 6)
        assert apply_bistellar(starred, "e", "a b c") == tetrahedron_boundary

    def test_edge_flip(self, octahedron):
        flipped = apply_bistellar(octahedron, "a1 a2", "a3 b3")
        assert not flipped.contains(simplex("a1 a2"))
        assert flipped.contains(simplex("a3 b3"))
        assert flipped.f_vector() == octahedron.f_vector()

    def test_inverse_undoes(self, octahedron):
        move = BistellarMove(simplex("a1 a2"), simplex("a3 b3"))
        back = move.inverse()
        assert apply_bistellar(apply_bistellar(octahedron, move.A, move.B), back.A, back.B) == octahedron

    @pytest.mark.parametrize("A, B, reason", [
        ("a b", "c", "dimension"),
        ("a b", "c d", "B present"),
    ])
    def test_rejections_on_tetrahedron(self, tetrahedron_boundary, A, B, reason):
        with pytest.raises(InvalidMoveError, match=reason):
            apply_bistellar(tetrahedron_boundary, A, B)

    def test_rejects_non_face(self, octahedron):
        with pytest.raises(InvalidMoveError, match="A not a face"):
            apply_bistellar(octahedron, "a1 b1", "a2 a3")

    def test_rejects_wrong_link(self, octahedron):
        with pytest.raises(InvalidMoveError, match="link"):
            apply_bistellar(octahedron, "a1 a2", "a3 b1")

    def test_star_needs_fresh_vertex(self, tetrahedron_boundary):
        with pytest.raises(InvalidMoveError, match="vertex present"):
            star_vertex(tetrahedron_boundary, "a b", "c")


class TestProperMoves:
    """Test enumeration of the applicable non-facet moves."""

    def test_tetrahedron_boundary_has_none(self, tetrahedron_boundary):
        assert find_proper_moves(tetrahedron_boundary) == []

    def test_octahedron_edge_flips(self, octahedron):
        moves = find_proper_moves(octahedron)
        assert len(moves) == 12
        assert all(len(m.A) == 2 for m in moves)

    def test_moves_apply_cleanly(self, octahedron):
        for move in find_proper_moves(octahedron):
            apply_bistellar(octahedron, move.A, move.B)

    def test_vertex_removal_found(self, tetrahedron_boundary):
        starred = star_vertex(tetrahedron_boundary, "a b c", "e")
        assert BistellarMove(simplex("e"), simplex("a b c")) in find_proper_moves(starred)


class TestGbm:
    """Test generalized bistellar moves."""

    def _dhat(self):
        return join(standard_sphere("a b c".split()), closure("x y z".split()))

    def test_vertex_deletion(self, suspended_torus_link):
        k = suspended_torus_link
        out = apply_gbm(k, k.star(simplex("u")), self._dhat())
        assert out == join(standard_sphere("a b c".split()), standard_sphere("w x y z".split()))

    def test_equals_three_flips(self, suspended_torus_link):
        k = suspended_torus_link
        expected = apply_gbm(k, k.star(simplex("u")), self._dhat())
        current = k
        for move in gbm_as_flips("u", "x y z".split(), "a b c".split()):
            current = apply_bistellar(current, move.A, move.B)
        assert current == expected

    def test_boundaries_must_agree(self, suspended_torus_link):
        k = suspended_torus_link
        other = join(standard_sphere("a b c".split()), closure("x y w".split()))
        with pytest.raises(InvalidMoveError, match="boundaries differ"):
            apply_gbm(k, k.star(simplex("u")), other)

    def test_d_must_lie_in_complex(self, suspended_torus_link):
        foreign = SimplicialComplex([simplex("a b x y p")])
        with pytest.raises(InvalidMoveError, match="not contained"):
            apply_gbm(suspended_torus_link, foreign, foreign)


class TestScripts:
    """Test script parsing and replay."""

    def test_builtin_names(self):
        for name in BUILTIN_SCRIPTS:
            assert builtin_script(name).name == name

    def test_unknown_builtin(self):
        with pytest.raises(ScriptError):
            builtin_script("nope")

    def test_cp2_to_k(self, cp2):
        result = replay_script(cp2, "cp2_to_k", record=True)
        assert len(result.complex.vertices) == 10
        assert len(result.intermediates) == result.steps_applied + 1

    def test_k_to_l_relabels(self, cp2):
        k = replay_script(cp2, "cp2_to_k").complex
        l = replay_script(k, "k_to_l").complex
        assert len(l.vertices) == 9
        named = relabel_by_names(l, CP2_9_LABELS)
        assert {str(v) for v in named.vertices} == {str(n) for n in range(1, 10)}

    def test_relabeled_l_and_m_f_vectors(self, cp2):
        k = replay_script(cp2, "cp2_to_k").complex
        l = relabel_by_names(replay_script(k, "k_to_l").complex, CP2_9_LABELS)
        m = relabel_by_names(replay_script(k, "k_to_m").complex, K4_10_LABELS)
        assert l.f_vector() == CP2_9_F_VECTOR
        assert m.f_vector() == K4_10_F_VECTOR
        assert {str(v) for v in m.vertices} == {"X", "Y", "Z", "0", "1", "2", "3", "4", "5", "6"}

    def test_replay_stops_after_upto(self, cp2):
        k = replay_script(cp2, "cp2_to_k").complex
        partial = replay_script(k, "k_to_l", upto=3, record=True)
        assert partial.steps_applied == 3
        assert len(partial.intermediates) == 4
        assert simplex("x44") <= partial.complex.vertices

    def test_x44_flips_equal_gbm(self, cp2):
        k = replay_script(cp2, "cp2_to_k").complex
        script = builtin_script("k_to_l")
        site = replay_script(k, script, upto=3).complex
        expansion = gbm_as_flips("x44", "x12 x13 x23".split(), ["x14", "x24", "x34"])
        assert [s.move for s in script.steps[3:]] == expansion
        by_flips = site
        for move in expansion:
            by_flips = apply_bistellar(by_flips, move.A, move.B)
        dhat = join(standard_sphere(["x14", "x24", "x34"]), closure("x12 x13 x23".split()))
        assert by_flips == apply_gbm(site, site.star(simplex("x44")), dhat)
        assert by_flips == replay_script(k, script).complex

    def test_s2xs2_flips_split_x11_link(self, s2xs2_16_prime):
        flipped = replay_script(s2xs2_16_prime, "s2xs2_flips").complex
        expected = join(standard_sphere(["x12", "x13", "x14"]), standard_sphere(["x21", "x31", "x41"]))
        assert flipped.link(simplex("x11")) == expected
        assert not flipped.contains(simplex("x12 x13 x14"))

    def test_vertex_deletions_give_six_a4_basic_facets(self, s2xs2_16_prime):
        flipped = replay_script(s2xs2_16_prime, "s2xs2_flips").complex
        final = replay_script(flipped, "s2xs2_vertex_deletions").complex
        found = a4_basic_facets(final)
        assert len(found) == 6
        assert set(found) == {a4_orbit_minimum(f) for f in s2xs2_12_a4_basic_facets()}

    def test_first_bad_step_aborts(self, octahedron):
        script = MoveScript.from_dict({"name": "twice", "steps": [
            {"kind": "flip", "A": ["a1", "a2"], "B": ["a3", "b3"]},
            {"kind": "flip", "A": ["a1", "a2"], "B": ["a3", "b3"]},
        ]})
        with pytest.raises(ScriptError) as exc:
            replay_script(octahedron, script)
        assert exc.value.step == 2
        assert isinstance(exc.value.cause, InvalidMoveError)
        assert exc.value.details["script"] == "twice"

    def test_gbm_step_dumps_explicit_facets(self):
        script = builtin_script("s2xs2_vertex_deletions")
        payload = script.to_dict()
        assert payload["steps"][0]["D_star"] == ["x11"]
        assert "Dhat_facets" in payload["steps"][0]
        again = MoveScript.from_json(json.dumps(payload))
        assert [s.move for s in again.steps] == [s.move for s in script.steps]

    @pytest.mark.parametrize("step, message", [
        ({"kind": "twist"}, "unknown kind"),
        ({"kind": "flip", "A": ["x11"]}, "missing keys"),
        ({"kind": "gbm", "D_star": ["x11"]}, "Dhat"),
        ({"kind": "gbm", "Dhat_join": [{"cone": ["x11"]}], "D_star": ["x11"]}, "unknown join part"),
    ])
    def test_malformed_steps(self, step, message):
        with pytest.raises(ComplexFormatError, match=message):
            MoveScript.from_dict({"name": "bad", "steps": [step]})

    def test_relabel_must_cover(self, cp2):
        with pytest.raises(ComplexConstructionError):
            relabel_by_names(cp2, CP2_9_LABELS)
