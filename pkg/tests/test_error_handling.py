"""
Tests for error handling.

Library errors carry their details; the runner and the command line turn
them into failed results and exit codes instead of tracebacks.
"""

import pytest

from icotri.catalog import build, off_diagonal_labels, tau_group
from icotri.complex_core import SimplicialComplex, simplex, standard_sphere
from icotri.moves_engine import MoveScript, replay_script
from icotri.perm_group import Permutation, generate_group, quotient_complex
from icotri.product_subdivision import verify_subdivision
from icotri.utils import (
    ComplexFormatError,
    IcotriError,
    ImpureActionError,
    ScriptError,
    SubdivisionError,
)


class TestScriptErrors:
    """A script stops at its first invalid step."""

    def test_step_index_and_cause(self, octahedron, metrics):
        script = MoveScript.from_dict({"name": "broken", "steps": [
            {"kind": "flip", "A": ["a1", "a2"], "B": ["a3", "b3"]},
            {"kind": "star", "C": ["a1", "b1"], "x": "c"},
        ]})
        with pytest.raises(ScriptError) as exc:
            replay_script(octahedron, script)
        assert exc.value.details["step"] == 2
        assert exc.value.details["cause"] == "invalid move: C not a face"
        recorded = metrics.get_errors()[0]
        assert recorded["script"] == "broken"
        assert recorded["step"] == 2

    def test_error_message_includes_details(self, octahedron):
        script = MoveScript.from_dict({"name": "broken", "steps": [
            {"kind": "flip", "A": ["a1", "b1"], "B": ["a2", "a3"]},
        ]})
        with pytest.raises(ScriptError) as exc:
            replay_script(octahedron, script)
        assert "step 1 failed" in str(exc.value)
        assert "'script': 'broken'" in str(exc.value)


class TestImpureQuotient:
    def test_witness_in_details(self):
        k = standard_sphere("a b c".split())
        swap = Permutation.from_cycles("(a b)", ["a", "b", "c"])
        with pytest.raises(ImpureActionError) as exc:
            quotient_complex(k, generate_group([swap]))
        assert exc.value.details == {"condition": "a", "orbit": ["a", "b"], "simplex": ["a", "b"]}
        assert not exc.value.report.is_pure

    def test_pure_quotient_does_not_raise(self, icosahedron):
        assert len(quotient_complex(icosahedron, tau_group(off_diagonal_labels())).vertices) == 6


class TestFormatErrors:
    """Malformed JSON reports where it broke."""

    def test_line_and_column(self):
        with pytest.raises(ComplexFormatError) as exc:
            SimplicialComplex.from_json('{"facets": [\n  ["x11" "x12"]]}', "k.json")
        assert exc.value.line == 2
        assert exc.value.details["path"] == "k.json"

    def test_facet_containment_is_not_a_format_error(self):
        with pytest.raises(IcotriError):
            SimplicialComplex.from_dict({"facets": [["x11", "x12"], ["x11"]]})


class TestCertificateErrors:
    def test_require_certified(self):
        broken = SimplicialComplex(set(build("S2xS2_16").complex.facets) - {
            min(build("S2xS2_16").complex.facets, key=sorted)
        })
        cert = verify_subdivision(broken)
        with pytest.raises(SubdivisionError) as exc:
            cert.require_certified()
        assert exc.value.details["failures"]

    def test_vertex_outside_product(self):
        k = SimplicialComplex([simplex("a b")])
        assert verify_subdivision(k).failures == ["vertex set mismatch"]
