"""
Tests for the error hierarchy and JSON helpers.
"""

import pytest

from icotri.utils import (
    IcotriError,
    InvalidFaceError,
    NotPureError,
    ComplexFormatError,
    ScriptError,
    UnknownClaimError,
    load_json_text,
    require_keys,
)


class TestErrorHierarchy:
    """Every library error is an IcotriError carrying details."""

    def test_str_includes_details(self):
        err = IcotriError("boom", {"step": 3})
        assert str(err) == "boom | Details: {'step': 3}"

    def test_str_without_details(self):
        assert str(IcotriError("boom")) == "boom"

    def test_invalid_face(self):
        err = InvalidFaceError("x11 x22", complex_name="CP2_10")
        assert err.message == "not a face"
        assert err.details == {"simplex": "x11 x22", "complex": "CP2_10"}
        assert isinstance(err, IcotriError)

    def test_not_pure(self):
        err = NotPureError([1, 2])
        assert err.message == "not pure"
        assert err.details["facet_dimensions"] == [1, 2]

    def test_script_error_wraps_cause(self):
        cause = IcotriError("invalid move: link")
        err = ScriptError("step 2 failed", step=2, script="demo", cause=cause)
        assert err.step == 2
        assert err.cause is cause
        assert err.details == {"step": 2, "script": "demo", "cause": "invalid move: link"}

    def test_unknown_claim_lists_known(self):
        err = UnknownClaimError("nope", ["homology"])
        assert err.claim_id == "nope"
        assert err.details["known"] == ["homology"]


class TestJsonHelpers:
    """Test load_json_text and require_keys."""

    def test_load_valid(self):
        assert load_json_text('{"facets": []}') == {"facets": []}

    def test_parse_error_has_position(self):
        with pytest.raises(ComplexFormatError) as exc:
            load_json_text('{\n  "facets": [\n', path="bad.json")
        assert exc.value.line is not None
        assert exc.value.details["path"] == "bad.json"
        assert exc.value.message.startswith("parse error")

    def test_require_keys_missing(self):
        with pytest.raises(ComplexFormatError, match="missing keys: facets"):
            require_keys({"name": "x"}, ["facets"], "complex")

    def test_require_keys_not_object(self):
        with pytest.raises(ComplexFormatError, match="must be a JSON object"):
            require_keys([1, 2], ["facets"], "complex")
