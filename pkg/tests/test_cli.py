"""
Tests for the command-line front end.
"""

import json
from unittest.mock import patch

import pytest
from click.testing import CliRunner

from icotri import __version__
from icotri.cli import cli


@pytest.fixture
def runner(monkeypatch):
    for name in ("ICOTRI_SEED", "ICOTRI_JOBS", "ICOTRI_FORMAT", "ICOTRI_TIMINGS", "ICOTRI_FLIP_BUDGET"):
        monkeypatch.delenv(name, raising=False)
    return CliRunner()


class TestTopLevel:
    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_groups_registered(self, runner):
        result = runner.invoke(cli, ["--help"])
        for group in ("verify", "catalog", "complex", "subdivision", "moves"):
            assert group in result.output


class TestVerify:
    """Test the claim runner commands."""

    def test_list(self, runner):
        result = runner.invoke(cli, ["verify", "list"])
        assert result.exit_code == 0
        assert "subdivision.search" in result.output
        assert "catalog.fvectors" in result.output

    def test_run_json(self, runner):
        result = runner.invoke(cli, ["verify", "run", "joins", "--format", "json", "--jobs", "1"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert [c["id"] for c in payload["claims"]] == ["joins"]
        assert payload["claims"][0]["status"] == "pass"
        assert "elapsed" not in payload["claims"][0]

    def test_run_is_byte_identical(self, runner):
        args = ["verify", "run", "prism.fill", "cw.census", "--format", "json", "--jobs", "1"]
        assert runner.invoke(cli, args).output == runner.invoke(cli, args).output

    def test_run_with_timings(self, runner):
        result = runner.invoke(cli, ["verify", "run", "cw.census", "--format", "json",
                                     "--jobs", "1", "--timings"])
        assert "elapsed" in json.loads(result.output)["claims"][0]

    def test_run_text(self, runner):
        result = runner.invoke(cli, ["verify", "run", "prism.fill", "--jobs", "1"])
        assert result.exit_code == 0
        assert "1 passed, 0 failed, 0 undetermined" in result.output

    def test_unknown_claim_is_usage_error(self, runner):
        result = runner.invoke(cli, ["verify", "run", "nope"])
        assert result.exit_code == 2
        assert "unknown claim" in result.output

    def test_bad_jobs(self, runner):
        result = runner.invoke(cli, ["verify", "run", "joins", "--jobs", "0"])
        assert result.exit_code == 2

    def test_yaml_config(self, runner, tmp_path):
        pytest.importorskip("yaml")
        path = tmp_path / "icotri.yaml"
        path.write_text("icotri:\n  output_format: json\n  jobs: 1\n  seed: 5\n")
        result = runner.invoke(cli, ["verify", "run", "joins", "--config", str(path)])
        assert result.exit_code == 0
        assert json.loads(result.output)["seed"] == 5

    def test_failed_claim_exit_code(self, runner):
        from icotri.claims import FAIL, ClaimResult, Report
        failing = Report([ClaimResult("joins", FAIL, {"x": False})])
        with patch("icotri.cli.run", return_value=failing):
            result = runner.invoke(cli, ["verify", "run", "joins", "--jobs", "1"])
        assert result.exit_code == 1
        assert "failed: x" in result.output


class TestCatalog:
    """Test catalog browsing."""

    def test_list(self, runner):
        result = runner.invoke(cli, ["catalog", "list"])
        assert result.output.split() == [
            "S2_4", "icosahedron", "RP2_6", "S2xS2_16", "CP2_10", "S2xS2_16_prime",
            "S2xS2_12", "I1", "I2", "S2_8", "octahedron", "prism_boundary",
        ]

    def test_show(self, runner):
        result = runner.invoke(cli, ["catalog", "show", "S2xS2_12"])
        assert result.exit_code == 0
        assert "f-vector: (12, 60, 160, 180, 72)" in result.output
        assert "orbit classes: 2 [12, 60]" in result.output

    def test_show_unknown(self, runner):
        result = runner.invoke(cli, ["catalog", "show", "CP2_9"])
        assert result.exit_code == 2

    def test_internal_error(self, runner):
        with patch("icotri.cli.build", side_effect=RuntimeError("boom")):
            result = runner.invoke(cli, ["catalog", "show", "S2_4"])
        assert result.exit_code == 3
        assert "boom" in result.output


class TestComplexFiles:
    """Test JSON import and export."""

    def test_export_then_import(self, runner, tmp_path):
        path = tmp_path / "cp2.json"
        assert runner.invoke(cli, ["complex", "export", "CP2_10", str(path)]).exit_code == 0
        assert json.loads(path.read_text())["name"] == "CP2_10"
        result = runner.invoke(cli, ["complex", "import", str(path)])
        assert result.exit_code == 0
        assert "f-vector: (10, 45, 110, 120, 48)" in result.output

    def test_malformed_file(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"facets": [["x11", ')
        result = runner.invoke(cli, ["complex", "import", str(path)])
        assert result.exit_code == 2
        assert "parse error" in result.output


class TestSubdivision:
    def test_verify_catalog_entry(self, runner):
        result = runner.invoke(cli, ["subdivision", "verify", "S2xS2_16"])
        assert result.exit_code == 0
        assert "certified (180 cells)" in result.output

    def test_verify_failure(self, runner):
        result = runner.invoke(cli, ["subdivision", "verify", "CP2_10"])
        assert result.exit_code == 1
        assert "vertex set mismatch" in result.output

    def test_verify_missing_reference(self, runner):
        result = runner.invoke(cli, ["subdivision", "verify", "no/such/file.json"])
        assert result.exit_code == 2

    @pytest.mark.slow
    def test_search_writes_results(self, runner, tmp_path):
        result = runner.invoke(cli, ["subdivision", "search", "--output", str(tmp_path)])
        assert result.exit_code == 0
        assert len(json.loads(result.output)["results"]) == 2
        assert sorted(p.name for p in tmp_path.iterdir()) == ["subdivision_1.json", "subdivision_2.json"]


class TestMoves:
    def test_apply_builtin(self, runner, tmp_path):
        out = tmp_path / "k.json"
        result = runner.invoke(cli, ["moves", "apply", "CP2_10", "cp2_to_k", "--output", str(out)])
        assert result.exit_code == 0
        assert "applied" in result.output
        assert "homology: (Z, 0, Z, 0, Z)" in result.output
        assert out.exists()

    def test_invalid_step(self, runner, tmp_path):
        script = tmp_path / "bad.json"
        script.write_text(json.dumps({"name": "bad", "steps": [
            {"kind": "flip", "A": ["x11"], "B": ["x12", "x13", "x14", "x22"]},
        ]}))
        result = runner.invoke(cli, ["moves", "apply", "CP2_10", str(script)])
        assert result.exit_code == 1
        assert "step 1 failed" in result.output

    def test_missing_script(self, runner):
        result = runner.invoke(cli, ["moves", "apply", "CP2_10", "no_such_script.json"])
        assert result.exit_code == 2
