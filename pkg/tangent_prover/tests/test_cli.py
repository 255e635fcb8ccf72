"""Tests for the command-line interface."""

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from tangent_prover.cli import app
from tangent_prover.constants import EXIT_EXACT, EXIT_FAILURE, EXIT_INPUT_ERROR, EXIT_NUMERIC_ONLY
from tangent_prover.corpus.registry import DATA_DIR

runner = CliRunner()

CUBE_OVER_REALS = "function = x^3\nn = 2\nconstraint = sum\nbudget = 2\ndomain = reals\n"


def _problem(problem_id: str) -> str:
    return str(DATA_DIR / f"{problem_id}.prob")


class TestProve:
    """Tests for ``prover prove``."""

    def test_exact_proof(self) -> None:
        """Test the narrative and exit code of an exact proof."""
        result = runner.invoke(app, ["prove", _problem("baltic2011")])
        assert result.exit_code == EXIT_EXACT
        assert "(x - 1)^2 * (-2*x^2 - 5*x - 8) / (27*x^3 + 216)" in result.output
        assert "Therefore Σ f(x_j) ≤ 4/9" in result.output

    def test_numeric_only(self) -> None:
        """Test the exit code of numeric evidence without a certificate."""
        result = runner.invoke(app, ["prove", _problem("example1")])
        assert result.exit_code == EXIT_NUMERIC_ONLY
        assert "HOLDS_NUMERICALLY" in result.output

    def test_failure(self, tmp_path: Path) -> None:
        """Test that an indefinite sign with no rescue prints no proof."""
        path = tmp_path / "cube.prob"
        path.write_text(CUBE_OVER_REALS, encoding="utf-8")
        result = runner.invoke(app, ["prove", str(path)])
        assert result.exit_code == EXIT_FAILURE
        assert "No proof." in result.output

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that an unreadable problem is an input error."""
        result = runner.invoke(app, ["prove", str(tmp_path / "missing.prob")])
        assert result.exit_code == EXIT_INPUT_ERROR

    def test_json_certificate(self, tmp_path: Path) -> None:
        """Test the certificate written with --json and the seed override."""
        out = tmp_path / "cert.json"
        result = runner.invoke(
            app, ["prove", _problem("baltic2011"), "--json", str(out), "--seed", "7"]
        )
        assert result.exit_code == EXIT_EXACT
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["route"] == "Theorem1"
        assert data["factorizations"][0]["T_coeffs"] == ["-8", "-5", "-2"]
        assert data["conclusion"]["n_f_x0"] == "4/9"
        assert data["seeds"] == [7]

    def test_verbose_runs_checker(self) -> None:
        """Test that -v prints the independent check and every candidate."""
        result = runner.invoke(app, ["prove", _problem("baltic2011"), "-v"])
        assert result.exit_code == EXIT_EXACT
        assert "Independent check: ok" in result.output
        assert "PowerCurve: Rejected" in result.output


class TestFactor:
    """Tests for ``prover factor``."""

    def test_factor(self) -> None:
        """Test the cofactor and denominator of a tangent line."""
        result = runner.invoke(app, ["factor", "x/(x^3+8)", "2/27*x + 1/27", "1"])
        assert result.exit_code == EXIT_EXACT
        assert "T = -2*x^2 - 5*x - 8" in result.output
        assert "Qden = 27*x^3 + 216" in result.output

    @pytest.mark.parametrize(
        ("args", "code"),
        [
            (["x^2", "x", "1"], EXIT_FAILURE),
            (["sqrt(x)", "(x + 1)/2", "1"], EXIT_FAILURE),
            (["x^2", "2*x - 1", "one"], EXIT_INPUT_ERROR),
            (["x +", "2*x - 1", "1"], EXIT_INPUT_ERROR),
        ],
    )
    def test_factor_errors(self, args: list[str], code: int) -> None:
        """Test non-tangent curves, radicals, bad touch points and syntax errors."""
        result = runner.invoke(app, ["factor", *args])
        assert result.exit_code == code


class TestCorpus:
    """Tests for ``prover corpus``."""

    def test_filtered_run(self, tmp_path: Path) -> None:
        """Test a one-entry run with a machine-readable report."""
        report = tmp_path / "report.json"
        result = runner.invoke(app, ["corpus", "--filter", "sample3", "--report", str(report)])
        assert result.exit_code == EXIT_EXACT
        assert "1/1 pass" in result.output
        data = json.loads(report.read_text(encoding="utf-8"))
        assert data["all_passed"] is True
        assert data["results"][0]["route"] == "Theorem2Split"

    def test_filter_matches_nothing(self) -> None:
        """Test that an empty selection is an input error."""
        result = runner.invoke(app, ["corpus", "--filter", "no-such-entry"])
        assert result.exit_code == EXIT_INPUT_ERROR
