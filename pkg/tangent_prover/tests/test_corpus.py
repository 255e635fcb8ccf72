"""Tests for problem files, the built-in corpus and the corpus service."""

import logging
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path

import pytest

from tangent_prover.core.errors import ExprSyntaxError, InvalidProblem
from tangent_prover.corpus import (
    ProblemFile,
    certificate_status,
    compare_expected,
    load_corpus,
    load_problem,
    parse_problem,
)
from tangent_prover.jensen import ProblemSpec, prove
from tangent_prover.services.corpus_service import CorpusService

MINIMAL = """
# four positive reals summing to 4
function = x/(x^3+8)
n = 4
constraint = sum
budget = 4
domain = (0, 4)
direction = le
"""


class TestParseProblem:
    """Tests for the key = value problem format."""

    def test_minimal(self) -> None:
        """Test defaults: id from the source name, no expected block."""
        entry = parse_problem(MINIMAL, source="data/baltic.prob")
        problem = entry.problem
        assert problem.problem_id == "baltic"
        assert problem.functions == ["x/(x^3+8)"]
        assert problem.constraint.family == "Sum"
        assert problem.constraint.budget == 4
        assert str(problem.domain) == "(0, 4)"
        assert entry.expected is None

    def test_functions_and_expected(self) -> None:
        """Test a heterogeneous entry with expected values and errata."""
        text = (
            "id = het\nfunctions = 1/x; 4/x\nconstraint = sum\nbudget = 6\n"
            "domain = (0, inf)\nerratum = first\nerratum = second\n"
            "expected.touch_points = 2, 4\nexpected.split = [9/10, 1]\n"
        )
        entry = parse_problem(text)
        assert entry.problem.n == 2
        assert entry.problem.functions == ["1/x", "4/x"]
        assert entry.errata == ["first", "second"]
        assert entry.expected.touch_points == [2, 4]
        assert str(entry.expected.split) == "[9/10, 1]"

    def test_mean_constraint(self) -> None:
        """Test that a fixed power mean is read with its alpha."""
        text = "function = x^2\nn = 3\nconstraint = mean\nmean = 2\nalpha = 2\n"
        c = parse_problem(text).problem.constraint
        assert c.family == "MeanFixed"
        assert c.canonical().budget == 12

    @pytest.mark.parametrize(
        ("text", "fragment"),
        [
            ("function = x\nn = 2\nconstraint = sum\nbudget = 2\ncolour = red\n", "unknown key"),
            ("function = x\nfunction = x^2\n", "duplicate key"),
            ("function = x\nthis line has no equals sign\n", "expected 'key = value'"),
            ("function = x\nfunctions = x; x\n", "either 'function' or 'functions'"),
            ("function = x\nexpected.answer = 3\n", "unknown expected key"),
            ("function = x\nn = two\nconstraint = sum\nbudget = 2\n", "invalid value"),
            ("function = x\nn = 2\nconstraint = cosine\nbudget = 2\n", "unknown constraint"),
            ("function = x\nn = 2\nconstraint = sum\n", "invalid problem"),
            ("function = x\nn = 2\n", "invalid problem"),
        ],
    )
    def test_rejected(self, text: str, fragment: str) -> None:
        """Test malformed problem files."""
        with pytest.raises(InvalidProblem) as exc_info:
            parse_problem(text, source="bad.prob")
        assert fragment in exc_info.value.message

    def test_bad_expression_is_syntax_error(self) -> None:
        """Test that a malformed function is reported with its offset."""
        with pytest.raises(ExprSyntaxError) as exc_info:
            parse_problem("function = x +* 2\nn = 2\nconstraint = sum\nbudget = 2\n")
        assert exc_info.value.position == 3
        assert exc_info.value.input_error

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that an unreadable file is an input error."""
        with pytest.raises(InvalidProblem) as exc_info:
            load_problem(tmp_path / "missing.prob")
        assert exc_info.value.input_error


class TestRegistry:
    """Tests for the built-in corpus data."""

    def test_load_corpus(self) -> None:
        """Test that every entry loads with expected values, sorted by id."""
        entries = load_corpus()
        ids = [e.problem.problem_id for e in entries]
        assert len(ids) == 11
        assert ids == sorted(ids)
        assert all(e.expected is not None for e in entries)

    def test_filter(self) -> None:
        """Test substring filtering by id."""
        assert len(load_corpus("sample")) == 5
        with pytest.raises(InvalidProblem):
            load_corpus("no-such-entry")

    def test_entry_without_expected(self, tmp_path: Path) -> None:
        """Test that corpus data must say what to expect."""
        (tmp_path / "bare.prob").write_text(MINIMAL, encoding="utf-8")
        with pytest.raises(InvalidProblem):
            load_corpus(data_dir=tmp_path)

    def test_compare_expected(self, corpus_entry: Callable[[str], ProblemFile]) -> None:
        """Test a matching certificate and a mismatching expected block."""
        entry = corpus_entry("baltic2011")
        cert = prove(entry.problem)
        assert compare_expected(cert, entry.expected) == []

        wrong = entry.expected.model_copy(
            update={"route": "Theorem2Split", "Q": [Fraction(1)], "conclusion": Fraction(1)}
        )
        mismatches = compare_expected(cert, wrong)
        assert "route: expected Theorem2Split, got Theorem1" in mismatches
        assert "Q: expected [1], got [216, 0, 0, 27]" in mismatches
        assert "conclusion: expected 1, got 4/9" in mismatches

    def test_status_of_numeric_certificate(
        self, corpus_problem: Callable[[str], ProblemSpec]
    ) -> None:
        """Test that a numeric route reports its holding evidence."""
        assert certificate_status(prove(corpus_problem("sample4"))) == "HOLDS_NUMERICALLY"
        assert certificate_status(prove(corpus_problem("baltic2011"))) == "NonPositive"


class TestCorpusService:
    """Tests for corpus runs."""

    async def test_run_all(self, corpus_service: CorpusService) -> None:
        """Test that the whole corpus reproduces its expected values."""
        report = await corpus_service.run()
        failures = {
            r.problem_id: r.mismatches + r.failed_checks + ([r.error.message] if r.error else [])
            for r in report.results
            if not r.passed
        }
        assert report.all_passed, failures
        assert report.passed == 11
        assert [r.problem_id for r in report.results] == sorted(
            r.problem_id for r in report.results
        )

    async def test_run_filtered(self, corpus_service: CorpusService) -> None:
        """Test a run restricted to one entry."""
        report = await corpus_service.run("sample3")
        assert [r.problem_id for r in report.results] == ["sample3"]
        result = report.results[0]
        assert result.route == "Theorem2Split"
        assert result.verified
        assert result.oracle.passed

    async def test_filter_matches_nothing(self, corpus_service: CorpusService) -> None:
        """Test that an empty selection is an input error."""
        with pytest.raises(InvalidProblem):
            await corpus_service.run("no-such-entry")

    def test_injected_mismatch(
        self, corpus_service: CorpusService, corpus_entry: Callable[[str], ProblemFile]
    ) -> None:
        """Test that a wrong expectation fails the entry but still verifies it."""
        entry = corpus_entry("sample1")
        expected = entry.expected.model_copy(update={"curve": "Line"})
        result = corpus_service.run_entry(entry.model_copy(update={"expected": expected}))
        assert not result.passed
        assert result.verified
        assert result.mismatches == ["curve: expected Line, got PowerCurve"]

    def test_entry_error(
        self, corpus_service: CorpusService, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test that an input error is recorded on the entry and logged as a warning."""
        entry = parse_problem(
            "id = irrational\nfunction = x^2\nn = 2\nconstraint = product\nbudget = 2\n"
            "domain = (0, inf)\nexpected.route = Theorem1\n"
        )
        with caplog.at_level(logging.WARNING, logger="CorpusService"):
            result = corpus_service.run_entry(entry)
        assert not result.passed
        assert result.error.error == "invalid_problem"
        assert result.certificate is None
        record = next(r for r in caplog.records if r.name == "CorpusService")
        assert record.levelno == logging.WARNING
        assert "problem_id=irrational" in record.getMessage()
