"""Tests for randomized constrained sampling."""

from collections.abc import Callable
from fractions import Fraction

import pytest

from tangent_prover.config import Settings
from tangent_prover.jensen import ProblemSpec, jensen_oracle, prove, sample_extreme
from tangent_prover.services.prover_service import ProverService


@pytest.mark.parametrize(
    "problem_id",
    [
        "baltic2011",
        "example1",
        "example2",
        "example3",
        "inequality1_step",
        "sample1",
        "sample2",
        "sample3",
        "sample4",
        "sample5",
        "spb2011_ineq5",
    ],
)
def test_oracle_finds_no_violation(
    problem_id: str, corpus_problem: Callable[[str], ProblemSpec], settings: Settings
) -> None:
    """Test the proved value against random constrained tuples."""
    problem = corpus_problem(problem_id)
    report = jensen_oracle(prove(problem, settings), problem, settings=settings)
    assert report.passed
    assert report.violations == 0
    assert report.evaluated > 0
    assert report.seed == settings.default_seed


def test_oracle_catches_wrong_value(
    corpus_problem: Callable[[str], ProblemSpec], settings: Settings
) -> None:
    """Test that a value below the true maximum is violated."""
    problem = corpus_problem("baltic2011")
    cert = prove(problem, settings)
    wrong = cert.model_copy(
        update={"conclusion": cert.conclusion.model_copy(update={"n_f_x0": Fraction(2, 5)})}
    )
    report = jensen_oracle(wrong, problem, settings=settings)
    assert not report.passed
    assert report.violations > 0
    assert report.worst_margin < 0


def test_oracle_is_reproducible(
    corpus_problem: Callable[[str], ProblemSpec], prover_service: ProverService
) -> None:
    """Test that the same seed gives the same worst point."""
    problem = corpus_problem("sample1")
    cert = prover_service.prove(problem)
    first = prover_service.oracle(cert, problem, samples=500, seed=7)
    second = prover_service.oracle(cert, problem, samples=500, seed=7)
    assert first.worst_point == second.worst_point
    assert first.requested == 500


def test_extreme_maximum(corpus_problem: Callable[[str], ProblemSpec], settings: Settings) -> None:
    """Test that the sampled maximum of the cube-root sum approaches 12."""
    report = sample_extreme(corpus_problem("sample4"), samples=100_000, settings=settings)
    assert report.sense == "max"
    assert report.value <= 12 + 1e-9
    assert report.value == pytest.approx(12, abs=1e-4)
    assert report.argbest == pytest.approx([2, 2, 2], abs=0.25)


def test_extreme_minimum(
    prover_service: ProverService, corpus_problem: Callable[[str], ProblemSpec]
) -> None:
    """Test the sampled minimum of a lower-bound problem."""
    report = prover_service.extreme(corpus_problem("sample1"), samples=20000)
    assert report.sense == "min"
    assert report.value >= 1 - 1e-9
    assert report.value == pytest.approx(1, abs=1e-3)
