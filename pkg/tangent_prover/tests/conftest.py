"""Pytest fixtures for prover tests."""

from collections.abc import Callable

import pytest

from tangent_prover.config import Settings
from tangent_prover.corpus.format import ProblemFile, load_problem
from tangent_prover.corpus.registry import DATA_DIR, PROBLEM_SUFFIX
from tangent_prover.jensen.models import ProblemSpec
from tangent_prover.services.corpus_service import CorpusService
from tangent_prover.services.prover_service import ProverService


@pytest.fixture
def settings() -> Settings:
    """Create settings from the test environment."""
    return Settings()


@pytest.fixture
def corpus_entry() -> Callable[[str], ProblemFile]:
    """Load a built-in corpus entry by id."""

    def _load(problem_id: str) -> ProblemFile:
        return load_problem(DATA_DIR / f"{problem_id}{PROBLEM_SUFFIX}")

    return _load


@pytest.fixture
def corpus_problem(corpus_entry: Callable[[str], ProblemFile]) -> Callable[[str], ProblemSpec]:
    """Load only the problem of a corpus entry."""

    def _load(problem_id: str) -> ProblemSpec:
        return corpus_entry(problem_id).problem

    return _load


@pytest.fixture
def prover_service(settings: Settings) -> ProverService:
    """Create prover service."""
    return ProverService(settings)


@pytest.fixture
def corpus_service(settings: Settings, prover_service: ProverService) -> CorpusService:
    """Create corpus service sharing the prover service."""
    return CorpusService(settings, prover=prover_service)
