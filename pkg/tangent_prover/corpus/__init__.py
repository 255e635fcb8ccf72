"""Problem-file format and the built-in corpus."""

from tangent_prover.corpus.format import Expected, ProblemFile, load_problem, parse_problem
from tangent_prover.corpus.models import CorpusReport, CorpusResult
from tangent_prover.corpus.registry import (
    DATA_DIR,
    certificate_status,
    compare_expected,
    load_corpus,
)

__all__ = [
    "DATA_DIR",
    "CorpusReport",
    "CorpusResult",
    "Expected",
    "ProblemFile",
    "certificate_status",
    "compare_expected",
    "load_corpus",
    "load_problem",
    "parse_problem",
]
