"""Concurrent runs of the built-in corpus."""

import asyncio
import time

from tangent_prover.config import Settings
from tangent_prover.core.errors import ProverError
from tangent_prover.core.metrics import PROOF_DURATION
from tangent_prover.corpus.format import ProblemFile
from tangent_prover.corpus.models import CorpusReport, CorpusResult
from tangent_prover.corpus.registry import compare_expected, load_corpus
from tangent_prover.services.base import BaseService
from tangent_prover.services.prover_service import ProverService


class CorpusService(BaseService):
    """Proves every corpus entry, compares it with its expected block and checks it.

    Each entry is proved, re-verified from its serialized certificate and, when a
    value was proved, sampled with the Jensen oracle.
    """

    def __init__(
        self, settings: Settings | None = None, prover: ProverService | None = None
    ) -> None:
        super().__init__(settings)
        self.prover = prover or ProverService(self.settings)

    def run_entry(self, entry: ProblemFile) -> CorpusResult:
        problem = entry.problem
        expected = entry.expected
        result = CorpusResult(
            problem_id=problem.problem_id,
            expected_route=expected.route if expected else None,
        )
        started = time.perf_counter()
        try:
            cert = self.prover.prove(problem)
            result.route = cert.route
            result.certificate = cert
            if expected is not None:
                result.mismatches = compare_expected(cert, expected)
            report = self.prover.verify(cert)
            result.verified = report.ok
            result.failed_checks = [f"{c.name}: {c.detail}" for c in report.failures]
            if cert.route != "Failure":
                result.oracle = self.prover.oracle(cert, problem)
        except ProverError as e:
            self._record_failure("corpus", e, problem_id=problem.problem_id)
            result.error = e.to_response()
        result.seconds = time.perf_counter() - started
        self._log_info(
            "Corpus entry", problem_id=problem.problem_id, route=result.route, passed=result.passed
        )
        return result

    async def run(self, filter_id: str | None = None) -> CorpusReport:
        """Run the corpus concurrently; results are sorted by problem id.

        Raises:
            InvalidProblem: A data file is malformed or the filter matches nothing.
        """
        entries = load_corpus(filter_id)
        started = time.perf_counter()
        with PROOF_DURATION.labels(operation="corpus").time():
            results = await asyncio.gather(
                *(asyncio.to_thread(self.run_entry, entry) for entry in entries)
            )
        report = CorpusReport(
            results=sorted(results, key=lambda r: r.problem_id),
            seconds=time.perf_counter() - started,
        )
        self._log_info("Corpus run", passed=report.passed, total=len(report.results))
        return report
