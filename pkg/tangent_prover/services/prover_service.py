"""Proving, factoring and checking single problems."""

import asyncio
from pathlib import Path

from tangent_prover.algebra.factorization import double_root_factor
from tangent_prover.config import Settings
from tangent_prover.core.errors import InvalidProblem, ProverError
from tangent_prover.core.metrics import PROOF_DURATION, PROOF_RUNS
from tangent_prover.core.models import parse_rational
from tangent_prover.corpus.format import ProblemFile, load_problem
from tangent_prover.expr.parser import parse
from tangent_prover.expr.printer import print_expr
from tangent_prover.jensen.models import (
    ExtremeReport,
    Factorization,
    OracleReport,
    ProblemSpec,
    ProofCertificate,
    VerificationReport,
)
from tangent_prover.jensen.oracle import jensen_oracle, sample_extreme
from tangent_prover.jensen.prover import prove
from tangent_prover.jensen.theorems import as_rational
from tangent_prover.jensen.verifier import verify_certificate
from tangent_prover.services.base import BaseService


class ProverService(BaseService):
    """Service for one-problem operations behind ``prover prove`` and ``prover factor``."""

    def __init__(self, settings: Settings | None = None) -> None:
        super().__init__(settings)

    def load(self, path: str | Path) -> ProblemFile:
        try:
            return load_problem(path)
        except ProverError as e:
            self._record_failure("load", e, path=str(path))
            raise

    def prove(self, problem: ProblemSpec) -> ProofCertificate:
        """Prove a problem and count the route taken.

        Raises:
            ProverError: Input errors (malformed expressions, invalid constraints).
        """
        with PROOF_DURATION.labels(operation="prove").time():
            try:
                cert = prove(problem, self.settings)
            except ProverError as e:
                self._record_failure("prove", e, problem_id=problem.problem_id)
                raise
        PROOF_RUNS.labels(route=cert.route).inc()
        self._log_info("Proved", problem_id=problem.problem_id, route=cert.route)
        return cert

    async def prove_async(self, problem: ProblemSpec) -> ProofCertificate:
        return await asyncio.to_thread(self.prove, problem)

    def verify(self, cert: ProofCertificate) -> VerificationReport:
        """Check a certificate from its serialized form alone."""
        with PROOF_DURATION.labels(operation="verify").time():
            restored = ProofCertificate.model_validate_json(cert.model_dump_json())
            report = verify_certificate(restored)
        if not report.ok:
            names = ", ".join(c.name for c in report.failures)
            self.logger.warning(f"Certificate {cert.problem_id} failed checks: {names}")
        return report

    def oracle(
        self,
        cert: ProofCertificate,
        problem: ProblemSpec,
        samples: int | None = None,
        seed: int | None = None,
    ) -> OracleReport:
        return jensen_oracle(cert, problem, samples, seed, self.settings)

    def extreme(self, problem: ProblemSpec, samples: int | None = None) -> ExtremeReport:
        return sample_extreme(problem, samples, settings=self.settings)

    def factor(self, f_text: str, curve_text: str, x0_text: str) -> Factorization:
        """f - g = (x - x0)^2 * T / Q for rational f and g tangent at x0.

        Raises:
            TangencyViolation: f and g differ in value or slope at x0.
            AlgebraError: f or g is not a rational function.
            InvalidProblem: x0 is not an exact rational.
        """
        try:
            x0 = parse_rational(x0_text)
        except ValueError as e:
            raise InvalidProblem(
                message=f"touch point {x0_text!r} is not an exact rational",
                details={"x0": x0_text},
            ) from e
        with PROOF_DURATION.labels(operation="factor").time():
            try:
                f, g = parse(f_text), parse(curve_text)
                factor = double_root_factor(as_rational(f, "f"), as_rational(g, "g"), x0)
            except ProverError as e:
                self._record_failure("factor", e, f=f_text, g=curve_text, x0=x0_text)
                raise
        return Factorization(
            function=print_expr(f),
            curve=print_expr(g),
            x0=x0,
            T_coeffs=list(factor.t.coeffs),
            Q_coeffs=list(factor.q_den.coeffs),
            T_text=factor.t.to_text(),
            Q_text=factor.q_den.to_text(),
        )
