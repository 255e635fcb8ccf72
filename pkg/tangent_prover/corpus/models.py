"""Results of a corpus run."""

from pydantic import Field, computed_field

from tangent_prover.core.errors import ErrorResponse
from tangent_prover.core.models import BaseProverModel
from tangent_prover.jensen.models import OracleReport, ProofCertificate, Route


class CorpusResult(BaseProverModel):
    problem_id: str
    route: Route | None = None
    expected_route: Route | None = None
    mismatches: list[str] = Field(default_factory=list)
    verified: bool = False
    failed_checks: list[str] = Field(default_factory=list)
    oracle: OracleReport | None = None
    error: ErrorResponse | None = None
    seconds: float = 0.0
    certificate: ProofCertificate | None = None

    @computed_field
    @property
    def passed(self) -> bool:
        oracle_ok = self.oracle is None or self.oracle.passed
        return self.error is None and not self.mismatches and self.verified and oracle_ok


class CorpusReport(BaseProverModel):
    results: list[CorpusResult] = Field(default_factory=list)
    seconds: float = 0.0

    @computed_field
    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.passed)

    @computed_field
    @property
    def all_passed(self) -> bool:
        return bool(self.results) and self.passed == len(self.results)
