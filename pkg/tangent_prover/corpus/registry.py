"""Built-in corpus entries and comparison of certificates with their expected blocks."""

import logging
from pathlib import Path

from tangent_prover.core.errors import InvalidProblem
from tangent_prover.corpus.format import Expected, ProblemFile, load_problem
from tangent_prover.jensen.models import ProofCertificate

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"
PROBLEM_SUFFIX = ".prob"


def corpus_paths(data_dir: Path = DATA_DIR) -> list[Path]:
    return sorted(data_dir.glob(f"*{PROBLEM_SUFFIX}"))


def load_corpus(filter_id: str | None = None, data_dir: Path = DATA_DIR) -> list[ProblemFile]:
    """Corpus entries sorted by id, optionally only those whose id contains ``filter_id``.

    Raises:
        InvalidProblem: A data file is malformed or has no expected block, or the
            filter matches nothing.
    """
    entries = []
    for path in corpus_paths(data_dir):
        entry = load_problem(path)
        if entry.expected is None:
            raise InvalidProblem(
                message=f"Corpus entry {path.name} has no expected values",
                details={"path": str(path)},
            )
        entries.append(entry)
    entries.sort(key=lambda e: e.problem.problem_id)
    if filter_id:
        entries = [e for e in entries if filter_id in e.problem.problem_id]
        if not entries:
            raise InvalidProblem(
                message=f"No corpus entry matches {filter_id!r}",
                details={"filter": filter_id},
            )
    logger.debug(f"Loaded {len(entries)} corpus entries from {data_dir}")
    return entries


def certificate_status(cert: ProofCertificate) -> str | None:
    """Verdict of the first sign certificate, or of the holding evidence on a numeric route."""
    if cert.sign_certs:
        return cert.sign_certs[0].verdict
    if cert.numeric_evidence:
        holding = [r for r in cert.numeric_evidence if r.verdict == "HOLDS_NUMERICALLY"]
        return (holding or cert.numeric_evidence)[0].verdict
    return None


def _coefficients(values: list) -> str:
    return "[" + ", ".join(str(v) for v in values) + "]"


def compare_expected(cert: ProofCertificate, expected: Expected) -> list[str]:
    """Human-readable mismatches between a certificate and an expected block."""
    mismatches: list[str] = []

    def differ(name: str, want: object, got: object) -> None:
        if want != got:
            mismatches.append(f"{name}: expected {want}, got {got}")

    if expected.route is not None:
        differ("route", expected.route, cert.route)
    rec = cert.factorizations[0] if cert.factorizations else None
    if expected.T is not None:
        got = _coefficients(rec.T_coeffs) if rec else "no factorization"
        differ("T", _coefficients(expected.T), got)
    if expected.Q is not None:
        got = _coefficients(rec.Q_coeffs) if rec else "no factorization"
        differ("Q", _coefficients(expected.Q), got)
    if expected.status is not None:
        differ("status", expected.status, certificate_status(cert))
    if expected.split is not None:
        differ("split", str(expected.split), str(cert.split.G) if cert.split else None)
    if expected.curve is not None:
        families = [curve.family for curve in cert.curves]
        differ("curve", expected.curve, families[0] if families else None)
    if expected.touch_points is not None:
        got = cert.touch_points.exact if cert.touch_points else None
        differ("touch_points", _coefficients(expected.touch_points), got and _coefficients(got))
    if expected.conclusion is not None:
        differ("conclusion", expected.conclusion, cert.conclusion.n_f_x0)
    return mismatches
