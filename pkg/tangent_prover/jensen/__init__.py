"""Jensen-type inequality proofs, certificates and their independent checks."""

from tangent_prover.jensen.homogeneous import check_homogeneous, normalize_homogeneous
from tangent_prover.jensen.models import (
    CandidateDiagnostic,
    Conclusion,
    ExtremeReport,
    Factorization,
    HomogeneousSpec,
    OracleReport,
    ProblemSpec,
    ProofCertificate,
    Route,
    VerificationReport,
)
from tangent_prover.jensen.oracle import jensen_oracle, sample_extreme
from tangent_prover.jensen.prover import prove
from tangent_prover.jensen.theorems import (
    auto_split,
    factor_curve,
    prove_theorem1,
    prove_with_split,
    theorem5_cubic,
)
from tangent_prover.jensen.touchpoints import prove_case2, solve_touchpoints
from tangent_prover.jensen.verifier import check_sign_certificate, verify_certificate

__all__ = [
    "CandidateDiagnostic",
    "Conclusion",
    "ExtremeReport",
    "Factorization",
    "HomogeneousSpec",
    "OracleReport",
    "ProblemSpec",
    "ProofCertificate",
    "Route",
    "VerificationReport",
    "auto_split",
    "check_homogeneous",
    "check_sign_certificate",
    "factor_curve",
    "jensen_oracle",
    "normalize_homogeneous",
    "prove",
    "prove_case2",
    "prove_theorem1",
    "prove_with_split",
    "sample_extreme",
    "solve_touchpoints",
    "theorem5_cubic",
    "verify_certificate",
]
