"""Sign certificates, certified minima and numeric evidence."""

from tangent_prover.certify.evidence import convexity_profile, numeric_evidence
from tangent_prover.certify.minimum import certified_min
from tangent_prover.certify.models import (
    ConvexityProfile,
    EvidenceReport,
    EvidenceVerdict,
    Interval,
    MinimumCandidate,
    MinimumReport,
    RootReport,
    SignCertificate,
    SignVerdict,
    Witness,
)
from tangent_prover.certify.sturm import (
    certify_sign,
    count_real_roots,
    isolate_real_roots,
    sign_variations,
    sturm_chain,
)

__all__ = [
    "ConvexityProfile",
    "EvidenceReport",
    "EvidenceVerdict",
    "Interval",
    "MinimumCandidate",
    "MinimumReport",
    "RootReport",
    "SignCertificate",
    "SignVerdict",
    "Witness",
    "certified_min",
    "certify_sign",
    "convexity_profile",
    "count_real_roots",
    "isolate_real_roots",
    "numeric_evidence",
    "sign_variations",
    "sturm_chain",
]
