"""Services wrapping proofs, factorizations and corpus runs with logging and metrics."""

from tangent_prover.services.base import BaseService
from tangent_prover.services.corpus_service import CorpusService
from tangent_prover.services.prover_service import ProverService

__all__ = ["BaseService", "CorpusService", "ProverService"]
