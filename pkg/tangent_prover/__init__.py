"""Tangent Prover - separating-tangent prover for symmetric Jensen-type inequalities."""

__version__ = "0.1.0"
