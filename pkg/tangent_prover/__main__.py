"""Entry point: ``python -m tangent_prover`` runs the ``prover`` command line."""

from tangent_prover.cli import app

if __name__ == "__main__":
    app(prog_name="prover")
