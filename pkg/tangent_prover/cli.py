"""Command-line interface: ``prover prove | corpus | factor``.

Exit codes: 0 exact proof, 1 input error, 2 numeric evidence only, 3 failure.
"""

import asyncio
import logging
import sys
from pathlib import Path
from typing import Annotated

import typer
from rich.console import Console

from tangent_prover.config import Settings, get_settings
from tangent_prover.constants import EXIT_EXACT, EXIT_FAILURE, EXIT_INPUT_ERROR, EXIT_NUMERIC_ONLY
from tangent_prover.core.errors import ProverError
from tangent_prover.core.metrics import export_metrics
from tangent_prover.jensen.models import ProofCertificate
from tangent_prover.report import (
    render_certificate,
    render_corpus,
    render_factorization,
    render_verification,
)
from tangent_prover.services.corpus_service import CorpusService
from tangent_prover.services.prover_service import ProverService

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="prover",
    help="Separating-tangent prover for symmetric Jensen-type inequalities.",
    no_args_is_help=True,
)
console = Console()
err_console = Console(stderr=True)


def _settings(numeric_tol: float | None = None, seed: int | None = None) -> Settings:
    update: dict[str, float | int] = {}
    if numeric_tol is not None:
        update["numeric_tol"] = numeric_tol
    if seed is not None:
        update["default_seed"] = seed
    settings = get_settings()
    return settings.model_copy(update=update) if update else settings


def exit_code(cert: ProofCertificate) -> int:
    if cert.is_exact:
        return EXIT_EXACT
    if cert.is_numeric:
        return EXIT_NUMERIC_ONLY
    return EXIT_FAILURE


def _fail(error: ProverError) -> typer.Exit:
    err_console.print(f"{error.error}: {error.message}", markup=False, highlight=False)
    return typer.Exit(code=EXIT_INPUT_ERROR if error.input_error else EXIT_FAILURE)


@app.callback()
def main(ctx: typer.Context) -> None:
    settings = get_settings()
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )
    if settings.metrics_textfile:
        ctx.call_on_close(lambda: export_metrics(settings.metrics_textfile))


@app.command()
def prove(
    path: Annotated[Path, typer.Argument(help="Problem file")],
    json_out: Annotated[
        Path | None, typer.Option("--json", help="Write the JSON certificate here")
    ] = None,
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Show all candidates")] = False,
    numeric_tol: Annotated[
        float | None, typer.Option("--numeric-tol", help="Numeric evidence tolerance")
    ] = None,
    seed: Annotated[
        int | None, typer.Option("--seed", help="Seed echoed into the certificate")
    ] = None,
) -> None:
    """Prove one problem file and print the proof narrative."""
    service = ProverService(_settings(numeric_tol, seed))
    try:
        problem = service.load(path).problem
        cert = service.prove(problem)
    except ProverError as e:
        raise _fail(e) from e

    render_certificate(cert, console, verbose=verbose)
    if verbose:
        render_verification(service.verify(cert), console)
    if json_out is not None:
        json_out.write_text(cert.model_dump_json(indent=2), encoding="utf-8")
        logger.info(f"Certificate written to {json_out}")
    raise typer.Exit(code=exit_code(cert))


@app.command()
def corpus(
    filter_id: Annotated[
        str | None, typer.Option("--filter", help="Run only entries whose id contains this")
    ] = None,
    report: Annotated[
        Path | None, typer.Option("--report", help="Write the machine-readable report here")
    ] = None,
) -> None:
    """Run the built-in corpus and compare against the expected values."""
    service = CorpusService(_settings())
    try:
        result = asyncio.run(service.run(filter_id))
    except ProverError as e:
        raise _fail(e) from e

    render_corpus(result, console)
    if report is not None:
        report.write_text(result.model_dump_json(indent=2), encoding="utf-8")
    raise typer.Exit(code=EXIT_EXACT if result.all_passed else EXIT_FAILURE)


@app.command()
def factor(
    fn: Annotated[str, typer.Argument(help="Rational function f")],
    curve: Annotated[str, typer.Argument(help="Rational curve g tangent to f at x0")],
    x0: Annotated[str, typer.Argument(help="Touch point, an exact rational")],
) -> None:
    """Factor f - g = (x - x0)^2 * T / Qden exactly."""
    service = ProverService(_settings())
    try:
        rec = service.factor(fn, curve, x0)
    except ProverError as e:
        raise _fail(e) from e
    render_factorization(rec, console)
