"""Plain-text proof narratives and corpus tables rendered with rich."""

from rich.console import Console
from rich.table import Table

from tangent_prover.corpus.models import CorpusReport
from tangent_prover.jensen.models import Factorization, ProofCertificate, VerificationReport

SYMBOLS = {"ge": "≥", "le": "≤"}

ROUTE_TITLES = {
    "Theorem1": "separating curve over the whole domain",
    "Theorem2Split": "separating curve with a split domain",
    "Theorem3Tangent": "tangent line closed by power-mean monotonicity",
    "Theorem4PowerCurve": "power curve closed by power-mean monotonicity",
    "Theorem5Cubic": "cubic conditions",
    "Case2Heterogeneous": "per-function tangents with a common slope",
    "SingleVariable": "single variable",
    "NumericEvidenceOnly": "numeric evidence only",
    "Failure": "no proof found",
}


def _say(console: Console, text: str, style: str | None = None) -> None:
    console.print(text, style=style, markup=False, highlight=False)


def _lead(cert: ProofCertificate) -> str:
    return "Σ f_j(x_j)" if len(set(cert.functions)) > 1 else "Σ f(x_j)"


def factorization_line(rec: Factorization) -> str:
    return f"f - g = (x - {rec.x0})^2 * ({rec.T_text}) / ({rec.Q_text})"


def render_certificate(cert: ProofCertificate, console: Console, verbose: bool = False) -> None:
    """Proof narrative: statement, curve, factorization, sign argument, conclusion."""
    console.print(f"[bold]{cert.problem_id}[/bold]: {ROUTE_TITLES[cert.route]} ({cert.route})")
    fs = "; ".join(dict.fromkeys(cert.functions))
    _say(console, f"  f = {fs}, n = {cert.n}, x in {cert.domain}")
    if cert.constraint is not None:
        _say(console, f"  constraint: {cert.constraint.describe()}")
    if cert.effective_domain is not None and cert.effective_domain != cert.domain:
        _say(console, f"  reachable window: {cert.effective_domain}")
    if cert.touch_point is not None:
        _say(console, f"  touch point x0 = {cert.touch_point}")
    if cert.touch_points is not None:
        points = cert.touch_points.exact or cert.touch_points.points
        _say(console, f"  touch points {', '.join(str(p) for p in points)}")

    for curve in cert.curves:
        _say(console, f"  curve: {curve.describe()}")
    for rec in cert.factorizations:
        _say(console, f"  {factorization_line(rec)}")
    for sc in cert.sign_certs:
        line = f"  {sc.label or 'p'} = {sc.polynomial.to_text()} is {sc.verdict} on {sc.interval}"
        if sc.witness is not None:
            line += f" (negative at {sc.witness.negative_at}, positive at {sc.witness.positive_at})"
        _say(console, line)
    if cert.split is not None:
        split = cert.split
        _say(
            console,
            f"  on G = {split.G}: min = {split.min_G}; on the domain: min = {split.min_I}; "
            f"{split.min_G} + (n-1)*{split.min_I} = {split.combined} ≥ {split.required}",
        )
    if cert.theorem5 is not None:
        t5 = cert.theorem5
        _say(
            console,
            f"  sigma*f = {t5.a}x^3 + {t5.b}x^2 + {t5.c}x + {t5.d}: "
            f"{t5.condition_left} ≥ {t5.condition_right}",
        )
    if cert.closure is not None:
        _say(console, f"  closure: {cert.closure.statement}")
    for report in cert.numeric_evidence:
        _say(
            console,
            f"  {report.g}: {report.verdict} on {report.interval}, min gap {report.min_gap:.3g} "
            f"({report.flag})",
        )
    if verbose or cert.route == "Failure":
        for d in cert.diagnostics:
            witness = f", witness x = {d.witness}" if d.witness is not None else ""
            _say(console, f"  {d.family}: {d.outcome} {d.detail}{witness}", style="dim")

    conclusion = cert.conclusion
    if cert.route == "Failure":
        console.print("[red]No proof.[/red]")
        return
    value = conclusion.n_f_x0 if conclusion.n_f_x0 is not None else f"{conclusion.value:.12g}"
    if conclusion.bound_implied:
        _say(console, f"  {conclusion.statement}")
    _say(console, f"Therefore {_lead(cert)} {SYMBOLS[cert.direction]} {value}")


def render_verification(report: VerificationReport, console: Console) -> None:
    status = "[green]ok[/green]" if report.ok else "[red]failed[/red]"
    console.print(f"Independent check: {status} ({len(report.checks)} checks)")
    for check in report.failures:
        _say(console, f"  {check.name}: {check.detail}", style="red")


def render_factorization(rec: Factorization, console: Console) -> None:
    _say(console, factorization_line(rec))
    _say(console, f"T = {rec.T_text}")
    _say(console, f"Qden = {rec.Q_text}")


def render_corpus(report: CorpusReport, console: Console) -> None:
    table = Table(title="Corpus")
    table.add_column("id")
    table.add_column("route")
    table.add_column("expected")
    table.add_column("verified")
    table.add_column("oracle")
    table.add_column("result")
    for r in report.results:
        oracle = "-" if r.oracle is None else f"{r.oracle.violations}/{r.oracle.evaluated}"
        result = "[green]pass[/green]" if r.passed else "[red]FAIL[/red]"
        table.add_row(
            r.problem_id,
            r.route or (r.error.error if r.error else "-"),
            r.expected_route or "-",
            "yes" if r.verified else "no",
            oracle,
            result,
        )
    console.print(table)
    for r in report.results:
        for mismatch in r.mismatches:
            _say(console, f"{r.problem_id}: {mismatch}")
        for failed in r.failed_checks:
            _say(console, f"{r.problem_id}: check {failed}")
        if r.error is not None:
            _say(console, f"{r.problem_id}: {r.error.error}: {r.error.message}")
    console.print(f"{report.passed}/{len(report.results)} pass in {report.seconds:.2f}s")
