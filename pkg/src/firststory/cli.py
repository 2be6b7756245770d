"""Command-line interface for FirstStory.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

import importlib
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from firststory import __version__
from firststory.core.config import settings
from firststory.core.exceptions import DegenerateParamsError, FirstStoryError
from firststory.core.logging import configure_logging, get_logger
from firststory.extractors.synthetic_stream import generate_synthetic
from firststory.models.detection import DetectorConfig, LshParams, WeightingMode
from firststory.models.evaluation import CostParams
from firststory.models.synthetic import SynthConfig
from firststory.pipeline.orchestrator import ComparisonSummary, DetectionSummary, ExperimentOrchestrator
from firststory.storage.stream_files import write_stream
from firststory.transformers.text_preprocessor import load_stopwords

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

app = typer.Typer(
    name="firststory",
    help="FirstStory - streaming first story detection with incremental TF-IDF and LSH",
    add_completion=False,
)
console = Console()
err_console = Console(stderr=True)
logger = get_logger("cli")

# Newer typer releases ship their own copy of click; take the exception
# classes from whichever module typer raises.
_click_errors = importlib.import_module(typer.BadParameter.__module__)


@app.callback()
def configure(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Override the configured log level"),
) -> None:
    """Streaming first story detection."""
    configure_logging(log_level)


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Translate configuration and data failures into CLI exit codes."""
    try:
        yield
    except (ValidationError, DegenerateParamsError) as e:
        err_console.print(f"[bold red]Invalid parameters:[/bold red] {e}")
        raise typer.Exit(EXIT_USAGE)
    except (FirstStoryError, OSError) as e:
        err_console.print(f"[bold red]Data error:[/bold red] {e}")
        logger.error("Command failed", error_type=type(e).__name__, error=str(e))
        raise typer.Exit(EXIT_DATA)
    except ValueError as e:
        err_console.print(f"[bold red]Invalid parameters:[/bold red] {e}")
        raise typer.Exit(EXIT_USAGE)


def _lsh_params(
    k: int,
    tables: Optional[int],
    phi: Optional[float],
    pcoll: Optional[float],
    seed: int,
) -> LshParams:
    if tables is not None and (phi is not None or pcoll is not None):
        raise typer.BadParameter("cannot be combined with --phi/--pcoll", param_hint="--tables")
    if tables is None and phi is None and pcoll is None and settings.lsh_tables is not None:
        tables = settings.lsh_tables
    if tables is not None:
        return LshParams(bits=k, tables=tables, seed=seed)
    return LshParams.planned(
        phi if phi is not None else settings.lsh_phi,
        pcoll if pcoll is not None else settings.lsh_p_collision,
        bits=k,
        seed=seed,
    )


def _orchestrator(stopwords: Optional[Path]) -> ExperimentOrchestrator:
    path = stopwords or (Path(settings.stopwords_path) if settings.stopwords_path else None)
    return ExperimentOrchestrator(stoplist=load_stopwords(path))


def _print_detection(summary: DetectionSummary) -> None:
    table = Table(title="Detection Run")
    table.add_column("Metric", style="cyan", no_wrap=True)
    table.add_column("Value", style="green")
    table.add_row("Mode", summary.mode.value + (" (oracle)" if summary.oracle else ""))
    table.add_row("Documents", str(summary.documents))
    table.add_row("Novel", str(summary.novel))
    table.add_row("Empty", str(summary.empty))
    table.add_row("Indexed", str(summary.indexed))
    if not summary.oracle:
        table.add_row("Tables (L)", str(summary.tables))
    table.add_row("Mean candidates", f"{summary.mean_candidates:.1f}")
    table.add_row("Output", summary.output_path)
    console.print(table)


def _print_comparison(comparison: ComparisonSummary) -> None:
    table = Table(title=f"Static vs Incremental (after {comparison.train_prefix} training documents)")
    table.add_column("Mode", style="cyan", no_wrap=True)
    table.add_column("Threshold", justify="right")
    table.add_column("P(miss)", justify="right", style="green")
    table.add_column("P(fa)", justify="right", style="green")
    table.add_column("Cost", justify="right", style="yellow")
    table.add_column("DET CSV")
    for mode, result in comparison.results.items():
        point = result.min_cost
        table.add_row(
            mode.value,
            f"{point.threshold:.4f}",
            f"{point.p_miss:.2%}",
            f"{point.p_fa:.2%}",
            f"{point.cost_norm:.4f}",
            result.det_out or "-",
        )
    console.print(table)

    reduction = comparison.relative_miss_reduction
    if reduction is None:
        console.print("Relative miss reduction: [yellow]n/a (static mode misses nothing)[/yellow]")
    else:
        console.print(f"Relative miss reduction: [bold]{reduction:.1%}[/bold]")


@app.command()
def info() -> None:
    """Display the effective configuration."""
    table = Table(title="FirstStory Configuration")
    table.add_column("Setting", style="cyan", no_wrap=True)
    table.add_column("Value", style="green")

    table.add_row("Version", __version__)
    table.add_row("Debug Mode", str(settings.debug))
    table.add_row("Log Level", settings.log_level)

    table.add_row("Weighting Mode", settings.mode.value)
    table.add_row("Threshold", str(settings.threshold))
    table.add_row("Batch Size", str(settings.batch_size))
    table.add_row("Training Prefix", str(settings.train_prefix))
    table.add_row("Stopwords", settings.stopwords_path or "(packaged English list)")

    table.add_row("LSH Bits (k)", str(settings.lsh_bits))
    if settings.lsh_tables is not None:
        table.add_row("LSH Tables (L)", str(settings.lsh_tables))
    else:
        with _exit_codes():
            planned = LshParams.planned(settings.lsh_phi, settings.lsh_p_collision, bits=settings.lsh_bits)
        table.add_row(
            "LSH Tables (L)",
            f"{planned.tables} (phi={settings.lsh_phi}, pcoll={settings.lsh_p_collision})",
        )

    table.add_row("Cost (miss / fa / p_target)", f"{settings.c_miss} / {settings.c_fa} / {settings.p_target}")
    console.print(table)


@app.command()
def detect(
    input: Path = typer.Option(..., "--input", help="Stream file (JSON lines)"),
    output: Path = typer.Option(..., "--output", help="Verdict file to write"),
    mode: WeightingMode = typer.Option(settings.mode, "--mode", help="Weighting mode"),
    train_prefix: int = typer.Option(settings.train_prefix, "--train-prefix", help="Training prefix length"),
    threshold: float = typer.Option(settings.threshold, "--threshold", help="Novelty threshold"),
    k: int = typer.Option(settings.lsh_bits, "--k", help="Bits per LSH signature"),
    tables: Optional[int] = typer.Option(None, "--tables", help="Number of hash tables (excludes --phi/--pcoll)"),
    phi: Optional[float] = typer.Option(None, "--phi", help="Tolerated neighbour miss probability"),
    pcoll: Optional[float] = typer.Option(None, "--pcoll", help="Per-hyperplane collision probability"),
    batch_size: int = typer.Option(settings.batch_size, "--batch-size", help="Incremental update batch size"),
    seed: int = typer.Option(settings.seed, "--seed", help="Hyperplane seed"),
    stopwords: Optional[Path] = typer.Option(None, "--stopwords", help="Custom stopword file"),
) -> None:
    """Label every document of a stream as a first story or a follow-up."""
    with _exit_codes():
        config = DetectorConfig(
            threshold=threshold,
            lsh=_lsh_params(k, tables, phi, pcoll, seed),
            weighting_mode=mode,
            batch_size=batch_size,
            train_prefix=train_prefix,
        )
        summary = _orchestrator(stopwords).run_detection(input, output, config)
    _print_detection(summary)


@app.command()
def oracle(
    input: Path = typer.Option(..., "--input", help="Stream file (JSON lines)"),
    output: Path = typer.Option(..., "--output", help="Verdict file to write"),
    mode: WeightingMode = typer.Option(settings.mode, "--mode", help="Weighting mode"),
    train_prefix: int = typer.Option(settings.train_prefix, "--train-prefix", help="Training prefix length"),
    threshold: float = typer.Option(settings.threshold, "--threshold", help="Novelty threshold"),
    batch_size: int = typer.Option(settings.batch_size, "--batch-size", help="Incremental update batch size"),
    stopwords: Optional[Path] = typer.Option(None, "--stopwords", help="Custom stopword file"),
) -> None:
    """Exact nearest-neighbour detector: compares every document with all earlier ones."""
    with _exit_codes():
        config = DetectorConfig(
            threshold=threshold,
            weighting_mode=mode,
            batch_size=batch_size,
            train_prefix=train_prefix,
        )
        summary = _orchestrator(stopwords).run_detection(input, output, config, oracle=True)
    _print_detection(summary)


@app.command()
def evaluate(
    verdicts: Path = typer.Option(..., "--verdicts", help="Verdict file"),
    truth: Path = typer.Option(..., "--truth", help="Labelled stream file"),
    det_out: Path = typer.Option(..., "--det-out", help="DET curve CSV to write"),
    c_miss: float = typer.Option(settings.c_miss, "--c-miss", help="Cost of a miss"),
    c_fa: float = typer.Option(settings.c_fa, "--c-fa", help="Cost of a false alarm"),
    p_target: float = typer.Option(settings.p_target, "--p-target", help="Prior probability of a first story"),
    skip: int = typer.Option(0, "--skip", help="Leading verdicts (training prefix) to leave out"),
) -> None:
    """Score verdicts against ground truth and write the DET curve."""
    with _exit_codes():
        cost = CostParams(c_miss=c_miss, c_fa=c_fa, p_target=p_target)
        summary = ExperimentOrchestrator().run_evaluation(verdicts, truth, det_out, cost, skip=skip)

    point = summary.min_cost
    table = Table(title="Evaluation")
    table.add_column("Metric", style="cyan", no_wrap=True)
    table.add_column("Value", style="green")
    table.add_row("Scored documents", f"{summary.scored} ({summary.new_count} new, {summary.old_count} old)")
    table.add_row("Min-cost threshold", f"{point.threshold:.4f}")
    table.add_row("P(miss)", f"{point.p_miss:.2%}")
    table.add_row("P(fa)", f"{point.p_fa:.2%}")
    table.add_row("Normalized cost", f"{point.cost_norm:.4f}")
    table.add_row("DET points", f"{summary.det_points} -> {summary.det_out}")
    console.print(table)


@app.command()
def synth(
    out: Path = typer.Option(..., "--out", help="Stream file to write"),
    docs: int = typer.Option(..., "--docs", help="Number of documents"),
    events: int = typer.Option(..., "--events", help="Number of first stories"),
    vocab: int = typer.Option(settings.synth_vocab, "--vocab", help="Base vocabulary size"),
    drift: float = typer.Option(settings.synth_drift, "--drift", help="Fresh-term replacement rate"),
    noise: float = typer.Option(settings.synth_noise, "--noise", help="Follow-up token re-draw rate"),
    seed: int = typer.Option(settings.seed, "--seed", help="Generator seed"),
) -> None:
    """Generate a labelled synthetic stream."""
    with _exit_codes():
        config = SynthConfig(
            n_docs=docs,
            n_events=events,
            vocab_size=vocab,
            drift_rate=drift,
            duplicate_noise=noise,
            seed=seed,
        )
        count = write_stream(out, generate_synthetic(config))
    console.print(f"✅ Wrote [bold]{count}[/bold] documents ({events} events) to {out}")


@app.command()
def compare(
    input: Path = typer.Option(..., "--input", help="Labelled stream file"),
    det_dir: Path = typer.Option(..., "--det-dir", help="Directory for det_static.csv and det_incremental.csv"),
    train_prefix: int = typer.Option(..., "--train-prefix", help="Training prefix length"),
    threshold: float = typer.Option(settings.threshold, "--threshold", help="Novelty threshold"),
    k: int = typer.Option(settings.lsh_bits, "--k", help="Bits per LSH signature"),
    tables: Optional[int] = typer.Option(None, "--tables", help="Number of hash tables (excludes --phi/--pcoll)"),
    phi: Optional[float] = typer.Option(None, "--phi", help="Tolerated neighbour miss probability"),
    pcoll: Optional[float] = typer.Option(None, "--pcoll", help="Per-hyperplane collision probability"),
    batch_size: int = typer.Option(settings.batch_size, "--batch-size", help="Incremental update batch size"),
    seed: int = typer.Option(settings.seed, "--seed", help="Hyperplane seed"),
    stopwords: Optional[Path] = typer.Option(None, "--stopwords", help="Custom stopword file"),
    c_miss: float = typer.Option(settings.c_miss, "--c-miss", help="Cost of a miss"),
    c_fa: float = typer.Option(settings.c_fa, "--c-fa", help="Cost of a false alarm"),
    p_target: float = typer.Option(settings.p_target, "--p-target", help="Prior probability of a first story"),
) -> None:
    """Run static and incremental weighting on one stream and compare their best operating points."""
    with _exit_codes():
        config = DetectorConfig(
            threshold=threshold,
            lsh=_lsh_params(k, tables, phi, pcoll, seed),
            batch_size=batch_size,
            train_prefix=train_prefix,
        )
        cost = CostParams(c_miss=c_miss, c_fa=c_fa, p_target=p_target)
        comparison = _orchestrator(stopwords).run_comparison(input, det_dir, config, cost)
    _print_comparison(comparison)


def main(argv: Optional[List[str]] = None) -> int:
    """Console entry point returning the process exit code."""
    command = typer.main.get_command(app)
    try:
        result = command.main(args=argv, prog_name="firststory", standalone_mode=False)
    except typer.Exit as e:
        return e.exit_code
    except _click_errors.UsageError as e:
        e.show()
        return EXIT_USAGE
    except _click_errors.ClickException as e:
        e.show()
        return EXIT_DATA
    except typer.Abort:
        err_console.print("Aborted.")
        return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
