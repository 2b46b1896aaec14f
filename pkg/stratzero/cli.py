"""
stratzero command line.

Commands read game files (see services.game_file), print a report on
stdout and log to stderr. Exit codes: 0 on success whatever the verdict,
2 on unreadable input or bad arguments, 3 when an internal certificate
fails.
"""

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

import typer

from stratzero import __version__
from stratzero.constants import (
    DEFAULT_BENCH_REPS,
    DEFAULT_BENCH_SIZES,
    EXIT_INVARIANT_BREACH,
    EXIT_PARSE_ERROR,
    ArithmeticMode,
    Family,
    NonEquivalentKind,
    GameReportFormat,
    ReportFormat,
)
from stratzero.errors import InvariantBreach, StratZeroError
from stratzero.logging_config import command_var, game_var, setup_logging
from stratzero.metrics import get_metrics
from stratzero.services.bench import bench_run
from stratzero.services.game_file import read_game_file, render_game_file
from stratzero.services.gamegen import gen_non_equivalent, gen_pat_zero_sum, gen_pure_ne
from stratzero.services.nash import solve_strat_ne, support_enumeration
from stratzero.services.reports import bench_csv, bench_summary_table, emit_report, oracle_document
from stratzero.services.ser0 import classify

logger = logging.getLogger("stratzero.cli")

app = typer.Typer(
    name="stratzero",
    help="Detect and solve bimatrix games strategically equivalent to zero-sum games.",
    no_args_is_help=True,
    add_completion=False,
)

GameArg = typer.Argument(..., exists=True, dir_okay=False, readable=True, help="Game file")
FormatOpt = typer.Option(GameReportFormat.HUMAN, "--format", "-f", help="Report format")


@dataclass
class CliState:
    metrics_out: Path | None = None


def _version_callback(value: bool) -> None:
    if value:
        typer.echo(f"stratzero {__version__}")
        raise typer.Exit()


@app.callback()
def main_callback(
    ctx: typer.Context,
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level"),
    log_format: str | None = typer.Option(None, "--log-format", help="human or json (default from settings)"),
    metrics_out: Path | None = typer.Option(None, "--metrics-out", help="Write Prometheus metrics here on exit"),
    version: bool = typer.Option(False, "--version", callback=_version_callback, is_eager=True),
) -> None:
    if log_format not in (None, "human", "json"):
        raise typer.BadParameter("must be 'human' or 'json'", param_hint="--log-format")
    setup_logging("DEBUG" if verbose else None, log_format)
    ctx.obj = CliState(metrics_out=metrics_out)
    ctx.call_on_close(lambda: _write_metrics(ctx.obj))


def _write_metrics(state: CliState) -> None:
    if state.metrics_out is not None:
        state.metrics_out.write_bytes(get_metrics())


@contextmanager
def _command(name: str, game: Path | None = None) -> Iterator[None]:
    """Set log context for the command and translate library errors into exit codes."""
    command_token = command_var.set(name)
    game_token = game_var.set(str(game) if game else "")
    try:
        yield
    except InvariantBreach as e:
        logger.exception("internal certificate failed")
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_INVARIANT_BREACH) from e
    except StratZeroError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_PARSE_ERROR) from e
    finally:
        command_var.reset(command_token)
        game_var.reset(game_token)


def _echo(text: str) -> None:
    typer.echo(text, nl=False)


@app.command()
def check(game_file: Path = GameArg, fmt: GameReportFormat = FormatOpt) -> None:
    """Classify a game and show the equivalent zero-sum game when one exists."""
    with _command("check", game_file):
        report = classify(read_game_file(game_file))
        logger.info("verdict: %s", report.verdict)
        _echo(emit_report(report, ReportFormat(fmt.value), command="check"))


@app.command(name="classify")
def classify_command(game_file: Path = GameArg, fmt: GameReportFormat = FormatOpt) -> None:
    """Like check, plus the strictly-competitive flag."""
    with _command("classify", game_file):
        report = classify(read_game_file(game_file))
        logger.info("verdict: %s", report.verdict)
        _echo(emit_report(report, ReportFormat(fmt.value), command="classify"))


@app.command()
def solve(game_file: Path = GameArg, fmt: GameReportFormat = FormatOpt) -> None:
    """Find a Nash equilibrium through strategic equivalence."""
    with _command("solve", game_file):
        outcome = solve_strat_ne(read_game_file(game_file))
        logger.info("solve status: %s", outcome.status)
        _echo(emit_report(outcome, ReportFormat(fmt.value)))


@app.command()
def oracle(
    game_file: Path = GameArg,
    max_support: int | None = typer.Option(None, "--max-support", "-k", help="Largest support size tried"),
    fmt: GameReportFormat = FormatOpt,
) -> None:
    """Enumerate equilibria by support enumeration (small games only)."""
    with _command("oracle", game_file):
        game = read_game_file(game_file)
        profiles = support_enumeration(game.a_tilde, game.b_tilde, max_support)
        k = max_support if max_support is not None else min(game.m, game.n)
        _echo(emit_report(oracle_document(profiles, game.m, game.n, k), ReportFormat(fmt.value)))


def _parse_family(value: str) -> Family:
    try:
        return Family.from_cli(value.strip())
    except ValueError as e:
        choices = ", ".join(f.value.replace("_", "-") for f in Family)
        raise typer.BadParameter(f"unknown family {value!r} (choose from {choices})") from e


@app.command()
def gen(
    family: str = typer.Option(..., "--family", help="equivalent, pure-ne or non-equivalent"),
    m: int = typer.Option(..., "--m", min=1, help="Rows"),
    n: int = typer.Option(..., "--n", min=1, help="Columns"),
    seed: int = typer.Option(0, "--seed"),
    kind: NonEquivalentKind | None = typer.Option(None, "--kind", help="Non-equivalent sub-family"),
    out: Path | None = typer.Option(None, "--out", "-o", help="Output file (default stdout)"),
) -> None:
    """Generate a game file from one of the benchmark families."""
    chosen = _parse_family(family)
    with _command("gen"):
        comment = f"family={chosen} m={m} n={n} seed={seed}"
        match chosen:
            case Family.EQUIVALENT:
                game, truth = gen_pat_zero_sum(m, n, seed)
                comment += f" expected_gamma={truth.expected_gamma}"
            case Family.PURE_NE:
                game = gen_pure_ne(m, n, seed)
            case Family.NON_EQUIVALENT:
                game = gen_non_equivalent(m, n, seed, kind=kind)

        text = render_game_file(game, comment=comment)
        if out is None:
            _echo(text)
        else:
            out.write_text(text, encoding="utf-8")
            logger.info("wrote %dx%d %s game to %s", m, n, chosen, out)


def _parse_sizes(value: str) -> list[tuple[int, int]]:
    """'256,512' -> square sizes; 'MxN' entries give rectangular ones."""
    sizes = []
    for token in value.split(","):
        token = token.strip().lower()
        try:
            if "x" in token:
                m_text, n_text = token.split("x", 1)
                size = (int(m_text), int(n_text))
            else:
                size = (int(token), int(token))
        except ValueError as e:
            raise typer.BadParameter(f"bad size {token!r}", param_hint="--sizes") from e
        if min(size) < 2:
            raise typer.BadParameter(f"sizes must be at least 2, got {token!r}", param_hint="--sizes")
        sizes.append(size)
    return sizes


@app.command()
def bench(
    sizes: str = typer.Option(",".join(map(str, DEFAULT_BENCH_SIZES)), "--sizes", help="e.g. 256,512 or 100x200"),
    reps: int = typer.Option(DEFAULT_BENCH_REPS, "--reps", min=1),
    families: str = typer.Option("equivalent,pure-ne,non-equivalent", "--families"),
    seed: int = typer.Option(0, "--seed"),
    mode: ArithmeticMode = typer.Option(ArithmeticMode.EXACT, "--mode"),
    workers: int | None = typer.Option(None, "--workers", min=1, help="Thread pool size"),
    csv_path: Path | None = typer.Option(None, "--csv", help="Write records here (default stdout)"),
    summary: bool = typer.Option(False, "--summary", help="Print mean/std/median per group"),
) -> None:
    """Time classification over generated games and emit CSV records."""
    parsed_sizes = _parse_sizes(sizes)
    parsed_families = [_parse_family(f) for f in families.split(",") if f.strip()]
    with _command("bench"):
        records = bench_run(parsed_sizes, reps, parsed_families, seed, mode, workers)
        if csv_path is not None:
            csv_path.write_text(bench_csv(records), encoding="utf-8")
            logger.info("wrote %d records to %s", len(records), csv_path)
        else:
            _echo(bench_csv(records))
        if summary:
            typer.echo(bench_summary_table(records), nl=False, err=csv_path is None)


def main() -> None:
    app()


if __name__ == "__main__":
    main()
