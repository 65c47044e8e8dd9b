"""Command-line interface: ``cpfrechet <command> ...``.

Exit codes: 0 success, 2 bad flags, 3 unreadable or malformed curve files,
4 internal contract violation, 1 anything else.
"""

from __future__ import annotations

import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

import click

from .baseline import continuous_decide, continuous_frechet
from .bench import BenchConfig, dumps, parse_sizes, run_bench
from .curves import Curve, gen_cpacked, read_curve, write_curve
from .errors import ContractError, FrechetError, InputError, ParameterError
from .freespace import ENGINES, approximate_decide
from .onedim.greedy import tracing
from .plotting import render_freespace_svg
from .search import approximate_frechet

__all__ = ["main", "run", "EXIT_USAGE", "EXIT_FILE", "EXIT_CONTRACT"]

EXIT_USAGE = 2
EXIT_FILE = 3
EXIT_CONTRACT = 4

TRACE = 5
logging.addLevelName(TRACE, "TRACE")
_LOG_LEVELS = {"trace": TRACE, "debug": logging.DEBUG, "info": logging.INFO}


class FileProblem(click.ClickException):
    exit_code = EXIT_FILE


def _configure_logging() -> None:
    level = _LOG_LEVELS.get(os.environ.get("FRECHET_LOG", "").strip().lower(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def _load(path: str) -> Curve:
    try:
        return read_curve(path)
    except (OSError, UnicodeDecodeError) as exc:
        raise FileProblem(f"cannot read {path}: {exc}") from None
    except InputError as exc:
        raise FileProblem(str(exc)) from None


def _load_pair(a: str, b: str) -> tuple[Curve, Curve]:
    pi, sigma = _load(a), _load(b)
    if pi.dim != sigma.dim:
        raise FileProblem(f"dimension mismatch: {a} has {pi.dim}, {b} has {sigma.dim}")
    return pi, sigma


POSITIVE = click.FloatRange(min=0.0, min_open=True)
EPSILON = click.FloatRange(min=0.0, max=1.0, min_open=True)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Approximate and exact Fréchet distance tools for polygonal curves."""
    _configure_logging()


@main.command()
@click.argument("curve_a", type=click.Path())
@click.argument("curve_b", type=click.Path())
@click.option("--delta", type=POSITIVE, required=True, help="Distance threshold.")
@click.option("--eps", type=EPSILON, required=True, help="Approximation slack in (0, 1].")
@click.option("--engine", type=click.Choice(ENGINES), default="fast", show_default=True)
@click.option("--trace", is_flag=True, help="Also print visited greedy pairs as JSON lines (runs the reference engine).")
def decide(curve_a: str, curve_b: str, delta: float, eps: float, engine: str, trace: bool) -> None:
    """Print GT (distance > delta) or LE (distance <= (1+eps) delta), then a stats record."""
    pi, sigma = _load_pair(curve_a, curve_b)
    pairs: list[dict] = []
    if trace:
        with tracing(lambda p, q, kind: pairs.append({"p": p, "q": q, "step_kind": kind})):
            outcome = approximate_decide(pi, sigma, delta, eps, collect_stats=True, engine="reference")
    else:
        outcome = approximate_decide(pi, sigma, delta, eps, collect_stats=True, engine=engine)
    click.echo(str(outcome.verdict))
    stats = outcome.stats
    record = {
        "n": pi.n,
        "m": sigma.n,
        "delta": delta,
        "epsilon": eps,
        "S": stats.nonempty_boundary_cells,
        "piece_pair_sum": stats.piece_pair_size_sum,
        "N": stats.N,
        "cells_visited": outcome.work.cells,
        "piece_pairs_visited": outcome.work.piece_pairs,
    }
    click.echo(json.dumps(record, separators=(", ", ": ")))
    for row in pairs:
        click.echo(json.dumps(row, separators=(", ", ": ")))


@main.command()
@click.argument("curve_a", type=click.Path())
@click.argument("curve_b", type=click.Path())
@click.option("--eps", type=EPSILON, required=True)
def approx(curve_a: str, curve_b: str, eps: float) -> None:
    """Print ``value lower upper calls`` with ``value <= (1+eps) * distance``."""
    pi, sigma = _load_pair(curve_a, curve_b)
    click.echo(approximate_frechet(pi, sigma, eps).line())


@main.command()
@click.argument("curve_a", type=click.Path())
@click.argument("curve_b", type=click.Path())
@click.option("--delta", type=click.FloatRange(min=0.0), default=None, help="Decide instead of computing the value.")
@click.option("--rel-tol", type=click.FloatRange(min=0.0, max=1.0, min_open=True, max_open=True), default=1e-9,
              show_default=True)
def exact(curve_a: str, curve_b: str, delta: Optional[float], rel_tol: float) -> None:
    """Quadratic-time reference: ``true``/``false`` with --delta, otherwise the distance."""
    pi, sigma = _load_pair(curve_a, curve_b)
    if delta is not None:
        click.echo("true" if continuous_decide(pi, sigma, delta) else "false")
    else:
        click.echo(repr(continuous_frechet(pi, sigma, rel_tol=rel_tol)))


@main.command()
@click.option("--c", "c_target", type=POSITIVE, required=True, help="Target packedness.")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Number of vertices.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), required=True)
def gen(c_target: float, n: int, seed: int, out: str) -> None:
    """Write a random c-packed curve in the plain-text curve format."""
    curve = gen_cpacked(c_target, n, seed)
    try:
        write_curve(curve, out, header=f"c-packed curve: c={c_target} n={n} seed={seed}")
    except OSError as exc:
        raise FileProblem(f"cannot write {out}: {exc}") from None


def _sizes(ctx, param, value: str) -> list[int]:
    try:
        return parse_sizes(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


@main.command()
@click.option("--family", type=click.Choice(["cpacked"]), default="cpacked", show_default=True)
@click.option("--c", "c_target", type=POSITIVE, required=True)
@click.option("--sizes", callback=_sizes, required=True, help="Comma-separated sizes such as 1k,2k,4k.")
@click.option("--eps", type=EPSILON, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--delta", type=POSITIVE, default=BenchConfig.delta, show_default=True)
@click.option("--no-time", is_flag=True, help="Skip the timed decider call (wall_time_ns = 0).")
def bench(family: str, c_target: float, sizes: list[int], eps: float, seed: int, delta: float, no_time: bool) -> None:
    """One JSON line of complexity counts per size."""
    cfg = BenchConfig(delta=delta)
    for record in run_bench(c_target, sizes, eps, seed=seed, config=cfg, time_decide=not no_time):
        click.echo(dumps(record))


@main.command("plot-freespace")
@click.argument("curve_a", type=click.Path())
@click.argument("curve_b", type=click.Path())
@click.option("--delta", type=POSITIVE, required=True)
@click.option("--eps", type=EPSILON, default=1.0, show_default=True, help="Sets the piece radius for the outlines.")
@click.option("--out", type=click.Path(), required=True)
def plot_freespace(curve_a: str, curve_b: str, delta: float, eps: float, out: str) -> None:
    """Render the free space at ``delta`` as SVG."""
    pi, sigma = _load_pair(curve_a, curve_b)
    svg = render_freespace_svg(pi, sigma, delta, eps)
    try:
        Path(out).write_text(svg, encoding="utf-8")
    except OSError as exc:
        raise FileProblem(f"cannot write {out}: {exc}") from None


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI on ``argv`` and return the exit code instead of exiting."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        main.main(args=args, prog_name="cpfrechet", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except ParameterError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except ContractError as exc:
        click.echo(f"internal contract violation: {exc}", err=True)
        return EXIT_CONTRACT
    except FrechetError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


def entry_point() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry_point()
