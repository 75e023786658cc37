"""Command-line entrypoint.

Exit status: 0 on success, 1 when verification finds a counterexample, 2 on
malformed input, class mismatches or bad flags.
"""
import functools
import logging
import sys
from pathlib import Path
from typing import Any, Callable

import click
import pandas as pd
import structlog
from pydantic import ValidationError
from rich.console import Console

from ncps.coefficients import CoefficientRing, parse_rational
from ncps.combinatorics import check_word, format_word
from ncps.constants import (
    DEFAULT_ALPHABET,
    DEFAULT_DEGREE,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    NC_CAP,
    OPERATIONS,
    ORACLES,
    TREE_CAP,
)
from ncps.cumulants import (
    CumulantKind,
    Direction,
    boolean_oracle_recursion,
    convert as convert_series,
    free_oracle_nc,
    free_oracle_series,
    monotone_oracle_formula,
    monotone_oracle_symbolic,
    monotone_oracle_trees,
)
from ncps.errors import NCPSError
from ncps.loaders import ReportLoader, SeriesLoader, dump_json
from ncps.schema import VerifyConfig
from ncps.series import TruncatedSeries
from ncps.verify import SUITES, run_verify

console = Console(soft_wrap=True, markup=False, emoji=False, highlight=False)

logger = structlog.get_logger()

EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2

InputPath = click.Path(exists=True, dir_okay=False, readable=True, path_type=Path)


def configure_logging(verbose: bool) -> None:
    """Structured logs on stderr; stdout stays machine readable."""
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.DEBUG if verbose else logging.WARNING
        ),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
    )


def handle_errors(command: Callable[..., Any]) -> Callable[..., Any]:
    """Turn library errors into a one-line diagnostic and exit status 2."""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return command(*args, **kwargs)
        except ValidationError as e:
            error = e.errors()[0]
            location = ".".join(str(part) for part in error["loc"]) or "document"
            click.echo(f"error: invalid input at {location}: {error['msg']}", err=True)
        except (NCPSError, OSError) as e:
            click.echo(f"error: {e}", err=True)
        raise click.exceptions.Exit(EXIT_BAD_INPUT)

    return wrapper


def emit(series: TruncatedSeries, output: Path | None, pretty: bool) -> None:
    """Write a document to the output path, or print it."""
    if output is not None:
        SeriesLoader.dump(series, output)
    elif pretty:
        console.print(series.render())
    else:
        console.print(SeriesLoader.dumps(series), end="")


def print_table(rows: list[dict]) -> None:
    """Print rows as CSV."""
    console.print(pd.DataFrame(rows).to_csv(sep=",", index=False), end="")


def parse_word(raw: str) -> tuple[int, ...]:
    """Parse "1,2,1" or "1 2 1"."""
    parts = raw.replace(",", " ").split()
    try:
        return check_word(int(part) for part in parts)
    except ValueError as e:
        raise click.BadParameter(f"Malformed word {raw!r}") from e


@click.group()
@click.option("--verbose", is_flag=True, default=False, help="Debug logging on stderr.")
def cli(verbose: bool) -> None:
    """Exact truncated non-commutative power series."""
    configure_logging(verbose)


@cli.command()
@click.option("--kind", type=click.Choice([k.value for k in CumulantKind]), required=True)
@click.option("--direction", type=click.Choice([d.value for d in Direction]), required=True)
@click.option("-i", "--input", "input_path", type=InputPath, required=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--pretty", is_flag=True, default=False)
@handle_errors
def convert(
    kind: str, direction: str, input_path: Path, output: Path | None, pretty: bool
) -> None:
    """Convert between moments and free, Boolean or monotone cumulants.

    Args:
        kind: cumulant family.
        direction: m2c (moments to cumulants) or c2m.
        input_path: input SeriesDocument.
        output: output path; printed to stdout when omitted.
        pretty: print a human readable rendering instead of JSON.
    """
    series = SeriesLoader.load(input_path)
    emit(convert_series(CumulantKind(kind), Direction(direction), series), output, pretty)


@cli.command()
@click.argument("name", type=click.Choice(list(OPERATIONS)))
@click.argument("operands", type=InputPath, nargs=-1)
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--t-param", type=str, default=None, help="flow only: specialise t to a rational.")
@click.option("--pretty", is_flag=True, default=False)
@handle_errors
def op(
    name: str,
    operands: tuple[Path, ...],
    output: Path | None,
    t_param: str | None,
    pretty: bool,
) -> None:
    """Apply a series operation to one or two documents."""
    operation = OPERATIONS[name]
    if len(operands) != operation.arity:
        raise click.UsageError(f"{name} takes {operation.arity} operand(s), got {len(operands)}")
    if t_param is not None and name != "flow":
        raise click.UsageError("--t-param only applies to flow")
    series = [SeriesLoader.load(path) for path in operands]
    result = operation.apply(*series)
    if t_param is not None:
        result = result.evaluate_t(parse_rational(t_param))
    logger.debug("operation applied", name=name, support=len(result))
    emit(result, output, pretty)


@cli.command()
@click.argument("name", type=click.Choice(ORACLES))
@click.argument("operand", type=InputPath, required=False)
@click.option("--word", type=str, default=None, help="nc-free only: a single word, e.g. 1,1,2.")
@click.option("--degree", type=int, default=None, help="monotone-formula: the moment degree n.")
@click.option("--symbolic", is_flag=True, default=False, help="monotone-formula with formal h₁..hₙ.")
@click.option("--nc-cap", type=int, default=NC_CAP)
@click.option("--tree-cap", type=int, default=TREE_CAP)
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
@handle_errors
def oracle(
    name: str,
    operand: Path | None,
    word: str | None,
    degree: int | None,
    symbolic: bool,
    nc_cap: int,
    tree_cap: int,
    output: Path | None,
) -> None:
    """Run an independent brute-force oracle.

    Series-valued oracles print one CSV row per word in canonical order, or
    write a SeriesDocument with -o.
    """
    if name == "monotone-formula" and symbolic:
        if degree is None:
            raise click.UsageError("--symbolic needs --degree")
        console.print(monotone_oracle_symbolic(degree))
        return
    if operand is None:
        raise click.UsageError(f"{name} needs an input document")
    series = SeriesLoader.load(operand)
    ring = series.ring

    if name == "monotone-formula":
        degrees = [degree] if degree is not None else range(1, series.truncation + 1)
        rows = [
            {"n": n, "m_n(t)": CoefficientRing.RATIONAL_POLY_T.render(monotone_oracle_formula(series, n))}
            for n in degrees
        ]
        print_table(rows)
        return
    if name == "nc-free" and word is not None:
        console.print(ring.render(free_oracle_nc(series, parse_word(word), nc_cap)))
        return

    if name == "nc-free":
        result = free_oracle_series(series, nc_cap)
    elif name == "boolean-recursion":
        result = boolean_oracle_recursion(series)
    else:
        result = monotone_oracle_trees(series, tree_cap)
    if output is not None:
        SeriesLoader.dump(result, output)
        return
    print_table(
        [{"word": format_word(w), "value": ring.render(c)} for w, c in result.items()]
    )


@cli.command()
@click.option("--alphabet", type=int, default=DEFAULT_ALPHABET)
@click.option("--degree", type=int, default=DEFAULT_DEGREE)
@click.option("--trials", type=int, default=DEFAULT_TRIALS)
@click.option("--seed", type=int, default=DEFAULT_SEED)
@click.option("--suite", "suites", type=click.Choice(list(SUITES)), multiple=True)
@click.option("--nc-cap", type=int, default=NC_CAP)
@click.option("--tree-cap", type=int, default=TREE_CAP)
@click.option("--output-dir", type=click.Path(file_okay=False, path_type=Path), default=None)
@click.option("--no-progress", is_flag=True, default=False)
@handle_errors
def verify(
    alphabet: int,
    degree: int,
    trials: int,
    seed: int,
    suites: tuple[str, ...],
    nc_cap: int,
    tree_cap: int,
    output_dir: Path | None,
    no_progress: bool,
) -> None:
    """Run the seeded property suites.

    Args:
        alphabet: alphabet size d.
        degree: truncation N.
        trials: random trials per suite.
        seed: base seed.
        suites: restrict to these suites (all by default).
        nc_cap: non-crossing oracle cap.
        tree_cap: rooted-tree oracle cap.
        output_dir: where to write verify_<seed>.json and the suite dump.
        no_progress: hide the progress bar.
    """
    config = VerifyConfig(
        alphabet=alphabet,
        degree=degree,
        trials=trials,
        seed=seed,
        suites=list(suites) or None,
        nc_cap=nc_cap,
        tree_cap=tree_cap,
    )
    report = run_verify(config, progress=not no_progress)
    print_table(
        [
            {"suite": r.name, "trials": r.trials, "passed": r.passed}
            for r in report.suites
        ]
    )
    if output_dir is not None:
        ReportLoader.dump(report, output_dir)
        console.print(f"Saved report to {ReportLoader.paths(output_dir, seed)[0]}")
    if not report.passed:
        for failed in report.failures:
            console.print(f"FAILED {failed.name}")
            console.print(dump_json(failed.counterexample), end="")
        raise click.exceptions.Exit(EXIT_VERIFY_FAILED)
    console.print("All suites passed.")


if __name__ == "__main__":
    cli()
