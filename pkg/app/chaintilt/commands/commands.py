import logging
from enum import Enum
from pathlib import Path
from typing import Optional

import typer

from chaintilt.config import DEFAULT_FORMAT, DEFAULT_MIN_SELFINT, DEFAULT_TMAX, VERSION, setup_logging
from chaintilt.exceptions import ChainTiltError
from chaintilt.services.chain import parse_chain
from chaintilt.services.report import export_dot, run_report, verify_suite

from .utils import FAIL_EXIT_CODE, exit_for, render_json, render_suite, render_text, write_output

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="chaintilt",
    help="Exceptional sequences of line bundles on chains of negative curves.",
    add_completion=False,
    no_args_is_help=True,
)

CHAIN_HELP = "Self-intersections C_1^2,...,C_t^2, comma-separated, e.g. -2,-3,-2."


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(
        None, "--log-level", help="Logging level (default from CHAINTILT_LOG_LEVEL)."
    ),
) -> None:
    setup_logging(log_level)


@app.command()
def report(
    chain: str = typer.Option(..., "--chain", help=CHAIN_HELP),
    output_format: OutputFormat = typer.Option(OutputFormat(DEFAULT_FORMAT), "--format", help="Output format."),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the report to a file instead of stdout."),
) -> None:
    """
    Полный отчет по цепочке: таблицы Ext, матрица Картана, форма, ASS, записи
    расширений и, для (-2)-цепочек, сравнение с модулями над Lambda.

    Ошибки:
        2: Некорректная цепочка.
        1: Отчет помечен FAIL или внутренняя ошибка.
    """
    try:
        result = run_report(parse_chain(chain))
    except ChainTiltError as exc:
        raise exit_for(exc) from exc

    text = render_json(result) if output_format is OutputFormat.JSON else render_text(result)
    write_output(text, out)
    if result.status == "FAIL":
        logger.error("report for %s is marked FAIL", result.chain)
        raise typer.Exit(code=FAIL_EXIT_CODE)


@app.command()
def quiver(
    chain: str = typer.Option(..., "--chain", help=CHAIN_HELP),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the DOT text to a file instead of stdout."),
) -> None:
    """
    Колчан Ext последовательности и, для (-2)-цепочек, колчан Lambda в формате DOT.

    Ошибки:
        2: Некорректная цепочка.
    """
    try:
        text = export_dot(parse_chain(chain))
    except ChainTiltError as exc:
        raise exit_for(exc) from exc
    write_output(text, out)


@app.command()
def verify(
    tmax: int = typer.Option(DEFAULT_TMAX, "--tmax", min=1, help="Largest chain length of the sweep."),
    min_selfint: int = typer.Option(
        DEFAULT_MIN_SELFINT, "--min-selfint", max=-2, help="Smallest self-intersection of the sweep."
    ),
) -> None:
    """
    Проверочный прогон: код 0, если все пункты пройдены; расхождения с текстом печатаются как WARN.
    """
    try:
        result = verify_suite(tmax=tmax, min_selfint=min_selfint)
    except ChainTiltError as exc:
        raise exit_for(exc) from exc

    write_output(render_suite(result), None)
    if not result.passed:
        raise typer.Exit(code=FAIL_EXIT_CODE)


@app.command()
def version() -> None:
    typer.echo(VERSION)

