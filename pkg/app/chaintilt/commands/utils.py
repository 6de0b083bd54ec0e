import io
import json
from pathlib import Path

import typer
from rich.console import Console
from rich.table import Table

from chaintilt.exceptions import ChainError, ChainTiltError, PreconditionError
from chaintilt.schemas.schemas import ExceptionOutSchema, Report, SuiteResult

BAD_INPUT_EXIT_CODE = 2
FAIL_EXIT_CODE = 1
TEXT_WIDTH = 120


def return_exception(error_type: str, error_message: str, exit_code: int) -> typer.Exit:
    """
    Печатает ошибку в stderr и возвращает исключение завершения команды.

    Параметры:
        error_type (str): Тип ошибки.
        error_message (str): Сообщение об ошибке.
        exit_code (int): Код завершения процесса.

    Возвращает:
        typer.Exit: Исключение, которое команда должна поднять.
    """
    content = ExceptionOutSchema(
        error_type=error_type,
        error_message=error_message,
    ).model_dump()
    typer.echo(json.dumps(content, sort_keys=True), err=True)
    return typer.Exit(code=exit_code)


def exit_for(exc: ChainTiltError) -> typer.Exit:
    """Ошибки входных данных завершают команду с кодом 2, остальные - с кодом 1."""
    exit_code = BAD_INPUT_EXIT_CODE if isinstance(exc, (ChainError, PreconditionError)) else FAIL_EXIT_CODE
    return return_exception(error_type=exc.error_type, error_message=str(exc), exit_code=exit_code)


def write_output(text: str, out: Path | None) -> None:
    """Пишет текст в файл или, если путь не задан, в stdout."""
    if out is None:
        typer.echo(text, nl=not text.endswith("\n"))
    else:
        out.write_text(text, encoding="utf-8")


def render_json(report: Report) -> str:
    """JSON отчета с отсортированными ключами; повторный разбор дает тот же отчет."""
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def _grid_table(title: str, grid: tuple[tuple[int, ...], ...] | list[list[int]]) -> Table:
    table = Table(title=title, show_lines=False)
    table.add_column("")
    for j in range(len(grid)):
        table.add_column("E_{j}".format(j=j), justify="right")
    for i, row in enumerate(grid):
        table.add_row("E_{i}".format(i=i), *(str(value) for value in row))
    return table


def _capture(*renderables: object) -> str:
    buffer = io.StringIO()
    console = Console(file=buffer, width=TEXT_WIDTH, color_system=None, markup=False, highlight=False, emoji=False)
    for renderable in renderables:
        console.print(renderable)
    return buffer.getvalue()


def render_text(report: Report) -> str:
    """
    Текстовый отчет из таблиц rich.

    Параметры:
        report (Report): Отчет.

    Возвращает:
        str: Текст без цветовых кодов.
    """
    parts: list[object] = [
        "chaintilt {version}: chain {chain}, status {status}".format(
            version=report.version, chain=report.chain, status=report.status
        ),
        _grid_table("hom", report.coh_table.hom),
        _grid_table("ext1", report.coh_table.ext1),
        _grid_table("ext2", report.coh_table.ext2),
        _grid_table("Cartan matrix (closed form)", report.cartan.closed_form),
    ]
    if report.cartan.closed_form != report.cartan.from_cohomology:
        parts.append(_grid_table("Cartan matrix (from cohomology)", report.cartan.from_cohomology))
    parts.append(
        "symmetric: {s}; definiteness: {d}".format(s=report.symmetric, d=report.definiteness.value)
    )

    ass = Table(title="ASS: {v}".format(v="PASS" if report.ass.passes else "FAIL"))
    ass.add_column("pair")
    ass.add_column("violation")
    for violation in report.ass.violations:
        ass.add_row("(E_{i}, E_{j})".format(i=violation.i, j=violation.j), violation.reason)
    for axiom in report.ass.axioms:
        ass.add_row("axiom", axiom)
    parts.append(ass)

    records = Table(title="extension records")
    records.add_column("mode")
    records.add_column("index", justify="right")
    records.add_column("K-class")
    for mode, items in (
        ("extension", report.extension_records.extension),
        ("coextension", report.extension_records.coextension),
    ):
        for record in items:
            records.add_row(mode, str(record.index), str(list(record.k_class)))
    parts.append(records)

    if report.equivalence is not None:
        equivalence = Table(
            title="equivalence with mod Lambda: {s} (dim Lambda = {d})".format(
                s=report.equivalence.status, d=report.equivalence.dim_lambda
            )
        )
        equivalence.add_column("check")
        equivalence.add_column("result")
        equivalence.add_column("detail")
        for item in report.equivalence.items:
            equivalence.add_row(item.name, "PASS" if item.passed else "FAIL", item.detail)
        parts.append(equivalence)

    if report.findings:
        findings = Table(title="findings")
        findings.add_column("level")
        findings.add_column("code")
        findings.add_column("message")
        for finding in report.findings:
            findings.add_row(finding.level, finding.code, finding.message)
        parts.append(findings)
    return _capture(*parts)


def render_suite(result: SuiteResult) -> str:
    """Таблица пунктов проверочного прогона и найденных расхождений."""
    items = Table(title="verify: tmax {t}, min self-intersection {m}, {n} chains".format(
        t=result.tmax, m=result.min_selfint, n=result.chains
    ))
    items.add_column("check")
    items.add_column("result")
    items.add_column("detail")
    for item in result.items:
        items.add_row(item.name, "PASS" if item.passed else "FAIL", item.detail)
    parts: list[object] = [items]
    for finding in result.findings:
        parts.append("{level} {code}: {message}".format(
            level=finding.level, code=finding.code, message=finding.message
        ))
    parts.append("PASS" if result.passed else "FAIL")
    return _capture(*parts)
