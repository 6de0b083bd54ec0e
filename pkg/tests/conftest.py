from typing import Iterator

import pytest
from typer.testing import CliRunner

from chaintilt.algebra.quiver import AlgebraBasis
from chaintilt.services.builder import build_lambda


@pytest.fixture(scope="session")
def lambda_1() -> AlgebraBasis:
    return build_lambda(1)


@pytest.fixture(scope="session")
def lambda_2() -> AlgebraBasis:
    return build_lambda(2)


@pytest.fixture(scope="session")
def lambda_3() -> AlgebraBasis:
    return build_lambda(3)


@pytest.fixture
def runner() -> CliRunner:
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        # click>=8.2 dropped mix_stderr; stdout and stderr are separate by default
        return CliRunner()


@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """
    Убирает переменные CHAINTILT_* окружения, чтобы настройки в тестах были значениями по умолчанию.
    """
    for name in (
        "CHAINTILT_MAX_PATHLEN",
        "CHAINTILT_MAX_RESOLUTION",
        "CHAINTILT_ISO_SEARCH_BUDGET",
        "CHAINTILT_LOG_LEVEL",
        "CHAINTILT_INJECT_FAULT",
    ):
        monkeypatch.delenv(name, raising=False)
    yield
