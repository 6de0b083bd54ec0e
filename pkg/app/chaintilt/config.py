import logging

from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict
from rich.console import Console
from rich.logging import RichHandler

from chaintilt import __version__

load_dotenv()

VERSION = __version__
DEFAULT_FORMAT = "text"  # Формат вывода отчета по умолчанию
DEFAULT_TMAX = 4  # Максимальная длина цепочки в проверочном прогоне
DEFAULT_MIN_SELFINT = -4  # Минимальный индекс самопересечения в проверочном прогоне


class Settings(BaseSettings):
    """
    Настройки приложения, читаемые из окружения и файла .env.

    Атрибуты:
        max_pathlen (int): Предельная длина путей при построении базиса алгебры.
        max_resolution (int): Предельная длина проективной резольвенты.
        iso_search_budget (int): Число комбинаций, перебираемых при поиске изоморфизма
            или сюръекции.
        log_level (str): Уровень логирования.
        inject_fault (bool): Тестовый крючок проверочного прогона (портит один элемент
            матрицы Картана).
    """

    max_pathlen: int = 16
    max_resolution: int = 16
    iso_search_budget: int = 256
    log_level: str = "WARNING"
    inject_fault: bool = False

    model_config = SettingsConfigDict(
        env_prefix="CHAINTILT_",
        env_file=".env",
        extra="ignore",
    )


def get_settings() -> Settings:
    """
    Возвращает актуальные настройки.

    Настройки создаются заново при каждом вызове, чтобы изменения окружения
    (например, в тестах) сразу учитывались.
    """
    return Settings()


def setup_logging(level: str | None = None) -> None:
    """
    Настраивает логгер пакета chaintilt.

    Сообщения пишутся в stderr, чтобы stdout оставался чистым для JSON и DOT.

    Параметры:
        level (str | None): Уровень логирования; по умолчанию берется из настроек.
    """
    logger = logging.getLogger("chaintilt")
    logger.setLevel((level or get_settings().log_level).upper())

    if not logger.handlers:
        handler = RichHandler(
            console=Console(stderr=True),
            show_time=False,
            show_path=False,
        )
        logger.addHandler(handler)
    logger.propagate = False
