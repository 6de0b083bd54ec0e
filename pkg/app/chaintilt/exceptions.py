class ChainTiltError(Exception):
    """
    Базовая ошибка пакета.

    Атрибуты:
        error_type (str): Короткое имя типа ошибки для вывода в ExceptionOutSchema.
    """

    error_type = "Error"


class ChainError(ChainTiltError, ValueError):
    """Некорректная цепочка кривых или индексы вне диапазона."""

    error_type = "BadChain"


class PreconditionError(ChainTiltError, ValueError):
    """Нарушено предусловие операции (например, цепочка не из (-2)-кривых)."""

    error_type = "Precondition"


class ExceptionalityError(ChainTiltError):
    """Таблица когомологий не задает исключительную последовательность."""

    error_type = "Exceptionality"


class CartanError(ChainTiltError):
    """Матрица не удовлетворяет инвариантам матрицы Картана."""

    error_type = "Cartan"


class AlgebraError(ChainTiltError):
    """Ошибка вычислений с алгеброй путей и ее модулями."""

    error_type = "Algebra"


class NotFiniteDimensionalError(AlgebraError):
    error_type = "NotFiniteDimensional"


class ResolutionLengthError(AlgebraError):
    error_type = "ResolutionLength"


class InconclusiveError(AlgebraError):
    error_type = "Inconclusive"


class TailNotExactError(AlgebraError):
    error_type = "TailNotExact"


class DependentClassesError(AlgebraError):
    error_type = "DependentClasses"


class NotIndecomposableError(AlgebraError):
    error_type = "NotIndecomposable"


class RelationError(AlgebraError):
    error_type = "Relation"


class CertificateError(ChainTiltError):
    """
    Не удалось установить сертификат частичного тилтинга.

    Атрибуты:
        clause (str): Пункт леммы об универсальных расширениях, гипотеза которого нарушена.
    """

    error_type = "Certificate"

    def __init__(self, message: str, clause: str):
        super().__init__(message)
        self.clause = clause


class DictionaryError(ChainTiltError):
    """Не найдено соответствие между линейными расслоениями и модулями."""

    error_type = "Dictionary"
