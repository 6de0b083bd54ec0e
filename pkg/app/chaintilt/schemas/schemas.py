from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, computed_field

from chaintilt.models.models import (
    AssVerdict,
    CohTable,
    DefinitenessClass,
    ExtensionRecord,
)


class ExceptionOutSchema(BaseModel):
    """
    Схема вывода ошибки.

    Атрибуты:
        result (bool): Флаг успешности операции (всегда False).
        error_type (str): Тип ошибки.
        error_message (str): Сообщение об ошибке.
    """

    result: bool = Field(default=False, exclude=False)
    error_type: str
    error_message: str


class Finding(BaseModel):
    """
    Замечание проверки.

    Атрибуты:
        level (str): WARN - расхождение с текстом источника, FAIL - несогласованность вычислений.
        code (str): Короткий идентификатор замечания.
        message (str): Описание.
    """

    level: Literal["WARN", "FAIL"]
    code: str
    message: str

    model_config = ConfigDict(frozen=True)


class VerifyItem(BaseModel):
    """
    Пункт проверки с результатом.

    Атрибуты:
        name (str): Что проверялось.
        passed (bool): Результат.
        detail (str): Вычисленные значения.
    """

    name: str
    passed: bool
    detail: str = ""

    model_config = ConfigDict(frozen=True)


class PairComparison(BaseModel):
    """Сравнение (hom, ext1, ext2) для пары (E_i, E_j) и пары (M_i, M_j)."""

    i: int
    j: int
    geometric: tuple[int, int, int]
    algebraic: tuple[int, int, int]

    model_config = ConfigDict(frozen=True)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def equal(self) -> bool:
        return self.geometric == self.algebraic


class DictionaryEntry(BaseModel):
    """
    Образ E_i в категории модулей.

    Атрибуты:
        index (int): Номер объекта последовательности.
        vertex (int): Вершина стандартного модуля, которым является M_i.
        dims (tuple[int, ...]): Вектор размерностей M_i.
        name (str): Подпись модуля.
    """

    index: int
    vertex: int
    dims: tuple[int, ...]
    name: str

    model_config = ConfigDict(frozen=True)


class EquivalenceReport(BaseModel):
    """
    Отчет о проверке эквивалентности для цепочки (-2)-кривых.

    Атрибуты:
        chain (list[int]): Цепочка.
        order (list[int]): Выбранный порядок вершин (от меньшей к большей).
        dictionary (list[DictionaryEntry]): Соответствие E_i -> M_i.
        comparisons (list[PairComparison]): Сравнение таблиц по всем парам.
        dim_lambda (int): Размерность алгебры.
        dim_lambda_oracle (int): Размерность алгебры Ауслендера k[T]/T^{t+1}.
        global_dimension (int): Глобальная размерность.
        quasi_hereditary (bool): Все проективные Delta-фильтрованы.
        spherical (list[bool]): Сферичность простых S_0..S_t.
        exact_tilting (bool): Вердикт для {P(0), ..., P(t)}.
        minimal_line_bundle_is_projective (bool): M_0 изоморфен P(0).
        items (list[VerifyItem]): Пункты проверки.
    """

    chain: list[int]
    order: list[int]
    dictionary: list[DictionaryEntry]
    comparisons: list[PairComparison]
    dim_lambda: int
    dim_lambda_oracle: int
    global_dimension: int
    quasi_hereditary: bool
    spherical: list[bool]
    exact_tilting: bool
    minimal_line_bundle_is_projective: bool
    items: list[VerifyItem]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def status(self) -> Literal["PASS", "FAIL"]:
        return "PASS" if all(item.passed for item in self.items) else "FAIL"


class CounterexampleVerdict(BaseModel):
    """
    Пара корасширения при t = 1: нет точного тилтинга, но алгебры эндоморфизмов совпадают.

    Атрибуты:
        exact (bool): Вердикт проверки точности для {S(1), P(1)}.
        witness (str | None): Слагаемое с нерасщепимой сюръекцией.
        end_dimension_coextension (int): dim End(S(1) + P(1)).
        end_dimension_projective (int): dim End(P(0) + P(1)).
    """

    exact: bool
    witness: str | None
    end_dimension_coextension: int
    end_dimension_projective: int

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return (
            not self.exact
            and self.end_dimension_coextension == self.end_dimension_projective
        )


class CartanSection(BaseModel):
    closed_form: list[list[int]]
    from_cohomology: list[list[int]]


class ExtensionRecordsSection(BaseModel):
    extension: list[ExtensionRecord]
    coextension: list[ExtensionRecord]


class Report(BaseModel):
    """
    Полный отчет по цепочке.

    Атрибуты:
        chain (list[int]): Самопересечения.
        coh_table (CohTable): Таблицы Hom/Ext.
        cartan (CartanSection): Матрица Картана двумя способами.
        symmetric (bool): Симметричность формы Эйлера.
        definiteness (DefinitenessClass): Класс квадратичной формы.
        ass (AssVerdict): Условие ASS.
        extension_records (ExtensionRecordsSection): Учет K-классов (ко)расширений.
        equivalence (EquivalenceReport | None): Только для цепочек (-2)-кривых.
        findings (list[Finding]): Замечания.
        version (str): Версия пакета.
    """

    chain: list[int]
    coh_table: CohTable
    cartan: CartanSection
    symmetric: bool
    definiteness: DefinitenessClass
    ass: AssVerdict
    extension_records: ExtensionRecordsSection
    equivalence: EquivalenceReport | None = None
    findings: list[Finding] = Field(default_factory=list)
    version: str

    @property
    def status(self) -> Literal["PASS", "FAIL"]:
        if self.cartan.closed_form != self.cartan.from_cohomology:
            return "FAIL"
        if any(finding.level == "FAIL" for finding in self.findings):
            return "FAIL"
        if self.equivalence is not None and self.equivalence.status == "FAIL":
            return "FAIL"
        return "PASS"


class SuiteResult(BaseModel):
    """
    Итог проверочного прогона.

    Атрибуты:
        tmax (int): Наибольшая длина цепочки.
        min_selfint (int): Наименьший индекс самопересечения.
        chains (int): Число перебранных цепочек.
        items (list[VerifyItem]): Пункты проверки.
        findings (list[Finding]): Замечания (WARN - расхождения с текстом источника).
    """

    tmax: int
    min_selfint: int
    chains: int
    items: list[VerifyItem]
    findings: list[Finding] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items) and not any(
            finding.level == "FAIL" for finding in self.findings
        )
