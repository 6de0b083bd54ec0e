from enum import Enum
from typing import Literal, NamedTuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Chain(BaseModel):
    """
    Цепочка рациональных кривых типа A_t.

    Атрибуты:
        self_intersections (tuple[int, ...]): Индексы самопересечения C_1^2, ..., C_t^2.
    """

    self_intersections: tuple[int, ...] = Field(default=..., min_length=1)

    model_config = ConfigDict(frozen=True)

    @property
    def t(self) -> int:
        return len(self.self_intersections)

    @property
    def b(self) -> tuple[int, ...]:
        """Числа b_i = C_i^2 + 2, i = 1..t."""
        return tuple(c + 2 for c in self.self_intersections)

    def self_intersection(self, curve: int) -> int:
        """Самопересечение кривой C_curve (нумерация кривых с единицы)."""
        return self.self_intersections[curve - 1]

    def is_minus_two(self) -> bool:
        return all(c == -2 for c in self.self_intersections)


class DivisorWindow(BaseModel):
    """
    Подцепочка D = C_lo + ... + C_hi.

    Атрибуты:
        chain (Chain): Исходная цепочка.
        lo (int): Индекс первой кривой (с единицы).
        hi (int): Индекс последней кривой (включительно).
    """

    chain: Chain
    lo: int
    hi: int

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_interval(self) -> "DivisorWindow":
        if not 1 <= self.lo <= self.hi <= self.chain.t:
            raise ValueError(
                "window [{lo}..{hi}] is not inside 1..{t}".format(
                    lo=self.lo, hi=self.hi, t=self.chain.t
                )
            )
        return self

    @property
    def m(self) -> int:
        """Число компонент подцепочки."""
        return self.hi - self.lo + 1

    @property
    def curves(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def self_intersections(self) -> tuple[int, ...]:
        return self.chain.self_intersections[self.lo - 1 : self.hi]

    def self_intersection_number(self) -> int:
        """D^2 по форме пересечений: сумма C_k^2 плюс 2 на каждый узел."""
        return sum(self.self_intersections) + 2 * (self.m - 1)


class Twist(str, Enum):
    """Какое линейное расслоение на D рассматривается: O_D(D) или O_D."""

    SELF = "self"
    ZERO = "zero"


class LineBundleOnChain(BaseModel):
    """
    Линейное расслоение на цепочке проективных прямых.

    Атрибуты:
        multidegree (tuple[int, ...]): Степени d_1..d_m на компонентах.
    """

    multidegree: tuple[int, ...] = Field(default=..., min_length=1)

    model_config = ConfigDict(frozen=True)

    @property
    def m(self) -> int:
        return len(self.multidegree)

    @property
    def nodes(self) -> int:
        return self.m - 1

    @property
    def euler_characteristic(self) -> int:
        return sum(d + 1 for d in self.multidegree) - self.nodes


class CohPair(BaseModel):
    """
    Размерности когомологий линейного расслоения на цепочке.

    Атрибуты:
        h0 (int): dim H^0.
        h1 (int): dim H^1.
    """

    h0: int = Field(default=..., ge=0)
    h1: int = Field(default=..., ge=0)

    model_config = ConfigDict(frozen=True)


class CohTriple(NamedTuple):
    """Размерности (h0, h1, h2) пучка на поверхности."""

    h0: int
    h1: int
    h2: int


class CohTable(BaseModel):
    """
    Таблицы dim Hom, dim Ext^1, dim Ext^2 между E_0, ..., E_t.

    Атрибуты:
        t (int): Длина цепочки.
        hom (tuple[tuple[int, ...], ...]): hom[i][j] = dim Hom(E_i, E_j).
        ext1 (tuple[tuple[int, ...], ...]): ext1[i][j] = dim Ext^1(E_i, E_j).
        ext2 (tuple[tuple[int, ...], ...]): ext2[i][j] = dim Ext^2(E_i, E_j).
    """

    t: int = Field(default=..., ge=1)
    hom: tuple[tuple[int, ...], ...]
    ext1: tuple[tuple[int, ...], ...]
    ext2: tuple[tuple[int, ...], ...]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_shape(self) -> "CohTable":
        size = self.t + 1
        for table in (self.hom, self.ext1, self.ext2):
            if len(table) != size or any(len(row) != size for row in table):
                raise ValueError("tables must be {n}x{n}".format(n=size))
            if any(value < 0 for row in table for value in row):
                raise ValueError("dimensions must be nonnegative")
        return self

    @property
    def size(self) -> int:
        return self.t + 1

    def triple(self, i: int, j: int) -> CohTriple:
        return CohTriple(self.hom[i][j], self.ext1[i][j], self.ext2[i][j])


class AssViolation(BaseModel):
    """
    Нарушение условия ASS для пары (E_i, E_j).

    Атрибуты:
        i (int): Индекс источника.
        j (int): Индекс цели.
        reason (str): hom_too_big или ext2_nonzero.
    """

    i: int
    j: int
    reason: Literal["hom_too_big", "ext2_nonzero"]

    model_config = ConfigDict(frozen=True)


class AssVerdict(BaseModel):
    """
    Результат проверки условия ASS.

    Атрибуты:
        passes (bool): Условие выполнено.
        violations (list[AssViolation]): Найденные нарушения.
        axioms (list[str]): Пункты условия, принятые как аксиома модели, а не вычисленные.
    """

    passes: bool
    violations: list[AssViolation] = Field(default_factory=list)
    axioms: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_consistency(self) -> "AssVerdict":
        if self.passes != (not self.violations):
            raise ValueError("passes must hold exactly when there are no violations")
        return self


class CartanMatrix(BaseModel):
    """
    Унипотентная верхнетреугольная матрица эйлеровых характеристик chi(E_k, E_l).

    Атрибуты:
        t (int): Длина цепочки.
        entries (tuple[tuple[int, ...], ...]): Матрица (t+1)x(t+1) с индексами от нуля.
    """

    t: int = Field(default=..., ge=1)
    entries: tuple[tuple[int, ...], ...]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_unipotent(self) -> "CartanMatrix":
        size = self.t + 1
        if len(self.entries) != size or any(len(row) != size for row in self.entries):
            raise ValueError("Cartan matrix must be {n}x{n}".format(n=size))
        for k in range(size):
            if self.entries[k][k] != 1:
                raise ValueError("diagonal entry ({k},{k}) is not 1".format(k=k))
            for j in range(k):
                if self.entries[k][j] != 0:
                    raise ValueError(
                        "entry ({k},{j}) below the diagonal is not 0".format(k=k, j=j)
                    )
        return self

    @property
    def size(self) -> int:
        return self.t + 1


class DefinitenessClass(str, Enum):
    POSITIVE_DEFINITE = "positive_definite"
    POSITIVE_SEMIDEFINITE = "positive_semidefinite"
    INDEFINITE = "indefinite"


class ExtensionMode(str, Enum):
    EXTENSION = "extension"
    COEXTENSION = "coextension"


class ExtensionStep(BaseModel):
    """
    Один шаг универсального (ко)расширения.

    Атрибуты:
        target (int): Индекс объекта, который расширяется.
        by (int): Индекс объекта, которым расширяют.
        r (int): dim Ext^1 из таблицы когомологий.
    """

    target: int
    by: int
    r: int = Field(default=..., ge=0)

    model_config = ConfigDict(frozen=True)


class CertificateFact(BaseModel):
    """
    Установленный факт обращения в ноль Ext^1 с пунктом леммы, из которого он следует.

    Атрибуты:
        clause (str): Пункт леммы об универсальных расширениях.
        statement (str): Формулировка факта.
    """

    clause: str
    statement: str

    model_config = ConfigDict(frozen=True)


class ExtensionRecord(BaseModel):
    """
    Учет K-класса итерированного универсального (ко)расширения.

    Атрибуты:
        index (int): Позиция объекта в последовательности.
        k_class (tuple[int, ...]): Координаты в базисе [E_0], ..., [E_t].
        log (tuple[ExtensionStep, ...]): Выполненные шаги.
        certificate (tuple[CertificateFact, ...]): Установленные факты обращения в ноль.
    """

    index: int
    k_class: tuple[int, ...]
    log: tuple[ExtensionStep, ...] = ()
    certificate: tuple[CertificateFact, ...] = ()

    model_config = ConfigDict(frozen=True)

    @field_validator("k_class")
    @classmethod
    def check_nonnegative(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if any(entry < 0 for entry in value):
            raise ValueError("K-class entries must be nonnegative")
        return value


class ExtGroups(BaseModel):
    """
    Размерности Ext^k(M, N) для k = 0..len(dims)-1.

    Атрибуты:
        dims (tuple[int, ...]): dims[0] = dim Hom(M, N).
    """

    dims: tuple[int, ...] = Field(default=..., min_length=1)

    model_config = ConfigDict(frozen=True)

    @property
    def hom(self) -> int:
        return self.dims[0]

    def degree(self, k: int) -> int:
        """dim Ext^k; за пределами вычисленного диапазона - ноль."""
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def alternating_sum(self) -> int:
        return sum((-1) ** k * value for k, value in enumerate(self.dims))


class TiltingVerdict(BaseModel):
    """
    Результат проверки точности тилтинга.

    Атрибуты:
        exact (bool): Любая сюръекция между объектами add(T) расщепляется.
        witness (int | None): Номер слагаемого B, на которое есть нерасщепимая сюръекция.
    """

    exact: bool
    witness: int | None = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_witness(self) -> "TiltingVerdict":
        if self.exact != (self.witness is None):
            raise ValueError("a witness is given exactly when the verdict is not exact")
        return self


class GridSigns(BaseModel):
    """
    Знаки квадратичной формы на целочисленном кубе {-radius..radius}^n.

    Атрибуты:
        radius (int): Полуширина куба.
        positive (tuple[int, ...] | None): Точка с положительным значением.
        negative (tuple[int, ...] | None): Точка с отрицательным значением.
        isotropic (tuple[int, ...] | None): Ненулевая точка с нулевым значением.
        singular (bool): Вырожден ли определитель G = C + C^T.
    """

    radius: int = Field(default=..., ge=1)
    positive: tuple[int, ...] | None = None
    negative: tuple[int, ...] | None = None
    isotropic: tuple[int, ...] | None = None
    singular: bool = False

    model_config = ConfigDict(frozen=True)

    def agrees_with(self, kind: DefinitenessClass) -> bool:
        """
        Не противоречит ли куб классу формы.

        Для полуопределенной формы нужен свидетель вырождения: нулевое значение
        в ненулевой точке куба или нулевой определитель.
        """
        if kind is DefinitenessClass.POSITIVE_DEFINITE:
            return self.negative is None and self.isotropic is None and not self.singular
        if kind is DefinitenessClass.POSITIVE_SEMIDEFINITE:
            return self.negative is None and (self.isotropic is not None or self.singular)
        return self.negative is not None
