"""
Матрица Картана исключительной последовательности, ее квадратичная форма и
классификация формы по знаку.
"""

import itertools
import logging
from typing import Sequence

from chaintilt.algebra import linalg
from chaintilt.exceptions import CartanError
from chaintilt.models.models import (
    CartanMatrix,
    Chain,
    CohTable,
    DefinitenessClass,
    GridSigns,
)
from chaintilt.schemas.schemas import Finding

logger = logging.getLogger(__name__)

# Миноры, напечатанные в доказательстве утверждения об определенности, и слова, которыми они описаны
DISPLAYED_MINORS: tuple[tuple[str, tuple[tuple[int, ...], ...], str], ...] = (
    ("two_minus_three_minor", ((1, -1, -1), (0, 1, -1), (0, 0, 1)), "indefinite"),
    ("minus_four_minor", ((1, -2), (0, 1)), "negative"),
)


def cartan_closed_form(chain: Chain) -> CartanMatrix:
    """
    Матрица Картана по формуле: при k < l элемент (k, l) равен сумме b_m по
    m = t-l+1..t-k, то есть по окну divisor_window(k, l).

    Параметры:
        chain (Chain): Цепочка.

    Возвращает:
        CartanMatrix: Унипотентная верхнетреугольная матрица.
    """
    t = chain.t
    b = chain.b
    size = t + 1
    entries = [[0] * size for _ in range(size)]
    for k in range(size):
        entries[k][k] = 1
        for l in range(k + 1, size):
            entries[k][l] = sum(b[m - 1] for m in range(t - l + 1, t - k + 1))
    return CartanMatrix(t=t, entries=tuple(map(tuple, entries)))


def cartan_from_cohomology(table: CohTable) -> CartanMatrix:
    """
    Матрица Картана как эйлеровы характеристики hom - ext1 + ext2.

    Ошибки:
        CartanError: Результат не унипотентный верхнетреугольный.
    """
    entries = tuple(
        tuple(table.hom[i][j] - table.ext1[i][j] + table.ext2[i][j] for j in range(table.size))
        for i in range(table.size)
    )
    try:
        return CartanMatrix(t=table.t, entries=entries)
    except ValueError as exc:
        raise CartanError(str(exc)) from exc


def quadratic_form_value(cartan: CartanMatrix, x: Sequence[int]) -> int:
    """
    Значение q(x) = sum x_i^2 + sum_{i<j} c_ij x_i x_j.

    Ошибки:
        CartanError: Длина вектора не равна t+1.
    """
    if len(x) != cartan.size:
        raise CartanError(
            "vector of length {n} for a {size}x{size} Cartan matrix".format(n=len(x), size=cartan.size)
        )
    return sum(
        cartan.entries[i][j] * x[i] * x[j]
        for i in range(cartan.size)
        for j in range(i, cartan.size)
    )


def is_symmetric(cartan: CartanMatrix) -> bool:
    return all(
        cartan.entries[i][j] == 0 for i in range(cartan.size) for j in range(i + 1, cartan.size)
    )


def symmetrized(cartan: CartanMatrix) -> list[list[int]]:
    """G = C + C^T (удвоенная симметризация, без дробей)."""
    return [
        [cartan.entries[i][j] + cartan.entries[j][i] for j in range(cartan.size)]
        for i in range(cartan.size)
    ]


def _minor(gram: list[list[int]], indices: Sequence[int]) -> int:
    block = linalg.matrix([[gram[i][j] for j in indices] for i in indices])
    return linalg.to_int(linalg.det(block))


def classify_definiteness(cartan: CartanMatrix) -> DefinitenessClass:
    """
    Класс формы по G = C + C^T.

    Положительно определена - все ведущие главные миноры положительны;
    полуопределена - все главные миноры (по всем подмножествам индексов) неотрицательны.
    """
    gram = symmetrized(cartan)
    size = cartan.size
    if all(_minor(gram, range(k)) > 0 for k in range(1, size + 1)):
        return DefinitenessClass.POSITIVE_DEFINITE
    for k in range(1, size + 1):
        for indices in itertools.combinations(range(size), k):
            if _minor(gram, indices) < 0:
                return DefinitenessClass.INDEFINITE
    return DefinitenessClass.POSITIVE_SEMIDEFINITE


def sign_grid(cartan: CartanMatrix, radius: int = 3) -> GridSigns:
    """
    Перебирает q(x) на кубе {-radius..radius}^{t+1} и запоминает первые точки
    с положительным, отрицательным и нулевым (при x != 0) значением.
    Отдельно отмечает, вырожден ли определитель G.
    """
    positive = negative = isotropic = None
    for x in itertools.product(range(-radius, radius + 1), repeat=cartan.size):
        if not any(x):
            continue
        value = quadratic_form_value(cartan, x)
        if value > 0 and positive is None:
            positive = x
        elif value < 0 and negative is None:
            negative = x
        elif value == 0 and isotropic is None:
            isotropic = x
        if positive and negative and isotropic:
            break
    singular = _minor(symmetrized(cartan), range(cartan.size)) == 0
    return GridSigns(radius=radius, positive=positive, negative=negative, isotropic=isotropic, singular=singular)


def definiteness_prediction(chain: Chain) -> bool | None:
    """
    Что утверждает напечатанная классификация: форма положительно определена
    тогда и только тогда, когда все C_i^2 = -2 или ровно одна C_j^2 = -3 при
    остальных -2.

    Возвращает:
        bool | None: Предсказание или None, если среди C_i^2 есть значения больше -2.
    """
    values = chain.self_intersections
    if any(value > -2 for value in values):
        return None
    others = [value for value in values if value != -2]
    return not others or others == [-3]


def definiteness_findings(chain: Chain, computed: DefinitenessClass) -> list[Finding]:
    """Расхождение вычисленного класса с предсказанием классификации (WARN)."""
    predicted = definiteness_prediction(chain)
    if predicted is None:
        return []
    is_definite = computed is DefinitenessClass.POSITIVE_DEFINITE
    if predicted == is_definite:
        return []
    message = "chain {chain}: the printed classification predicts {p}, computed class is {c}".format(
        chain=list(chain.self_intersections),
        p="positive definite" if predicted else "not positive definite",
        c=computed.value,
    )
    logger.warning(message)
    return [Finding(level="WARN", code="definiteness_prediction", message=message)]


def displayed_minor_findings() -> list[Finding]:
    """
    Классифицирует миноры из доказательства и сравнивает со словами текста.

    Для первого минора дополнительно проверяется аддитивность c_02 = c_01 + c_12.
    """
    findings = []
    for code, entries, described in DISPLAYED_MINORS:
        cartan = CartanMatrix(t=len(entries) - 1, entries=entries)
        computed = classify_definiteness(cartan)
        agrees = (described == "indefinite" and computed is DefinitenessClass.INDEFINITE) or (
            described == "negative" and sign_grid(cartan).positive is None
        )
        if not agrees:
            findings.append(
                Finding(
                    level="WARN",
                    code=code,
                    message="minor {m} is described as {d}, computed class is {c}".format(
                        m=[list(row) for row in entries], d=described, c=computed.value
                    ),
                )
            )
        if len(entries) == 3 and entries[0][2] != entries[0][1] + entries[1][2]:
            findings.append(
                Finding(
                    level="WARN",
                    code=code + "_additivity",
                    message="minor {m} breaks additivity: corner {c} != {a} + {b}".format(
                        m=[list(row) for row in entries],
                        c=entries[0][2],
                        a=entries[0][1],
                        b=entries[1][2],
                    ),
                )
            )
    for finding in findings:
        logger.warning(finding.message)
    return findings
