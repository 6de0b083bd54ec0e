"""
Точная линейная алгебра над полем рациональных чисел.

Все матрицы - sympy DomainMatrix над QQ. Функции модуля аккуратно обрабатывают
матрицы с нулевым числом строк или столбцов: в представлениях колчана нулевые
пространства в вершинах встречаются постоянно.
"""

from fractions import Fraction
from typing import Any, Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Scalar = Any  # элемент поля QQ (gmpy2.mpq или PythonMPQ)

ZERO = QQ(0)
ONE = QQ(1)


def qq(value: int | Fraction | Scalar) -> Scalar:
    """Приводит целое число или Fraction к элементу QQ."""
    if isinstance(value, bool):
        return QQ(int(value))
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return value


def to_int(value: Scalar) -> int:
    """Переводит целочисленный элемент QQ в int."""
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator != 1:
        raise ValueError("{n}/{d} is not an integer".format(n=numerator, d=denominator))
    return numerator


def matrix(rows: Sequence[Sequence[Any]], ncols: int | None = None) -> DomainMatrix:
    """
    Создает матрицу из списка строк.

    Параметры:
        rows (Sequence[Sequence]): Строки матрицы.
        ncols (int | None): Число столбцов; обязательно, если строк нет.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    data = [[qq(x) for x in row] for row in rows]
    if any(len(row) != ncols for row in data):
        raise ValueError("ragged rows")
    return DomainMatrix(data, (len(data), ncols), QQ)


def zeros(nrows: int, ncols: int) -> DomainMatrix:
    return DomainMatrix([[ZERO] * ncols for _ in range(nrows)], (nrows, ncols), QQ)


def identity(n: int) -> DomainMatrix:
    return DomainMatrix(
        [[ONE if i == j else ZERO for j in range(n)] for i in range(n)], (n, n), QQ
    )


def entries(a: DomainMatrix) -> list[list[Scalar]]:
    nrows, ncols = a.shape
    if nrows == 0:
        return []
    if ncols == 0:
        return [[] for _ in range(nrows)]
    return [list(row) for row in a.to_list()]


def from_columns(columns: Sequence[Sequence[Scalar]], nrows: int) -> DomainMatrix:
    """Матрица, столбцы которой - данные векторы."""
    return matrix([[column[i] for column in columns] for i in range(nrows)], len(columns))


def columns(a: DomainMatrix) -> list[list[Scalar]]:
    nrows, ncols = a.shape
    data = entries(a)
    return [[data[i][j] for i in range(nrows)] for j in range(ncols)]


def matmul(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    m, k = a.shape
    k2, n = b.shape
    if k != k2:
        raise ValueError("shape mismatch {a} x {b}".format(a=a.shape, b=b.shape))
    if m == 0 or n == 0 or k == 0:
        return zeros(m, n)
    return a.matmul(b)


def chain_product(factors: Sequence[DomainMatrix], size: int) -> DomainMatrix:
    """Произведение factors[-1] * ... * factors[0]; для пустого списка - единичная матрица."""
    result = identity(size)
    for factor in factors:
        result = matmul(factor, result)
    return result


def add(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    if a.shape != b.shape:
        raise ValueError("shape mismatch {a} + {b}".format(a=a.shape, b=b.shape))
    left, right = entries(a), entries(b)
    return matrix(
        [[x + y for x, y in zip(row_a, row_b)] for row_a, row_b in zip(left, right)],
        a.shape[1],
    )


def scale(a: DomainMatrix, factor: int | Fraction | Scalar) -> DomainMatrix:
    c = qq(factor)
    return matrix([[c * x for x in row] for row in entries(a)], a.shape[1])


def sub(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    return add(a, scale(b, -1))


def linear_combination(
    coefficients: Sequence[int | Fraction | Scalar], terms: Sequence[DomainMatrix], shape: tuple[int, int]
) -> DomainMatrix:
    result = zeros(*shape)
    for coefficient, term in zip(coefficients, terms):
        if qq(coefficient) != ZERO:
            result = add(result, scale(term, coefficient))
    return result


def transpose(a: DomainMatrix) -> DomainMatrix:
    nrows, ncols = a.shape
    data = entries(a)
    return matrix([[data[i][j] for i in range(nrows)] for j in range(ncols)], nrows)


def hstack(blocks: Sequence[DomainMatrix], nrows: int) -> DomainMatrix:
    rows: list[list[Scalar]] = [[] for _ in range(nrows)]
    for block in blocks:
        if block.shape[0] != nrows:
            raise ValueError("hstack row mismatch")
        for i, row in enumerate(entries(block)):
            rows[i].extend(row)
    return matrix(rows, sum(block.shape[1] for block in blocks))


def vstack(blocks: Sequence[DomainMatrix], ncols: int) -> DomainMatrix:
    rows: list[list[Scalar]] = []
    for block in blocks:
        if block.shape[1] != ncols:
            raise ValueError("vstack column mismatch")
        rows.extend(entries(block))
    return matrix(rows, ncols)


def block_diagonal(blocks: Sequence[DomainMatrix]) -> DomainMatrix:
    nrows = sum(block.shape[0] for block in blocks)
    ncols = sum(block.shape[1] for block in blocks)
    rows = [[ZERO] * ncols for _ in range(nrows)]
    row_offset = col_offset = 0
    for block in blocks:
        for i, row in enumerate(entries(block)):
            rows[row_offset + i][col_offset : col_offset + len(row)] = row
        row_offset += block.shape[0]
        col_offset += block.shape[1]
    return matrix(rows, ncols)


def is_zero(a: DomainMatrix) -> bool:
    return all(x == ZERO for row in entries(a) for x in row)


def rref(a: DomainMatrix) -> tuple[DomainMatrix, tuple[int, ...]]:
    """Приведенный ступенчатый вид и номера ведущих столбцов."""
    nrows, ncols = a.shape
    if nrows == 0 or ncols == 0:
        return a, ()
    reduced, pivots = a.rref()
    return reduced, tuple(pivots)


def rank(a: DomainMatrix) -> int:
    return len(rref(a)[1])


def kernel(a: DomainMatrix) -> DomainMatrix:
    """
    Базис ядра матрицы a.

    Возвращает:
        DomainMatrix: Матрица n x k, столбцы которой образуют базис ядра.
    """
    ncols = a.shape[1]
    reduced, pivots = rref(a)
    data = entries(reduced)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vector = [ZERO] * ncols
        vector[f] = ONE
        for row, p in enumerate(pivots):
            vector[p] = -data[row][f] / data[row][p]
        basis.append(vector)
    return from_columns(basis, ncols)


def column_space(a: DomainMatrix) -> DomainMatrix:
    """Базис образа: независимые столбцы самой матрицы a."""
    _, pivots = rref(a)
    cols = columns(a)
    return from_columns([cols[p] for p in pivots], a.shape[0])


def solve(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix | None:
    """
    Частное решение системы a x = b (b - один или несколько столбцов).

    Возвращает:
        DomainMatrix | None: Решение или None, если система несовместна.
    """
    nrows, ncols = a.shape
    nrhs = b.shape[1]
    if nrows == 0:
        return zeros(ncols, nrhs)
    augmented = hstack([a, b], nrows)
    reduced, pivots = rref(augmented)
    if any(p >= ncols for p in pivots):
        return None
    data = entries(reduced)
    solution = [[ZERO] * nrhs for _ in range(ncols)]
    for row, p in enumerate(pivots):
        for k in range(nrhs):
            solution[p][k] = data[row][ncols + k] / data[row][p]
    return matrix(solution, nrhs)


def inverse(a: DomainMatrix) -> DomainMatrix:
    n = a.shape[0]
    if n == 0:
        return zeros(0, 0)
    return a.inv()


def det(a: DomainMatrix) -> Scalar:
    if a.shape[0] == 0:
        return ONE
    return a.det()


def complement(basis: DomainMatrix) -> DomainMatrix:
    """
    Дополняет независимые столбцы basis стандартными векторами до базиса.

    Возвращает:
        DomainMatrix: Стандартные векторы e_i, не попавшие в ведущие столбцы basis^T.
    """
    n = basis.shape[0]
    _, pivots = rref(transpose(basis))
    rows = [[ONE if i == c else ZERO for i in range(n)] for c in range(n) if c not in pivots]
    return transpose(matrix(rows, n)) if rows else zeros(n, 0)


def span_contains(basis: DomainMatrix, vectors: DomainMatrix) -> bool:
    """Лежат ли столбцы vectors в линейной оболочке столбцов basis."""
    if vectors.shape[1] == 0:
        return True
    return rank(hstack([basis, vectors], basis.shape[0])) == rank(basis)


def flatten(a: DomainMatrix) -> list[Scalar]:
    return [x for row in entries(a) for x in row]


def trace(a: DomainMatrix) -> Scalar:
    data = entries(a)
    return sum((data[i][i] for i in range(a.shape[0])), ZERO)


def vector(values: Iterable[int | Fraction | Scalar]) -> DomainMatrix:
    """Столбец из значений."""
    data = [[qq(v)] for v in values]
    return matrix(data, 1)
