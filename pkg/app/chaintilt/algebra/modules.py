"""
Представления колчана с соотношениями (модули над AlgebraBasis) и морфизмы между ними.

Соглашение о композиции: пути действуют посткомпозицией, матрица стрелки a
переводит пространство в начале a в пространство в конце a.
"""

import logging
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from sympy import QQ, Add, Symbol, symbols
from sympy.polys.matrices import DomainMatrix

from chaintilt.algebra import linalg
from chaintilt.algebra.linalg import Scalar
from chaintilt.algebra.quiver import AlgebraBasis, Path
from chaintilt.config import get_settings
from chaintilt.exceptions import InconclusiveError, NotIndecomposableError, RelationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Module:
    """
    Конечномерный модуль: пространство в каждой вершине и матрицы стрелок.

    Атрибуты:
        algebra (AlgebraBasis): Алгебра, над которой задан модуль.
        dims (tuple[int, ...]): Размерности в вершинах.
        maps (tuple[DomainMatrix, ...]): Матрицы стрелок (конец x начало).
        name (str): Подпись для отчетов.
    """

    algebra: AlgebraBasis
    dims: tuple[int, ...]
    maps: tuple[DomainMatrix, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if len(self.dims) != self.algebra.vertex_count:
            raise RelationError("dimension vector has the wrong length")
        if len(self.maps) != len(self.algebra.arrows):
            raise RelationError("one matrix per arrow is required")
        for arrow, phi in zip(self.algebra.arrows, self.maps):
            if phi.shape != (self.dims[arrow.target], self.dims[arrow.source]):
                raise RelationError("matrix of arrow {name} has the wrong shape".format(name=arrow.name))
        for relation in self.algebra.presentation.relations:
            first = self.algebra.presentation.arrow_index(relation.terms[0].path[0])
            source = self.algebra.arrows[first].source
            last = self.algebra.presentation.arrow_index(relation.terms[0].path[-1])
            target = self.algebra.arrows[last].target
            value = linalg.zeros(self.dims[target], self.dims[source])
            for term in relation.terms:
                word = tuple(self.algebra.presentation.arrow_index(n) for n in term.path)
                value = linalg.add(value, linalg.scale(self.path_matrix(Path(source, word)), term.coefficient))
            if not linalg.is_zero(value):
                raise RelationError("relation {label!r} does not hold".format(label=relation.label))

    @property
    def total_dimension(self) -> int:
        return sum(self.dims)

    def path_matrix(self, path: Path) -> DomainMatrix:
        """Действие пути: произведение матриц стрелок в порядке прохождения."""
        factors = [self.maps[a] for a in path.arrows]
        return linalg.chain_product(factors, self.dims[path.source])

    def is_zero(self) -> bool:
        return self.total_dimension == 0


@dataclass(frozen=True)
class Morphism:
    """
    Гомоморфизм модулей: по матрице в каждой вершине.

    Атрибуты:
        source (Module): Источник.
        target (Module): Цель.
        maps (tuple[DomainMatrix, ...]): Матрицы target.dims[v] x source.dims[v].
    """

    source: Module
    target: Module
    maps: tuple[DomainMatrix, ...]

    def is_homomorphism(self) -> bool:
        for a, arrow in enumerate(self.source.algebra.arrows):
            left = linalg.matmul(self.maps[arrow.target], self.source.maps[a])
            right = linalg.matmul(self.target.maps[a], self.maps[arrow.source])
            if not linalg.is_zero(linalg.sub(left, right)):
                return False
        return True

    def is_surjective(self) -> bool:
        return all(linalg.rank(f) == n for f, n in zip(self.maps, self.target.dims))

    def is_injective(self) -> bool:
        return all(linalg.rank(f) == n for f, n in zip(self.maps, self.source.dims))

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and all(
            linalg.det(f) != linalg.ZERO for f in self.maps
        )

    def is_zero(self) -> bool:
        return all(linalg.is_zero(f) for f in self.maps)


def zero_morphism(source: Module, target: Module) -> Morphism:
    return Morphism(
        source,
        target,
        tuple(linalg.zeros(m, n) for m, n in zip(target.dims, source.dims)),
    )


def identity_morphism(module: Module) -> Morphism:
    return Morphism(module, module, tuple(linalg.identity(n) for n in module.dims))


def compose(second: Morphism, first: Morphism) -> Morphism:
    """Композиция second∘first (сначала first)."""
    return Morphism(
        first.source,
        second.target,
        tuple(linalg.matmul(g, f) for g, f in zip(second.maps, first.maps)),
    )


def combine(
    coefficients: Sequence[int | Scalar], morphisms: Sequence[Morphism], source: Module, target: Module
) -> Morphism:
    """Линейная комбинация морфизмов с общими источником и целью."""
    maps = []
    for v in source.algebra.vertices:
        shape = (target.dims[v], source.dims[v])
        maps.append(linalg.linear_combination(coefficients, [f.maps[v] for f in morphisms], shape))
    return Morphism(source, target, tuple(maps))


def projective_module(algebra: AlgebraBasis, vertex: int) -> Module:
    """
    Неразложимый проективный модуль P(vertex).

    Базис в вершине w - базисные пути из vertex в w; стрелка действует посткомпозицией.

    Параметры:
        algebra (AlgebraBasis): Алгебра.
        vertex (int): Вершина.

    Возвращает:
        Module: P(vertex).
    """
    bases = {w: algebra.basis_paths(vertex, w) for w in algebra.vertices}
    maps = []
    for a, arrow in enumerate(algebra.arrows):
        rows = bases[arrow.target]
        index = {path: k for k, path in enumerate(rows)}
        data = [[linalg.ZERO] * len(bases[arrow.source]) for _ in rows]
        for col, path in enumerate(bases[arrow.source]):
            for image, value in algebra.normal_form(path.then(a)).items():
                data[index[image]][col] = value
        maps.append(linalg.matrix(data, len(bases[arrow.source])))
    return Module(
        algebra,
        tuple(len(bases[w]) for w in algebra.vertices),
        tuple(maps),
        name="P({v})".format(v=vertex),
    )


def simple_module(algebra: AlgebraBasis, vertex: int) -> Module:
    """Простой модуль S(vertex): одномерное пространство в vertex, нулевые стрелки."""
    dims = tuple(1 if w == vertex else 0 for w in algebra.vertices)
    maps = tuple(linalg.zeros(dims[arrow.target], dims[arrow.source]) for arrow in algebra.arrows)
    return Module(algebra, dims, maps, name="S({v})".format(v=vertex))


def zero_module(algebra: AlgebraBasis) -> Module:
    dims = (0,) * algebra.vertex_count
    return Module(algebra, dims, tuple(linalg.zeros(0, 0) for _ in algebra.arrows), name="0")


def direct_sum(modules: Sequence[Module], name: str = "") -> Module:
    """Прямая сумма модулей (базисы склеиваются по порядку слагаемых)."""
    algebra = modules[0].algebra
    dims = tuple(sum(m.dims[v] for m in modules) for v in algebra.vertices)
    maps = tuple(
        linalg.block_diagonal([m.maps[a] for m in modules]) for a in range(len(algebra.arrows))
    )
    return Module(algebra, dims, maps, name=name or " + ".join(m.name for m in modules))


def conjugate(module: Module, changes: Sequence[DomainMatrix]) -> Module:
    """Тот же модуль в другом базисе: phi'_a = g_t phi_a g_s^{-1}."""
    maps = []
    for a, arrow in enumerate(module.algebra.arrows):
        inverse = linalg.inverse(changes[arrow.source])
        maps.append(linalg.matmul(changes[arrow.target], linalg.matmul(module.maps[a], inverse)))
    return Module(module.algebra, module.dims, tuple(maps), name=module.name)


def generated_subspaces(module: Module, seeds: Sequence[DomainMatrix]) -> list[DomainMatrix]:
    """
    Базисы наименьшего подмодуля, содержащего данные векторы.

    Параметры:
        module (Module): Модуль.
        seeds (Sequence[DomainMatrix]): В каждой вершине - столбцы-порождающие.

    Возвращает:
        list[DomainMatrix]: Базисы подмодуля по вершинам.
    """
    spans = [linalg.column_space(seed) for seed in seeds]
    changed = True
    while changed:
        changed = False
        for a, arrow in enumerate(module.algebra.arrows):
            moved = linalg.matmul(module.maps[a], spans[arrow.source])
            if not linalg.span_contains(spans[arrow.target], moved):
                spans[arrow.target] = linalg.column_space(
                    linalg.hstack([spans[arrow.target], moved], module.dims[arrow.target])
                )
                changed = True
    return spans


def submodule(module: Module, subspaces: Sequence[DomainMatrix], name: str = "") -> tuple[Module, Morphism]:
    """
    Подмодуль по базисам в вершинах.

    Возвращает:
        tuple[Module, Morphism]: Подмодуль и его вложение.

    Ошибки:
        RelationError: Подпространства не замкнуты относительно стрелок.
    """
    lefts = [_left_inverse(s) for s in subspaces]
    maps = []
    for a, arrow in enumerate(module.algebra.arrows):
        moved = linalg.matmul(module.maps[a], subspaces[arrow.source])
        if not linalg.span_contains(subspaces[arrow.target], moved):
            raise RelationError("subspaces are not closed under arrow {name}".format(name=arrow.name))
        maps.append(linalg.matmul(lefts[arrow.target], moved))
    sub = Module(module.algebra, tuple(s.shape[1] for s in subspaces), tuple(maps), name=name)
    return sub, Morphism(sub, module, tuple(subspaces))


def quotient(module: Module, subspaces: Sequence[DomainMatrix], name: str = "") -> tuple[Module, Morphism]:
    """
    Фактормодуль по подмодулю, заданному базисами в вершинах.

    Возвращает:
        tuple[Module, Morphism]: Фактор и проекция на него.
    """
    projections, sections = [], []
    for v in module.algebra.vertices:
        complement = linalg.complement(subspaces[v])
        change = linalg.hstack([subspaces[v], complement], module.dims[v])
        inverse = linalg.inverse(change)
        k = subspaces[v].shape[1]
        rows = linalg.entries(inverse)[k:]
        projections.append(linalg.matrix(rows, module.dims[v]))
        sections.append(complement)
    maps = []
    for a, arrow in enumerate(module.algebra.arrows):
        maps.append(
            linalg.matmul(projections[arrow.target], linalg.matmul(module.maps[a], sections[arrow.source]))
        )
    factor = Module(module.algebra, tuple(p.shape[0] for p in projections), tuple(maps), name=name)
    return factor, Morphism(module, factor, tuple(projections))


def kernel_subspaces(morphism: Morphism) -> list[DomainMatrix]:
    return [linalg.kernel(f) for f in morphism.maps]


def radical_subspaces(module: Module) -> list[DomainMatrix]:
    """rad(M) = сумма образов всех стрелок."""
    images: list[list[DomainMatrix]] = [[] for _ in module.algebra.vertices]
    for a, arrow in enumerate(module.algebra.arrows):
        images[arrow.target].append(module.maps[a])
    return [
        linalg.column_space(linalg.hstack(blocks, module.dims[v])) if blocks else linalg.zeros(module.dims[v], 0)
        for v, blocks in enumerate(images)
    ]


def hom_space(source: Module, target: Module) -> list[Morphism]:
    """
    Базис пространства гомоморфизмов Hom(source, target).

    Решается линейная система f_t phi^M_a = phi^N_a f_s для всех стрелок a.

    Параметры:
        source (Module): M.
        target (Module): N.

    Возвращает:
        list[Morphism]: Точный базис.
    """
    algebra = source.algebra
    offsets, total = [], 0
    for v in algebra.vertices:
        offsets.append(total)
        total += target.dims[v] * source.dims[v]

    def var(v: int, i: int, j: int) -> int:
        return offsets[v] + i * source.dims[v] + j

    rows: list[list[Scalar]] = []
    for a, arrow in enumerate(algebra.arrows):
        s, t = arrow.source, arrow.target
        phi_m = linalg.entries(source.maps[a])
        phi_n = linalg.entries(target.maps[a])
        for i in range(target.dims[t]):
            for j in range(source.dims[s]):
                row = [linalg.ZERO] * total
                for k in range(source.dims[t]):
                    if phi_m[k][j] != linalg.ZERO:
                        row[var(t, i, k)] += phi_m[k][j]
                for k in range(target.dims[s]):
                    if phi_n[i][k] != linalg.ZERO:
                        row[var(s, k, j)] -= phi_n[i][k]
                rows.append(row)

    solutions = linalg.columns(linalg.kernel(linalg.matrix(rows, total)))
    basis = []
    for solution in solutions:
        maps = []
        for v in algebra.vertices:
            block = [
                [solution[var(v, i, j)] for j in range(source.dims[v])]
                for i in range(target.dims[v])
            ]
            maps.append(linalg.matrix(block, source.dims[v]))
        basis.append(Morphism(source, target, tuple(maps)))
    return basis


def radical_hom(source: Module, target: Module) -> list[Morphism]:
    """
    Базис радикала rad(M, N) для неразложимых M и N.

    f лежит в радикале тогда и только тогда, когда tr(g∘f) = 0 для всех g: N -> M
    (характеристика ноль). При M ≇ N это все Hom(M, N), при M = N - радикал
    следовой формы на End(M).
    """
    forward = hom_space(source, target)
    if not forward:
        return []
    backward = hom_space(target, source)
    pairing = [
        [
            sum((linalg.trace(linalg.matmul(g.maps[v], f.maps[v])) for v in source.algebra.vertices), linalg.ZERO)
            for g in backward
        ]
        for f in forward
    ]
    # левое ядро: x^T G = 0
    gram = linalg.matrix(pairing, len(backward))
    solutions = linalg.columns(linalg.kernel(linalg.transpose(gram)))
    return [combine(x, forward, source, target) for x in solutions]


def endomorphism_dimension(module: Module) -> int:
    return len(hom_space(module, module))


def is_indecomposable(module: Module) -> bool:
    """Проверка dim End(M) / rad End(M) = 1 (локальность алгебры эндоморфизмов)."""
    if module.is_zero():
        return False
    return endomorphism_dimension(module) - len(radical_hom(module, module)) == 1


def require_indecomposable(module: Module) -> None:
    if not is_indecomposable(module):
        raise NotIndecomposableError(
            "module {name} with dims {dims} is not indecomposable".format(name=module.name, dims=module.dims)
        )


def _left_inverse(basis: DomainMatrix) -> DomainMatrix:
    n, k = basis.shape
    change = linalg.hstack([basis, linalg.complement(basis)], n)
    return linalg.matrix(linalg.entries(linalg.inverse(change))[:k], n)


def _generic_ranks(morphisms: Sequence[Morphism], source: Module, target: Module) -> list[int]:
    """Ранги общего элемента sum x_i f_i по вершинам (над полем рациональных функций)."""
    xs: tuple[Symbol, ...] = symbols("x0:{n}".format(n=len(morphisms)))
    field = QQ.frac_field(*xs)
    ranks = []
    for v in source.algebra.vertices:
        m, n = target.dims[v], source.dims[v]
        if m == 0 or n == 0:
            ranks.append(0)
            continue
        blocks = [linalg.entries(f.maps[v]) for f in morphisms]
        data = [
            [
                field.from_sympy(Add(*[QQ.to_sympy(block[i][j]) * x for block, x in zip(blocks, xs)]))
                for j in range(n)
            ]
            for i in range(m)
        ]
        ranks.append(DomainMatrix(data, (m, n), field).rank())
    return ranks


def search_combination(
    morphisms: Sequence[Morphism],
    source: Module,
    target: Module,
    accept: Callable[[Morphism], bool],
    budget: int | None = None,
) -> tuple[Morphism, tuple[int, ...]] | None:
    """
    Детерминированный перебор целочисленных комбинаций базиса.

    Сначала пробуются сами базисные элементы, затем псевдослучайные комбинации с
    растущим диапазоном коэффициентов.

    Возвращает:
        tuple[Morphism, tuple[int, ...]] | None: Найденный морфизм и его коэффициенты.
    """
    if budget is None:
        budget = get_settings().iso_search_budget
    count = len(morphisms)
    for k in range(count):
        coefficients = tuple(1 if i == k else 0 for i in range(count))
        if accept(morphisms[k]):
            return morphisms[k], coefficients
    rng = random.Random(0)
    bound = 1
    for attempt in range(budget):
        if attempt and attempt % 16 == 0:
            bound *= 2
        coefficients = tuple(rng.randint(-bound, bound) for _ in range(count))
        candidate = combine(coefficients, morphisms, source, target)
        if accept(candidate):
            return candidate, coefficients
    return None


def find_isomorphism(source: Module, target: Module) -> Morphism | None:
    """
    Ищет изоморфизм source -> target.

    Отрицательный ответ точный: ранг общего элемента Hom меньше размерности.

    Ошибки:
        InconclusiveError: Изоморфизм существует, но перебор не нашел свидетеля.
    """
    if source.dims != target.dims:
        return None
    if source.is_zero():
        return zero_morphism(source, target)
    basis = hom_space(source, target)
    if not basis:
        return None
    found = search_combination(basis, source, target, Morphism.is_isomorphism, budget=8)
    if found is not None:
        return found[0]
    if _generic_ranks(basis, source, target) != list(source.dims):
        return None
    found = search_combination(basis, source, target, Morphism.is_isomorphism)
    if found is None:
        raise InconclusiveError("inconclusive")
    logger.debug("isomorphism certificate %s", found[1])
    return found[0]


def is_isomorphic(source: Module, target: Module) -> bool:
    return find_isomorphism(source, target) is not None


def find_surjection(source: Module, target: Module) -> Morphism | None:
    """
    Ищет сюръекцию source -> target; None, если ее нет.

    Ошибки:
        InconclusiveError: Сюръекция существует, но перебор не нашел свидетеля.
    """
    if any(n > m for m, n in zip(source.dims, target.dims)):
        return None
    if target.is_zero():
        return zero_morphism(source, target)
    basis = hom_space(source, target)
    if not basis:
        return None
    found = search_combination(basis, source, target, Morphism.is_surjective, budget=8)
    if found is not None:
        return found[0]
    if _generic_ranks(basis, source, target) != list(target.dims):
        return None
    found = search_combination(basis, source, target, Morphism.is_surjective)
    if found is None:
        raise InconclusiveError("inconclusive")
    return found[0]
