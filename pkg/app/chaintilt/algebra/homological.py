"""
Проективные резольвенты, Ext, универсальные расширения и усечение комплексов
проективных модулей.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

from sympy.polys.matrices import DomainMatrix

from chaintilt.algebra import linalg
from chaintilt.algebra.modules import (
    Module,
    Morphism,
    combine,
    compose,
    direct_sum,
    hom_space,
    identity_morphism,
    kernel_subspaces,
    projective_module,
    quotient,
    radical_subspaces,
    simple_module,
    submodule,
    zero_module,
)
from chaintilt.algebra.quiver import AlgebraBasis
from chaintilt.config import get_settings
from chaintilt.exceptions import (
    AlgebraError,
    CertificateError,
    DependentClassesError,
    ResolutionLengthError,
    TailNotExactError,
)
from chaintilt.models.models import ExtGroups

logger = logging.getLogger(__name__)

CLAUSE_CONNECTING_MAP = "connecting map recovers the chosen Ext^1 classes"


def projective_sum(algebra: AlgebraBasis, vertices: Sequence[int]) -> Module:
    """Прямая сумма P(v) по списку вершин (с повторениями)."""
    if not vertices:
        return zero_module(algebra)
    return direct_sum(
        [projective_module(algebra, v) for v in vertices],
        name=" + ".join("P({v})".format(v=v) for v in vertices),
    )


def map_from_projective_sum(
    source: Module, vertices: Sequence[int], target: Module, images: Sequence[DomainMatrix]
) -> Morphism:
    """
    Гомоморфизм из суммы проективных, заданный образами порождающих.

    Порождающий e_g слагаемого P(v_g) переходит в столбец images[g] из target в вершине v_g;
    базисный путь p переходит в p * images[g].

    Параметры:
        source (Module): Сумма проективных projective_sum(algebra, vertices).
        vertices (Sequence[int]): Вершины слагаемых.
        target (Module): Цель.
        images (Sequence[DomainMatrix]): Образы порождающих (столбцы).

    Возвращает:
        Morphism: Гомоморфизм source -> target.
    """
    algebra = target.algebra
    maps = []
    for w in algebra.vertices:
        cols = []
        for v, image in zip(vertices, images):
            for path in algebra.basis_paths(v, w):
                cols.append(linalg.matmul(target.path_matrix(path), image))
        maps.append(linalg.hstack(cols, target.dims[w]))
    return Morphism(source, target, tuple(maps))


def _generator_offsets(algebra: AlgebraBasis, vertices: Sequence[int], at: int) -> list[int]:
    offsets, total = [], 0
    for v in vertices:
        offsets.append(total)
        total += len(algebra.basis_paths(v, at))
    return offsets


def projective_cover(module: Module) -> tuple[tuple[int, ...], Morphism]:
    """
    Проективное накрытие: базис верхушки M / rad(M) поднимается до порождающих.

    Возвращает:
        tuple[tuple[int, ...], Morphism]: Вершины слагаемых накрытия и сюръекция на M.
    """
    algebra = module.algebra
    radical = radical_subspaces(module)
    vertices: list[int] = []
    images: list[DomainMatrix] = []
    for v in algebra.vertices:
        for column in linalg.columns(linalg.complement(radical[v])):
            vertices.append(v)
            images.append(linalg.vector(column))
    source = projective_sum(algebra, vertices)
    return tuple(vertices), map_from_projective_sum(source, vertices, module, images)


@dataclass(frozen=True)
class ComplexOfProjectives:
    """
    Ограниченный коцепной комплекс сумм неразложимых проективных.

    Атрибуты:
        algebra (AlgebraBasis): Алгебра.
        lo (int): Наименьшая степень.
        terms (tuple[tuple[int, ...], ...]): Вершины слагаемых в степенях lo..hi.
        modules (tuple[Module, ...]): Сами члены комплекса.
        differentials (tuple[Morphism, ...]): d^k: D^k -> D^{k+1}, k = lo..hi-1.
        augmentation (Morphism | None): Для резольвенты - сюръекция D^0 -> M.
    """

    algebra: AlgebraBasis
    lo: int
    terms: tuple[tuple[int, ...], ...]
    modules: tuple[Module, ...]
    differentials: tuple[Morphism, ...]
    augmentation: Morphism | None = None

    def __post_init__(self) -> None:
        if len(self.modules) != len(self.terms) or len(self.differentials) != len(self.terms) - 1:
            raise AlgebraError("complex terms and differentials do not match")
        for first, second in zip(self.differentials, self.differentials[1:]):
            if not compose(second, first).is_zero():
                raise AlgebraError("consecutive differentials do not compose to zero")

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, degree: int) -> Module:
        return self.modules[degree - self.lo]

    def vertices(self, degree: int) -> tuple[int, ...]:
        return self.terms[degree - self.lo]

    def differential(self, degree: int) -> Morphism:
        """d^degree: D^degree -> D^{degree+1}."""
        return self.differentials[degree - self.lo]

    def multiplicities(self, degree: int) -> tuple[int, ...]:
        """Кратности P(0), ..., P(t) в члене степени degree."""
        counts = [0] * self.algebra.vertex_count
        for v in self.vertices(degree):
            counts[v] += 1
        return tuple(counts)

    @property
    def length(self) -> int:
        return len(self.terms) - 1


def minimal_projective_resolution(module: Module, max_length: int | None = None) -> ComplexOfProjectives:
    """
    Минимальная проективная резольвента 0 -> P_n -> ... -> P_0 -> M.

    Комплекс записан в степенях -n..0, аугментация P_0 -> M сохраняется отдельно.

    Параметры:
        module (Module): Модуль M.
        max_length (int | None): Предел длины (по умолчанию из настроек).

    Возвращает:
        ComplexOfProjectives: Резольвента.

    Ошибки:
        ResolutionLengthError: Длина резольвенты превышает max_length.
    """
    if max_length is None:
        max_length = get_settings().max_resolution

    vertices, cover = projective_cover(module)
    augmentation = cover
    terms = [vertices]
    modules = [cover.source]
    maps: list[Morphism] = []
    while True:
        kernel = kernel_subspaces(cover)
        if all(basis.shape[1] == 0 for basis in kernel):
            break
        if len(terms) > max_length:
            raise ResolutionLengthError("resolution exceeds max_length")
        syzygy, inclusion = submodule(cover.source, kernel)
        vertices, cover = projective_cover(syzygy)
        maps.append(compose(inclusion, cover))
        terms.append(vertices)
        modules.append(cover.source)

    logger.debug("resolution of %s has length %d", module.name or module.dims, len(terms) - 1)
    return ComplexOfProjectives(
        algebra=module.algebra,
        lo=-(len(terms) - 1),
        terms=tuple(reversed(terms)),
        modules=tuple(reversed(modules)),
        differentials=tuple(reversed(maps)),
        augmentation=augmentation,
    )


def projective_dimension(module: Module) -> int:
    return minimal_projective_resolution(module).length


def global_dimension(algebra: AlgebraBasis) -> int:
    """Глобальная размерность: максимум pd(S_v) по вершинам."""
    return max(projective_dimension(simple_module(algebra, v)) for v in algebra.vertices)


def precomposition_matrix(
    differential: Morphism, source_vertices: Sequence[int], target_vertices: Sequence[int], module: Module
) -> DomainMatrix:
    """
    Матрица отображения Hom(D', N) -> Hom(D, N), f -> f∘d, для d: D -> D'.

    По лемме Йонеды Hom(P(v), N) = N_v, поэтому Hom(D', N) - сумма N_{v_g} по
    порождающим D'. Блок (h, g) равен сумме c_p N(p) по путям p из v_g в v_h,
    где c_p - коэффициенты d(e_h) в слагаемом g.
    """
    algebra = module.algebra
    cols = sum(module.dims[v] for v in target_vertices)
    rows_out: list[DomainMatrix] = []
    for h, vh in enumerate(source_vertices):
        image = linalg.columns(differential.maps[vh])[_generator_offsets(algebra, source_vertices, vh)[h]]
        offsets = _generator_offsets(algebra, target_vertices, vh)
        blocks = []
        for g, vg in enumerate(target_vertices):
            block = linalg.zeros(module.dims[vh], module.dims[vg])
            for k, path in enumerate(algebra.basis_paths(vg, vh)):
                coefficient = image[offsets[g] + k]
                if coefficient != linalg.ZERO:
                    block = linalg.add(block, linalg.scale(module.path_matrix(path), coefficient))
            blocks.append(block)
        rows_out.append(linalg.hstack(blocks, module.dims[vh]))
    return linalg.vstack(rows_out, cols)


def ext_groups(
    source: Module,
    target: Module,
    up_to: int | None = None,
    resolution: ComplexOfProjectives | None = None,
) -> ExtGroups:
    """
    Размерности Ext^k(M, N) через комплекс Hom(резольвента M, N).

    Параметры:
        source (Module): M.
        target (Module): N.
        up_to (int | None): Наибольшая степень; по умолчанию pd(M).
        resolution (ComplexOfProjectives | None): Готовая минимальная резольвента M.

    Возвращает:
        ExtGroups: dims[k] = dim Ext^k(M, N) для k = 0..up_to.
    """
    if resolution is None:
        resolution = minimal_projective_resolution(source)
    n = resolution.length
    if up_to is None:
        up_to = n

    # P_k стоит в степени -k; delta^k: Hom(P_k, N) -> Hom(P_{k+1}, N)
    cochain_dims = [sum(target.dims[v] for v in resolution.vertices(-k)) for k in range(n + 1)]
    ranks = []
    for k in range(n):
        delta = precomposition_matrix(
            resolution.differential(-k - 1),
            resolution.vertices(-k - 1),
            resolution.vertices(-k),
            target,
        )
        ranks.append(linalg.rank(delta))

    dims = []
    for k in range(up_to + 1):
        if k > n:
            dims.append(0)
            continue
        outgoing = ranks[k] if k < n else 0
        incoming = ranks[k - 1] if k > 0 else 0
        dims.append(cochain_dims[k] - outgoing - incoming)
    return ExtGroups(dims=tuple(dims))


def algebra_cartan_matrix(algebra: AlgebraBasis) -> list[list[int]]:
    """Матрица Картана алгебры: строка v - вектор размерностей P(v)."""
    return [
        [len(algebra.basis_paths(v, w)) for w in algebra.vertices]
        for v in algebra.vertices
    ]


def euler_characteristic(algebra: AlgebraBasis, source: Module, target: Module) -> int:
    """
    Форма Эйлера <dim M, dim N> = (C^{-T} dim M) . dim N.

    Для модулей конечной проективной размерности совпадает с sum (-1)^k dim Ext^k(M, N).

    Ошибки:
        AlgebraError: Матрица Картана вырождена или значение нецелое.
    """
    cartan = linalg.matrix(algebra_cartan_matrix(algebra))
    multiplicities = linalg.solve(linalg.transpose(cartan), linalg.vector(source.dims))
    if multiplicities is None:
        raise AlgebraError("Cartan matrix of the algebra is singular")
    value = sum(
        (m * linalg.qq(n) for m, n in zip(linalg.flatten(multiplicities), target.dims)), linalg.ZERO
    )
    return linalg.to_int(value)


def _flatten_morphism(morphism: Morphism) -> list:
    return [x for f in morphism.maps for x in linalg.flatten(f)]


def _syzygy_presentation(module: Module) -> tuple[Morphism, Morphism]:
    """Проективное представление: вложение Omega -> Q_0 и накрытие Q_0 -> M."""
    _, cover = projective_cover(module)
    _, inclusion = submodule(cover.source, kernel_subspaces(cover), name="Omega")
    return inclusion, cover


def ext1_representatives(first: Module, second: Module) -> tuple[Morphism, list[Morphism]]:
    """
    Представители базиса Ext^1(A, B) = Hom(Omega, B) / ограничения Hom(Q_0, B).

    Возвращает:
        tuple[Morphism, list[Morphism]]: Вложение Omega -> Q_0 и отображения Omega -> B.
    """
    inclusion, _ = _syzygy_presentation(first)
    restricted = [compose(f, inclusion) for f in hom_space(inclusion.target, second)]
    candidates = hom_space(inclusion.source, second)
    if not candidates:
        return inclusion, []

    size = len(_flatten_morphism(candidates[0]))
    span = [_flatten_morphism(f) for f in restricted]
    current = linalg.rank(linalg.from_columns(span, size)) if span else 0
    chosen = []
    for f in candidates:
        trial = span + [_flatten_morphism(f)]
        value = linalg.rank(linalg.from_columns(trial, size))
        if value > current:
            span, current = trial, value
            chosen.append(f)
    return inclusion, chosen


def realize_extension(
    first: Module, second: Module, classes: Sequence[Sequence[int]] | None = None
) -> Module:
    """
    Средний член X последовательности 0 -> B^r -> X -> A -> 0.

    X - кодекартов квадрат вдоль Omega -> Q_0: фактор Q_0 + B^r по образу
    Omega -> Q_0 + B^r, k -> (i(k), -f_1(k), ..., -f_r(k)).

    Параметры:
        first (Module): A.
        second (Module): B.
        classes (Sequence[Sequence[int]] | None): Классы как координаты в базисе Ext^1(A, B);
            по умолчанию весь базис.

    Возвращает:
        Module: X.

    Ошибки:
        DependentClassesError: Классы линейно зависимы в Ext^1(A, B).
    """
    inclusion, basis = ext1_representatives(first, second)
    if classes is None:
        maps = basis
    else:
        maps = []
        for coefficients in classes:
            if len(coefficients) != len(basis):
                raise DependentClassesError(
                    "class has {n} coordinates, Ext^1 has dimension {d}".format(n=len(coefficients), d=len(basis))
                )
            maps.append(combine(coefficients, basis, inclusion.source, second))
        restricted = [
            _flatten_morphism(compose(f, inclusion))
            for f in hom_space(inclusion.target, second)
        ]
        if maps:
            size = len(_flatten_morphism(maps[0]))
            base = linalg.rank(linalg.from_columns(restricted, size)) if restricted else 0
            full = linalg.rank(linalg.from_columns(restricted + [_flatten_morphism(f) for f in maps], size))
            if full - base != len(maps):
                raise DependentClassesError("dependent classes")

    r = len(maps)
    cover_module = inclusion.target
    total = direct_sum([cover_module] + [second] * r)
    omega = inclusion.source
    image = []
    for v in first.algebra.vertices:
        blocks = [inclusion.maps[v]] + [linalg.scale(f.maps[v], -1) for f in maps]
        image.append(linalg.column_space(linalg.vstack(blocks, omega.dims[v])))
    middle, projection = quotient(total, image, name="<{a}|{b}^{r}>".format(a=first.name, b=second.name, r=r))

    expected = tuple(a + r * b for a, b in zip(first.dims, second.dims))
    if middle.dims != expected:
        raise AlgebraError(
            "extension has dims {dims}, expected {expected}".format(dims=middle.dims, expected=expected)
        )
    _check_connecting_classes(inclusion, second, maps, projection)
    logger.debug("realized extension of %s by %s^%d", first.name, second.name, r)
    return middle


def _connecting_classes(inclusion: Morphism, second: Module, r: int, projection: Morphism) -> list[Morphism] | None:
    """
    Классы построенной последовательности 0 -> B^r -> X -> A -> 0.

    Накрытие Q_0 -> A поднимается в X как Q_0 -> Q_0 + B^r -> X; его ограничение на Omega
    лежит в образе B^r, и координаты по слагаемым B дают отображения Omega -> B.

    Возвращает:
        list[Morphism] | None: По отображению Omega -> B на слагаемое или None, если
            ограничение подъема не пропускается через B^r.
    """
    omega, cover_module, middle = inclusion.source, inclusion.target, projection.target
    blocks: list[list[DomainMatrix]] = [[] for _ in range(r)]
    for v in omega.algebra.vertices:
        c, b = cover_module.dims[v], second.dims[v]
        to_cover = linalg.vstack([linalg.identity(c), linalg.zeros(r * b, c)], c)
        to_sum = linalg.vstack([linalg.zeros(c, r * b), linalg.identity(r * b)], r * b)
        lifted = linalg.matmul(projection.maps[v], linalg.matmul(to_cover, inclusion.maps[v]))
        embedded = linalg.matmul(projection.maps[v], to_sum)
        if middle.dims[v] == 0:
            solution = linalg.zeros(r * b, omega.dims[v])
        else:
            found = linalg.solve(embedded, lifted)
            if found is None:
                return None
            solution = found
        rows = linalg.entries(solution)
        for i in range(r):
            blocks[i].append(linalg.matrix(rows[i * b : (i + 1) * b], omega.dims[v]))
    return [Morphism(omega, second, tuple(maps)) for maps in blocks]


def _check_connecting_classes(
    inclusion: Morphism, second: Module, maps: Sequence[Morphism], projection: Morphism
) -> None:
    """
    Ошибки:
        CertificateError: Классы построенного расширения отличаются от выбранных в Ext^1(A, B).
    """
    recovered = _connecting_classes(inclusion, second, len(maps), projection)
    if recovered is None:
        raise CertificateError("lift of the cover does not restrict to B^r", clause=CLAUSE_CONNECTING_MAP)
    restricted = [_flatten_morphism(compose(f, inclusion)) for f in hom_space(inclusion.target, second)]
    for index, (chosen, found) in enumerate(zip(maps, recovered)):
        size = len(_flatten_morphism(chosen))
        difference = [x - y for x, y in zip(_flatten_morphism(found), _flatten_morphism(chosen))]
        base = linalg.rank(linalg.from_columns(restricted, size)) if restricted else 0
        if linalg.rank(linalg.from_columns(restricted + [difference], size)) != base:
            raise CertificateError(
                "class {i} of the extension differs from the chosen Ext^1 class".format(i=index),
                clause=CLAUSE_CONNECTING_MAP,
            )


def universal_extension_module(first: Module, second: Module) -> Module:
    """
    Универсальное расширение <A|B^r> с r = dim Ext^1(A, B).

    Ошибки:
        AlgebraError: Ext^1(B, B) = 0, но Ext^1(<A|B^r>, B) != 0.
    """
    middle = realize_extension(first, second)
    if ext_groups(second, second, 1).degree(1) == 0 and ext_groups(middle, second, 1).degree(1) != 0:
        raise AlgebraError("universal extension still has Ext^1 to {b}".format(b=second.name))
    return middle


def truncate_projective_complex(complex_: ComplexOfProjectives) -> ComplexOfProjectives:
    """
    Отщепляет точный хвост в положительных степенях.

    Пока комплекс кончается в степени a > 0, последний дифференциал d: D^{a-1} -> D^a
    сюръективен; он расщепляется, ядро K проективно, и D^{a-1} заменяется на K.

    Ошибки:
        TailNotExactError: Последний дифференциал не сюръективен.
    """
    current = complex_
    algebra = complex_.algebra
    while current.hi > 0:
        a = current.hi
        if a == current.lo:
            if not current.term(a).is_zero():
                raise TailNotExactError("tail not exact")
            current = ComplexOfProjectives(algebra, a - 1, ((),), (zero_module(algebra),), ())
            continue
        last = current.differential(a - 1)
        if not last.is_surjective():
            raise TailNotExactError("tail not exact")

        # сечение: поднимаем порождающие D^a
        top_vertices = current.vertices(a)
        lifts = []
        for g, v in enumerate(top_vertices):
            lift = linalg.solve(last.maps[v], _generator_vector(algebra, top_vertices, g))
            if lift is None:
                raise TailNotExactError("tail not exact")
            lifts.append(lift)
        section = map_from_projective_sum(current.term(a), top_vertices, current.term(a - 1), lifts)
        splitting = compose(last, section)
        identity = identity_morphism(current.term(a))
        if not all(linalg.is_zero(linalg.sub(f, g)) for f, g in zip(splitting.maps, identity.maps)):
            raise AlgebraError("section of the last differential is not a splitting")

        kernel_module, inclusion = submodule(current.term(a - 1), kernel_subspaces(last))
        vertices, cover = projective_cover(kernel_module)
        if cover.source.dims != kernel_module.dims:
            raise AlgebraError("kernel of a split surjection is not projective")
        embedding = compose(inclusion, cover)

        terms = list(current.terms[:-1])
        modules = list(current.modules[:-1])
        differentials = list(current.differentials[:-1])
        terms[-1] = vertices
        modules[-1] = cover.source
        if differentials:
            previous = differentials[-1]
            maps = []
            for e, d in zip(embedding.maps, previous.maps):
                factor = linalg.solve(e, d)
                if factor is None:
                    raise AlgebraError("differential does not land in the kernel")
                maps.append(factor)
            differentials[-1] = Morphism(previous.source, cover.source, tuple(maps))
        current = ComplexOfProjectives(
            algebra, current.lo, tuple(terms), tuple(modules), tuple(differentials), current.augmentation
        )
        logger.debug("split off the tail in degree %d", a)
    return current


def glue_split_tail(complex_: ComplexOfProjectives, vertices: Sequence[int]) -> ComplexOfProjectives:
    """
    Приклеивает к комплексу точный хвост D^a + P -> P (тождественное отображение на P),
    где a - последняя степень, а P - сумма P(v) по vertices.
    """
    algebra = complex_.algebra
    a = complex_.hi
    tail = projective_sum(algebra, vertices)
    widened_vertices = tuple(complex_.vertices(a)) + tuple(vertices)
    widened = projective_sum(algebra, widened_vertices)
    old = complex_.term(a)

    differentials = list(complex_.differentials)
    if differentials:
        previous = differentials[-1]
        differentials[-1] = Morphism(
            previous.source,
            widened,
            tuple(
                linalg.vstack([f, linalg.zeros(tail.dims[v], f.shape[1])], f.shape[1])
                for v, f in enumerate(previous.maps)
            ),
        )
    differentials.append(
        Morphism(
            widened,
            tail,
            tuple(
                linalg.hstack([linalg.zeros(tail.dims[v], old.dims[v]), linalg.identity(tail.dims[v])], tail.dims[v])
                for v in algebra.vertices
            ),
        )
    )
    terms = complex_.terms[:-1] + (widened_vertices, tuple(vertices))
    modules = complex_.modules[:-1] + (widened, tail)
    return ComplexOfProjectives(algebra, complex_.lo, terms, modules, tuple(differentials), complex_.augmentation)


def _generator_vector(algebra: AlgebraBasis, vertices: Sequence[int], g: int) -> DomainMatrix:
    """Порождающий e_g суммы проективных как вектор в вершине vertices[g]."""
    v = vertices[g]
    offsets = _generator_offsets(algebra, vertices, v)
    size = sum(len(algebra.basis_paths(w, v)) for w in vertices)
    return linalg.vector([1 if k == offsets[g] else 0 for k in range(size)])


def cohomology_dims(complex_: ComplexOfProjectives) -> dict[int, tuple[int, ...]]:
    """
    Когомологии комплекса по степеням и вершинам.

    Возвращает:
        dict[int, tuple[int, ...]]: dim H^k в каждой вершине.
    """
    result = {}
    for k in complex_.degrees:
        dims = []
        for v in complex_.algebra.vertices:
            size = complex_.term(k).dims[v]
            outgoing = linalg.rank(complex_.differential(k).maps[v]) if k < complex_.hi else 0
            incoming = linalg.rank(complex_.differential(k - 1).maps[v]) if k > complex_.lo else 0
            dims.append(size - outgoing - incoming)
        result[k] = tuple(dims)
    return result
