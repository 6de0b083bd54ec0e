import logging
from dataclasses import dataclass, field
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from chaintilt.algebra import linalg
from chaintilt.algebra.linalg import Scalar
from chaintilt.config import get_settings
from chaintilt.exceptions import NotFiniteDimensionalError

logger = logging.getLogger(__name__)


class Arrow(BaseModel):
    """
    Стрелка колчана.

    Атрибуты:
        name (str): Имя стрелки (уникально в колчане).
        source (int): Начало.
        target (int): Конец.
    """

    name: str
    source: int
    target: int

    model_config = ConfigDict(frozen=True)


class RelationTerm(BaseModel):
    """
    Слагаемое соотношения: коэффициент и путь.

    Путь записан в порядке прохождения стрелок: ("alpha_1", "beta_1") означает
    сначала alpha_1, затем beta_1, то есть композицию beta_1 alpha_1.
    """

    coefficient: int
    path: tuple[str, ...]

    model_config = ConfigDict(frozen=True)


class Relation(BaseModel):
    """
    Соотношение - линейная комбинация параллельных путей.

    Атрибуты:
        terms (tuple[RelationTerm, ...]): Слагаемые.
        label (str): Человекочитаемая запись для отчетов.
    """

    terms: tuple[RelationTerm, ...] = Field(default=..., min_length=1)
    label: str = ""

    model_config = ConfigDict(frozen=True)


class QuiverPresentation(BaseModel):
    """
    Колчан с соотношениями.

    Атрибуты:
        vertex_count (int): Число вершин 0..vertex_count-1.
        arrows (tuple[Arrow, ...]): Стрелки.
        relations (tuple[Relation, ...]): Однородные соотношения длины 2.
    """

    vertex_count: int = Field(default=..., ge=1)
    arrows: tuple[Arrow, ...] = ()
    relations: tuple[Relation, ...] = ()

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_presentation(self) -> "QuiverPresentation":
        names = [arrow.name for arrow in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        for arrow in self.arrows:
            if not (0 <= arrow.source < self.vertex_count and 0 <= arrow.target < self.vertex_count):
                raise ValueError("arrow {name} has an endpoint outside the quiver".format(name=arrow.name))

        by_name = {arrow.name: arrow for arrow in self.arrows}
        for relation in self.relations:
            ends = set()
            for term in relation.terms:
                if len(term.path) != 2:
                    raise ValueError("relations must be combinations of paths of length 2")
                if any(name not in by_name for name in term.path):
                    raise ValueError("relation uses an unknown arrow: {path}".format(path=term.path))
                first, second = by_name[term.path[0]], by_name[term.path[1]]
                if first.target != second.source:
                    raise ValueError("path {path} is not composable".format(path=term.path))
                ends.add((first.source, second.target))
            if len(ends) != 1:
                raise ValueError("relation {label!r} mixes non-parallel paths".format(label=relation.label))
        return self

    def arrow_index(self, name: str) -> int:
        for index, arrow in enumerate(self.arrows):
            if arrow.name == name:
                return index
        raise KeyError(name)


class Path(NamedTuple):
    """Путь: начальная вершина и индексы стрелок в порядке прохождения."""

    source: int
    arrows: tuple[int, ...]

    def then(self, arrow: int) -> "Path":
        return Path(self.source, self.arrows + (arrow,))

    @property
    def length(self) -> int:
        return len(self.arrows)


@dataclass
class GradedPiece:
    """
    Часть алгебры путей с фиксированными началом, концом и длиной.

    Атрибуты:
        paths (list[Path]): Все пути этой длины между вершинами.
        ideal_rows (list[tuple[int, dict[int, Scalar]]]): Ступенчатый базис идеала
            соотношений (ведущий столбец, разреженная строка).
        basis (list[int]): Номера путей, образующих базис фактора.
    """

    paths: list[Path]
    ideal_rows: list[tuple[int, dict[int, Scalar]]] = field(default_factory=list)
    basis: list[int] = field(default_factory=list)

    def column(self, path: Path) -> int:
        return self.paths.index(path)


@dataclass
class AlgebraBasis:
    """
    Конечномерная фактор-алгебра алгебры путей с явным градуированным базисом.

    Атрибуты:
        presentation (QuiverPresentation): Колчан с соотношениями.
        pieces (dict[tuple[int, int, int], GradedPiece]): Части по (начало, конец, длина).
        stabilization_length (int): Первая длина с нулевой частью.
    """

    presentation: QuiverPresentation
    pieces: dict[tuple[int, int, int], GradedPiece]
    stabilization_length: int

    @property
    def vertex_count(self) -> int:
        return self.presentation.vertex_count

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.presentation.arrows

    @property
    def dimension(self) -> int:
        return sum(len(piece.basis) for piece in self.pieces.values())

    def target(self, path: Path) -> int:
        if not path.arrows:
            return path.source
        return self.arrows[path.arrows[-1]].target

    def graded_dimension(self, length: int) -> int:
        return sum(
            len(piece.basis) for (_, _, ell), piece in self.pieces.items() if ell == length
        )

    def basis_paths(self, source: int, target: int) -> list[Path]:
        """Базисные пути из source в target, упорядоченные по длине."""
        result = []
        for length in range(self.stabilization_length):
            piece = self.pieces.get((source, target, length))
            if piece is not None:
                result.extend(piece.paths[k] for k in piece.basis)
        return result

    def normal_form(self, path: Path) -> dict[Path, Scalar]:
        """
        Раскладывает класс пути по базису.

        Возвращает:
            dict[Path, Scalar]: Ненулевые коэффициенты при базисных путях.
        """
        piece = self.pieces.get((path.source, self.target(path), path.length))
        if piece is None:
            return {}
        vector = {piece.column(path): linalg.ONE}
        for pivot, row in piece.ideal_rows:
            coefficient = vector.get(pivot)
            if coefficient is None or coefficient == linalg.ZERO:
                continue
            factor = coefficient / row[pivot]
            for col, value in row.items():
                vector[col] = vector.get(col, linalg.ZERO) - factor * value
        return {
            piece.paths[col]: value
            for col, value in vector.items()
            if value != linalg.ZERO
        }

    def multiply(self, first: Path, then: Path) -> dict[Path, Scalar]:
        """Класс композиции: сначала first, потом then."""
        if self.target(first) != then.source:
            return {}
        return self.normal_form(Path(first.source, first.arrows + then.arrows))

    def path_label(self, path: Path) -> str:
        if not path.arrows:
            return "e{v}".format(v=path.source)
        return ".".join(self.arrows[a].name for a in reversed(path.arrows))


def build_basis(presentation: QuiverPresentation, cap: int | None = None) -> AlgebraBasis:
    """
    Строит градуированный базис фактора алгебры путей по идеалу соотношений.

    Часть идеала длины l+1 порождается сдвигами a∘I_l части длины l на стрелки и
    произведениями r∘w соотношений на пути длины l-1. Построение останавливается на
    первой нулевой части фактора.

    Параметры:
        presentation (QuiverPresentation): Колчан с соотношениями длины 2.
        cap (int | None): Предельная длина путей (по умолчанию из настроек).

    Возвращает:
        AlgebraBasis: Базис алгебры.

    Ошибки:
        NotFiniteDimensionalError: Предел длины достигнут раньше нулевой части.
    """
    if cap is None:
        cap = get_settings().max_pathlen

    arrows = presentation.arrows
    outgoing: dict[int, list[int]] = {v: [] for v in range(presentation.vertex_count)}
    for index, arrow in enumerate(arrows):
        outgoing[arrow.source].append(index)

    def target(path: Path) -> int:
        return arrows[path.arrows[-1]].target if path.arrows else path.source

    relations = [
        [
            (linalg.qq(term.coefficient), tuple(presentation.arrow_index(name) for name in term.path))
            for term in relation.terms
        ]
        for relation in presentation.relations
    ]

    pieces: dict[tuple[int, int, int], GradedPiece] = {}
    current = [Path(v, ()) for v in range(presentation.vertex_count)]
    previous_paths: list[Path] = []

    for length in range(cap + 1):
        if length > 0:
            previous_paths = current
            current = [path.then(a) for path in previous_paths for a in outgoing[target(path)]]

        groups: dict[tuple[int, int], list[Path]] = {}
        for path in current:
            groups.setdefault((path.source, target(path)), []).append(path)

        generators: dict[tuple[int, int], list[dict[Path, Scalar]]] = {key: [] for key in groups}
        if length >= 2:
            for (s, t_mid, ell), piece in pieces.items():
                if ell != length - 1:
                    continue
                for _, row in piece.ideal_rows:
                    for a in outgoing[t_mid]:
                        shifted = {piece.paths[col].then(a): value for col, value in row.items()}
                        generators.setdefault((s, arrows[a].target), []).append(shifted)
            for terms in relations:
                first_arrow = arrows[terms[0][1][0]]
                last_arrow = arrows[terms[0][1][-1]]
                if length == 2:
                    prefixes = [Path(first_arrow.source, ())]
                else:
                    prefixes = [
                        path
                        for path in _paths_of_length(pieces, length - 2)
                        if target(path) == first_arrow.source
                    ]
                for prefix in prefixes:
                    generators.setdefault((prefix.source, last_arrow.target), []).append(
                        {Path(prefix.source, prefix.arrows + word): c for c, word in terms}
                    )

        for (s, t), paths in groups.items():
            piece = GradedPiece(paths=paths)
            rows = generators.get((s, t), [])
            if rows:
                index = {path: col for col, path in enumerate(paths)}
                dense = []
                for row in rows:
                    values = [linalg.ZERO] * len(paths)
                    for path, value in row.items():
                        values[index[path]] += value
                    dense.append(values)
                reduced, pivots = linalg.rref(linalg.matrix(dense, len(paths)))
                data = linalg.entries(reduced)
                piece.ideal_rows = [
                    (p, {col: x for col, x in enumerate(data[r]) if x != linalg.ZERO})
                    for r, p in enumerate(pivots)
                ]
                piece.basis = [col for col in range(len(paths)) if col not in pivots]
            else:
                piece.basis = list(range(len(paths)))
            pieces[(s, t, length)] = piece

        graded = sum(len(pieces[(s, t, length)].basis) for (s, t) in groups)
        logger.debug("graded piece %d has dimension %d", length, graded)
        if graded == 0:
            return AlgebraBasis(presentation=presentation, pieces=pieces, stabilization_length=length)

    raise NotFiniteDimensionalError("not finite-dimensional within cap")


def _paths_of_length(pieces: dict[tuple[int, int, int], GradedPiece], length: int) -> list[Path]:
    return [path for (_, _, ell), piece in pieces.items() if ell == length for path in piece.paths]
