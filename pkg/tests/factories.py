from factory import Factory, LazyFunction
from faker import Faker

from chaintilt.algebra.homological import ComplexOfProjectives, glue_split_tail, minimal_projective_resolution
from chaintilt.algebra.modules import Module, projective_module, simple_module
from chaintilt.algebra.quiver import AlgebraBasis
from chaintilt.models.models import Chain

fake = Faker()
Faker.seed(2024)
fake.seed_instance(2024)


def random_self_intersections(low: int = -4, high: int = -2, max_length: int = 4) -> tuple[int, ...]:
    length = fake.random_int(min=1, max=max_length)
    return tuple(fake.random_int(min=low, max=high) for _ in range(length))


class ChainFactory(Factory):  # type: ignore[type-arg]
    """
    Фабрика цепочек отрицательных кривых.

    Атрибуты:
        self_intersections (tuple[int, ...]): От одной до четырех кривых с C^2 из -4..-2.
    """

    class Meta:
        model = Chain

    # Если не использовать LazyFunction, то значения сгенерируются один раз и будут одинаковые
    self_intersections = LazyFunction(random_self_intersections)


class MinusTwoChainFactory(Factory):  # type: ignore[type-arg]
    """Цепочки из (-2)-кривых длины 1..3."""

    class Meta:
        model = Chain

    self_intersections = LazyFunction(lambda: (-2,) * fake.random_int(min=1, max=3))


def random_small_module(algebra: AlgebraBasis) -> Module:
    """Простой или неразложимый проективный модуль в случайной вершине."""
    vertex = fake.random_int(min=0, max=algebra.vertex_count - 1)
    if fake.boolean(chance_of_getting_true=70):
        return simple_module(algebra, vertex)
    return projective_module(algebra, vertex)


def random_split_complex(algebra: AlgebraBasis) -> tuple[ComplexOfProjectives, ComplexOfProjectives]:
    """
    Резольвента случайного простого или проективного модуля и она же с одним
    или двумя приклеенными точными хвостами.

    Возвращает:
        tuple[ComplexOfProjectives, ComplexOfProjectives]: (исходный комплекс, комплекс с хвостами).
    """
    original = minimal_projective_resolution(random_small_module(algebra))

    glued = original
    for _ in range(fake.random_int(min=1, max=2)):
        count = fake.random_int(min=1, max=2)
        vertices = [fake.random_int(min=0, max=algebra.vertex_count - 1) for _ in range(count)]
        glued = glue_split_tail(glued, vertices)
    return original, glued
