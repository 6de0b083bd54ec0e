import pytest

from chaintilt.algebra import homological, linalg
from chaintilt.algebra.homological import (
    ComplexOfProjectives,
    algebra_cartan_matrix,
    cohomology_dims,
    euler_characteristic,
    ext1_representatives,
    ext_groups,
    global_dimension,
    glue_split_tail,
    minimal_projective_resolution,
    projective_cover,
    projective_dimension,
    realize_extension,
    truncate_projective_complex,
    universal_extension_module,
)
from chaintilt.algebra.modules import (
    Module,
    Morphism,
    direct_sum,
    hom_space,
    is_isomorphic,
    projective_module,
    simple_module,
    zero_morphism,
)
from chaintilt.algebra.quiver import AlgebraBasis
from chaintilt.exceptions import CertificateError, DependentClassesError, ResolutionLengthError, TailNotExactError

from .factories import random_small_module, random_split_complex


def test_projective_cover_of_simple(lambda_1: AlgebraBasis) -> None:
    vertices, cover = projective_cover(simple_module(lambda_1, 1))
    assert vertices == (1,)
    assert cover.is_surjective()
    assert cover.source.dims == (1, 2)


def test_projective_cover_of_sum(lambda_1: AlgebraBasis) -> None:
    module = direct_sum([simple_module(lambda_1, 0), projective_module(lambda_1, 1)])
    vertices, cover = projective_cover(module)
    assert sorted(vertices) == [0, 1]
    assert cover.is_surjective()


def test_resolution_of_simple(lambda_1: AlgebraBasis) -> None:
    resolution = minimal_projective_resolution(simple_module(lambda_1, 0))
    assert resolution.lo == -2
    assert resolution.hi == 0
    assert [resolution.vertices(d) for d in resolution.degrees] == [(0,), (1,), (0,)]
    assert cohomology_dims(resolution) == {-2: (0, 0), -1: (0, 0), 0: (1, 0)}
    if resolution.augmentation is None:
        raise AssertionError("Аугментация не сохранена")
    assert resolution.augmentation.is_surjective()


@pytest.mark.parametrize("vertex, dimension", [(0, 2), (1, 1)])
def test_projective_dimension(lambda_1: AlgebraBasis, vertex: int, dimension: int) -> None:
    assert projective_dimension(simple_module(lambda_1, vertex)) == dimension
    assert projective_dimension(projective_module(lambda_1, vertex)) == 0


def test_resolution_length_cap(lambda_1: AlgebraBasis) -> None:
    with pytest.raises(ResolutionLengthError):
        minimal_projective_resolution(simple_module(lambda_1, 0), max_length=1)


def test_global_dimension(lambda_1: AlgebraBasis, lambda_2: AlgebraBasis) -> None:
    assert global_dimension(lambda_1) == 2
    assert global_dimension(lambda_2) == 2


@pytest.mark.parametrize(
    "source, target, dims",
    [
        (0, 0, (1, 0, 1)),
        (1, 1, (1, 0, 0)),
        (0, 1, (0, 1, 0)),
        (1, 0, (0, 1, 0)),
    ],
)
def test_ext_between_simples(
    lambda_1: AlgebraBasis, source: int, target: int, dims: tuple[int, int, int]
) -> None:
    groups = ext_groups(simple_module(lambda_1, source), simple_module(lambda_1, target), up_to=2)
    assert groups.dims == dims


def test_ext_from_projective_vanishes(lambda_2: AlgebraBasis) -> None:
    for v in lambda_2.vertices:
        groups = ext_groups(projective_module(lambda_2, v), simple_module(lambda_2, 0), up_to=2)
        assert groups.dims[1:] == (0, 0)


def test_algebra_cartan_matrix(lambda_1: AlgebraBasis) -> None:
    assert algebra_cartan_matrix(lambda_1) == [[1, 1], [1, 2]]


def test_euler_form_matches_ext(lambda_2: AlgebraBasis) -> None:
    modules = [simple_module(lambda_2, v) for v in lambda_2.vertices]
    modules += [projective_module(lambda_2, v) for v in lambda_2.vertices]
    for m in modules:
        for n in modules:
            expected = ext_groups(m, n, up_to=2).alternating_sum()
            assert euler_characteristic(lambda_2, m, n) == expected


def test_universal_extension_is_projective(lambda_1: AlgebraBasis) -> None:
    middle = universal_extension_module(simple_module(lambda_1, 1), projective_module(lambda_1, 0))
    assert middle.dims == (1, 2)
    assert is_isomorphic(middle, projective_module(lambda_1, 1))


def test_extension_of_simples(lambda_1: AlgebraBasis) -> None:
    _, representatives = ext1_representatives(simple_module(lambda_1, 1), simple_module(lambda_1, 0))
    assert len(representatives) == 1
    middle = realize_extension(simple_module(lambda_1, 1), simple_module(lambda_1, 0))
    expected = Module(lambda_1, (1, 1), (linalg.matrix([[0]]), linalg.matrix([[1]])))
    assert is_isomorphic(middle, expected)


def test_split_extension(lambda_1: AlgebraBasis) -> None:
    middle = realize_extension(simple_module(lambda_1, 0), simple_module(lambda_1, 0))
    assert middle.dims == (1, 0)
    assert is_isomorphic(middle, simple_module(lambda_1, 0))


@pytest.mark.parametrize("classes", [[[1], [1]], [[0]], [[1, 0]]])
def test_dependent_classes(lambda_1: AlgebraBasis, classes: list[list[int]]) -> None:
    with pytest.raises(DependentClassesError):
        realize_extension(simple_module(lambda_1, 1), simple_module(lambda_1, 0), classes=classes)


@pytest.mark.parametrize("classes", [[[1, 0]], [[0, 1]], [[1, 1]]])
def test_extension_by_some_of_the_classes(lambda_1: AlgebraBasis, classes: list[list[int]]) -> None:
    first = direct_sum([simple_module(lambda_1, 1), simple_module(lambda_1, 1)])
    _, representatives = ext1_representatives(first, simple_module(lambda_1, 0))
    assert len(representatives) == 2
    middle = realize_extension(first, simple_module(lambda_1, 0), classes=classes)
    assert middle.dims == (1, 2)
    nonsplit = Module(lambda_1, (1, 1), (linalg.matrix([[0]]), linalg.matrix([[1]])))
    assert is_isomorphic(middle, direct_sum([nonsplit, simple_module(lambda_1, 1)]))


def test_extension_by_all_classes(lambda_1: AlgebraBasis) -> None:
    first = direct_sum([simple_module(lambda_1, 1), simple_module(lambda_1, 1)])
    middle = realize_extension(first, simple_module(lambda_1, 0))
    assert middle.dims == (2, 2)


def test_extension_with_wrong_classes(lambda_1: AlgebraBasis, monkeypatch: pytest.MonkeyPatch) -> None:
    def zero_classes(inclusion: Morphism, second: Module, r: int, projection: Morphism) -> list[Morphism]:
        return [zero_morphism(inclusion.source, second) for _ in range(r)]

    monkeypatch.setattr(homological, "_connecting_classes", zero_classes)
    with pytest.raises(CertificateError) as error:
        realize_extension(simple_module(lambda_1, 1), simple_module(lambda_1, 0))
    assert error.value.clause == homological.CLAUSE_CONNECTING_MAP


def _check_bilinearity(algebra: AlgebraBasis, rounds: int) -> None:
    for _ in range(rounds):
        first, second, third = (random_small_module(algebra) for _ in range(3))
        pair = direct_sum([first, second])
        assert len(hom_space(pair, third)) == len(hom_space(first, third)) + len(hom_space(second, third))
        assert len(hom_space(third, pair)) == len(hom_space(third, first)) + len(hom_space(third, second))
        left, right = ext_groups(first, third, 2), ext_groups(second, third, 2)
        assert ext_groups(pair, third, 2).dims == tuple(a + b for a, b in zip(left.dims, right.dims))
        left, right = ext_groups(third, first, 2), ext_groups(third, second, 2)
        assert ext_groups(third, pair, 2).dims == tuple(a + b for a, b in zip(left.dims, right.dims))


def test_hom_and_ext_are_additive(lambda_2: AlgebraBasis) -> None:
    _check_bilinearity(lambda_2, rounds=10)


@pytest.mark.slow
def test_hom_and_ext_are_additive_over_lambda_3(lambda_3: AlgebraBasis) -> None:
    _check_bilinearity(lambda_3, rounds=5)


def test_truncation_of_glued_tail(lambda_1: AlgebraBasis) -> None:
    resolution = minimal_projective_resolution(simple_module(lambda_1, 0))
    glued = glue_split_tail(resolution, [1, 0])
    assert glued.hi == 1
    truncated = truncate_projective_complex(glued)
    assert truncated.hi == 0
    assert cohomology_dims(truncated) == cohomology_dims(resolution)
    assert truncated.multiplicities(0) == resolution.multiplicities(0)


def test_truncation_of_random_complexes(lambda_1: AlgebraBasis, lambda_2: AlgebraBasis) -> None:
    for count in range(50):
        algebra = lambda_1 if count % 2 == 0 else lambda_2
        original, glued = random_split_complex(algebra)
        truncated = truncate_projective_complex(glued)
        assert truncated.hi == original.hi
        assert cohomology_dims(truncated) == cohomology_dims(original)


def test_truncation_requires_exact_tail(lambda_1: AlgebraBasis) -> None:
    resolution = minimal_projective_resolution(simple_module(lambda_1, 1))
    shifted = ComplexOfProjectives(
        lambda_1,
        0,
        resolution.terms,
        resolution.modules,
        resolution.differentials,
    )
    with pytest.raises(TailNotExactError):
        truncate_projective_complex(shifted)
