import pytest

from chaintilt.algebra import linalg
from chaintilt.algebra.modules import (
    Module,
    compose,
    conjugate,
    direct_sum,
    endomorphism_dimension,
    find_isomorphism,
    find_surjection,
    generated_subspaces,
    hom_space,
    identity_morphism,
    is_indecomposable,
    is_isomorphic,
    projective_module,
    quotient,
    radical_hom,
    radical_subspaces,
    require_indecomposable,
    simple_module,
    submodule,
    zero_module,
)
from chaintilt.algebra.quiver import AlgebraBasis
from chaintilt.exceptions import NotIndecomposableError, RelationError


def two_dimensional(algebra: AlgebraBasis, alpha: int, beta: int) -> Module:
    return Module(algebra, (1, 1), (linalg.matrix([[alpha]]), linalg.matrix([[beta]])))


def test_projective_modules(lambda_1: AlgebraBasis) -> None:
    assert projective_module(lambda_1, 0).dims == (1, 1)
    assert projective_module(lambda_1, 1).dims == (1, 2)
    assert projective_module(lambda_1, 1).name == "P(1)"


def test_relation_is_checked(lambda_1: AlgebraBasis) -> None:
    with pytest.raises(RelationError):
        two_dimensional(lambda_1, alpha=1, beta=1)


def test_wrong_shape(lambda_1: AlgebraBasis) -> None:
    with pytest.raises(RelationError):
        Module(lambda_1, (1, 1), (linalg.matrix([[1, 0]]), linalg.matrix([[0]])))


@pytest.mark.parametrize(
    "source, target, dimension",
    [
        (0, 0, 1),
        (0, 1, 1),
        (1, 0, 1),
        (1, 1, 2),
    ],
)
def test_hom_between_projectives(lambda_1: AlgebraBasis, source: int, target: int, dimension: int) -> None:
    basis = hom_space(projective_module(lambda_1, source), projective_module(lambda_1, target))
    assert len(basis) == dimension
    assert all(f.is_homomorphism() for f in basis)


def test_hom_from_projective_is_evaluation(lambda_2: AlgebraBasis) -> None:
    target = projective_module(lambda_2, 2)
    for v in lambda_2.vertices:
        assert len(hom_space(projective_module(lambda_2, v), target)) == target.dims[v]


def test_radical_hom(lambda_1: AlgebraBasis) -> None:
    p0, p1 = projective_module(lambda_1, 0), projective_module(lambda_1, 1)
    assert len(radical_hom(p1, p1)) == 1
    assert len(radical_hom(p0, p0)) == 0
    assert len(radical_hom(p0, p1)) == len(hom_space(p0, p1))


def test_indecomposable(lambda_1: AlgebraBasis) -> None:
    assert is_indecomposable(projective_module(lambda_1, 1))
    assert is_indecomposable(simple_module(lambda_1, 0))
    split = direct_sum([simple_module(lambda_1, 0), simple_module(lambda_1, 1)])
    assert not is_indecomposable(split)
    assert not is_indecomposable(zero_module(lambda_1))
    with pytest.raises(NotIndecomposableError):
        require_indecomposable(split)


def test_isomorphism_found(lambda_1: AlgebraBasis) -> None:
    module = two_dimensional(lambda_1, alpha=3, beta=0)
    isomorphism = find_isomorphism(projective_module(lambda_1, 0), module)
    if isomorphism is None:
        raise AssertionError("Изоморфизм не найден")
    assert isomorphism.is_homomorphism()
    assert isomorphism.is_isomorphism()


def test_isomorphism_rejected(lambda_1: AlgebraBasis) -> None:
    assert not is_isomorphic(projective_module(lambda_1, 0), two_dimensional(lambda_1, alpha=0, beta=1))
    assert not is_isomorphic(projective_module(lambda_1, 0), simple_module(lambda_1, 0))


def test_conjugate_is_isomorphic(lambda_1: AlgebraBasis) -> None:
    module = projective_module(lambda_1, 1)
    changes = [linalg.matrix([[2]]), linalg.matrix([[1, 1], [-1, 2]])]
    assert is_isomorphic(module, conjugate(module, changes))


def test_surjections(lambda_1: AlgebraBasis) -> None:
    surjection = find_surjection(projective_module(lambda_1, 1), simple_module(lambda_1, 1))
    if surjection is None:
        raise AssertionError("Сюръекция не найдена")
    assert surjection.is_surjective()
    assert find_surjection(projective_module(lambda_1, 0), simple_module(lambda_1, 1)) is None
    assert find_surjection(simple_module(lambda_1, 1), projective_module(lambda_1, 1)) is None


def test_top_of_projective_is_simple(lambda_2: AlgebraBasis) -> None:
    for v in lambda_2.vertices:
        module = projective_module(lambda_2, v)
        top, projection = quotient(module, radical_subspaces(module))
        assert projection.is_surjective()
        assert is_isomorphic(top, simple_module(lambda_2, v))


def test_generated_submodule(lambda_1: AlgebraBasis) -> None:
    module = projective_module(lambda_1, 1)
    seeds = [linalg.zeros(1, 0), linalg.matrix([[1], [0]])]
    spans = generated_subspaces(module, seeds)
    assert [s.shape[1] for s in spans] == [1, 2]


def test_submodule_inclusion(lambda_1: AlgebraBasis) -> None:
    module = projective_module(lambda_1, 1)
    radical, inclusion = submodule(module, radical_subspaces(module))
    assert radical.dims == (1, 1)
    assert inclusion.is_injective()
    assert inclusion.is_homomorphism()


def test_submodule_must_be_closed(lambda_1: AlgebraBasis) -> None:
    module = projective_module(lambda_1, 1)
    with pytest.raises(RelationError):
        submodule(module, [linalg.zeros(1, 0), linalg.matrix([[1], [0]])])


def test_compose_with_identity(lambda_2: AlgebraBasis) -> None:
    module = projective_module(lambda_2, 1)
    for f in hom_space(module, module):
        assert compose(identity_morphism(module), f).maps == f.maps
    assert endomorphism_dimension(module) == module.dims[1]
