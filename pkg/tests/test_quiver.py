import pytest

from chaintilt.algebra.quiver import AlgebraBasis, Arrow, Path, QuiverPresentation, Relation, RelationTerm, build_basis
from chaintilt.exceptions import NotFiniteDimensionalError
from chaintilt.services.builder import build_lambda, lambda_dimension_oracle


@pytest.mark.parametrize("t, dimension", [(1, 5), (2, 14)])
def test_lambda_dimension(t: int, dimension: int) -> None:
    assert build_lambda(t).dimension == dimension == lambda_dimension_oracle(t)


@pytest.mark.slow
@pytest.mark.parametrize("t, dimension", [(3, 30), (4, 55)])
def test_lambda_dimension_large(t: int, dimension: int) -> None:
    assert build_lambda(t).dimension == dimension == lambda_dimension_oracle(t)


def test_lambda_1_graded_pieces(lambda_1: AlgebraBasis) -> None:
    assert [lambda_1.graded_dimension(length) for length in range(4)] == [2, 2, 1, 0]
    assert lambda_1.stabilization_length == 3
    assert lambda_1.basis_paths(0, 0) == [Path(0, ())]
    assert len(lambda_1.basis_paths(1, 1)) == 2


def test_zero_relation(lambda_1: AlgebraBasis) -> None:
    alpha = lambda_1.presentation.arrow_index("alpha_1")
    beta = lambda_1.presentation.arrow_index("beta_1")
    assert lambda_1.multiply(Path(0, (alpha,)), Path(1, (beta,))) == {}
    assert lambda_1.path_label(Path(1, (beta, alpha))) == "alpha_1.beta_1"


def test_commutativity_relation(lambda_2: AlgebraBasis) -> None:
    index = lambda_2.presentation.arrow_index
    left = lambda_2.normal_form(Path(1, (index("beta_1"), index("alpha_1"))))
    right = lambda_2.normal_form(Path(1, (index("alpha_2"), index("beta_2"))))
    assert left
    assert left == right


def test_path_algebra_without_relations() -> None:
    presentation = QuiverPresentation(vertex_count=2, arrows=(Arrow(name="a", source=0, target=1),))
    algebra = build_basis(presentation)
    assert algebra.dimension == 3


def test_truncated_polynomial_ring() -> None:
    presentation = QuiverPresentation(
        vertex_count=1,
        arrows=(Arrow(name="x", source=0, target=0),),
        relations=(Relation(terms=(RelationTerm(coefficient=1, path=("x", "x")),), label="x^2 = 0"),),
    )
    assert build_basis(presentation).dimension == 2


def test_loop_is_not_finite_dimensional() -> None:
    presentation = QuiverPresentation(vertex_count=1, arrows=(Arrow(name="x", source=0, target=0),))
    with pytest.raises(NotFiniteDimensionalError):
        build_basis(presentation, cap=5)


@pytest.mark.parametrize(
    "arrows, relations",
    [
        ((Arrow(name="a", source=0, target=1), Arrow(name="a", source=1, target=0)), ()),
        ((Arrow(name="a", source=0, target=2),), ()),
        (
            (Arrow(name="a", source=0, target=1), Arrow(name="b", source=0, target=1)),
            (Relation(terms=(RelationTerm(coefficient=1, path=("a", "b")),)),),
        ),
        (
            (Arrow(name="a", source=0, target=1),),
            (Relation(terms=(RelationTerm(coefficient=1, path=("a", "c")),)),),
        ),
    ],
)
def test_bad_presentation(arrows: tuple[Arrow, ...], relations: tuple[Relation, ...]) -> None:
    with pytest.raises(ValueError):
        QuiverPresentation(vertex_count=2, arrows=arrows, relations=relations)
