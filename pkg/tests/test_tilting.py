import pytest

from chaintilt.algebra.modules import direct_sum, projective_module, simple_module
from chaintilt.algebra.quiver import AlgebraBasis
from chaintilt.algebra.tilting import exact_tilting_check
from chaintilt.exceptions import NotIndecomposableError
from chaintilt.models.models import TiltingVerdict


def test_projectives_are_exact_tilting(lambda_1: AlgebraBasis, lambda_2: AlgebraBasis) -> None:
    for algebra in (lambda_1, lambda_2):
        verdict = exact_tilting_check([projective_module(algebra, v) for v in algebra.vertices])
        assert verdict == TiltingVerdict(exact=True)


@pytest.mark.slow
def test_projectives_of_lambda_3(lambda_3: AlgebraBasis) -> None:
    assert exact_tilting_check([projective_module(lambda_3, v) for v in lambda_3.vertices]).exact


def test_coextension_pair_is_not_exact(lambda_1: AlgebraBasis) -> None:
    verdict = exact_tilting_check([simple_module(lambda_1, 1), projective_module(lambda_1, 1)])
    assert not verdict.exact
    assert verdict.witness == 0


def test_surjection_onto_simple(lambda_1: AlgebraBasis) -> None:
    verdict = exact_tilting_check([projective_module(lambda_1, 0), simple_module(lambda_1, 0)])
    assert verdict.witness == 1


def test_single_projective(lambda_2: AlgebraBasis) -> None:
    assert exact_tilting_check([projective_module(lambda_2, 2)]).exact


def test_decomposable_summand(lambda_1: AlgebraBasis) -> None:
    with pytest.raises(NotIndecomposableError):
        exact_tilting_check([direct_sum([simple_module(lambda_1, 0), simple_module(lambda_1, 1)])])


def test_verdict_needs_witness() -> None:
    with pytest.raises(ValueError):
        TiltingVerdict(exact=False)
