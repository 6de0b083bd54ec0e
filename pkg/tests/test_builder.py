import pytest

from chaintilt.algebra.modules import is_isomorphic, projective_module, simple_module
from chaintilt.algebra.quiver import AlgebraBasis
from chaintilt.exceptions import CertificateError, PreconditionError
from chaintilt.models.models import CohTable, ExtensionMode
from chaintilt.services.builder import (
    CLAUSE_EXTENSION_PAIR,
    coextension_counterexample,
    delta_filtration_check,
    identify_line_bundle_modules,
    iterate_universal_extension,
    lambda_dimension_oracle,
    lambda_quiver_minus2,
    minimal_line_bundle_is_projective,
    projective_k_classes,
    spherical_check,
    standard_modules,
    tilting_k_class,
    verify_equivalence_shadow,
)
from chaintilt.services.chain import validate_chain
from chaintilt.services.cohomology import ext_table

from .factories import ChainFactory, MinusTwoChainFactory


def test_lambda_quiver() -> None:
    presentation = lambda_quiver_minus2(2)
    assert presentation.vertex_count == 3
    assert [arrow.name for arrow in presentation.arrows] == ["alpha_1", "beta_1", "alpha_2", "beta_2"]
    assert [relation.label for relation in presentation.relations] == [
        "beta.alpha = 0 at P(0)",
        "alpha.beta = beta.alpha at P(1)",
    ]


def test_lambda_quiver_needs_curves() -> None:
    with pytest.raises(PreconditionError):
        lambda_quiver_minus2(0)


@pytest.mark.parametrize("t, dimension", [(1, 5), (2, 14), (3, 30), (4, 55)])
def test_lambda_dimension_oracle(t: int, dimension: int) -> None:
    assert lambda_dimension_oracle(t) == dimension


@pytest.mark.parametrize(
    "mode, expected",
    [
        (ExtensionMode.EXTENSION, [(0, 0, 1), (0, 1, 1), (1, 1, 1)]),
        (ExtensionMode.COEXTENSION, [(1, 0, 0), (1, 1, 0), (1, 1, 1)]),
    ],
)
def test_records_of_minus_two_chain(mode: ExtensionMode, expected: list[tuple[int, ...]]) -> None:
    chain = validate_chain([-2, -2])
    records = iterate_universal_extension(chain, ext_table(chain), mode)
    assert [record.k_class for record in records] == expected
    assert records[0].certificate[0].clause == "exceptional object"
    assert all(len(record.certificate) == 3 for record in records[1:])


def test_single_minus_three_curve() -> None:
    chain = validate_chain([-3])
    records = iterate_universal_extension(chain, ext_table(chain), ExtensionMode.EXTENSION)
    assert [record.k_class for record in records] == [(0, 1), (1, 2)]
    assert records[1].log[0].r == 2
    assert tilting_k_class(records) == (1, 3)


def test_strong_sequence_is_not_extended() -> None:
    chain = validate_chain([-1])
    records = iterate_universal_extension(chain, ext_table(chain), ExtensionMode.EXTENSION)
    assert [record.k_class for record in records] == [(0, 1), (1, 0)]
    assert records[1].log == ()


def test_certificates_for_random_chains() -> None:
    for _ in range(20):
        chain = ChainFactory()
        table = ext_table(chain)
        for mode in ExtensionMode:
            records = iterate_universal_extension(chain, table, mode)
            assert sorted(record.index for record in records) == list(range(chain.t + 1))
            assert all(value > 0 for value in tilting_k_class(records))


def test_certificate_error_on_ext2() -> None:
    table = CohTable(t=1, hom=((1, 1), (0, 1)), ext1=((0, 0), (0, 0)), ext2=((0, 1), (0, 0)))
    with pytest.raises(CertificateError) as error:
        iterate_universal_extension(validate_chain([-2]), table, ExtensionMode.EXTENSION)
    assert error.value.clause == CLAUSE_EXTENSION_PAIR


def test_standard_modules(lambda_1: AlgebraBasis) -> None:
    standards = standard_modules(lambda_1, (1, 0))
    assert is_isomorphic(standards[1], simple_module(lambda_1, 1))
    assert is_isomorphic(standards[0], projective_module(lambda_1, 0))


def test_delta_filtration(lambda_1: AlgebraBasis) -> None:
    assert delta_filtration_check(lambda_1, (1, 0), projective_module(lambda_1, 1))
    assert not delta_filtration_check(lambda_1, (1, 0), simple_module(lambda_1, 0))


def test_dictionary_for_one_curve(lambda_1: AlgebraBasis) -> None:
    dictionary = identify_line_bundle_modules(lambda_1, ext_table(validate_chain([-2])))
    assert dictionary.order == (1, 0)
    assert dictionary.vertices == (1, 0)
    assert [m.dims for m in dictionary.modules] == [(0, 1), (1, 1)]
    assert not minimal_line_bundle_is_projective(lambda_1, dictionary)
    assert projective_k_classes(lambda_1, dictionary) == [(0, 1), (1, 1)]


def test_spherical_simples(lambda_1: AlgebraBasis) -> None:
    assert spherical_check(lambda_1, simple_module(lambda_1, 0))
    assert not spherical_check(lambda_1, simple_module(lambda_1, 1))


@pytest.mark.parametrize("t", [1, 2])
def test_equivalence_shadow(t: int) -> None:
    report = verify_equivalence_shadow(validate_chain([-2] * t))
    assert report.status == "PASS"
    assert report.dim_lambda == lambda_dimension_oracle(t)
    assert report.global_dimension == 2
    assert report.exact_tilting
    assert report.quasi_hereditary
    assert sum(report.spherical) == t
    assert all(comparison.equal for comparison in report.comparisons)
    assert not report.minimal_line_bundle_is_projective


@pytest.mark.slow
def test_equivalence_shadow_three_curves() -> None:
    report = verify_equivalence_shadow(MinusTwoChainFactory(self_intersections=(-2, -2, -2)))
    assert report.status == "PASS"
    assert report.dim_lambda == 30


def test_equivalence_needs_minus_two_chain() -> None:
    with pytest.raises(PreconditionError):
        verify_equivalence_shadow(validate_chain([-2, -3]))


def test_coextension_counterexample() -> None:
    verdict = coextension_counterexample()
    assert not verdict.exact
    assert verdict.witness == "Delta(1)"
    assert verdict.end_dimension_coextension == verdict.end_dimension_projective == 5
    assert verdict.passed
