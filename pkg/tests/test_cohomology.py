import pytest

from chaintilt.exceptions import ChainError
from chaintilt.models.models import CohPair, CohTriple, LineBundleOnChain
from chaintilt.services.chain import validate_chain
from chaintilt.services.cohomology import (
    INJECTIVITY_AXIOM,
    check_ass,
    check_exceptional,
    ext_table,
    h0_h1,
    is_strong,
    torsion_sheaf_ext,
)

from .factories import ChainFactory


@pytest.mark.parametrize(
    "multidegree, expected",
    [
        ((2,), CohPair(h0=3, h1=0)),
        ((-1,), CohPair(h0=0, h1=0)),
        ((-3,), CohPair(h0=0, h1=2)),
        ((0, 0), CohPair(h0=1, h1=0)),
        ((-1, -1), CohPair(h0=0, h1=1)),
        ((0, -1, 0), CohPair(h0=0, h1=0)),
        ((1, 1, 1), CohPair(h0=4, h1=0)),
    ],
)
def test_h0_h1(multidegree: tuple[int, ...], expected: CohPair) -> None:
    assert h0_h1(LineBundleOnChain(multidegree=multidegree)) == expected


@pytest.mark.parametrize(
    "entries, hom, ext1",
    [
        ((-2,), 1, 1),
        ((-3,), 1, 2),
        ((-4,), 1, 3),
        ((-1,), 1, 0),
    ],
)
def test_single_curve_table(entries: tuple[int, ...], hom: int, ext1: int) -> None:
    table = ext_table(validate_chain(entries))
    assert table.triple(0, 1) == CohTriple(hom, ext1, 0)
    assert table.triple(1, 0) == CohTriple(0, 0, 0)


def test_minus_two_table() -> None:
    table = ext_table(validate_chain([-2, -2]))
    assert table.hom == ((1, 1, 1), (0, 1, 1), (0, 0, 1))
    assert table.ext1 == ((0, 1, 1), (0, 0, 1), (0, 0, 0))
    assert all(value == 0 for row in table.ext2 for value in row)


def test_exceptional_for_random_chains() -> None:
    for _ in range(30):
        chain = ChainFactory()
        table = ext_table(chain)
        assert check_exceptional(table)
        assert all(table.hom[i][j] == 1 for i in range(table.size) for j in range(i, table.size))


def test_ass_accepts_minus_one_minus_three_minus_one() -> None:
    verdict = check_ass(ext_table(validate_chain([-1, -3, -1])))
    assert verdict.passes
    assert verdict.axioms == [INJECTIVITY_AXIOM]


def test_ass_rejects_minus_one_minus_two_minus_one() -> None:
    verdict = check_ass(ext_table(validate_chain([-1, -2, -1])))
    assert not verdict.passes
    assert [(v.i, v.j, v.reason) for v in verdict.violations] == [(0, 3, "hom_too_big")]


@pytest.mark.parametrize("entries", [(-2, -1, -3), (-1, -4), (-3, -3, -1)])
def test_ass_single_exceptional_curve(entries: tuple[int, ...]) -> None:
    assert check_ass(ext_table(validate_chain(entries))).passes


def test_two_exceptional_curves_double_hom() -> None:
    table = ext_table(validate_chain([-1, -1]))
    assert table.hom[0][2] == 2
    assert not check_ass(table).passes


@pytest.mark.parametrize(
    "entries, strong",
    [
        ((-1,), True),
        ((-1, -1), True),
        ((-2,), False),
        ((-1, -3), False),
    ],
)
def test_is_strong(entries: tuple[int, ...], strong: bool) -> None:
    assert is_strong(ext_table(validate_chain(entries))) is strong


@pytest.mark.parametrize(
    "curve, expected",
    [
        (1, CohTriple(1, 0, 1)),
        (2, CohTriple(1, 0, 2)),
    ],
)
def test_torsion_sheaf_ext(curve: int, expected: CohTriple) -> None:
    assert torsion_sheaf_ext(validate_chain([-2, -3]), curve) == expected


def test_torsion_sheaf_ext_out_of_range() -> None:
    with pytest.raises(ChainError):
        torsion_sheaf_ext(validate_chain([-2, -3]), 3)
