import pytest

from chaintilt.exceptions import ChainError
from chaintilt.models.models import Chain, Twist
from chaintilt.services.chain import (
    b_values,
    contract_exceptional_curves,
    divisor_window,
    multidegree,
    parse_chain,
    validate_chain,
)

from .factories import ChainFactory


def test_validate_chain() -> None:
    chain = validate_chain([-2, -3, -2])
    assert chain.t == 3
    assert chain.self_intersection(2) == -3
    assert b_values(chain) == [0, -1, 0]


def test_validate_empty_chain() -> None:
    with pytest.raises(ChainError, match="empty chain"):
        validate_chain([])


@pytest.mark.parametrize(
    "text, expected",
    [
        ("-2,-3,-2", (-2, -3, -2)),
        (" -4 ", (-4,)),
        ("-1, -2, -1", (-1, -2, -1)),
    ],
)
def test_parse_chain(text: str, expected: tuple[int, ...]) -> None:
    assert parse_chain(text).self_intersections == expected


@pytest.mark.parametrize("text", ["", " ", ",", "-2,x", "-2,,-3", "-2,-3,", ",-2"])
def test_parse_bad_chain(text: str) -> None:
    with pytest.raises(ChainError):
        parse_chain(text)


@pytest.mark.parametrize(
    "i, j, lo, hi",
    [
        (0, 3, 1, 3),
        (0, 1, 3, 3),
        (2, 3, 1, 1),
        (1, 2, 2, 2),
        (3, 0, 1, 3),
    ],
)
def test_divisor_window(i: int, j: int, lo: int, hi: int) -> None:
    window = divisor_window(validate_chain([-2, -3, -2]), i, j)
    if window is None:
        raise AssertionError("Окно не найдено")
    assert (window.lo, window.hi) == (lo, hi)


def test_divisor_window_diagonal() -> None:
    assert divisor_window(validate_chain([-2, -2]), 1, 1) is None


def test_divisor_window_out_of_range() -> None:
    with pytest.raises(ChainError):
        divisor_window(validate_chain([-2, -2]), 0, 3)


def test_multidegree_self_twist() -> None:
    window = divisor_window(validate_chain([-2, -3, -2]), 0, 3)
    if window is None:
        raise AssertionError("Окно не найдено")
    bundle = multidegree(window, Twist.SELF)
    assert bundle.multidegree == (-1, -1, -1)
    assert sum(bundle.multidegree) == window.self_intersection_number() == -3


def test_multidegree_structure_sheaf() -> None:
    window = divisor_window(validate_chain([-2, -3, -2]), 0, 2)
    if window is None:
        raise AssertionError("Окно не найдено")
    assert multidegree(window, Twist.ZERO).multidegree == (0, 0)


def test_window_degrees_sum_for_random_chains() -> None:
    for _ in range(20):
        chain = ChainFactory()
        for i in range(chain.t + 1):
            for j in range(i + 1, chain.t + 1):
                window = divisor_window(chain, i, j)
                if window is None:
                    raise AssertionError("Окно не найдено")
                assert window.m == j - i
                assert sum(multidegree(window, Twist.SELF).multidegree) == window.self_intersection_number()


@pytest.mark.parametrize(
    "entries, expected",
    [
        ((-1, -3, -1), (-1,)),
        ((-1, -2, -1), (0,)),
        ((-2, -1, -3), (-1, -2)),
        ((-2, -3), (-2, -3)),
    ],
)
def test_contract_exceptional_curves(entries: tuple[int, ...], expected: tuple[int, ...]) -> None:
    assert contract_exceptional_curves(validate_chain(entries)) == Chain(self_intersections=expected)


def test_contract_everything() -> None:
    assert contract_exceptional_curves(validate_chain([-1])) is None


def test_contract_adjacent_exceptional_curves() -> None:
    with pytest.raises(ChainError):
        contract_exceptional_curves(validate_chain([-1, -1]))
