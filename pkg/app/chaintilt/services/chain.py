import logging
from typing import Sequence

from chaintilt.exceptions import ChainError
from chaintilt.models.models import Chain, DivisorWindow, LineBundleOnChain, Twist

logger = logging.getLogger(__name__)


def validate_chain(entries: Sequence[int]) -> Chain:
    """
    Создает цепочку по списку самопересечений.

    Значения не ограничиваются: допустимость проверяется позже, в check_ass.

    Параметры:
        entries (Sequence[int]): Самопересечения C_1^2, ..., C_t^2.

    Возвращает:
        Chain: Цепочка длины len(entries).

    Ошибки:
        ChainError: Пустой список.
    """
    if not entries:
        raise ChainError("empty chain")
    return Chain(self_intersections=tuple(int(entry) for entry in entries))


def parse_chain(text: str) -> Chain:
    """
    Разбирает цепочку из строки вида "-2,-3,-2".

    Ошибки:
        ChainError: Пустая строка, пустой элемент или нецелое значение.
    """
    if not text.strip():
        raise ChainError("empty chain")
    parts = [part.strip() for part in text.split(",")]
    try:
        entries = [int(part) for part in parts]
    except ValueError as exc:
        raise ChainError("chain must be comma-separated integers: {text!r}".format(text=text)) from exc
    return validate_chain(entries)


def b_values(chain: Chain) -> list[int]:
    """Возвращает b_i = C_i^2 + 2 для i = 1..t."""
    return list(chain.b)


def divisor_window(chain: Chain, i: int, j: int) -> DivisorWindow | None:
    """
    Подцепочка D, через которую выражаются Hom и Ext между E_i и E_j.

    E_k = O(-C_1 - ... - C_{t-k}), так что при i < j имеем Hom(E_i, E_j) = H^0(O(D))
    для D = C_{t-j+1} + ... + C_{t-i}. При i > j возвращается тот же интервал для
    отрицательного подкручивания (знак выбирает вызывающий).

    Параметры:
        chain (Chain): Цепочка.
        i (int): Индекс источника, 0..t.
        j (int): Индекс цели, 0..t.

    Возвращает:
        DivisorWindow | None: Окно или None при i == j.

    Ошибки:
        ChainError: Индексы вне диапазона.
    """
    t = chain.t
    if not (0 <= i <= t and 0 <= j <= t):
        raise ChainError(
            "sequence indices ({i}, {j}) outside 0..{t}".format(i=i, j=j, t=t)
        )
    if i == j:
        return None
    low, high = min(i, j), max(i, j)
    return DivisorWindow(chain=chain, lo=t - high + 1, hi=t - low)


def multidegree(window: DivisorWindow, twist: Twist) -> LineBundleOnChain:
    """
    Мультистепень O_D(D) (SELF) или O_D (ZERO) на подцепочке D.

    Для O_D(D) степень на C_k равна C_k^2 плюс число соседей C_k внутри окна.

    Параметры:
        window (DivisorWindow): Подцепочка.
        twist (Twist): Вид подкрутки.

    Возвращает:
        LineBundleOnChain: Линейное расслоение на D.
    """
    if twist is Twist.ZERO:
        return LineBundleOnChain(multidegree=(0,) * window.m)

    degrees = []
    for curve in window.curves:
        neighbours = sum(1 for other in (curve - 1, curve + 1) if window.lo <= other <= window.hi)
        degrees.append(window.chain.self_intersection(curve) + neighbours)

    bundle = LineBundleOnChain(multidegree=tuple(degrees))
    # Сумма степеней O_D(D) равна D^2
    assert sum(bundle.multidegree) == window.self_intersection_number()
    return bundle


def contract_exceptional_curves(chain: Chain) -> Chain | None:
    """
    Одновременно стягивает все (-1)-кривые цепочки.

    Каждый сосед стянутой кривой получает +1 к самопересечению. Если стягивать
    нечего, цепочка возвращается без изменений; если стягивается всё, возвращается None.

    Ошибки:
        ChainError: Две соседние (-1)-кривые (одновременное стягивание не определено).
    """
    values = list(chain.self_intersections)
    exceptional = [k for k, value in enumerate(values) if value == -1]

    for k in exceptional:
        if k + 1 in exceptional:
            raise ChainError(
                "adjacent (-1)-curves C_{a} and C_{b} cannot be contracted together".format(
                    a=k + 1, b=k + 2
                )
            )

    for k in exceptional:
        for other in (k - 1, k + 1):
            if 0 <= other < len(values) and other not in exceptional:
                values[other] += 1

    remaining = [value for k, value in enumerate(values) if k not in exceptional]
    logger.debug("contracted %s to %s", chain.self_intersections, remaining)
    if not remaining:
        return None
    return Chain(self_intersections=tuple(remaining))
