import logging

from chaintilt.algebra import linalg
from chaintilt.exceptions import ChainError, ExceptionalityError
from chaintilt.models.models import (
    AssVerdict,
    AssViolation,
    Chain,
    CohPair,
    CohTable,
    CohTriple,
    DivisorWindow,
    LineBundleOnChain,
    Twist,
)
from chaintilt.services.chain import divisor_window, multidegree

logger = logging.getLogger(__name__)

INJECTIVITY_AXIOM = "all non-zero maps E_i -> E_j are injective"


def h0_h1(bundle: LineBundleOnChain) -> CohPair:
    """
    Когомологии линейного расслоения на цепочке проективных прямых.

    Сечение - набор многочленов f_k степени не выше d_k (на компоненте с d_k < 0
    сечений нет), склеенных в узлах: f_k(1) = f_{k+1}(0). H^1 находится из
    эйлеровой характеристики.

    Параметры:
        bundle (LineBundleOnChain): Расслоение с мультистепенью (d_1, ..., d_m).

    Возвращает:
        CohPair: (h0, h1).
    """
    offsets, total = [], 0
    for d in bundle.multidegree:
        offsets.append(total)
        total += max(d + 1, 0)

    rows = []
    for k in range(bundle.nodes):
        row = [0] * total
        left, right = bundle.multidegree[k], bundle.multidegree[k + 1]
        # значение f_k в точке 1 - сумма коэффициентов
        for i in range(left + 1):
            row[offsets[k] + i] += 1
        # значение f_{k+1} в точке 0 - свободный член
        if right >= 0:
            row[offsets[k + 1]] -= 1
        rows.append(row)

    rank = linalg.rank(linalg.matrix(rows, total)) if rows and total else 0
    h0 = total - rank
    h1 = h0 - bundle.euler_characteristic
    return CohPair(h0=h0, h1=h1)


def surface_cohomology_positive(window: DivisorWindow) -> CohTriple:
    """
    h*(O(D)) из последовательности 0 -> O -> O(D) -> O_D(D) -> 0.

    Использует H*(O_X) = (1, 0, 0).
    """
    restricted = h0_h1(multidegree(window, Twist.SELF))
    return CohTriple(1 + restricted.h0, restricted.h1, 0)


def surface_cohomology_negative(window: DivisorWindow) -> CohTriple:
    """
    h*(O(-D)) из последовательности 0 -> O(-D) -> O -> O_D -> 0.

    Возвращает:
        CohTriple: (0, h0(O_D) - 1, h1(O_D)).
    """
    structure = h0_h1(multidegree(window, Twist.ZERO))
    return CohTriple(0, structure.h0 - 1, structure.h1)


def ext_table(chain: Chain) -> CohTable:
    """
    Таблицы dim Ext^k(E_i, E_j) для последовательности E_k = O(-C_1 - ... - C_{t-k}).

    При i < j это h*(O(D)), при i > j - h*(O(-D)) для окна D = divisor_window(i, j).

    Параметры:
        chain (Chain): Цепочка.

    Возвращает:
        CohTable: Таблицы hom, ext1, ext2.

    Ошибки:
        ExceptionalityError: Ext*(E_i, E_j) != 0 для некоторой пары i > j.
    """
    size = chain.t + 1
    hom = [[0] * size for _ in range(size)]
    ext1 = [[0] * size for _ in range(size)]
    ext2 = [[0] * size for _ in range(size)]

    for i in range(size):
        for j in range(size):
            window = divisor_window(chain, i, j)
            if window is None:
                triple = CohTriple(1, 0, 0)
            elif i < j:
                triple = surface_cohomology_positive(window)
            else:
                triple = surface_cohomology_negative(window)
                if any(triple):
                    raise ExceptionalityError("exceptionality violated")
            hom[i][j], ext1[i][j], ext2[i][j] = triple

    table = CohTable(
        t=chain.t,
        hom=tuple(map(tuple, hom)),
        ext1=tuple(map(tuple, ext1)),
        ext2=tuple(map(tuple, ext2)),
    )
    logger.debug("cohomology table of %s: hom=%s ext1=%s", chain.self_intersections, table.hom, table.ext1)
    return table


def check_exceptional(table: CohTable) -> bool:
    """Диагональ (1, 0, 0) и нулевая строго нижнетреугольная часть."""
    for i in range(table.size):
        if table.triple(i, i) != (1, 0, 0):
            return False
        for j in range(i):
            if any(table.triple(i, j)):
                return False
    return True


def check_ass(table: CohTable) -> AssVerdict:
    """
    Проверка условия ASS: hom[i][j] <= 1 при i <= j и ext2 = 0 всюду.

    Условие инъективности ненулевых отображений не вычисляется: для линейных
    расслоений на целой поверхности оно выполняется автоматически и попадает в axioms.
    """
    violations = []
    for i in range(table.size):
        for j in range(table.size):
            if i <= j and table.hom[i][j] > 1:
                violations.append(AssViolation(i=i, j=j, reason="hom_too_big"))
            if table.ext2[i][j] != 0:
                violations.append(AssViolation(i=i, j=j, reason="ext2_nonzero"))
    return AssVerdict(passes=not violations, violations=violations, axioms=[INJECTIVITY_AXIOM])


def is_strong(table: CohTable) -> bool:
    """Сильная последовательность: Ext^1 и Ext^2 равны нулю для всех пар."""
    return not any(value for grid in (table.ext1, table.ext2) for row in grid for value in row)


def torsion_sheaf_ext(chain: Chain, curve: int) -> CohTriple:
    """
    Размерности Ext*(O_C, O_C) для кривой C = C_curve на поверхности.

    Равны (1, h0(O_P1(C^2)), h1(O_P1(C^2))); пучок сферичен ровно при C^2 = -2.

    Ошибки:
        ChainError: Номер кривой вне 1..t.
    """
    if not 1 <= curve <= chain.t:
        raise ChainError("curve {k} outside 1..{t}".format(k=curve, t=chain.t))
    normal = h0_h1(LineBundleOnChain(multidegree=(chain.self_intersection(curve),)))
    return CohTriple(1, normal.h0, normal.h1)
