import logging
from typing import Sequence

from chaintilt.algebra import linalg
from chaintilt.algebra.modules import Module, hom_space, radical_hom, require_indecomposable
from chaintilt.models.models import TiltingVerdict

logger = logging.getLogger(__name__)


def exact_tilting_check(summands: Sequence[Module]) -> TiltingVerdict:
    """
    Проверяет, что все сюръекции в add(T) расщепляются.

    Для каждого слагаемого B строится W_B - сумма образов Hom(A, B) по A != B и
    образов rad End(B). Если W_B = B во всех вершинах, на B есть нерасщепимая
    сюръекция (End(B) локальна, а сюръекция расщепляется только при наличии
    компоненты-изоморфизма), и B - свидетель.

    Параметры:
        summands (Sequence[Module]): Попарно неизоморфные неразложимые модули.

    Возвращает:
        TiltingVerdict: Вердикт и номер свидетеля.

    Ошибки:
        NotIndecomposableError: Один из модулей разложим.
    """
    for module in summands:
        require_indecomposable(module)

    for b, target in enumerate(summands):
        maps = list(radical_hom(target, target))
        for a, source in enumerate(summands):
            if a != b:
                maps.extend(hom_space(source, target))
        covered = True
        for v in target.algebra.vertices:
            if target.dims[v] == 0:
                continue
            images = [f.maps[v] for f in maps]
            span = linalg.hstack(images, target.dims[v]) if images else linalg.zeros(target.dims[v], 0)
            if linalg.rank(span) < target.dims[v]:
                covered = False
                break
        if covered:
            logger.info("summand %d (%s) receives a non-split surjection", b, target.name)
            return TiltingVerdict(exact=False, witness=b)
    return TiltingVerdict(exact=True)
