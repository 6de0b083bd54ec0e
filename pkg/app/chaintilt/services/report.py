import itertools
import logging
from typing import Iterator

from chaintilt.algebra.homological import (
    cohomology_dims,
    euler_characteristic,
    ext_groups,
    glue_split_tail,
    global_dimension,
    minimal_projective_resolution,
    truncate_projective_complex,
)
from chaintilt.algebra.modules import simple_module
from chaintilt.config import VERSION, get_settings
from chaintilt.exceptions import CertificateError
from chaintilt.models.models import CartanMatrix, Chain, DefinitenessClass, ExtensionMode
from chaintilt.schemas.schemas import (
    CartanSection,
    ExtensionRecordsSection,
    Finding,
    Report,
    SuiteResult,
    VerifyItem,
)
from chaintilt.services.builder import (
    build_lambda,
    coextension_counterexample,
    iterate_universal_extension,
    lambda_dimension_oracle,
    lambda_quiver_minus2,
    tilting_k_class,
    verify_equivalence_shadow,
)
from chaintilt.services.chain import contract_exceptional_curves, validate_chain
from chaintilt.services.cohomology import check_ass, check_exceptional, ext_table
from chaintilt.services.euler import (
    cartan_closed_form,
    cartan_from_cohomology,
    classify_definiteness,
    definiteness_findings,
    displayed_minor_findings,
    is_symmetric,
    sign_grid,
)

logger = logging.getLogger(__name__)

EQUIVALENCE_TMAX = 3  # Наибольшая длина (-2)-цепочки, для которой проверяется эквивалентность


def minimal_line_bundle_finding() -> Finding:
    message = (
        "the quiver description calls P(0) the minimal line bundle E_0, "
        "but E_0 is sent to a standard module that is not isomorphic to P(0)"
    )
    return Finding(level="WARN", code="minimal_line_bundle", message=message)


class ReportService:
    """
    Полный расчет по одной цепочке.

    Атрибуты:
        _chain (Chain): Цепочка.
    """

    def __init__(self, chain: Chain):
        self._chain = chain

    def build(self) -> Report:
        """
        Считает таблицы когомологий, матрицу Картана, форму, ASS, записи
        (ко)расширений и, для (-2)-цепочек, проверку эквивалентности.

        Возвращает:
            Report: Отчет.
        """
        chain = self._chain
        table = ext_table(chain)
        closed = cartan_closed_form(chain)
        from_cohomology = cartan_from_cohomology(table)
        definiteness = classify_definiteness(closed)

        findings = definiteness_findings(chain, definiteness)
        if closed != from_cohomology:
            findings.append(
                Finding(
                    level="FAIL",
                    code="cartan_mismatch",
                    message="closed-form and cohomological Cartan matrices differ",
                )
            )

        equivalence = None
        if chain.is_minus_two() and chain.t <= EQUIVALENCE_TMAX:
            equivalence = verify_equivalence_shadow(chain)
            if not equivalence.minimal_line_bundle_is_projective:
                findings.append(minimal_line_bundle_finding())

        return Report(
            chain=list(chain.self_intersections),
            coh_table=table,
            cartan=CartanSection(
                closed_form=[list(row) for row in closed.entries],
                from_cohomology=[list(row) for row in from_cohomology.entries],
            ),
            symmetric=is_symmetric(closed),
            definiteness=definiteness,
            ass=check_ass(table),
            extension_records=ExtensionRecordsSection(
                extension=iterate_universal_extension(chain, table, ExtensionMode.EXTENSION),
                coextension=iterate_universal_extension(chain, table, ExtensionMode.COEXTENSION),
            ),
            equivalence=equivalence,
            findings=findings,
            version=VERSION,
        )


class QuiverService:
    """
    Графы в формате DOT: колчан Ext последовательности и, для (-2)-цепочек, колчан Lambda.

    Атрибуты:
        _chain (Chain): Цепочка.
    """

    def __init__(self, chain: Chain):
        self._chain = chain

    def ext_quiver(self) -> str:
        """Сплошные ребра - Hom между соседями, пунктирные - Ext^1."""
        table = ext_table(self._chain)
        lines = ["digraph ext_quiver {", "  rankdir=LR;"]
        for i in range(table.size):
            lines.append('  "E_{i}";'.format(i=i))
        for i in range(table.t):
            if table.hom[i][i + 1]:
                lines.append(
                    '  "E_{i}" -> "E_{j}" [style=solid, label="{n}"];'.format(i=i, j=i + 1, n=table.hom[i][i + 1])
                )
            if table.ext1[i][i + 1]:
                lines.append(
                    '  "E_{i}" -> "E_{j}" [style=dashed, label="{n}"];'.format(i=i, j=i + 1, n=table.ext1[i][i + 1])
                )
        lines.append("}")
        return "\n".join(lines)

    def lambda_quiver(self) -> str | None:
        """Колчан Lambda с соотношениями в комментариях; None, если цепочка не из (-2)-кривых."""
        if not self._chain.is_minus_two():
            return None
        presentation = lambda_quiver_minus2(self._chain.t)
        lines = ["digraph lambda_quiver {", "  rankdir=LR;"]
        for relation in presentation.relations:
            lines.append("  // {label}".format(label=relation.label))
        for v in range(presentation.vertex_count):
            lines.append('  "P({v})";'.format(v=v))
        for arrow in presentation.arrows:
            lines.append(
                '  "P({s})" -> "P({t})" [label="{name}"];'.format(s=arrow.source, t=arrow.target, name=arrow.name)
            )
        lines.append("}")
        return "\n".join(lines)

    def dot(self) -> str:
        graphs = [self.ext_quiver()]
        lambda_graph = self.lambda_quiver()
        if lambda_graph is not None:
            graphs.append(lambda_graph)
        return "\n\n".join(graphs) + "\n"


class VerifyService:
    """
    Проверочный прогон: перебор цепочек и точечные проверки.

    Атрибуты:
        _tmax (int): Наибольшая длина цепочки.
        _min_selfint (int): Наименьший индекс самопересечения в переборе.
    """

    def __init__(self, tmax: int, min_selfint: int):
        self._tmax = tmax
        self._min_selfint = min_selfint
        self._failures: dict[str, list[str]] = {}
        self._findings: list[Finding] = []

    def _chains(self) -> Iterator[Chain]:
        values = range(self._min_selfint, -1)
        for t in range(1, self._tmax + 1):
            for entries in itertools.product(values, repeat=t):
                yield validate_chain(entries)

    def _check(self, name: str, passed: bool, detail: str = "") -> None:
        failures = self._failures.setdefault(name, [])
        if not passed:
            failures.append(detail)

    def _finding(self, finding: Finding) -> None:
        if finding not in self._findings:
            self._findings.append(finding)

    def _sweep(self) -> int:
        inject_fault = get_settings().inject_fault
        count = 0
        for chain in self._chains():
            count += 1
            label = str(list(chain.self_intersections))
            table = ext_table(chain)
            self._check("exceptionality", check_exceptional(table), label)

            closed = cartan_closed_form(chain)
            if inject_fault and count == 1:
                entries = [list(row) for row in closed.entries]
                entries[0][1] += 1
                closed = CartanMatrix(t=closed.t, entries=tuple(map(tuple, entries)))
            self._check(
                "Cartan closed form equals Euler characteristics", closed == cartan_from_cohomology(table), label
            )
            size = closed.size
            additive = all(
                closed.entries[i][k] == closed.entries[i][j] + closed.entries[j][k]
                for i in range(size)
                for j in range(i + 1, size)
                for k in range(j + 1, size)
            )
            self._check("Cartan additivity", additive, label)
            self._check("symmetric iff all (-2)", is_symmetric(closed) == chain.is_minus_two(), label)

            kind = classify_definiteness(closed)
            radius = 3 if chain.t <= 3 else 2
            self._check("classifier agrees with the sign grid", sign_grid(closed, radius).agrees_with(kind), label)
            for finding in definiteness_findings(chain, kind):
                self._finding(finding)

            forward = all(table.hom[i][j] == 1 for i in range(size) for j in range(i, size))
            self._check("hom(E_i,E_j)=1 for i<=j", forward, label)
            self._check("ASS holds", check_ass(table).passes, label)

            for mode in ExtensionMode:
                try:
                    records = iterate_universal_extension(chain, table, mode)
                    total = tilting_k_class(records)
                    self._check("partial tilting certificate", len(records) == size and all(total), label)
                except CertificateError as exc:
                    self._check("partial tilting certificate", False, "{l}: {c}".format(l=label, c=exc.clause))
        return count

    def _spot_checks(self) -> None:
        expected = {
            (-3,): DefinitenessClass.POSITIVE_DEFINITE,
            (-4,): DefinitenessClass.POSITIVE_SEMIDEFINITE,
            (-3, -3): DefinitenessClass.INDEFINITE,
            (-2, -2, -2): DefinitenessClass.POSITIVE_DEFINITE,
        }
        for entries, kind in expected.items():
            computed = classify_definiteness(cartan_closed_form(validate_chain(entries)))
            self._check("definiteness spot checks", computed is kind, "{e}: {c}".format(e=entries, c=computed.value))

        self._check("(-1,-3,-1) satisfies ASS", check_ass(ext_table(validate_chain((-1, -3, -1)))).passes)
        self._check("(-1,-2,-1) violates ASS", not check_ass(ext_table(validate_chain((-1, -2, -1)))).passes)
        self._check(
            "a single (-1) among (-2),(-3) satisfies ASS",
            check_ass(ext_table(validate_chain((-2, -1, -3)))).passes,
        )
        self._check("(-1,-1) has hom(E_0,E_2)=2", ext_table(validate_chain((-1, -1))).hom[0][2] == 2)
        self._check(
            "contractions of (-1,-3,-1) and (-1,-2,-1)",
            contract_exceptional_curves(validate_chain((-1, -3, -1))) == Chain(self_intersections=(-1,))
            and contract_exceptional_curves(validate_chain((-1, -2, -1))) == Chain(self_intersections=(0,)),
        )
        minus_three = validate_chain((-3,))
        records = iterate_universal_extension(minus_three, ext_table(minus_three), ExtensionMode.EXTENSION)
        self._check("r = 2 for a single (-3)-curve", records[-1].log[0].r == 2, str(records[-1].k_class))

        for finding in displayed_minor_findings():
            self._finding(finding)

    def _algebra_checks(self) -> None:
        for t in range(1, self._tmax + 1):
            algebra = build_lambda(t)
            self._check(
                "dim Lambda_t",
                algebra.dimension == lambda_dimension_oracle(t),
                "t={t}: {d}".format(t=t, d=algebra.dimension),
            )
            gldim = global_dimension(algebra)
            self._check("gl.dim Lambda_t = 2", gldim == 2, "t={t}: {g}".format(t=t, g=gldim))
            if t <= 2:
                simples = [simple_module(algebra, v) for v in algebra.vertices]
                for m, n in itertools.product(simples, repeat=2):
                    self._check(
                        "Euler form equals the alternating Ext sum",
                        euler_characteristic(algebra, m, n) == ext_groups(m, n, up_to=2).alternating_sum(),
                        "t={t}: {m}, {n}".format(t=t, m=m.name, n=n.name),
                    )
            if t <= EQUIVALENCE_TMAX:
                report = verify_equivalence_shadow(Chain(self_intersections=(-2,) * t))
                for item in report.items:
                    self._check(item.name, item.passed, "t={t}: {d}".format(t=t, d=item.detail))
                if not report.minimal_line_bundle_is_projective:
                    self._finding(minimal_line_bundle_finding())

        if self._tmax >= 1:
            counterexample = coextension_counterexample()
            self._check(
                "coextension pair is not exact tilting, End dimensions agree",
                counterexample.passed,
                "witness {w}, dims {a}/{b}".format(
                    w=counterexample.witness,
                    a=counterexample.end_dimension_coextension,
                    b=counterexample.end_dimension_projective,
                ),
            )
            algebra = build_lambda(1)
            resolution = minimal_projective_resolution(simple_module(algebra, 0))
            truncated = truncate_projective_complex(glue_split_tail(resolution, [1]))
            self._check(
                "truncation removes a split tail",
                truncated.hi == 0 and cohomology_dims(truncated) == cohomology_dims(resolution),
            )

    def run(self) -> SuiteResult:
        chains = self._sweep()
        self._spot_checks()
        self._algebra_checks()
        items = [
            VerifyItem(
                name=name,
                passed=not failures,
                detail="; ".join(failures[:3]),
            )
            for name, failures in self._failures.items()
        ]
        for item in items:
            if not item.passed:
                logger.error("FAIL %s: %s", item.name, item.detail)
        return SuiteResult(
            tmax=self._tmax,
            min_selfint=self._min_selfint,
            chains=chains,
            items=items,
            findings=self._findings,
        )


def run_report(chain: Chain) -> Report:
    return ReportService(chain).build()


def export_dot(chain: Chain) -> str:
    return QuiverService(chain).dot()


def verify_suite(tmax: int, min_selfint: int) -> SuiteResult:
    return VerifyService(tmax=tmax, min_selfint=min_selfint).run()
