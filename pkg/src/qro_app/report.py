"""Machine-readable report models and human-readable tables.

Exact integers are serialized as decimal strings and rationals as {num, den}
string pairs, so no value ever passes through a JSON float. Floating values
carry the tolerance they were computed under.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Literal, Optional, Union

import pandas as pd
from pydantic import BaseModel

from .census import FourCycleCensus, SignCensus
from .certify import PatternRow, QuasiRandomnessReport
from .discrepancy import BiasResult, DiscrepancyResult
from .spectral import SpectrumSummary
from .types import VertexSubsetPair, Verdict

REPORT_SCHEMA = "qro-report/1"


class RationalModel(BaseModel):
    num: str
    den: str

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> "RationalModel":
        value = Fraction(value)
        return cls(num=str(value.numerator), den=str(value.denominator))

    def to_fraction(self) -> Fraction:
        return Fraction(int(self.num), int(self.den))


class FloatModel(BaseModel):
    value: float
    tolerance: float


class SubsetPairModel(BaseModel):
    A: list[int]
    B: list[int]

    @classmethod
    def from_pair(cls, pair: VertexSubsetPair) -> "SubsetPairModel":
        return cls(A=list(pair.A), B=list(pair.B))


class CensusModel(BaseModel):
    hom_i: str
    hom_ii: str
    hom_iii: str
    hom_iv: str
    hom_c4: str
    c_total: Optional[str] = None
    c_plus: Optional[str] = None
    c_minus: Optional[str] = None
    quadruple_sum: Optional[str] = None

    @classmethod
    def build(
        cls,
        census: FourCycleCensus,
        sign: SignCensus | None = None,
        quadruple_sum: int | None = None,
    ) -> "CensusModel":
        fields = dict(zip(("hom_i", "hom_ii", "hom_iii", "hom_iv", "hom_c4"), map(str, census.as_tuple())))
        if sign is not None:
            fields.update(c_total=str(sign.c_total), c_plus=str(sign.c_plus), c_minus=str(sign.c_minus))
        if quadruple_sum is not None:
            fields["quadruple_sum"] = str(quadruple_sum)
        return cls(**fields)


class SpectrumModel(BaseModel):
    lambda1: FloatModel
    magnitudes: list[float]
    sum_lambda4: str
    sum_lambda2_abs: str
    full: bool
    iterations: int

    @classmethod
    def build(cls, summary: SpectrumSummary, tolerance: float) -> "SpectrumModel":
        return cls(
            lambda1=FloatModel(value=summary.lambda1, tolerance=tolerance),
            magnitudes=list(summary.magnitudes),
            sum_lambda4=str(summary.sum_lambda4),
            sum_lambda2_abs=str(summary.sum_lambda2_abs),
            full=summary.full,
            iterations=summary.iterations,
        )


class DiscrepancyModel(BaseModel):
    value: str
    gamma: RationalModel
    exact: bool
    witness: SubsetPairModel

    @classmethod
    def build(cls, result: DiscrepancyResult) -> "DiscrepancyModel":
        return cls(
            value=str(result.value),
            gamma=RationalModel.from_fraction(result.gamma),
            exact=result.exact,
            witness=SubsetPairModel.from_pair(result.witness),
        )


class BiasModel(BaseModel):
    nu: str
    value: str
    exact: bool
    witness: SubsetPairModel

    @classmethod
    def build(cls, result: BiasResult) -> "BiasModel":
        return cls(
            nu=str(result.nu),
            value=str(result.value),
            exact=result.exact,
            witness=SubsetPairModel.from_pair(result.witness),
        )


class HomModel(BaseModel):
    pattern: str
    target: str
    hom: str
    underlying_hom: str
    deviation: RationalModel


class PatternModel(BaseModel):
    name: str
    k: int
    arcs: int
    four_cycle_type: Optional[str] = None
    hom: Optional[str] = None
    underlying_hom: Optional[str] = None
    deviation: Optional[RationalModel] = None
    normalized: Optional[RationalModel] = None
    detail: str = ""

    @classmethod
    def build(cls, row: PatternRow, n: int) -> "PatternModel":
        available = row.available
        return cls(
            name=row.name,
            k=row.k,
            arcs=row.arcs,
            four_cycle_type=row.four_cycle_type,
            hom=str(row.hom) if available else None,
            underlying_hom=str(row.underlying_hom) if available else None,
            deviation=RationalModel.from_fraction(row.deviation) if available else None,
            normalized=RationalModel.from_fraction(row.normalized(n)) if available else None,
            detail=row.detail,
        )


class VerdictModel(BaseModel):
    name: str
    status: Literal["passed", "failed", "skipped"]
    margin: Union[RationalModel, FloatModel, None] = None
    detail: str = ""

    @classmethod
    def build(cls, verdict: Verdict, tolerance: float) -> "VerdictModel":
        margin = verdict.margin
        if isinstance(margin, float):
            margin = FloatModel(value=margin, tolerance=tolerance)
        elif margin is not None:
            margin = RationalModel.from_fraction(margin)
        return cls(name=verdict.name, status=verdict.status.value, margin=margin, detail=verdict.detail)


class ParametersModel(BaseModel):
    alpha: RationalModel
    delta: RationalModel
    gamma: RationalModel
    gamma_exact: bool
    epsilon: RationalModel
    epsilon_exact: bool
    zeta: Optional[FloatModel] = None
    beta: Optional[RationalModel] = None
    eta: Optional[RationalModel] = None


class ReportModel(BaseModel):
    schema_version: str = REPORT_SCHEMA
    n: str
    e: str
    e_oriented: str
    census: CensusModel
    type_shares: dict[str, RationalModel]
    spectrum: Optional[SpectrumModel] = None
    discrepancy: DiscrepancyModel
    root_bias: Optional[BiasModel] = None
    parameters: ParametersModel
    patterns: list[PatternModel]
    verdicts: list[VerdictModel]
    notes: list[str]


def _optional_rational(value: Fraction | None) -> RationalModel | None:
    return None if value is None else RationalModel.from_fraction(value)


def build_report_model(report: QuasiRandomnessReport, tolerance: float) -> ReportModel:
    zeta = report.zeta
    return ReportModel(
        n=str(report.n),
        e=str(report.e),
        e_oriented=str(report.e_oriented),
        census=CensusModel.build(report.census, report.sign, report.quadruple_sum),
        type_shares={name: RationalModel.from_fraction(v) for name, v in report.type_shares().items()},
        spectrum=SpectrumModel.build(report.spectrum, tolerance) if report.spectrum else None,
        discrepancy=DiscrepancyModel.build(report.discrepancy),
        root_bias=BiasModel.build(report.root_bias) if report.root_bias else None,
        parameters=ParametersModel(
            alpha=RationalModel.from_fraction(report.alpha),
            delta=RationalModel.from_fraction(report.delta),
            gamma=RationalModel.from_fraction(report.gamma),
            gamma_exact=report.gamma_exact,
            epsilon=RationalModel.from_fraction(report.epsilon),
            epsilon_exact=report.epsilon_exact,
            zeta=None if zeta is None else FloatModel(value=zeta, tolerance=tolerance),
            beta=_optional_rational(report.beta),
            eta=_optional_rational(report.eta),
        ),
        patterns=[PatternModel.build(row, report.n) for row in report.patterns],
        verdicts=[VerdictModel.build(v, tolerance) for v in report.verdicts],
        notes=list(report.notes),
    )


def to_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2) + "\n"


def _show(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def census_table(census: FourCycleCensus) -> pd.DataFrame:
    return pd.DataFrame(
        [census.as_tuple()], columns=["hom_I", "hom_II", "hom_III", "hom_IV", "hom_C4"]
    )


def verdict_table(verdicts: list[Verdict] | tuple[Verdict, ...]) -> pd.DataFrame:
    return pd.DataFrame(
        [(v.status.value, v.name, _show(v.margin)) for v in verdicts],
        columns=["status", "check", "margin"],
    )


def pattern_table(rows: tuple[PatternRow, ...], n: int) -> pd.DataFrame:
    return pd.DataFrame(
        [
            (row.name, row.four_cycle_type or "", _show(row.hom), _show(row.deviation), _show(row.normalized(n)))
            for row in rows
        ],
        columns=["pattern", "type", "hom", "deviation", "|deviation|/n^k"],
    )


def render_census(census: FourCycleCensus) -> str:
    return f"census ({', '.join(map(str, census.as_tuple()))})\n{census_table(census).to_string(index=False)}\n"


def render_verdicts(verdicts) -> str:
    if not verdicts:
        return "no verdicts\n"
    return verdict_table(verdicts).to_string(index=False) + "\n"


def render_report(report: QuasiRandomnessReport) -> str:
    def exactness(flag: bool) -> str:
        return "exact" if flag else "heuristic lower bound"

    parameters = pd.DataFrame(
        [
            ("alpha", _show(report.alpha), "exact"),
            ("delta", _show(report.delta), "exact"),
            ("gamma", _show(report.gamma), exactness(report.gamma_exact)),
            ("epsilon", _show(report.epsilon), exactness(report.epsilon_exact)),
            ("zeta", _show(report.zeta), "float"),
            ("beta", _show(report.beta), "pattern set"),
            ("eta", _show(report.eta), "pattern set"),
        ],
        columns=["parameter", "value", "kind"],
    )
    sections = [
        f"graph n={report.n} e={report.e} arcs={report.e_oriented}",
        render_census(report.census).rstrip("\n"),
        f"sign census C={report.sign.c_total} C+={report.sign.c_plus} C-={report.sign.c_minus}, "
        f"quadruple sum {report.quadruple_sum}",
        parameters.to_string(index=False),
        pattern_table(report.patterns, report.n).to_string(index=False),
        render_verdicts(report.verdicts).rstrip("\n"),
    ]
    sections.extend(f"note: {note}" for note in report.notes)
    return "\n\n".join(sections) + "\n"
