"""HTTP service exposing the analysis pipeline.

POST /analyze    -> full structure report (decomposition included when simple)
POST /decompose  -> same report, but 409 when the closure is not simple
POST /classify   -> basic-type label
POST /verify     -> decompose + recomposition check
GET  /health     -> liveness probe

Requests carry the machine description inline; the service never touches
the filesystem. Errors come back as {"error": {"kind", "message", ...}}.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .algebra_analyzer import summarize_group
from .closure_engine import DEFAULT_CLOSURE_LIMIT, generate_closure, rank_spectrum
from .decomposer import (
    ComponentSet,
    MachineReport,
    RecompositionReport,
    ReesDecomposition,
    classify_basic,
    decompose_machine,
    format_spectrum,
)
from .errors import (
    ClosureBudgetExceeded,
    InvariantViolation,
    MachineParseError,
    NotSimpleError,
)
from .machine_io import parse_machine, parse_machine_json
from .machine_model import Machine


class AnalyzeRequest(BaseModel):
    machine_text: str
    machine_format: Literal["text", "json"] = "text"
    max_closure: int = Field(default=DEFAULT_CLOSURE_LIMIT, ge=1)


class GeneratorInfo(BaseModel):
    label: str
    image: list[int]


class MachineSummary(BaseModel):
    states: int
    state_names: list[str]
    generators: list[GeneratorInfo]


class ElementInfo(BaseModel):
    index: int
    image: list[int]
    word: list[str]
    rank: int
    tail: int
    period: int


class RankSpectrumInfo(BaseModel):
    counts: dict[int, int]
    min_rank: int
    max_rank: int


class GridInfo(BaseModel):
    rows: int
    cols: int
    total: bool


class PeriodicityInfo(BaseModel):
    all_periodic: bool
    max_tail: int
    max_period: int


class VerificationInfo(BaseModel):
    passed: bool
    pairs_checked: int
    first_mismatch: Optional[str] = None


class GroupInfo(BaseModel):
    order: int
    abelian: bool
    element_orders: list[int]
    members: list[int]


class DecompositionInfo(BaseModel):
    rows: int
    cols: int
    group_order: int
    kind: Literal["direct", "semidirect"]
    reference: int
    group: GroupInfo
    sandwich: list[list[int]]
    branch: MachineSummary
    reset: MachineSummary
    permutation: MachineSummary
    verification: VerificationInfo


class AnalysisReport(BaseModel):
    machine: MachineSummary
    closure_size: int
    elements: list[ElementInfo]
    rank_spectrum: RankSpectrumInfo
    simple: bool
    constant_rank: bool
    idempotent_count: int
    grid: GridInfo
    periodicity: PeriodicityInfo
    basic_type: Optional[str]
    minimal_ideal: Optional[list[int]]
    decomposition: Optional[DecompositionInfo]


class ClassifyReport(BaseModel):
    label: str
    closure_size: int


class ErrorInfo(BaseModel):
    kind: Literal["parse", "not_simple", "budget", "internal"]
    message: str
    line: Optional[int] = None
    column: Optional[int] = None
    partial_count: Optional[int] = None


class ErrorResponse(BaseModel):
    error: ErrorInfo


def _machine_summary(m: Machine) -> MachineSummary:
    return MachineSummary(
        states=m.n,
        state_names=list(m.state_names),
        generators=[GeneratorInfo(label=label, image=list(t.image)) for label, t in m.generators],
    )


def _verification_info(v: RecompositionReport) -> VerificationInfo:
    return VerificationInfo(
        passed=v.passed, pairs_checked=v.pairs_checked, first_mismatch=v.first_mismatch
    )


def _decomposition_info(
    s, d: ReesDecomposition, c: ComponentSet, v: RecompositionReport
) -> DecompositionInfo:
    summary = summarize_group(s, d.group)
    return DecompositionInfo(
        rows=d.m,
        cols=d.n,
        group_order=d.group.order,
        kind=d.kind,
        reference=d.reference,
        group=GroupInfo(
            order=summary.order,
            abelian=summary.abelian,
            element_orders=list(summary.element_orders),
            members=list(d.group.members),
        ),
        sandwich=[list(row) for row in d.sandwich],
        branch=_machine_summary(c.branch),
        reset=_machine_summary(c.reset),
        permutation=_machine_summary(c.permutation),
        verification=_verification_info(v),
    )


def _analysis_report(report: MachineReport) -> AnalysisReport:
    closure = report.closure
    elements = [
        ElementInfo(
            index=i,
            image=list(t.image),
            word=list(closure.witness_words[i]),
            rank=t.rank(),
            tail=report.periodicity[i][0],
            period=report.periodicity[i][1],
        )
        for i, t in enumerate(closure.elements)
    ]
    decomposition = None
    if report.decomposition is not None:
        decomposition = _decomposition_info(
            closure, report.decomposition, report.components, report.verification
        )
    tails = [t for t, _ in report.periodicity]
    periods = [p for _, p in report.periodicity]
    return AnalysisReport(
        machine=_machine_summary(report.machine),
        closure_size=closure.size,
        elements=elements,
        rank_spectrum=RankSpectrumInfo(
            counts=report.spectrum.counts,
            min_rank=report.spectrum.min_rank,
            max_rank=report.spectrum.max_rank,
        ),
        simple=report.simple,
        constant_rank=report.constant_rank,
        idempotent_count=len(report.idempotent_indices),
        grid=GridInfo(rows=report.grid_rows, cols=report.grid_cols, total=report.grid_total),
        periodicity=PeriodicityInfo(
            all_periodic=not any(tails), max_tail=max(tails), max_period=max(periods)
        ),
        basic_type=report.basic_type if report.basic_type != "other" else None,
        minimal_ideal=report.minimal_ideal,
        decomposition=decomposition,
    )


def _parse_request(req: AnalyzeRequest) -> Machine:
    if req.machine_format == "json":
        return parse_machine_json(req.machine_text)
    try:
        return parse_machine(req.machine_text)
    except MachineParseError:
        raise
    except ValueError as exc:
        raise MachineParseError(str(exc))


def run_analyze(req: AnalyzeRequest) -> AnalysisReport:
    machine = _parse_request(req)
    return _analysis_report(decompose_machine(machine, req.max_closure))


def run_decompose(req: AnalyzeRequest) -> AnalysisReport:
    machine = _parse_request(req)
    report = decompose_machine(machine, req.max_closure)
    if not report.simple:
        raise NotSimpleError(
            f"closure is not simple: rank spectrum {format_spectrum(report.spectrum)}"
        )
    return _analysis_report(report)


def run_classify(req: AnalyzeRequest) -> ClassifyReport:
    machine = _parse_request(req)
    closure = generate_closure(machine, req.max_closure)
    return ClassifyReport(label=classify_basic(closure), closure_size=closure.size)


def run_verify(req: AnalyzeRequest) -> VerificationInfo:
    machine = _parse_request(req)
    report = decompose_machine(machine, req.max_closure)
    if not report.simple:
        raise NotSimpleError(
            f"closure is not simple: rank spectrum {format_spectrum(report.spectrum)}"
        )
    return _verification_info(report.verification)


def error_info(exc: Exception) -> tuple[int, ErrorInfo]:
    """Map a pipeline exception to (HTTP status, error body)."""
    if isinstance(exc, MachineParseError):
        return 400, ErrorInfo(kind="parse", message=str(exc), line=exc.line, column=exc.column)
    if isinstance(exc, NotSimpleError):
        return 409, ErrorInfo(kind="not_simple", message=str(exc))
    if isinstance(exc, ClosureBudgetExceeded):
        return 413, ErrorInfo(kind="budget", message=str(exc), partial_count=exc.partial_count)
    if isinstance(exc, InvariantViolation):
        return 500, ErrorInfo(kind="internal", message=str(exc))
    raise exc


PIPELINE_ERRORS = (MachineParseError, NotSimpleError, ClosureBudgetExceeded, InvariantViolation)

app = FastAPI(
    title="crsm",
    description="Sequential-closure analysis and decomposition of finite state machines",
    version="0.1.0",
)


@app.exception_handler(MachineParseError)
@app.exception_handler(NotSimpleError)
@app.exception_handler(ClosureBudgetExceeded)
@app.exception_handler(InvariantViolation)
async def _pipeline_error(request: Request, exc: Exception):
    status, info = error_info(exc)
    return JSONResponse(status_code=status, content=ErrorResponse(error=info).model_dump())


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/analyze", response_model=AnalysisReport, responses={400: {"model": ErrorResponse}})
def analyze(req: AnalyzeRequest):
    return run_analyze(req)


@app.post(
    "/decompose",
    response_model=AnalysisReport,
    responses={400: {"model": ErrorResponse}, 409: {"model": ErrorResponse}},
)
def decompose_endpoint(req: AnalyzeRequest):
    return run_decompose(req)


@app.post("/classify", response_model=ClassifyReport, responses={400: {"model": ErrorResponse}})
def classify_endpoint(req: AnalyzeRequest):
    return run_classify(req)


@app.post(
    "/verify",
    response_model=VerificationInfo,
    responses={400: {"model": ErrorResponse}, 409: {"model": ErrorResponse}},
)
def verify_endpoint(req: AnalyzeRequest):
    return run_verify(req)
