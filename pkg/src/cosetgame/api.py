"""HTTP service around the game engine, plus the service-layer builders.

The CLI renders the same report objects to text, so both front ends share one
code path into the core package.
"""
from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .bound import rate_envelope, upper_bound
from .cosets import encoder_circuit
from .f2 import Subspace, parse_matrix
from .game import exact_value, monte_carlo
from .qstate import circuit_to_text
from .strategy import single_out_bell_pairs, win_probability_formula
from .verify import run_checks


class BoundRow(BaseModel):
    m: int
    bound: str
    decimal: float
    envelope_ok: bool


class BoundTable(BaseModel):
    rows: list[BoundRow]


class ExactReport(BaseModel):
    m: int
    value: str
    bound: str
    tight: bool


class SimulateReport(BaseModel):
    m: int
    rounds: int
    seed: int
    joint_wins: int
    bob_wins: int
    charlie_wins: int
    joint_rate: float
    bob_rate: float
    charlie_rate: float


class SubspaceRequest(BaseModel):
    matrix: str


class SubspaceReport(BaseModel):
    rref: str
    m: int
    pivots: list[int]
    cross_pairs: list[tuple[int, int]]
    x_rep_coords: list[int]
    z_rep_coords: list[int]
    encoder: str
    bell_pairs: int
    residual_pairs: list[tuple[int, int]]
    h_pairs: list[tuple[int, int]]
    win_probability: str
    win_probability_decimal: float


class VerifyCheck(BaseModel):
    name: str
    passed: bool
    detail: str


class VerifyReport(BaseModel):
    m: int
    checks: list[VerifyCheck]
    all_passed: bool


def bound_table(m_max: int) -> BoundTable:
    if m_max < 1:
        raise ValueError("m-max must be at least 1")
    rows = []
    for m in range(1, m_max + 1):
        b = upper_bound(m)
        lo, hi = rate_envelope(m)
        rows.append(
            BoundRow(m=m, bound=str(b), decimal=float(b), envelope_ok=lo <= b <= hi)
        )
    return BoundTable(rows=rows)


def exact_report(m: int) -> ExactReport:
    if not 1 <= m <= 3:
        raise ValueError("exact evaluation supports m 1..3")
    value = exact_value(m)
    bound = upper_bound(m)
    return ExactReport(m=m, value=str(value), bound=str(bound), tight=value == bound)


def simulate_report(m: int, rounds: int, seed: int) -> SimulateReport:
    stats = monte_carlo(m, rounds, seed)
    return SimulateReport(
        m=m,
        rounds=rounds,
        seed=seed,
        joint_wins=stats.joint_wins,
        bob_wins=stats.bob_wins,
        charlie_wins=stats.charlie_wins,
        joint_rate=stats.joint_rate,
        bob_rate=stats.bob_rate,
        charlie_rate=stats.charlie_rate,
    )


def subspace_report(matrix: str) -> SubspaceReport:
    try:
        W = Subspace.from_matrix(parse_matrix(matrix))
        m = W.m  # raises unless the row space is half-dimensional
    except ValueError as exc:
        raise ValueError(f"bad matrix: {exc}") from None
    lf = single_out_bell_pairs(W)
    p = win_probability_formula(W)
    return SubspaceReport(
        rref=str(W.gen),
        m=m,
        pivots=list(W.pivots),
        cross_pairs=list(W.cross_pairs),
        x_rep_coords=list(W.copivots),
        z_rep_coords=list(W.pivots),
        encoder=circuit_to_text(encoder_circuit(W)),
        bell_pairs=len(lf.residual_pairs),
        residual_pairs=list(lf.residual_pairs),
        h_pairs=list(lf.h),
        win_probability=str(p),
        win_probability_decimal=float(p),
    )


def verify_report(m: int) -> VerifyReport:
    results = run_checks(m)
    return VerifyReport(
        m=m,
        checks=[VerifyCheck(name=r.name, passed=r.passed, detail=r.detail) for r in results],
        all_passed=all(r.passed for r in results),
    )


app = FastAPI(title="cosetgame", version="0.1.0")


@app.get("/healthz")
def healthz():
    return {"status": "ok"}


@app.get("/bound", response_model=BoundTable)
def get_bound(m_max: int):
    try:
        return bound_table(m_max)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.get("/exact", response_model=ExactReport)
def get_exact(m: int):
    try:
        return exact_report(m)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.get("/simulate", response_model=SimulateReport)
def get_simulate(m: int, rounds: int, seed: int):
    try:
        return simulate_report(m, rounds, seed)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.post("/subspace", response_model=SubspaceReport)
def post_subspace(req: SubspaceRequest):
    try:
        return subspace_report(req.matrix)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.get("/verify", response_model=VerifyReport)
def get_verify(m: int):
    try:
        return verify_report(m)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
