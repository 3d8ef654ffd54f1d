"""Pydantic request/response models for the HTTP service."""

from typing import Literal, Optional

from pydantic import BaseModel, Field


class AnalyzeRequest(BaseModel):
    form: str = Field(examples=["3: 1 0 0 1"])
    m: int = Field(ge=1)


class PrimeRow(BaseModel):
    p: int
    v_p_m: int
    v_p_disc: int
    c_F_p: int


class AnalyzeResponse(BaseModel):
    form: str
    degree: int
    content: int
    discriminant: int
    m: int
    m_factorization: str
    c_F_m: int
    m_of_F: int
    theorem1_hypothesis: bool
    local_obstruction: bool
    c_F_infinity: int
    primes: list[PrimeRow]


class SolveRequest(BaseModel):
    form: str
    m: int = Field(ge=1)
    mode: Literal["eq", "leq"] = "eq"
    radius: Optional[float] = None
    convergents: bool = False
    y_max: Optional[int] = None
    shards: Optional[int] = Field(default=None, ge=1)


class SolutionModel(BaseModel):
    x: int
    y: int
    value: int
    provenance: str
    norm_sq: int


class SolveResponse(BaseModel):
    form: str
    m: int
    mode: str
    region_radius: float
    region_complete: bool
    region_justification: str
    convergents_scanned_to: Optional[int]
    count: int
    solutions: list[SolutionModel]


class LatticesRequest(BaseModel):
    form: str
    m: int = Field(ge=1)


class LatticeRow(BaseModel):
    lattice: str
    lambda1_sq: int
    lambda2_sq: int
    minkowski_ok: bool


class LatticesResponse(BaseModel):
    form: str
    m: int
    count: int
    lattices: list[LatticeRow]


class VerifyRequest(BaseModel):
    form: str
    m: int = Field(ge=1)
    radius: Optional[float] = None


class LatticeCount(BaseModel):
    lattice: str
    solutions: int


class VerifyResponse(BaseModel):
    form: str
    m: int
    region_radius: float
    region_complete: bool
    covered: bool
    points_with_m_dividing_F: int
    uncovered_count: int
    solution_count: int
    lattices: list[LatticeCount]
    solutions: list[SolutionModel]


class BoundsRequest(BaseModel):
    name: Literal[
        "theorem2", "corollary", "stewart", "proposition", "lemmas", "theorem3-threshold"
    ]
    d: Optional[int] = None
    m: Optional[int] = None
    A: Optional[float] = None
    B: Optional[float] = None
    c: Optional[float] = None
    C1: Optional[float] = None
    C2: Optional[float] = None
    eps: Optional[str] = None
    omega_m_prime: Optional[int] = None
    c_F_m_prime: Optional[int] = None
    form: Optional[str] = None
    m_prime: Optional[int] = None
    abs_disc: Optional[int] = None


class SideCondition(BaseModel):
    condition: str
    holds: Optional[bool]


class BoundReportModel(BaseModel):
    name: str
    value: float
    inputs: dict
    side_conditions: list[SideCondition]


class BoundsResponse(BaseModel):
    reports: list[BoundReportModel]


class CensusRequest(BaseModel):
    m_from: int = Field(ge=1)
    m_to: int = Field(ge=1)
    delta: str = Field(examples=["1/4", "0.25"])
    method: Literal["lattice", "points"] = "lattice"
    cross_check: bool = False
    shards: Optional[int] = Field(default=None, ge=1)


class CensusRowModel(BaseModel):
    m: int
    delta: float
    total: int
    short_count: int
    proportion: float
    bound_4pi_m_minus_2delta: float


class CensusSummaryModel(BaseModel):
    rows: int
    max_scaled_proportion: float
    bound_violations: int
    minkowski_violations: int


class CensusResponse(BaseModel):
    rows: list[CensusRowModel]
    summary: CensusSummaryModel


class ExceptionalRequest(BaseModel):
    form: str
    x: int
    y: int
    eps: str


class ExceptionalResponse(BaseModel):
    form: str
    x: int
    y: int
    eps: float
    verdict: bool
    witness_i: Optional[int]
    witness_j: Optional[int]


class ClassifyRequest(BaseModel):
    form: str
    m: int = Field(ge=1)
    eps: str
    radius: Optional[float] = None


class ClassifyRow(BaseModel):
    lattice: str
    solutions: int
    exceptional: int
    non_exceptional_pairs: int
    pair_ok: bool
    norm_ok: bool


class ClassifyResponse(BaseModel):
    form: str
    m: int
    m_of_F: int
    eps: float
    threshold: int
    region_radius: float
    region_complete: bool
    side_conditions: list[SideCondition]
    ok: bool
    rows: list[ClassifyRow]


class ErrorBody(BaseModel):
    code: str
    message: str
