"""FastAPI service exposing the computation pipelines.

Run with `thuelat serve` or `uvicorn thuelat.service.app:app`.  Domain errors
map onto HTTP statuses (hypothesis/input 422, budget 413, precision 503)
with a JSON body carrying the machine-readable error code.
"""

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import pipeline
from ..config import Config
from ..errors import BudgetError, PrecisionError, ThueLatError
from . import models

app = FastAPI(
    title="thuelat",
    description="Thue equations and congruence lattices: solve, verify, bound, census.",
    version="0.1.0",
)


def _status_for(exc):
    if isinstance(exc, BudgetError):
        return 413
    if isinstance(exc, PrecisionError):
        return 503
    return 422


@app.exception_handler(ThueLatError)
async def domain_error_handler(request, exc):
    body = models.ErrorBody(code=exc.code, message=str(exc))
    return JSONResponse(status_code=_status_for(exc), content=body.model_dump())


def _config(shards=None):
    return Config.from_env(shard_count=shards)


@app.get("/healthz")
def healthz():
    return {"status": "ok"}


@app.post("/v1/analyze", response_model=models.AnalyzeResponse)
def analyze(req: models.AnalyzeRequest):
    return pipeline.analyze_report(req.form, req.m, _config())


@app.post("/v1/solve", response_model=models.SolveResponse)
def solve(req: models.SolveRequest):
    result = pipeline.solve_pipeline(
        req.form,
        req.m,
        mode=req.mode,
        config=_config(req.shards),
        radius=req.radius,
        use_convergents=req.convergents,
        y_max=req.y_max,
        shards=req.shards,
    )
    records = result.pop("records")
    result["solutions"] = [
        models.SolutionModel(
            x=r.x, y=r.y, value=r.value, provenance=r.provenance, norm_sq=r.norm_sq
        )
        for r in records
    ]
    return result


@app.post("/v1/lattices", response_model=models.LatticesResponse)
def lattices(req: models.LatticesRequest):
    return pipeline.lattices_report(req.form, req.m, _config())


@app.post("/v1/verify", response_model=models.VerifyResponse)
def verify(req: models.VerifyRequest):
    result = pipeline.verify_report(req.form, req.m, _config(), radius=req.radius)
    result["solutions"] = [
        models.SolutionModel(
            x=s.x, y=s.y, value=s.value, provenance=s.provenance, norm_sq=s.norm_sq
        )
        for s in result["solutions"]
    ]
    return result


@app.post("/v1/bounds", response_model=models.BoundsResponse)
def bounds(req: models.BoundsRequest):
    params = req.model_dump(exclude_none=True)
    name = params.pop("name")
    reports = pipeline.bounds_dispatch(name, params, _config())
    return {
        "reports": [
            models.BoundReportModel(
                name=r.name,
                value=r.value,
                inputs=r.inputs,
                side_conditions=[
                    models.SideCondition(condition=c, holds=h) for c, h in r.side_conditions
                ],
            )
            for r in reports
        ]
    }


@app.post("/v1/census", response_model=models.CensusResponse)
def census(req: models.CensusRequest):
    rows, summary = pipeline.census_pipeline(
        req.m_from,
        req.m_to,
        req.delta,
        method=req.method,
        cross_check=req.cross_check,
        config=_config(req.shards),
        shards=req.shards,
    )
    return {
        "rows": [
            models.CensusRowModel(
                m=r.m,
                delta=float(r.delta),
                total=r.total,
                short_count=r.short_count,
                proportion=r.proportion,
                bound_4pi_m_minus_2delta=r.bound,
            )
            for r in rows
        ],
        "summary": models.CensusSummaryModel(
            rows=summary.rows,
            max_scaled_proportion=summary.max_scaled_proportion,
            bound_violations=summary.bound_violations,
            minkowski_violations=summary.minkowski_violations,
        ),
    }


@app.post("/v1/exceptional", response_model=models.ExceptionalResponse)
def exceptional(req: models.ExceptionalRequest):
    return pipeline.exceptional_report(req.form, (req.x, req.y), req.eps, _config())


@app.post("/v1/classify", response_model=models.ClassifyResponse)
def classify(req: models.ClassifyRequest):
    result = pipeline.classify_report(req.form, req.m, req.eps, _config(), radius=req.radius)
    result["side_conditions"] = [
        models.SideCondition(condition=c, holds=h) for c, h in result["side_conditions"]
    ]
    return result
