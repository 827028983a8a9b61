"""HTTP JSON API over the solver for the browser frontend.

Single solves run synchronously on a small interactive budget; sweeps run
as asynchronous jobs polled by id. Every quad/ring response carries a
solution_id whose mesh and nodal potential can be fetched for contour
rendering. The job store is in memory with TTL eviction: restarting the
service forgets finished work, which is fine for a pilot tool.
"""

from __future__ import annotations

import math
import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from qmod.config import API_SOLVE, SWEEP_SOLVE
from qmod.geometry import GeometryError, RingCondenser, polygon_from_json, quad_from_json
from qmod.meshing import MeshError, mesh_to_json
from qmod.fem import SolverError
from qmod.experiments import EXPERIMENTS, SweepGrid, run_sweep
from qmod.modulus import quad_modulus, ring_capacity

_HARD_MAX_DOFS = 200_000
JobState = Literal["queued", "running", "done", "failed"]
_STATE_ORDER = {"queued": 0, "running": 1, "done": 2, "failed": 2}


@dataclass
class Job:
    id: str
    kind: Literal["quad", "ring", "sweep"]
    state: JobState = "queued"
    request: dict = field(default_factory=dict)
    result: dict | None = None
    error: str | None = None
    progress: float = 0.0
    expires: float = 0.0


class JobStore:
    """Thread-safe in-memory job map with TTL eviction on every access."""

    def __init__(self, ttl: float = 3600.0):
        self._ttl = ttl
        self._jobs: dict[str, Job] = {}
        self._lock = threading.Lock()

    def _evict(self) -> None:
        now = time.monotonic()
        dead = [k for k, j in self._jobs.items() if j.expires < now]
        for k in dead:
            del self._jobs[k]

    def create(self, kind, request: dict) -> Job:
        job = Job(id=uuid.uuid4().hex, kind=kind, request=request, expires=time.monotonic() + self._ttl)
        with self._lock:
            self._evict()
            self._jobs[job.id] = job
        return job

    def get(self, job_id: str) -> Job | None:
        with self._lock:
            self._evict()
            return self._jobs.get(job_id)

    def transition(self, job_id: str, state: JobState, **updates) -> None:
        with self._lock:
            job = self._jobs.get(job_id)
            if job is None:
                return
            if _STATE_ORDER[state] < _STATE_ORDER[job.state]:
                raise RuntimeError(f"illegal job transition {job.state} -> {state}")
            job.state = state
            for k, v in updates.items():
                setattr(job, k, v)

    def set_progress(self, job_id: str, progress: float) -> None:
        with self._lock:
            job = self._jobs.get(job_id)
            if job is not None:
                job.progress = progress


class QuadBody(BaseModel):
    vertices: list[tuple[float, float]] = Field(min_length=3)
    marked: list[int] | None = None
    tol: float | None = Field(default=None, gt=0.0)
    max_dofs: int | None = Field(default=None, ge=1000, le=_HARD_MAX_DOFS)


class PolygonBody(BaseModel):
    vertices: list[tuple[float, float]] = Field(min_length=3)


class RingBody(BaseModel):
    outer: PolygonBody
    inner: PolygonBody
    tol: float | None = Field(default=None, gt=0.0)
    max_dofs: int | None = Field(default=None, ge=1000, le=_HARD_MAX_DOFS)


class GridBody(BaseModel):
    x_min: float
    x_max: float
    nx: int = Field(ge=2, le=200)
    y_min: float
    y_max: float
    ny: int = Field(ge=2, le=200)
    alpha: float | None = None
    beta: float | None = None


class SweepBody(BaseModel):
    experiment: str
    grid: GridBody
    tol: float | None = Field(default=None, gt=0.0)
    max_dofs: int | None = Field(default=None, ge=1000, le=_HARD_MAX_DOFS)


def _bad_request(err: Exception) -> JSONResponse:
    reason = getattr(err, "code", "invalid-input")
    return JSONResponse(status_code=400, content={"reason": reason, "message": str(err)})


def create_app(workers: int = 2, ttl: float = 3600.0) -> FastAPI:
    app = FastAPI(title="qmod", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = JobStore(ttl=ttl)
    pool = ThreadPoolExecutor(max_workers=workers)
    app.state.jobs = store

    def _store_solution(kind: str, result) -> str:
        job = store.create(kind, {})
        mesh_payload = mesh_to_json(result.mesh)
        mesh_payload["values"] = [float(v) for v in result.solution.nodal_values]
        store.transition(job.id, "done", result=mesh_payload, progress=1.0)
        return job.id

    @app.post("/api/quad")
    def post_quad(body: QuadBody):
        try:
            quad = quad_from_json({"vertices": body.vertices, "marked": body.marked} if body.marked else {"vertices": body.vertices})
            result = quad_modulus(
                quad,
                tol=body.tol or API_SOLVE.tol,
                max_dofs=body.max_dofs or API_SOLVE.max_dofs,
                keep_solution=True,
            )
        except (GeometryError, MeshError, SolverError) as err:
            return _bad_request(err)
        payload = result.to_json()
        payload["solution_id"] = _store_solution("quad", result)
        return JSONResponse(status_code=200 if result.converged else 422, content=payload)

    @app.post("/api/ring")
    def post_ring(body: RingBody):
        try:
            ring = RingCondenser(
                polygon_from_json(body.outer.model_dump()),
                polygon_from_json(body.inner.model_dump()),
            )
            result = ring_capacity(
                ring,
                tol=body.tol or API_SOLVE.tol,
                max_dofs=body.max_dofs or API_SOLVE.max_dofs,
                keep_solution=True,
            )
        except (GeometryError, MeshError, SolverError) as err:
            return _bad_request(err)
        payload = result.to_json()
        payload["solution_id"] = _store_solution("ring", result)
        return JSONResponse(status_code=200 if result.converged else 422, content=payload)

    @app.post("/api/sweeps", status_code=202)
    def post_sweep(body: SweepBody):
        if body.experiment not in EXPERIMENTS:
            return _bad_request(ValueError(f"unknown experiment {body.experiment!r}"))
        try:
            grid = SweepGrid(**body.grid.model_dump())
        except ValueError as err:
            return _bad_request(err)
        job = store.create("sweep", body.model_dump())
        tol = body.tol or SWEEP_SOLVE.tol
        max_dofs = body.max_dofs or SWEEP_SOLVE.max_dofs

        def work():
            store.transition(job.id, "running")
            try:
                result = run_sweep(
                    body.experiment,
                    grid,
                    tol=tol,
                    max_dofs=max_dofs,
                    progress=lambda done, total: store.set_progress(job.id, done / total),
                )
            except Exception as err:  # job isolation: failures stay in the job
                store.transition(job.id, "failed", error=str(err))
                return
            def num(v: float):
                return v if math.isfinite(v) else None

            rows = [
                {
                    "x": r.x, "y": r.y, "lhs": num(r.lhs), "rhs": num(r.rhs),
                    "delta": num(r.delta), "bracket": num(r.bracket), "skipped": r.skipped,
                }
                for r in result.records
            ]
            store.transition(job.id, "done", result={"rows": rows, "summary": result.summary()}, progress=1.0)

        pool.submit(work)
        return {"id": job.id}

    @app.get("/api/sweeps/{job_id}")
    def get_sweep(job_id: str):
        job = store.get(job_id)
        if job is None or job.kind != "sweep":
            return JSONResponse(status_code=404, content={"reason": "unknown-job", "message": job_id})
        payload = {"id": job.id, "state": job.state, "progress": job.progress}
        if job.state == "done":
            payload["result"] = job.result
        if job.state == "failed":
            payload["error"] = job.error
        return payload

    @app.get("/api/solution/{job_id}")
    def get_solution(job_id: str):
        job = store.get(job_id)
        if job is None or job.kind not in ("quad", "ring"):
            return JSONResponse(status_code=404, content={"reason": "unknown-job", "message": job_id})
        return {"id": job.id, "kind": job.kind, **job.result}

    return app


app = create_app()
