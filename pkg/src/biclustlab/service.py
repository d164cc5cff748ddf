"""HTTP/JSON facade: dataset upload and preprocessing, asynchronous algorithm
runs over a bounded worker pool, validation reports and SVG documents. Datasets
and results are stored under data_dir in the same formats the CLI reads and
writes, so a server restart loses only queued jobs."""

from __future__ import annotations

import hashlib
import os
import threading
from concurrent.futures import ThreadPoolExecutor

from fastapi import FastAPI, HTTPException, UploadFile
from fastapi.responses import Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .core import (BiclustError, ParameterError, ParseError, load_bicluster_set,
                   load_matrix, save_bicluster_set, save_matrix)
from .algorithms import REGISTRY, resolve_params, run_algorithm
from . import preprocess as pp
from . import validation as val
from . import viz as viz_mod


class RunRequest(BaseModel):
    dataset_id: str
    algorithm: str
    params: dict = {}
    seed: int = 42


class PreprocessRequest(BaseModel):
    steps: list


class ValidateRequest(BaseModel):
    run_id: str
    indices: list = ["all"]
    reference_run_id: str | None = None


def _dataset_id(content: bytes) -> str:
    return "d" + hashlib.sha1(content).hexdigest()[:12]


def create_app(data_dir: str = "biclustlab-data", worker_count: int = 2,
               static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="biclustlab service")
    datasets_dir = os.path.join(data_dir, "datasets")
    runs_dir = os.path.join(data_dir, "runs")
    os.makedirs(datasets_dir, exist_ok=True)
    os.makedirs(runs_dir, exist_ok=True)

    lock = threading.Lock()
    matrices = {}  # dataset id -> ExpressionMatrix
    jobs = {}  # job id -> dict
    counter = {"job": 0}
    pool = ThreadPoolExecutor(max_workers=max(1, worker_count))

    for fname in sorted(os.listdir(datasets_dir)):
        if fname.endswith(".tsv"):
            did = fname[:-4]
            try:
                matrices[did] = load_matrix(os.path.join(datasets_dir, fname))
            except BiclustError:
                continue

    def _get_dataset(did: str):
        with lock:
            m = matrices.get(did)
        if m is None:
            raise HTTPException(404, f"unknown dataset {did}")
        return m

    def _get_job(jid: str):
        with lock:
            job = jobs.get(jid)
        if job is None:
            raise HTTPException(404, f"unknown run {jid}")
        return job

    def _store_matrix(m) -> str:
        path_tmp = os.path.join(datasets_dir, "tmp-upload.tsv")
        save_matrix(m, path_tmp)
        with open(path_tmp, "rb") as fh:
            did = _dataset_id(fh.read())
        os.replace(path_tmp, os.path.join(datasets_dir, did + ".tsv"))
        with lock:
            matrices[did] = m
        return did

    def _job_view(job: dict) -> dict:
        out = {k: job[k] for k in
               ("id", "dataset_id", "algorithm", "params", "seed",
                "status", "progress", "error")}
        if "n_biclusters" in job:
            out["n_biclusters"] = job["n_biclusters"]
        return out

    def _execute(jid: str):
        with lock:
            job = jobs[jid]
            job["status"] = "running"
            job["progress"] = 0.5
            m = matrices[job["dataset_id"]]
        try:
            out = run_algorithm(job["algorithm"], m, dict(job["params"]),
                                job["seed"])
            save_bicluster_set(out, os.path.join(runs_dir, jid + ".json"),
                               matrix=m)
            with lock:
                job["status"] = "done"
                job["progress"] = 1.0
                job["n_biclusters"] = len(out)
        except Exception as exc:  # job errors surface via status polling
            with lock:
                job["status"] = "failed"
                job["progress"] = 1.0
                job["error"] = f"{type(exc).__name__}: {exc}"

    @app.post("/api/datasets")
    async def upload_dataset(file: UploadFile):
        content = await file.read()
        tmp = os.path.join(datasets_dir, "tmp-parse.tsv")
        with open(tmp, "wb") as fh:
            fh.write(content)
        try:
            m = load_matrix(tmp)
        except ParseError as exc:
            raise HTTPException(400, str(exc))
        finally:
            if os.path.exists(tmp):
                os.remove(tmp)
        did = _store_matrix(m)
        return {"id": did, "shape": list(m.shape),
                "missing_count": m.n_missing}

    @app.get("/api/datasets")
    def list_datasets():
        with lock:
            return [{"id": did, "shape": list(m.shape)}
                    for did, m in sorted(matrices.items())]

    @app.get("/api/datasets/{did}/summary")
    def dataset_summary(did: str):
        m = _get_dataset(did)
        vals = m.values[~m.missing_mask] if m.n_missing else m.values
        return {
            "id": did, "shape": list(m.shape), "missing_count": m.n_missing,
            "row_ids": list(m.row_ids[:50]), "col_ids": list(m.col_ids),
            "min": float(vals.min()), "max": float(vals.max()),
            "mean": float(vals.mean()),
        }

    @app.post("/api/datasets/{did}/preprocess")
    def preprocess_dataset(did: str, req: PreprocessRequest):
        m = _get_dataset(did)
        with lock:
            busy = any(j["dataset_id"] == did and j["status"] in ("queued", "running")
                       for j in jobs.values())
        if busy:
            raise HTTPException(409, f"dataset {did} has running jobs")
        try:
            out = pp.apply_steps(m, req.steps)
        except BiclustError as exc:
            raise HTTPException(400, str(exc))
        new_id = _store_matrix(out)
        return {"id": new_id, "shape": list(out.shape),
                "missing_count": out.n_missing}

    @app.get("/api/algorithms")
    def list_algorithms():
        return [REGISTRY[name].schema() for name in sorted(REGISTRY)]

    @app.post("/api/runs", status_code=201)
    def submit_run(req: RunRequest):
        _get_dataset(req.dataset_id)
        if req.algorithm not in REGISTRY:
            raise HTTPException(404, f"unknown algorithm {req.algorithm}")
        try:
            resolved = resolve_params(req.algorithm, req.params)
        except ParameterError as exc:
            raise HTTPException(422, str(exc))
        with lock:
            counter["job"] += 1
            jid = f"job-{counter['job']}"
            jobs[jid] = {
                "id": jid, "dataset_id": req.dataset_id,
                "algorithm": req.algorithm, "params": resolved,
                "seed": req.seed, "status": "queued", "progress": 0.0,
                "error": None,
            }
        pool.submit(_execute, jid)
        return {"id": jid}

    @app.get("/api/runs")
    def list_runs():
        with lock:
            return [_job_view(j) for j in jobs.values()]

    @app.get("/api/runs/{jid}")
    def run_status(jid: str):
        return _job_view(_get_job(jid))

    @app.get("/api/runs/{jid}/biclusters")
    def run_biclusters(jid: str):
        job = _get_job(jid)
        if job["status"] == "failed":
            raise HTTPException(500, job["error"])
        if job["status"] != "done":
            raise HTTPException(409, f"run {jid} is {job['status']}")
        # serve the stored artifact verbatim so service output is
        # byte-identical to the CLI writing the same run
        with open(os.path.join(runs_dir, jid + ".json"), "rb") as fh:
            return Response(content=fh.read(), media_type="application/json")

    @app.get("/api/runs/{jid}/viz/{kind}")
    def run_viz(jid: str, kind: str, bicluster: int | None = None,
                width: int = 640, height: int = 480):
        job = _get_job(jid)
        if job["status"] != "done":
            raise HTTPException(409, f"run {jid} is {job['status']}")
        m = _get_dataset(job["dataset_id"])
        s = load_bicluster_set(os.path.join(runs_dir, jid + ".json"), matrix=m)
        spec = viz_mod.RenderSpec(kind=kind, target=bicluster, width=width,
                                  height=height, highlight=bicluster is not None)
        try:
            doc = viz_mod.render(m, s, spec)
        except BiclustError as exc:
            raise HTTPException(400, str(exc))
        return Response(content=doc, media_type="image/svg+xml")

    @app.post("/api/validate")
    def validate(req: ValidateRequest):
        job = _get_job(req.run_id)
        if job["status"] != "done":
            raise HTTPException(409, f"run {req.run_id} is {job['status']}")
        m = _get_dataset(job["dataset_id"])
        s = load_bicluster_set(os.path.join(runs_dir, req.run_id + ".json"),
                               matrix=m)
        reference = None
        if req.reference_run_id is not None:
            ref_job = _get_job(req.reference_run_id)
            if ref_job["status"] != "done":
                raise HTTPException(409, f"run {req.reference_run_id} is "
                                         f"{ref_job['status']}")
            reference = load_bicluster_set(
                os.path.join(runs_dir, req.reference_run_id + ".json"),
                matrix=_get_dataset(ref_job["dataset_id"]))
        try:
            report = val.validate_set(m, s, reference=reference,
                                      indices=tuple(req.indices))
        except BiclustError as exc:
            raise HTTPException(400, str(exc))
        return report.to_dict()

    if static_dir is None:
        here = os.path.dirname(os.path.abspath(__file__))
        for candidate in (
            os.path.join(here, "..", "..", "frontend", "dist"),
            os.path.join(os.getcwd(), "frontend", "dist"),
        ):
            if os.path.isdir(candidate):
                static_dir = candidate
                break
    if static_dir and os.path.isdir(static_dir):
        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="ui")
    return app
