"""HTTP service exposing the command layer.

One POST endpoint per command; matroid documents, matrices and orders travel
inline as text in the request body. Responses are the same report dicts the
command line prints. Bad documents and violated preconditions come back as
status 400 with the error message.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from omprog import __version__, commands

app = FastAPI(title="omprog", version=__version__)


class ValidateRequest(BaseModel):
    document: str
    timing: bool = False


class EuclideanRequest(BaseModel):
    document: str
    g: str | None = None
    f: str | None = None
    all_pairs: bool = False
    timing: bool = False


class LexExtendRequest(BaseModel):
    document: str
    base: list[str]
    signs: str
    name: str
    timing: bool = False


class ParallelExtendRequest(BaseModel):
    document: str
    g: str
    f: str
    through: str
    name: str
    timing: bool = False


class SweepRequest(BaseModel):
    document: str
    g: str
    f: str
    order: str | None = None
    timing: bool = False


class ShellRequest(BaseModel):
    document: str
    f: str
    scope: str
    g: str | None = None
    basis: list[str] | None = None
    timing: bool = False


class VerifyShellingRequest(BaseModel):
    document: str
    f: str
    order: str
    g: str | None = None
    timing: bool = False


class FromMatrixRequest(BaseModel):
    matrix: str
    timing: bool = False


def _run(fn, *args, **kwargs) -> dict:
    try:
        return fn(*args, **kwargs)
    except (ValueError, RuntimeError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"ok": True, "version": __version__}


@app.post("/validate")
def validate(req: ValidateRequest) -> dict:
    return _run(commands.validate_command, req.document, timing=req.timing)


@app.post("/euclidean")
def euclidean(req: EuclideanRequest) -> dict:
    return _run(
        commands.euclidean_command,
        req.document,
        g=req.g,
        f=req.f,
        all_pairs=req.all_pairs,
        timing=req.timing,
    )


@app.post("/lex-extend")
def lex_extend(req: LexExtendRequest) -> dict:
    return _run(
        commands.lex_extend_command,
        req.document,
        req.base,
        req.signs,
        req.name,
        timing=req.timing,
    )


@app.post("/parallel-extend")
def parallel_extend(req: ParallelExtendRequest) -> dict:
    return _run(
        commands.parallel_extend_command,
        req.document,
        req.g,
        req.f,
        req.through,
        req.name,
        timing=req.timing,
    )


@app.post("/sweep")
def sweep(req: SweepRequest) -> dict:
    return _run(
        commands.sweep_command,
        req.document,
        req.g,
        req.f,
        order_text=req.order,
        timing=req.timing,
    )


@app.post("/shell")
def shell(req: ShellRequest) -> dict:
    return _run(
        commands.shell_command,
        req.document,
        req.f,
        req.scope,
        g=req.g,
        basis=req.basis,
        timing=req.timing,
    )


@app.post("/verify-shelling")
def verify_shelling(req: VerifyShellingRequest) -> dict:
    return _run(
        commands.verify_shelling_command,
        req.document,
        req.f,
        req.order,
        g=req.g,
        timing=req.timing,
    )


@app.post("/from-matrix")
def from_matrix(req: FromMatrixRequest) -> dict:
    return _run(commands.from_matrix_command, req.matrix, timing=req.timing)
