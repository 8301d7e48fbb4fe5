"""Read-only HTTP/JSON query service over a sealed index.

Every endpoint mirrors a library call one-to-one so responses can be
golden-tested against direct invocations. Errors use a stable code enum:
unknown_scaffold (404), parse_error (400), bad_request (400), internal
(500); cone/FBDD truncation is in-band on 200 responses.
"""

from __future__ import annotations

import base64
import binascii

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, Field

from . import algebra
from .canon import write_canonical
from .errors import ScafnavError, SmilesError, UnknownScaffold
from .index import HypergraphIndex
from .mcs import DEFAULT_MCS_BUDGET, intersection
from .molgraph import parse_smiles
from .scaffold import scaffold_key
from .stats import stats_json

MAX_MCS_BUDGET = 10**7
DEFAULT_PAGE = 100


class McsBody(BaseModel):
    s1: str
    s2: str
    budget: int = Field(default=DEFAULT_MCS_BUDGET, ge=1, le=MAX_MCS_BUDGET)


class UnionBody(BaseModel):
    s1: str
    s2: str


class FbddBody(BaseModel):
    hits: list[str]
    subset: list[int] | None = None
    search: bool = False
    min_subset_size: int = Field(default=1, ge=1)
    max_depth: int = Field(default=algebra.ConeCaps.max_depth, ge=1)


def _encode_cursor(offset: int) -> str:
    return base64.urlsafe_b64encode(f"o:{offset}".encode()).decode()


def _decode_cursor(cursor: str | None) -> int:
    if not cursor:
        return 0
    try:
        text = base64.urlsafe_b64decode(cursor.encode()).decode()
        tag, _, value = text.partition(":")
        if tag != "o":
            raise ValueError(text)
        return int(value)
    except (ValueError, binascii.Error) as exc:
        raise _BadCursor(str(exc)) from exc


class _BadCursor(ScafnavError):
    pass


def create_app(idx: HypergraphIndex) -> FastAPI:
    app = FastAPI(title="scafnav", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    @app.exception_handler(ScafnavError)
    async def _domain_error(request: Request, exc: ScafnavError):
        if isinstance(exc, algebra.HitResolutionError):
            return _error(404, "unknown_scaffold", str(exc),
                          detail=[{"hit": h, "reason": r}
                                  for h, r in exc.failures])
        if isinstance(exc, UnknownScaffold):
            return _error(404, "unknown_scaffold", str(exc))
        if isinstance(exc, SmilesError):
            return _error(400, "parse_error", str(exc))
        return _error(400, "bad_request", str(exc))

    @app.exception_handler(Exception)
    async def _internal_error(request: Request, exc: Exception):
        return _error(500, "internal", str(exc))

    # -- scaffold projection --------------------------------------------------

    @app.get("/v1/scaffold")
    def project(smiles: str = Query(...)):
        scaffold = scaffold_key(smiles)
        payload = {
            "scaffold": scaffold.key,
            "ring_count": scaffold.ring_count,
            "class_size": 0,
            "virtual": True,
            "indexed": idx.has_scaffold(scaffold.key),
        }
        if payload["indexed"]:
            cls = idx.scaffold_class(scaffold.key)
            payload["class_size"] = cls.size
            payload["virtual"] = cls.scaffold.virtual
        return payload

    # -- class and graph queries ----------------------------------------------

    @app.get("/v1/scaffold/{key}/expand")
    def expand(key: str, limit: int = Query(DEFAULT_PAGE, ge=1, le=10_000),
               cursor: str | None = None):
        offset = _decode_cursor(cursor)
        cls = idx.scaffold_class(key)
        members = idx.expand_class(key, limit=limit, offset=offset)
        next_cursor = None
        if offset + len(members) < cls.size:
            next_cursor = _encode_cursor(offset + len(members))
        return {
            "scaffold": key,
            "total": cls.size,
            "members": [{"id": m.id, "smiles": m.canonical,
                         "source_tag": m.source_tag} for m in members],
            "next_cursor": next_cursor,
        }

    @app.get("/v1/scaffold/{key}/successors")
    def successors(key: str):
        found = idx.successors(key)
        return {"scaffold": key,
                "successors": _scaffold_list(idx, found)}

    @app.get("/v1/scaffold/{key}/predecessors")
    def predecessors(key: str):
        found = idx.predecessors(key)
        return {"scaffold": key,
                "predecessors": _scaffold_list(idx, found)}

    def _cone_page(key: str, cone, limit: int, cursor: str | None) -> dict:
        offset = _decode_cursor(cursor)
        keys = cone.keys()
        page = keys[offset:offset + limit]
        next_cursor = None
        if offset + len(page) < len(keys):
            next_cursor = _encode_cursor(offset + len(page))
        return {"scaffold": key, "members": page, "total": len(keys),
                "truncated": cone.truncated, "next_cursor": next_cursor}

    @app.get("/v1/scaffold/{key}/uppercone")
    def uppercone(key: str,
                  max_depth: int = Query(algebra.ConeCaps.max_depth, ge=1),
                  max_size: int = Query(algebra.ConeCaps.max_size, ge=1),
                  limit: int = Query(1000, ge=1, le=100_000),
                  cursor: str | None = None):
        cone = algebra.upper_cone(idx, key,
                                  algebra.ConeCaps(max_depth, max_size))
        return _cone_page(key, cone, limit, cursor)

    @app.get("/v1/scaffold/{key}/lowercone")
    def lowercone(key: str,
                  max_depth: int = Query(algebra.ConeCaps.max_depth, ge=1),
                  max_size: int = Query(algebra.ConeCaps.max_size, ge=1),
                  limit: int = Query(1000, ge=1, le=100_000),
                  cursor: str | None = None):
        cone = algebra.lower_cone_indexed(idx, key,
                                          algebra.ConeCaps(max_depth, max_size))
        return _cone_page(key, cone, limit, cursor)

    @app.get("/v1/hierarchy/{level}")
    def hierarchy(level: int, limit: int = Query(DEFAULT_PAGE, ge=1, le=10_000),
                  cursor: str | None = None):
        offset = _decode_cursor(cursor)
        ids = idx.hierarchy(level)
        page = ids[offset:offset + limit]
        next_cursor = None
        if offset + len(page) < len(ids):
            next_cursor = _encode_cursor(offset + len(page))
        return {
            "level": level,
            "total": len(ids),
            "scaffolds": [_scaffold_entry(idx, idx.classes[sid].scaffold)
                          for sid in page],
            "next_cursor": next_cursor,
        }

    # -- algebra ---------------------------------------------------------------

    @app.post("/v1/mcs")
    def mcs(body: McsBody):
        result = intersection(parse_smiles(body.s1), parse_smiles(body.s2),
                              body.budget)
        return {
            "common": write_canonical(result.common),
            "atoms": result.atom_size,
            "bonds": result.bond_size,
            "exhausted": result.exhausted,
        }

    @app.post("/v1/union")
    def union(body: UnionBody):
        members = algebra.union_scaffolds(idx, body.s1, body.s2)
        return {"union": _scaffold_list(idx, members)}

    @app.post("/v1/fbdd")
    def fbdd(body: FbddBody):
        caps = algebra.ConeCaps(max_depth=body.max_depth)
        if body.search:
            results = algebra.fbdd_search(idx, body.hits,
                                          body.min_subset_size, caps)
            return {"results": [
                {"subset": list(r.subset),
                 "scaffolds": _scaffold_list(idx, r.scaffolds),
                 "truncated": r.truncated}
                for r in results
            ]}
        answer = algebra.fbdd_intersection(
            idx,
            algebra.FbddQuery(
                hits=tuple(body.hits),
                subset=tuple(body.subset) if body.subset is not None else None,
            ),
            caps,
        )
        return {"scaffolds": _scaffold_list(idx, answer.scaffolds),
                "truncated": answer.truncated}

    # -- telemetry ---------------------------------------------------------------

    @app.get("/v1/stats")
    def stats():
        return Response(content=stats_json(idx), media_type="application/json")

    @app.get("/v1/healthz")
    def healthz():
        return {"status": "ok", "index_manifest": idx.manifest()}

    return app


def _scaffold_entry(idx: HypergraphIndex, scaffold) -> dict:
    cls = idx.scaffold_class(scaffold.key)
    return {
        "key": scaffold.key,
        "ring_count": scaffold.ring_count,
        "virtual": cls.scaffold.virtual,
        "class_size": cls.size,
    }


def _scaffold_list(idx: HypergraphIndex, scaffolds) -> list[dict]:
    return [_scaffold_entry(idx, s)
            for s in sorted(scaffolds, key=lambda s: s.key)]


def _error(status: int, code: str, message: str, detail=None) -> JSONResponse:
    body = {"code": code, "message": message}
    if detail is not None:
        body["detail"] = detail
    return JSONResponse(status_code=status, content=body)
