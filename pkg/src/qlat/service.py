"""HTTP front end exposing the query-style operations.

Thin wrapper: each endpoint validates its payload with pydantic, builds
exact lattices, calls the library, and returns JSON-plain data.  Long
verification runs stay in the command line client; the /verify endpoint
accepts a group selection so callers can keep requests bounded.
"""

from typing import Literal, Optional, Union

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .buried import AlreadyBuriedInRank2, NotPrimitiveInput, buried3
from .enumerate import is_isometric, short_vectors
from .forms_core import make_lattice
from .localfield import (
    REAL_PLACE,
    buried_in_genus,
    buried_over_qp,
    buried_over_zp,
    hilbert,
    same_genus,
)
from .paperlab import CHECK_GROUPS, VerifyConfig, result_to_dict, run_checks
from .represent import embeds, run_script

app = FastAPI(
    title="qlat",
    description="Exact arithmetic for positive definite integral lattices.",
)

Place = Union[int, Literal["inf"]]


class LatticeIn(BaseModel):
    gram: list[list[int]]
    label: Optional[str] = None

    def build(self):
        try:
            return make_lattice(tuple(tuple(row) for row in self.gram), label=self.label)
        except (ValueError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))


class ShortRequest(BaseModel):
    lattice: LatticeIn
    bound: int = Field(ge=0)


class VectorOut(BaseModel):
    coords: list[int]
    norm: int


class ShortResponse(BaseModel):
    count: int
    vectors: list[VectorOut]


class PairRequest(BaseModel):
    first: LatticeIn
    second: LatticeIn


class IsometricResponse(BaseModel):
    isometric: bool
    witness: Optional[list[list[int]]] = None


class EmbedsRequest(BaseModel):
    source: LatticeIn
    target: LatticeIn


class EmbedsResponse(BaseModel):
    found: bool
    witness: Optional[list[list[int]]] = None


class Buried3Request(BaseModel):
    first: LatticeIn
    second: LatticeIn
    amax: Optional[int] = Field(default=None, ge=1)


class VerdictResponse(BaseModel):
    status: str
    witness: Optional[list[list[int]]] = None
    bound: Optional[int] = None
    # rows are (a, b1, b2, lo, hi); endpoints are display-only float
    # approximations, the decision itself is integer-exact
    trace: list[list[Union[str, int, float]]]


class GenusResponse(BaseModel):
    same_genus: bool
    rank: list[int]
    det: list[int]


class LocalBuriedRequest(BaseModel):
    first: LatticeIn
    second: LatticeIn
    rank: int = Field(ge=0)
    p: Optional[Place] = None


class HilbertRequest(BaseModel):
    a: int
    b: int
    p: Place


class HilbertResponse(BaseModel):
    value: int


class CandidatesRequest(BaseModel):
    script: str


class CandidatesResponse(BaseModel):
    script: str
    rank: int
    exhaustive: bool
    count: int
    members: list[list[list[int]]]
    justification: str


class VerifyRequest(BaseModel):
    checks: Optional[list[str]] = None
    bound: int = 2000


class CheckOut(BaseModel):
    check: str
    status: str
    details: dict
    reason: Optional[str] = None


def _gram(lat):
    return [list(row) for row in lat.gram]


def _place(p):
    return REAL_PLACE if p == "inf" else p


@app.get("/checks")
def list_checks() -> list[str]:
    return list(CHECK_GROUPS)


@app.post("/short")
def post_short(req: ShortRequest) -> ShortResponse:
    found = short_vectors(req.lattice.build(), req.bound)
    vectors = [VectorOut(coords=list(c), norm=n) for c, n in found.vectors]
    return ShortResponse(count=len(vectors), vectors=vectors)


@app.post("/isometric")
def post_isometric(req: PairRequest) -> IsometricResponse:
    iso = is_isometric(req.first.build(), req.second.build())
    if not iso:
        return IsometricResponse(isometric=False)
    return IsometricResponse(isometric=True, witness=[list(r) for r in iso.witness])


@app.post("/embeds")
def post_embeds(req: EmbedsRequest) -> EmbedsResponse:
    witness = embeds(req.source.build(), req.target.build())
    if witness is None:
        return EmbedsResponse(found=False)
    return EmbedsResponse(found=True, witness=[list(r) for r in witness.T])


@app.post("/buried3")
def post_buried3(req: Buried3Request) -> VerdictResponse:
    l1 = req.first.build()
    l2 = req.second.build()
    from math import isqrt

    a_max = req.amax if req.amax is not None else 4 * max(isqrt(l1.det() * l2.det()), 1)
    try:
        verdict = buried3(l1, l2, a_max)
    except AlreadyBuriedInRank2 as exc:
        verdict = exc.verdict
    except (NotPrimitiveInput, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return VerdictResponse(
        status=verdict.status,
        witness=_gram(verdict.witness) if verdict.witness is not None else None,
        bound=verdict.bound,
        trace=[list(step) for step in verdict.trace],
    )


@app.post("/local/genus")
def post_local_genus(req: PairRequest) -> GenusResponse:
    l1 = req.first.build()
    l2 = req.second.build()
    return GenusResponse(
        same_genus=same_genus(l1, l2), rank=[l1.rank, l2.rank], det=[l1.det(), l2.det()],
    )


@app.post("/local/buried")
def post_local_buried(req: LocalBuriedRequest) -> dict:
    l1 = req.first.build()
    l2 = req.second.build()
    try:
        if req.p is not None:
            place = _place(req.p)
            out = {"rank": req.rank, "place": str(req.p),
                   "space": buried_over_qp(l1, l2, req.rank, place)}
            if place != REAL_PLACE:
                out["ring"] = buried_over_zp(l1, l2, req.rank, place)
            return out
        return {"rank": req.rank, "in_genus": buried_in_genus(l1, l2, req.rank)}
    except (ValueError, ArithmeticError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.post("/local/hilbert")
def post_local_hilbert(req: HilbertRequest) -> HilbertResponse:
    try:
        return HilbertResponse(value=hilbert(req.a, req.b, _place(req.p)))
    except (ValueError, ZeroDivisionError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.post("/candidates")
def post_candidates(req: CandidatesRequest) -> CandidatesResponse:
    try:
        cs = run_script(req.script)
    except KeyError as exc:
        raise HTTPException(status_code=404, detail=str(exc))
    return CandidatesResponse(
        script=req.script,
        rank=cs.rank,
        exhaustive=bool(cs.exhaustive),
        count=len(cs.members),
        members=[_gram(m) for m in cs.members],
        justification=cs.justification,
    )


@app.post("/verify")
def post_verify(req: VerifyRequest) -> list[CheckOut]:
    try:
        results = run_checks(req.checks, VerifyConfig(bound=req.bound))
    except KeyError as exc:
        raise HTTPException(status_code=404, detail=str(exc))
    return [CheckOut(**result_to_dict(r)) for r in results]
