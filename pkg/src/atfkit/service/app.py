"""HTTP service exposing the toolkit.

Every endpoint wraps one core operation.  User mistakes surface as 400
responses with a machine-readable error code; violated mathematical
invariants are bugs and are deliberately left to propagate as 500s.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .. import __version__
from ..diagram import (
    mutate_diagram,
    mutation_chain,
    nodal_slide,
    nodal_trade,
    rational_blowdown_diagram,
    transfer_cut,
)
from ..errors import DomainError
from ..hull import boundary_hull, distinguish, edge_affine_lengths
from ..jsonio import (
    decode_diagram,
    decode_scalar,
    encode_diagram,
    encode_hull,
    encode_path,
    encode_polytope,
    encode_triple,
    encode_vec,
)
from ..lattice import UnimodularMap
from ..markov import MarkovTriple, enumerate_triples, is_markov, mutate, reduce_to_root
from ..polytope import build_polytope
from ..render import RenderSpec, render_chain, render_diagram, render_hull
from ..verify import run_all
from . import schemas

SVG = "image/svg+xml"


def _triple(entries: list[str]) -> MarkovTriple:
    try:
        return MarkovTriple(*(int(e) for e in entries))
    except ValueError as exc:
        raise DomainError(f"non-integer entry in {entries!r}") from exc


def _fraction(obj) -> Fraction:
    return Fraction(decode_scalar(obj))


def _spec(opts: schemas.RenderOptions) -> RenderSpec:
    return RenderSpec(width=opts.width, height=opts.height, labels=opts.labels)


def create_app() -> FastAPI:
    app = FastAPI(title="atfkit", version=__version__)

    @app.exception_handler(DomainError)
    async def domain_error(request: Request, exc: DomainError):
        return JSONResponse(
            status_code=400,
            content={"error": exc.code, "message": str(exc)},
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/markov/check")
    def markov_check(req: schemas.CheckRequest) -> schemas.CheckResponse:
        try:
            a, b, c = int(req.a), int(req.b), int(req.c)
        except ValueError as exc:
            raise DomainError(f"non-integer entry: {exc}") from exc
        return schemas.CheckResponse(is_markov=is_markov(a, b, c))

    @app.post("/markov/mutate")
    def markov_mutate(req: schemas.SlotRequest) -> schemas.MutateResponse:
        t = mutate(_triple(req.triple), req.slot)
        return schemas.MutateResponse(triple=encode_triple(t)["triple"])

    @app.post("/markov/reduce")
    def markov_reduce(req: schemas.TripleRequest) -> schemas.PathResponse:
        path = reduce_to_root(_triple(req.triple))
        return schemas.PathResponse(
            start=encode_path(path)["start"],
            steps=list(path.steps),
            chain=[encode_triple(t) for t in path.replay()],
        )

    @app.post("/markov/enumerate")
    def markov_enumerate(req: schemas.EnumerateRequest) -> schemas.EnumerateResponse:
        triples = enumerate_triples(req.max_entry)
        return schemas.EnumerateResponse(triples=[encode_triple(t) for t in triples])

    @app.post("/polytope/build")
    def polytope_build(req: schemas.TripleRequest) -> schemas.PolytopeResponse:
        p = build_polytope(_triple(req.triple).sorted())
        return schemas.PolytopeResponse(**encode_polytope(p))

    @app.post("/polytope/verify")
    def polytope_verify(req: schemas.TripleRequest) -> schemas.VerifyPolytopeResponse:
        t = _triple(req.triple).sorted()
        checks = build_polytope(t).verify()
        ok = checks.pop("all")
        return schemas.VerifyPolytopeResponse(
            triple=encode_triple(t)["triple"], checks=checks, ok=ok
        )

    @app.post("/atf/diagram")
    def atf_diagram(req: schemas.DiagramRequest) -> schemas.DiagramModel:
        t = _triple(req.triple).sorted()
        if req.cut_fraction is None:
            d = rational_blowdown_diagram(t)
        else:
            d = rational_blowdown_diagram(t, _fraction(req.cut_fraction))
        return schemas.DiagramModel(**encode_diagram(d))

    @app.post("/atf/trade")
    def atf_trade(req: schemas.TradeRequest) -> schemas.DiagramModel:
        d = decode_diagram(req.diagram.model_dump(exclude_none=True))
        if req.cut_fraction is None:
            out = nodal_trade(d, req.vertex)
        else:
            out = nodal_trade(d, req.vertex, _fraction(req.cut_fraction))
        return schemas.DiagramModel(**encode_diagram(out))

    @app.post("/atf/slide")
    def atf_slide(req: schemas.SlideRequest) -> schemas.DiagramModel:
        d = decode_diagram(req.diagram.model_dump(exclude_none=True))
        out = nodal_slide(d, req.node, _fraction(req.new_length))
        return schemas.DiagramModel(**encode_diagram(out))

    @app.post("/atf/transfer")
    def atf_transfer(req: schemas.TransferRequest) -> schemas.DiagramModel:
        d = decode_diagram(req.diagram.model_dump(exclude_none=True))
        out = transfer_cut(d, req.node, req.side)
        return schemas.DiagramModel(**encode_diagram(out))

    @app.post("/atf/mutate")
    def atf_mutate(req: schemas.DiagramMutateRequest) -> schemas.DiagramMutateResponse:
        d, t = mutate_diagram(_triple(req.triple), req.slot)
        return schemas.DiagramMutateResponse(
            diagram=schemas.DiagramModel(**encode_diagram(d)),
            triple=encode_triple(t)["triple"],
        )

    @app.post("/hull/build")
    def hull_build(req: schemas.TripleRequest) -> schemas.HullResponse:
        h = boundary_hull(_triple(req.triple))
        return schemas.HullResponse(**encode_hull(h))

    @app.post("/hull/lengths")
    def hull_lengths(req: schemas.TripleRequest) -> schemas.LengthsResponse:
        lengths = edge_affine_lengths(boundary_hull(_triple(req.triple)))
        return schemas.LengthsResponse(lengths=[str(x) for x in lengths])

    @app.post("/hull/compare")
    def hull_compare(req: schemas.CompareRequest) -> schemas.CompareResponse:
        t1, t2 = _triple(req.first), _triple(req.second)
        distinct, cert = distinguish(t1, t2)
        if isinstance(cert, UnimodularMap):
            payload = {
                "kind": "equivalence_witness",
                "matrix": [[str(cert.a), str(cert.b)], [str(cert.c), str(cert.d)]],
                "translation": encode_vec(cert.t),
            }
        elif cert is not None:
            payload = {
                "kind": "length_multisets",
                "first": [str(x) for x in cert[0]],
                "second": [str(x) for x in cert[1]],
            }
        else:
            payload = {"kind": "none"}
        return schemas.CompareResponse(distinct=distinct, certificate=payload)

    @app.post("/render/diagram")
    def do_render_diagram(req: schemas.DiagramRenderRequest) -> Response:
        if (req.diagram is None) == (req.triple is None):
            raise DomainError("provide exactly one of 'diagram' or 'triple'")
        if req.diagram is not None:
            d = decode_diagram(req.diagram.model_dump(exclude_none=True))
        else:
            d = rational_blowdown_diagram(_triple(req.triple).sorted())
        return Response(content=render_diagram(d, _spec(req.options)), media_type=SVG)

    @app.post("/render/hull")
    def do_render_hull(req: schemas.HullRenderRequest) -> Response:
        h = boundary_hull(_triple(req.triple))
        return Response(content=render_hull(h, _spec(req.options)), media_type=SVG)

    @app.post("/render/chain")
    def do_render_chain(req: schemas.ChainRenderRequest) -> Response:
        diagrams, _ = mutation_chain(_triple(req.triple))
        spec = RenderSpec(width=req.width, height=req.height, labels=req.labels)
        return Response(content=render_chain(diagrams, spec), media_type=SVG)

    @app.post("/verify/all")
    def verify_all(req: schemas.VerifyAllRequest) -> schemas.VerifyAllResponse:
        results = run_all(req.max_entry, workers=req.workers)
        suites = [
            schemas.SuiteModel(
                suite=r.suite, passed=r.passed, checked=r.checked, detail=r.detail
            )
            for r in results
        ]
        return schemas.VerifyAllResponse(results=suites, ok=all(r.passed for r in results))

    return app


app = create_app()
