"""Pydantic request/response models for the HTTP surface.

Integers are decimal strings throughout, matching the JSON conventions of
the file formats (big Markov numbers do not fit in double-precision JSON
numbers).  Rational scalars are either a decimal string or a
["num", "den"] pair.
"""

from __future__ import annotations

from typing import Optional, Union

from pydantic import BaseModel, Field

Scalar = Union[str, list[str]]
Vector = list[Scalar]


class TripleModel(BaseModel):
    triple: list[str] = Field(min_length=3, max_length=3)


class TripleRequest(BaseModel):
    triple: list[str] = Field(min_length=3, max_length=3)


class SlotRequest(TripleRequest):
    slot: int = Field(ge=0, le=2)


class MutateResponse(BaseModel):
    triple: list[str]


class CheckRequest(BaseModel):
    a: str
    b: str
    c: str


class CheckResponse(BaseModel):
    is_markov: bool


class PathResponse(BaseModel):
    start: TripleModel
    steps: list[int]
    chain: list[TripleModel]


class EnumerateRequest(BaseModel):
    max_entry: int = Field(ge=1)


class EnumerateResponse(BaseModel):
    triples: list[TripleModel]


class PolygonModel(BaseModel):
    vertices: list[Vector]


class PolytopeResponse(BaseModel):
    triple: list[str]
    m1: str
    m2: str
    l1: str
    l2: str
    l3: str
    u1: Vector
    u2: Vector
    u3: Vector
    w1: Vector
    w2: Vector
    w3: Vector
    vertices: list[Vector]
    lens: list[list[str]]
    scale: Scalar


class VerifyPolytopeResponse(BaseModel):
    triple: list[str]
    checks: dict[str, bool]
    ok: bool


class NodeModel(BaseModel):
    anchor: int
    eigen: Vector
    length: Scalar


class DiagramModel(BaseModel):
    polygon: PolygonModel
    nodes: list[NodeModel]
    fiber: Vector
    scale: Scalar = "1"
    provenance: Optional[TripleModel] = None


class DiagramRequest(BaseModel):
    triple: list[str] = Field(min_length=3, max_length=3)
    cut_fraction: Optional[Scalar] = None


class TradeRequest(BaseModel):
    diagram: DiagramModel
    vertex: int
    cut_fraction: Optional[Scalar] = None


class SlideRequest(BaseModel):
    diagram: DiagramModel
    node: int
    new_length: Scalar


class TransferRequest(BaseModel):
    diagram: DiagramModel
    node: int
    side: str = "left"


class DiagramMutateRequest(BaseModel):
    triple: list[str] = Field(min_length=3, max_length=3)
    slot: int = Field(ge=0, le=2)


class DiagramMutateResponse(BaseModel):
    diagram: DiagramModel
    triple: list[str]


class HullResponse(BaseModel):
    classes: list[Vector]
    hull: PolygonModel
    lengths: list[str]
    provenance: TripleModel


class LengthsResponse(BaseModel):
    lengths: list[str]


class CompareRequest(BaseModel):
    first: list[str] = Field(min_length=3, max_length=3)
    second: list[str] = Field(min_length=3, max_length=3)


class CompareResponse(BaseModel):
    distinct: bool
    certificate: dict


class ChainRenderRequest(BaseModel):
    triple: list[str] = Field(min_length=3, max_length=3)
    width: int = 480
    height: int = 480
    labels: bool = False


class RenderOptions(BaseModel):
    width: int = 480
    height: int = 480
    labels: bool = False


class DiagramRenderRequest(BaseModel):
    diagram: Optional[DiagramModel] = None
    triple: Optional[list[str]] = None
    options: RenderOptions = RenderOptions()


class HullRenderRequest(BaseModel):
    triple: list[str] = Field(min_length=3, max_length=3)
    options: RenderOptions = RenderOptions()


class VerifyAllRequest(BaseModel):
    max_entry: int = Field(ge=1)
    workers: Optional[int] = Field(default=None, ge=1)


class SuiteModel(BaseModel):
    suite: str
    passed: bool
    checked: int
    detail: str = ""


class VerifyAllResponse(BaseModel):
    results: list[SuiteModel]
    ok: bool


class ErrorModel(BaseModel):
    error: str
    message: str
