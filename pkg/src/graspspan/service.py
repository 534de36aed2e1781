"""HTTP service exposing the toolkit to multiple clients.

Hand and object documents travel inline in request bodies using the same
JSON shape as the on-disk files.  Domain outcomes (infeasible objects,
invalid records) are data in 200 responses; requests the engines reject
(missing grasp sets, out-of-range parameters, malformed documents) come back
as 400 with an error envelope.

Run with ``uvicorn graspspan.service:app`` or ``python -m graspspan.service``.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import Response
from pydantic import BaseModel, Field

from . import __version__
from .documents import (
    DocumentEnvelope,
    DocumentError,
    HAND_KIND,
    OBJECT_KIND,
    SCHEMA_VERSION,
    envelope_from_raw,
    lint_document,
    raw_from_envelope,
)
from .fitting import (
    DEFAULT_RESOLUTION,
    axis_extrema,
    canonical_object,
    classify_object,
    compare_hands,
    fit,
)
from .interp import config_interp, span_interp
from .model import Axis, GraspSpanError, GraspType, documentation_completeness
from .render import ObjectOverlay, PlotSpec, render_svg

app = FastAPI(
    title="graspspan",
    version=__version__,
    description="Grasp-space measurement service: validate hand records, "
                "interpolate graspable regions, fit objects, classify "
                "relative sizes, and plot to-scale regions.",
)


# ---------------------------------------------------------------------------
# Schemas
# ---------------------------------------------------------------------------

class AxisClass(BaseModel):
    band: str
    relativeSize: float


class ValidateRequest(BaseModel):
    document: dict = Field(description="a hand or object document, inline")


class IssueItem(BaseModel):
    code: str
    path: str
    message: str


class NoteItem(BaseModel):
    path: str
    message: str


class ValidateResponse(BaseModel):
    valid: bool
    violations: list[IssueItem]
    warnings: list[NoteItem]
    completeness: list[IssueItem]


class FitRequest(BaseModel):
    hand: dict
    object: dict
    graspType: str = GraspType.PRECISION.value
    resolution: int = Field(default=DEFAULT_RESOLUTION, ge=1)


class FitResponse(BaseModel):
    hand: str
    object: str
    graspType: str
    feasible: bool
    bestActuation: Optional[float]
    bestCenterDepthMm: Optional[float]
    axes: dict[str, AxisClass]


class ClassifyRequest(BaseModel):
    hand: dict
    object: dict
    graspType: str = GraspType.PRECISION.value


class ClassifyResponse(BaseModel):
    hand: str
    object: str
    graspType: str
    axes: dict[str, AxisClass]


class CanonicalRequest(BaseModel):
    hand: dict
    graspType: str = GraspType.PRECISION.value
    target: float = Field(gt=0.0, lt=1.0)
    name: str = ""


class CanonicalResponse(BaseModel):
    object: dict
    notes: list[str]


class CompareRequest(BaseModel):
    hands: list[dict]
    object: dict
    graspType: str = GraspType.PRECISION.value
    resolution: int = Field(default=DEFAULT_RESOLUTION, ge=1)


class CompareRowItem(BaseModel):
    hand: str
    status: str
    feasible: Optional[bool] = None
    axes: Optional[dict[str, AxisClass]] = None
    bestActuation: Optional[float] = None
    bestCenterDepthMm: Optional[float] = None


class CompareResponse(BaseModel):
    object: str
    graspType: str
    rows: list[CompareRowItem]


class InterpRequest(BaseModel):
    hand: dict
    graspType: str = GraspType.PRECISION.value
    actuation: float = Field(ge=0.0, le=1.0)
    depthMm: Optional[float] = None


class InterpResponse(BaseModel):
    actuation: float
    extentKind: str
    pairs: list[tuple[float, float]]
    depthMm: Optional[float] = None
    extent: Optional[float] = None


class PlotRequest(BaseModel):
    hands: list[dict]
    graspType: str = GraspType.PRECISION.value
    objects: list[dict] = Field(default_factory=list)
    scaleMmPerPx: float = Field(default=0.5, gt=0.0)
    title: str = ""


class HealthResponse(BaseModel):
    status: str
    version: str
    schemaVersion: str


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))


def _payload(raw: dict, kind: str):
    try:
        envelope, _warnings = envelope_from_raw(raw)
    except DocumentError as exc:
        raise _bad_request(exc) from exc
    if envelope.kind != kind:
        raise HTTPException(status_code=400,
                            detail=f"expected a {kind} document, got {envelope.kind}")
    return envelope.payload


def _grasp_type(value: str) -> GraspType:
    try:
        return GraspType(value)
    except ValueError:
        allowed = ", ".join(g.value for g in GraspType)
        raise HTTPException(status_code=400,
                            detail=f"unknown grasp type {value!r} (one of: {allowed})") from None


def _axes(per_axis) -> dict:
    return {
        axis.value: AxisClass(band=sc.band.value, relativeSize=sc.ratio)
        for axis, sc in per_axis.items()
    }


# ---------------------------------------------------------------------------
# Endpoints
# ---------------------------------------------------------------------------

@app.get("/healthz", response_model=HealthResponse)
def healthz() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__,
                          schemaVersion=SCHEMA_VERSION)


@app.post("/validate", response_model=ValidateResponse)
def validate(req: ValidateRequest) -> ValidateResponse:
    import json as _json

    report = lint_document(_json.dumps(req.document))
    completeness = []
    if report.envelope is not None and report.envelope.kind == HAND_KIND:
        completeness = documentation_completeness(report.envelope.payload)
    return ValidateResponse(
        valid=report.ok,
        violations=[IssueItem(code=v.code, path=v.pointer, message=v.message)
                    for v in report.violations],
        warnings=[NoteItem(path=w.path, message=w.message)
                  for w in report.warnings],
        completeness=[
            IssueItem(code=c.code, path="/" + "/".join(str(p) for p in c.path),
                      message=c.message)
            for c in completeness
        ],
    )


@app.post("/fit", response_model=FitResponse)
def fit_endpoint(req: FitRequest) -> FitResponse:
    hand = _payload(req.hand, HAND_KIND)
    obj = _payload(req.object, OBJECT_KIND)
    try:
        result = fit(hand, _grasp_type(req.graspType), obj, resolution=req.resolution)
    except GraspSpanError as exc:
        raise _bad_request(exc) from exc
    return FitResponse(
        hand=hand.name, object=obj.name, graspType=req.graspType,
        feasible=result.feasible,
        bestActuation=result.best_actuation,
        bestCenterDepthMm=result.best_center_depth,
        axes=_axes(result.per_axis),
    )


@app.post("/classify", response_model=ClassifyResponse)
def classify(req: ClassifyRequest) -> ClassifyResponse:
    hand = _payload(req.hand, HAND_KIND)
    obj = _payload(req.object, OBJECT_KIND)
    try:
        per_axis = classify_object(hand, _grasp_type(req.graspType), obj)
    except GraspSpanError as exc:
        raise _bad_request(exc) from exc
    return ClassifyResponse(hand=hand.name, object=obj.name,
                            graspType=req.graspType, axes=_axes(per_axis))


@app.post("/canonical", response_model=CanonicalResponse)
def canonical(req: CanonicalRequest) -> CanonicalResponse:
    hand = _payload(req.hand, HAND_KIND)
    grasp_type = _grasp_type(req.graspType)
    notes = []
    try:
        extrema = axis_extrema(hand, grasp_type)
        targets = {Axis.SPAN: req.target, Axis.DEPTH: req.target}
        if extrema.width.unbounded_max:
            notes.append("hand has no upper width limit; width omitted")
        else:
            targets[Axis.WIDTH] = req.target
        obj = canonical_object(hand, grasp_type, targets, name=req.name)
    except GraspSpanError as exc:
        raise _bad_request(exc) from exc
    envelope = DocumentEnvelope(SCHEMA_VERSION, OBJECT_KIND, obj)
    return CanonicalResponse(object=raw_from_envelope(envelope), notes=notes)


@app.post("/compare", response_model=CompareResponse)
def compare(req: CompareRequest) -> CompareResponse:
    hands = [_payload(h, HAND_KIND) for h in req.hands]
    obj = _payload(req.object, OBJECT_KIND)
    rows = compare_hands(hands, _grasp_type(req.graspType), obj,
                         resolution=req.resolution)
    items = []
    for row in rows:
        if row.status != "ok":
            items.append(CompareRowItem(hand=row.hand_name, status=row.status))
            continue
        items.append(CompareRowItem(
            hand=row.hand_name, status=row.status,
            feasible=row.result.feasible,
            axes=_axes(row.result.per_axis),
            bestActuation=row.result.best_actuation,
            bestCenterDepthMm=row.result.best_center_depth,
        ))
    return CompareResponse(object=obj.name, graspType=req.graspType, rows=items)


@app.post("/interp", response_model=InterpResponse)
def interp(req: InterpRequest) -> InterpResponse:
    hand = _payload(req.hand, HAND_KIND)
    grasp_type = _grasp_type(req.graspType)
    mset = hand.sets.get(grasp_type)
    if mset is None:
        raise HTTPException(status_code=400,
                            detail=f"hand {hand.name!r} has no "
                                   f"{grasp_type.value} measurement set")
    try:
        profile = config_interp(mset, req.actuation)
        extent = span_interp(profile, req.depthMm) if req.depthMm is not None else None
    except GraspSpanError as exc:
        raise _bad_request(exc) from exc
    return InterpResponse(
        actuation=profile.actuation,
        extentKind=profile.extent_kind.value,
        pairs=list(profile.pairs),
        depthMm=req.depthMm,
        extent=extent,
    )


@app.post("/plot")
def plot(req: PlotRequest) -> Response:
    hands = [_payload(h, HAND_KIND) for h in req.hands]
    grasp_type = _grasp_type(req.graspType)
    overlays = tuple(ObjectOverlay(_payload(o, OBJECT_KIND)) for o in req.objects)
    try:
        spec = PlotSpec(
            hands=tuple((h, grasp_type) for h in hands),
            overlays=overlays,
            scale=req.scaleMmPerPx,
            title=req.title,
        )
        svg = render_svg(spec)
    except GraspSpanError as exc:
        raise _bad_request(exc) from exc
    return Response(content=svg, media_type="image/svg+xml")


def run(host: str = "127.0.0.1", port: int = 8000) -> None:
    import uvicorn

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    run()
