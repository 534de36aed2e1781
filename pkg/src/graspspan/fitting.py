"""Object-fit search, axis extrema, and relative size classification.

The fit search sweeps a grid of actuation fractions; at each one it blends
the measured configurations and tests every candidate center depth on a grid
spanning the placements where the object's depth interval stays inside the
measured range.  A placement is feasible when the profile extent covers the
object over the whole occupied interval, which piecewise linearity reduces to
checks at the interval ends and the breakpoints inside it.  Among feasible
placements the most-closed actuation wins (fingers nearest contact); center
depth ties break toward the palm for power grasps and toward the distal
links for precision grasps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .interp import config_interp
from .model import (
    Axis,
    ExtentKind,
    FitResult,
    GraspMeasurementSet,
    GraspSpanError,
    GraspType,
    HandRecord,
    InvariantViolation,
    ObjectSpec,
    SizeClass,
    Violation,
)

# Closed-boundary slack (mm / mm^2): placements and coverage that fail only by
# float rounding still count.  Roughly 1e-12 relative at robot-hand scale.
FEASIBILITY_TOL = 1e-9

DEFAULT_RESOLUTION = 1000


class MissingGraspType(GraspSpanError, KeyError):
    """The hand record has no measurement set for the requested grasp type."""

    def __init__(self, hand_name: str, grasp_type: GraspType):
        self.grasp_type = grasp_type
        super().__init__(f"hand {hand_name!r} has no {grasp_type.value} measurement set")

    def __str__(self) -> str:  # KeyError quotes its arg by default
        return self.args[0]


class MissingObjectDimension(GraspSpanError, ValueError):
    """The object lacks a dimension the requested assessment needs."""


class UnboundedAxis(GraspSpanError, ValueError):
    """Canonical sizing requested on an axis with no upper bound."""


@dataclass(frozen=True)
class AxisExtrema:
    """Graspable range of one axis: ``minimum``/``maximum`` in the axis unit.

    ``unbounded_max`` marks a width axis with no upper finger limit; the
    recorded maximum is then the palm width, kept for normalization only.
    """

    axis: Axis
    minimum: float
    maximum: float
    unbounded_max: bool = False

    def __post_init__(self):
        if self.unbounded_max and self.axis is not Axis.WIDTH:
            raise InvariantViolation(Violation(
                "UNBOUNDED_ONLY_WIDTH",
                f"only the width axis may be unbounded, got {self.axis.value}",
            ))
        if not (math.isfinite(self.minimum) and math.isfinite(self.maximum)):
            raise InvariantViolation(Violation(
                "NONFINITE_VALUE", "axis extrema must be finite numbers",
            ))
        if not self.unbounded_max and not self.maximum > self.minimum:
            raise InvariantViolation(Violation(
                "EXTREMA_NOT_ORDERED",
                f"{self.axis.value} maximum {self.maximum!r} must exceed "
                f"minimum {self.minimum!r}",
            ))


@dataclass(frozen=True)
class HandExtrema:
    """Span/depth/width extrema of one hand for one grasp type."""

    span: AxisExtrema
    depth: AxisExtrema
    width: AxisExtrema

    def for_axis(self, axis: Axis) -> AxisExtrema:
        return {Axis.SPAN: self.span, Axis.DEPTH: self.depth, Axis.WIDTH: self.width}[axis]


def _require_set(hand: HandRecord, grasp_type: GraspType) -> GraspMeasurementSet:
    mset = hand.sets.get(grasp_type)
    if mset is None:
        raise MissingGraspType(hand.name, grasp_type)
    return mset


def axis_extrema(hand: HandRecord, grasp_type: GraspType) -> HandExtrema:
    """Extract the normalization extrema for each axis.

    Span: the most-open configuration's largest extent down to the most-closed
    configuration's largest extent.  Depth: zero to the most-open
    configuration's distal depth.  Width: the one-time minimum/maximum, with
    the unbounded flag carried through.
    """
    mset = _require_set(hand, grasp_type)
    span = AxisExtrema(Axis.SPAN,
                       minimum=mset.min_functional.max_extent,
                       maximum=mset.max_functional.max_extent)
    depth = AxisExtrema(Axis.DEPTH, minimum=0.0,
                        maximum=mset.max_functional.distal_depth)
    ot = hand.one_time
    width = AxisExtrema(Axis.WIDTH, minimum=ot.min_width, maximum=ot.max_width,
                        unbounded_max=ot.max_width_unbounded)
    return HandExtrema(span=span, depth=depth, width=width)


def relative_size(value: float, extrema: AxisExtrema) -> SizeClass:
    """Normalize a dimension against an axis range and band it.

    The ratio is (value - minimum) / (maximum - minimum).  On an unbounded
    width axis the ratio is still computed against the recorded palm width,
    but the band is capped at Large: there is no ceiling to exceed.
    """
    ratio = (value - extrema.minimum) / (extrema.maximum - extrema.minimum)
    if extrema.unbounded_max:
        return SizeClass.classify_capped(ratio)
    return SizeClass.classify(ratio)


def required_extent(mset: GraspMeasurementSet, obj: ObjectSpec) -> float:
    """The extent the profile must provide to admit the object.

    Span sets need the object's span.  Disk-area sets need the object's disk
    area, derived as the ellipse pi*(span/2)*(width/2) when not given
    directly.
    """
    if mset.extent_kind is ExtentKind.LENGTH:
        return obj.span
    if obj.disk_area is not None:
        return obj.disk_area
    if obj.width is None:
        raise MissingObjectDimension(
            f"object {obj.name!r} needs a disk area or a width to be assessed "
            f"against a spherical power set"
        )
    return math.pi * (obj.span / 2.0) * (obj.width / 2.0)


def classify_object(hand: HandRecord, grasp_type: GraspType, obj: ObjectSpec):
    """Per-axis size classes only, no placement search.

    Returns a dict mapping Axis to SizeClass; the width axis is present only
    when the object records a width.
    """
    mset = _require_set(hand, grasp_type)
    extrema = axis_extrema(hand, grasp_type)
    span_value = required_extent(mset, obj) if mset.extent_kind is ExtentKind.AREA else obj.span
    per_axis = {
        Axis.SPAN: relative_size(span_value, extrema.span),
        Axis.DEPTH: relative_size(obj.depth, extrema.depth),
    }
    if obj.width is not None:
        per_axis[Axis.WIDTH] = relative_size(obj.width, extrema.width)
    return per_axis


def _search(mset: GraspMeasurementSet, required: float, object_depth: float,
            resolution: int):
    """Grid search for the best feasible (actuation, center depth).

    Scans actuation fractions i/resolution in ascending order, keeping the
    last feasible row; within a row the candidate centers are a grid over the
    placements whose occupied interval stays inside the profile's depth
    range.  Returns (found, actuation, center_depth).
    """
    prefer_deep = mset.grasp_type is GraspType.PRECISION
    half = object_depth / 2.0
    centers_frac = np.arange(resolution + 1) / resolution
    best = (False, None, None)
    for i in range(resolution + 1):
        a = i / resolution
        profile = config_interp(mset, a)
        depths = np.asarray(profile.depths)
        extents = np.asarray(profile.extents)
        lo = depths[0] + half
        hi = depths[-1] - half
        if hi < lo - FEASIBILITY_TOL:
            continue  # object deeper than this profile's measured range
        hi = max(hi, lo)
        centers = lo + (hi - lo) * centers_frac
        # np.interp clamps at the range ends, absorbing the float noise that
        # puts extreme windows a few ulps outside the domain.
        worst = np.minimum(np.interp(centers - half, depths, extents),
                           np.interp(centers + half, depths, extents))
        for b in range(1, len(depths) - 1):
            inside = (depths[b] > centers - half) & (depths[b] < centers + half)
            if inside.any():
                worst = np.where(inside & (extents[b] < worst), extents[b], worst)
        feasible = worst >= required - FEASIBILITY_TOL
        if feasible.any():
            idx = np.flatnonzero(feasible)
            j = idx[-1] if prefer_deep else idx[0]
            best = (True, a, float(centers[j]))
    return best


def fit(hand: HandRecord, grasp_type: GraspType, obj: ObjectSpec,
        resolution: int = DEFAULT_RESOLUTION):
    """Assess whether and where an object fits a hand's grasp space.

    Returns a FitResult: per-axis size classes, a feasibility verdict, and
    for feasible objects the most-closed feasible actuation with its center
    depth (ties broken toward the palm for power grasps, toward the distal
    links for precision).  Feasibility requires both a placement found by the
    search and every assessed axis class within Small/Medium/Large; an object
    below the minimum width or the most-closed span cannot be grasped no
    matter where it is placed.
    """
    if resolution < 1:
        raise ValueError(f"resolution must be a positive integer, got {resolution!r}")
    mset = _require_set(hand, grasp_type)
    per_axis = classify_object(hand, grasp_type, obj)
    required = required_extent(mset, obj)

    classes_ok = all(sc.band.graspable for sc in per_axis.values())
    found, best_a, best_dc = (False, None, None)
    if classes_ok:
        found, best_a, best_dc = _search(mset, required, obj.depth, resolution)

    feasible = found and classes_ok
    return FitResult(
        per_axis=per_axis,
        feasible=feasible,
        best_actuation=best_a if feasible else None,
        best_center_depth=best_dc if feasible else None,
    )


def canonical_object(hand: HandRecord, grasp_type: GraspType, targets,
                     name: str = "") -> ObjectSpec:
    """Invert relative sizes into object dimensions.

    ``targets`` maps axes to fractions strictly between 0 and 1 (Span and
    Depth are required; Width is optional) or is a single fraction applied to
    Span and Depth.  Each dimension is minimum + target * (maximum - minimum)
    on its axis.  Requesting the width axis on a hand with no upper width
    limit raises UnboundedAxis.  For spherical power sets the span-axis
    inversion yields a disk area; the object records it along with the
    diameter of the equivalent circular disk.
    """
    if isinstance(targets, (int, float)) and not isinstance(targets, bool):
        targets = {Axis.SPAN: float(targets), Axis.DEPTH: float(targets)}
    for axis in (Axis.SPAN, Axis.DEPTH):
        if axis not in targets:
            raise ValueError(f"canonical sizing needs a target for the {axis.value} axis")
    for axis, t in targets.items():
        if not 0.0 < t < 1.0:
            raise ValueError(
                f"{axis.value} target {t!r} must lie strictly between 0 and 1"
            )

    mset = _require_set(hand, grasp_type)
    extrema = axis_extrema(hand, grasp_type)

    def invert(axis: Axis) -> float:
        ex = extrema.for_axis(axis)
        if ex.unbounded_max:
            raise UnboundedAxis(
                f"hand {hand.name!r} has no upper {axis.value} limit; "
                f"a canonical size cannot be derived there"
            )
        return ex.minimum + targets[axis] * (ex.maximum - ex.minimum)

    span_value = invert(Axis.SPAN)
    depth_value = invert(Axis.DEPTH)
    width_value = invert(Axis.WIDTH) if Axis.WIDTH in targets else None

    if not name:
        name = f"canonical-{hand.name}-{grasp_type.value}"

    if mset.extent_kind is ExtentKind.AREA:
        # span-axis extrema are disk areas; report the equivalent circular disk
        diameter = math.sqrt(4.0 * span_value / math.pi)
        return ObjectSpec(name=name, span=diameter, depth=depth_value,
                          width=width_value if width_value is not None else diameter,
                          disk_area=span_value)
    return ObjectSpec(name=name, span=span_value, depth=depth_value,
                      width=width_value)


@dataclass(frozen=True)
class CompareRow:
    """One hand's outcome in a multi-hand comparison."""

    hand_name: str
    status: str  # "ok" | "missingGraspType"
    result: object = None  # FitResult when status == "ok"


def compare_hands(hands, grasp_type: GraspType, obj: ObjectSpec,
                  resolution: int = DEFAULT_RESOLUTION) -> tuple:
    """Fit one object against several hands.

    Rows come back in input order; hands without the requested grasp type are
    reported as such rather than skipped.
    """
    rows = []
    for hand in hands:
        try:
            result = fit(hand, grasp_type, obj, resolution=resolution)
        except MissingGraspType:
            rows.append(CompareRow(hand.name, "missingGraspType"))
        else:
            rows.append(CompareRow(hand.name, "ok", result))
    return tuple(rows)
