"""To-scale SVG plots of grasp-space regions.

Each hand/grasp-type pair becomes one panel: the palm baseline at the bottom,
depth increasing upward, span mirrored symmetrically about a dashed
centerline.  Every measured (or requested) configuration is drawn as a closed
outline, the band swept between the most-open and most-closed outlines is
shaded, and mid measurement pairs are marked with '+' glyphs.  Spherical
power sets have no mirrored planar geometry, so they are drawn as
area-versus-depth polylines on a fixed-width area axis.  Object overlays are
placed explicitly or via the fit search.

Rendering is a pure function of the plot spec: same spec, same bytes.  All
panels share one millimeter scale and a ruler states it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .fitting import DEFAULT_RESOLUTION, MissingGraspType, fit, required_extent
from .interp import config_interp, profile_region
from .model import (
    ConfigRole,
    ExtentKind,
    GraspSpanError,
    InvariantViolation,
    ObjectSpec,
    PairLabel,
    Violation,
)

AUTO = "auto"


class InfeasibleOverlay(GraspSpanError, ValueError):
    """An auto-placed overlay object does not fit the hand it is drawn on."""


@dataclass(frozen=True)
class ObjectOverlay:
    """An object drawn onto the hand panels.

    ``placement`` is either ``"auto"`` (place via the fit search, which must
    succeed) or an explicit (center depth mm, actuation fraction) pair.
    """

    obj: ObjectSpec
    placement: object = AUTO

    def __post_init__(self):
        p = self.placement
        if p == AUTO:
            return
        if (isinstance(p, (tuple, list)) and len(p) == 2
                and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in p)):
            object.__setattr__(self, "placement", (float(p[0]), float(p[1])))
            return
        raise InvariantViolation(Violation(
            "BAD_PLACEMENT",
            f"placement must be 'auto' or a (center depth, actuation) pair, got {p!r}",
        ))


@dataclass(frozen=True)
class PlotSpec:
    """What to draw: hand/grasp-type pairs, overlays, scale, and filters.

    ``scale`` is millimeters per pixel.  ``show_configs`` is None to draw
    every measured configuration, or an iterable of ConfigRole members and/or
    actuation fractions selecting which to draw.
    """

    hands: tuple
    overlays: tuple = ()
    scale: float = 0.5
    show_configs: object = None
    title: str = ""

    def __post_init__(self):
        object.__setattr__(self, "hands", tuple(tuple(h) for h in self.hands))
        object.__setattr__(self, "overlays", tuple(self.overlays))
        if not self.hands:
            raise InvariantViolation(Violation(
                "NO_HANDS", "a plot needs at least one hand"))
        if not isinstance(self.scale, (int, float)) or isinstance(self.scale, bool) \
                or not math.isfinite(self.scale) or self.scale <= 0:
            raise InvariantViolation(Violation(
                "BAD_SCALE", f"scale must be a positive mm-per-pixel number, "
                             f"got {self.scale!r}"))


# fixed theme: no user styling, golden outputs stay stable
_SHADE_FILL = "#c7dcef"
_OUTLINE_COLOR = {
    ConfigRole.MAX_FUNCTIONAL: "#1f77b4",
    ConfigRole.INTERMEDIATE: "#7f7f7f",
    ConfigRole.MIN_FUNCTIONAL: "#d62728",
}
_CENTERLINE_COLOR = "#999999"
_BASELINE_COLOR = "#444444"
_OVERLAY_COLOR = "#2ca02c"
_MARKER_COLOR = "#333333"
_FONT = 'font-family="monospace" font-size="11"'

_MARGIN = 12.0
_TITLE_BAND = 26.0
_RULER_BAND = 30.0
_PANEL_GAP = 18.0
_PAD_MM = 6.0
_AREA_AXIS_PX = 200.0
_MARKER_PX = 3.0
_RULER_CHOICES = (500, 200, 100, 50, 25, 20, 10, 5, 2, 1)


def _fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _selected_configs(mset, show_configs):
    configs = mset.configurations
    if show_configs is None:
        return list(configs)
    wanted_roles = {s for s in show_configs if isinstance(s, ConfigRole)}
    wanted_acts = {float(s) for s in show_configs if not isinstance(s, ConfigRole)}
    return [c for c in configs
            if c.role in wanted_roles or c.actuation in wanted_acts]


def _path_d(points) -> str:
    steps = [f"{'M' if i == 0 else 'L'} {_fmt(x)} {_fmt(y)}"
             for i, (x, y) in enumerate(points)]
    return " ".join(steps) + " Z"


def _polyline_d(points) -> str:
    return " ".join(f"{'M' if i == 0 else 'L'} {_fmt(x)} {_fmt(y)}"
                    for i, (x, y) in enumerate(points))


def _region_points(profile, scale):
    return [(half / scale, depth / scale)
            for depth, half in profile_region(profile)]


def _area_points(profile, scale, max_area):
    return [(e / max_area * _AREA_AXIS_PX, d / scale) for d, e in profile.pairs]


def _resolve_overlay(overlay, hand, grasp_type, mset):
    """Returns (center_depth, actuation) for one overlay on one panel."""
    if overlay.placement == AUTO:
        try:
            result = fit(hand, grasp_type, overlay.obj, resolution=DEFAULT_RESOLUTION)
        except GraspSpanError as exc:
            raise InfeasibleOverlay(
                f"object {overlay.obj.name!r} cannot be auto-placed on hand "
                f"{hand.name!r}: {exc}") from exc
        if not result.feasible:
            raise InfeasibleOverlay(
                f"object {overlay.obj.name!r} does not fit hand {hand.name!r} "
                f"with a {grasp_type.value} grasp")
        return result.best_center_depth, result.best_actuation
    return overlay.placement


def render_svg(spec: PlotSpec) -> str:
    """Render a plot spec to SVG 1.1 text.

    Raises MissingGraspType when a hand lacks its requested set and
    InfeasibleOverlay when an auto-placed object fits no placement.
    """
    scale = spec.scale

    panels = []
    for hand, grasp_type in spec.hands:
        mset = hand.sets.get(grasp_type)
        if mset is None:
            raise MissingGraspType(hand.name, grasp_type)
        configs = _selected_configs(mset, spec.show_configs)
        if not configs:
            raise InvariantViolation(Violation(
                "NO_CONFIGS_SELECTED",
                f"show_configs selects nothing from hand {hand.name!r}"))
        profiles = [config_interp(mset, c.actuation) for c in configs]
        overlays = [(ov, *_resolve_overlay(ov, hand, grasp_type, mset))
                    for ov in spec.overlays]
        panels.append((hand, grasp_type, mset, configs, profiles, overlays))

    # shared size pass
    sized = []
    for hand, grasp_type, mset, configs, profiles, overlays in panels:
        depth_mm = max(p.max_depth for p in profiles)
        for ov, center, _a in overlays:
            depth_mm = max(depth_mm, center + ov.obj.depth / 2.0)
        depth_mm += _PAD_MM
        if mset.extent_kind is ExtentKind.LENGTH:
            half_mm = hand.one_time.max_open / 2.0
            for ov, _c, _a in overlays:
                half_mm = max(half_mm, ov.obj.span / 2.0)
            half_mm += _PAD_MM
            width_px = 2.0 * half_mm / scale
        else:
            width_px = _AREA_AXIS_PX
        sized.append((width_px, depth_mm / scale))

    total_w = _MARGIN * 2 + sum(w for w, _ in sized) + _PANEL_GAP * (len(sized) - 1)
    panel_h = max(h for _, h in sized)
    total_h = _MARGIN * 2 + _TITLE_BAND + panel_h + _RULER_BAND

    out = []
    emit = out.append
    emit('<?xml version="1.0" encoding="UTF-8"?>')
    emit(f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
         f'width="{math.ceil(total_w)}" height="{math.ceil(total_h)}" '
         f'viewBox="0 0 {math.ceil(total_w)} {math.ceil(total_h)}">')
    emit(f'<rect id="background" x="0" y="0" width="{math.ceil(total_w)}" '
         f'height="{math.ceil(total_h)}" fill="#ffffff"/>')
    if spec.title:
        emit(f'<text id="title" x="{_fmt(total_w / 2)}" y="{_fmt(_MARGIN + 12)}" '
             f'text-anchor="middle" {_FONT} fill="#000000">{escape(spec.title)}</text>')

    x_cursor = _MARGIN
    baseline_y = _MARGIN + _TITLE_BAND + panel_h
    for idx, ((hand, grasp_type, mset, configs, profiles, overlays),
              (panel_w, _panel_used_h)) in enumerate(zip(panels, sized)):
        is_length = mset.extent_kind is ExtentKind.LENGTH
        cx = x_cursor + panel_w / 2.0
        gid = f"hand{idx}"
        emit(f'<text id="{gid}-label" x="{_fmt(cx)}" y="{_fmt(baseline_y + 14)}" '
             f'text-anchor="middle" {_FONT} fill="#000000">'
             f'{escape(hand.name)} ({escape(grasp_type.value)})</text>')

        if is_length:
            origin = f"translate({_fmt(cx)} {_fmt(baseline_y)}) scale(1 -1)"
        else:
            origin = f"translate({_fmt(x_cursor)} {_fmt(baseline_y)}) scale(1 -1)"
        emit(f'<g id="{gid}" transform="{origin}">')

        max_profile = profiles[0] if configs[0].role is ConfigRole.MAX_FUNCTIONAL \
            else config_interp(mset, 0.0)
        min_profile = profiles[-1] if configs[-1].role is ConfigRole.MIN_FUNCTIONAL \
            else config_interp(mset, 1.0)

        if is_length:
            shade_d = (_path_d(_region_points(max_profile, scale)) + " " +
                       _path_d(_region_points(min_profile, scale)))
            emit(f'<path id="{gid}-shade" d="{shade_d}" fill="{_SHADE_FILL}" '
                 f'fill-opacity="0.6" fill-rule="evenodd" stroke="none"/>')
            for j, (config, profile) in enumerate(zip(configs, profiles)):
                d = _path_d(_region_points(profile, scale))
                color = _OUTLINE_COLOR[config.role]
                emit(f'<path id="{gid}-config{j}" d="{d}" fill="none" '
                     f'stroke="{color}" stroke-width="1.2"/>')
            depth_px = max(p.max_depth for p in profiles) / scale
            emit(f'<line id="{gid}-centerline" x1="0" y1="0" x2="0" '
                 f'y2="{_fmt(depth_px)}" stroke="{_CENTERLINE_COLOR}" '
                 f'stroke-width="0.8" stroke-dasharray="4 3"/>')
            half_px = panel_w / 2.0
            emit(f'<line id="{gid}-baseline" x1="{_fmt(-half_px)}" y1="0" '
                 f'x2="{_fmt(half_px)}" y2="0" stroke="{_BASELINE_COLOR}" '
                 f'stroke-width="1.2"/>')
        else:
            max_area = max(max(p.extents) for p in profiles)
            top = _area_points(max_profile, scale, max_area)
            bottom = _area_points(min_profile, scale, max_area)
            shade_pts = top + list(reversed(bottom))
            emit(f'<path id="{gid}-shade" d="{_path_d(shade_pts)}" '
                 f'fill="{_SHADE_FILL}" fill-opacity="0.6" stroke="none"/>')
            for j, (config, profile) in enumerate(zip(configs, profiles)):
                d = _polyline_d(_area_points(profile, scale, max_area))
                color = _OUTLINE_COLOR[config.role]
                emit(f'<path id="{gid}-config{j}" d="{d}" fill="none" '
                     f'stroke="{color}" stroke-width="1.2"/>')
            emit(f'<line id="{gid}-baseline" x1="0" y1="0" '
                 f'x2="{_fmt(panel_w)}" y2="0" stroke="{_BASELINE_COLOR}" '
                 f'stroke-width="1.2"/>')

        # '+' marks on mid measurement pairs
        for j, (config, profile) in enumerate(zip(configs, profiles)):
            for k, pair in enumerate(config.pairs):
                if pair.label is not PairLabel.MID:
                    continue
                depth_px = profile.pairs[k][0] / scale
                if is_length:
                    xs = [profile.pairs[k][1] / 2.0 / scale]
                    xs.insert(0, -xs[0])
                else:
                    xs = [profile.pairs[k][1] / max_area * _AREA_AXIS_PX]
                for m, x in enumerate(xs):
                    emit(f'<path id="{gid}-config{j}-mid{k}-{m}" '
                         f'd="M {_fmt(x - _MARKER_PX)} {_fmt(depth_px)} '
                         f'L {_fmt(x + _MARKER_PX)} {_fmt(depth_px)} '
                         f'M {_fmt(x)} {_fmt(depth_px - _MARKER_PX)} '
                         f'L {_fmt(x)} {_fmt(depth_px + _MARKER_PX)}" '
                         f'stroke="{_MARKER_COLOR}" stroke-width="1"/>')

        for n, (ov, center, actuation) in enumerate(overlays):
            oid = f"{gid}-overlay{n}"
            ghost = config_interp(mset, actuation)
            if is_length:
                d = _path_d(_region_points(ghost, scale))
                emit(f'<path id="{oid}-pose" d="{d}" fill="none" '
                     f'stroke="{_MARKER_COLOR}" stroke-width="0.8" '
                     f'stroke-dasharray="2 2"/>')
                if abs(ov.obj.span - ov.obj.depth) < 1e-9:
                    emit(f'<circle id="{oid}" cx="0" cy="{_fmt(center / scale)}" '
                         f'r="{_fmt(ov.obj.span / 2.0 / scale)}" '
                         f'fill="{_OVERLAY_COLOR}" fill-opacity="0.25" '
                         f'stroke="{_OVERLAY_COLOR}" stroke-width="1.2"/>')
                else:
                    emit(f'<rect id="{oid}" x="{_fmt(-ov.obj.span / 2.0 / scale)}" '
                         f'y="{_fmt((center - ov.obj.depth / 2.0) / scale)}" '
                         f'width="{_fmt(ov.obj.span / scale)}" '
                         f'height="{_fmt(ov.obj.depth / scale)}" '
                         f'fill="{_OVERLAY_COLOR}" fill-opacity="0.25" '
                         f'stroke="{_OVERLAY_COLOR}" stroke-width="1.2"/>')
            else:
                d = _polyline_d(_area_points(ghost, scale, max_area))
                emit(f'<path id="{oid}-pose" d="{d}" fill="none" '
                     f'stroke="{_MARKER_COLOR}" stroke-width="0.8" '
                     f'stroke-dasharray="2 2"/>')
                area = required_extent(mset, ov.obj)
                emit(f'<circle id="{oid}" '
                     f'cx="{_fmt(area / max_area * _AREA_AXIS_PX)}" '
                     f'cy="{_fmt(center / scale)}" r="{_fmt(_MARKER_PX)}" '
                     f'fill="{_OVERLAY_COLOR}" stroke="none"/>')

        emit('</g>')
        x_cursor += panel_w + _PANEL_GAP

    # millimeter ruler, bottom left
    ruler_mm = next((r for r in _RULER_CHOICES if r / scale <= 160.0),
                    _RULER_CHOICES[-1])
    ruler_px = ruler_mm / scale
    ry = total_h - _MARGIN - 4
    emit('<g id="ruler">')
    emit(f'<line x1="{_fmt(_MARGIN)}" y1="{_fmt(ry)}" '
         f'x2="{_fmt(_MARGIN + ruler_px)}" y2="{_fmt(ry)}" '
         f'stroke="#000000" stroke-width="1.5"/>')
    for tick_x in (_MARGIN, _MARGIN + ruler_px):
        emit(f'<line x1="{_fmt(tick_x)}" y1="{_fmt(ry - 4)}" '
             f'x2="{_fmt(tick_x)}" y2="{_fmt(ry + 4)}" '
             f'stroke="#000000" stroke-width="1.5"/>')
    emit(f'<text x="{_fmt(_MARGIN + ruler_px + 6)}" y="{_fmt(ry + 4)}" '
         f'{_FONT} fill="#000000">{ruler_mm} mm</text>')
    emit('</g>')
    emit('</svg>')
    return "\n".join(out) + "\n"
