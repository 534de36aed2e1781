"""Command line interface.

Subcommands: validate, fit, classify, plot, compare, canonical, interp.
Exit codes: 0 success, 1 domain outcome (infeasible object or failed
validation), 2 usage error, 3 I/O or parse error.  Numeric table output uses
3 decimal places for fractions and 1 for millimeters; ``--json`` variants
emit full-precision values.
"""

from __future__ import annotations

import argparse
import json
import sys
from enum import IntEnum

from .documents import (
    DocumentEnvelope,
    DocumentError,
    HAND_KIND,
    OBJECT_KIND,
    SCHEMA_VERSION,
    lint_document,
    parse_document,
    write_document,
)
from .fitting import (
    DEFAULT_RESOLUTION,
    MissingGraspType,
    axis_extrema,
    canonical_object,
    classify_object,
    compare_hands,
    fit,
)
from .interp import config_interp, span_interp
from .model import (
    Axis,
    ExtentKind,
    GraspSpanError,
    GraspType,
    documentation_completeness,
)
from .render import ObjectOverlay, PlotSpec, render_svg


class ExitStatus(IntEnum):
    OK = 0
    DOMAIN = 1   # infeasible / validation failed
    USAGE = 2
    IO = 3       # unreadable file, bad JSON, unsupported version


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _unit_fraction(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return value


def _open_fraction(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("must lie strictly between 0 and 1")
    return value


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _load_kind(path: str, kind: str):
    envelope, warnings = parse_document(_read(path))
    if envelope.kind != kind:
        raise DocumentError(f"{path}: expected a {kind} document, got {envelope.kind}")
    for w in warnings:
        print(f"warning: {path}{w.path}: {w.message}", file=sys.stderr)
    return envelope.payload


def _load_hand(path: str):
    return _load_kind(path, HAND_KIND)


def _load_object(path: str):
    return _load_kind(path, OBJECT_KIND)


def _grasp(args) -> GraspType:
    return GraspType(args.grasp)


def _write_output(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _class_cell(sc) -> str:
    return f"{sc.band.display} (s={sc.ratio:.3f})"


def _axes_json(per_axis) -> dict:
    return {
        axis.value: {"band": sc.band.value, "relativeSize": sc.ratio}
        for axis, sc in per_axis.items()
    }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    report = lint_document(_read(args.hand_file))
    completeness = []
    if report.envelope is not None and report.envelope.kind == HAND_KIND:
        completeness = documentation_completeness(report.envelope.payload)

    if args.json:
        print(json.dumps({
            "valid": report.ok,
            "violations": [
                {"code": v.code, "path": v.pointer, "message": v.message}
                for v in report.violations
            ],
            "warnings": [{"path": w.path, "message": w.message}
                         for w in report.warnings],
            "completeness": [
                {"code": c.code, "path": "/" + "/".join(str(p) for p in c.path),
                 "message": c.message}
                for c in completeness
            ],
        }, indent=2))
    else:
        for v in report.violations:
            print(f"VIOLATION {v.code} {v.pointer}: {v.message}")
        for w in report.warnings:
            print(f"warning: {w.path}: {w.message}")
        for c in completeness:
            print(f"incomplete: {c.code}: {c.message}")
        if report.ok:
            print("OK: document is valid")

    if not report.ok:
        fatal = {"SYNTAX", "UNSUPPORTED_VERSION"}
        if any(v.code in fatal for v in report.violations):
            return ExitStatus.IO
        return ExitStatus.DOMAIN
    return ExitStatus.OK


def cmd_fit(args) -> int:
    hand = _load_hand(args.hand_file)
    obj = _load_object(args.object_file)
    result = fit(hand, _grasp(args), obj, resolution=args.resolution)

    if args.json:
        print(json.dumps({
            "hand": hand.name,
            "object": obj.name,
            "graspType": args.grasp,
            "feasible": result.feasible,
            "bestActuation": result.best_actuation,
            "bestCenterDepthMm": result.best_center_depth,
            "axes": _axes_json(result.per_axis),
        }, indent=2))
    else:
        print(f"fit of {obj.name!r} in {hand.name!r} ({args.grasp})")
        for axis in (Axis.SPAN, Axis.DEPTH, Axis.WIDTH):
            sc = result.per_axis.get(axis)
            if sc is not None:
                print(f"  {axis.value:<6} {_class_cell(sc)}")
        if result.feasible:
            print("  feasible: yes")
            print(f"  actuation: {result.best_actuation:.3f}")
            print(f"  center depth: {result.best_center_depth:.1f} mm")
        else:
            print("  feasible: no")
    return ExitStatus.OK if result.feasible else ExitStatus.DOMAIN


def cmd_classify(args) -> int:
    hand = _load_hand(args.hand_file)
    obj = _load_object(args.object_file)
    per_axis = classify_object(hand, _grasp(args), obj)

    if args.json:
        print(json.dumps({
            "hand": hand.name,
            "object": obj.name,
            "graspType": args.grasp,
            "axes": _axes_json(per_axis),
        }, indent=2))
    else:
        print(f"relative size of {obj.name!r} in {hand.name!r} ({args.grasp})")
        for axis in (Axis.SPAN, Axis.DEPTH, Axis.WIDTH):
            sc = per_axis.get(axis)
            if sc is not None:
                print(f"  {axis.value:<6} {_class_cell(sc)}")
    return ExitStatus.OK


def cmd_plot(args) -> int:
    hands = [_load_hand(p) for p in args.hand_files]
    grasp_type = _grasp(args)
    overlays = tuple(ObjectOverlay(_load_object(p)) for p in args.object or [])
    spec = PlotSpec(
        hands=tuple((h, grasp_type) for h in hands),
        overlays=overlays,
        scale=args.scale,
        title=args.title,
    )
    _write_output(render_svg(spec), args.output)
    return ExitStatus.OK


def cmd_compare(args) -> int:
    hands = [_load_hand(p) for p in args.hand_files]
    obj = _load_object(args.object_file)
    rows = compare_hands(hands, _grasp(args), obj, resolution=args.resolution)

    def sort_key(indexed):
        i, row = indexed
        if row.status != "ok":
            return (2, 0.0, i)
        distance = abs(row.result.per_axis[Axis.SPAN].ratio - 0.5)
        return ((0, distance, i) if row.result.feasible else (1, distance, i))

    ranked = sorted(enumerate(rows), key=sort_key)

    if args.json:
        payload = []
        for rank, (_i, row) in enumerate(ranked, start=1):
            entry = {"rank": rank, "hand": row.hand_name, "status": row.status}
            if row.status == "ok":
                entry["feasible"] = row.result.feasible
                entry["axes"] = _axes_json(row.result.per_axis)
                entry["bestActuation"] = row.result.best_actuation
                entry["bestCenterDepthMm"] = row.result.best_center_depth
            payload.append(entry)
        print(json.dumps({
            "object": obj.name, "graspType": args.grasp, "rows": payload,
        }, indent=2))
    else:
        print(f"hands ranked by span-size margin for {obj.name!r} ({args.grasp}); "
              f"relative size nearest 0.5 first")
        for rank, (_i, row) in enumerate(ranked, start=1):
            if row.status != "ok":
                print(f"  {rank}. {row.hand_name:<20} no {args.grasp} measurement set")
                continue
            sc = row.result.per_axis[Axis.SPAN]
            verdict = "fits" if row.result.feasible else "does not fit"
            print(f"  {rank}. {row.hand_name:<20} span {_class_cell(sc):<22} {verdict}")
    any_feasible = any(r.status == "ok" and r.result.feasible for r in rows)
    return ExitStatus.OK if any_feasible else ExitStatus.DOMAIN


def cmd_canonical(args) -> int:
    hand = _load_hand(args.hand_file)
    grasp_type = _grasp(args)
    extrema = axis_extrema(hand, grasp_type)
    targets = {Axis.SPAN: args.target, Axis.DEPTH: args.target}
    if extrema.width.unbounded_max:
        print(f"note: {hand.name!r} has no upper width limit; width omitted "
              f"from the canonical object", file=sys.stderr)
    else:
        targets[Axis.WIDTH] = args.target
    obj = canonical_object(hand, grasp_type, targets, name=args.name or "")
    envelope = DocumentEnvelope(SCHEMA_VERSION, OBJECT_KIND, obj)
    _write_output(write_document(envelope), args.output)
    return ExitStatus.OK


def cmd_interp(args) -> int:
    hand = _load_hand(args.hand_file)
    mset = hand.sets.get(_grasp(args))
    if mset is None:
        raise MissingGraspType(hand.name, _grasp(args))
    profile = config_interp(mset, args.actuation)
    unit = "mm" if profile.extent_kind is ExtentKind.LENGTH else "mm^2"

    if args.depth is not None:
        extent = span_interp(profile, args.depth)
        if args.json:
            print(json.dumps({
                "actuation": profile.actuation,
                "extentKind": profile.extent_kind.value,
                "depthMm": args.depth,
                "extent": extent,
            }, indent=2))
        else:
            print(f"extent at depth {args.depth:.1f} mm, actuation "
                  f"{profile.actuation:.3f}: {extent:.1f} {unit}")
        return ExitStatus.OK

    if args.json:
        print(json.dumps({
            "actuation": profile.actuation,
            "extentKind": profile.extent_kind.value,
            "pairs": [[d, e] for d, e in profile.pairs],
        }, indent=2))
    else:
        print(f"profile at actuation {profile.actuation:.3f} "
              f"(depth mm, extent {unit})")
        for d, e in profile.pairs:
            print(f"  {d:8.1f}  {e:8.1f}")
    return ExitStatus.OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_grasp(parser) -> None:
    parser.add_argument("--grasp", choices=[g.value for g in GraspType],
                        default=GraspType.PRECISION.value,
                        help="grasp type to assess (default: %(default)s)")


def _add_json(parser) -> None:
    parser.add_argument("--json", action="store_true",
                        help="emit a single JSON object instead of a table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graspspan",
        description="Grasp-space measurement toolkit: validate hand records, "
                    "interpolate graspable regions, fit objects, classify "
                    "relative sizes, and plot to-scale regions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a hand document against every invariant")
    p.add_argument("hand_file")
    _add_json(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("fit", help="search for the best placement of an object")
    p.add_argument("hand_file")
    p.add_argument("object_file")
    _add_grasp(p)
    p.add_argument("--resolution", type=_positive_int, default=DEFAULT_RESOLUTION,
                   help="search grid steps per axis (default: %(default)s)")
    _add_json(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("classify", help="per-axis relative size classes, no search")
    p.add_argument("hand_file")
    p.add_argument("object_file")
    _add_grasp(p)
    _add_json(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("plot", help="render hand regions (and objects) to SVG")
    p.add_argument("hand_files", nargs="+")
    _add_grasp(p)
    p.add_argument("--object", action="append", metavar="FILE",
                   help="overlay an object document (repeatable); placed via fit")
    p.add_argument("--scale", type=_positive_float, default=0.5,
                   help="millimeters per pixel (default: %(default)s)")
    p.add_argument("--title", default="", help="plot title")
    p.add_argument("-o", "--output", help="write SVG here instead of stdout")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("compare",
                       help="fit one object against several hands and rank them")
    p.add_argument("hand_files", nargs="+")
    p.add_argument("--object", dest="object_file", required=True, metavar="FILE")
    _add_grasp(p)
    p.add_argument("--resolution", type=_positive_int, default=DEFAULT_RESOLUTION)
    _add_json(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("canonical",
                       help="invert a relative size into an object document")
    p.add_argument("hand_file")
    _add_grasp(p)
    p.add_argument("--target", type=_open_fraction, required=True,
                   help="relative size in (0, 1) to invert")
    p.add_argument("--name", default="", help="name for the generated object")
    p.add_argument("-o", "--output", help="write the object document here")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("interp",
                       help="interpolate the measured profile at an actuation")
    p.add_argument("hand_file")
    _add_grasp(p)
    p.add_argument("--actuation", type=_unit_fraction, required=True)
    p.add_argument("--depth", type=float, default=None,
                   help="also evaluate the extent at this depth (mm)")
    _add_json(p)
    p.set_defaults(func=cmd_interp)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return int(args.func(args))
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitStatus.IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitStatus.IO
    except GraspSpanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitStatus.DOMAIN


if __name__ == "__main__":
    sys.exit(main())
