"""Versioned JSON documents for hand records and object specs.

One JSON document per file: hands carry their one-time measurements and
grasp-type measurement sets inline, objects their millimeter dimensions.
Parsing reports problems with JSON-pointer-style paths; writing is
deterministic (fixed key order, fixed number formatting, trailing newline)
and round-trips every representable record exactly.  Unknown fields warn,
unknown kinds and other major schema versions are rejected.

Conventional file extensions: ``.grasp.json`` for hands, ``.object.json``
for objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date as _date
from types import MappingProxyType
from typing import Optional

from .model import (
    ConfigRole,
    ConfigurationProfile,
    DistalContact,
    GraspMeasurementSet,
    GraspSpanError,
    GraspType,
    HandRecord,
    MeasurementPair,
    ObjectSpec,
    OneTimeMeasurements,
    PairLabel,
    Violation,
    _object_violations,
    _unchecked,
    validate_hand,
)

SCHEMA_VERSION = "1.0"
MAX_DOCUMENT_BYTES = 10 * 1024 * 1024

HAND_KIND = "hand"
OBJECT_KIND = "object"
OBJECT_SET_KIND = "object-set"
_KINDS = (HAND_KIND, OBJECT_KIND, OBJECT_SET_KIND)


class DocumentError(GraspSpanError):
    """Base class for parse/serialize failures."""


class DocumentSyntaxError(DocumentError):
    """The text is not well-formed JSON (or not valid UTF-8)."""

    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class SchemaError(DocumentError):
    """The JSON is well-formed but does not describe a valid document."""

    def __init__(self, path: str, message: str, code: str = "SCHEMA"):
        self.path = path
        self.code = code
        super().__init__(f"{path}: {message}")


class UnsupportedVersion(DocumentError):
    def __init__(self, version: str):
        self.version = version
        super().__init__(
            f"schema version {version!r} is not supported (this reader "
            f"understands {SCHEMA_VERSION})"
        )


@dataclass(frozen=True)
class ParseWarning:
    path: str
    message: str


@dataclass(frozen=True)
class DocumentEnvelope:
    """A parsed document: schema version, kind, and the typed payload
    (HandRecord, ObjectSpec, or a tuple of ObjectSpec)."""

    schema_version: str
    kind: str
    payload: object


@dataclass(frozen=True)
class LintReport:
    """Full validation outcome of one document.

    ``envelope`` is present only when the document parsed clean; every
    invariant violation is listed, not just the first.
    """

    envelope: Optional[DocumentEnvelope]
    violations: tuple
    warnings: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def _pointer(parts) -> str:
    return "/" + "/".join(str(p) for p in parts) if parts else "/"


# ---------------------------------------------------------------------------
# Shape-checked extraction
# ---------------------------------------------------------------------------

def _require(raw: dict, key: str, path: tuple):
    if key not in raw:
        raise SchemaError(_pointer(path + (key,)), f"required field {key!r} is missing",
                          "MISSING_FIELD")
    return raw[key]


def _as_str(value, path: tuple) -> str:
    if not isinstance(value, str):
        raise SchemaError(_pointer(path), f"expected a string, got {type(value).__name__}",
                          "WRONG_TYPE")
    return value


def _as_number(value, path: tuple) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(_pointer(path), f"expected a number, got {type(value).__name__}",
                          "WRONG_TYPE")
    return float(value)


def _as_bool(value, path: tuple) -> bool:
    if not isinstance(value, bool):
        raise SchemaError(_pointer(path), f"expected a boolean, got {type(value).__name__}",
                          "WRONG_TYPE")
    return value


def _as_object(value, path: tuple) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(_pointer(path), f"expected an object, got {type(value).__name__}",
                          "WRONG_TYPE")
    return value


def _as_array(value, path: tuple) -> list:
    if not isinstance(value, list):
        raise SchemaError(_pointer(path), f"expected an array, got {type(value).__name__}",
                          "WRONG_TYPE")
    return value


def _as_enum(enum_cls, value, path: tuple, what: str):
    value = _as_str(value, path)
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(e.value for e in enum_cls)
        raise SchemaError(_pointer(path), f"unknown {what} {value!r} (one of: {allowed})",
                          "UNKNOWN_VALUE") from None


def _warn_unknown(raw: dict, known: frozenset, path: tuple, warnings: list):
    for key in raw:
        if key not in known:
            warnings.append(ParseWarning(
                _pointer(path + (key,)), f"unknown field {key!r} ignored"))


_HAND_FIELDS = frozenset({"schemaVersion", "kind", "name", "measurer", "date",
                          "oneTime", "sets"})
_ONE_TIME_FIELDS = frozenset({"maxOpenMm", "minWidthMm", "maxWidthMm",
                              "maxWidthUnbounded"})
_CONFIG_FIELDS = frozenset({"actuation", "role", "distalContact", "pairs",
                            "photoRef", "note"})
_PAIR_FIELDS = frozenset({"depthMm", "extent", "label"})
_OBJECT_FIELDS = frozenset({"schemaVersion", "kind", "name", "oSpanMm",
                            "oDepthMm", "oWidthMm", "oAreaMm2"})
_OBJECT_ITEM_FIELDS = frozenset({"name", "oSpanMm", "oDepthMm", "oWidthMm",
                                 "oAreaMm2"})
_OBJECT_SET_FIELDS = frozenset({"schemaVersion", "kind", "objects"})


def _build_pair(raw, path: tuple, warnings: list) -> MeasurementPair:
    raw = _as_object(raw, path)
    _warn_unknown(raw, _PAIR_FIELDS, path, warnings)
    return _unchecked(
        MeasurementPair,
        depth=_as_number(_require(raw, "depthMm", path), path + ("depthMm",)),
        extent=_as_number(_require(raw, "extent", path), path + ("extent",)),
        label=_as_enum(PairLabel, _require(raw, "label", path), path + ("label",), "label"),
    )


def _build_config(raw, grasp_type: GraspType, path: tuple,
                  warnings: list) -> ConfigurationProfile:
    raw = _as_object(raw, path)
    _warn_unknown(raw, _CONFIG_FIELDS, path, warnings)
    pairs_raw = _as_array(_require(raw, "pairs", path), path + ("pairs",))
    pairs = tuple(
        _build_pair(p, path + ("pairs", i), warnings)
        for i, p in enumerate(pairs_raw)
    )
    photo_refs: tuple = ()
    if "photoRef" in raw:
        ref = raw["photoRef"]
        if isinstance(ref, str):
            photo_refs = (ref,)
        elif isinstance(ref, list):
            photo_refs = tuple(
                _as_str(r, path + ("photoRef", i)) for i, r in enumerate(ref))
        else:
            raise SchemaError(_pointer(path + ("photoRef",)),
                              "expected a string or an array of strings", "WRONG_TYPE")
    note = None
    if "note" in raw:
        note = _as_str(raw["note"], path + ("note",))
    return _unchecked(
        ConfigurationProfile,
        actuation=_as_number(_require(raw, "actuation", path), path + ("actuation",)),
        role=_as_enum(ConfigRole, _require(raw, "role", path), path + ("role",), "role"),
        pairs=pairs,
        distal_contact=_as_enum(DistalContact, _require(raw, "distalContact", path),
                                path + ("distalContact",), "distal contact"),
        extent_kind=grasp_type.extent_kind,
        photo_refs=photo_refs,
        note=note,
    )


def _build_hand(raw: dict, warnings: list) -> HandRecord:
    _warn_unknown(raw, _HAND_FIELDS, (), warnings)
    name = _as_str(_require(raw, "name", ()), ("name",))
    measurer = _as_str(_require(raw, "measurer", ()), ("measurer",))
    date_text = _as_str(_require(raw, "date", ()), ("date",))
    try:
        date = _date.fromisoformat(date_text)
    except ValueError:
        raise SchemaError("/date", f"{date_text!r} is not an ISO-8601 calendar date",
                          "INVALID_DATE") from None

    ot_raw = _as_object(_require(raw, "oneTime", ()), ("oneTime",))
    _warn_unknown(ot_raw, _ONE_TIME_FIELDS, ("oneTime",), warnings)
    unbounded = False
    if "maxWidthUnbounded" in ot_raw:
        unbounded = _as_bool(ot_raw["maxWidthUnbounded"], ("oneTime", "maxWidthUnbounded"))
    one_time = _unchecked(
        OneTimeMeasurements,
        max_open=_as_number(_require(ot_raw, "maxOpenMm", ("oneTime",)),
                            ("oneTime", "maxOpenMm")),
        min_width=_as_number(_require(ot_raw, "minWidthMm", ("oneTime",)),
                             ("oneTime", "minWidthMm")),
        max_width=_as_number(_require(ot_raw, "maxWidthMm", ("oneTime",)),
                             ("oneTime", "maxWidthMm")),
        max_width_unbounded=unbounded,
    )

    sets_raw = _as_object(_require(raw, "sets", ()), ("sets",))
    sets = {}
    for key, set_raw in sets_raw.items():
        set_path = ("sets", key)
        try:
            grasp_type = GraspType(key)
        except ValueError:
            allowed = ", ".join(g.value for g in GraspType)
            raise SchemaError(_pointer(set_path),
                              f"unknown grasp type {key!r} (one of: {allowed})",
                              "UNKNOWN_GRASP_TYPE") from None
        set_raw = _as_object(set_raw, set_path)
        _warn_unknown(set_raw, frozenset({"configurations"}), set_path, warnings)
        configs_raw = _as_array(_require(set_raw, "configurations", set_path),
                                set_path + ("configurations",))
        configs = tuple(
            _build_config(c, grasp_type, set_path + ("configurations", i), warnings)
            for i, c in enumerate(configs_raw)
        )
        sets[grasp_type] = _unchecked(GraspMeasurementSet, grasp_type=grasp_type,
                                      configurations=configs)

    return _unchecked(HandRecord, name=name, measurer=measurer, date=date,
                      one_time=one_time, sets=MappingProxyType(sets))


def _build_object(raw: dict, path: tuple, fields: frozenset,
                  warnings: list) -> ObjectSpec:
    _warn_unknown(raw, fields, path, warnings)
    width = None
    if "oWidthMm" in raw:
        width = _as_number(raw["oWidthMm"], path + ("oWidthMm",))
    area = None
    if "oAreaMm2" in raw:
        area = _as_number(raw["oAreaMm2"], path + ("oAreaMm2",))
    return _unchecked(
        ObjectSpec,
        name=_as_str(_require(raw, "name", path), path + ("name",)),
        span=_as_number(_require(raw, "oSpanMm", path), path + ("oSpanMm",)),
        depth=_as_number(_require(raw, "oDepthMm", path), path + ("oDepthMm",)),
        width=width,
        disk_area=area,
    )


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _decode(text) -> str:
    if isinstance(text, bytes):
        if len(text) > MAX_DOCUMENT_BYTES:
            raise DocumentSyntaxError(
                f"document is {len(text)} bytes; at most {MAX_DOCUMENT_BYTES} accepted")
        try:
            return text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError(f"document is not valid UTF-8: {exc}") from None
    if len(text.encode("utf-8")) > MAX_DOCUMENT_BYTES:
        raise DocumentSyntaxError(
            f"document exceeds the {MAX_DOCUMENT_BYTES} byte limit")
    return text


def _load_raw(text):
    text = _decode(text)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None


def _check_envelope(raw) -> tuple:
    """Returns (kind, version, minor_warning_or_None)."""
    if not isinstance(raw, dict):
        raise SchemaError("/", f"document root must be an object, got "
                               f"{type(raw).__name__}", "WRONG_TYPE")
    version = _as_str(_require(raw, "schemaVersion", ()), ("schemaVersion",))
    major, sep, minor = version.partition(".")
    if not sep or not major.isdigit() or not minor.isdigit():
        raise SchemaError("/schemaVersion",
                          f"{version!r} is not a MAJOR.MINOR version", "INVALID_VERSION")
    if major != SCHEMA_VERSION.partition(".")[0]:
        raise UnsupportedVersion(version)
    warning = None
    if version != SCHEMA_VERSION:
        warning = ParseWarning("/schemaVersion",
                               f"document uses newer minor version {version}; "
                               f"reading as {SCHEMA_VERSION}")
    kind = _as_str(_require(raw, "kind", ()), ("kind",))
    if kind not in _KINDS:
        raise SchemaError("/kind", f"unknown document kind {kind!r} "
                                   f"(one of: {', '.join(_KINDS)})", "UNKNOWN_KIND")
    return kind, version, warning


def envelope_from_raw(raw) -> tuple:
    """Parse already-decoded JSON data.  Returns (envelope, warnings);
    raises SchemaError / UnsupportedVersion like :func:`parse_document`."""
    kind, version, version_warning = _check_envelope(raw)
    warnings: list = []
    if version_warning:
        warnings.append(version_warning)

    if kind == HAND_KIND:
        hand = _build_hand(raw, warnings)
        violations = validate_hand(hand)
        if violations:
            v = violations[0]
            raise SchemaError(v.pointer, v.message, v.code)
        payload: object = hand
    elif kind == OBJECT_KIND:
        obj = _build_object(raw, (), _OBJECT_FIELDS, warnings)
        _raise_object_violations(obj, ())
        payload = obj
    else:
        objects_raw = _as_array(_require(raw, "objects", ()), ("objects",))
        _warn_unknown(raw, _OBJECT_SET_FIELDS, (), warnings)
        objects = []
        for i, item in enumerate(objects_raw):
            item = _as_object(item, ("objects", i))
            obj = _build_object(item, ("objects", i), _OBJECT_ITEM_FIELDS, warnings)
            _raise_object_violations(obj, ("objects", i))
            objects.append(obj)
        payload = tuple(objects)

    return DocumentEnvelope(version, kind, payload), warnings


def _raise_object_violations(obj: ObjectSpec, prefix: tuple) -> None:
    violations = _object_violations(obj)
    if violations:
        v = violations[0]
        raise SchemaError(_pointer(prefix + v.path), v.message, v.code)


def parse_document(text) -> tuple:
    """Parse a UTF-8 JSON document.  Returns (envelope, warnings).

    Raises DocumentSyntaxError for malformed JSON, UnsupportedVersion for
    other major schema versions, and SchemaError (with a JSON-pointer path)
    for structural problems or the first invariant violation.
    """
    return envelope_from_raw(_load_raw(text))


def lint_document(text) -> LintReport:
    """Like parse_document, but collects *every* invariant violation.

    Structural problems (bad JSON, wrong types, unknown kinds) still stop the
    lint with that single finding, since nothing past them is interpretable.
    """
    try:
        raw = _load_raw(text)
        kind, version, version_warning = _check_envelope(raw)
    except DocumentError as exc:
        return LintReport(None, (_violation_of(exc),), ())
    if kind != HAND_KIND:
        try:
            envelope, warnings = envelope_from_raw(raw)
        except DocumentError as exc:
            return LintReport(None, (_violation_of(exc),), ())
        return LintReport(envelope, (), tuple(warnings))

    warnings = [version_warning] if version_warning else []
    try:
        hand = _build_hand(raw, warnings)
    except DocumentError as exc:
        return LintReport(None, (_violation_of(exc),), tuple(warnings))
    violations = tuple(validate_hand(hand))
    envelope = None
    if not violations:
        envelope = DocumentEnvelope(version, HAND_KIND, hand)
    return LintReport(envelope, violations, tuple(warnings))


def _violation_of(exc: DocumentError) -> Violation:
    if isinstance(exc, SchemaError):
        parts = tuple(seg for seg in exc.path.split("/") if seg)
        return Violation(exc.code, str(exc), parts)
    code = "UNSUPPORTED_VERSION" if isinstance(exc, UnsupportedVersion) else "SYNTAX"
    return Violation(code, str(exc))


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------

def _format_number(x: float) -> str:
    """Fixed decimals up to 6 places when exact, full repr otherwise.

    Either way ``float()`` of the text reproduces the value bit-for-bit.
    """
    if isinstance(x, int):
        x = float(x)
    if round(x, 6) == x:
        s = f"{x:.6f}".rstrip("0").rstrip(".")
        return s if s not in ("", "-") else "0"
    return repr(x)


_SET_ORDER = (GraspType.PRECISION, GraspType.CYLINDRICAL_POWER,
              GraspType.SPHERICAL_POWER)


def raw_from_envelope(env: DocumentEnvelope):
    """Plain ordered data ready for serialization (also the wire shape the
    HTTP service responds with)."""
    if env.kind == HAND_KIND:
        return _raw_hand(env.payload, env.schema_version)
    if env.kind == OBJECT_KIND:
        raw = {"schemaVersion": env.schema_version, "kind": OBJECT_KIND}
        raw.update(_raw_object(env.payload))
        return raw
    return {
        "schemaVersion": env.schema_version,
        "kind": OBJECT_SET_KIND,
        "objects": [_raw_object(o) for o in env.payload],
    }


def _raw_object(obj: ObjectSpec) -> dict:
    raw = {"name": obj.name, "oSpanMm": obj.span, "oDepthMm": obj.depth}
    if obj.width is not None:
        raw["oWidthMm"] = obj.width
    if obj.disk_area is not None:
        raw["oAreaMm2"] = obj.disk_area
    return raw


def _raw_hand(hand: HandRecord, version: str) -> dict:
    sets = {}
    for gtype in _SET_ORDER:
        mset = hand.sets.get(gtype)
        if mset is None:
            continue
        configs = []
        for c in mset.configurations:
            raw_c = {
                "actuation": c.actuation,
                "role": c.role.value,
                "distalContact": c.distal_contact.value,
                "pairs": [
                    {"depthMm": p.depth, "extent": p.extent, "label": p.label.value}
                    for p in c.pairs
                ],
            }
            if len(c.photo_refs) == 1:
                raw_c["photoRef"] = c.photo_refs[0]
            elif c.photo_refs:
                raw_c["photoRef"] = list(c.photo_refs)
            if c.note is not None:
                raw_c["note"] = c.note
            configs.append(raw_c)
        sets[gtype.value] = {"configurations": configs}
    return {
        "schemaVersion": version,
        "kind": HAND_KIND,
        "name": hand.name,
        "measurer": hand.measurer,
        "date": hand.date.isoformat(),
        "oneTime": {
            "maxOpenMm": hand.one_time.max_open,
            "minWidthMm": hand.one_time.min_width,
            "maxWidthMm": hand.one_time.max_width,
            "maxWidthUnbounded": hand.one_time.max_width_unbounded,
        },
        "sets": sets,
    }


def _serialize(value, indent: int) -> str:
    pad = "  " * indent
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return _format_number(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ",\n".join(
            f"{pad}  {json.dumps(k)}: {_serialize(v, indent + 1)}"
            for k, v in value.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = ",\n".join(
            f"{pad}  {_serialize(v, indent + 1)}" for v in value
        )
        return "[\n" + items + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def write_document(env: DocumentEnvelope) -> str:
    """Serialize an envelope to canonical UTF-8 JSON text.

    Deterministic: the same envelope always produces the same bytes, and
    parsing the output reproduces the envelope exactly.
    """
    return _serialize(raw_from_envelope(env), 0) + "\n"


def hand_envelope(hand: HandRecord) -> DocumentEnvelope:
    return DocumentEnvelope(SCHEMA_VERSION, HAND_KIND, hand)


def object_envelope(obj: ObjectSpec) -> DocumentEnvelope:
    return DocumentEnvelope(SCHEMA_VERSION, OBJECT_KIND, obj)
