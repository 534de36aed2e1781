"""Domain model for robot-hand grasp-space measurement records.

A hand record bundles one-time measurements (maximum open span, minimum and
maximum graspable width) with one measurement set per grasp type.  Each set
holds ordered finger configurations from the most-open functional grasp
(actuation 0) to the most-closed one (actuation 1); each configuration is an
ordered list of depth/extent measurement pairs taken from the palm outward.
Cylindrical and precision sets record span lengths in millimeters, spherical
power sets record enclosed disk areas in square millimeters.

All types are immutable and self-checking: constructing one from inconsistent
data raises :class:`InvariantViolation` with a machine-readable code.
:func:`validate_hand` applies the same checks to an already-built record and
returns every violation instead of raising, which is what the document parser
and the CLI use to report problems in full.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date as _date
from enum import Enum
from types import MappingProxyType
from typing import Mapping, Optional


class GraspSpanError(Exception):
    """Base class for all errors raised by this package."""


class GraspType(Enum):
    PRECISION = "precision"
    CYLINDRICAL_POWER = "cylindricalPower"
    SPHERICAL_POWER = "sphericalPower"

    @property
    def extent_kind(self) -> "ExtentKind":
        if self is GraspType.SPHERICAL_POWER:
            return ExtentKind.AREA
        return ExtentKind.LENGTH


class ExtentKind(Enum):
    LENGTH = "length"  # span in mm
    AREA = "area"      # disk area in mm^2


class PairLabel(Enum):
    BASE = "base"
    MID = "mid"
    DISTAL = "distal"


class ConfigRole(Enum):
    MAX_FUNCTIONAL = "maxFunctional"
    INTERMEDIATE = "intermediate"
    MIN_FUNCTIONAL = "minFunctional"


class DistalContact(Enum):
    TIP = "tip"
    FINGERPAD_CENTER = "fingerpadCenter"


class Axis(Enum):
    SPAN = "span"
    DEPTH = "depth"
    WIDTH = "width"


class SizeBand(Enum):
    TOO_SMALL = "tooSmall"
    SMALL = "small"
    MEDIUM = "medium"
    LARGE = "large"
    TOO_LARGE = "tooLarge"

    @property
    def graspable(self) -> bool:
        return self in (SizeBand.SMALL, SizeBand.MEDIUM, SizeBand.LARGE)

    @property
    def display(self) -> str:
        return _BAND_DISPLAY[self]


_BAND_DISPLAY = {
    SizeBand.TOO_SMALL: "TooSmall",
    SizeBand.SMALL: "Small",
    SizeBand.MEDIUM: "Medium",
    SizeBand.LARGE: "Large",
    SizeBand.TOO_LARGE: "TooLarge",
}


@dataclass(frozen=True)
class Violation:
    """One invariant violation, locatable within a record.

    ``path`` components use the canonical document field spelling
    (e.g. ``("sets", "precision", "configurations", 0, "pairs", 1, "depthMm")``)
    so reports line up with on-disk documents.
    """

    code: str
    message: str
    path: tuple = ()

    @property
    def pointer(self) -> str:
        return "/" + "/".join(str(p) for p in self.path) if self.path else "/"


class InvariantViolation(GraspSpanError, ValueError):
    """Raised when a model type is constructed from inconsistent data."""

    def __init__(self, violation: Violation):
        self.violation = violation
        super().__init__(f"{violation.code}: {violation.message}")


def _raise_first(violations: list) -> None:
    if violations:
        raise InvariantViolation(violations[0])


def _bad_number(x) -> bool:
    return not isinstance(x, (int, float)) or isinstance(x, bool) or not math.isfinite(x)


# ---------------------------------------------------------------------------
# Size banding
# ---------------------------------------------------------------------------

def band_for(ratio: float) -> SizeBand:
    """Band a relative size.  The 0.7 boundary belongs to Medium."""
    if ratio < 0.0:
        return SizeBand.TOO_SMALL
    if ratio < 0.3:
        return SizeBand.SMALL
    if ratio <= 0.7:
        return SizeBand.MEDIUM
    if ratio <= 1.0:
        return SizeBand.LARGE
    return SizeBand.TOO_LARGE


@dataclass(frozen=True)
class SizeClass:
    """A banded relative size.

    ``ratio`` is the raw normalized size and may lie outside [0, 1].  The band
    always matches the ratio, with one sanctioned exception: width axes with
    no upper finger limit report band Large for ratios above 1 (the raw ratio
    is kept for transparency).  Use :meth:`classify` for the standard banding.
    """

    band: SizeBand
    ratio: float

    def __post_init__(self):
        vs = _size_class_violations(self)
        _raise_first(vs)

    @classmethod
    def classify(cls, ratio: float) -> "SizeClass":
        return cls(band_for(ratio), ratio)

    @classmethod
    def classify_capped(cls, ratio: float) -> "SizeClass":
        """Band a ratio on an axis with no upper bound: TooLarge never fires."""
        band = band_for(ratio)
        if band is SizeBand.TOO_LARGE:
            band = SizeBand.LARGE
        return cls(band, ratio)


def _size_class_violations(sc: SizeClass) -> list:
    if _bad_number(sc.ratio):
        return [Violation("NONFINITE_VALUE", "relative size must be a finite number")]
    expected = band_for(sc.ratio)
    if sc.band is expected:
        return []
    if sc.band is SizeBand.LARGE and sc.ratio > 1.0:
        return []  # capped unbounded-width classification
    return [Violation(
        "BAND_RATIO_MISMATCH",
        f"band {sc.band.value} does not match relative size {sc.ratio!r}",
    )]


# ---------------------------------------------------------------------------
# Measurements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeasurementPair:
    """One depth/extent measurement: ``depth`` mm from the palm, ``extent``
    the span (mm) or enclosed disk area (mm^2) at that depth."""

    depth: float
    extent: float
    label: PairLabel

    def __post_init__(self):
        _raise_first(_pair_violations(self))


def _pair_violations(pair: MeasurementPair) -> list:
    vs = []
    if _bad_number(pair.depth):
        vs.append(Violation("NONFINITE_VALUE", "depth must be a finite number", ("depthMm",)))
    elif pair.depth < 0:
        vs.append(Violation("NEGATIVE_DEPTH", f"depth {pair.depth!r} is negative", ("depthMm",)))
    if _bad_number(pair.extent):
        vs.append(Violation("NONFINITE_VALUE", "extent must be a finite number", ("extent",)))
    elif pair.extent < 0:
        vs.append(Violation("NEGATIVE_EXTENT", f"extent {pair.extent!r} is negative", ("extent",)))
    return vs


@dataclass(frozen=True)
class ConfigurationProfile:
    """Measurements for one finger configuration.

    ``actuation`` parameterizes finger closure: 0 at the maximum functional
    grasp, 1 at the minimum, strictly between for intermediates.  Pairs run
    from the Base (first, nearest the palm) to the Distal (last) measurement
    with strictly increasing depths.
    """

    actuation: float
    role: ConfigRole
    pairs: tuple
    distal_contact: DistalContact
    extent_kind: ExtentKind
    photo_refs: tuple = ()
    note: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        object.__setattr__(self, "photo_refs", tuple(self.photo_refs))
        _raise_first(_profile_violations(self))

    @property
    def depths(self) -> tuple:
        return tuple(p.depth for p in self.pairs)

    @property
    def extents(self) -> tuple:
        return tuple(p.extent for p in self.pairs)

    @property
    def max_extent(self) -> float:
        return max(self.extents)

    @property
    def distal_depth(self) -> float:
        return self.pairs[-1].depth


def _profile_violations(profile: ConfigurationProfile) -> list:
    vs = []
    pairs = profile.pairs
    if len(pairs) < 2:
        vs.append(Violation(
            "TOO_FEW_PAIRS",
            f"a configuration needs at least 2 measurement pairs, got {len(pairs)}",
            ("pairs",),
        ))
    else:
        if pairs[0].label is not PairLabel.BASE:
            vs.append(Violation(
                "FIRST_PAIR_NOT_BASE",
                f"first pair must be labeled base, got {pairs[0].label.value}",
                ("pairs", 0, "label"),
            ))
        if pairs[-1].label is not PairLabel.DISTAL:
            vs.append(Violation(
                "LAST_PAIR_NOT_DISTAL",
                f"last pair must be labeled distal, got {pairs[-1].label.value}",
                ("pairs", len(pairs) - 1, "label"),
            ))
        for i, p in enumerate(pairs[1:-1], start=1):
            if p.label is not PairLabel.MID:
                vs.append(Violation(
                    "MID_PAIR_MISLABELED",
                    f"interior pair must be labeled mid, got {p.label.value}",
                    ("pairs", i, "label"),
                ))
        for i in range(1, len(pairs)):
            if not pairs[i].depth > pairs[i - 1].depth:
                vs.append(Violation(
                    "DEPTHS_NOT_INCREASING",
                    f"depth {pairs[i].depth!r} at index {i} does not exceed "
                    f"{pairs[i - 1].depth!r} at index {i - 1}",
                    ("pairs", i, "depthMm"),
                ))

    a = profile.actuation
    if _bad_number(a) or a < 0.0 or a > 1.0:
        vs.append(Violation(
            "ACTUATION_OUT_OF_RANGE",
            f"actuation {a!r} must lie in [0, 1]",
            ("actuation",),
        ))
    elif profile.role is ConfigRole.MAX_FUNCTIONAL and a != 0.0:
        vs.append(Violation(
            "MAX_ACTUATION_NOT_ZERO",
            f"maximum functional grasp must have actuation 0, got {a!r}",
            ("actuation",),
        ))
    elif profile.role is ConfigRole.MIN_FUNCTIONAL and a != 1.0:
        vs.append(Violation(
            "MIN_ACTUATION_NOT_ONE",
            f"minimum functional grasp must have actuation 1, got {a!r}",
            ("actuation",),
        ))
    elif profile.role is ConfigRole.INTERMEDIATE and not 0.0 < a < 1.0:
        vs.append(Violation(
            "INTERMEDIATE_ACTUATION_NOT_INTERIOR",
            f"intermediate configurations need 0 < actuation < 1, got {a!r}",
            ("actuation",),
        ))
    return vs


@dataclass(frozen=True)
class GraspMeasurementSet:
    """All measured configurations for one grasp type, ordered by actuation."""

    grasp_type: GraspType
    configurations: tuple

    def __post_init__(self):
        object.__setattr__(self, "configurations", tuple(self.configurations))
        _raise_first(_set_violations(self))

    @property
    def extent_kind(self) -> ExtentKind:
        return self.grasp_type.extent_kind

    @property
    def max_functional(self) -> ConfigurationProfile:
        return self.configurations[0]

    @property
    def min_functional(self) -> ConfigurationProfile:
        return self.configurations[-1]

    @property
    def pair_count(self) -> int:
        return len(self.configurations[0].pairs)


def _set_violations(mset: GraspMeasurementSet) -> list:
    vs = []
    configs = mset.configurations
    maxes = [c for c in configs if c.role is ConfigRole.MAX_FUNCTIONAL]
    mins = [c for c in configs if c.role is ConfigRole.MIN_FUNCTIONAL]
    if len(maxes) != 1:
        vs.append(Violation(
            "MISSING_MAX_FUNCTIONAL" if not maxes else "MULTIPLE_MAX_FUNCTIONAL",
            f"a measurement set needs exactly one maximum functional "
            f"configuration, got {len(maxes)}",
            ("configurations",),
        ))
    if len(mins) != 1:
        vs.append(Violation(
            "MISSING_MIN_FUNCTIONAL" if not mins else "MULTIPLE_MIN_FUNCTIONAL",
            f"a measurement set needs exactly one minimum functional "
            f"configuration, got {len(mins)}",
            ("configurations",),
        ))
    for i in range(1, len(configs)):
        if not configs[i].actuation > configs[i - 1].actuation:
            vs.append(Violation(
                "ACTUATIONS_NOT_INCREASING",
                f"actuation {configs[i].actuation!r} at index {i} does not "
                f"exceed {configs[i - 1].actuation!r} at index {i - 1}",
                ("configurations", i, "actuation"),
            ))
    if configs:
        n = len(configs[0].pairs)
        for i, c in enumerate(configs[1:], start=1):
            if len(c.pairs) != n:
                vs.append(Violation(
                    "PAIR_COUNT_MISMATCH",
                    f"configuration at index {i} has {len(c.pairs)} pairs, "
                    f"expected {n} to match the first configuration",
                    ("configurations", i, "pairs"),
                ))
        for i, c in enumerate(configs):
            if c.extent_kind is not mset.grasp_type.extent_kind:
                vs.append(Violation(
                    "EXTENT_KIND_MISMATCH",
                    f"{mset.grasp_type.value} sets record "
                    f"{mset.grasp_type.extent_kind.value} extents, configuration "
                    f"at index {i} records {c.extent_kind.value}",
                    ("configurations", i),
                ))
    return vs


@dataclass(frozen=True)
class OneTimeMeasurements:
    """Per-hand measurements independent of finger actuation.

    ``max_width_unbounded`` marks hands without an upper finger limit: the
    recorded ``max_width`` is then the palm width, not a true ceiling.
    """

    max_open: float
    min_width: float
    max_width: float
    max_width_unbounded: bool = False

    def __post_init__(self):
        _raise_first(_one_time_violations(self))


def _one_time_violations(ot: OneTimeMeasurements) -> list:
    vs = []
    for fname, value in (("maxOpenMm", ot.max_open),
                         ("minWidthMm", ot.min_width),
                         ("maxWidthMm", ot.max_width)):
        if _bad_number(value):
            vs.append(Violation("NONFINITE_VALUE", f"{fname} must be a finite number", (fname,)))
    if vs:
        return vs
    if ot.max_open <= 0:
        vs.append(Violation(
            "NONPOSITIVE_MAX_OPEN",
            f"maximum open span must be positive, got {ot.max_open!r}",
            ("maxOpenMm",),
        ))
    if ot.min_width < 0:
        vs.append(Violation(
            "NEGATIVE_MIN_WIDTH",
            f"minimum width must be non-negative, got {ot.min_width!r}",
            ("minWidthMm",),
        ))
    if not ot.max_width > ot.min_width:
        vs.append(Violation(
            "MAX_WIDTH_NOT_ABOVE_MIN",
            f"maximum width {ot.max_width!r} must exceed minimum width {ot.min_width!r}",
            ("maxWidthMm",),
        ))
    return vs


@dataclass(frozen=True)
class HandRecord:
    """A measured hand: identity, provenance, one-time measurements, and one
    measurement set per grasp type."""

    name: str
    measurer: str
    date: _date
    one_time: OneTimeMeasurements
    sets: Mapping[GraspType, GraspMeasurementSet]

    def __post_init__(self):
        object.__setattr__(self, "sets", MappingProxyType(dict(self.sets)))
        _raise_first(_hand_violations(self))


def _hand_violations(hand: HandRecord) -> list:
    vs = []
    if not isinstance(hand.name, str) or not hand.name:
        vs.append(Violation("EMPTY_NAME", "hand name must be a non-empty string", ("name",)))
    if not hand.sets:
        vs.append(Violation(
            "NO_MEASUREMENT_SETS",
            "a hand record needs at least one grasp measurement set",
            ("sets",),
        ))
    for gtype, mset in hand.sets.items():
        if mset.grasp_type is not gtype:
            vs.append(Violation(
                "SET_KEY_MISMATCH",
                f"set keyed {gtype.value} declares grasp type {mset.grasp_type.value}",
                ("sets", gtype.value),
            ))
            continue
        if mset.extent_kind is ExtentKind.LENGTH and mset.configurations:
            widest = mset.max_functional.max_extent
            if widest > hand.one_time.max_open:
                vs.append(Violation(
                    "SPAN_EXCEEDS_MAX_OPEN",
                    f"{gtype.value} maximum functional span {widest!r} exceeds "
                    f"the one-time maximum open span {hand.one_time.max_open!r}",
                    ("sets", gtype.value, "configurations", 0, "pairs"),
                ))
    return vs


@dataclass(frozen=True)
class ObjectSpec:
    """An object to assess: span/depth cross-section in mm, optional height
    (width axis) in mm, optional enclosed disk area in mm^2 for spherical
    grasps."""

    name: str
    span: float
    depth: float
    width: Optional[float] = None
    disk_area: Optional[float] = None

    def __post_init__(self):
        _raise_first(_object_violations(self))


def _object_violations(obj: ObjectSpec) -> list:
    vs = []
    if not isinstance(obj.name, str) or not obj.name:
        vs.append(Violation("EMPTY_NAME", "object name must be a non-empty string", ("name",)))
    checks = [("oSpanMm", obj.span, True), ("oDepthMm", obj.depth, True),
              ("oWidthMm", obj.width, False), ("oAreaMm2", obj.disk_area, False)]
    for fname, value, required in checks:
        if value is None:
            if required:
                vs.append(Violation("MISSING_DIMENSION", f"{fname} is required", (fname,)))
            continue
        if _bad_number(value):
            vs.append(Violation("NONFINITE_VALUE", f"{fname} must be a finite number", (fname,)))
        elif value <= 0:
            vs.append(Violation(
                "NONPOSITIVE_DIMENSION",
                f"{fname} must be positive, got {value!r}",
                (fname,),
            ))
    return vs


@dataclass(frozen=True)
class FitResult:
    """Outcome of an object-fit assessment.

    ``per_axis`` maps each assessed axis to its size class.  ``feasible`` is
    true only when a placement was found and every assessed axis is within
    the graspable bands; the best actuation and center depth are present
    exactly then.
    """

    per_axis: Mapping[Axis, SizeClass]
    feasible: bool
    best_actuation: Optional[float] = None
    best_center_depth: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "per_axis", MappingProxyType(dict(self.per_axis)))
        _raise_first(_fit_result_violations(self))


def _fit_result_violations(res: FitResult) -> list:
    vs = []
    if res.feasible:
        for axis, sc in res.per_axis.items():
            if not sc.band.graspable:
                vs.append(Violation(
                    "FEASIBLE_CLASS_CONFLICT",
                    f"feasible result carries band {sc.band.value} on the "
                    f"{axis.value} axis",
                    (axis.value,),
                ))
        if res.best_actuation is None or res.best_center_depth is None:
            vs.append(Violation(
                "BEST_FIELDS_MISSING",
                "feasible result must carry best actuation and center depth",
            ))
    else:
        if res.best_actuation is not None or res.best_center_depth is not None:
            vs.append(Violation(
                "BEST_FIELDS_UNEXPECTED",
                "infeasible result must not carry best actuation or center depth",
            ))
    return vs


# ---------------------------------------------------------------------------
# Whole-record validation and completeness
# ---------------------------------------------------------------------------

def _prefixed(violations: list, prefix: tuple) -> list:
    return [Violation(v.code, v.message, prefix + v.path) for v in violations]


def validate_hand(record: HandRecord) -> list:
    """Check every invariant of a hand record, returning all violations.

    Records built through the public constructors always validate clean; the
    document parser routes raw data through here to report every problem in a
    malformed file, not just the first.
    """
    vs = []
    vs += _prefixed(_one_time_violations(record.one_time), ("oneTime",))
    for gtype, mset in record.sets.items():
        set_prefix = ("sets", gtype.value)
        vs += _prefixed(_set_violations(mset), set_prefix)
        for i, config in enumerate(mset.configurations):
            cfg_prefix = set_prefix + ("configurations", i)
            vs += _prefixed(_profile_violations(config), cfg_prefix)
            for j, pair in enumerate(config.pairs):
                vs += _prefixed(_pair_violations(pair), cfg_prefix + ("pairs", j))
    vs += _hand_violations(record)
    return vs


@dataclass(frozen=True)
class CompletenessWarning:
    """Advisory gap in a record's measurement documentation."""

    code: str
    message: str
    path: tuple = ()


def documentation_completeness(record: HandRecord) -> list:
    """Report configurations whose provenance documentation is incomplete.

    Every configuration should carry a photo reference; spherical power
    configurations should carry a second, palm-view reference.  These are
    warnings only and never make a record invalid.
    """
    warnings = []
    for gtype, mset in record.sets.items():
        for i, config in enumerate(mset.configurations):
            path = ("sets", gtype.value, "configurations", i)
            where = (f"{gtype.value} {config.role.value} configuration "
                     f"(actuation {config.actuation:g})")
            if not config.photo_refs:
                warnings.append(CompletenessWarning(
                    "MISSING_PHOTO_REF",
                    f"{where} has no photo reference",
                    path,
                ))
            elif gtype is GraspType.SPHERICAL_POWER and len(config.photo_refs) < 2:
                warnings.append(CompletenessWarning(
                    "SPHERICAL_NEEDS_PALM_VIEW",
                    f"{where} needs a second, palm-view photo reference",
                    path,
                ))
    return warnings


# ---------------------------------------------------------------------------
# Unchecked construction (parser internals)
# ---------------------------------------------------------------------------

def _unchecked(cls, **fields):
    """Build a model instance without running invariant checks.

    Only the document parser uses this, to assemble records from raw data and
    then collect *all* violations via validate_hand instead of failing on the
    first constructor error.
    """
    obj = object.__new__(cls)
    for name, value in fields.items():
        object.__setattr__(obj, name, value)
    return obj
