"""Grasp-space measurement toolkit for robot hands.

Validate measurement records, interpolate the graspable region across finger
actuation, determine whether and where an object fits, classify the object's
size relative to the hand, and render to-scale region plots.
"""

__version__ = "0.1.0"

from .model import (  # noqa: F401
    Axis,
    CompletenessWarning,
    ConfigRole,
    ConfigurationProfile,
    DistalContact,
    ExtentKind,
    FitResult,
    GraspMeasurementSet,
    GraspSpanError,
    GraspType,
    HandRecord,
    InvariantViolation,
    MeasurementPair,
    ObjectSpec,
    OneTimeMeasurements,
    PairLabel,
    SizeBand,
    SizeClass,
    Violation,
    band_for,
    documentation_completeness,
    validate_hand,
)
from .interp import (  # noqa: F401
    ActuationOutOfRange,
    DepthOutOfRange,
    InterpolatedProfile,
    WrongExtentKind,
    config_interp,
    profile_region,
    span_interp,
)
from .fitting import (  # noqa: F401
    AxisExtrema,
    CompareRow,
    HandExtrema,
    MissingGraspType,
    MissingObjectDimension,
    UnboundedAxis,
    axis_extrema,
    canonical_object,
    classify_object,
    compare_hands,
    fit,
    relative_size,
)
from .documents import (  # noqa: F401
    DocumentEnvelope,
    DocumentError,
    DocumentSyntaxError,
    LintReport,
    ParseWarning,
    SchemaError,
    UnsupportedVersion,
    hand_envelope,
    lint_document,
    object_envelope,
    parse_document,
    write_document,
)
from .render import (  # noqa: F401
    InfeasibleOverlay,
    ObjectOverlay,
    PlotSpec,
    render_svg,
)
