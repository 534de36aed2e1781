"""Interpolation across finger actuation and along depth.

Measured configurations are blended pointwise and linearly in actuation
(bracketed by the two adjacent measured configurations), and each blended
profile is evaluated as a piecewise-linear extent-versus-depth function over
its breakpoints.  Queries at a measured actuation or at a stored breakpoint
return the measured numbers bit-for-bit; queries outside the measured depth
range are errors, never extrapolated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    ExtentKind,
    GraspMeasurementSet,
    GraspSpanError,
    InvariantViolation,
    Violation,
)


class ActuationOutOfRange(GraspSpanError, ValueError):
    """Actuation fraction outside [0, 1]."""


class DepthOutOfRange(GraspSpanError, ValueError):
    """Depth outside the profile's measured [base, distal] range."""


class WrongExtentKind(GraspSpanError, TypeError):
    """Operation not defined for this extent kind."""


@dataclass(frozen=True)
class InterpolatedProfile:
    """An extent-versus-depth profile at one actuation fraction.

    ``pairs`` holds (depth, extent) breakpoints with strictly increasing
    depths; extents are spans (mm) or disk areas (mm^2) per ``extent_kind``.
    """

    actuation: float
    pairs: tuple
    extent_kind: ExtentKind

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        if _bad_fraction(self.actuation):
            raise InvariantViolation(Violation(
                "ACTUATION_OUT_OF_RANGE",
                f"actuation {self.actuation!r} must lie in [0, 1]",
            ))
        if len(self.pairs) < 2:
            raise InvariantViolation(Violation(
                "TOO_FEW_PAIRS",
                f"a profile needs at least 2 breakpoints, got {len(self.pairs)}",
            ))
        for i, (d, e) in enumerate(self.pairs):
            if not (math.isfinite(d) and math.isfinite(e)) or e < 0:
                raise InvariantViolation(Violation(
                    "INVALID_BREAKPOINT",
                    f"breakpoint {i} must have finite depth and non-negative extent",
                ))
            if i and not d > self.pairs[i - 1][0]:
                raise InvariantViolation(Violation(
                    "DEPTHS_NOT_INCREASING",
                    f"breakpoint depth {d!r} at index {i} does not exceed "
                    f"{self.pairs[i - 1][0]!r}",
                ))

    @property
    def depths(self) -> tuple:
        return tuple(d for d, _ in self.pairs)

    @property
    def extents(self) -> tuple:
        return tuple(e for _, e in self.pairs)

    @property
    def min_depth(self) -> float:
        return self.pairs[0][0]

    @property
    def max_depth(self) -> float:
        return self.pairs[-1][0]


def _bad_fraction(a) -> bool:
    return not isinstance(a, (int, float)) or isinstance(a, bool) \
        or not math.isfinite(a) or a < 0.0 or a > 1.0


def _lerp(lo: float, hi: float, t: float) -> float:
    return lo + t * (hi - lo)


def config_interp(mset: GraspMeasurementSet, actuation: float) -> InterpolatedProfile:
    """Blend the measured configurations at an actuation fraction.

    At a measured actuation the measured pairs are returned exactly;
    otherwise the two adjacent measured configurations are blended pointwise
    (both depth and extent at each breakpoint index).

    Raises ActuationOutOfRange for actuation outside [0, 1].
    """
    if _bad_fraction(actuation):
        raise ActuationOutOfRange(f"actuation {actuation!r} must lie in [0, 1]")

    configs = mset.configurations
    for config in configs:
        if config.actuation == actuation:
            pairs = tuple((p.depth, p.extent) for p in config.pairs)
            return InterpolatedProfile(actuation, pairs, mset.extent_kind)

    hi_idx = next(i for i, c in enumerate(configs) if c.actuation > actuation)
    lo, hi = configs[hi_idx - 1], configs[hi_idx]
    t = (actuation - lo.actuation) / (hi.actuation - lo.actuation)
    pairs = tuple(
        (_lerp(pl.depth, ph.depth, t), _lerp(pl.extent, ph.extent, t))
        for pl, ph in zip(lo.pairs, hi.pairs)
    )
    return InterpolatedProfile(actuation, pairs, mset.extent_kind)


def span_interp(profile: InterpolatedProfile, depth: float) -> float:
    """Evaluate the piecewise-linear extent at a depth inside the profile.

    Stored breakpoint depths return the stored extent exactly.  Raises
    DepthOutOfRange outside [min_depth, max_depth]; the graspable region is
    only defined between the Base and Distal measurements.
    """
    if not isinstance(depth, (int, float)) or isinstance(depth, bool) \
            or not math.isfinite(depth) \
            or depth < profile.min_depth or depth > profile.max_depth:
        raise DepthOutOfRange(
            f"depth {depth!r} outside measured range "
            f"[{profile.min_depth!r}, {profile.max_depth!r}]"
        )
    pairs = profile.pairs
    for d, e in pairs:
        if d == depth:
            return e
    hi_idx = next(i for i, (d, _) in enumerate(pairs) if d > depth)
    d_lo, e_lo = pairs[hi_idx - 1]
    d_hi, e_hi = pairs[hi_idx]
    t = (depth - d_lo) / (d_hi - d_lo)
    return _lerp(e_lo, e_hi, t)


def profile_region(profile: InterpolatedProfile) -> tuple:
    """Close a span profile into a planar polygon, mirrored about the palm
    centerline.

    Vertices are (depth, signed half-span): the breakpoints walked base to
    distal on the negative side, then distal back to base on the positive
    side.  Only defined for span (length) profiles; raises WrongExtentKind
    for disk-area profiles, which have no mirrored planar geometry.
    """
    if profile.extent_kind is not ExtentKind.LENGTH:
        raise WrongExtentKind("a mirrored span polygon needs length extents")
    negative = [(d, -e / 2.0) for d, e in profile.pairs]
    positive = [(d, e / 2.0) for d, e in reversed(profile.pairs)]
    return tuple(negative + positive)
