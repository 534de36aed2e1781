"""Shared builders and seeded generators for the test suite."""

from __future__ import annotations

from datetime import date

from graspspan.model import (
    ConfigRole,
    ConfigurationProfile,
    DistalContact,
    ExtentKind,
    GraspMeasurementSet,
    GraspType,
    HandRecord,
    MeasurementPair,
    ObjectSpec,
    OneTimeMeasurements,
    PairLabel,
)


def make_profile(actuation, role, pairs, kind=ExtentKind.LENGTH,
                 contact=DistalContact.TIP, photo_refs=(), note=None):
    """pairs: [(depth, extent), ...]; labels derived from position."""
    labels = [PairLabel.BASE] + [PairLabel.MID] * (len(pairs) - 2) + [PairLabel.DISTAL]
    return ConfigurationProfile(
        actuation=actuation,
        role=role,
        pairs=tuple(MeasurementPair(d, e, label)
                    for (d, e), label in zip(pairs, labels)),
        distal_contact=contact,
        extent_kind=kind,
        photo_refs=tuple(photo_refs),
        note=note,
    )


def make_set(grasp_type, max_pairs, min_pairs, intermediates=(), **profile_kw):
    kind = grasp_type.extent_kind
    configs = [make_profile(0.0, ConfigRole.MAX_FUNCTIONAL, max_pairs, kind, **profile_kw)]
    for actuation, pairs in intermediates:
        configs.append(make_profile(actuation, ConfigRole.INTERMEDIATE, pairs,
                                    kind, **profile_kw))
    configs.append(make_profile(1.0, ConfigRole.MIN_FUNCTIONAL, min_pairs, kind, **profile_kw))
    return GraspMeasurementSet(grasp_type, tuple(configs))


def make_hand(name="demo", sets=None, max_open=130.0, min_width=10.0,
              max_width=60.0, unbounded=False, measurer="tester",
              on=date(2026, 3, 14)):
    if sets is None:
        sets = {GraspType.PRECISION: make_set(
            GraspType.PRECISION,
            max_pairs=[(0.0, 100.0), (50.0, 120.0)],
            min_pairs=[(0.0, 20.0), (40.0, 30.0)],
        )}
    return HandRecord(
        name=name, measurer=measurer, date=on,
        one_time=OneTimeMeasurements(max_open, min_width, max_width, unbounded),
        sets=sets,
    )


def demo_hand(grasp_type=GraspType.PRECISION):
    """Two-configuration hand used across examples:
    most-open pairs {(0,100),(50,120)}, most-closed {(0,20),(40,30)}."""
    return make_hand(sets={grasp_type: make_set(
        grasp_type,
        max_pairs=[(0.0, 100.0), (50.0, 120.0)],
        min_pairs=[(0.0, 20.0), (40.0, 30.0)],
    )})


def scenario_hands(object_span=75.0):
    """Three hands sized so one object's span ratio lands at 0.15/0.5/0.9.

    Span extrema: (30, 330), (25, 125), (3, 83); (75-30)/300 = 0.15,
    (75-25)/100 = 0.5, (75-3)/80 = 0.9.
    """
    specs = [("hand-large", 30.0, 330.0), ("hand-medium", 25.0, 125.0),
             ("hand-small", 3.0, 83.0)]
    hands = []
    for name, m, M in specs:
        mset = make_set(
            GraspType.PRECISION,
            max_pairs=[(0.0, 0.95 * M), (90.0, M)],
            min_pairs=[(0.0, 0.8 * m), (80.0, m)],
        )
        hands.append(make_hand(name=name, sets={GraspType.PRECISION: mset},
                               max_open=M + 10.0, min_width=10.0, max_width=120.0))
    return hands


def golden_plot_specs():
    """The two plot specs frozen as golden SVG fixtures."""
    from graspspan.render import ObjectOverlay, PlotSpec

    ridged = make_hand(name="ridged", sets={GraspType.PRECISION: make_set(
        GraspType.PRECISION,
        max_pairs=[(0.0, 100.0), (25.0, 110.0), (50.0, 120.0)],
        min_pairs=[(0.0, 20.0), (20.0, 26.0), (40.0, 30.0)],
    )})
    two_config = PlotSpec(hands=((ridged, GraspType.PRECISION),),
                          scale=0.5, title="synthetic hand")

    with_objects = PlotSpec(
        hands=((demo_hand(), GraspType.PRECISION),),
        overlays=(
            ObjectOverlay(ObjectSpec("block", span=75.0, depth=10.0)),
            ObjectOverlay(ObjectSpec("puck", span=40.0, depth=40.0),
                          placement=(25.0, 0.2)),
        ),
        scale=0.5,
        title="demo with objects",
    )
    return {"two_config_hand.svg": two_config,
            "hand_with_object.svg": with_objects}


# ---------------------------------------------------------------------------
# Seeded random generators
# ---------------------------------------------------------------------------

def random_hand(rng, grasp_type=None, allow_intermediate=True):
    gtype = grasp_type or rng.choice(
        [GraspType.PRECISION, GraspType.CYLINDRICAL_POWER])
    n = rng.choice([2, 3])
    unit = 1.0 if gtype.extent_kind is ExtentKind.LENGTH else 40.0

    def pairs_for(base_extent, distal_extent, base_depth, distal_depth):
        depths = [base_depth, distal_depth]
        if n == 3:
            depths.insert(1, rng.uniform(base_depth + 1.0, distal_depth - 1.0))
        extents = [base_extent, distal_extent]
        if n == 3:
            extents.insert(1, rng.uniform(min(extents), max(extents)))
        return list(zip(depths, [e * unit for e in extents]))

    max_pairs = pairs_for(rng.uniform(60.0, 110.0), rng.uniform(70.0, 150.0),
                          rng.uniform(0.0, 8.0),
                          rng.uniform(30.0, 80.0) + 8.0)
    min_pairs = pairs_for(rng.uniform(8.0, 30.0), rng.uniform(8.0, 35.0),
                          rng.uniform(0.0, 6.0),
                          rng.uniform(18.0, 60.0) + 6.0)

    intermediates = ()
    if allow_intermediate and rng.random() < 0.35:
        t = rng.uniform(0.25, 0.75)
        blended = [
            ((1 - t) * dm + t * dn, ((1 - t) * em + t * en) * rng.uniform(0.92, 1.08))
            for (dm, em), (dn, en) in zip(max_pairs, min_pairs)
        ]
        intermediates = ((t, blended),)

    mset = make_set(gtype, max_pairs, min_pairs, intermediates)
    max_extent = max(e for _, e in max_pairs)
    min_width = rng.uniform(3.0, 20.0)
    return make_hand(
        name=f"gen-{rng.randrange(1_000_000)}",
        sets={gtype: mset},
        max_open=(max_extent / unit) * rng.uniform(1.0, 1.15) * unit,
        min_width=min_width,
        max_width=min_width + rng.uniform(15.0, 60.0),
        unbounded=rng.random() < 0.2,
    ), gtype


def random_object(rng, hand, grasp_type, with_width=True):
    mset = hand.sets[grasp_type]
    span_min = mset.min_functional.max_extent
    span_max = mset.max_functional.max_extent
    depth_max = mset.max_functional.distal_depth
    o_span = rng.uniform(0.5 * span_min, 1.1 * span_max)
    o_depth = rng.uniform(0.05, 1.05) * depth_max
    width = None
    if with_width and rng.random() < 0.6:
        ot = hand.one_time
        width = rng.uniform(0.5 * ot.min_width + 0.1, 1.2 * ot.max_width)
    if grasp_type.extent_kind is ExtentKind.AREA:
        return ObjectSpec(name="gen-obj", span=max(o_span / 40.0, 1.0),
                          depth=o_depth, width=width, disk_area=o_span)
    return ObjectSpec(name="gen-obj", span=o_span, depth=o_depth, width=width)
