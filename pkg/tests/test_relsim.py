"""Boosts, simultaneity, and the five-observer scenario."""

import math

import numpy as np
import pytest

from rbw.errors import MixedFrames, SuperluminalVelocity
from rbw.relsim import (
    SPEED_OF_LIGHT,
    Boost,
    SpacetimeEvent,
    boost_event,
    corealness_chain,
    events_document,
    gamma,
    interval,
    interval_class,
    load_events,
    simultaneity_classes,
)

C = SPEED_OF_LIGHT


def ev(t, x, frame="boys", label=""):
    return SpacetimeEvent(t=t, x=x, frame=frame, label=label)


# ------------------------------------------------------------------- gamma

def test_gamma_at_rest():
    assert gamma(Boost(v=0.0)) == 1.0


def test_gamma_point_six():
    assert gamma(Boost(v=0.6 * C)) == pytest.approx(1.25, rel=1e-15)


def test_gamma_point_eight():
    assert gamma(Boost(v=0.8 * C)) == pytest.approx(5.0 / 3.0, rel=1e-15)


@pytest.mark.parametrize("v", [C, -C, 1.1 * C, float("inf"), float("nan")])
def test_superluminal_rejected(v):
    with pytest.raises(SuperluminalVelocity):
        Boost(v=v)


# ------------------------------------------------------------------- boosts

def test_boost_first_reference_pair():
    out = boost_event(ev(0.0, 1000.0), Boost(v=0.6 * C))
    assert out.t == pytest.approx(-0.0025, rel=1e-15)
    assert out.x == pytest.approx(1250.0, rel=1e-15)
    assert out.frame == "boys'"


def test_boost_second_reference_pair():
    out = boost_event(ev(0.002, 1000.0), Boost(v=0.6 * C))
    assert out.t == pytest.approx(0.0, abs=1e-18)
    assert out.x == pytest.approx(800.0, rel=1e-15)


def test_identity_boost():
    e = ev(0.37, -42.0, label="probe")
    out = boost_event(e, Boost(v=0.0))
    assert out.t == e.t and out.x == e.x and out.label == "probe"


def test_frame_label_toggles():
    e = ev(0.0, 1.0, frame="lab'")
    assert boost_event(e, Boost(v=1000.0)).frame == "lab"
    assert boost_event(e, Boost(v=1000.0), target_frame="girls").frame == "girls"


@pytest.mark.parametrize("seed", [0, 1])
def test_inverse_boost_roundtrip(seed):
    rng = np.random.default_rng(seed)
    for _ in range(200):
        e = ev(float(rng.uniform(-10, 10)), float(rng.uniform(-1e6, 1e6)))
        b = Boost(v=float(rng.uniform(-0.99, 0.99)) * C)
        back = boost_event(boost_event(e, b), b.inverse())
        scale = max(abs(e.t), abs(e.x) / C, 1e-9)
        assert abs(back.t - e.t) < 1e-9 * scale
        assert abs(back.x - e.x) < 1e-9 * scale * C


@pytest.mark.parametrize("seed", [2, 3])
def test_interval_preserved_by_boost(seed):
    rng = np.random.default_rng(seed)
    origin = ev(0.0, 0.0)
    for _ in range(200):
        e = ev(float(rng.uniform(-10, 10)), float(rng.uniform(-1e6, 1e6)))
        b = Boost(v=float(rng.uniform(-0.99, 0.99)) * C)
        before = interval(origin, e)
        moved = boost_event(e, b)
        after = (C * moved.t) ** 2 - moved.x ** 2
        scale = max(abs(before), (C * e.t) ** 2 + e.x ** 2)
        assert abs(after - before) < 1e-9 * scale


# ------------------------------------------------------------- simultaneity

def test_rest_frame_keeps_one_class():
    classes = simultaneity_classes([ev(0.0, 0.0), ev(0.0, 1000.0)], Boost(v=0.0))
    assert len(classes) == 1
    assert classes[0].time == 0.0


def test_boost_splits_simultaneity():
    classes = simultaneity_classes([ev(0.0, 0.0, label="event1"),
                                    ev(0.0, 1000.0, label="event2")],
                                   Boost(v=0.6 * C))
    assert len(classes) == 2
    assert classes[0].time == pytest.approx(-0.0025, rel=1e-12)
    assert classes[1].time == pytest.approx(0.0, abs=1e-15)
    assert classes[0].events[0].label == "event2"


def test_boost_aligns_different_times():
    classes = simultaneity_classes([ev(0.0, 0.0), ev(0.002, 1000.0)],
                                   Boost(v=0.6 * C))
    assert len(classes) == 1
    assert classes[0].time == pytest.approx(0.0, abs=1e-15)


def test_mixed_frames_rejected():
    with pytest.raises(MixedFrames):
        simultaneity_classes([ev(0.0, 0.0, frame="boys"),
                              ev(0.0, 0.0, frame="girls")], Boost(v=0.0))
    with pytest.raises(MixedFrames):
        interval_class(ev(0, 0, frame="a"), ev(0, 1, frame="b"))


# ----------------------------------------------------------------- interval

def test_spacelike():
    assert interval_class(ev(0.0, 0.0), ev(0.0, 5.0)) == "spacelike"


def test_timelike():
    assert interval_class(ev(0.0, 0.0), ev(1.0, 0.0)) == "timelike"


def test_null():
    assert interval_class(ev(0.0, 0.0), ev(1.0, C)) == "null"


@pytest.mark.parametrize("seed", [4, 5])
def test_interval_class_boost_invariant(seed):
    rng = np.random.default_rng(seed)
    for _ in range(100):
        kind = rng.integers(3)
        dt = float(rng.uniform(0.1, 5.0))
        if kind == 0:
            e2 = ev(dt, C * dt)                                    # null
        elif kind == 1:
            e2 = ev(dt, C * dt * float(rng.uniform(0, 0.9)))       # timelike
        else:
            e2 = ev(dt, C * dt * float(rng.uniform(1.1, 5.0)))     # spacelike
        e1 = ev(0.0, 0.0)
        b = Boost(v=float(rng.uniform(-0.95, 0.95)) * C)
        before = interval_class(e1, e2)
        after = interval_class(boost_event(e1, b), boost_event(e2, b))
        assert before == after


# ----------------------------------------------------------------- scenario

def test_scenario_reference_numbers():
    report = corealness_chain()
    assert report.gamma == pytest.approx(1.25, rel=1e-15)
    assert report.boost.v == pytest.approx(0.6 * C)

    b2 = report.boosted["event2"]
    assert (b2.t, b2.x) == (pytest.approx(-0.0025, rel=1e-12),
                            pytest.approx(1250.0, rel=1e-12))
    b3 = report.boosted["event3"]
    assert (b3.t, b3.x) == (pytest.approx(0.0, abs=1e-15),
                            pytest.approx(800.0, rel=1e-12))


def test_scenario_links_verified_by_boosts():
    report = corealness_chain()
    by_name = dict(report.events)
    for link in report.links:
        ea, eb = by_name[link.a], by_name[link.b]
        if link.frame == "boys":
            assert ea.t == pytest.approx(link.time, abs=1e-15)
            assert eb.t == pytest.approx(link.time, abs=1e-15)
        else:
            ba = report.boosted[link.a]
            bb = report.boosted[link.b]
            assert ba.t == pytest.approx(link.time, abs=1e-15)
            assert bb.t == pytest.approx(link.time, abs=1e-15)


def test_scenario_lengths():
    lengths = corealness_chain().lengths
    assert lengths["joe_bob_boys"] == pytest.approx(1000.0)
    assert lengths["joe_bob_girls"] == pytest.approx(800.0)
    assert lengths["kim_alice_girls"] == pytest.approx(450.0)
    assert lengths["kim_alice_boys"] == pytest.approx(360.0)


def test_scenario_chain_narrative():
    report = corealness_chain()
    assert any("Bob passes Alice" in c for c in report.conclusions)
    assert any("past" in c for c in report.conclusions)
    assert any("future" in c for c in report.conclusions)
    # event pairs 1-2 and 1-3 are spacelike separated: corealness by
    # simultaneity, not by causal contact
    e = report.events
    assert interval_class(e["event1"], e["event2"]) == "spacelike"
    assert interval_class(e["event1"], e["event3"]) == "spacelike"


# ---------------------------------------------------------------- documents

def test_event_document_roundtrip():
    doc = {"frame": "boys",
           "events": [{"label": "event1", "t": 0.0, "x": 0.0},
                      {"label": "event2", "t": 0.0, "x": 1000.0}]}
    events = load_events(doc)
    assert [e.label for e in events] == ["event1", "event2"]
    assert events[0].frame == "boys"
    assert events_document(events) == doc


def test_bad_event_documents():
    with pytest.raises(ValueError):
        load_events({"frame": "boys", "events": []})
    with pytest.raises(ValueError):
        load_events({"frame": "boys", "events": [{"t": 0.0}]})
    with pytest.raises(ValueError):
        load_events({"frame": "boys", "events": [{"t": float("nan"), "x": 0.0}]})


def test_nonfinite_event_rejected():
    with pytest.raises(ValueError):
        SpacetimeEvent(t=math.inf, x=0.0)
