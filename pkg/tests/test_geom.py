from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tanglab import (
    OverlapError,
    Point,
    Segment,
    format_rat,
    on_segment,
    orient,
    pt,
    rat,
    segment_intersect,
)

F = Fraction

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=16)
points = st.builds(pt, rationals, rationals)


def test_orient_signs():
    assert orient(pt(0, 0), pt(1, 0), pt(0, 1)) == 1
    assert orient(pt(0, 0), pt(1, 0), pt(0, -1)) == -1
    assert orient(pt(0, 0), pt(1, 1), pt(2, 2)) == 0


@given(points, points, points)
def test_orient_antisymmetry(p, q, r):
    assert orient(p, q, r) == -orient(q, p, r) == orient(q, r, p)


def test_on_segment():
    s = Segment(pt(0, 0), pt(4, 2))
    assert on_segment(pt(2, 1), s)
    assert on_segment(pt(0, 0), s)
    assert not on_segment(pt(2, 2), s)
    assert not on_segment(pt(6, 3), s)  # collinear but outside


def test_segment_intersect_proper_crossing():
    p = segment_intersect(Segment(pt(0, 0), pt(2, 2)), Segment(pt(0, 2), pt(2, 0)))
    assert p == pt(1, 1)


def test_segment_intersect_exact_rational_point():
    p = segment_intersect(Segment(pt(0, 0), pt(3, 1)), Segment(pt(0, 1), pt(3, 0)))
    assert p == pt(F(3, 2), F(1, 2))


def test_segment_intersect_disjoint_and_parallel():
    assert segment_intersect(Segment(pt(0, 0), pt(1, 0)), Segment(pt(0, 1), pt(1, 1))) is None
    assert segment_intersect(Segment(pt(0, 0), pt(1, 0)), Segment(pt(2, -1), pt(3, 1))) is None


def test_segment_intersect_endpoint_touch():
    p = segment_intersect(Segment(pt(0, 0), pt(1, 1)), Segment(pt(1, 1), pt(2, 0)))
    assert p == pt(1, 1)


def test_segment_intersect_collinear_point_touch():
    p = segment_intersect(Segment(pt(0, 0), pt(1, 0)), Segment(pt(1, 0), pt(2, 0)))
    assert p == pt(1, 0)


def test_segment_intersect_overlap_raises():
    with pytest.raises(OverlapError):
        segment_intersect(Segment(pt(0, 0), pt(2, 0)), Segment(pt(1, 0), pt(3, 0)))


@given(points, points, points, points)
def test_segment_intersect_symmetric(a, b, c, d):
    if a == b or c == d:
        return
    s1, s2 = Segment(a, b), Segment(c, d)
    try:
        p = segment_intersect(s1, s2)
    except OverlapError:
        with pytest.raises(OverlapError):
            segment_intersect(s2, s1)
        return
    assert segment_intersect(s2, s1) == p
    if p is not None:
        assert on_segment(p, s1) and on_segment(p, s2)


def test_rat_parsing():
    assert rat("3/4") == F(3, 4)
    assert rat("-2") == F(-2)
    assert rat(5) == F(5)
    with pytest.raises((ValueError, ZeroDivisionError)):
        rat("1/0")


@given(rationals)
def test_format_rat_roundtrip(q):
    assert rat(format_rat(q)) == q


def test_format_rat_integers_have_no_slash():
    assert format_rat(F(4, 2)) == "2"
    assert format_rat(F(-6, 4)) == "-3/2"


def test_point_is_exact():
    p = pt("1/3", "2/3")
    assert isinstance(p.x, F) and p.x * 3 == 1 and p.y * 3 == 2
