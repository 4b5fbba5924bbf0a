import math

import pytest

from curvelog import common
from curvelog import paths


def test_straight_path_without_poles_on_the_way():
    path = paths.straight_path(0, 2 + 2j, [5j])
    assert len(path.segments) == 1
    assert isinstance(path.segments[0], paths.LineSegment)
    assert path.endpoint == 2 + 2j


def test_detour_passes_above_for_rightward_travel():
    there = paths.straight_path(-1, 1, [0])
    back = paths.straight_path(1, -1, [0])
    arc = next(segment for segment in there.segments if isinstance(segment, paths.ArcSegment))
    assert arc.point(0.5).imag > 0
    assert there.distance_to([0]) > 0.1
    # above on the way there, below on the way back: one clockwise turn
    assert there.concat(back).winding_number(0) == pytest.approx(-1)


def test_detour_keeps_the_side_of_a_nearby_pole():
    path = paths.straight_path(-1, 1, [0.05j])
    arc = next(segment for segment in path.segments if isinstance(segment, paths.ArcSegment))
    assert arc.point(0.5).imag < 0
    assert path.distance_to([0.05j]) > 0.1


def test_polygonal_path_is_contiguous():
    path = paths.polygonal_path([0, 2, 2 + 2j, -1j], [1, 2 + 1j])
    assert path.base == 0
    assert path.endpoint == pytest.approx(-1j)
    assert path.distance_to([1, 2 + 1j]) > 0.1


def test_path_rejects_gaps():
    with pytest.raises(ValueError):
        paths.Path(0, [paths.LineSegment(0, 1), paths.LineSegment(1.5, 2)])


def test_loops_must_close():
    with pytest.raises(ValueError):
        paths.Loop(0, [paths.LineSegment(0, 1)])
    circle = paths.Loop(1, [paths.ArcSegment(0, 1, 0, 2 * math.pi)], 'circle')
    assert circle.winding_number(0) == pytest.approx(1)
    assert circle.inverse().winding_number(0) == pytest.approx(-1)
    assert circle.compose(circle).winding_number(0) == pytest.approx(2)


def test_lengths_and_reversal():
    path = paths.Path.through([0, 3, 3 + 4j])
    assert path.length == pytest.approx(7)
    reverse = path.reversed()
    assert reverse.base == 3 + 4j
    assert reverse.endpoint == 0
    half_circle = paths.ArcSegment(0, 2, 0, math.pi)
    assert half_circle.length == pytest.approx(2 * math.pi)
    assert half_circle.end == pytest.approx(-2)


def test_clearance_guard():
    with pytest.raises(common.PathTooClose):
        paths.Path.through([-1, 1]).check_clearance([0, 5])
    assert paths.Path.through([-1 + 1j, 1 + 1j]).check_clearance([0, 5]) == pytest.approx(1)


def test_arc_radius_must_be_positive():
    with pytest.raises(common.InfeasibleRadius):
        paths.ArcSegment(0, 0, 0, 1)


def test_json_codec():
    path = paths.straight_path(-1, 2 + 1j, [0, 1])
    decoded = paths.Path.from_json(path.to_json())
    assert decoded.base == path.base
    assert decoded.endpoint == pytest.approx(path.endpoint)
    assert len(decoded.segments) == len(path.segments)
    with pytest.raises(ValueError):
        paths.segment_from_json({'spiral': {}})
