import pytest
from hypothesis import given, strategies as st
from strategies import fields, nonzero_vectors
from src.core.projgeom import (
    ProjPlane,
    ProjPoint,
    enumerate_lines,
    enumerate_planes,
    enumerate_points,
    hyperplane_incidence,
    incident,
    line_points,
    line_through,
    lines_of_space,
    meet,
    parse_plane,
    parse_point,
    plane_coordinate_frame,
    planes_through_line,
    planes_through_point,
    theta,
)
from src.core.gf import field_of_order
from src.entity.config_entity import BudgetConfig
from src.exception import BudgetExceeded, FieldMismatch, FormSyntaxError


def test_theta():
    assert theta(2, 3) == 15
    assert theta(4, 3) == 85
    assert theta(3, 2) == 13
    assert theta(5, 0) == 1
    assert lines_of_space(2) == 35
    assert lines_of_space(3) == 130


def test_enumeration_order(F3):
    points = [P.coords for P in enumerate_points(F3, 1)]
    assert points == [(1, 0), (1, 1), (1, 2), (0, 1)]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_point_and_plane_counts(q):
    ctx = field_of_order(q)
    assert len(enumerate_points(ctx, 3)) == theta(q, 3)
    assert len(enumerate_planes(ctx)) == theta(q, 3)
    assert all(len(on) == theta(q, 2) for on in hyperplane_incidence(ctx, 3))


@pytest.mark.parametrize("q", [2, 3])
def test_lines_of_space(q):
    lines = enumerate_lines(field_of_order(q))
    assert len(lines) == lines_of_space(q)
    assert all(len(line_points(l)) == q + 1 for l in lines)


def test_point_budget(F4):
    with pytest.raises(BudgetExceeded):
        enumerate_points(F4, 3, BudgetConfig(max_field_q=64, max_space_q=16, max_points=50))


def test_parse_point(F4):
    P = parse_point(F4, "(0:t:(t+1):1)")
    assert P.coords == (0, 1, 2, 3)
    assert str(P) == "(0:1:(t):(t+1))"
    with pytest.raises(FormSyntaxError):
        parse_point(F4, "(0:0:0:0)")
    with pytest.raises(FormSyntaxError):
        parse_point(F4, "0:1")


def test_unnormalized_point_rejected(F3):
    with pytest.raises(ValueError):
        ProjPoint(F3, (2, 1))


def test_canonical_line(F2):
    l = line_through(ProjPoint(F2, (0, 0, 0, 1)), ProjPoint(F2, (0, 0, 1, 0)))
    assert l.p0.coords == (0, 0, 1, 0)
    assert l.p1.coords == (0, 0, 1, 1)
    assert [P.coords for P in line_points(l)] == [(0, 0, 1, 0), (0, 0, 1, 1), (0, 0, 0, 1)]


def test_line_needs_distinct_points(F2):
    P = ProjPoint(F2, (1, 0, 0, 0))
    with pytest.raises(ValueError):
        line_through(P, P)


@given(data=st.data())
def test_line_is_independent_of_spanning_pair(data):
    ctx = data.draw(fields)
    u = data.draw(nonzero_vectors(ctx, 4))
    v = data.draw(nonzero_vectors(ctx, 4))
    P, Q = ProjPoint.of(ctx, u), ProjPoint.of(ctx, v)
    if P == Q:
        return
    l = line_through(P, Q)
    points = line_points(l)
    assert P in points and Q in points
    R = next(X for X in points if X not in (P, Q))
    assert line_through(P, R) == l


def test_planes_through_line(F3):
    l = line_through(ProjPoint(F3, (1, 0, 0, 0)), ProjPoint(F3, (0, 1, 0, 0)))
    planes = planes_through_line(l)
    assert len(planes) == 4
    assert all(incident(P, H) for H in planes for P in line_points(l))
    assert len(planes_through_point(ProjPoint(F3, (1, 0, 0, 0)))) == theta(3, 2)


def test_incidence_across_fields(F2, F3):
    with pytest.raises(FieldMismatch):
        incident(ProjPoint(F2, (1, 0, 0, 0)), ProjPlane(F3, (0, 1, 0, 0)))


def test_meet(F3):
    P = meet(ProjPlane(F3, (1, 0, 0)), ProjPlane(F3, (0, 1, 0)))
    assert P.coords == (0, 0, 1)
    with pytest.raises(ValueError):
        meet(ProjPlane(F3, (1, 0, 0)), ProjPlane(F3, (1, 0, 0)))


def test_plane_frames(F3):
    frame = plane_coordinate_frame(parse_plane(F3, "(0:0:0:1)"))
    assert [P.coords for P in frame.points] == [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)]
    frame = plane_coordinate_frame(parse_plane(F3, "(1:0:0:0)"))
    assert [P.coords for P in frame.points] == [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]


@given(data=st.data())
def test_frame_points_lie_on_plane(data):
    ctx = data.draw(fields)
    H = ProjPlane.of(ctx, data.draw(nonzero_vectors(ctx, 4)))
    frame = plane_coordinate_frame(H)
    assert all(incident(P, H) for P in frame.points)
    uvw = data.draw(nonzero_vectors(ctx, 3))
    assert incident(frame.to_space(uvw), H)
