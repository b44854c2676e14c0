"""Convex bodies: hulls, membership, inclusion, support machinery, chords."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planeconvex.bodies import (
    Disk,
    DiskIntersection,
    HullOfUnion,
    Polygon,
    Triangle,
    abundance,
    boundary_samples,
    chord_interval,
    contains_point,
    convex_hull,
    dist_to_body,
    farthest_dist,
    hull_of_union,
    includes,
    interior_point,
    is_edge_free,
    line_boundary_intersections,
    loosely_includes,
    nearest_point,
    open_extension,
    polygonize,
    separating_support_line,
    support_point,
    support_value,
    supporting_line,
    tangents_from_external_point,
    transform_body,
)
from planeconvex.errors import (
    BadRadius,
    DegenerateNucleus,
    EmptyInput,
    NotExternal,
    NotSeparable,
    PreconditionViolated,
)
from planeconvex.fixtures import SQRT3_50, equilateral_triangle
from planeconvex.geom import DirectedLine, Direction, Point, Tolerance
from planeconvex.rng import SplitMix64
from planeconvex.transforms import Translation, homothety
from tests.conftest import random_disk_intersection, rational_point

F = Fraction
EXACT = Tolerance(0.0)


def square(a=0, b=2) -> Polygon:
    return Polygon((Point(a, a), Point(b, a), Point(b, b), Point(a, b)))


class TestConstruction:
    def test_triangle_auto_ccw(self):
        t = Triangle(Point(F(0), F(0)), Point(F(0), F(1)), Point(F(1), F(0)))
        a, b, c = t.points
        from planeconvex.geom import orient2d

        assert orient2d(a, b, c) == 1

    def test_triangle_collinear_rejected(self):
        with pytest.raises(PreconditionViolated):
            Triangle(Point(0, 0), Point(1, 1), Point(2, 2))

    def test_disk_negative_radius_rejected(self):
        with pytest.raises(Exception):
            Disk(Point(0, 0), -1)

    def test_empty_disk_intersection_rejected(self):
        with pytest.raises(EmptyInput):
            DiskIntersection((Disk(Point(0, 0), 1), Disk(Point(5, 0), 1)))


class TestConvexHull:
    def test_already_convex(self):
        h = convex_hull([Point(F(0), F(0)), Point(F(1), F(0)), Point(F(0), F(1))])
        assert set(h.vertices) == {Point(F(0), F(0)), Point(F(1), F(0)), Point(F(0), F(1))}

    def test_collinear_point_absorbed(self):
        h = convex_hull(
            [Point(F(0), F(0)), Point(F(2), F(0)), Point(F(1), F(0)), Point(F(1), F(1))]
        )
        assert set(h.vertices) == {Point(F(0), F(0)), Point(F(2), F(0)), Point(F(1), F(1))}

    def test_singleton(self):
        h = convex_hull([Point(5, 5)])
        assert h.vertices == (Point(5, 5),)

    def test_empty_rejected(self):
        with pytest.raises(EmptyInput):
            convex_hull([])

    @settings(max_examples=60)
    @given(st.lists(st.tuples(
        st.fractions(min_value=-20, max_value=20, max_denominator=16),
        st.fractions(min_value=-20, max_value=20, max_denominator=16),
    ), min_size=1, max_size=10))
    def test_idempotent_and_contains_inputs(self, coords):
        pts = [Point(x, y) for x, y in coords]
        h = convex_hull(pts)
        assert convex_hull(list(h.vertices)).vertices == h.vertices
        for p in pts:
            assert contains_point(h, p, "closed", EXACT)


class TestHullOfUnion:
    def test_empty_extra_is_same_body(self):
        d = Disk(Point(0, 0), 1)
        assert hull_of_union(d, []) is d

    def test_two_point_segment(self):
        h = hull_of_union(Polygon((Point(F(0), F(0)),)), [Point(F(1), F(0))])
        assert isinstance(h, Polygon)
        assert set(h.vertices) == {Point(F(0), F(0)), Point(F(1), F(0))}

    def test_comet_shaped_hull_membership(self):
        h = hull_of_union(Disk(Point(0.0, 0.0), 1.0), [Point(3.0, 0.0)])
        y = 2 * math.sqrt(2) / 3  # tangent from (3,0) touches at (1/3, 2*sqrt2/3)
        assert contains_point(h, Point(1 / 3, y - 1e-6))
        assert not contains_point(h, Point(1 / 3, y + 1e-3))

    def test_support_is_max_of_parts(self):
        d = Disk(Point(0.0, 0.0), 1.0)
        extra = [Point(3.0, 0.0), Point(0.0, -4.0)]
        h = hull_of_union(d, extra)
        for k in range(16):
            a = 2 * math.pi * k / 16
            nx, ny = math.cos(a), math.sin(a)
            expect = max(
                support_value(d, nx, ny), *(float(p.x) * nx + float(p.y) * ny for p in extra)
            )
            assert abs(support_value(h, nx, ny) - expect) < 1e-9


class TestContainsPoint:
    def test_disk_center_strict(self):
        assert contains_point(Disk(Point(0, 0), 1), Point(0, 0), "strict")

    def test_triangle_boundary_closed_vs_strict(self):
        t = Polygon((Point(F(0), F(0)), Point(F(1), F(0)), Point(F(0), F(1))))
        mid = Point(F(1, 2), F(1, 2))
        assert contains_point(t, mid, "closed", EXACT)
        assert not contains_point(t, mid, "strict", EXACT)

    def test_lens_interior(self):
        di = DiskIntersection((Disk(Point(0, 0), 2), Disk(Point(2, 0), 2)))
        assert contains_point(di, Point(1, 0), "strict")


class TestIncludes:
    def test_internally_tangent_disks(self):
        assert includes(Disk(Point(F(0), F(0)), F(2)), Disk(Point(F(1), F(0)), F(1)))

    def test_incircle_in_equilateral_triangle(self):
        tri = equilateral_triangle().as_polygon()
        assert includes(tri, Disk(Point(F(0), F(0)), F(3)))

    def test_overlapping_disks_not_included(self):
        a = Disk(Point(F(0), F(0)), F(1))
        b = Disk(Point(F(1), F(0)), F(1))
        assert not includes(a, b)
        assert contains_point(b, Point(F(2), F(0)), "closed", EXACT)
        assert not contains_point(a, Point(F(2), F(0)), "closed", EXACT)

    @settings(max_examples=40)
    @given(st.integers(0, 2**32))
    def test_transitive_with_hulls(self, seed):
        rng = SplitMix64(seed)
        pts = [rational_point(rng, -5, 5) for _ in range(6)]
        inner = convex_hull(pts[:3])
        outer = convex_hull(pts)
        assert includes(outer, inner, EXACT)


class TestSupportingLines:
    def test_disk_horizontal(self):
        psl = supporting_line(Disk(Point(0, 0), 1), Direction(1, 0))
        assert abs(float(psl.support.x)) < 1e-12
        assert abs(float(psl.support.y) + 1) < 1e-12

    def test_square_vertical_canonical_support(self):
        psl = supporting_line(square(), Direction(0, 1))
        assert psl.support == Point(2, 0)

    def test_singleton(self):
        psl = supporting_line(Polygon((Point(3, 3),)), Direction(1, 1))
        assert psl.support == Point(3, 3)


class TestSeparatingSupportLine:
    def test_disk_from_external_point(self):
        psl = separating_support_line(Disk(Point(0, 0), 1), Point(3, 0))
        assert abs(float(psl.support.x) - 1) < 1e-9
        assert abs(float(psl.support.y)) < 1e-9

    def test_singleton_canonical(self):
        psl = separating_support_line(Polygon((Point(0, 0),)), Point(0, 5))
        assert psl.support == Point(0, 0)
        assert psl.line.d == Direction(-1, 0)

    def test_interior_point_not_separable(self):
        with pytest.raises(NotSeparable):
            separating_support_line(Disk(Point(0, 0), 1), Point(0, 0))


class TestTangentsFromExternalPoint:
    def test_far_focus(self):
        r, l = tangents_from_external_point(Disk(Point(0, 0), 1), Point(3, 0))
        y = 2 * math.sqrt(2) / 3
        assert abs(float(r.support.x) - 1 / 3) < 1e-9
        assert abs(float(l.support.x) - 1 / 3) < 1e-9
        assert abs(abs(float(r.support.y)) - y) < 1e-9
        assert abs(abs(float(l.support.y)) - y) < 1e-9
        # right tangent (as seen from the focus) comes first
        assert float(r.support.y) > 0 > float(l.support.y)

    def test_near_focus(self):
        r, l = tangents_from_external_point(Disk(Point(0, 0), 1), Point(2, 0))
        assert abs(float(r.support.x) - 0.5) < 1e-9
        assert abs(abs(float(r.support.y)) - math.sqrt(3) / 2) < 1e-9

    def test_interior_focus_rejected(self):
        with pytest.raises(NotExternal):
            tangents_from_external_point(Disk(Point(0, 0), 1), Point(0.5, 0))

    def test_singleton_rejected(self):
        with pytest.raises(DegenerateNucleus):
            tangents_from_external_point(Polygon((Point(0, 0),)), Point(1, 0))


class TestLineBoundaryIntersections:
    def test_diameter_chord(self):
        hits = line_boundary_intersections(
            Disk(Point(0, 0), 1), DirectedLine(Point(-5, 0), Direction(1, 0))
        )
        assert not hits.segment
        got = sorted((round(float(p.x), 9), round(float(p.y), 9)) for p in hits.points)
        assert got == [(-1.0, 0.0), (1.0, 0.0)]

    def test_tangent_line_single_point(self):
        hits = line_boundary_intersections(
            Disk(Point(0, 0), 1), DirectedLine(Point(-5, 1), Direction(1, 0))
        )
        assert not hits.segment
        assert len(hits.points) == 1
        assert abs(float(hits.points[0].y) - 1) < 1e-9

    def test_square_edge_segment(self):
        hits = line_boundary_intersections(
            square(), DirectedLine(Point(-5, 0), Direction(1, 0))
        )
        assert hits.segment
        got = sorted((round(float(p.x), 9), round(float(p.y), 9)) for p in hits.points)
        assert got == [(0.0, 0.0), (2.0, 0.0)]

    def test_secant_through_lens(self):
        di = DiskIntersection((Disk(Point(0, 0), 2), Disk(Point(3, 0), 2)))
        hits = line_boundary_intersections(di, DirectedLine(Point(1.5, -5), Direction(0, 1)))
        assert not hits.segment
        assert len(hits.points) == 2


class TestIsEdgeFree:
    def test_disk(self):
        assert is_edge_free(Disk(Point(1, 1), 2))

    def test_square(self):
        assert not is_edge_free(square())

    def test_lens(self):
        assert is_edge_free(DiskIntersection((Disk(Point(0, 0), 2), Disk(Point(3, 0), 2))))

    def test_singleton(self):
        assert is_edge_free(Polygon((Point(0, 0),)))


class TestOpenExtension:
    def test_disk_dilation(self):
        oe = open_extension(Disk(Point(0, 0), 1), 0.5)
        assert oe.contains(Point(1.49, 0))
        assert not oe.contains(Point(1.5, 0))

    def test_singleton(self):
        oe = open_extension(Polygon((Point(0, 0),)), 1)
        assert oe.contains(Point(0.99, 0))
        assert not oe.contains(Point(1, 0))

    def test_square_corner_metric(self):
        oe = open_extension(square(), 0.1)
        assert oe.contains(Point(2.05, 1))
        assert not oe.contains(Point(2.1, 1))
        assert not oe.contains(Point(2.08, 2.08))  # corner distance ~0.113 > 0.1

    def test_nonpositive_margin_rejected(self):
        with pytest.raises(BadRadius):
            open_extension(Disk(Point(0, 0), 1), 0)


class TestAbundance:
    def test_concentric_disks(self):
        assert abs(abundance(Disk(Point(0, 0), 1), Disk(Point(0, 0), 2)) - 1) < 1e-9

    def test_equal_bodies(self):
        d = Disk(Point(0, 0), 1)
        assert abs(abundance(d, d)) < 1e-9

    def test_disk_in_square(self):
        v = square(-2, 2)
        a = abundance(Disk(Point(0, 0), 1), v)
        assert abs(a - (2 * math.sqrt(2) - 1)) < 1e-6

    def test_precondition(self):
        with pytest.raises(PreconditionViolated):
            abundance(Disk(Point(0, 0), 2), Disk(Point(0, 0), 1))


class TestLooselyIncludes:
    def test_concentric(self):
        assert loosely_includes(Disk(Point(0, 0), 2), Disk(Point(0, 0), 1))

    def test_boundary_contact_fails(self):
        assert not loosely_includes(Disk(Point(0, 0), 2), Disk(Point(1, 0), 1))

    def test_incircle_margin(self):
        tri = equilateral_triangle().as_polygon()
        assert loosely_includes(tri, Disk(Point(F(0), F(0)), F(29, 10)))


class TestTransformBody:
    def test_disk_homothety(self):
        img = transform_body(homothety(Point(F(0), F(0)), F(1, 2)), Disk(Point(F(2), F(0)), F(2)))
        assert isinstance(img, Disk)
        assert img.center == Point(F(1), F(0)) and img.radius == F(1)

    def test_square_translation(self):
        img = transform_body(Translation((1, 0)), square())
        assert isinstance(img, Polygon)
        assert set(img.vertices) == {Point(1, 0), Point(3, 0), Point(3, 2), Point(1, 2)}

    def test_rectangle_counterexample_image(self):
        rect = Polygon((Point(F(-2), F(0)), Point(F(2), F(0)), Point(F(2), F(2)), Point(F(-2), F(2))))
        img = transform_body(homothety(Point(F(4), F(2)), F(1, 2)), rect)
        assert set(img.vertices) == {
            Point(F(1), F(1)), Point(F(3), F(1)), Point(F(3), F(2)), Point(F(1), F(2))
        }

    def test_disk_intersection_stays_in_class(self):
        di = DiskIntersection((Disk(Point(F(0), F(0)), F(2)), Disk(Point(F(2), F(0)), F(2))))
        img = transform_body(homothety(Point(F(0), F(0)), F(2)), di)
        assert isinstance(img, DiskIntersection)
        assert img.disks[1].center == Point(F(4), F(0)) and img.disks[1].radius == F(4)


class TestChordInterval:
    def test_disk_diameter(self):
        iv = chord_interval(Disk(Point(0, 0), 1), DirectedLine(Point(-3, 0), Direction(1, 0)))
        assert iv is not None
        assert abs(iv[0] - 2) < 1e-12 and abs(iv[1] - 4) < 1e-12

    def test_miss(self):
        iv = chord_interval(Disk(Point(0, 0), 1), DirectedLine(Point(-3, 5), Direction(1, 0)))
        assert iv is None

    def test_square_chord(self):
        iv = chord_interval(square(), DirectedLine(Point(-1, 1), Direction(1, 0)))
        assert iv is not None
        assert abs(iv[0] - 1) < 1e-9 and abs(iv[1] - 3) < 1e-9


class TestMiscQueries:
    def test_nearest_point_disk(self):
        np_ = nearest_point(Disk(Point(0, 0), 1), Point(3, 0))
        assert abs(float(np_.x) - 1) < 1e-9

    def test_dist_to_body(self):
        assert abs(dist_to_body(Disk(Point(0, 0), 1), Point(3, 0)) - 2) < 1e-9
        assert dist_to_body(Disk(Point(0, 0), 1), Point(0.5, 0)) == 0.0

    def test_farthest_dist_square(self):
        assert abs(farthest_dist(square(-2, 2), Point(0, 0)) - 2 * math.sqrt(2)) < 1e-9

    def test_interior_point_is_strict(self):
        for u in (
            Disk(Point(0, 0), 1),
            square(),
            DiskIntersection((Disk(Point(0, 0), 2), Disk(Point(3, 0), 2))),
        ):
            assert contains_point(u, interior_point(u), "strict")

    def test_polygonize_exact_hull_of_union(self):
        h = hull_of_union(square(), [Point(3, 1)])
        poly = polygonize(h)
        assert poly is not None
        assert Point(3, 1) in poly.vertices


class TestBoundarySamples:
    @settings(max_examples=25)
    @given(st.integers(0, 2**32))
    def test_samples_lie_on_disk_intersection_boundary(self, seed):
        rng = SplitMix64(seed)
        di = random_disk_intersection(rng)
        for p in boundary_samples(di, 64):
            assert dist_to_body(di, p) < 1e-7
            assert not contains_point(di, p, "strict", Tolerance(1e-7))

    def test_polygon_samples_cover_vertices(self):
        sq = square()
        samples = boundary_samples(sq, 64)
        for v in sq.vertices:
            assert any(abs(float(p.x - v.x)) + abs(float(p.y - v.y)) < 1e-9 for p in samples)
