"""Homotheties, translations, composition, conjugation, six-point identity."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planeconvex.errors import DegenerateRatio
from planeconvex.geom import Point
from planeconvex.transforms import (
    IDENTITY,
    Homothety,
    PlaneMap,
    Translation,
    compose,
    conjugate_homothety,
    homothety,
    inverse,
    six_point_identity,
    translation,
)

F = Fraction

rational = st.fractions(min_value=-10, max_value=10, max_denominator=32)
nonzero_rational = rational.filter(lambda x: x != 0)
positive_ratio = st.fractions(min_value=F(1, 32), max_value=10, max_denominator=32)


def maps_equal_by_evaluation(m1: PlaneMap, m2: PlaneMap) -> bool:
    """Exact equality of affine maps via three non-collinear sample points."""
    pts = [Point(F(0), F(0)), Point(F(1), F(0)), Point(F(0), F(1))]
    return all(m1.apply(p) == m2.apply(p) for p in pts)


class TestHomothety:
    def test_half_ratio_at_origin(self):
        m = homothety(Point(F(0), F(0)), F(1, 2))
        assert m.apply(Point(F(1), F(0))) == Point(F(1, 2), F(0))

    def test_ratio_one_is_identity(self):
        m = homothety(Point(F(3), F(7)), F(1))
        assert m.is_identity()
        assert m.apply(Point(F(9), F(-2))) == Point(F(9), F(-2))

    def test_rectangle_corner_image(self):
        m = homothety(Point(F(4), F(2)), F(1, 2))
        assert m.apply(Point(F(-2), F(0))) == Point(F(1), F(1))

    def test_zero_ratio_rejected(self):
        with pytest.raises(DegenerateRatio):
            homothety(Point(F(0), F(0)), F(0))


class TestCompose:
    def test_inverse_pair_gives_identity(self):
        m = compose(homothety(Point(F(0), F(0)), F(2)), homothety(Point(F(0), F(0)), F(1, 2)))
        assert m.is_identity()

    def test_translations_add(self):
        m = compose(translation(F(1), F(0)), translation(F(0), F(1)))
        assert isinstance(m, Translation)
        assert m.apply(Point(F(0), F(0))) == Point(F(1), F(1))

    def test_homotheties_with_reciprocal_ratios_translate(self):
        m = compose(homothety(Point(F(0), F(0)), F(2)), homothety(Point(F(1), F(0)), F(1, 2)))
        assert isinstance(m, Translation)
        assert m.apply(Point(F(0), F(0))) == Point(F(1), F(0))
        assert m.apply(Point(F(2), F(2))) == Point(F(3), F(2))


class TestInverse:
    def test_homothety_inverse(self):
        m = inverse(homothety(Point(F(3), F(1)), F(4)))
        assert isinstance(m, Homothety)
        assert m.center == Point(F(3), F(1)) and m.ratio == F(1, 4)

    def test_translation_inverse(self):
        m = inverse(translation(F(2), F(-5)))
        assert m.apply(Point(F(0), F(0))) == Point(F(-2), F(5))

    def test_identity_self_inverse(self):
        assert inverse(IDENTITY).is_identity()

    @given(rational, rational, positive_ratio)
    def test_inverse_by_evaluation(self, cx, cy, r):
        m = homothety(Point(cx, cy), r)
        assert maps_equal_by_evaluation(compose(inverse(m), m), IDENTITY)


class TestConjugateHomothety:
    def test_translation_conjugation(self):
        m = conjugate_homothety(translation(F(1), F(0)), Point(F(0), F(0)), F(2))
        assert isinstance(m, Homothety)
        assert m.center == Point(F(1), F(0)) and m.ratio == F(2)

    def test_identity_conjugation(self):
        m = conjugate_homothety(IDENTITY, Point(F(5), F(5)), F(3))
        assert isinstance(m, Homothety)
        assert m.center == Point(F(5), F(5)) and m.ratio == F(3)

    def test_homothety_conjugation_two_point_oracle(self):
        phi = homothety(Point(F(0), F(0)), F(2))
        m = conjugate_homothety(phi, Point(F(1), F(1)), F(1, 2))
        expect = homothety(Point(F(2), F(2)), F(1, 2))
        for p in (Point(F(0), F(0)), Point(F(4), F(0))):
            assert m.apply(p) == expect.apply(p)

    @given(rational, rational, positive_ratio, rational, rational, nonzero_rational)
    def test_conjugation_identity_exact(self, cx, cy, r, px, py, xi):
        # the conjugate of a shrink about p0 moves the shrink to phi(p0):
        # conj(phi, p0, xi) o phi == phi o H_{p0}^xi, exactly
        phi = homothety(Point(cx, cy), r)
        p0 = Point(px, py)
        lhs = compose(conjugate_homothety(phi, p0, xi), phi)
        rhs = compose(phi, Homothety(p0, xi) if xi != 1 else IDENTITY)
        assert maps_equal_by_evaluation(lhs, rhs)


class TestSixPointIdentity:
    def test_xi_one_trivial(self):
        pts, ok = six_point_identity(Point(F(0), F(0)), Point(F(2), F(1)), Point(F(1), F(3)), F(5), F(1))
        assert ok
        assert pts[1] == pts[0]  # X1 == X0

    def test_lambda_one_trivial(self):
        _, ok = six_point_identity(Point(F(1), F(1)), Point(F(2), F(0)), Point(F(0), F(3)), F(1), F(4))
        assert ok

    def test_worked_rational_instance(self):
        pts, ok = six_point_identity(Point(F(0), F(0)), Point(F(2), F(0)), Point(F(0), F(3)), F(2), F(3))
        assert ok
        assert all(p.exact for p in pts)

    def test_zero_parameters_rejected(self):
        with pytest.raises(DegenerateRatio):
            six_point_identity(Point(F(0), F(0)), Point(F(1), F(0)), Point(F(0), F(1)), F(0), F(2))
        with pytest.raises(DegenerateRatio):
            six_point_identity(Point(F(0), F(0)), Point(F(1), F(0)), Point(F(0), F(1)), F(2), F(0))

    @given(rational, rational, rational, rational, rational, rational,
           nonzero_rational, nonzero_rational)
    def test_identity_holds_on_random_rationals(self, ax, ay, bx, by, cx, cy, lam, xi):
        pts, ok = six_point_identity(Point(ax, ay), Point(bx, by), Point(cx, cy), lam, xi)
        assert ok
        assert len(pts) == 5  # x1..x5; the chain closes back on the input x0


class TestGroupClosure:
    @given(rational, rational, positive_ratio, rational, rational, positive_ratio)
    def test_composition_stays_in_group(self, ax, ay, r1, bx, by, r2):
        m = compose(homothety(Point(ax, ay), r1), homothety(Point(bx, by), r2))
        assert isinstance(m, (Homothety, Translation))
        if isinstance(m, Homothety):
            assert m.ratio > 0
        # exact three-point evaluation against the direct composite
        g1 = homothety(Point(ax, ay), r1)
        g2 = homothety(Point(bx, by), r2)
        for p in (Point(F(0), F(0)), Point(F(1), F(0)), Point(F(0), F(1))):
            assert m.apply(p) == g1.apply(g2.apply(p))
