import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eckzeta.alexander import (
    FinitenessError,
    alex_fibered_knot,
    alex_from_catalog,
    as_matrix,
    char_det,
    char_det_cofactor,
    delta_from_alex,
    lefschetz_number,
    polynomial_result,
    torres_check,
    torres_sides,
)
from eckzeta.orbitcat import ELLIPTIC, NEG_HYP, POS_HYP, OrbitCatalog, SimpleOrbit
from eckzeta.randomcat import random_matrix
from eckzeta.ring import LaurentPoly, doteq_equal, parse_poly

TREFOIL = [[1, -1], [1, 0]]
FIG8 = [[2, 1], [1, 1]]


def unknot():
    return OrbitCatalog.standard(1, [SimpleOrbit("g1", ELLIPTIC, (1,), Fraction(3, 2))])


def square(max_size=5, lo=-3, hi=3):
    return st.integers(0, max_size).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


class TestCharDet:
    def test_trefoil(self):
        assert str(char_det(TREFOIL)) == "1 - t1 + t1^2"

    def test_figure_eight(self):
        assert str(char_det(FIG8)) == "1 - 3*t1 + t1^2"

    def test_empty(self):
        assert char_det([]) == LaurentPoly.one(1)

    def test_torus_knot_formula(self):
        # (t^6 - 1)(t - 1) / ((t^2 - 1)(t^3 - 1)) for the trefoil
        num = parse_poly("t1^6 - 1") * parse_poly("t1 - 1")
        assert num == char_det(TREFOIL) * parse_poly("t1^2 - 1") * parse_poly("t1^3 - 1")

    def test_zero_diagonal(self):
        M = [[0, 1, 0], [1, 0, 0], [0, 0, 2]]
        assert char_det(M) == char_det_cofactor(M)

    def test_singular_pencil(self):
        assert char_det([[0]]) == LaurentPoly.one(1)

    def test_validation(self):
        with pytest.raises(ValueError):
            as_matrix([[1, 2]])
        with pytest.raises(TypeError):
            as_matrix([[1.5]])
        with pytest.raises(ValueError):
            char_det_cofactor([[0] * 9 for _ in range(9)])

    @settings(max_examples=100, deadline=None)
    @given(square())
    def test_bareiss_matches_cofactor_oracle(self, M):
        assert char_det(M) == char_det_cofactor(M)

    @given(square(4))
    def test_constant_term_and_degree(self, M):
        d = char_det(M)
        assert d.coeff((0,)) == 1
        assert (d.max_total_degree() or 0) <= len(M)


class TestAlex:
    def test_trefoil_series(self):
        assert str(alex_fibered_knot(TREFOIL, 5)) == "1 + t1^2 + t1^3 + t1^4 + t1^5"

    def test_unknot_series(self):
        assert str(alex_fibered_knot([], 4)) == "1 + t1 + t1^2 + t1^3 + t1^4"

    def test_cutoff_too_small(self):
        with pytest.raises(ValueError):
            alex_fibered_knot(TREFOIL, 1)

    def test_lefschetz(self):
        assert lefschetz_number(TREFOIL) == 0
        assert lefschetz_number(FIG8) == -2
        assert alex_fibered_knot(FIG8, 3).poly.coeff((1,)) == -2

    def test_delta_round_trip(self):
        for M in (TREFOIL, FIG8, []):
            a = alex_fibered_knot(M, len(M) + 2)
            assert doteq_equal(delta_from_alex(a, 1).value, char_det(M))

    def test_trefoil_delta_from_long_series(self):
        assert str(delta_from_alex(alex_fibered_knot(TREFOIL, 8), 1)) == "1 - t1 + t1^2"

    def test_finiteness_guard(self):
        # at cutoff = deg the product reaches the cutoff itself: not certifiable
        with pytest.raises(FinitenessError):
            delta_from_alex(alex_fibered_knot(TREFOIL, 2), 1)

    def test_catalog_alex_is_series_for_unknot(self):
        a = alex_from_catalog(unknot(), 8)
        assert a.kind == "series"
        assert str(a) == "1 + t1 + t1^2 + t1^3 + t1^4 + t1^5 + t1^6 + t1^7 + t1^8"
        assert str(delta_from_alex(a, 1)) == "1"

    def test_link_catalog_is_polynomial(self):
        # two hyperbolic orbits give a finite product, detectable as a polynomial
        cat = OrbitCatalog.standard(2, [SimpleOrbit("x", POS_HYP, (1, 1)), SimpleOrbit("y", NEG_HYP, (1, 0))])
        a = alex_from_catalog(cat, 6)
        assert a.kind == "polynomial"
        assert a.value == parse_poly("1 + t1 - t1*t2 - t1^2*t2", 2)
        assert delta_from_alex(a, 2).value == a.value

    def test_link_series_not_certifiable(self):
        cat = OrbitCatalog.standard(2, [SimpleOrbit("g", ELLIPTIC, (1, 1))])
        with pytest.raises(FinitenessError):
            delta_from_alex(alex_from_catalog(cat, 6), 2)

    def test_wrong_nvars(self):
        with pytest.raises(ValueError):
            delta_from_alex(alex_from_catalog(unknot(), 4), 2)

    def test_random_round_trips(self):
        rng = random.Random(3)
        for _ in range(50):
            M = random_matrix(rng)
            a = alex_fibered_knot(M, len(M) + 2)
            assert doteq_equal(delta_from_alex(a, 1).value, char_det(M))
            assert alex_fibered_knot(M, max(len(M), 1)).poly.coeff((1,)) == lefschetz_number(M)


class TestTorres:
    def test_hopf(self):
        assert torres_check(LaurentPoly.one(2), alex_from_catalog(unknot(), 10), (1,))

    def test_split_shape(self):
        assert torres_check(parse_poly("1 + t1*t2", 2), alex_from_catalog(unknot(), 10), (2,))

    def test_negative_control(self):
        lhs, rhs = torres_sides(LaurentPoly.one(2), alex_from_catalog(unknot(), 10), (2,))
        assert str(lhs) == "1" and str(rhs) == "1 + t1"
        assert not torres_check(LaurentPoly.one(2), alex_from_catalog(unknot(), 10), (2,))

    def test_polynomial_sub(self):
        sub = polynomial_result(parse_poly("1 - t1 + t1^2"))
        full = parse_poly("1 - t1 + t1^2", 2) * parse_poly("1 - t1", 2)
        assert torres_check(full, sub, (1,))

    def test_shape_errors(self):
        sub = alex_from_catalog(unknot(), 6)
        with pytest.raises(ValueError):
            torres_sides(LaurentPoly.one(3), sub, (1,))
        with pytest.raises(ValueError):
            torres_sides(LaurentPoly.one(2), sub, (1, 1))
        with pytest.raises(FinitenessError):
            torres_sides(LaurentPoly.one(2), sub, (-1,))

    def test_undetectable_finiteness(self):
        # a series whose product with 1 - t^lk is still infinite
        cat = OrbitCatalog.standard(1, [SimpleOrbit("g1", ELLIPTIC, (1,)), SimpleOrbit("g2", ELLIPTIC, (1,))])
        with pytest.raises(FinitenessError):
            torres_sides(LaurentPoly.one(2), alex_from_catalog(cat, 8), (1,))
