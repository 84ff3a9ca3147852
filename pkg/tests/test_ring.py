from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eckzeta.ring import (
    LaurentPoly,
    RationalSeries,
    TruncatedSeries,
    doteq_equal,
    doteq_normalize,
    exp_series,
    geometric_series,
    log_series,
    parse_poly,
    poly_arith,
    render,
    series_mul,
    substitute_one,
    truncate,
    unit_minus_monomial,
)


def P(text, n=None):
    return parse_poly(text, n)


def laurent(nvars, lo=-3, hi=3, max_terms=5):
    exps = st.tuples(*[st.integers(lo, hi)] * nvars)
    return st.dictionaries(exps, st.integers(-5, 5), max_size=max_terms).map(lambda d: LaurentPoly(d, nvars))


def nonneg(nvars, hi=4):
    return laurent(nvars, 0, hi)


class TestLaurentPoly:
    def test_zero_coefficients_dropped(self):
        p = LaurentPoly({(1,): 0, (2,): 3}, 1)
        assert p.support() == [(2,)]

    def test_exponent_length_checked(self):
        with pytest.raises(ValueError):
            LaurentPoly({(1, 2): 1}, 1)

    def test_float_coefficient_rejected(self):
        with pytest.raises(TypeError):
            LaurentPoly({(1,): 1.5}, 1)

    def test_mixed_nvars_rejected(self):
        with pytest.raises(ValueError):
            LaurentPoly.one(1) + LaurentPoly.one(2)

    def test_square_of_binomial(self):
        assert poly_arith("mul", P("1 - t1"), P("1 - t1")) == P("1 - 2*t1 + t1^2")

    def test_negative_powers(self):
        p = P("t1^-1 + 1")
        assert p * LaurentPoly.monomial((1,)) == P("1 + t1")

    def test_pow(self):
        assert P("1 + t1") ** 3 == P("1 + 3*t1 + 3*t1^2 + t1^3")

    def test_max_total_degree(self):
        assert P("1 + t1*t2^2", 2).max_total_degree() == 3
        assert LaurentPoly.zero(2).max_total_degree() is None


class TestRender:
    def test_examples(self):
        assert render(P("t1^2 - 3*t1 + 1")) == "1 - 3*t1 + t1^2"
        assert render(LaurentPoly.zero(1)) == "0"
        assert render(P("-t1")) == "-t1"

    def test_t1_before_t2_within_degree(self):
        assert render(P("t2 + t1", 2)) == "t1 + t2"
        assert render(P("t2^2 + t1*t2 + t1^2", 2)) == "t1^2 + t1*t2 + t2^2"

    def test_negative_exponent(self):
        assert render(P("t1^-1 + 1")) == "t1^-1 + 1"

    @given(laurent(2))
    def test_round_trip(self, p):
        assert parse_poly(render(p), 2) == p

    def test_parse_errors(self):
        for bad in ["", "1 + x", "t0", "2**t1", "1 ++ t1"]:
            with pytest.raises(ValueError):
                parse_poly(bad)

    def test_parse_declared_too_small(self):
        with pytest.raises(ValueError):
            parse_poly("t3", 2)


class TestDoteq:
    def test_normalize_shift_and_sign(self):
        assert doteq_normalize(P("-t1^3 + 3*t1^4 - t1^5")) == P("1 - 3*t1 + t1^2")

    def test_unknot_vs_one_plus_t(self):
        assert not doteq_equal(LaurentPoly.one(1), P("1 + t1"))

    def test_mismatched_vars(self):
        with pytest.raises(ValueError):
            doteq_equal(LaurentPoly.one(1), LaurentPoly.one(2))

    @given(laurent(2), st.tuples(st.integers(-4, 4), st.integers(-4, 4)), st.sampled_from([1, -1]))
    def test_invariant_under_units(self, p, shift, sign):
        q = p.shift(shift).scale(sign)
        assert doteq_normalize(q) == doteq_normalize(p)

    @given(laurent(2))
    def test_idempotent(self, p):
        n = doteq_normalize(p)
        assert doteq_normalize(n) == n


class TestSubstitute:
    def test_drop_last(self):
        assert substitute_one(P("1 + t1*t2", 2), 2) == P("1 + t1")

    def test_collisions_add(self):
        assert substitute_one(P("t2 - t1*t2 + t1", 2), 2) == LaurentPoly.one(1)

    def test_range(self):
        with pytest.raises(IndexError):
            substitute_one(P("t1"), 2)

    @given(laurent(3), laurent(3))
    def test_ring_homomorphism(self, p, q):
        assert substitute_one(p * q, 2) == substitute_one(p, 2) * substitute_one(q, 2)


class TestSeries:
    def test_geometric_times_one_minus(self):
        s = series_mul(geometric_series((1,), 6), truncate(unit_minus_monomial((1,)), 6))
        assert s == TruncatedSeries.one(1, 6)

    def test_geometric_multivariable(self):
        s = geometric_series((1, 1), 5)
        assert render(s.poly) == "1 + t1*t2 + t1^2*t2^2"

    def test_truncation_drops_high_terms(self):
        assert truncate(P("1 + t1^5"), 4).poly == LaurentPoly.one(1)

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            truncate(P("t1^-1"), 3)

    def test_cutoff_mismatch_raises(self):
        with pytest.raises(ValueError):
            TruncatedSeries.one(1, 3) == TruncatedSeries.one(1, 4)

    def test_geometric_zero_exponent(self):
        with pytest.raises(ValueError):
            geometric_series((0, 0), 4)

    @settings(max_examples=60)
    @given(nonneg(2), nonneg(2), nonneg(2), st.integers(0, 6))
    def test_associative_and_commutative(self, a, b, c, cut):
        A, B, C = (truncate(x, cut) for x in (a, b, c))
        assert series_mul(A, B) == series_mul(B, A)
        assert series_mul(series_mul(A, B), C) == series_mul(A, series_mul(B, C))

    @given(nonneg(2), nonneg(2), st.integers(0, 6))
    def test_truncation_is_a_ring_map(self, a, b, cut):
        assert series_mul(truncate(a, cut), truncate(b, cut)) == truncate(a * b, cut)


class TestExpLog:
    # exp/log over the rationals are the oracle for every local zeta factor
    @pytest.mark.parametrize("cut", [0, 1, 5, 9])
    def test_exp_minus_log_is_geometric(self, cut):
        s = exp_series(log_series((1,), cut, lambda i: 1)).to_integer_series()
        assert s == geometric_series((1,), cut)

    def test_exp_log_one_plus(self):
        s = exp_series(log_series((1, 2), 9, lambda i: (-1) ** (i + 1))).to_integer_series()
        assert s.poly == P("1 + t1*t2^2", 2)

    def test_exp_needs_zero_constant(self):
        with pytest.raises(ValueError):
            exp_series(RationalSeries({(0,): 1}, 1, 3))

    def test_non_integer_rejected(self):
        with pytest.raises(ArithmeticError):
            RationalSeries({(1,): Fraction(1, 2)}, 1, 3).to_integer_series()
