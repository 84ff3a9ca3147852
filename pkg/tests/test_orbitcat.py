import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eckzeta.orbitcat import (
    ELLIPTIC,
    NEG_HYP,
    POS_HYP,
    BoundaryQuadruple,
    OrbitCatalog,
    OrbitKind,
    OrbitSet,
    SimpleOrbit,
    cz_parity,
    enumerate_orbit_sets,
    iter_orbit_sets_upto,
    iterate_sign,
    lefschetz_sign,
    local_zeta,
    local_zeta_oracle,
    orbit_set_action,
    orbit_set_degree,
    orbit_set_grading,
    respects_multiplicities,
    sign_from_linearized,
    validate_catalog,
)
from eckzeta.randomcat import random_catalog


def unknot():
    return OrbitCatalog.standard(1, [SimpleOrbit("g1", ELLIPTIC, (1,), Fraction(3, 2))])


class TestSigns:
    def test_lefschetz_signs(self):
        assert [lefschetz_sign(k) for k in (ELLIPTIC, POS_HYP, NEG_HYP)] == [1, -1, 1]

    def test_cz_parity_matches_sign(self):
        for k in OrbitKind:
            assert (-1) ** cz_parity(k) == -lefschetz_sign(k)

    def test_linearized_examples(self):
        rot = [[0, -1], [1, 0]]                      # rotation by 90 degrees: elliptic
        assert sign_from_linearized(rot) == 1
        assert sign_from_linearized([[2, 0], [0, Fraction(1, 2)]]) == -1  # positive eigenvalues
        assert sign_from_linearized([[-2, 0], [0, Fraction(-1, 2)]]) == 1  # negative eigenvalues

    def test_degenerate(self):
        with pytest.raises(ValueError):
            sign_from_linearized([[1, 0], [0, 1]])

    def test_iterates(self):
        assert [iterate_sign(NEG_HYP, i) for i in range(1, 5)] == [1, -1, 1, -1]
        assert all(iterate_sign(POS_HYP, i) == -1 for i in range(1, 5))
        with pytest.raises(ValueError):
            iterate_sign(ELLIPTIC, 0)

    @pytest.mark.parametrize("L", [[[2, 1], [1, 1]], [[3, 2], [1, 1]], [[-2, -1], [-1, -1]], [[-3, 1], [-1, 0]]])
    @pytest.mark.parametrize("i", [1, 2, 3, 4])
    def test_iterate_sign_of_hyperbolic_matrix(self, L, i):
        # det(I - L^i) for an area-preserving hyperbolic L agrees with iterate_sign
        kind = POS_HYP if L[0][0] + L[1][1] > 2 else NEG_HYP
        P = [[1, 0], [0, 1]]
        for _ in range(i):
            P = [[sum(P[r][k] * L[k][s] for k in range(2)) for s in range(2)] for r in range(2)]
        assert sign_from_linearized(P) == iterate_sign(kind, i)


class TestOrbitSet:
    def test_canonical_and_hashable(self):
        a = OrbitSet({"b": 1, "a": 2})
        b = OrbitSet([("a", 1), ("b", 1), ("a", 1)])
        assert a == b and hash(a) == hash(b)
        assert str(a) == "a^2 b"

    def test_zero_multiplicity_dropped(self):
        assert OrbitSet({"a": 0}) == OrbitSet()

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            OrbitSet({"a": -1})

    def test_plus_minus(self):
        s = OrbitSet.of("a", "c")
        assert s.plus("b") == OrbitSet.of("a", "b", "c")
        assert s.plus("a") == OrbitSet({"a": 2, "c": 1})
        assert s.minus("a") == OrbitSet.of("c")
        assert s.minus("b") is None

    @given(st.dictionaries(st.sampled_from("abcde"), st.integers(0, 3)), st.sampled_from("abcde"))
    def test_plus_then_minus(self, d, oid):
        s = OrbitSet(d)
        assert s.plus(oid).minus(oid) == s
        assert s.plus(oid) == OrbitSet({**d, oid: d.get(oid, 0) + 1})

    def test_split(self):
        inner, outer = OrbitSet.of("g1", "e1", "e1").split(frozenset({"g1"}))
        assert inner == OrbitSet.of("g1") and outer == OrbitSet({"e1": 2})


class TestCatalog:
    def test_unknot_valid(self):
        assert validate_catalog(unknot()) == []

    def test_kind_violation(self):
        cat = unknot()
        q = cat.boundary[0]
        bad = BoundaryQuadruple(q.e, SimpleOrbit("h1", ELLIPTIC, (1,)), q.e_plus, q.h_plus)
        problems = validate_catalog(OrbitCatalog(1, cat.interior, (bad,)))
        assert any("kind violation" in p for p in problems)

    def test_meridian_violation(self):
        q = OrbitCatalog.standard(2).boundary
        swapped = (q[1], q[0])
        problems = validate_catalog(OrbitCatalog(2, (), swapped))
        assert any("meridian-degree violation" in p for p in problems)

    def test_duplicate_and_bad_degrees(self):
        cat = OrbitCatalog.standard(1, [SimpleOrbit("e1", ELLIPTIC, (1,)), SimpleOrbit("x", ELLIPTIC, (0,))])
        problems = validate_catalog(cat)
        assert any("used 2 times" in p for p in problems)
        assert any("zero vector" in p for p in problems)

    def test_wrong_boundary_count(self):
        cat = OrbitCatalog(2, (), OrbitCatalog.standard(2).boundary[:1])
        assert any("boundary quadruples" in p for p in validate_catalog(cat))

    def test_alphabet_hat_drops_e_plus(self):
        ids = [o.id for o in unknot().alphabet(hat=True)]
        assert ids == ["g1", "e1", "h1", "hp1"]


class TestEnumeration:
    def test_multiplicity_rule(self):
        cat = unknot()
        assert respects_multiplicities(cat, OrbitSet({"g1": 3}))
        assert not respects_multiplicities(cat, OrbitSet({"h1": 2}))

    def test_degree_grading_action(self):
        cat = unknot()
        s = OrbitSet({"g1": 2, "h1": 1})
        assert orbit_set_degree(cat, s) == (3,)
        assert orbit_set_grading(cat, s) == 1
        assert orbit_set_action(cat, s) is None
        assert orbit_set_action(cat, OrbitSet({"g1": 2})) == 3

    def test_empty_knot_catalog_degree_one(self):
        found = enumerate_orbit_sets(OrbitCatalog.standard(1), (1,))
        assert [str(s) for s in found] == ["e1", "ep1", "h1", "hp1"]

    def test_bad_target(self):
        with pytest.raises(ValueError):
            enumerate_orbit_sets(unknot(), (1, 1))
        with pytest.raises(ValueError):
            enumerate_orbit_sets(unknot(), (-1,))

    def test_upto_matches_exact_enumeration(self):
        rng = random.Random(7)
        for _ in range(15):
            cat = random_catalog(rng, max_interior=4)
            cut = 4
            upto = set(iter_orbit_sets_upto(cat, cut))
            exact = set()
            for d in itertools.product(range(cut + 1), repeat=cat.nvars):
                if sum(d) <= cut:
                    exact.update(enumerate_orbit_sets(cat, d))
            assert upto == exact
            assert all(respects_multiplicities(cat, s) for s in upto)

    def test_enumeration_sorted_and_unique(self):
        cat = OrbitCatalog.standard(2)
        found = enumerate_orbit_sets(cat, (2, 1))
        assert found == sorted(set(found))


class TestLocalZeta:
    @pytest.mark.parametrize("kind", list(OrbitKind))
    @pytest.mark.parametrize("deg", [(1,), (2,), (1, 1), (0, 3), (1, 0, 2)])
    def test_closed_form_matches_oracle(self, kind, deg):
        o = SimpleOrbit("x", kind, deg)
        assert local_zeta(o, 10) == local_zeta_oracle(o, 10)

    def test_examples(self):
        assert str(local_zeta(SimpleOrbit("x", POS_HYP, (1,)), 5)) == "1 - t1"
        assert str(local_zeta(SimpleOrbit("x", NEG_HYP, (2,)), 5)) == "1 + t1^2"
        assert str(local_zeta(SimpleOrbit("x", ELLIPTIC, (2,)), 5)) == "1 + t1^2 + t1^4"

    def test_zero_degree_rejected(self):
        with pytest.raises(ValueError):
            local_zeta(SimpleOrbit("x", ELLIPTIC, (0,)), 3)
