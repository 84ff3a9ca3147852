"""Cross-module identities checked on hypothesis-chosen random catalogs."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from eckzeta.eckcomplex import build_complex, chi_from_complex, homology_dims
from eckzeta.orbitcat import unit
from eckzeta.randomcat import random_catalog, random_catalog_with_differential
from eckzeta.ring import TruncatedSeries, doteq_normalize, series_mul, truncate, unit_minus_monomial
from eckzeta.zeta import chi_by_enumeration, chi_full, chi_hat

seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(0, 7))
def test_hat_is_full_times_meridian_factors(seed, cut):
    cat = random_catalog(random.Random(seed))
    acc = chi_full(cat, cut).series
    for i in range(cat.nvars):
        acc = series_mul(acc, TruncatedSeries(unit_minus_monomial(unit(cat.nvars, i)), cut))
    assert acc == chi_hat(cat, cut).series


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(0, 7), st.sampled_from(["full", "hat"]))
def test_product_formula_equals_signed_count(seed, cut, flavor):
    cat = random_catalog(random.Random(seed))
    product = chi_full(cat, cut) if flavor == "full" else chi_hat(cat, cut)
    assert product.series == chi_by_enumeration(cat, cut, flavor).series


@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from(["full", "hat"]))
def test_homology_euler_characteristic(seed, flavor):
    cat, diff = random_catalog_with_differential(random.Random(seed), max_interior=4)
    cut = 4
    c = build_complex(cat, diff, flavor, cut)
    expected = (chi_full if flavor == "full" else chi_hat)(cat, cut).series
    assert truncate(chi_from_complex(c, "homology"), cut) == expected


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_homology_is_bounded_by_chains(seed):
    cat, diff = random_catalog_with_differential(random.Random(seed), max_interior=4)
    c = build_complex(cat, diff, "full", 3)
    assert sum(homology_dims(c).dims.values()) <= len(c)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_full_series_normalization_is_stable(seed):
    cat = random_catalog(random.Random(seed))
    p = chi_full(cat, 5).series.poly
    assert doteq_normalize(doteq_normalize(p)) == doteq_normalize(p)
