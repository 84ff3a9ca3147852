"""Seeded random catalogs and interior differentials for property and acceptance runs."""

from __future__ import annotations

import random
from fractions import Fraction

from .eckcomplex import InteriorDifferential
from .orbitcat import ELLIPTIC, NEG_HYP, POS_HYP, OrbitCatalog, OrbitSet, SimpleOrbit

KINDS = (ELLIPTIC, POS_HYP, NEG_HYP)
BOUNDARY_ACTIONS = {"e": Fraction(1), "h": Fraction(1), "e_plus": Fraction(2), "h_plus": Fraction(2)}


def random_degree(rng: random.Random, n: int, max_total: int) -> tuple[int, ...]:
    total = rng.randint(1, max_total)
    deg = [0] * n
    for _ in range(total):
        deg[rng.randrange(n)] += 1
    return tuple(deg)


def random_catalog(rng: random.Random, nvars: int | None = None, max_interior: int = 6,
                   max_degree: int = 3, name: str = "random") -> OrbitCatalog:
    n = nvars if nvars is not None else rng.randint(1, 3)
    interior = [
        SimpleOrbit(
            f"g{k + 1}",
            rng.choice(KINDS),
            random_degree(rng, n, max_degree),
            Fraction(rng.randint(3, 40), rng.randint(1, 4)),
        )
        for k in range(rng.randint(0, max_interior))
    ]
    return OrbitCatalog.standard(n, interior, name=name, boundary_actions=BOUNDARY_ACTIONS)


def random_catalog_with_differential(rng: random.Random, nvars: int | None = None, max_interior: int = 5,
                                     max_degree: int = 3, pairs: int | None = None,
                                     name: str = "random") -> tuple[OrbitCatalog, InteriorDifferential]:
    """A catalog plus a nonzero valid interior differential.

    Each cancelling pair is an elliptic or negative hyperbolic orbit ``a`` and a
    positive hyperbolic orbit ``b`` of the same degree and smaller action, with
    entries ``a -> b`` and sometimes ``a c -> b c``.  No source contains any
    ``b``, so the map squares to zero.
    """
    n = nvars if nvars is not None else rng.randint(1, 3)
    k_pairs = pairs if pairs is not None else rng.randint(1, 2)
    base = random_catalog(rng, n, max(max_interior - 2 * k_pairs, 0), max_degree, name)
    interior = list(base.interior)
    targets = []
    entries = []
    for k in range(k_pairs):
        deg = random_degree(rng, n, max_degree)
        act = Fraction(rng.randint(10, 40))
        a = SimpleOrbit(f"a{k + 1}", rng.choice((ELLIPTIC, NEG_HYP)), deg, act)
        b = SimpleOrbit(f"b{k + 1}", POS_HYP, deg, act - Fraction(rng.randint(1, 9), 2))
        interior += [a, b]
        targets.append((a, b))
    cat = OrbitCatalog.standard(n, interior, name=name, boundary_actions=BOUNDARY_ACTIONS)
    others = [o for o in base.interior if o.kind is not POS_HYP]
    for a, b in targets:
        entries.append((OrbitSet.of(a.id), OrbitSet.of(b.id)))
        if others and rng.random() < 0.5:
            c = rng.choice(others)
            entries.append((OrbitSet.of(a.id, c.id), OrbitSet.of(b.id, c.id)))
    return cat, InteriorDifferential(tuple(entries))


def random_matrix(rng: random.Random, max_size: int = 6, lo: int = -3, hi: int = 3) -> list[list[int]]:
    size = rng.randint(0, max_size)
    return [[rng.randint(lo, hi) for _ in range(size)] for _ in range(size)]
