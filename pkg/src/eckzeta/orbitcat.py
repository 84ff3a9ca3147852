"""Orbit catalogs: simple Reeb orbits, their signs and degrees, and orbit sets.

A catalog is the finite combinatorial shadow of a Reeb flow on a link
complement: interior simple orbits with their Alexander degree vectors, plus
one boundary quadruple ``(e_i, h_i, e_i^+, h_i^+)`` of meridian orbits for each
link component.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .ring import (
    Exponent,
    LaurentPoly,
    TruncatedSeries,
    exp_series,
    geometric_series,
    log_series,
)


class OrbitKind(enum.Enum):
    ELLIPTIC = "elliptic"
    POSITIVE_HYPERBOLIC = "pos_hyp"
    NEGATIVE_HYPERBOLIC = "neg_hyp"

    @property
    def hyperbolic(self) -> bool:
        return self is not OrbitKind.ELLIPTIC


ELLIPTIC = OrbitKind.ELLIPTIC
POS_HYP = OrbitKind.POSITIVE_HYPERBOLIC
NEG_HYP = OrbitKind.NEGATIVE_HYPERBOLIC


def lefschetz_sign(kind: OrbitKind) -> int:
    return -1 if kind is POS_HYP else 1


def sign_from_linearized(L) -> int:
    """Sign of ``det(I - L)`` for a 2x2 linearized return map."""
    (a, b), (c, d) = [[Fraction(x) for x in row] for row in L]
    det = (1 - a) * (1 - d) - b * c
    if det == 0:
        raise ValueError("det(I - L) = 0: the orbit is degenerate")
    return 1 if det > 0 else -1


def cz_parity(kind: OrbitKind) -> int:
    """Parity of the Conley-Zehnder index; ``(-1)**parity == -lefschetz_sign(kind)``."""
    return 0 if kind is POS_HYP else 1


def iterate_sign(kind: OrbitKind, i: int) -> int:
    """Lefschetz sign of the ``i``-th iterate of an orbit of the given kind."""
    if i < 1:
        raise ValueError("iterates are indexed from 1")
    if kind is ELLIPTIC:
        return 1
    if kind is POS_HYP:
        return -1
    # odd iterates stay negative hyperbolic, even ones become positive hyperbolic
    return 1 if i % 2 else -1


@dataclass(frozen=True)
class SimpleOrbit:
    id: str
    kind: OrbitKind
    degree: Exponent
    action: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "degree", tuple(int(k) for k in self.degree))
        if self.action is not None:
            object.__setattr__(self, "action", Fraction(self.action))


@dataclass(frozen=True)
class BoundaryQuadruple:
    """The four meridian orbits left by perturbing the tori around one component."""

    e: SimpleOrbit
    h: SimpleOrbit
    e_plus: SimpleOrbit
    h_plus: SimpleOrbit

    def orbits(self) -> tuple[SimpleOrbit, ...]:
        return (self.e, self.h, self.e_plus, self.h_plus)


ROLES = ("e", "h", "e_plus", "h_plus")
ROLE_KINDS = {"e": ELLIPTIC, "h": POS_HYP, "e_plus": ELLIPTIC, "h_plus": POS_HYP}


def unit(n: int, i: int) -> Exponent:
    return tuple(1 if j == i else 0 for j in range(n))


def default_boundary(n: int, i: int, actions: Mapping[str, Fraction] | None = None) -> BoundaryQuadruple:
    """Boundary quadruple of component ``i`` (0-based) with ids ``e1, h1, ep1, hp1``."""
    names = {"e": f"e{i + 1}", "h": f"h{i + 1}", "e_plus": f"ep{i + 1}", "h_plus": f"hp{i + 1}"}
    actions = actions or {}
    return BoundaryQuadruple(
        **{
            role: SimpleOrbit(names[role], ROLE_KINDS[role], unit(n, i), actions.get(role))
            for role in ROLES
        }
    )


@dataclass(frozen=True)
class OrbitCatalog:
    nvars: int
    interior: tuple[SimpleOrbit, ...] = ()
    boundary: tuple[BoundaryQuadruple, ...] = ()
    name: str = "catalog"
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _hyperbolic: frozenset = field(default=None, init=False, repr=False, compare=False, hash=False)
    _interior_ids: frozenset = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "interior", tuple(self.interior))
        object.__setattr__(self, "boundary", tuple(self.boundary))
        index = {}
        for orb in self.all_orbits():
            index.setdefault(orb.id, orb)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_hyperbolic", frozenset(o.id for o in index.values() if o.kind.hyperbolic))
        object.__setattr__(self, "_interior_ids", frozenset(o.id for o in self.interior))

    @classmethod
    def standard(cls, nvars: int, interior: Iterable[SimpleOrbit] = (), name: str = "catalog",
                 boundary_actions: Mapping[str, Fraction] | None = None) -> "OrbitCatalog":
        boundary = tuple(default_boundary(nvars, i, boundary_actions) for i in range(nvars))
        return cls(nvars, tuple(interior), boundary, name)

    def all_orbits(self) -> list[SimpleOrbit]:
        out = list(self.interior)
        for q in self.boundary:
            out.extend(q.orbits())
        return out

    def orbit(self, oid: str) -> SimpleOrbit:
        try:
            return self._index[oid]
        except KeyError:
            raise KeyError(f"unknown orbit id {oid!r}") from None

    def __contains__(self, oid: str) -> bool:
        return oid in self._index

    @property
    def hyperbolic_ids(self) -> frozenset[str]:
        return self._hyperbolic

    @property
    def interior_ids(self) -> frozenset[str]:
        return self._interior_ids

    def e_plus_ids(self) -> frozenset[str]:
        return frozenset(q.e_plus.id for q in self.boundary)

    def alphabet(self, hat: bool = False) -> list[SimpleOrbit]:
        """Orbits generating the chain groups; the hat version drops every ``e_i^+``."""
        skip = self.e_plus_ids() if hat else frozenset()
        return [o for o in self.all_orbits() if o.id not in skip]


class OrbitSet(Mapping[str, int]):
    """A finite formal product of simple orbits, ``{orbit id: multiplicity}``."""

    __slots__ = ("_items", "_hash")

    def __init__(self, mults: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        if isinstance(mults, OrbitSet):
            self._items = mults._items
            self._hash = mults._hash
            return
        if isinstance(mults, Mapping):
            mults = mults.items()
        acc: dict[str, int] = {}
        for oid, k in mults:
            if k < 0:
                raise ValueError(f"negative multiplicity for {oid!r}")
            if k:
                acc[oid] = acc.get(oid, 0) + k
        self._items = tuple(sorted(acc.items()))
        self._hash = hash(self._items)

    @classmethod
    def _raw(cls, items: tuple[tuple[str, int], ...]) -> "OrbitSet":
        # items must already be sorted with positive multiplicities
        obj = cls.__new__(cls)
        obj._items = items
        obj._hash = hash(items)
        return obj

    @classmethod
    def of(cls, *ids: str) -> "OrbitSet":
        acc: dict[str, int] = {}
        for oid in ids:
            acc[oid] = acc.get(oid, 0) + 1
        return cls(acc)

    def __getitem__(self, oid):
        for k, v in self._items:
            if k == oid:
                return v
        raise KeyError(oid)

    def get(self, oid, default=0):
        for k, v in self._items:
            if k == oid:
                return v
        return default

    def items(self):
        return self._items

    def __iter__(self):
        return (k for k, _ in self._items)

    def __len__(self):
        return len(self._items)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, OrbitSet):
            return self._hash == other._hash and self._items == other._items
        return NotImplemented

    def __lt__(self, other: "OrbitSet"):
        return self._items < other._items

    @property
    def key(self) -> tuple[tuple[str, int], ...]:
        return self._items

    def plus(self, oid: str, k: int = 1) -> "OrbitSet":
        items = self._items
        for pos, (name, m) in enumerate(items):
            if name == oid:
                return OrbitSet._raw(items[:pos] + ((name, m + k),) + items[pos + 1:])
            if name > oid:
                return OrbitSet._raw(items[:pos] + ((oid, k),) + items[pos:])
        return OrbitSet._raw(items + ((oid, k),))

    def minus(self, oid: str, k: int = 1) -> "OrbitSet | None":
        """Remove ``k`` copies of ``oid``; None when the multiplicity would go negative."""
        items = self._items
        for pos, (name, m) in enumerate(items):
            if name == oid:
                if m < k:
                    return None
                if m == k:
                    return OrbitSet._raw(items[:pos] + items[pos + 1:])
                return OrbitSet._raw(items[:pos] + ((name, m - k),) + items[pos + 1:])
        return None if k > 0 else self

    def union(self, other: Mapping[str, int]) -> "OrbitSet":
        d = dict(self._items)
        for oid, k in other.items():
            d[oid] = d.get(oid, 0) + k
        return OrbitSet(d)

    def split(self, ids: frozenset[str]) -> tuple["OrbitSet", "OrbitSet"]:
        inside = tuple(kv for kv in self._items if kv[0] in ids)
        outside = tuple(kv for kv in self._items if kv[0] not in ids)
        return OrbitSet._raw(inside), OrbitSet._raw(outside)

    def __str__(self):
        if not self._items:
            return "()"
        return " ".join(k if v == 1 else f"{k}^{v}" for k, v in self._items)

    def __repr__(self):
        return f"OrbitSet({dict(self._items)!r})"


EMPTY = OrbitSet()


def respects_multiplicities(cat: OrbitCatalog, s: OrbitSet) -> bool:
    hyp = cat.hyperbolic_ids
    return all(k <= 1 or oid not in hyp for oid, k in s.items())


def orbit_set_degree(cat: OrbitCatalog, s: Mapping[str, int]) -> Exponent:
    out = [0] * cat.nvars
    for oid, k in s.items():
        for i, d in enumerate(cat.orbit(oid).degree):
            out[i] += k * d
    return tuple(out)


def orbit_set_sign(cat: OrbitCatalog, s: Mapping[str, int]) -> int:
    """``(-1)^(number of positive hyperbolic orbits in s)``."""
    count = sum(1 for oid in s if cat.orbit(oid).kind is POS_HYP)
    return -1 if count % 2 else 1


def orbit_set_grading(cat: OrbitCatalog, s: Mapping[str, int]) -> int:
    return 0 if orbit_set_sign(cat, s) == 1 else 1


def orbit_set_action(cat: OrbitCatalog, s: Mapping[str, int]) -> Fraction | None:
    total = Fraction(0)
    for oid, k in s.items():
        a = cat.orbit(oid).action
        if a is None:
            return None
        total += k * a
    return total


def _require_positive_degrees(orbits: list[SimpleOrbit]):
    for o in orbits:
        if any(k < 0 for k in o.degree) or sum(o.degree) == 0:
            raise ValueError(
                f"orbit {o.id!r} has degree {o.degree}; enumeration needs nonzero nonnegative degrees"
            )


def _search(orbits: list[SimpleOrbit], fits, advance, state, pos: int, chosen: list) -> Iterator[list]:
    if pos == len(orbits):
        yield chosen
        return
    orb = orbits[pos]
    cap = 1 if orb.kind.hyperbolic else None
    k = 0
    cur = state
    while True:
        if k:
            chosen.append((orb.id, k))
        yield from _search(orbits, fits, advance, cur, pos + 1, chosen)
        if k:
            chosen.pop()
        if cap is not None and k >= cap:
            return
        nxt = advance(cur, orb.degree)
        if not fits(nxt):
            return
        cur = nxt
        k += 1


def iter_orbit_sets_upto(cat: OrbitCatalog, cutoff: int, hat: bool = False) -> Iterator[OrbitSet]:
    """Every orbit set over the (hat) alphabet with total degree <= cutoff."""
    orbits = cat.alphabet(hat)
    _require_positive_degrees(orbits)
    for chosen in _search(orbits, lambda t: t <= cutoff, lambda t, d: t + sum(d), 0, 0, []):
        yield OrbitSet(chosen)


def enumerate_orbit_sets(cat: OrbitCatalog, d: Iterable[int], hat: bool = False) -> list[OrbitSet]:
    """All orbit sets of degree exactly ``d``, sorted by their canonical key."""
    d = tuple(d)
    if len(d) != cat.nvars:
        raise ValueError(f"degree {d} does not have {cat.nvars} entries")
    if any(k < 0 for k in d):
        raise ValueError(f"target degree {d} has a negative component")
    orbits = cat.alphabet(hat)
    _require_positive_degrees(orbits)
    found = [
        OrbitSet(chosen)
        for chosen in _search(
            orbits,
            lambda r: all(k >= 0 for k in r),
            lambda r, deg: tuple(a - b for a, b in zip(r, deg)),
            d,
            0,
            [],
        )
        if orbit_set_degree(cat, OrbitSet(chosen)) == d
    ]
    return sorted(set(found))


def local_zeta(orbit: SimpleOrbit, cutoff: int) -> TruncatedSeries:
    """Closed form of the local Lefschetz zeta factor, evaluated on the orbit's monomial."""
    deg = orbit.degree
    if any(k < 0 for k in deg) or sum(deg) == 0:
        raise ValueError(f"orbit {orbit.id!r} needs a nonzero nonnegative degree, got {deg}")
    if orbit.kind is ELLIPTIC:
        return geometric_series(deg, cutoff)
    n = len(deg)
    sign = -1 if orbit.kind is POS_HYP else 1
    return TruncatedSeries(LaurentPoly({(0,) * n: 1, deg: sign}, n), cutoff)


def local_zeta_oracle(orbit: SimpleOrbit, cutoff: int) -> TruncatedSeries:
    """``exp(sum_i eps(gamma^i) x^{i deg} / i)`` in exact rationals, checked integral."""
    deg = orbit.degree
    if any(k < 0 for k in deg) or sum(deg) == 0:
        raise ValueError(f"orbit {orbit.id!r} needs a nonzero nonnegative degree, got {deg}")
    logs = log_series(deg, cutoff, lambda i: iterate_sign(orbit.kind, i))
    return exp_series(logs).to_integer_series()


def validate_catalog(cat: OrbitCatalog) -> list[str]:
    """Human-readable invariant violations; empty when the catalog is well formed."""
    problems = []
    n = cat.nvars
    if n < 1:
        problems.append(f"nvars must be >= 1, got {n}")
    seen: dict[str, int] = {}
    for o in cat.all_orbits():
        seen[o.id] = seen.get(o.id, 0) + 1
    for oid, c in seen.items():
        if c > 1:
            problems.append(f"{oid}: id used {c} times")
    for o in cat.all_orbits():
        if len(o.degree) != n:
            problems.append(f"{o.id}: degree {o.degree} does not have {n} entries")
            continue
        if any(k < 0 for k in o.degree):
            problems.append(f"{o.id}: degree {o.degree} has a negative component")
        elif sum(o.degree) == 0:
            problems.append(f"{o.id}: degree is the zero vector")
        if o.action is not None and o.action <= 0:
            problems.append(f"{o.id}: action {o.action} is not positive")
    if len(cat.boundary) != n:
        problems.append(f"expected {n} boundary quadruples, got {len(cat.boundary)}")
    for i, q in enumerate(cat.boundary):
        for role in ROLES:
            o = getattr(q, role)
            want = ROLE_KINDS[role]
            if o.kind is not want:
                problems.append(
                    f"{o.id}: kind violation, boundary role {role} of component {i + 1} "
                    f"must be {want.value}, got {o.kind.value}"
                )
            if len(o.degree) == n and o.degree != unit(n, i):
                problems.append(
                    f"{o.id}: meridian-degree violation, expected {unit(n, i)}, got {o.degree}"
                )
    return problems
