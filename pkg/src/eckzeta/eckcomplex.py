"""ECK chain complexes over F2 built from an orbit catalog.

Generators are orbit sets of total degree <= cutoff.  The boundary map
implements, for every link component i,

    d(e_i^+^a h_i^+^b g) = e_i^+^(a-1) h_i^+^b h_i g + e_i^+^a h_i^+^(b-1) e_i g + e_i^+^a h_i^+^b dg

with the extra plane term ``e_i^+^a h_i^+^(b-1) g`` in the ECH-restricted
flavor.  Terms containing an elliptic orbit with negative multiplicity or a
hyperbolic orbit with multiplicity outside {0, 1} vanish.

Boundary columns are stored as Python ints used as bitsets over generator
indices; all elimination is XOR on those ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .orbitcat import (
    EMPTY,
    OrbitCatalog,
    OrbitSet,
    iter_orbit_sets_upto,
    orbit_set_action,
    orbit_set_degree,
    orbit_set_grading,
    respects_multiplicities,
)
from .ring import Exponent, LaurentPoly

FLAVORS = ("full", "hat", "ech")


class InvalidDifferentialError(ValueError):
    """An interior differential breaks a structural invariant."""


class NotSquareZeroError(ArithmeticError):
    """A boundary map does not square to zero."""


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def gf2_rank(vectors: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            p = v.bit_length() - 1
            if p in basis:
                v ^= basis[p]
            else:
                basis[p] = v
                break
    return len(basis)


def gf2_kernel(columns: Sequence[int]) -> list[int]:
    """Basis of the kernel of the map sending basis vector j to ``columns[j]``.

    Kernel vectors are bitsets over column positions.
    """
    basis: dict[int, tuple[int, int]] = {}
    kernel = []
    for j, v in enumerate(columns):
        combo = 1 << j
        while v:
            p = v.bit_length() - 1
            if p in basis:
                bv, bc = basis[p]
                v ^= bv
                combo ^= bc
            else:
                basis[p] = (v, combo)
                break
        if not v:
            kernel.append(combo)
    return kernel


@dataclass(frozen=True)
class InteriorDifferential:
    """Interior part of the boundary map as a list of ``(source, target)`` orbit sets.

    Coefficients are 1 in F2; repeated pairs cancel.
    """

    entries: tuple[tuple[OrbitSet, OrbitSet], ...] = ()
    _table: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        entries = tuple((OrbitSet(s), OrbitSet(t)) for s, t in self.entries)
        object.__setattr__(self, "entries", entries)
        table: dict[OrbitSet, dict[OrbitSet, int]] = {}
        for s, t in entries:
            row = table.setdefault(s, {})
            row[t] = row.get(t, 0) ^ 1
        object.__setattr__(
            self, "_table", {s: tuple(sorted(t for t, c in row.items() if c)) for s, row in table.items()}
        )

    def image(self, source: OrbitSet) -> tuple[OrbitSet, ...]:
        return self._table.get(source, ())

    def sources(self) -> list[OrbitSet]:
        return sorted(s for s, ts in self._table.items() if ts)

    def __bool__(self):
        return any(self._table.values())


ZERO_DIFFERENTIAL = InteriorDifferential()


def validate_interior(cat: OrbitCatalog, D: InteriorDifferential) -> list[str]:
    """Structural violations of an interior differential (square-zero is checked separately)."""
    problems = []
    interior = cat.interior_ids
    for s, t in D.entries:
        label = f"{s} -> {t}"
        stray = [oid for oid in list(s) + list(t) if oid not in interior]
        if stray:
            problems.append(f"{label}: non-interior orbit ids {sorted(set(stray))}")
            continue
        if not (respects_multiplicities(cat, s) and respects_multiplicities(cat, t)):
            problems.append(f"{label}: hyperbolic orbit with multiplicity > 1")
            continue
        if orbit_set_degree(cat, s) != orbit_set_degree(cat, t):
            problems.append(
                f"{label}: degree not preserved ({orbit_set_degree(cat, s)} vs {orbit_set_degree(cat, t)})"
            )
        if orbit_set_grading(cat, s) == orbit_set_grading(cat, t):
            problems.append(f"{label}: grading not flipped")
        a_s, a_t = orbit_set_action(cat, s), orbit_set_action(cat, t)
        if a_s is not None and a_t is not None and not a_s > a_t:
            problems.append(f"{label}: action does not decrease ({a_s} -> {a_t})")
    return problems


def interior_square_zero(D: InteriorDifferential) -> bool:
    for s in D.sources():
        acc: dict[OrbitSet, int] = {}
        for t in D.image(s):
            for u in D.image(t):
                acc[u] = acc.get(u, 0) ^ 1
        if any(acc.values()):
            return False
    return True


def boundary_terms(cat: OrbitCatalog, g: OrbitSet, flavor: str,
                   interior: InteriorDifferential = ZERO_DIFFERENTIAL) -> list[OrbitSet]:
    """Terms of the boundary of one generator, before reduction mod 2."""
    terms = []
    present = dict(g.items())
    for q in cat.boundary:
        # only the added h_i can break the multiplicity rule; e_i is elliptic
        if q.e_plus.id in present and q.h.id not in present:
            terms.append(g.minus(q.e_plus.id).plus(q.h.id))
        if q.h_plus.id in present:
            rest = g.minus(q.h_plus.id)
            terms.append(rest.plus(q.e.id))
            if flavor == "ech":
                terms.append(rest)
    if interior:
        inner, outer = g.split(cat.interior_ids)
        for t in interior.image(inner):
            u = outer.union(t)
            if respects_multiplicities(cat, u):
                terms.append(u)
    return terms


@dataclass(frozen=True)
class ChainComplexF2:
    generators: tuple[OrbitSet, ...]
    degrees: tuple[Exponent, ...]
    gradings: tuple[int, ...]
    boundary: tuple[int, ...]
    flavor: str
    cutoff: int
    catalog: OrbitCatalog = field(compare=False, repr=False)
    quotient: tuple[int, ...] = ()

    def __len__(self):
        return len(self.generators)

    def index(self) -> dict[OrbitSet, int]:
        return {g: i for i, g in enumerate(self.generators)}

    def image(self, j: int) -> list[int]:
        return list(bits(self.boundary[j]))

    def entries(self) -> Iterator[tuple[int, int]]:
        """``(source, target)`` index pairs with coefficient 1."""
        for j, col in enumerate(self.boundary):
            for i in bits(col):
                yield j, i

    def with_boundary(self, boundary: Sequence[int]) -> "ChainComplexF2":
        return ChainComplexF2(
            self.generators, self.degrees, self.gradings, tuple(boundary),
            self.flavor, self.cutoff, self.catalog, self.quotient,
        )

    def is_homogeneous(self) -> bool:
        return all(self.degrees[i] == self.degrees[j] for j, i in self.entries())



def build_complex(cat: OrbitCatalog, interior: InteriorDifferential | None = None,
                  flavor: str = "full", cutoff: int = 4, check: bool = True) -> ChainComplexF2:
    """Finite model of the (full, hat or ECH-restricted) complex in the window ``|deg| <= cutoff``.

    With ``check`` the interior differential is validated first: structural
    violations raise InvalidDifferentialError, a non-square-zero interior map
    raises NotSquareZeroError.  ``check=False`` skips both (negative controls).
    """
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    interior = interior or ZERO_DIFFERENTIAL
    if check:
        problems = validate_interior(cat, interior)
        if problems:
            raise InvalidDifferentialError("; ".join(problems))
        if not interior_square_zero(interior):
            raise NotSquareZeroError("interior differential does not square to zero")
    degree_of = {g: orbit_set_degree(cat, g) for g in iter_orbit_sets_upto(cat, cutoff, hat=flavor == "hat")}
    gens = sorted(degree_of, key=lambda g: (sum(degree_of[g]), degree_of[g], g.key))
    index = {g: i for i, g in enumerate(gens)}
    columns = []
    for g in gens:
        col = 0
        for t in boundary_terms(cat, g, flavor, interior):
            if t not in index:
                raise InvalidDifferentialError(f"boundary of {g} leaves the window: {t}")
            col ^= 1 << index[t]
        columns.append(col)
    return ChainComplexF2(
        generators=tuple(gens),
        degrees=tuple(degree_of[g] for g in gens),
        gradings=tuple(orbit_set_grading(cat, g) for g in gens),
        boundary=tuple(columns),
        flavor=flavor,
        cutoff=cutoff,
        catalog=cat,
    )


def d_squared_zero(c: ChainComplexF2) -> bool:
    col = c.boundary
    for j in range(len(col)):
        acc = 0
        for i in bits(col[j]):
            acc ^= col[i]
        if acc:
            return False
    return True


@dataclass(frozen=True)
class HomologySummary:
    """Nonzero F2 dimensions keyed by ``(degree, grading)``.

    ``degree`` is None for complexes whose boundary does not preserve degree
    (the ECH-restricted flavor); there only the Z/2 grading survives.
    """

    dims: Mapping[tuple[Exponent | None, int], int]

    def dim(self, degree, grading: int) -> int:
        return self.dims.get((tuple(degree) if degree is not None else None, grading), 0)

    def lines(self) -> list[str]:
        def key(item):
            (d, g), _ = item
            return (d is None, sum(d) if d else 0, d or (), g)

        out = []
        for (d, g), k in sorted(self.dims.items(), key=key):
            label = "*" if d is None else "(" + ",".join(str(x) for x in d) + ")"
            out.append(f"d={label} g={g} : {k}")
        return out


def _blocks(c: ChainComplexF2, graded: bool) -> dict:
    groups: dict[tuple, list[int]] = {}
    for j in range(len(c)):
        key = (c.degrees[j] if graded else None, c.gradings[j])
        groups.setdefault(key, []).append(j)
    return groups


def homology_dims(c: ChainComplexF2) -> HomologySummary:
    if not d_squared_zero(c):
        raise NotSquareZeroError("boundary does not square to zero")
    graded = c.is_homogeneous()
    groups = _blocks(c, graded)
    ranks = {key: gf2_rank(c.boundary[j] for j in js) for key, js in groups.items()}
    dims = {}
    for (d, g), js in groups.items():
        k = len(js) - ranks[(d, g)] - ranks.get((d, 1 - g), 0)
        if k:
            dims[(d, g)] = k
    return HomologySummary(dims)


def chi_from_complex(c: ChainComplexF2, source: str = "chain") -> LaurentPoly:
    """Graded Euler characteristic ``sum_d (sum_g (-1)^g dim) x^d`` from chains or homology."""
    if c.flavor == "ech":
        raise ValueError("the ECH-restricted flavor does not preserve degree; chi is undefined")
    n = c.catalog.nvars
    terms: dict[Exponent, int] = {}
    if source == "chain":
        for d, g in zip(c.degrees, c.gradings):
            terms[d] = terms.get(d, 0) + (-1) ** g
    elif source == "homology":
        for (d, g), k in homology_dims(c).dims.items():
            terms[d] = terms.get(d, 0) + (-1) ** g * k
    else:
        raise ValueError(f"source must be 'chain' or 'homology', got {source!r}")
    return LaurentPoly(terms, n)


def quotient_by_e(c: ChainComplexF2, component: int) -> ChainComplexF2:
    """Chain-level quotient by ``e_i g ~ g`` for 1-based component ``i``.

    Generators keep only orbit sets without ``e_i``; every boundary term has its
    ``e_i`` factors erased.  The component-i degree is no longer a grading, so it
    is projected to 0.
    """
    if c.flavor == "ech":
        raise ValueError("quotient_by_e needs the full or hat flavor")
    cat = c.catalog
    if not 1 <= component <= cat.nvars:
        raise IndexError(f"component {component} out of range 1..{cat.nvars}")
    e_id = cat.boundary[component - 1].e.id
    keep = [j for j, g in enumerate(c.generators) if not g.get(e_id)]
    new_index = {c.generators[j]: k for k, j in enumerate(keep)}
    columns = []
    for j in keep:
        col = 0
        for i in bits(c.boundary[j]):
            t = c.generators[i]
            erased = t.minus(e_id, t.get(e_id))
            col ^= 1 << new_index[erased]
        columns.append(col)
    pos = component - 1

    def project(d):
        return tuple(0 if k == pos else x for k, x in enumerate(d))

    return ChainComplexF2(
        generators=tuple(c.generators[j] for j in keep),
        degrees=tuple(project(c.degrees[j]) for j in keep),
        gradings=tuple(c.gradings[j] for j in keep),
        boundary=tuple(columns),
        flavor=c.flavor,
        cutoff=c.cutoff,
        catalog=cat,
        quotient=tuple(sorted(set(c.quotient) | {component})),
    )


def grading_flip_check(c: ChainComplexF2) -> bool:
    return all(c.gradings[i] != c.gradings[j] for j, i in c.entries())


def degree_preserved_check(c: ChainComplexF2) -> bool:
    return c.is_homogeneous()


def filtration_check(c: ChainComplexF2) -> bool:
    """Degrees never increase; strict drops are exactly the ``h_i^+ -> empty`` plane terms."""
    if c.flavor != "ech":
        raise ValueError("filtration_check applies to the ECH-restricted flavor only")
    cat = c.catalog
    n = cat.nvars
    for j, i in c.entries():
        src, dst = c.degrees[j], c.degrees[i]
        if any(b > a for a, b in zip(src, dst)):
            return False
        if src == dst:
            continue
        drop = tuple(a - b for a, b in zip(src, dst))
        if sum(drop) != 1:
            return False
        k = drop.index(1)
        hp = cat.boundary[k].h_plus.id
        if c.generators[j].minus(hp) != c.generators[i]:
            return False
    return n >= 1


def action_check(c: ChainComplexF2) -> bool:
    """Every boundary entry strictly lowers total action, where actions are known."""
    cat = c.catalog
    for j, i in c.entries():
        a_src = orbit_set_action(cat, c.generators[j])
        a_dst = orbit_set_action(cat, c.generators[i])
        if a_src is not None and a_dst is not None and not a_src > a_dst:
            return False
    return True


@dataclass(frozen=True)
class ConnectingRow:
    level: int
    grading: int
    stable: bool
    h_full: int
    h_sub: int
    h_quot: int
    rank_d: int
    coker: int

    @property
    def injective(self) -> bool:
        return self.rank_d == self.h_quot

    @property
    def match(self) -> bool:
        return self.coker == self.h_full


@dataclass(frozen=True)
class ConnectingMapReport:
    cutoff: int
    rows: tuple[ConnectingRow, ...]

    @property
    def injective(self) -> bool:
        return all(r.injective for r in self.rows if r.stable)

    @property
    def coker_matches(self) -> bool:
        return all(r.match for r in self.rows if r.stable)

    @property
    def passed(self) -> bool:
        return self.injective and self.coker_matches

    def lines(self) -> list[str]:
        out = []
        for r in self.rows:
            tag = "" if r.stable else " (unstable)"
            out.append(
                f"level<={r.level} g={r.grading}: H(full)={r.h_full} H(e+)={r.h_sub} "
                f"H(h+ part)={r.h_quot} rank d={r.rank_d} coker={r.coker} "
                f"injective={'yes' if r.injective else 'no'} match={'yes' if r.match else 'no'}{tag}"
            )
        return out


def connecting_map_check(cat: OrbitCatalog, interior: InteriorDifferential | None = None,
                         cutoff: int = 5, check: bool = True) -> ConnectingMapReport:
    """Check ``H(full) = coker(d)`` with ``d([h+ g]) = [g + e g]`` injective, level by level.

    Works in the ECH-restricted model of a knot catalog.  For each filtration
    level ``D`` the generators of degree <= D span a subcomplex F_D; those
    without ``h^+`` span the e+-only subcomplex, those with ``h^+`` the quotient.
    The connecting map of this pair is computed on homology by pushing quotient
    cycles through the full boundary.  Levels ``D <= cutoff - 1`` are stable.
    """
    if cat.nvars != 1:
        raise ValueError("connecting_map_check is defined for knot catalogs (nvars = 1)")
    c = build_complex(cat, interior, "ech", cutoff, check=check)
    if not d_squared_zero(c):
        raise NotSquareZeroError("boundary does not square to zero")
    hp = cat.boundary[0].h_plus.id
    rows = []
    for level in range(cutoff + 1):
        window = [j for j in range(len(c)) if c.degrees[j][0] <= level]
        wmask = sum(1 << j for j in window)
        quot = [j for j in window if c.generators[j].get(hp)]
        sub = [j for j in window if not c.generators[j].get(hp)]
        qmask = sum(1 << j for j in quot)
        if any(c.boundary[j] & ~wmask for j in window):
            raise ArithmeticError("filtration window is not a subcomplex")

        def rank_of(js, mask=-1):
            return gf2_rank(c.boundary[j] & mask for j in js)

        for g in (0, 1):
            win_g = [j for j in window if c.gradings[j] == g]
            win_o = [j for j in window if c.gradings[j] != g]
            h_full = len(win_g) - rank_of(win_g) - rank_of(win_o)

            sub_g = [j for j in sub if c.gradings[j] == g]
            sub_o = [j for j in sub if c.gradings[j] != g]
            im_sub_into_g = [c.boundary[j] for j in sub_o]
            h_sub = len(sub_g) - rank_of(sub_g) - gf2_rank(im_sub_into_g)

            # quotient cycles of grading 1-g are sent by d into grading g of sub
            q_from = [j for j in quot if c.gradings[j] != g]
            q_cols = [c.boundary[j] & qmask for j in q_from]
            kernel = gf2_kernel(q_cols)
            q_rank_out = len(q_from) - len(kernel)
            q_rank_in = gf2_rank(c.boundary[j] & qmask for j in quot if c.gradings[j] == g)
            h_quot = len(q_from) - q_rank_out - q_rank_in
            images = []
            for combo in kernel:
                chain = 0
                for pos in bits(combo):
                    chain ^= c.boundary[q_from[pos]]
                if chain & qmask:
                    raise ArithmeticError("quotient cycle does not lift to a sub-boundary")
                images.append(chain)
            base = gf2_rank(im_sub_into_g)
            rank_d = gf2_rank(im_sub_into_g + images) - base
            rows.append(ConnectingRow(
                level=level, grading=g, stable=level <= cutoff - 1, h_full=h_full,
                h_sub=h_sub, h_quot=h_quot, rank_d=rank_d, coker=h_sub - rank_d,
            ))
    return ConnectingMapReport(cutoff, tuple(rows))


def h_plus_lift_identity(cat: OrbitCatalog, c: ChainComplexF2) -> bool:
    """For every e+-only generator y of the ECH model, ``d(h+ y) - h+ d'(y) = y + e y``.

    The pointwise chain-level form of the connecting map formula (knot catalogs).
    """
    if c.flavor != "ech" or cat.nvars != 1:
        raise ValueError("needs an ECH-restricted knot complex")
    q = cat.boundary[0]
    idx = c.index()
    for j, y in enumerate(c.generators):
        if y.get(q.h_plus.id):
            continue
        x = y.plus(q.h_plus.id)
        if x not in idx:
            continue
        lhs = c.boundary[idx[x]]
        # remove the h+ part, which is h+ times the boundary of y inside the e+ complex
        for i in bits(c.boundary[j]):
            lhs ^= 1 << idx[c.generators[i].plus(q.h_plus.id)]
        rhs = (1 << idx[y]) ^ (1 << idx[y.plus(q.e.id)])
        if lhs != rhs:
            return False
    return True


__all__ = [
    "EMPTY",
    "FLAVORS",
    "ChainComplexF2",
    "ConnectingMapReport",
    "HomologySummary",
    "InteriorDifferential",
    "InvalidDifferentialError",
    "NotSquareZeroError",
    "ZERO_DIFFERENTIAL",
    "action_check",
    "boundary_terms",
    "build_complex",
    "chi_from_complex",
    "connecting_map_check",
    "d_squared_zero",
    "degree_preserved_check",
    "filtration_check",
    "grading_flip_check",
    "gf2_kernel",
    "gf2_rank",
    "h_plus_lift_identity",
    "homology_dims",
    "interior_square_zero",
    "quotient_by_e",
    "validate_interior",
]
