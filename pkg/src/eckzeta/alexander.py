"""Alexander polynomials and quotients from monodromy matrices and orbit catalogs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .orbitcat import OrbitCatalog
from .ring import (
    LaurentPoly,
    TruncatedSeries,
    doteq_equal,
    doteq_normalize,
    geometric_series,
    series_mul,
    substitute_one,
    truncate,
    unit_minus_monomial,
)
from .zeta import chi_full

# a truncated series is reported as a polynomial only when its support ends this
# many total degrees below the cutoff
GUARD_BAND = 2

Matrix = tuple[tuple[int, ...], ...]


class FinitenessError(ValueError):
    """A truncated series could not be certified to be a polynomial at this cutoff."""


def as_matrix(M: Sequence[Sequence[int]]) -> Matrix:
    rows = tuple(tuple(row) for row in M)
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ValueError(f"monodromy matrix must be square, got a row of length {len(row)} in size {n}")
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"monodromy entries must be integers, got {x!r}")
    return rows


# --- dense univariate integer polynomials, coefficient lists low degree first

def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _padd(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += y
    return _trim(out)


def _psub(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


def _pdiv_exact(a: list[int], b: list[int]) -> list[int]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while a:
        shift = len(a) - len(b)
        if shift < 0 or a[-1] % lead:
            raise ArithmeticError("inexact polynomial division")
        c = a[-1] // lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        _trim(a)
    return _trim(q)


def _one_minus_tM(M: Matrix) -> list[list[list[int]]]:
    n = len(M)
    return [[_trim([1 if i == j else 0, -M[i][j]]) for j in range(n)] for i in range(n)]


def char_det(M: Sequence[Sequence[int]]) -> LaurentPoly:
    """``det(I - tM)`` by Bareiss fraction-free elimination over Z[t].

    No pivoting is needed: every leading principal minor of ``I - tM`` has
    constant term 1, so no pivot is ever the zero polynomial.
    """
    M = as_matrix(M)
    n = len(M)
    if n == 0:
        return LaurentPoly.one(1)
    A = _one_minus_tM(M)
    prev = [1]
    for k in range(n - 1):
        assert A[k][k] and A[k][k][0] == 1
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _psub(_pmul(A[i][j], A[k][k]), _pmul(A[i][k], A[k][j]))
                A[i][j] = _pdiv_exact(num, prev)
            A[i][k] = []
        prev = A[k][k]
    return LaurentPoly.from_coeffs(A[n - 1][n - 1])


def char_det_cofactor(M: Sequence[Sequence[int]]) -> LaurentPoly:
    """``det(I - tM)`` by Laplace expansion along the first row (sizes <= 8)."""
    M = as_matrix(M)
    if len(M) > 8:
        raise ValueError("cofactor expansion is limited to size <= 8")
    A = _one_minus_tM(M)

    def det(rows: list[int], cols: list[int]) -> list[int]:
        if not rows:
            return [1]
        r, rest = rows[0], rows[1:]
        acc: list[int] = []
        for pos, c in enumerate(cols):
            if not A[r][c]:
                continue
            minor = det(rest, cols[:pos] + cols[pos + 1:])
            term = _pmul(A[r][c], minor)
            acc = _psub(acc, term) if pos % 2 else _padd(acc, term)
        return acc

    n = len(M)
    return LaurentPoly.from_coeffs(det(list(range(n)), list(range(n))))


def lefschetz_number(M: Sequence[Sequence[int]]) -> int:
    """``1 - trace(M)``: trace on H_0 of the page minus trace on H_1."""
    M = as_matrix(M)
    return 1 - sum(M[i][i] for i in range(len(M)))


@dataclass(frozen=True)
class AlexResult:
    value: LaurentPoly | TruncatedSeries
    nvars: int
    normalized: bool
    kind: str  # "polynomial" or "series"

    @property
    def cutoff(self) -> int | None:
        return self.value.cutoff if isinstance(self.value, TruncatedSeries) else None

    @property
    def poly(self) -> LaurentPoly:
        return self.value.poly if isinstance(self.value, TruncatedSeries) else self.value

    def __str__(self):
        return str(self.value)


def _detectably_finite(s: TruncatedSeries) -> bool:
    top = s.poly.max_total_degree()
    return top is None or top <= s.cutoff - GUARD_BAND


def _require_finite(s: TruncatedSeries, what: str) -> LaurentPoly:
    if not _detectably_finite(s):
        raise FinitenessError(
            f"{what} reaches total degree {s.poly.max_total_degree()} at cutoff {s.cutoff}; "
            f"cannot certify a polynomial (support must end {GUARD_BAND} below the cutoff), "
            f"raise the cutoff"
        )
    return s.poly


def polynomial_result(p: LaurentPoly) -> AlexResult:
    return AlexResult(doteq_normalize(p), p.nvars, True, "polynomial")


def alex_fibered_knot(M: Sequence[Sequence[int]], cutoff: int) -> AlexResult:
    """``ALEX = det(I - tM) / (1 - t)`` as a truncated series (not normalized)."""
    delta = char_det(M)
    top = delta.max_total_degree() or 0
    if cutoff < top:
        raise ValueError(f"cutoff {cutoff} is below deg det(I - tM) = {top}")
    s = series_mul(truncate(delta, cutoff), geometric_series((1,), cutoff))
    return AlexResult(s, 1, False, "series")


def alex_from_catalog(cat: OrbitCatalog, cutoff: int) -> AlexResult:
    """The catalog's ALEX, read off as the doteq-normalized full Euler characteristic."""
    s = chi_full(cat, cutoff).series
    if _detectably_finite(s):
        return polynomial_result(s.poly)
    norm = doteq_normalize(s.poly)
    if norm == s.poly:
        return AlexResult(s, cat.nvars, True, "series")
    return AlexResult(s, cat.nvars, False, "series")


def delta_from_alex(a: AlexResult, n: int) -> AlexResult:
    """Recover the Alexander polynomial: identity for links, times ``(1 - t)`` for knots."""
    if a.nvars != n:
        raise ValueError(f"ALEX has {a.nvars} variables, expected {n}")
    if n >= 2:
        if a.kind == "polynomial":
            return polynomial_result(a.value)
        return polynomial_result(_require_finite(a.value, "ALEX"))
    factor = unit_minus_monomial((1,))
    if a.kind == "polynomial":
        return polynomial_result(a.value * factor)
    prod = series_mul(a.value, truncate(factor, a.value.cutoff))
    return polynomial_result(_require_finite(prod, "ALEX * (1 - t)"))


def torres_sides(delta_full: LaurentPoly, sub: AlexResult, lk: Sequence[int]) -> tuple[LaurentPoly, LaurentPoly]:
    """Both sides of the Torres identity, each doteq-normalized.

    Left: ``delta_full`` with its last variable set to 1.  Right: ``sub * (1 - x^lk)``.
    """
    lk = tuple(lk)
    n = sub.nvars
    if delta_full.nvars != n + 1:
        raise ValueError(f"delta_full must have {n + 1} variables, has {delta_full.nvars}")
    if len(lk) != n:
        raise ValueError(f"linking vector must have {n} entries, got {len(lk)}")
    lhs = substitute_one(delta_full, n + 1)
    factor = unit_minus_monomial(lk)
    if sub.kind == "polynomial":
        rhs = sub.value * factor
    else:
        if any(k < 0 for k in lk):
            raise FinitenessError("a truncated series can only be multiplied by 1 - x^lk with lk >= 0")
        prod = series_mul(sub.value, truncate(factor, sub.value.cutoff))
        rhs = _require_finite(prod, "ALEX * (1 - x^lk)")
    return doteq_normalize(lhs), doteq_normalize(rhs)


def torres_check(delta_full: LaurentPoly, sub: AlexResult, lk: Sequence[int]) -> bool:
    lhs, rhs = torres_sides(delta_full, sub, lk)
    return doteq_equal(lhs, rhs)
