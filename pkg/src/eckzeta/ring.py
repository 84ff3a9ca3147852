"""Exact multivariable Laurent polynomials and total-degree truncated series.

Polynomials are stored as ``{exponent tuple: nonzero int}`` maps.  Everything
is immutable and integer (or ``Fraction``) valued; there is no floating point
anywhere in this module.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping

Exponent = tuple[int, ...]


def _clean(terms):
    return {e: c for e, c in terms.items() if c != 0}


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _total(e: Exponent) -> int:
    return sum(e)


def render_monomial(e: Exponent) -> str:
    parts = []
    for i, k in enumerate(e, start=1):
        if k == 0:
            continue
        parts.append(f"t{i}" if k == 1 else f"t{i}^{k}")
    return "*".join(parts)


def _render_key(e: Exponent):
    # total degree first, then t1-heavy monomials before t2-heavy ones
    return (_total(e), tuple(-k for k in e))


class LaurentPoly:
    """An element of Z[t1^±1, ..., tn^±1]."""

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None, nvars: int = 1):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have {nvars} entries")
            if not isinstance(c, int):
                raise TypeError(f"coefficient {c!r} is not an integer")
            if c:
                clean[e] = clean.get(e, 0) + c
        self._terms = _clean(clean)
        self.nvars = nvars
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, nvars: int = 1) -> "LaurentPoly":
        return cls({}, nvars)

    @classmethod
    def one(cls, nvars: int = 1) -> "LaurentPoly":
        return cls({(0,) * nvars: 1}, nvars)

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff: int = 1) -> "LaurentPoly":
        e = tuple(exps)
        return cls({e: coeff}, len(e))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "LaurentPoly":
        """One-variable polynomial from a list ``[c0, c1, c2, ...]``."""
        return cls({(k,): c for k, c in enumerate(coeffs)}, 1)

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, e: Iterable[int]) -> int:
        return self._terms.get(tuple(e), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> list[Exponent]:
        return sorted(self._terms, key=_render_key)

    def max_total_degree(self) -> int | None:
        return max((_total(e) for e in self._terms), default=None)

    def is_nonnegative(self) -> bool:
        return all(k >= 0 for e in self._terms for k in e)

    def _check(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
        return None

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.one(self.nvars).scale(other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.one(self.nvars).scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = LaurentPoly.one(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e: k * c for e, c in self._terms.items()}, self.nvars)

    def shift(self, exps: Iterable[int]) -> "LaurentPoly":
        """Multiply by the monomial ``x^exps``."""
        s = tuple(exps)
        return LaurentPoly({_add_exp(e, s): c for e, c in self._terms.items()}, self.nvars)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == LaurentPoly.one(self.nvars).scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"LaurentPoly({render(self)!r}, nvars={self.nvars})"


def render(p: LaurentPoly) -> str:
    """Canonical text form, e.g. ``1 - t1 + t1^2`` or ``1 - 3*t1*t2``."""
    if p.is_zero():
        return "0"
    out = []
    for i, e in enumerate(p.support()):
        c = p.coeff(e)
        mono = render_monomial(e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_FACTOR_RE = re.compile(r"^t(\d+)(?:\^(-?\d+))?$")


def parse_poly(text: str, nvars: int | None = None) -> LaurentPoly:
    """Parse the canonical rendering (and mild variations of it) back into a polynomial.

    Variables are ``t1, t2, ...``.  ``nvars`` defaults to the largest index seen
    (at least 1).
    """
    s = text.replace(" ", "").replace("\n", "")
    if not s:
        raise ValueError("empty polynomial text")
    # protect negative exponents from the term splitter
    s = s.replace("^-", "^~")
    raw = []
    pos = 0
    for m in _TERM_RE.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        raw.append((sign, m.group(2).replace("^~", "^-")))
    if pos != len(s):
        raise ValueError(f"cannot parse polynomial {text!r}")
    parsed = []
    top = 0
    for sign, body in raw:
        coeff = sign
        exps: dict[int, int] = {}
        for factor in body.split("*"):
            if re.fullmatch(r"\d+", factor):
                coeff *= int(factor)
                continue
            m = _FACTOR_RE.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            idx = int(m.group(1))
            if idx < 1:
                raise ValueError(f"variable index must be >= 1 in {text!r}")
            exps[idx] = exps.get(idx, 0) + int(m.group(2) or 1)
            top = max(top, idx)
        parsed.append((coeff, exps))
    n = nvars if nvars is not None else max(top, 1)
    if top > n:
        raise ValueError(f"{text!r} uses t{top} but only {n} variables were declared")
    terms: dict[Exponent, int] = {}
    for coeff, exps in parsed:
        e = tuple(exps.get(i, 0) for i in range(1, n + 1))
        terms[e] = terms.get(e, 0) + coeff
    return LaurentPoly(terms, n)


def poly_arith(op: str, p: LaurentPoly, q: LaurentPoly | None = None) -> LaurentPoly:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "neg":
        return -p
    raise ValueError(f"unknown operation {op!r}")


def doteq_normalize(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of ``p`` up to multiplication by ``±t^a``.

    Exponents are translated so that every variable has minimum exponent 0,
    then the sign is fixed so that the lexicographically smallest monomial has a
    positive coefficient.
    """
    if p.is_zero():
        return p
    support = list(p._terms)
    mins = tuple(min(e[i] for e in support) for i in range(p.nvars))
    q = p.shift(tuple(-m for m in mins))
    lead = min(q._terms)
    return -q if q.coeff(lead) < 0 else q


def doteq_equal(p: LaurentPoly, q: LaurentPoly) -> bool:
    if p.nvars != q.nvars:
        raise ValueError(f"variable-count mismatch: {p.nvars} vs {q.nvars}")
    return doteq_normalize(p) == doteq_normalize(q)


def substitute_one(p: LaurentPoly, i: int) -> LaurentPoly:
    """Set ``t_i = 1`` (1-based index); the result has one variable fewer."""
    if not 1 <= i <= p.nvars:
        raise IndexError(f"variable index {i} out of range 1..{p.nvars}")
    out: dict[Exponent, int] = {}
    for e, c in p.items():
        e2 = e[: i - 1] + e[i:]
        out[e2] = out.get(e2, 0) + c
    return LaurentPoly(out, p.nvars - 1)


class TruncatedSeries:
    """A power series in Z[[t1, ..., tn]] known modulo total degree > ``cutoff``."""

    __slots__ = ("poly", "cutoff")

    def __init__(self, poly: LaurentPoly, cutoff: int):
        if cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        if not poly.is_nonnegative():
            raise ValueError("truncated series cannot carry negative exponents")
        self.poly = LaurentPoly(
            {e: c for e, c in poly.items() if _total(e) <= cutoff}, poly.nvars
        )
        self.cutoff = cutoff

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    @classmethod
    def one(cls, nvars: int, cutoff: int) -> "TruncatedSeries":
        return cls(LaurentPoly.one(nvars), cutoff)

    def coeff(self, e: Iterable[int]) -> int:
        return self.poly.coeff(e)

    def _check(self, other: "TruncatedSeries"):
        if self.nvars != other.nvars or self.cutoff != other.cutoff:
            raise ValueError(
                f"series mismatch: (nvars={self.nvars}, cutoff={self.cutoff}) vs "
                f"(nvars={other.nvars}, cutoff={other.cutoff})"
            )

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            other = truncate(other, self.cutoff)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_mul(self, other)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        return TruncatedSeries(self.poly + other.poly, self.cutoff)

    def __neg__(self):
        return TruncatedSeries(-self.poly, self.cutoff)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        return self.poly == other.poly

    def __hash__(self):
        return hash((self.poly, self.cutoff))

    def __str__(self):
        return render(self.poly)

    def __repr__(self):
        return f"TruncatedSeries({render(self.poly)!r}, cutoff={self.cutoff})"


def truncate(p: LaurentPoly, cutoff: int) -> TruncatedSeries:
    if not p.is_nonnegative():
        raise ValueError(f"cannot truncate {p}: negative exponent present")
    return TruncatedSeries(p, cutoff)


def series_mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    s._check(t)
    c = s.cutoff
    out: dict[Exponent, int] = {}
    for e1, c1 in s.poly.items():
        d1 = _total(e1)
        for e2, c2 in t.poly.items():
            if d1 + _total(e2) > c:
                continue
            e = _add_exp(e1, e2)
            out[e] = out.get(e, 0) + c1 * c2
    return TruncatedSeries(LaurentPoly(out, s.nvars), c)


def series_product(factors: Iterable[TruncatedSeries], nvars: int, cutoff: int) -> TruncatedSeries:
    acc = TruncatedSeries.one(nvars, cutoff)
    for f in factors:
        acc = series_mul(acc, f)
    return acc


def geometric_series(e: Iterable[int], cutoff: int) -> TruncatedSeries:
    """``1 + x^e + x^{2e} + ...``, the inverse of ``1 - x^e`` in the truncated ring."""
    e = tuple(e)
    if any(k < 0 for k in e):
        raise ValueError(f"geometric series needs a nonnegative exponent, got {e}")
    step = _total(e)
    if step == 0:
        raise ValueError("1 - x^0 = 0 is not invertible")
    terms = {tuple(l * k for k in e): 1 for l in range(cutoff // step + 1)}
    return TruncatedSeries(LaurentPoly(terms, len(e)), cutoff)


class RationalSeries:
    """Truncated power series with exact ``Fraction`` coefficients (oracle use only)."""

    __slots__ = ("terms", "nvars", "cutoff")

    def __init__(self, terms: Mapping[Exponent, Fraction | int], nvars: int, cutoff: int):
        clean = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have {nvars} entries")
            if any(k < 0 for k in e):
                raise ValueError("rational series cannot carry negative exponents")
            c = Fraction(c)
            if c and _total(e) <= cutoff:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self.nvars = nvars
        self.cutoff = cutoff

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        if (self.nvars, self.cutoff) != (other.nvars, other.cutoff):
            raise ValueError("rational series mismatch")
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = _total(e1)
            for e2, c2 in other.terms.items():
                if d1 + _total(e2) <= self.cutoff:
                    e = _add_exp(e1, e2)
                    out[e] = out.get(e, 0) + c1 * c2
        return RationalSeries(out, self.nvars, self.cutoff)

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return (self.nvars, self.cutoff, self.terms) == (other.nvars, other.cutoff, other.terms)

    def to_integer_series(self) -> TruncatedSeries:
        bad = [e for e, c in self.terms.items() if c.denominator != 1]
        if bad:
            raise ArithmeticError(f"non-integer coefficients at {sorted(bad)}")
        return TruncatedSeries(
            LaurentPoly({e: int(c) for e, c in self.terms.items()}, self.nvars), self.cutoff
        )

    def __repr__(self):
        return f"RationalSeries({self.terms!r}, cutoff={self.cutoff})"


def exp_series(s: RationalSeries) -> RationalSeries:
    """Formal ``exp(s) = sum s^k / k!`` for ``s`` without constant term."""
    zero = (0,) * s.nvars
    if s.terms.get(zero, 0) != 0:
        raise ValueError("exp_series needs a series with zero constant term")
    out = RationalSeries({zero: 1}, s.nvars, s.cutoff)
    power = RationalSeries({zero: 1}, s.nvars, s.cutoff)
    # s^k has no terms below total degree k
    for k in range(1, s.cutoff + 1):
        power = power * s
        if not power.terms:
            break
        scaled = {e: c / math.factorial(k) for e, c in power.terms.items()}
        merged = dict(out.terms)
        for e, c in scaled.items():
            merged[e] = merged.get(e, 0) + c
        out = RationalSeries(merged, s.nvars, s.cutoff)
    return out


def log_series(e: Iterable[int], cutoff: int, signs) -> RationalSeries:
    """``sum_{i>=1} signs(i) x^{i e} / i``, truncated.

    With ``signs = lambda i: 1`` this is ``-log(1 - x^e)``; with ``-1`` it is
    ``log(1 - x^e)``; with ``(-1)^(i+1)`` it is ``log(1 + x^e)``.
    """
    e = tuple(e)
    step = _total(e)
    if step <= 0:
        raise ValueError("log expansion needs a nonzero nonnegative exponent")
    terms = {
        tuple(i * k for k in e): Fraction(signs(i), i) for i in range(1, cutoff // step + 1)
    }
    return RationalSeries(terms, len(e), cutoff)


def unit_minus_monomial(e: Iterable[int]) -> LaurentPoly:
    """``1 - x^e`` (identically zero when ``e`` is the zero vector)."""
    e = tuple(e)
    return LaurentPoly.one(len(e)) - LaurentPoly.monomial(e)
