"""Command-line interface: ``eckzeta euler|alex|homology|check|torres|corpus|random``.

Exit codes: 0 success, 1 mathematical failure (mismatch, violation, d^2 != 0),
2 input failure (unreadable or invalid files, unknown names).
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

from . import __version__
from .alexander import (
    GUARD_BAND,
    AlexResult,
    FinitenessError,
    alex_fibered_knot,
    alex_from_catalog,
    char_det,
    char_det_cofactor,
    delta_from_alex,
    polynomial_result,
    torres_sides,
)
from .catfile import (
    CORPUS_FILES,
    CatalogFormatError,
    dump_catalog,
    load_catalog,
    load_matrix,
    load_poly,
    load_torres,
    write_corpus,
)
from .eckcomplex import (
    InvalidDifferentialError,
    NotSquareZeroError,
    build_complex,
    chi_from_complex,
    connecting_map_check,
    d_squared_zero,
    degree_preserved_check,
    filtration_check,
    grading_flip_check,
    homology_dims,
    interior_square_zero,
    quotient_by_e,
    validate_interior,
)
from .orbitcat import unit, validate_catalog
from .randomcat import random_catalog, random_catalog_with_differential
from .ring import TruncatedSeries, doteq_equal, doteq_normalize, render, series_mul, truncate, unit_minus_monomial
from .zeta import boundary_package, chi_by_enumeration, chi_full, chi_hat

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Reported on stderr with exit code 2."""


def _load_valid_catalog(path):
    try:
        cat, diff = load_catalog(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except CatalogFormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    problems = validate_catalog(cat) + validate_interior(cat, diff)
    if problems:
        raise InputError(f"{path}: invalid catalog\n" + "\n".join(f"  {p}" for p in problems))
    return cat, diff


def _load_matrix(path):
    try:
        return load_matrix(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except CatalogFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_poly(path, nvars):
    try:
        return load_poly(path, nvars)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except CatalogFormatError as exc:
        raise InputError(str(exc)) from None


# --- euler

def cmd_euler(args) -> int:
    cat, _ = _load_valid_catalog(args.catalog)
    flavor = "hat" if args.hat else "full"
    res = (chi_hat if args.hat else chi_full)(cat, args.cutoff)
    poly = doteq_normalize(res.series.poly) if args.normalize else res.series.poly
    print(render(poly))
    if args.oracle:
        ok = chi_by_enumeration(cat, args.cutoff, flavor).series == res.series
        print(f"oracle: {'MATCH' if ok else 'MISMATCH'}")
        if not ok:
            return EXIT_MATH
    return EXIT_OK


# --- alex

def _alex_of(path: str, source: str, cutoff: int | None) -> AlexResult:
    if source == "monodromy":
        M = _load_matrix(path)
        need = len(M) + GUARD_BAND
        return alex_fibered_knot(M, cutoff if cutoff is not None else max(8, need))
    cat, _ = _load_valid_catalog(path)
    return alex_from_catalog(cat, cutoff if cutoff is not None else 8)


def cmd_alex(args) -> int:
    source, path = ("monodromy", args.monodromy) if args.monodromy else ("catalog", args.catalog)
    try:
        a = _alex_of(path, source, args.cutoff)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if not args.delta:
        print(str(a))
        return EXIT_OK
    try:
        d = delta_from_alex(a, a.nvars)
    except FinitenessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    print(str(d))
    return EXIT_OK


# --- homology

def cmd_homology(args) -> int:
    cat, diff = _load_valid_catalog(args.catalog)
    c = build_complex(cat, diff, args.flavor, args.cutoff)
    if args.quotient is not None:
        if args.flavor == "ech":
            raise InputError("--quotient needs --flavor full or hat")
        if not 1 <= args.quotient <= cat.nvars:
            raise InputError(f"--quotient must be in 1..{cat.nvars}")
        c = quotient_by_e(c, args.quotient)
    h = homology_dims(c)
    for line in h.lines():
        print(line)
    if args.flavor == "ech":
        ok = filtration_check(c)
        print(f"filtration: {'OK' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_MATH
    chain = chi_from_complex(c, "chain")
    homol = chi_from_complex(c, "homology")
    print(f"chi: {render(homol)}")
    if chain != homol:
        print(f"chi(chain): {render(chain)}  MISMATCH")
        return EXIT_MATH
    return EXIT_OK


# --- check

def _run_items(items) -> list[tuple[str, bool, str]]:
    out = []
    for label, fn in items:
        try:
            res = fn()
        except Exception as exc:  # a crashing check is a failing check
            out.append((label, False, f"{type(exc).__name__}: {exc}"))
            continue
        ok, detail = res if isinstance(res, tuple) else (bool(res), "")
        out.append((label, ok, detail))
    return out


def catalog_suite(cat, diff, cutoff: int) -> list[tuple[str, bool, str]]:
    """The invariant suite on one catalog, in a fixed order."""
    n = cat.nvars
    complexes = {}

    def cx(flavor):
        if flavor not in complexes:
            complexes[flavor] = build_complex(cat, diff, flavor, cutoff, check=False)
        return complexes[flavor]

    def hat_full_relation():
        full = chi_from_complex(cx("full"), "chain")
        acc = truncate(full, cutoff)
        for i in range(n):
            acc = series_mul(acc, TruncatedSeries(unit_minus_monomial(unit(n, i)), cutoff))
        return acc.poly == chi_from_complex(cx("hat"), "chain")

    def connecting():
        rep = connecting_map_check(cat, diff, cutoff, check=False)
        return rep.passed, "" if rep.passed else "; ".join(
            line for line in rep.lines() if "=no" in line and "unstable" not in line
        )

    items = [
        ("validate catalog", lambda: not validate_catalog(cat)),
        ("validate interior differential", lambda: not validate_interior(cat, diff)),
        ("interior d^2 = 0", lambda: interior_square_zero(diff)),
    ]
    for fl in ("full", "hat", "ech"):
        items.append((f"d^2 = 0 [{fl}]", lambda fl=fl: d_squared_zero(cx(fl))))
    for fl in ("full", "hat", "ech"):
        items.append((f"grading flip [{fl}]", lambda fl=fl: grading_flip_check(cx(fl))))
    for fl in ("full", "hat"):
        items.append((f"degree preserved [{fl}]", lambda fl=fl: degree_preserved_check(cx(fl))))
    items.append(("filtration [ech]", lambda: filtration_check(cx("ech"))))
    items += [
        ("product = enumeration [full]",
         lambda: chi_full(cat, cutoff).series == chi_by_enumeration(cat, cutoff, "full").series),
        ("product = enumeration [hat]",
         lambda: chi_hat(cat, cutoff).series == chi_by_enumeration(cat, cutoff, "hat").series),
        ("chain chi = product [full]",
         lambda: chi_from_complex(cx("full"), "chain") == chi_full(cat, cutoff).series.poly),
    ]
    for fl in ("full", "hat"):
        items.append((f"homology chi = chain chi [{fl}]",
                      lambda fl=fl: chi_from_complex(cx(fl), "homology") == chi_from_complex(cx(fl), "chain")))
    for i in range(n):
        items.append((f"boundary package = 1 [component {i + 1}]",
                      lambda i=i: boundary_package(cat, i, cutoff) == TruncatedSeries.one(n, cutoff)))
    items.append(("hat/full relation", hat_full_relation))
    if n == 1:
        items.append(("connecting map", connecting))
    return _run_items(items)


def matrix_suite(M, cutoff: int | None) -> list[tuple[str, bool, str]]:
    size = len(M)
    cut = cutoff if cutoff is not None else size + GUARD_BAND
    items = []
    if size <= 8:
        items.append(("char_det = cofactor oracle", lambda: char_det(M) == char_det_cofactor(M)))

    def round_trip():
        back = delta_from_alex(alex_fibered_knot(M, cut), 1).value
        return doteq_equal(back, char_det(M)), f"got {render(back)}"

    def lefschetz():
        a = alex_fibered_knot(M, max(cut, 1)).poly
        want = 1 - sum(M[i][i] for i in range(size))
        return a.coeff((1,)) == want, f"[t^1] = {a.coeff((1,))}, 1 - tr = {want}"

    items += [("delta from ALEX round trip", round_trip), ("[t^1] ALEX = 1 - trace", lefschetz)]
    return _run_items(items)


def _sub_alex(path: Path, nsub: int, cutoff: int) -> AlexResult:
    suffix = path.suffix
    if suffix == ".cat":
        cat, _ = _load_valid_catalog(path)
        if cat.nvars != nsub:
            raise InputError(f"{path}: sublink catalog has {cat.nvars} variables, expected {nsub}")
        return alex_from_catalog(cat, cutoff)
    if suffix == ".mat":
        if nsub != 1:
            raise InputError("a monodromy matrix describes a knot; the linking vector must have one entry")
        M = _load_matrix(path)
        try:
            return alex_fibered_knot(M, max(cutoff, len(M) + GUARD_BAND))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if suffix == ".poly":
        # a polynomial file is taken as ALEX itself
        return polynomial_result(_load_poly(path, nsub))
    raise InputError(f"{path}: unsupported sublink file type {suffix!r} (want .cat, .mat or .poly)")


def _full_delta(path: Path, nfull: int, cutoff: int):
    if path.suffix == ".cat":
        cat, _ = _load_valid_catalog(path)
        if cat.nvars != nfull:
            raise InputError(f"{path}: link catalog has {cat.nvars} variables, expected {nfull}")
        return delta_from_alex(alex_from_catalog(cat, cutoff), nfull).value
    return _load_poly(path, nfull)


def torres_result(full: Path, sub: Path, lk, cutoff: int):
    lk = tuple(lk)
    delta = _full_delta(Path(full), len(lk) + 1, cutoff)
    s = _sub_alex(Path(sub), len(lk), cutoff)
    lhs, rhs = torres_sides(delta, s, lk)
    return lhs, rhs, doteq_equal(lhs, rhs)


def torres_suite(path, cutoff: int) -> list[tuple[str, bool, str]]:
    man = load_torres(path)

    def run():
        lhs, rhs, ok = torres_result(man.full, man.sub, man.lk, cutoff)
        return ok, f"{render(lhs)} vs {render(rhs)}"

    return _run_items([("torres formula", run)])


def cmd_check(args) -> int:
    path = Path(args.path)
    if path.suffix == ".mat":
        results = matrix_suite(_load_matrix(path), args.cutoff)
    elif path.suffix == ".torres":
        try:
            results = torres_suite(path, args.cutoff if args.cutoff is not None else 10)
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
        except CatalogFormatError as exc:
            raise InputError(f"{path}: {exc}") from None
    else:
        try:
            cat, diff = load_catalog(path)
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
        except CatalogFormatError as exc:
            raise InputError(f"{path}: {exc}") from None
        problems = validate_catalog(cat)
        if problems:
            print("FAIL  validate catalog")
            for p in problems:
                print(f"      {p}")
            return EXIT_INPUT
        results = catalog_suite(cat, diff, args.cutoff if args.cutoff is not None else 5)
    failed = 0
    for label, ok, detail in results:
        failed += not ok
        line = f"{'PASS' if ok else 'FAIL'}  {label}"
        if detail and not ok:
            line += f"  ({detail})"
        print(line)
    print(f"summary: {len(results) - failed}/{len(results)} passed")
    return EXIT_OK if not failed else EXIT_MATH


# --- torres

def _parse_lk(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--lk must be comma-separated integers, got {text!r}") from None


def cmd_torres(args) -> int:
    lk = _parse_lk(args.lk)
    try:
        lhs, rhs, ok = torres_result(Path(args.full), Path(args.sub), lk, args.cutoff)
    except FinitenessError as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(f"lhs: {render(lhs)}")
    print(f"rhs: {render(rhs)}")
    print("HOLD" if ok else "VIOLATED")
    return EXIT_OK if ok else EXIT_MATH


# --- corpus / random

def cmd_corpus(args) -> int:
    if args.name is None:
        for name in CORPUS_FILES:
            print(f"{name}: {', '.join(CORPUS_FILES[name])}")
        return EXIT_OK
    if args.name not in CORPUS_FILES:
        raise InputError(f"unknown corpus item {args.name!r}; known: {', '.join(CORPUS_FILES)}")
    if args.out is None and len(CORPUS_FILES[args.name]) == 1:
        sys.stdout.write(next(iter(CORPUS_FILES[args.name].values())))
        return EXIT_OK
    for p in write_corpus(args.name, args.out or "."):
        print(f"wrote {p}")
    return EXIT_OK


def cmd_random(args) -> int:
    rng = random.Random(args.seed)
    name = f"random-seed-{args.seed}"
    if args.plain:
        cat, diff = random_catalog(rng, args.nvars, name=name), None
    else:
        cat, diff = random_catalog_with_differential(rng, args.nvars, name=name)
    sys.stdout.write(dump_catalog(cat, diff))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eckzeta", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--timing", action="store_true", help="report wall time on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("euler", help="graded Euler characteristic of the chain groups")
    e.add_argument("catalog")
    e.add_argument("--hat", action="store_true", help="hat flavor (drops the e+ orbits)")
    e.add_argument("--cutoff", type=int, default=8)
    e.add_argument("--oracle", action="store_true", help="recompute by enumerating orbit sets")
    e.add_argument("--normalize", action="store_true", help="normalize up to sign and monomial shift")
    e.set_defaults(func=cmd_euler)

    a = sub.add_parser("alex", help="Alexander quotient, or with --delta the Alexander polynomial")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--monodromy", metavar="MAT", help="page monodromy matrix of a fibered knot")
    src.add_argument("--catalog", metavar="CAT", help="orbit catalog")
    a.add_argument("--cutoff", type=int, default=None)
    a.add_argument("--delta", action="store_true")
    a.set_defaults(func=cmd_alex)

    h = sub.add_parser("homology", help="F2 homology of the orbit-set complex")
    h.add_argument("catalog")
    h.add_argument("--flavor", choices=("full", "hat", "ech"), default="full")
    h.add_argument("--cutoff", type=int, default=4)
    h.add_argument("--quotient", type=int, default=None, metavar="I",
                   help="quotient by e_I g ~ g (1-based component)")
    h.set_defaults(func=cmd_homology)

    c = sub.add_parser("check", help="run the invariant suite on a .cat, .mat or .torres file")
    c.add_argument("path")
    c.add_argument("--cutoff", type=int, default=None)
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("torres", help="check the Torres formula for a link and a sublink")
    t.add_argument("--full", required=True, help="Alexander polynomial of the link (.poly or .cat)")
    t.add_argument("--sub", required=True, help="ALEX of the sublink (.cat, .mat or .poly)")
    t.add_argument("--lk", required=True, help="linking numbers a1,...,an")
    t.add_argument("--cutoff", type=int, default=10)
    t.set_defaults(func=cmd_torres)

    k = sub.add_parser("corpus", help="list or write the built-in examples")
    k.add_argument("name", nargs="?")
    k.add_argument("--out", default=None, help="directory to write into")
    k.set_defaults(func=cmd_corpus)

    r = sub.add_parser("random", help="print a seeded random catalog")
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--nvars", type=int, default=None)
    r.add_argument("--plain", action="store_true", help="no interior differential")
    r.set_defaults(func=cmd_random)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    except InvalidDifferentialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    except NotSquareZeroError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_MATH
    if args.timing:
        print(f"time: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
