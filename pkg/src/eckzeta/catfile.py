"""Reading and writing catalog, matrix, polynomial and Torres-manifest files.

Catalog files are JSON documents with exactly these fields::

    {
      "nvars": 1,
      "interior": [{"id": "g1", "kind": "elliptic", "degree": [1], "action": "3/2"}],
      "boundary": [{"e": "e1", "h": "h1", "e_plus": "ep1", "h_plus": "hp1"}],
      "interior_differential": [{"from": {"a1": 1}, "to": {"b1": 1}}]
    }

A boundary entry names four orbit ids; their kinds follow from the role and
their degree is the meridian unit vector of the component.  An entry may also
spell an orbit out in full (``{"id", "kind", "degree", "action"}``), which is
how a mislabelled boundary orbit can be written down and then rejected by
validation.  Unknown fields anywhere are an error.

Matrix files hold one row of whitespace-separated integers per line; ``#``
starts a comment and a file with no rows is the 0x0 matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .eckcomplex import InteriorDifferential
from .orbitcat import (
    ROLE_KINDS,
    ROLES,
    BoundaryQuadruple,
    OrbitCatalog,
    OrbitKind,
    OrbitSet,
    SimpleOrbit,
    unit,
)
from .ring import LaurentPoly, parse_poly, render


class CatalogFormatError(ValueError):
    """An input file does not follow the expected format."""


TOP_FIELDS = {"nvars", "interior", "boundary", "interior_differential"}
ORBIT_FIELDS = {"id", "kind", "degree", "action"}
DIFF_FIELDS = {"from", "to"}
TORRES_FIELDS = {"full", "sub", "lk"}


def _strict(obj, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise CatalogFormatError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise CatalogFormatError(f"{where}: unknown field(s) {unknown}")
    missing = sorted(required - set(obj))
    if missing:
        raise CatalogFormatError(f"{where}: missing field(s) {missing}")


def _int(x, where: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool):
        raise CatalogFormatError(f"{where}: expected an integer, got {x!r}")
    return x


def _action(x, where: str) -> Fraction | None:
    if x is None:
        return None
    if not isinstance(x, str):
        raise CatalogFormatError(f"{where}: action must be a string like \"3/2\", got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise CatalogFormatError(f"{where}: bad rational {x!r}") from None


def _kind(x, where: str) -> OrbitKind:
    try:
        return OrbitKind(x)
    except ValueError:
        names = ", ".join(k.value for k in OrbitKind)
        raise CatalogFormatError(f"{where}: kind must be one of {names}, got {x!r}") from None


def _orbit(obj, where: str) -> SimpleOrbit:
    _strict(obj, ORBIT_FIELDS, {"id", "kind", "degree"}, where)
    if not isinstance(obj["id"], str) or not obj["id"]:
        raise CatalogFormatError(f"{where}: id must be a nonempty string")
    deg = obj["degree"]
    if not isinstance(deg, list):
        raise CatalogFormatError(f"{where}: degree must be a list of integers")
    return SimpleOrbit(
        obj["id"],
        _kind(obj["kind"], where),
        tuple(_int(k, f"{where}.degree") for k in deg),
        _action(obj.get("action"), where),
    )


def _multiset(obj, where: str) -> OrbitSet:
    if not isinstance(obj, dict):
        raise CatalogFormatError(f"{where}: expected an id -> multiplicity map")
    mults = {}
    for oid, k in obj.items():
        k = _int(k, f"{where}.{oid}")
        if k < 0:
            raise CatalogFormatError(f"{where}.{oid}: negative multiplicity")
        mults[oid] = k
    return OrbitSet(mults)


def catalog_from_dict(doc, name: str = "catalog") -> tuple[OrbitCatalog, InteriorDifferential]:
    _strict(doc, TOP_FIELDS, {"nvars", "interior", "boundary"}, "catalog")
    n = _int(doc["nvars"], "nvars")
    if n < 1:
        raise CatalogFormatError(f"nvars must be >= 1, got {n}")
    if not isinstance(doc["interior"], list):
        raise CatalogFormatError("interior must be a list")
    interior = [_orbit(o, f"interior[{k}]") for k, o in enumerate(doc["interior"])]
    if not isinstance(doc["boundary"], list):
        raise CatalogFormatError("boundary must be a list")
    boundary = []
    for i, q in enumerate(doc["boundary"]):
        where = f"boundary[{i}]"
        _strict(q, set(ROLES), set(ROLES), where)
        orbits = {}
        for role in ROLES:
            entry = q[role]
            if isinstance(entry, str):
                orbits[role] = SimpleOrbit(entry, ROLE_KINDS[role], unit(n, i))
            else:
                orbits[role] = _orbit(entry, f"{where}.{role}")
        boundary.append(BoundaryQuadruple(**orbits))
    entries = []
    diff = doc.get("interior_differential", [])
    if not isinstance(diff, list):
        raise CatalogFormatError("interior_differential must be a list")
    for k, entry in enumerate(diff):
        where = f"interior_differential[{k}]"
        _strict(entry, DIFF_FIELDS, DIFF_FIELDS, where)
        entries.append((_multiset(entry["from"], f"{where}.from"), _multiset(entry["to"], f"{where}.to")))
    cat = OrbitCatalog(n, tuple(interior), tuple(boundary), name)
    return cat, InteriorDifferential(tuple(entries))


def load_catalog(path) -> tuple[OrbitCatalog, InteriorDifferential]:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CatalogFormatError(f"{path}: not valid JSON ({exc})") from None
    return catalog_from_dict(doc, path.stem)


def _orbit_dict(o: SimpleOrbit) -> dict:
    out = {"id": o.id, "kind": o.kind.value, "degree": list(o.degree)}
    if o.action is not None:
        out["action"] = f"{o.action.numerator}/{o.action.denominator}"
    return out


def catalog_to_dict(cat: OrbitCatalog, interior: InteriorDifferential | None = None) -> dict:
    boundary = []
    for i, q in enumerate(cat.boundary):
        entry = {}
        for role in ROLES:
            o = getattr(q, role)
            plain = o.kind is ROLE_KINDS[role] and o.degree == unit(cat.nvars, i) and o.action is None
            entry[role] = o.id if plain else _orbit_dict(o)
        boundary.append(entry)
    doc = {
        "nvars": cat.nvars,
        "interior": [_orbit_dict(o) for o in cat.interior],
        "boundary": boundary,
    }
    if interior and interior.entries:
        doc["interior_differential"] = [
            {"from": dict(s.items()), "to": dict(t.items())} for s, t in interior.entries
        ]
    return doc


def dump_catalog(cat: OrbitCatalog, interior: InteriorDifferential | None = None) -> str:
    """JSON text with one orbit, quadruple or differential entry per line."""
    doc = catalog_to_dict(cat, interior)
    parts = [f'  "nvars": {doc["nvars"]}']
    for key in ("interior", "boundary", "interior_differential"):
        if key not in doc:
            continue
        rows = [json.dumps(item) for item in doc[key]]
        body = "[]" if not rows else "[\n" + ",\n".join(f"    {r}" for r in rows) + "\n  ]"
        parts.append(f'  "{key}": {body}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def parse_matrix(text: str) -> list[list[int]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise CatalogFormatError(f"line {lineno}: matrix entries must be integers") from None
    for row in rows:
        if len(row) != len(rows):
            raise CatalogFormatError(f"matrix must be square: {len(rows)} rows, a row of length {len(row)}")
    return rows


def load_matrix(path) -> list[list[int]]:
    return parse_matrix(Path(path).read_text())


def dump_matrix(M) -> str:
    return "".join(" ".join(str(x) for x in row) + "\n" for row in M)


def load_poly(path, nvars: int | None = None) -> LaurentPoly:
    lines = [ln.split("#", 1)[0].strip() for ln in Path(path).read_text().splitlines()]
    text = " ".join(ln for ln in lines if ln)
    try:
        return parse_poly(text, nvars)
    except ValueError as exc:
        raise CatalogFormatError(f"{path}: {exc}") from None


@dataclass(frozen=True)
class TorresManifest:
    full: Path
    sub: Path
    lk: tuple[int, ...]


def load_torres(path) -> TorresManifest:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CatalogFormatError(f"{path}: not valid JSON ({exc})") from None
    _strict(doc, TORRES_FIELDS, TORRES_FIELDS, "torres")
    if not isinstance(doc["lk"], list):
        raise CatalogFormatError("torres.lk must be a list of integers")
    lk = tuple(_int(k, "torres.lk") for k in doc["lk"])
    return TorresManifest(path.parent / doc["full"], path.parent / doc["sub"], lk)


# --- built-in corpus

def _unknot() -> OrbitCatalog:
    return OrbitCatalog.standard(1, [SimpleOrbit("g1", OrbitKind.ELLIPTIC, (1,), Fraction(3, 2))])


CORPUS_FILES: dict[str, dict[str, str]] = {
    "unknot": {"unknot.cat": dump_catalog(_unknot())},
    "empty1": {"empty1.cat": dump_catalog(OrbitCatalog.standard(1))},
    "empty2": {"empty2.cat": dump_catalog(OrbitCatalog.standard(2))},
    "empty3": {"empty3.cat": dump_catalog(OrbitCatalog.standard(3))},
    "trefoil": {"trefoil.mat": "# trefoil page monodromy on H_1\n1 -1\n1 0\n"},
    "fig8": {"fig8.mat": "# figure-eight page monodromy on H_1\n2 1\n1 1\n"},
    "hopf": {
        "hopf.torres": json.dumps({"full": "hopf_full.poly", "sub": "hopf_sub.cat", "lk": [1]}, indent=2) + "\n",
        "hopf_full.poly": render(LaurentPoly.one(2)) + "\n",
        "hopf_sub.cat": dump_catalog(_unknot()),
    },
}

# the file `check` should be pointed at for each corpus item
CORPUS_ENTRY = {
    "unknot": "unknot.cat",
    "empty1": "empty1.cat",
    "empty2": "empty2.cat",
    "empty3": "empty3.cat",
    "trefoil": "trefoil.mat",
    "fig8": "fig8.mat",
    "hopf": "hopf.torres",
}


def write_corpus(name: str, out_dir) -> list[Path]:
    if name not in CORPUS_FILES:
        raise KeyError(name)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for fname, text in CORPUS_FILES[name].items():
        p = out_dir / fname
        p.write_text(text)
        written.append(p)
    return written
