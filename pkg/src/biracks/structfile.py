"""Text format for structures: grids or translation permutations.

A structure file is line oriented.  Header keys are ``kind``, ``n``,
``base`` and optionally ``note``; the body is either named n x n integer
grids (``circ``/``bullet`` for biracks, ``op`` otherwise) or cycle-notation
translation lines ``L<sym>:``/``R<sym>:`` for the solution_perms kind.
Grid entries and permutation symbols are written in the declared index
base, so printed source tables can be committed verbatim; in-memory
storage is always 0-indexed.

Parsing accepts blank lines and ``#`` comments; serialization is canonical
and dropping a file through parse + serialize is idempotent after the
first pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import BinaryOpTable, Permutation, perm_parse_cycles
from .birack import Birack, birack_from_tables
from .cycleset import LeftQuasigroup
from .modes import Groupoid

__all__ = [
    "KINDS",
    "ParseError",
    "StructureFile",
    "from_birack",
    "from_groupoid",
    "from_left_quasigroup",
    "parse_structure_text",
    "serialize",
    "to_structure",
]

KINDS = ("birack", "left_quasigroup", "groupoid", "solution_perms")


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True, eq=True)
class StructureFile:
    """Parsed structure file with 0-indexed tables."""

    kind: str
    n: int
    base: int = 0
    note: str = ""
    tables: tuple[tuple[str, BinaryOpTable], ...] = ()
    l_maps: tuple[Permutation, ...] = ()
    r_maps: tuple[Permutation, ...] = ()

    def table(self, name: str) -> BinaryOpTable:
        for key, value in self.tables:
            if key == name:
                return value
        raise KeyError(name)


_GRID_NAMES = {
    "birack": ("circ", "bullet"),
    "left_quasigroup": ("op",),
    "groupoid": ("op",),
}


def parse_structure_text(text: str) -> StructureFile:
    lines = text.splitlines()
    kind: str | None = None
    n: int | None = None
    base = 0
    note = ""
    grids: dict[str, BinaryOpTable] = {}
    l_maps: dict[int, Permutation] = {}
    r_maps: dict[int, Permutation] = {}

    def read_grid(start: int, name: str) -> tuple[BinaryOpTable, int]:
        if n is None:
            raise ParseError(f"table {name!r} before 'n'", start)
        rows = []
        i = start
        while len(rows) < n:
            if i >= len(lines):
                raise ParseError(f"table {name!r}: expected {n} rows, "
                                 f"got {len(rows)}", i)
            raw = lines[i].strip()
            i += 1
            if not raw or raw.startswith("#"):
                continue
            parts = raw.split()
            try:
                entries = [int(p) for p in parts]
            except ValueError:
                raise ParseError(f"table {name!r}: bad integer in row", i) from None
            if len(entries) != n:
                raise ParseError(f"table {name!r}: row has {len(entries)} "
                                 f"entries, expected {n}", i)
            for v in entries:
                if not base <= v < base + n:
                    raise ParseError(f"table {name!r}: entry {v} out of range "
                                     f"{base}..{base + n - 1}", i)
            rows.append(tuple(v - base for v in entries))
        return BinaryOpTable(tuple(rows)), i

    i = 0
    while i < len(lines):
        raw = lines[i].strip()
        lineno = i + 1
        i += 1
        if not raw or raw.startswith("#"):
            continue
        if ":" not in raw:
            raise ParseError(f"expected 'key: value', got {raw!r}", lineno)
        key, _, value = raw.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "kind":
            if value not in KINDS:
                raise ParseError(f"unknown kind {value!r}", lineno)
            kind = value
        elif key == "n":
            try:
                n = int(value)
            except ValueError:
                raise ParseError(f"bad n: {value!r}", lineno) from None
            if n < 1:
                raise ParseError("n must be positive", lineno)
        elif key == "base":
            try:
                base = int(value)
            except ValueError:
                raise ParseError(f"bad base: {value!r}", lineno) from None
        elif key == "note":
            note = value
        elif key in ("circ", "bullet", "op"):
            if value:
                raise ParseError(f"table line {key!r} carries trailing text", lineno)
            grid, i = read_grid(i, key)
            grids[key] = grid
        elif key[:1] in ("L", "R") and key[1:].lstrip("-").isdigit():
            if n is None:
                raise ParseError(f"{key!r} before 'n'", lineno)
            sym = int(key[1:])
            if not base <= sym < base + n:
                raise ParseError(f"translation symbol {sym} out of range", lineno)
            target = l_maps if key[0] == "L" else r_maps
            if sym - base in target:
                raise ParseError(f"duplicate translation {key!r}", lineno)
            try:
                target[sym - base] = perm_parse_cycles(value, n, base)
            except ValueError as e:
                raise ParseError(str(e), lineno) from None
        else:
            raise ParseError(f"unknown key {key!r}", lineno)

    if kind is None:
        raise ParseError("missing 'kind'", len(lines) + 1)
    if n is None:
        raise ParseError("missing 'n'", len(lines) + 1)
    if kind == "solution_perms":
        if grids:
            raise ParseError("solution_perms files carry no grids", len(lines) + 1)
        for label, maps in (("L", l_maps), ("R", r_maps)):
            missing = [x + base for x in range(n) if x not in maps]
            if missing:
                raise ParseError(f"missing {label}-translations for {missing}",
                                 len(lines) + 1)
        return StructureFile(
            kind, n, base, note,
            l_maps=tuple(l_maps[x] for x in range(n)),
            r_maps=tuple(r_maps[x] for x in range(n)))
    expected = _GRID_NAMES[kind]
    if l_maps or r_maps:
        raise ParseError(f"{kind} files carry no translation lines",
                         len(lines) + 1)
    for name in expected:
        if name not in grids:
            raise ParseError(f"missing table {name!r}", len(lines) + 1)
    extra = set(grids) - set(expected)
    if extra:
        raise ParseError(f"unexpected table {sorted(extra)[0]!r}", len(lines) + 1)
    return StructureFile(kind, n, base, note,
                         tables=tuple((name, grids[name]) for name in expected))


def serialize(sf: StructureFile) -> str:
    out = [f"kind: {sf.kind}", f"n: {sf.n}", f"base: {sf.base}"]
    if sf.note:
        out.append(f"note: {sf.note}")
    for name, table in sf.tables:
        out.append(f"{name}:")
        for row in table.cells:
            out.append(" ".join(str(v + sf.base) for v in row))
    if sf.kind == "solution_perms":
        for label, maps in (("L", sf.l_maps), ("R", sf.r_maps)):
            for x, p in enumerate(maps):
                out.append(f"{label}{x + sf.base}: {p.cycle_string(sf.base)}")
    return "\n".join(out) + "\n"


def to_structure(sf: StructureFile) -> Birack | LeftQuasigroup | Groupoid:
    """Build the validated structure a file describes.

    Raises the underlying validation error (with witness) when the tables
    are in range but semantically invalid for their kind.
    """
    if sf.kind == "birack":
        return birack_from_tables(sf.table("circ"), sf.table("bullet"))
    if sf.kind == "left_quasigroup":
        return LeftQuasigroup.from_op(sf.table("op"))
    if sf.kind == "groupoid":
        return Groupoid(sf.table("op"))
    n = sf.n
    circ = BinaryOpTable(tuple(p.images for p in sf.l_maps))
    bullet = BinaryOpTable(tuple(
        tuple(sf.r_maps[y](x) for y in range(n)) for x in range(n)))
    return birack_from_tables(circ, bullet)


def from_birack(b: Birack, base: int = 0, note: str = "",
                as_perms: bool = False) -> StructureFile:
    if as_perms:
        return StructureFile(
            "solution_perms", b.n, base, note,
            l_maps=tuple(b.circ.row_perm(x) for x in range(b.n)),
            r_maps=tuple(b.bullet.col_perm(x) for x in range(b.n)))
    return StructureFile("birack", b.n, base, note,
                         tables=(("circ", b.circ), ("bullet", b.bullet)))


def from_left_quasigroup(lq: LeftQuasigroup, base: int = 0,
                         note: str = "") -> StructureFile:
    return StructureFile("left_quasigroup", lq.n, base, note,
                         tables=(("op", lq.op),))


def from_groupoid(g: Groupoid, base: int = 0, note: str = "") -> StructureFile:
    return StructureFile("groupoid", g.n, base, note, tables=(("op", g.op),))
