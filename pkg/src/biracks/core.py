"""Foundation types: permutations, operation tables, partitions, groups.

Everything in this package works over the carrier {0, ..., n-1}.  The four
value types here (Permutation, BinaryOpTable, Partition, PermGroup) are
immutable and hashable, and every function is pure, so values can be shared
freely between concurrent workers.

The composition convention is fixed once, globally: composing two maps
applies the right operand first, ``(p * q)(x) = p(q(x))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence


@dataclass(frozen=True)
class Verdict:
    """Outcome of a universally quantified check.

    ``witness`` is the lexicographically smallest tuple violating the
    property, or None when the property holds everywhere.
    """

    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {0, ..., n-1} stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images!r}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        return perm_compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images))

    def cycle_string(self, base: int = 0) -> str:
        return cycles_to_text(self, base)


def perm_compose(p: Permutation, q: Permutation) -> Permutation:
    """Compose two permutations, applying ``q`` first: x -> p(q(x))."""
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    qi = q.images
    pi = p.images
    return Permutation(tuple(pi[qi[x]] for x in range(p.n)))


_CYCLE_GROUP = re.compile(r"\(([^()]*)\)")


def perm_parse_cycles(text: str, n: int, base: int = 0) -> Permutation:
    """Parse cycle notation over symbols base..base+n-1 into a Permutation.

    Accepts compact single-character cycles like ``(12)(34)`` as well as
    separated symbols like ``(1 10 3)`` or ``(1,10,3)``.  Fixed points may
    be omitted; ``()`` and the empty string denote the identity.  Storage
    is always 0-indexed regardless of ``base``.
    """
    s = text.strip()
    images = list(range(n))
    if s in ("", "()"):
        return Permutation(tuple(images))
    bodies = _CYCLE_GROUP.findall(s)
    rest = _CYCLE_GROUP.sub("", s)
    if rest.strip() or s.count("(") != len(bodies) or s.count(")") != len(bodies):
        raise ValueError(f"malformed cycle notation: {text!r}")
    seen: set[int] = set()
    for body in bodies:
        body = body.strip()
        if not body:
            continue
        if any(sep in body for sep in (" ", ",", "\t")):
            symbols = [tok for tok in re.split(r"[,\s]+", body) if tok]
        else:
            symbols = list(body)
        cycle = []
        for sym in symbols:
            try:
                v = int(sym)
            except ValueError:
                raise ValueError(f"bad symbol {sym!r} in {text!r}") from None
            if not base <= v < base + n:
                raise ValueError(f"symbol {v} out of range {base}..{base + n - 1}")
            v -= base
            if v in seen:
                raise ValueError(f"repeated symbol {v + base} in {text!r}")
            seen.add(v)
            cycle.append(v)
        for i, a in enumerate(cycle):
            images[a] = cycle[(i + 1) % len(cycle)]
    return Permutation(tuple(images))


def cycles_to_text(p: Permutation, base: int = 0) -> str:
    """Canonical cycle notation: cycles sorted by smallest moved point.

    Fixed points are omitted; the identity renders as ``()``.  Symbols are
    space-separated whenever any of them needs more than one character.
    """
    cycles = []
    visited = [False] * p.n
    for start in range(p.n):
        if visited[start] or p(start) == start:
            visited[start] = True
            continue
        cyc = [start]
        visited[start] = True
        cur = p(start)
        while cur != start:
            visited[cur] = True
            cyc.append(cur)
            cur = p(cur)
        cycles.append(cyc)
    if not cycles:
        return "()"
    wide = base + p.n - 1 >= 10
    parts = []
    for cyc in cycles:
        syms = [str(v + base) for v in cyc]
        parts.append("(" + (" ".join(syms) if wide else "".join(syms)) + ")")
    return "".join(parts)


@dataclass(frozen=True)
class BinaryOpTable:
    """An n x n table over {0, ..., n-1}; ``cells[x][y]`` is x * y."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        n = len(cells)
        for x, row in enumerate(cells):
            if len(row) != n:
                raise ValueError(f"row {x} has length {len(row)}, expected {n}")
            for y, v in enumerate(row):
                if not 0 <= v < n:
                    raise ValueError(f"cell ({x},{y}) = {v} out of range 0..{n - 1}")

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], int]) -> BinaryOpTable:
        return cls(tuple(tuple(fn(x, y) for y in range(n)) for x in range(n)))

    @property
    def n(self) -> int:
        return len(self.cells)

    def apply(self, x: int, y: int) -> int:
        return self.cells[x][y]

    def row(self, x: int) -> tuple[int, ...]:
        return self.cells[x]

    def column(self, y: int) -> tuple[int, ...]:
        return tuple(row[y] for row in self.cells)

    def row_perm(self, x: int) -> Permutation:
        return Permutation(self.cells[x])

    def col_perm(self, y: int) -> Permutation:
        return Permutation(self.column(y))

    def transpose(self) -> BinaryOpTable:
        return BinaryOpTable(tuple(self.column(y) for y in range(self.n)))

    def rows_are_permutations(self) -> Verdict:
        for x, row in enumerate(self.cells):
            if len(set(row)) != self.n:
                return Verdict(False, (x,))
        return Verdict(True)

    def columns_are_permutations(self) -> Verdict:
        for y in range(self.n):
            if len(set(self.column(y))) != self.n:
                return Verdict(False, (y,))
        return Verdict(True)

    def row_inverse_table(self) -> BinaryOpTable:
        """The table of inverse rows: result[x][v] = y iff cells[x][y] = v."""
        rows = []
        for x, row in enumerate(self.cells):
            inv = [-1] * self.n
            for y, v in enumerate(row):
                if inv[v] != -1:
                    raise ValueError(f"row {x} is not a permutation")
                inv[v] = y
            rows.append(tuple(inv))
        return BinaryOpTable(tuple(rows))

    def column_inverse_table(self) -> BinaryOpTable:
        """The table of inverse columns: result[v][y] = x iff cells[x][y] = v."""
        cols = []
        for y in range(self.n):
            col = self.column(y)
            inv = [-1] * self.n
            for x, v in enumerate(col):
                if inv[v] != -1:
                    raise ValueError(f"column {y} is not a permutation")
                inv[v] = x
            cols.append(inv)
        return BinaryOpTable(tuple(tuple(cols[y][x] for y in range(self.n))
                                   for x in range(self.n)))


@dataclass(frozen=True)
class Partition:
    """An equivalence relation on {0, ..., n-1} in canonical form.

    Class labels are relabelled on construction to 0, 1, 2, ... in order of
    first occurrence, so two partitions are equal iff they describe the same
    relation.
    """

    class_of: tuple[int, ...]

    def __post_init__(self):
        relabel: dict[int, int] = {}
        out = []
        for label in self.class_of:
            if label not in relabel:
                relabel[label] = len(relabel)
            out.append(relabel[label])
        object.__setattr__(self, "class_of", tuple(out))

    @classmethod
    def from_keys(cls, keys: Sequence) -> Partition:
        """Partition grouping positions with equal keys."""
        index: dict = {}
        labels = []
        for k in keys:
            if k not in index:
                index[k] = len(index)
            labels.append(index[k])
        return cls(tuple(labels))

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> Partition:
        labels = [-1] * n
        for i, block in enumerate(blocks):
            for x in block:
                if not 0 <= x < n:
                    raise ValueError(f"element {x} out of range 0..{n - 1}")
                if labels[x] != -1:
                    raise ValueError(f"element {x} appears in two blocks")
                labels[x] = i
        if -1 in labels:
            raise ValueError(f"element {labels.index(-1)} not covered by any block")
        return cls(tuple(labels))

    @classmethod
    def identity(cls, n: int) -> Partition:
        """The finest partition: every element in its own class."""
        return cls(tuple(range(n)))

    @classmethod
    def full(cls, n: int) -> Partition:
        """The coarsest partition: a single class."""
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.class_of)

    @property
    def num_classes(self) -> int:
        return max(self.class_of) + 1 if self.class_of else 0

    def same(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for x, label in enumerate(self.class_of):
            out[label].append(x)
        return tuple(tuple(block) for block in out)

    def is_identity(self) -> bool:
        return self.num_classes == self.n

    def is_full(self) -> bool:
        return self.num_classes <= 1

    def meet(self, other: Partition) -> Partition:
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Partition.from_keys(list(zip(self.class_of, other.class_of)))

    def refines(self, other: Partition) -> bool:
        """True iff every class of self lies inside a class of other."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        image: dict[int, int] = {}
        for a, b in zip(self.class_of, other.class_of):
            if image.setdefault(a, b) != b:
                return False
        return True


def partition_is_congruence(op: BinaryOpTable, part: Partition) -> Verdict:
    """Check compatibility of a partition with one binary operation.

    Fails with the lexicographically smallest quadruple (x, y, z, t) such
    that x ~ y and z ~ t but x*z and y*t land in different classes.
    """
    if op.n != part.n:
        raise ValueError(f"size mismatch: table {op.n} vs partition {part.n}")
    cls = part.class_of
    cells = op.cells
    rng = range(op.n)
    for x in rng:
        for y in rng:
            if cls[x] != cls[y]:
                continue
            for z in rng:
                for t in rng:
                    if cls[z] != cls[t]:
                        continue
                    if cls[cells[x][z]] != cls[cells[y][t]]:
                        return Verdict(False, (x, y, z, t))
    return Verdict(True)


def quotient_op(op: BinaryOpTable, part: Partition) -> BinaryOpTable:
    """The induced table on the classes of a congruence.

    Rejects partitions that are not congruences rather than silently
    picking representatives.
    """
    verdict = partition_is_congruence(op, part)
    if not verdict.ok:
        raise ValueError(f"partition is not a congruence, witness {verdict.witness}")
    reps = [block[0] for block in part.blocks()]
    cls = part.class_of
    return BinaryOpTable(tuple(
        tuple(cls[op.cells[rx][ry]] for ry in reps) for rx in reps))


@dataclass(frozen=True)
class PermGroup:
    """A permutation group given by the closure of its generators."""

    n: int
    generators: tuple[Permutation, ...]
    elements: frozenset[Permutation]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(perm_compose(g, h) == perm_compose(h, g)
                   for g in gens for h in gens)

    def orbit_partition(self) -> Partition:
        labels = list(range(self.n))

        def find(x: int) -> int:
            while labels[x] != x:
                labels[x] = labels[labels[x]]
                x = labels[x]
            return x

        for g in self.generators:
            for x in range(self.n):
                rx, ry = find(x), find(g(x))
                if rx != ry:
                    labels[max(rx, ry)] = min(rx, ry)
        return Partition(tuple(find(x) for x in range(self.n)))

    def orbits(self) -> tuple[tuple[int, ...], ...]:
        return self.orbit_partition().blocks()


def group_closure(generators: Iterable[Permutation]) -> PermGroup:
    """Breadth-first closure of a generator set under composition.

    Carriers here are tiny, so no stabilizer chains: plain multiplication
    until nothing new appears.  The result always contains the identity and
    is closed under inverses (finite order of each element).
    """
    gens = tuple(generators)
    if not gens:
        raise ValueError("at least one generator is required")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValueError(f"generator size mismatch: {g.n} vs {n}")
    ident = Permutation.identity(n)
    elements = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for g in frontier:
            for h in gens:
                prod = perm_compose(g, h)
                if prod not in elements:
                    elements.add(prod)
                    fresh.append(prod)
        frontier = fresh
    return PermGroup(n, gens, frozenset(elements))
