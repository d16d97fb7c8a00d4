"""The translation-equality congruence of a birack and its iterates.

Two elements are identified when they induce the same left translation
under circ and the same right translation under bullet.  That relation is
a congruence of all four birack operations; quotienting and iterating
yields the retraction tower, whose terminal behaviour defines the
multipermutation level.

``verify_congruence_bruteforce`` is the independent oracle here: it checks
compatibility by quadruple loops and knows nothing about why the relation
should be a congruence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import Partition, Verdict, quotient_op
from .birack import Birack, birack_from_tables, classify

__all__ = [
    "ClaimsReport",
    "NotMultipermutation",
    "RetractionTower",
    "Singleton",
    "Stabilized",
    "Truncated",
    "Unknown",
    "ess_relation",
    "generalized_retraction",
    "left_equality",
    "multipermutation_level",
    "proof_identity_suite",
    "quotient_birack",
    "retraction_tower",
    "right_equality",
    "verify_congruence_bruteforce",
]


def left_equality(b: Birack) -> Partition:
    """Partition by equal left translations (equal rows of circ)."""
    return Partition.from_keys([b.circ.row(x) for x in range(b.n)])


def right_equality(b: Birack) -> Partition:
    """Partition by equal right translations (equal columns of bullet)."""
    return Partition.from_keys([b.bullet.column(x) for x in range(b.n)])


def generalized_retraction(b: Birack) -> Partition:
    """Partition by equal (L_x, R_x) pairs.

    The same relation falls out of the division tables (equal rows of
    ld_circ and equal columns of rd_bullet); both routes are computed and
    must agree.
    """
    primal = Partition.from_keys(
        [(b.circ.row(x), b.bullet.column(x)) for x in range(b.n)])
    divided = Partition.from_keys(
        [(b.ld_circ.row(x), b.rd_bullet.column(x)) for x in range(b.n)])
    if primal != divided:
        raise AssertionError("retraction relation differs between the two "
                             "defining routes; bug")
    return primal


def ess_relation(b: Birack) -> Partition:
    """Partition by equal right translations only.

    Coincides with the generalized retraction on involutive biracks; on
    arbitrary biracks it carries no congruence guarantee.
    """
    return right_equality(b)


_OP_NAMES = ("circ", "ld_circ", "bullet", "rd_bullet")


def verify_congruence_bruteforce(b: Birack, part: Partition) -> Verdict:
    """Quadruple-loop compatibility check against all four operations.

    On failure the witness is ``(op_name, x, y, z, t)`` with x ~ y, z ~ t
    but op(x, z) and op(y, t) in different classes; operations are tried in
    the order circ, ld_circ, bullet, rd_bullet and quadruples in
    lexicographic order.
    """
    if part.n != b.n:
        raise ValueError(f"size mismatch: birack {b.n} vs partition {part.n}")
    cls = part.class_of
    rng = range(b.n)
    tables = (b.circ.cells, b.ld_circ.cells, b.bullet.cells, b.rd_bullet.cells)
    for name, cells in zip(_OP_NAMES, tables):
        for x in rng:
            for y in rng:
                if cls[x] != cls[y]:
                    continue
                for z in rng:
                    for t in rng:
                        if cls[z] != cls[t]:
                            continue
                        if cls[cells[x][z]] != cls[cells[y][t]]:
                            return Verdict(False, (name, x, y, z, t))
    return Verdict(True)


def quotient_birack(b: Birack, part: Partition) -> Birack:
    """The induced birack on the classes of a congruence.

    Rejects partitions that fail the brute-force congruence check.  The
    result is re-validated from scratch, and equational classification
    flags must carry over from the input.
    """
    verdict = verify_congruence_bruteforce(b, part)
    if not verdict.ok:
        raise ValueError(f"partition is not a congruence of the birack, "
                         f"witness {verdict.witness}")
    qcirc = quotient_op(b.circ, part)
    qbullet = quotient_op(b.bullet, part)
    quotient = birack_from_tables(qcirc, qbullet)
    flags, qflags = classify(b), classify(quotient)
    if flags.involutive and not qflags.involutive:
        raise AssertionError("involutivity lost in quotient; bug")
    if flags.square_free and not qflags.square_free:
        raise AssertionError("square-freeness lost in quotient; bug")
    return quotient


@dataclass(frozen=True)
class Singleton:
    """Tower reached a one-element birack after ``level`` quotients."""

    level: int


@dataclass(frozen=True)
class Stabilized:
    """Retraction became trivial on a carrier of ``size`` > 1."""

    size: int


@dataclass(frozen=True)
class Truncated:
    """Iteration stopped at the step limit before reaching a terminal."""

    steps: int


@dataclass(frozen=True)
class RetractionTower:
    stages: tuple[Birack, ...]
    terminal: Singleton | Stabilized | Truncated

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(stage.n for stage in self.stages)


def retraction_tower(b: Birack, max_steps: int | None = None) -> RetractionTower:
    """Iterate retraction quotients until collapse, stall, or the step cap.

    ``max_steps`` defaults to the carrier size: stage sizes strictly
    decrease while progress happens, so that many steps always suffice and
    the Truncated terminal exists only for callers passing a smaller cap.
    """
    if max_steps is None:
        max_steps = b.n
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    stages = [b]
    while True:
        current = stages[-1]
        if current.n == 1:
            return RetractionTower(tuple(stages), Singleton(len(stages) - 1))
        part = generalized_retraction(current)
        if part.is_identity():
            return RetractionTower(tuple(stages), Stabilized(current.n))
        if len(stages) - 1 >= max_steps:
            return RetractionTower(tuple(stages), Truncated(max_steps))
        stages.append(quotient_birack(current, part))


@dataclass(frozen=True)
class NotMultipermutation:
    """The tower stabilized at ``size`` > 1, so no level exists."""

    size: int


@dataclass(frozen=True)
class Unknown:
    """The tower was truncated before reaching a terminal."""

    steps: int


def multipermutation_level(b: Birack, max_steps: int | None = None):
    """The least m with the m-th retraction quotient of size one.

    Returns that integer, or :class:`NotMultipermutation` when the tower
    stabilizes above size one, or :class:`Unknown` when truncated.  A
    one-element input has level 0.
    """
    terminal = retraction_tower(b, max_steps).terminal
    if isinstance(terminal, Singleton):
        return terminal.level
    if isinstance(terminal, Stabilized):
        return NotMultipermutation(terminal.size)
    return Unknown(terminal.steps)


@dataclass(frozen=True)
class ClaimsReport:
    """Verdicts for the eight auxiliary identities behind the congruence.

    Claims 1-3 and the division form of b2 (``c1``) are unconditional
    identities in three variables.  Claims 4-6 additionally range over
    pairs (c, d) in the same retraction class, claim 7 over related pairs
    (a, b), and claim 8 over both kinds of pair.
    """

    claim1: Verdict
    claim2: Verdict
    claim3: Verdict
    c1: Verdict
    claim4: Verdict
    claim5: Verdict
    claim6: Verdict
    claim7: Verdict
    claim8: Verdict

    @property
    def all_ok(self) -> bool:
        return all((self.claim1, self.claim2, self.claim3, self.c1,
                    self.claim4, self.claim5, self.claim6, self.claim7,
                    self.claim8))


def proof_identity_suite(b: Birack) -> ClaimsReport:
    """Check the auxiliary identities over the whole carrier."""
    n = b.n
    rng = range(n)
    c = b.circ.cells
    bl = b.bullet.cells
    ld = b.ld_circ.cells
    rd = b.rd_bullet.cells
    part = generalized_retraction(b)
    related = [(u, v) for u in rng for v in rng if part.same(u, v)]

    def claim1() -> Verdict:
        # y . (x ld z) = [(x rd y) . (y o (x ld z))] ld [((x rd y) o y) . z]
        for x, y, z in product(rng, repeat=3):
            u = ld[x][z]
            p = rd[x][y]
            if bl[y][u] != ld[bl[p][c[y][u]]][bl[c[p][y]][z]]:
                return Verdict(False, (x, y, z))
        return Verdict(True)

    def claim2() -> Verdict:
        # y o (x ld z) = (x rd y) ld [((x rd y) o y) o z]
        for x, y, z in product(rng, repeat=3):
            p = rd[x][y]
            if c[y][ld[x][z]] != ld[p][c[c[p][y]][z]]:
                return Verdict(False, (x, y, z))
        return Verdict(True)

    def claim3() -> Verdict:
        # (x . y) o [(x ld z) . ((x ld z) ld y)] = z . [z ld (x o y)]
        for x, y, z in product(rng, repeat=3):
            u = ld[x][z]
            if c[bl[x][y]][bl[u][ld[u][y]]] != bl[z][ld[z][c[x][y]]]:
                return Verdict(False, (x, y, z))
        return Verdict(True)

    def c1() -> Verdict:
        # y . z = [x . (y o z)] ld [(x o y) . ((x . y) o z)]
        for x, y, z in product(rng, repeat=3):
            if bl[y][z] != ld[bl[x][c[y][z]]][bl[c[x][y]][c[bl[x][y]][z]]]:
                return Verdict(False, (x, y, z))
        return Verdict(True)

    def claim4() -> Verdict:
        # x . (x ld c) = x . (x ld d)  for c ~ d
        for x in rng:
            for cc, dd in related:
                if bl[x][ld[x][cc]] != bl[x][ld[x][dd]]:
                    return Verdict(False, (x, cc, dd))
        return Verdict(True)

    def claim5() -> Verdict:
        # z . (z ld (x o c)) = z . (z ld (x o d))  for c ~ d
        for z in rng:
            for x in rng:
                for cc, dd in related:
                    if bl[z][ld[z][c[x][cc]]] != bl[z][ld[z][c[x][dd]]]:
                        return Verdict(False, (z, x, cc, dd))
        return Verdict(True)

    def claim6() -> Verdict:
        # (x rd y) . (y o (x ld c)) = (x rd y) . (y o (x ld d))  for c ~ d
        for x in rng:
            for y in rng:
                p = rd[x][y]
                for cc, dd in related:
                    if bl[p][c[y][ld[x][cc]]] != bl[p][c[y][ld[x][dd]]]:
                        return Verdict(False, (x, y, cc, dd))
        return Verdict(True)

    def claim7() -> Verdict:
        # b o ((a ld z) o x) = z o ((b . (a ld z)) o x)  for a ~ b
        for a, bb in related:
            for z in rng:
                u = ld[a][z]
                for x in rng:
                    if c[bb][c[u][x]] != c[z][c[bl[bb][u]][x]]:
                        return Verdict(False, (a, bb, z, x))
        return Verdict(True)

    def claim8() -> Verdict:
        # b . (a ld c) = b . (a ld d)  for a ~ b and c ~ d
        for a, bb in related:
            for cc, dd in related:
                if bl[bb][ld[a][cc]] != bl[bb][ld[a][dd]]:
                    return Verdict(False, (a, bb, cc, dd))
        return Verdict(True)

    return ClaimsReport(
        claim1=claim1(), claim2=claim2(), claim3=claim3(), c1=c1(),
        claim4=claim4(), claim5=claim5(), claim6=claim6(), claim7=claim7(),
        claim8=claim8(),
    )
