"""Biracks: validated pairs of one-sided quasigroup tables.

A birack is a carrier with four operations circ, ld_circ, bullet, rd_bullet
where (circ, ld_circ) is a left quasigroup, (bullet, rd_bullet) is a right
quasigroup, and three interchange identities (b1, b2, b3) tie the two
operations together.  Read circ as the first component of a Yang-Baxter
solution map and bullet as the second: r(x, y) = (x circ y, x bullet y).

Division tables are always derived from circ and bullet, never supplied,
and validation is eager: if a Birack value exists, all axioms hold.
``check_axioms`` exists separately for diagnosing raw tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    BinaryOpTable,
    PermGroup,
    Permutation,
    Verdict,
    group_closure,
    perm_compose,
)

__all__ = [
    "AxiomReport",
    "Birack",
    "BirackError",
    "BirackFlags",
    "DiagonalMap",
    "SolutionView",
    "birack_from_tables",
    "braid_check",
    "check_axioms",
    "classify",
    "left_translation",
    "lmlt",
    "right_translation",
    "rmlt",
    "s_map",
    "t_map",
]


class BirackError(ValueError):
    """Raised when a pair of tables fails a birack axiom.

    Carries the name of the first failing axiom and the lexicographically
    smallest witness tuple.
    """

    def __init__(self, axiom: str, witness: tuple | None, message: str):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


def _b1_verdict(circ, bullet, n) -> Verdict:
    # x o (y o z) = (x o y) o ((x . y) o z)
    rng = range(n)
    for x in rng:
        cx = circ[x]
        bx = bullet[x]
        for y in rng:
            lhs_row = circ[y]
            left = circ[cx[y]]
            right = circ[bx[y]]
            for z in rng:
                if cx[lhs_row[z]] != left[right[z]]:
                    return Verdict(False, (x, y, z))
    return Verdict(True)


def _b2_verdict(circ, bullet, n) -> Verdict:
    # (x o y) . ((x . y) o z) = (x . (y o z)) o (y . z)
    rng = range(n)
    for x in rng:
        cx = circ[x]
        bx = bullet[x]
        for y in rng:
            u = cx[y]
            mid = circ[bx[y]]
            cy = circ[y]
            by = bullet[y]
            for z in rng:
                if bullet[u][mid[z]] != circ[bx[cy[z]]][by[z]]:
                    return Verdict(False, (x, y, z))
    return Verdict(True)


def _b3_verdict(circ, bullet, n) -> Verdict:
    # (x . y) . z = (x . (y o z)) . (y . z)
    rng = range(n)
    for x in rng:
        bx = bullet[x]
        for y in rng:
            u = bx[y]
            cy = circ[y]
            by = bullet[y]
            for z in rng:
                if bullet[u][z] != bullet[bx[cy[z]]][by[z]]:
                    return Verdict(False, (x, y, z))
    return Verdict(True)


def _linv_verdict(circ, bullet, n) -> Verdict:
    # (x o y) o (x . y) = x
    for x, y in product(range(n), repeat=2):
        if circ[circ[x][y]][bullet[x][y]] != x:
            return Verdict(False, (x, y))
    return Verdict(True)


def _rinv_verdict(circ, bullet, n) -> Verdict:
    # (x o y) . (x . y) = y
    for x, y in product(range(n), repeat=2):
        if bullet[circ[x][y]][bullet[x][y]] != y:
            return Verdict(False, (x, y))
    return Verdict(True)


def _diag_verdict(cells, n) -> Verdict:
    for x in range(n):
        if cells[x][x] != x:
            return Verdict(False, (x,))
    return Verdict(True)


def _biquandle_verdict(ld, rd, n) -> Verdict:
    # (x ld x) rd (x ld x) = x  and  (x rd x) ld (x rd x) = x
    for x in range(n):
        u = ld[x][x]
        if rd[u][u] != x:
            return Verdict(False, (x,))
        v = rd[x][x]
        if ld[v][v] != x:
            return Verdict(False, (x,))
    return Verdict(True)


@dataclass(frozen=True)
class AxiomReport:
    """Per-axiom verdicts for a raw pair of tables.

    All axioms are evaluated, nothing short-circuits.  ``biquandle`` is None
    when the quasigroup axioms fail, since the divisions it needs do not
    exist then.  Every failing verdict carries the smallest witness tuple.
    """

    left_quasigroup: Verdict
    right_quasigroup: Verdict
    b1: Verdict
    b2: Verdict
    b3: Verdict
    involutive_l: Verdict
    involutive_r: Verdict
    idempotent_circ: Verdict
    idempotent_bullet: Verdict
    biquandle: Verdict | None

    @property
    def valid_birack(self) -> bool:
        return bool(self.left_quasigroup and self.right_quasigroup
                    and self.b1 and self.b2 and self.b3)

    @property
    def involutive(self) -> bool:
        return bool(self.involutive_l and self.involutive_r)

    @property
    def square_free(self) -> bool:
        return bool(self.idempotent_circ and self.idempotent_bullet)


def check_axioms(circ: BinaryOpTable, bullet: BinaryOpTable) -> AxiomReport:
    """Evaluate every birack axiom on a raw pair of tables."""
    if circ.n != bullet.n:
        raise ValueError(f"size mismatch: {circ.n} vs {bullet.n}")
    n = circ.n
    c = circ.cells
    b = bullet.cells
    lq = circ.rows_are_permutations()
    rq = bullet.columns_are_permutations()
    if lq and rq:
        ld = circ.row_inverse_table().cells
        rd = bullet.column_inverse_table().cells
        biq = _biquandle_verdict(ld, rd, n)
    else:
        biq = None
    return AxiomReport(
        left_quasigroup=lq,
        right_quasigroup=rq,
        b1=_b1_verdict(c, b, n),
        b2=_b2_verdict(c, b, n),
        b3=_b3_verdict(c, b, n),
        involutive_l=_linv_verdict(c, b, n),
        involutive_r=_rinv_verdict(c, b, n),
        idempotent_circ=_diag_verdict(c, n),
        idempotent_bullet=_diag_verdict(b, n),
        biquandle=biq,
    )


@dataclass(frozen=True)
class Birack:
    """A validated birack; construct through :func:`birack_from_tables`.

    The division tables are cached at construction and re-derived during
    validation, so a Birack value existing implies all axioms hold and the
    four tables are mutually consistent.
    """

    circ: BinaryOpTable
    bullet: BinaryOpTable
    ld_circ: BinaryOpTable
    rd_bullet: BinaryOpTable

    def __post_init__(self):
        n = self.circ.n
        if not (self.bullet.n == self.ld_circ.n == self.rd_bullet.n == n):
            raise BirackError("size", None, "table size mismatch")
        lq = self.circ.rows_are_permutations()
        if not lq:
            raise BirackError("left_quasigroup", lq.witness,
                              f"circ row {lq.witness[0]} is not a permutation")
        rq = self.bullet.columns_are_permutations()
        if not rq:
            raise BirackError("right_quasigroup", rq.witness,
                              f"bullet column {rq.witness[0]} is not a permutation")
        if self.ld_circ != self.circ.row_inverse_table():
            raise BirackError("ld_circ", None, "ld_circ is not the row inverse of circ")
        if self.rd_bullet != self.bullet.column_inverse_table():
            raise BirackError("rd_bullet", None,
                              "rd_bullet is not the column inverse of bullet")
        c, b = self.circ.cells, self.bullet.cells
        for name, check in (("b1", _b1_verdict), ("b2", _b2_verdict), ("b3", _b3_verdict)):
            v = check(c, b, n)
            if not v:
                raise BirackError(name, v.witness,
                                  f"identity {name} fails at {v.witness}")

    @property
    def n(self) -> int:
        return self.circ.n

    def solution(self) -> SolutionView:
        return SolutionView(self.circ, self.bullet)


def birack_from_tables(circ: BinaryOpTable, bullet: BinaryOpTable) -> Birack:
    """Validate a pair of tables and derive the division tables.

    Raises :class:`BirackError` carrying the first failing axiom and its
    smallest witness.
    """
    if circ.n != bullet.n:
        raise BirackError("size", None, f"size mismatch: {circ.n} vs {bullet.n}")
    lq = circ.rows_are_permutations()
    if not lq:
        raise BirackError("left_quasigroup", lq.witness,
                          f"circ row {lq.witness[0]} is not a permutation")
    rq = bullet.columns_are_permutations()
    if not rq:
        raise BirackError("right_quasigroup", rq.witness,
                          f"bullet column {rq.witness[0]} is not a permutation")
    return Birack(circ, bullet, circ.row_inverse_table(), bullet.column_inverse_table())


@dataclass(frozen=True)
class SolutionView:
    """The map r(x, y) = (sigma(x, y), tau(x, y)) of a table pair.

    No validity is assumed: any pair of tables gives a view, which is what
    lets :func:`braid_check` act as an oracle independent of the axioms.
    """

    sigma: BinaryOpTable
    tau: BinaryOpTable

    def __post_init__(self):
        if self.sigma.n != self.tau.n:
            raise ValueError("size mismatch")

    @classmethod
    def from_birack(cls, b: Birack) -> SolutionView:
        return cls(b.circ, b.bullet)

    @property
    def n(self) -> int:
        return self.sigma.n

    def r(self, x: int, y: int) -> tuple[int, int]:
        return self.sigma.cells[x][y], self.tau.cells[x][y]

    def r_map(self) -> dict[tuple[int, int], tuple[int, int]]:
        return {(x, y): self.r(x, y) for x, y in product(range(self.n), repeat=2)}

    def is_bijective(self) -> bool:
        return len(set(self.r_map().values())) == self.n * self.n


def braid_check(s: SolutionView) -> Verdict:
    """Evaluate the braid relation pointwise over all triples.

    Composes (id x r)(r x id)(id x r) and (r x id)(id x r)(r x id) on each
    triple directly, without reference to the axiom identities.
    """
    sig = s.sigma.cells
    tau = s.tau.cells

    def r12(t):
        x, y, z = t
        return sig[x][y], tau[x][y], z

    def r23(t):
        x, y, z = t
        return x, sig[y][z], tau[y][z]

    for t in product(range(s.n), repeat=3):
        if r23(r12(r23(t))) != r12(r23(r12(t))):
            return Verdict(False, t)
    return Verdict(True)


@dataclass(frozen=True)
class BirackFlags:
    involutive: bool
    square_free: bool
    biquandle: bool


def classify(b: Birack) -> BirackFlags:
    """Classification flags of a validated birack.

    Involutivity is computed both from the two inverse identities and from
    r o r = id; the two routes must agree, and a disagreement is an internal
    error, not a property of the input.
    """
    n = b.n
    c, bl = b.circ.cells, b.bullet.cells
    via_identities = bool(_linv_verdict(c, bl, n) and _rinv_verdict(c, bl, n))
    s = b.solution()
    via_r2 = all(s.r(*s.r(x, y)) == (x, y) for x, y in product(range(n), repeat=2))
    if via_identities != via_r2:
        raise AssertionError(
            "involutivity routes disagree; this is a bug, not a property of the input")
    square_free = bool(_diag_verdict(c, n) and _diag_verdict(bl, n))
    biq = _biquandle_verdict(b.ld_circ.cells, b.rd_bullet.cells, n)
    return BirackFlags(involutive=via_identities, square_free=square_free,
                       biquandle=bool(biq))


@dataclass(frozen=True)
class DiagonalMap:
    """A total map on the carrier together with its bijectivity flag."""

    images: tuple[int, ...]

    @property
    def bijective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def as_permutation(self) -> Permutation:
        return Permutation(self.images)


def t_map(b: Birack) -> DiagonalMap:
    """The map T: x -> x ld_circ x."""
    t = DiagonalMap(tuple(b.ld_circ.cells[x][x] for x in range(b.n)))
    _check_mutual_inverse(b, t, None)
    return t


def s_map(b: Birack) -> DiagonalMap:
    """The map S: x -> x rd_bullet x."""
    s = DiagonalMap(tuple(b.rd_bullet.cells[x][x] for x in range(b.n)))
    _check_mutual_inverse(b, None, s)
    return s


def _check_mutual_inverse(b: Birack, t: DiagonalMap | None, s: DiagonalMap | None):
    # In a biquandle, T and S must be mutually inverse bijections.
    if not classify(b).biquandle:
        return
    if t is None:
        t = DiagonalMap(tuple(b.ld_circ.cells[x][x] for x in range(b.n)))
    if s is None:
        s = DiagonalMap(tuple(b.rd_bullet.cells[x][x] for x in range(b.n)))
    if any(s(t(x)) != x or t(s(x)) != x for x in range(b.n)):
        raise AssertionError("T and S are not mutually inverse in a biquandle; bug")


def left_translation(b: Birack, x: int) -> Permutation:
    """L_x: the row of circ at x, as a permutation."""
    return b.circ.row_perm(x)


def right_translation(b: Birack, x: int) -> Permutation:
    """R_x: the column of bullet at x, as a permutation."""
    return b.bullet.col_perm(x)


def lmlt(b: Birack) -> PermGroup:
    """The group generated by all left translations of circ."""
    return group_closure(b.circ.row_perm(x) for x in range(b.n))


def rmlt(b: Birack) -> PermGroup:
    """The group generated by all right translations of bullet."""
    return group_closure(b.bullet.col_perm(x) for x in range(b.n))


def left_translation_identity(b: Birack) -> Verdict:
    """L_{x o y} composed with L_{x . y} equals L_x composed with L_y."""
    for x, y in product(range(b.n), repeat=2):
        lhs = perm_compose(b.circ.row_perm(b.circ.cells[x][y]),
                           b.circ.row_perm(b.bullet.cells[x][y]))
        rhs = perm_compose(b.circ.row_perm(x), b.circ.row_perm(y))
        if lhs != rhs:
            return Verdict(False, (x, y))
    return Verdict(True)
