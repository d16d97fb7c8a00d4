"""Right cyclic left quasigroups (cycle sets) and involutive biracks.

A left quasigroup whose primary operation satisfies the right cyclic law
(x*y)*(x*z) = (y*x)*(y*z) corresponds to an involutive birack: the cycle
set operation becomes the left division of the birack and its companion
(the rowwise inverse) becomes circ.  Both directions of that
correspondence live here, together with the alpha relation (equal rows)
and the diagonal-map machinery used to show finite cycle sets are
non-degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    BinaryOpTable,
    Partition,
    PermGroup,
    Permutation,
    Verdict,
    group_closure,
    partition_is_congruence,
    perm_compose,
)
from .birack import Birack, DiagonalMap, birack_from_tables, classify

__all__ = [
    "AlphaResult",
    "LeftQuasigroup",
    "alpha_relation",
    "birack_from_cycleset",
    "cycleset_from_birack",
    "is_nondegenerate",
    "is_right_cyclic",
    "kon1_check",
    "t_preimage_steps",
]


@dataclass(frozen=True)
class LeftQuasigroup:
    """A table whose rows are permutations, with its derived division.

    ``ldiv`` is always the rowwise inverse of ``op``; construct through
    :meth:`from_op` or :meth:`from_rows`.
    """

    op: BinaryOpTable
    ldiv: BinaryOpTable

    def __post_init__(self):
        if self.ldiv != self.op.row_inverse_table():
            raise ValueError("ldiv is not the rowwise inverse of op")

    @classmethod
    def from_op(cls, op: BinaryOpTable) -> LeftQuasigroup:
        v = op.rows_are_permutations()
        if not v:
            raise ValueError(f"row {v.witness[0]} is not a permutation")
        return cls(op, op.row_inverse_table())

    @classmethod
    def from_rows(cls, rows) -> LeftQuasigroup:
        return cls.from_op(BinaryOpTable(tuple(tuple(r) for r in rows)))

    @property
    def n(self) -> int:
        return self.op.n

    def apply(self, x: int, y: int) -> int:
        return self.op.cells[x][y]

    def divide(self, x: int, y: int) -> int:
        return self.ldiv.cells[x][y]

    def left_translation(self, x: int) -> Permutation:
        return self.op.row_perm(x)

    def lmlt(self) -> PermGroup:
        return group_closure(self.op.row_perm(x) for x in range(self.n))

    def is_idempotent(self) -> bool:
        return all(self.op.cells[x][x] == x for x in range(self.n))

    def diagonal_map(self) -> DiagonalMap:
        """T: x -> x * x for the primary operation."""
        return DiagonalMap(tuple(self.op.cells[x][x] for x in range(self.n)))


def is_right_cyclic(lq: LeftQuasigroup) -> Verdict:
    """Check (x*y)*(x*z) = (y*x)*(y*z) for all triples.

    The equivalent formulation through translations, L_{x*y} after L_x
    equals L_{y*x} after L_y, is evaluated as well; the two must agree.
    """
    cells = lq.op.cells
    n = lq.n
    rng = range(n)
    verdict = Verdict(True)
    for x in rng:
        rx = cells[x]
        for y in rng:
            a = cells[rx[y]]
            b = cells[cells[y][x]]
            ry = cells[y]
            for z in rng:
                if a[rx[z]] != b[ry[z]]:
                    verdict = Verdict(False, (x, y, z))
                    break
            if not verdict.ok:
                break
        if not verdict.ok:
            break
    via_perms = all(
        perm_compose(lq.op.row_perm(cells[x][y]), lq.op.row_perm(x))
        == perm_compose(lq.op.row_perm(cells[y][x]), lq.op.row_perm(y))
        for x in rng for y in rng)
    if via_perms != verdict.ok:
        raise AssertionError("right cyclic law routes disagree; bug")
    return verdict


def is_nondegenerate(lq: LeftQuasigroup) -> bool:
    """Whether the diagonal x -> x * x is a bijection.

    Only meaningful for right cyclic tables, so that is a precondition.
    Finite right cyclic left quasigroups always pass; a failure here would
    signal an internal inconsistency rather than an interesting input.
    """
    if not is_right_cyclic(lq):
        raise ValueError("table is not right cyclic")
    return lq.diagonal_map().bijective


def birack_from_cycleset(cs: LeftQuasigroup) -> Birack:
    """The involutive birack of a non-degenerate right cyclic table.

    With * the cycle set operation and \\ its companion division:
    circ = companion, ld_circ = *, x bullet y = (companion(x,y)) * x, and
    x rd_bullet y is the unique z with T(z) = companion(y, T(x)).  The
    result is validated from scratch; its derived divisions must reproduce
    the formulas above and it must classify involutive.
    """
    rc = is_right_cyclic(cs)
    if not rc:
        raise ValueError(f"not right cyclic, witness {rc.witness}")
    diag = cs.diagonal_map()
    if not diag.bijective:
        raise ValueError("degenerate cycle set: diagonal is not a bijection; "
                         "impossible for a finite right cyclic table")
    n = cs.n
    op = cs.op.cells
    comp = cs.ldiv.cells
    circ = cs.ldiv
    bullet = BinaryOpTable(tuple(
        tuple(op[comp[x][y]][x] for y in range(n)) for x in range(n)))
    b = birack_from_tables(circ, bullet)
    if b.ld_circ != cs.op:
        raise AssertionError("left division of the birack is not the cycle "
                             "set operation; bug")
    t_inv = diag.as_permutation().inverse()
    expected_rd = BinaryOpTable(tuple(
        tuple(t_inv(comp[y][diag(x)]) for y in range(n)) for x in range(n)))
    if b.rd_bullet != expected_rd:
        raise AssertionError("right division disagrees with the diagonal "
                             "formula; bug")
    if not classify(b).involutive:
        raise AssertionError("conversion produced a non-involutive birack; bug")
    return b


def cycleset_from_birack(b: Birack) -> LeftQuasigroup:
    """Extract the cycle set of an involutive birack: the ld_circ table."""
    if not classify(b).involutive:
        raise ValueError("birack is not involutive")
    cs = LeftQuasigroup(b.ld_circ, b.circ)
    rc = is_right_cyclic(cs)
    if not rc:
        raise AssertionError("ld_circ of an involutive birack is not right "
                             "cyclic; bug")
    if not cs.diagonal_map().bijective:
        raise AssertionError("degenerate diagonal on an involutive birack; bug")
    return cs


@dataclass(frozen=True)
class AlphaResult:
    """The equal-rows relation with its two congruence verdicts.

    ``congruence_of_op`` refers to the cycle set operation itself and is a
    theorem for right cyclic tables; ``congruence_of_companion`` refers to
    the companion and holds once the table is non-degenerate.  Both are
    checked, neither assumed.
    """

    partition: Partition
    congruence_of_op: Verdict
    congruence_of_companion: Verdict


def alpha_relation(cs: LeftQuasigroup) -> AlphaResult:
    """Partition by equal rows of the cycle set operation."""
    rc = is_right_cyclic(cs)
    if not rc:
        raise ValueError(f"not right cyclic, witness {rc.witness}")
    part = Partition.from_keys([cs.op.row(x) for x in range(cs.n)])
    return AlphaResult(
        partition=part,
        congruence_of_op=partition_is_congruence(cs.op, part),
        congruence_of_companion=partition_is_congruence(cs.ldiv, part),
    )


def kon1_check(cs: LeftQuasigroup) -> Verdict:
    """Check x * (y*y) = a * a where a = (companion(y,x)) * y, for all x, y.

    A consequence of the right cyclic law; it exhibits every value
    x * (y*y) as a diagonal value, which drives the surjectivity argument
    behind non-degeneracy.
    """
    rc = is_right_cyclic(cs)
    if not rc:
        raise ValueError(f"not right cyclic, witness {rc.witness}")
    op = cs.op.cells
    comp = cs.ldiv.cells
    for x, y in product(range(cs.n), repeat=2):
        a = op[comp[y][x]][y]
        if op[x][op[y][y]] != op[a][a]:
            return Verdict(False, (x, y))
    return Verdict(True)


def t_preimage_steps(cs: LeftQuasigroup, z: int) -> int | None:
    """Steps of the diagonal-chasing chain until T hits ``z``.

    Starting from u = z, repeatedly replace u by (companion(u, z)) * u; the
    chain reaches a T-preimage of z within the order of the left
    multiplication group.  Returns the first index at which T(u) = z, or
    None if the bound is exceeded (which would contradict finiteness).
    """
    op = cs.op.cells
    comp = cs.ldiv.cells
    bound = cs.lmlt().order
    u = z
    for step in range(bound + 1):
        if op[u][u] == z:
            return step
        u = op[comp[u][z]][u]
    return None
