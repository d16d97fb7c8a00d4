"""Idempotent medial groupoids, reductivity, quandles, strong retraction.

The groupoids here carry no quasigroup requirement.  For each k, elements
are related when their k-fold right-multiplication maps agree; on modes
(idempotent medial groupoids) every such relation is a congruence, the
relations form an increasing chain, and quotients of reductive modes drop
the reductivity degree by the number of steps taken.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    BinaryOpTable,
    Partition,
    Verdict,
    partition_is_congruence,
    quotient_op,
)
from .cycleset import LeftQuasigroup

__all__ = [
    "Groupoid",
    "ModeFlags",
    "RhoResult",
    "is_k_reductive",
    "is_mode",
    "is_quandle",
    "quasi_reductive_check",
    "reductivity_degree",
    "rho_k",
    "right_power",
    "strong_retraction",
]


@dataclass(frozen=True)
class Groupoid:
    """A bare binary operation table."""

    op: BinaryOpTable

    @classmethod
    def from_rows(cls, rows) -> Groupoid:
        return cls(BinaryOpTable(tuple(tuple(r) for r in rows)))

    @property
    def n(self) -> int:
        return self.op.n

    def apply(self, x: int, y: int) -> int:
        return self.op.cells[x][y]


@dataclass(frozen=True)
class ModeFlags:
    idempotent: Verdict
    medial: Verdict

    @property
    def is_mode(self) -> bool:
        return bool(self.idempotent and self.medial)


def is_mode(g: Groupoid) -> ModeFlags:
    """Idempotence x*x = x and mediality (x*y)*(z*t) = (x*z)*(y*t)."""
    cells = g.op.cells
    n = g.n
    idem = Verdict(True)
    for x in range(n):
        if cells[x][x] != x:
            idem = Verdict(False, (x,))
            break
    medial = Verdict(True)
    for x, y, z, t in product(range(n), repeat=4):
        if cells[cells[x][y]][cells[z][t]] != cells[cells[x][z]][cells[y][t]]:
            medial = Verdict(False, (x, y, z, t))
            break
    return ModeFlags(idempotent=idem, medial=medial)


def right_power(g: Groupoid, a: int, x: int, k: int) -> int:
    """a x^k: right-multiply a by x, k times."""
    cells = g.op.cells
    for _ in range(k):
        a = cells[a][x]
    return a


@dataclass(frozen=True)
class RhoResult:
    partition: Partition
    congruence: Verdict


def rho_k(g: Groupoid, k: int) -> RhoResult:
    """Partition by equal k-fold right-multiplication maps.

    Definable on any groupoid; the congruence verdict is expected to be
    positive on modes and is computed, not assumed.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    keys = [tuple(right_power(g, a, x, k) for x in range(g.n)) for a in range(g.n)]
    part = Partition.from_keys(keys)
    return RhoResult(partition=part, congruence=partition_is_congruence(g.op, part))


def is_k_reductive(g: Groupoid, k: int) -> bool:
    """Whether x y^k = y for all x, y."""
    return all(right_power(g, x, y, k) == y
               for x, y in product(range(g.n), repeat=2))


def reductivity_degree(g: Groupoid, max_k: int) -> int | None:
    """Least k <= max_k with x y^k = y everywhere, or None.

    When a degree k exists, the relations rho_0 <= rho_1 <= ... <= rho_k
    must form a chain ending in the full relation; that is asserted, since
    it holds in any groupoid once k-reductivity does.
    """
    for k in range(1, max_k + 1):
        if is_k_reductive(g, k):
            parts = [rho_k(g, j).partition for j in range(k + 1)]
            if not parts[0].is_identity():
                raise AssertionError("rho_0 must be the identity partition; bug")
            if not parts[k].is_full():
                raise AssertionError("rho_k must be full on a k-reductive "
                                     "groupoid; bug")
            for j in range(k):
                if not parts[j].refines(parts[j + 1]):
                    raise AssertionError(f"rho_{j} does not refine rho_{j + 1}; bug")
            return k
    return None


def rho_class_sub_groupoid(g: Groupoid, part: Partition, label: int) -> Groupoid:
    """The restriction of the operation to one partition class.

    Requires the class to be closed under the operation, which holds for
    congruence classes of idempotent groupoids.
    """
    block = part.blocks()[label]
    index = {x: i for i, x in enumerate(block)}
    rows = []
    for x in block:
        row = []
        for y in block:
            v = g.op.cells[x][y]
            if v not in index:
                raise ValueError(f"class {label} is not closed: "
                                 f"{x}*{y} = {v} escapes")
            row.append(index[v])
        rows.append(tuple(row))
    return Groupoid(BinaryOpTable(tuple(rows)))


def quotient_groupoid(g: Groupoid, part: Partition) -> Groupoid:
    return Groupoid(quotient_op(g.op, part))


def is_quandle(lq: LeftQuasigroup) -> Verdict:
    """Idempotent and left distributive: x*(y*z) = (x*y)*(x*z)."""
    cells = lq.op.cells
    n = lq.n
    for x in range(n):
        if cells[x][x] != x:
            return Verdict(False, (x,))
    for x, y, z in product(range(n), repeat=3):
        if cells[x][cells[y][z]] != cells[cells[x][y]][cells[x][z]]:
            return Verdict(False, (x, y, z))
    return Verdict(True)


def strong_retraction(lq: LeftQuasigroup) -> Partition:
    """Equal left translations intersected with the orbit relation.

    Elements are related when their rows agree and they lie in the same
    orbit of the left multiplication group.  No congruence claim is made
    here; callers can run the brute-force check when they need one.
    """
    rows = Partition.from_keys([lq.op.row(x) for x in range(lq.n)])
    orbits = lq.lmlt().orbit_partition()
    return rows.meet(orbits)


def quasi_reductive_check(lq: LeftQuasigroup, unchecked: bool = False) -> bool:
    """Whether some orbit contains two distinct elements with equal rows.

    Defined for quandles; pass ``unchecked=True`` to probe an arbitrary
    left quasigroup without the quandle precondition.
    """
    if not unchecked:
        v = is_quandle(lq)
        if not v:
            raise ValueError(f"not a quandle, witness {v.witness}")
    orbit_of = lq.lmlt().orbit_partition().class_of
    rows = [lq.op.row(x) for x in range(lq.n)]
    for x in range(lq.n):
        for y in range(x + 1, lq.n):
            if orbit_of[x] == orbit_of[y] and rows[x] == rows[y]:
                return True
    return False
