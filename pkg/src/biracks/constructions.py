"""Generators for the standard example families plus built-in fixtures.

Table labels follow one rule throughout: printed sources that number
elements 1..n are shifted down to 0..n-1, and every built-in records the
index base its table was originally stated in so reports can be read back
in the source labelling.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .core import BinaryOpTable, Permutation, perm_compose, perm_parse_cycles
from .birack import Birack, birack_from_tables, classify
from .cycleset import LeftQuasigroup, birack_from_cycleset, is_nondegenerate, is_right_cyclic

__all__ = [
    "AffineData",
    "BUILTIN_NAMES",
    "Fixture",
    "GroupData",
    "affine_structures",
    "builtin",
    "conjugation_division_table",
    "group_conjugation_lq",
    "lq_from_permutations",
    "permutation_birack",
    "permutation_tables",
    "projection_birack",
]


def permutation_tables(f: Permutation, g: Permutation) -> tuple[BinaryOpTable, BinaryOpTable]:
    """Raw constant-translation tables: x circ y = f(y), x bullet y = g(x)."""
    if f.n != g.n:
        raise ValueError("size mismatch")
    n = f.n
    circ = BinaryOpTable.from_function(n, lambda x, y: f(y))
    bullet = BinaryOpTable.from_function(n, lambda x, y: g(x))
    return circ, bullet


def permutation_birack(f: Permutation, g: Permutation) -> Birack:
    """The birack with every left translation f and right translation g.

    Requires f and g to commute; the pair is involutive exactly when g is
    the inverse of f, and that equivalence is asserted in both directions.
    """
    if f.n != g.n:
        raise ValueError("size mismatch")
    for x in range(f.n):
        if f(g(x)) != g(f(x)):
            raise ValueError(f"translations do not commute: disagree at {x}")
    b = birack_from_tables(*permutation_tables(f, g))
    involutive = classify(b).involutive
    if involutive != (g == f.inverse()):
        raise AssertionError("involutivity disagrees with g = f^-1; bug")
    return b


def projection_birack(n: int) -> Birack:
    """The birack with all translations identity: x circ y = y, x bullet y = x."""
    if n < 1:
        raise ValueError("carrier must be non-empty")
    ident = Permutation.identity(n)
    return permutation_birack(ident, ident)


@dataclass(frozen=True)
class AffineData:
    """Data for the affine cycle set on Z_m: multiplication by a unit.

    The endomorphism x -> x - a*x must square to zero mod m and the
    constant must lie in its kernel.
    """

    modulus: int
    multiplier: int
    constant: int = 0

    def __post_init__(self):
        m, a, c = self.modulus, self.multiplier, self.constant
        if m < 2:
            raise ValueError("modulus must be at least 2")
        if not 0 <= a < m or gcd(a, m) != 1:
            raise ValueError(f"multiplier {a} is not a unit mod {m}")
        if (1 - a) ** 2 % m != 0:
            raise ValueError(f"(1 - {a})^2 is not 0 mod {m}")
        if not 0 <= c < m:
            raise ValueError(f"constant {c} out of range mod {m}")
        if (1 - a) * c % m != 0:
            raise ValueError(f"constant {c} is not in the kernel of 1 - {a} mod {m}")

    @property
    def inverse_multiplier(self) -> int:
        return pow(self.multiplier, -1, self.modulus)

    def dual(self) -> AffineData:
        """The companion data (a^-1, -a^-1 c); valid whenever self is."""
        ai = self.inverse_multiplier
        return AffineData(self.modulus, ai, (-ai * self.constant) % self.modulus)


def _affine_op_table(m: int, a: int, c: int) -> BinaryOpTable:
    return BinaryOpTable.from_function(
        m, lambda x, y: ((1 - a) * x + a * y + c) % m)


def affine_structures(d: AffineData) -> tuple[LeftQuasigroup, Birack]:
    """The affine cycle set x*y = (1-a)x + ay + c and its involutive birack.

    The birack is built from the closed form circ(x, y) = (1-a)x + ay + c,
    bullet(x, y) = a^-1 x + (1 - a^-1)y - a^-1 c.  Because the companion of
    the affine operation is again affine (with the dual data), converting
    the companion as a cycle set must reproduce the closed form exactly;
    converting the operation itself yields the closed form of the dual
    data.  Both cross-checks are asserted.
    """
    m, a, c = d.modulus, d.multiplier, d.constant
    ai = d.inverse_multiplier
    cs = LeftQuasigroup.from_op(_affine_op_table(m, a, c))
    rc = is_right_cyclic(cs)
    if not rc:
        raise AssertionError(f"affine table is not right cyclic; bug ({rc.witness})")
    if not is_nondegenerate(cs):
        raise AssertionError("affine table has a degenerate diagonal; bug")
    circ = _affine_op_table(m, a, c)
    bullet = BinaryOpTable.from_function(
        m, lambda x, y: (ai * x + (1 - ai) * y - ai * c) % m)
    b = birack_from_tables(circ, bullet)
    if not classify(b).involutive:
        raise AssertionError("affine birack is not involutive; bug")
    companion = LeftQuasigroup.from_op(cs.ldiv)
    if birack_from_cycleset(companion) != b:
        raise AssertionError("companion conversion disagrees with the closed "
                             "form; bug")
    dual = d.dual()
    dual_closed = birack_from_tables(
        _affine_op_table(m, dual.multiplier, dual.constant),
        BinaryOpTable.from_function(
            m, lambda x, y: (a * x + (1 - a) * y - a * dual.constant) % m))
    if birack_from_cycleset(cs) != dual_closed:
        raise AssertionError("operation conversion disagrees with the dual "
                             "closed form; bug")
    return cs, b


@dataclass(frozen=True)
class GroupData:
    """A finite group table with an automorphism and a constant.

    The Cayley table must have identity element 0; associativity, inverses
    and the homomorphism property of the automorphism are all verified at
    construction.
    """

    cayley: BinaryOpTable
    automorphism: Permutation
    constant: int = 0

    def __post_init__(self):
        t = self.cayley.cells
        n = self.cayley.n
        if self.automorphism.n != n:
            raise ValueError("automorphism size mismatch")
        if not 0 <= self.constant < n:
            raise ValueError("constant out of range")
        for x in range(n):
            if t[0][x] != x or t[x][0] != x:
                raise ValueError("element 0 is not an identity")
        for x in range(n):
            if 0 not in t[x]:
                raise ValueError(f"element {x} has no inverse")
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if t[t[x][y]][z] != t[x][t[y][z]]:
                        raise ValueError(f"not associative at ({x},{y},{z})")
        f = self.automorphism
        for x in range(n):
            for y in range(n):
                if f(t[x][y]) != t[f(x)][f(y)]:
                    raise ValueError(f"not an automorphism at ({x},{y})")

    @property
    def n(self) -> int:
        return self.cayley.n

    def inverse(self, x: int) -> int:
        return self.cayley.row(x).index(0)

    def is_abelian(self) -> bool:
        t = self.cayley.cells
        return all(t[x][y] == t[y][x]
                   for x in range(self.n) for y in range(self.n))


def group_conjugation_lq(d: GroupData) -> LeftQuasigroup:
    """The twisted conjugation left quasigroup x*y = x f(y x^-1) c.

    The division is derived by inverting rows, which always succeeds.  The
    textbook formula g(y x^-1) g(c^-1) x (g the inverse automorphism) only
    reproduces that division in abelian groups, and the construction
    asserts exactly that equivalence.  Idempotence holds precisely when
    the constant is the identity, also asserted.
    """
    t = d.cayley.cells
    f = d.automorphism
    inv = d.inverse
    c = d.constant
    op = BinaryOpTable.from_function(
        d.n, lambda x, y: t[t[x][f(t[y][inv(x)])]][c])
    lq = LeftQuasigroup.from_op(op)
    if lq.is_idempotent() != (c == 0):
        raise AssertionError("idempotence disagrees with the constant; bug")
    matches = lq.ldiv == conjugation_division_table(d)
    if matches != d.is_abelian():
        raise AssertionError("stated division formula should hold exactly "
                             "for abelian groups; bug")
    return lq


def conjugation_division_table(d: GroupData) -> BinaryOpTable:
    """The stated division formula g(y x^-1) g(c^-1) x, for comparison."""
    t = d.cayley.cells
    g = d.automorphism.inverse()
    inv = d.inverse
    c_inv = d.inverse(d.constant)
    return BinaryOpTable.from_function(
        d.n, lambda x, y: t[t[g(t[y][inv(x)])][g(c_inv)]][x])


def lq_from_permutations(perms) -> LeftQuasigroup:
    """Rows given directly as permutations: x * y = perms[x](y)."""
    perms = tuple(perms)
    if not perms:
        raise ValueError("at least one permutation required")
    n = perms[0].n
    if len(perms) != n or any(p.n != n for p in perms):
        raise ValueError(f"expected {n} permutations of size {n}")
    return LeftQuasigroup.from_rows(tuple(p.images for p in perms))


def _birack_from_translations(l_maps, r_maps) -> Birack:
    n = len(l_maps)
    circ = BinaryOpTable(tuple(p.images for p in l_maps))
    bullet = BinaryOpTable(tuple(
        tuple(r_maps[y](x) for y in range(n)) for x in range(n)))
    return birack_from_tables(circ, bullet)


@dataclass(frozen=True)
class Fixture:
    """A named built-in structure with its source labelling base."""

    name: str
    structure: Birack | LeftQuasigroup
    base: int
    note: str


def _nelson_fixture() -> Fixture:
    l_maps = [perm_parse_cycles(s, 4, base=1) for s in ("(12)", "(12)(34)", "()", "()")]
    r_maps = [perm_parse_cycles(s, 4, base=1) for s in ("(12)(34)", "(12)", "(34)", "(34)")]
    return Fixture(
        name="nelson_ex",
        structure=_birack_from_translations(l_maps, r_maps),
        base=1,
        note="4-element birack with involutive translations; "
             "neither involutive nor a biquandle",
    )


def _essential_fixture() -> Fixture:
    circ = BinaryOpTable((
        (0, 2, 1, 4, 3),
        (0, 2, 1, 4, 3),
        (4, 2, 1, 3, 0),
        (4, 2, 1, 3, 0),
        (3, 2, 1, 0, 4),
    ))
    bullet = BinaryOpTable((
        (0, 3, 3, 0, 0),
        (1, 2, 2, 1, 1),
        (2, 1, 1, 2, 2),
        (3, 0, 0, 3, 3),
        (4, 4, 4, 4, 4),
    ))
    return Fixture(
        name="essential_ex",
        structure=birack_from_tables(circ, bullet),
        base=0,
        note="5-element birack whose left-translation classes are not "
             "right-translation classes; its retraction relation is trivial",
    )


def _sv_skewbrace_fixture() -> Fixture:
    ident = "()"
    l_cycles = [ident, "(25)(47)", "(38)(47)", "(25)(38)",
                "(25)(47)", ident, "(25)(38)", "(38)(47)"]
    r_cycles = [ident, "(25)(38)", "(25)(38)", ident,
                "(25)(38)", ident, ident, "(25)(38)"]
    l_maps = [perm_parse_cycles(s, 8, base=1) for s in l_cycles]
    r_maps = [perm_parse_cycles(s, 8, base=1) for s in r_cycles]
    return Fixture(
        name="sv_skewbrace_ex",
        structure=_birack_from_translations(l_maps, r_maps),
        base=1,
        note="8-element non-involutive birack from a skew-brace; retraction "
             "collapses it to 4 and then to 1 element",
    )


def _rump_cycleset_fixture() -> Fixture:
    op = BinaryOpTable((
        (2, 3, 1, 0),
        (2, 3, 1, 0),
        (3, 2, 0, 1),
        (3, 2, 0, 1),
    ))
    return Fixture(
        name="rump_cycleset_ex",
        structure=LeftQuasigroup.from_op(op),
        base=1,
        note="4-element non-degenerate cycle set; its involutive birack has "
             "two distinct translation maps",
    )


_FIXTURE_BUILDERS = {
    "nelson_ex": _nelson_fixture,
    "essential_ex": _essential_fixture,
    "sv_skewbrace_ex": _sv_skewbrace_fixture,
    "rump_cycleset_ex": _rump_cycleset_fixture,
}

_PROJECTION_RE = re.compile(r"^projection\((\d+)\)$")

BUILTIN_NAMES = tuple(sorted(_FIXTURE_BUILDERS)) + ("projection(n)",)


def builtin(name: str) -> Fixture:
    """Look up a built-in fixture by name; see BUILTIN_NAMES."""
    builder = _FIXTURE_BUILDERS.get(name)
    if builder is not None:
        return builder()
    m = _PROJECTION_RE.match(name)
    if m:
        n = int(m.group(1))
        return Fixture(
            name=name,
            structure=projection_birack(n),
            base=0,
            note=f"projection birack on {n} elements; every translation is "
                 "the identity",
        )
    raise KeyError(f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}")
