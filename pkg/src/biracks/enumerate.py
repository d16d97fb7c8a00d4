"""Exhaustive desk-scale enumeration and the registered property sweeps.

Enumerators stream every structure of a given size in a fixed
deterministic order.  The search space for a birack is pruned hard: for a
fixed circ table the first interchange identity forces each bullet column
entry into a small candidate set, and the remaining identities are checked
incrementally while columns are placed.  Derived counts must first be
reproduced by the unpruned oracle at size 2 before the pruned enumerator
is trusted; the tests do exactly that.

The search space partitions by the first row choice, so independent
workers can own disjoint partitions; results merge in partition order,
which keeps counts and first-violation reports identical for any worker
count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial
from itertools import permutations, product
from typing import Callable, Iterator

from .core import BinaryOpTable, Partition, Verdict
from .birack import (
    Birack,
    SolutionView,
    birack_from_tables,
    braid_check,
    check_axioms,
    classify,
)
from .cycleset import (
    LeftQuasigroup,
    alpha_relation,
    birack_from_cycleset,
    cycleset_from_birack,
    is_nondegenerate,
    kon1_check,
    t_preimage_steps,
)
from .modes import (
    Groupoid,
    is_k_reductive,
    is_mode,
    quotient_groupoid,
    reductivity_degree,
    rho_class_sub_groupoid,
    rho_k,
)
from .retraction import (
    generalized_retraction,
    left_equality,
    proof_identity_suite,
    right_equality,
    verify_congruence_bruteforce,
)

__all__ = [
    "BoundExceeded",
    "EnumFilter",
    "Exhausted",
    "PROPERTY_NAMES",
    "Violation",
    "count_structures",
    "distinct_up_to_isomorphism",
    "enumerate_biracks",
    "enumerate_cyclesets",
    "enumerate_left_quasigroups",
    "enumerate_modes",
    "run_all_properties",
    "search_counterexample",
]

ENV_BOUND = "BIRACKS_ENUM_BOUND"

_DEFAULT_BOUNDS = {
    "left_quasigroup": 4,
    "cycleset": 4,
    "birack": 3,
    "mode": 4,
    "pair": 3,
}


class BoundExceeded(ValueError):
    pass


def _bound_for(kind: str) -> int:
    override = os.environ.get(ENV_BOUND)
    if override:
        return int(override)
    return _DEFAULT_BOUNDS[kind]


def _check_bound(n: int, kind: str):
    if n < 1:
        raise ValueError("carrier size must be positive")
    bound = _bound_for(kind)
    if n > bound:
        raise BoundExceeded(
            f"bound exceeded: {kind} enumeration is capped at n = {bound} "
            f"(override with {ENV_BOUND})")


@dataclass(frozen=True)
class EnumFilter:
    """Predicate flags restricting an enumeration stream."""

    n: int
    require_b1b2b3: bool = True
    require_involutive: bool = False
    require_square_free: bool = False
    require_right_cyclic: bool = False
    require_mode: bool = False


def _sorted_perm_rows(n: int) -> list[tuple[int, ...]]:
    return sorted(permutations(range(n)))


# -- left quasigroups and cycle sets ---------------------------------------

def _lq_row_streams(n: int, first_row: int | None):
    rows = _sorted_perm_rows(n)
    first = rows if first_row is None else [rows[first_row]]
    return [first] + [rows] * (n - 1)


def enumerate_left_quasigroups(n: int, _first_row: int | None = None
                               ) -> Iterator[LeftQuasigroup]:
    """All tables with permutation rows, in lexicographic row order."""
    _check_bound(n, "left_quasigroup")
    for rows in product(*_lq_row_streams(n, _first_row)):
        yield LeftQuasigroup.from_rows(rows)


def _right_cyclic_rows(rows) -> bool:
    n = len(rows)
    rng = range(n)
    for x in rng:
        rx = rows[x]
        for y in rng:
            a = rows[rx[y]]
            b = rows[rows[y][x]]
            ry = rows[y]
            for z in rng:
                if a[rx[z]] != b[ry[z]]:
                    return False
    return True


def enumerate_cyclesets(n: int, _first_row: int | None = None
                        ) -> Iterator[LeftQuasigroup]:
    """All right cyclic left quasigroups, filtered from the full row space."""
    _check_bound(n, "cycleset")
    for rows in product(*_lq_row_streams(n, _first_row)):
        if _right_cyclic_rows(rows):
            yield LeftQuasigroup.from_rows(rows)


# -- biracks ----------------------------------------------------------------

def _row_inverse(row: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(row)
    for i, v in enumerate(row):
        inv[v] = i
    return tuple(inv)


def _bullet_candidates(rows) -> list[list[list[int]]] | None:
    """Per-cell candidate values for bullet forced by the first identity.

    The first identity says the translation by x bullet y is determined up
    to row equality by the rows at x, y and x circ y.  Empty candidate set
    anywhere means this circ table admits no birack at all.
    """
    n = len(rows)
    row_index: dict[tuple[int, ...], list[int]] = {}
    for v, r in enumerate(rows):
        row_index.setdefault(r, []).append(v)
    inverses = [_row_inverse(r) for r in rows]
    cand: list[list[list[int]]] = [[[] for _ in range(n)] for _ in range(n)]
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            ry = rows[y]
            inv = inverses[rx[y]]
            need = tuple(inv[rx[ry[z]]] for z in range(n))
            hits = row_index.get(need)
            if not hits:
                return None
            cand[x][y] = hits
    return cand


def _columns_lex(per_cell: list[list[int]], n: int) -> Iterator[tuple[int, ...]]:
    col = [0] * n
    used = [False] * (n + 1)

    def rec(x: int) -> Iterator[tuple[int, ...]]:
        if x == n:
            yield tuple(col)
            return
        for v in per_cell[x]:
            if not used[v]:
                used[v] = True
                col[x] = v
                yield from rec(x + 1)
                used[v] = False

    yield from rec(0)


def _new_cells_consistent(circ, cols, j: int, n: int, involutive: bool) -> bool:
    """Check identity instances that became decidable with column j."""
    rng = range(n)
    for y in range(j + 1):
        for x in rng:
            bxy = cols[y][x]
            if involutive:
                # (x o y) o (x . y) = x needs only column y
                need = (y, bxy)
                if j in need and circ[circ[x][y]][bxy] != x:
                    return False
                # (x o y) . (x . y) = y needs columns y and bxy
                if bxy <= j and j in need and cols[bxy][circ[x][y]] != y:
                    return False
            for z in range(j + 1):
                w = circ[y][z]
                if w > j:
                    continue
                v1 = circ[bxy][z]
                if v1 <= j and j in (y, z, w, v1):
                    if cols[v1][circ[x][y]] != circ[cols[w][x]][cols[z][y]]:
                        return False
                u = cols[z][y]
                if u <= j and j in (y, z, w, u):
                    if cols[z][bxy] != cols[u][cols[w][x]]:
                        return False
    return True


def _passes_filter(b: Birack, filt: EnumFilter) -> bool:
    if not (filt.require_involutive or filt.require_square_free):
        return True
    flags = classify(b)
    if filt.require_involutive and not flags.involutive:
        return False
    if filt.require_square_free and not flags.square_free:
        return False
    return True


def enumerate_biracks(n: int, filt: EnumFilter | None = None,
                      _first_row: int | None = None) -> Iterator[Birack]:
    """All biracks on n elements passing the filter, deterministically.

    circ tables run in lexicographic order; for each, bullet tables are
    produced column by column with incremental identity checks.
    """
    _check_bound(n, "birack")
    if filt is None:
        filt = EnumFilter(n)
    involutive_prune = filt.require_involutive

    for rows in product(*_lq_row_streams(n, _first_row)):
        if filt.require_square_free and any(rows[x][x] != x for x in range(n)):
            continue
        cand = _bullet_candidates(rows)
        if cand is None:
            continue
        cols: list[tuple[int, ...]] = []

        def emit(y: int) -> Iterator[Birack]:
            if y == n:
                bullet = BinaryOpTable(tuple(
                    tuple(cols[j][x] for j in range(n)) for x in range(n)))
                b = birack_from_tables(BinaryOpTable(rows), bullet)
                if _passes_filter(b, filt):
                    yield b
                return
            for col in _columns_lex([cand[x][y] for x in range(n)], n):
                if filt.require_square_free and col[y] != y:
                    continue
                cols.append(col)
                if _new_cells_consistent(rows, cols, y, n, involutive_prune):
                    yield from emit(y + 1)
                cols.pop()

        yield from emit(0)


def _quasigroup_pairs(n: int, _first_row: int | None = None):
    """All (left quasigroup, right quasigroup) raw table pairs."""
    perms = _sorted_perm_rows(n)
    for rows in product(*_lq_row_streams(n, _first_row)):
        circ = BinaryOpTable(rows)
        for cols in product(perms, repeat=n):
            bullet = BinaryOpTable(tuple(
                tuple(cols[y][x] for y in range(n)) for x in range(n)))
            yield circ, bullet


# -- modes -------------------------------------------------------------------

def _idempotent_rows(n: int) -> list[list[tuple[int, ...]]]:
    options: list[list[tuple[int, ...]]] = []
    for x in range(n):
        opts = []
        for vals in product(range(n), repeat=n):
            if vals[x] == x:
                opts.append(vals)
        options.append(opts)
    return options


def _medial_so_far(rows, i: int, n: int) -> bool:
    rng = range(n)
    for x in range(i + 1):
        rx = rows[x]
        for y in range(i + 1):
            xy = rx[y]
            if xy > i:
                continue
            a = rows[xy]
            ry = rows[y]
            for z in range(i + 1):
                xz = rx[z]
                if xz > i:
                    continue
                if i not in (x, y, z, xy, xz):
                    continue
                b = rows[z]
                c = rows[xz]
                for t in rng:
                    if a[b[t]] != c[ry[t]]:
                        return False
    return True


def enumerate_modes(n: int, _first_row: int | None = None) -> Iterator[Groupoid]:
    """All idempotent medial groupoids, by depth-first row placement."""
    _check_bound(n, "mode")
    options = _idempotent_rows(n)
    if _first_row is not None:
        options = [[options[0][_first_row]]] + options[1:]
    rows: list[tuple[int, ...]] = []

    def rec(i: int) -> Iterator[Groupoid]:
        if i == n:
            yield Groupoid(BinaryOpTable(tuple(rows)))
            return
        for row in options[i]:
            rows.append(row)
            if _medial_so_far(rows, i, n):
                yield from rec(i + 1)
            rows.pop()

    yield from rec(0)


# -- isomorphism post-filter --------------------------------------------------

def canonical_pair_key(circ: BinaryOpTable, bullet: BinaryOpTable):
    """Minimum over all carrier relabelings of the flattened table pair."""
    n = circ.n
    best = None
    for sigma in permutations(range(n)):
        inv = _row_inverse(sigma)
        rc = tuple(tuple(sigma[circ.cells[inv[x]][inv[y]]] for y in range(n))
                   for x in range(n))
        rb = tuple(tuple(sigma[bullet.cells[inv[x]][inv[y]]] for y in range(n))
                   for x in range(n))
        key = (rc, rb)
        if best is None or key < best:
            best = key
    return best


def distinct_up_to_isomorphism(biracks) -> list[Birack]:
    seen = set()
    out = []
    for b in biracks:
        key = canonical_pair_key(b.circ, b.bullet)
        if key not in seen:
            seen.add(key)
            out.append(b)
    return out


# -- registered properties ----------------------------------------------------

def _fail(kind: str, structure, reason: str) -> str:
    return f"{kind} {structure}: {reason}"


def _cells_of(obj) -> str:
    if isinstance(obj, Birack):
        return f"circ={obj.circ.cells} bullet={obj.bullet.cells}"
    if isinstance(obj, LeftQuasigroup):
        return f"op={obj.op.cells}"
    if isinstance(obj, Groupoid):
        return f"op={obj.op.cells}"
    return repr(obj)


def _check_theorem33(b: Birack) -> str | None:
    v = verify_congruence_bruteforce(b, generalized_retraction(b))
    if not v:
        return _fail("birack", _cells_of(b),
                     f"retraction relation not a congruence, witness {v.witness}")
    return None


def _check_claims(b: Birack) -> str | None:
    report = proof_identity_suite(b)
    if not report.all_ok:
        return _fail("birack", _cells_of(b), f"claims report {report}")
    return None


def _check_stanovsky(b: Birack) -> str | None:
    ld, rd = b.ld_circ.cells, b.rd_bullet.cells
    first = all(rd[ld[x][x]][ld[x][x]] == x for x in range(b.n))
    second = all(ld[rd[x][x]][rd[x][x]] == x for x in range(b.n))
    if first != second:
        return _fail("birack", _cells_of(b),
                     f"diagonal identities split: {first} vs {second}")
    return None


def _check_involutive_equiv(b: Birack) -> str | None:
    l_part, r_part = left_equality(b), right_equality(b)
    if l_part != r_part or l_part != generalized_retraction(b):
        return _fail("birack", _cells_of(b),
                     "one-sided translation relations differ on an "
                     "involutive birack")
    return None


def _check_braid_pair(pair) -> str | None:
    circ, bullet = pair
    report = check_axioms(circ, bullet)
    axioms = bool(report.b1 and report.b2 and report.b3)
    braid = braid_check(SolutionView(circ, bullet)).ok
    if axioms != braid:
        return (f"pair circ={circ.cells} bullet={bullet.cells}: "
                f"axioms {axioms} but braid {braid}")
    return None


def _rump_division_identities(b: Birack) -> bool:
    ld, rd = b.ld_circ.cells, b.rd_bullet.cells
    n = b.n
    return all(rd[ld[y][x]][ld[x][y]] == x and ld[rd[x][y]][rd[y][x]] == y
               for x in range(n) for y in range(n))


def _check_roundtrip_a(cs: LeftQuasigroup) -> str | None:
    b = birack_from_cycleset(cs)
    if cycleset_from_birack(b) != cs:
        return _fail("cycleset", _cells_of(cs), "round trip changed the table")
    if not _rump_division_identities(b):
        return _fail("cycleset", _cells_of(cs),
                     "division identities fail in the converted birack")
    return None


def _check_roundtrip_b(b: Birack) -> str | None:
    if birack_from_cycleset(cycleset_from_birack(b)) != b:
        return _fail("birack", _cells_of(b), "round trip changed the birack")
    return None


def _check_nondegeneracy(cs: LeftQuasigroup) -> str | None:
    if not is_nondegenerate(cs):
        return _fail("cycleset", _cells_of(cs), "diagonal is not a bijection")
    if not kon1_check(cs):
        return _fail("cycleset", _cells_of(cs), "diagonal-value identity fails")
    for z in range(cs.n):
        if t_preimage_steps(cs, z) is None:
            return _fail("cycleset", _cells_of(cs),
                         f"diagonal chain misses a preimage of {z}")
    return None


def _check_alpha(cs: LeftQuasigroup) -> str | None:
    res = alpha_relation(cs)
    if not res.congruence_of_op:
        return _fail("cycleset", _cells_of(cs),
                     f"alpha not a congruence of the operation, "
                     f"witness {res.congruence_of_op.witness}")
    if not res.congruence_of_companion:
        return _fail("cycleset", _cells_of(cs),
                     f"alpha not a congruence of the companion, "
                     f"witness {res.congruence_of_companion.witness}")
    return None


_MAX_RHO_K = 4


def _check_rho(g: Groupoid) -> str | None:
    for k in range(1, _MAX_RHO_K + 1):
        res = rho_k(g, k)
        if not res.congruence:
            return _fail("mode", _cells_of(g),
                         f"rho_{k} not a congruence, witness "
                         f"{res.congruence.witness}")
        for label in range(res.partition.num_classes):
            sub = rho_class_sub_groupoid(g, res.partition, label)
            if not is_k_reductive(sub, k):
                return _fail("mode", _cells_of(g),
                             f"rho_{k} class {label} is not {k}-reductive")
    return None


def _check_reductive_chain(g: Groupoid) -> str | None:
    k = reductivity_degree(g, _MAX_RHO_K)
    if k is None:
        return None
    for j in range(k + 1):
        part = rho_k(g, j).partition
        if not is_k_reductive(quotient_groupoid(g, part), k - j):
            return _fail("mode", _cells_of(g),
                         f"rho_{j} quotient is not {k - j}-reductive")
    return None


@dataclass(frozen=True)
class PropertyDef:
    name: str
    population: str
    max_n: int
    check: Callable


_PROPERTIES = [
    PropertyDef("theorem33", "birack", 3, _check_theorem33),
    PropertyDef("claims", "birack", 3, _check_claims),
    PropertyDef("stanovsky", "birack", 3, _check_stanovsky),
    PropertyDef("involutive-equiv", "involutive_birack", 3, _check_involutive_equiv),
    PropertyDef("braid-iff-axioms", "pair", 3, _check_braid_pair),
    PropertyDef("roundtrip-a", "cycleset", 4, _check_roundtrip_a),
    PropertyDef("roundtrip-b", "involutive_birack", 3, _check_roundtrip_b),
    PropertyDef("nondegeneracy", "cycleset", 4, _check_nondegeneracy),
    PropertyDef("alpha-congruence", "cycleset", 4, _check_alpha),
    PropertyDef("rho-congruence", "mode", 4, _check_rho),
    PropertyDef("reductive-chain", "mode", 4, _check_reductive_chain),
]

_PROPERTY_BY_NAME = {p.name: p for p in _PROPERTIES}

PROPERTY_NAMES = tuple(p.name for p in _PROPERTIES)


@dataclass(frozen=True)
class Exhausted:
    n: int
    count: int


@dataclass(frozen=True)
class Violation:
    property: str
    n: int
    description: str


def _population_stream(population: str, n: int, first_row: int | None):
    if population == "birack":
        return enumerate_biracks(n, EnumFilter(n), _first_row=first_row)
    if population == "involutive_birack":
        return enumerate_biracks(n, EnumFilter(n, require_involutive=True),
                                 _first_row=first_row)
    if population == "cycleset":
        return enumerate_cyclesets(n, _first_row=first_row)
    if population == "mode":
        return enumerate_modes(n, _first_row=first_row)
    if population == "pair":
        return _quasigroup_pairs(n, _first_row=first_row)
    raise ValueError(f"unknown population {population!r}")


def _partition_count(population: str, n: int) -> int:
    from math import factorial
    if population == "mode":
        return n ** (n - 1)
    return factorial(n)


def _scan_partition(prop_name: str, n: int, first_row: int) -> tuple[int, str | None]:
    prop = _PROPERTY_BY_NAME[prop_name]
    count = 0
    first_bad = None
    for structure in _population_stream(prop.population, n, first_row):
        count += 1
        if first_bad is None:
            first_bad = prop.check(structure)
    return count, first_bad


def _scan_property(prop: PropertyDef, n: int, jobs: int) -> tuple[int, str | None]:
    parts = list(range(_partition_count(prop.population, n)))
    worker = partial(_scan_partition, prop.name, n)
    if jobs <= 1 or len(parts) <= 1:
        results = [worker(p) for p in parts]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(worker, parts))
    total = sum(c for c, _ in results)
    for _, bad in results:
        if bad is not None:
            return total, bad
    return total, None


def search_counterexample(filt: EnumFilter, property_name: str,
                          jobs: int = 1) -> Exhausted | Violation:
    """Scan one property over its population at size filt.n.

    A violation is a build failure: these properties are theorems at this
    scale, so a counterexample signals an implementation bug.
    """
    if property_name not in _PROPERTY_BY_NAME:
        raise KeyError(f"unknown property {property_name!r}; "
                       f"known: {', '.join(PROPERTY_NAMES)}")
    prop = _PROPERTY_BY_NAME[property_name]
    _check_bound(filt.n, prop.population
                 if prop.population in _DEFAULT_BOUNDS else "birack")
    count, bad = _scan_property(prop, filt.n, jobs)
    if bad is not None:
        return Violation(property_name, filt.n, bad)
    return Exhausted(filt.n, count)


@dataclass(frozen=True)
class PropReport:
    name: str
    max_n: int
    count: int
    violation: str | None


def run_all_properties(max_n: int = 4, jobs: int = 1) -> list[PropReport]:
    """Run every registered property up to min(max_n, its default cap)."""
    reports = []
    for prop in _PROPERTIES:
        cap = min(max_n, prop.max_n)
        total = 0
        violation = None
        for n in range(1, cap + 1):
            count, bad = _scan_property(prop, n, jobs)
            total += count
            if bad is not None and violation is None:
                violation = f"n={n}: {bad}"
        reports.append(PropReport(prop.name, cap, total, violation))
    return reports


# -- counting helpers ---------------------------------------------------------

def _count_partition(kind: str, n: int, filt_flags: tuple, first_row: int) -> int:
    filt = EnumFilter(n, *filt_flags)
    if kind == "birack":
        stream = enumerate_biracks(n, filt, _first_row=first_row)
    elif kind == "cycleset":
        stream = enumerate_cyclesets(n, _first_row=first_row)
    elif kind == "left_quasigroup":
        stream = enumerate_left_quasigroups(n, _first_row=first_row)
    elif kind == "mode":
        stream = enumerate_modes(n, _first_row=first_row)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return sum(1 for _ in stream)


def count_structures(kind: str, n: int, filt: EnumFilter | None = None,
                     jobs: int = 1) -> int:
    """Count enumerated structures, optionally across worker processes."""
    if filt is None:
        filt = EnumFilter(n)
    flags = (filt.require_b1b2b3, filt.require_involutive,
             filt.require_square_free, filt.require_right_cyclic,
             filt.require_mode)
    population = "mode" if kind == "mode" else kind
    _check_bound(n, population if population in _DEFAULT_BOUNDS else "birack")
    parts = list(range(_partition_count(
        "mode" if kind == "mode" else "birack", n)))
    if kind in ("cycleset", "left_quasigroup"):
        parts = list(range(_partition_count("birack", n)))
    worker = partial(_count_partition, kind, n, flags)
    if jobs <= 1 or len(parts) <= 1:
        return sum(worker(p) for p in parts)
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return sum(ex.map(worker, parts))
