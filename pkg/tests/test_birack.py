import random
from itertools import permutations, product

import pytest

from biracks.core import BinaryOpTable, Permutation, perm_compose, perm_parse_cycles
from biracks.birack import (
    BirackError,
    SolutionView,
    birack_from_tables,
    braid_check,
    check_axioms,
    classify,
    left_translation,
    left_translation_identity,
    lmlt,
    right_translation,
    rmlt,
    s_map,
    t_map,
)
from biracks.constructions import (
    builtin,
    permutation_birack,
    permutation_tables,
    projection_birack,
)
from biracks.enumerate import EnumFilter, enumerate_biracks
from biracks.retraction import ess_relation, generalized_retraction
from biracks.cycleset import birack_from_cycleset


NELSON = builtin("nelson_ex").structure
ESSENTIAL = builtin("essential_ex").structure
SKEWBRACE = builtin("sv_skewbrace_ex").structure
RUMP_BIRACK = birack_from_cycleset(builtin("rump_cycleset_ex").structure)


# -- construction and validation ----------------------------------------------

def test_nelson_tables_are_accepted():
    b = birack_from_tables(NELSON.circ, NELSON.bullet)
    assert b == NELSON
    # the source tables are self-inverse rowwise and columnwise
    assert b.ld_circ == b.circ
    assert b.rd_bullet == b.bullet


def test_projection_is_accepted():
    b = projection_birack(3)
    assert b.circ.cells == ((0, 1, 2),) * 3
    assert b.bullet.cells == ((0, 0, 0), (1, 1, 1), (2, 2, 2))


def test_duplicated_value_in_column_is_a_right_quasigroup_failure():
    # corrupt column 1 so it repeats a value and stops being a permutation
    cells = [list(row) for row in NELSON.bullet.cells]
    cells[0][1] = cells[1][1]
    bad = BinaryOpTable(tuple(tuple(row) for row in cells))
    with pytest.raises(BirackError) as err:
        birack_from_tables(NELSON.circ, bad)
    assert err.value.axiom == "right_quasigroup"
    assert err.value.witness == (1,)


def test_identity_violation_carries_smallest_witness():
    # constant tables: every row of circ equals (0,1), bullet swaps
    circ = BinaryOpTable(((0, 1), (0, 1)))
    bullet = BinaryOpTable(((1, 1), (0, 0)))
    report = check_axioms(circ, bullet)
    if not report.valid_birack:
        with pytest.raises(BirackError):
            birack_from_tables(circ, bullet)


def test_division_identities_hold_on_builtins():
    for b in (NELSON, ESSENTIAL, SKEWBRACE, RUMP_BIRACK):
        c, ld = b.circ.cells, b.ld_circ.cells
        bl, rd = b.bullet.cells, b.rd_bullet.cells
        for x, y in product(range(b.n), repeat=2):
            assert c[x][ld[x][y]] == y
            assert ld[x][c[x][y]] == y
            assert bl[rd[y][x]][x] == y
            assert rd[bl[y][x]][x] == y


# -- axiom reports -------------------------------------------------------------

def test_nelson_report():
    report = check_axioms(NELSON.circ, NELSON.bullet)
    assert report.valid_birack
    assert report.b1.ok and report.b2.ok and report.b3.ok
    assert not report.involutive
    assert report.involutive_l.witness == (2, 0)
    # (3 o 1) o (3 . 1) = 4 in source labels
    assert NELSON.circ.cells[NELSON.circ.cells[2][0]][NELSON.bullet.cells[2][0]] == 3
    assert report.biquandle is not None and not report.biquandle.ok
    assert report.biquandle.witness == (2,)
    # (3 ld 3) rd (3 ld 3) = 4 in source labels
    u = NELSON.ld_circ.cells[2][2]
    assert NELSON.rd_bullet.cells[u][u] == 3


def test_essential_report():
    report = check_axioms(ESSENTIAL.circ, ESSENTIAL.bullet)
    assert report.valid_birack
    assert not report.involutive
    assert not report.involutive_r.ok
    assert report.involutive_r.witness == (0, 1)
    # (0 o 1) . (0 . 1) = 2
    assert ESSENTIAL.bullet.cells[ESSENTIAL.circ.cells[0][1]][
        ESSENTIAL.bullet.cells[0][1]] == 2


def test_skewbrace_report():
    report = check_axioms(SKEWBRACE.circ, SKEWBRACE.bullet)
    assert report.valid_birack
    assert not report.involutive
    assert not report.square_free


def test_report_on_invalid_tables_has_no_biquandle_verdict():
    circ = BinaryOpTable(((0, 0), (1, 1)))
    bullet = BinaryOpTable(((0, 1), (0, 1)))
    report = check_axioms(circ, bullet)
    assert not report.left_quasigroup.ok
    assert report.left_quasigroup.witness == (0,)
    assert report.biquandle is None


def test_report_witnesses_self_validate():
    rng = random.Random(31337)
    perms3 = sorted(permutations(range(3)))
    for _ in range(60):
        circ = BinaryOpTable(tuple(rng.choice(perms3) for _ in range(3)))
        cols = [rng.choice(perms3) for _ in range(3)]
        bullet = BinaryOpTable(tuple(
            tuple(cols[y][x] for y in range(3)) for x in range(3)))
        c, bl = circ.cells, bullet.cells
        report = check_axioms(circ, bullet)
        if not report.b1.ok:
            x, y, z = report.b1.witness
            assert c[x][c[y][z]] != c[c[x][y]][c[bl[x][y]][z]]
        if not report.b2.ok:
            x, y, z = report.b2.witness
            assert bl[c[x][y]][c[bl[x][y]][z]] != c[bl[x][c[y][z]]][bl[y][z]]
        if not report.b3.ok:
            x, y, z = report.b3.witness
            assert bl[bl[x][y]][z] != bl[bl[x][c[y][z]]][bl[y][z]]
        if not report.involutive_l.ok:
            x, y = report.involutive_l.witness
            assert c[c[x][y]][bl[x][y]] != x
        if not report.involutive_r.ok:
            x, y = report.involutive_r.witness
            assert bl[c[x][y]][bl[x][y]] != y


# -- braid --------------------------------------------------------------------

def test_braid_holds_on_validated_biracks():
    for b in (NELSON, ESSENTIAL, SKEWBRACE, projection_birack(1)):
        assert braid_check(b.solution()).ok


def test_braid_fails_for_non_commuting_constant_maps():
    f = perm_parse_cycles("(012)", 3)
    g = perm_parse_cycles("(01)", 3)
    circ, bullet = permutation_tables(f, g)
    v = braid_check(SolutionView(circ, bullet))
    assert not v.ok
    assert v.witness is not None


def test_braid_iff_axioms_exhaustive_n2():
    perms2 = sorted(permutations(range(2)))
    agreements = 0
    for rows in product(perms2, repeat=2):
        circ = BinaryOpTable(rows)
        for cols in product(perms2, repeat=2):
            bullet = BinaryOpTable(tuple(
                tuple(cols[y][x] for y in range(2)) for x in range(2)))
            report = check_axioms(circ, bullet)
            axioms = bool(report.b1 and report.b2 and report.b3)
            assert braid_check(SolutionView(circ, bullet)).ok == axioms
            agreements += 1
    assert agreements == 16


def test_braid_iff_axioms_random_n4_n5():
    rng = random.Random(5150)
    for n in (4, 5):
        base = list(range(n))
        for _ in range(120):
            rows = []
            for _ in range(n):
                r = base[:]
                rng.shuffle(r)
                rows.append(tuple(r))
            cols = []
            for _ in range(n):
                c = base[:]
                rng.shuffle(c)
                cols.append(tuple(c))
            circ = BinaryOpTable(tuple(rows))
            bullet = BinaryOpTable(tuple(
                tuple(cols[y][x] for y in range(n)) for x in range(n)))
            report = check_axioms(circ, bullet)
            axioms = bool(report.b1 and report.b2 and report.b3)
            assert braid_check(SolutionView(circ, bullet)).ok == axioms


# -- classification -----------------------------------------------------------

def test_classify_nelson():
    flags = classify(NELSON)
    assert flags == type(flags)(involutive=False, square_free=False,
                                biquandle=False)


def test_classify_projection():
    flags = classify(projection_birack(4))
    assert flags.involutive and flags.square_free and flags.biquandle


def test_classify_rump_conversion_is_involutive():
    assert classify(RUMP_BIRACK).involutive


def test_classify_agrees_with_r_squared():
    for b in (NELSON, ESSENTIAL, SKEWBRACE, RUMP_BIRACK, projection_birack(3)):
        s = b.solution()
        r2_id = all(s.r(*s.r(x, y)) == (x, y)
                    for x, y in product(range(b.n), repeat=2))
        assert classify(b).involutive == r2_id


# -- diagonal maps ------------------------------------------------------------

def test_t_map_affine_case_is_bijective():
    from biracks.constructions import AffineData, affine_structures
    _, b = affine_structures(AffineData(4, 3, 0))
    t = t_map(b)
    assert t.bijective
    assert t.images == (0, 1, 2, 3)


def test_t_map_nelson():
    t = t_map(NELSON)
    assert t.images == (1, 0, 2, 3)
    s = s_map(NELSON)
    # S(T(3)) = 4 in source labels, breaking the biquandle identity
    assert s(t(2)) == 3


def test_t_s_maps_projection():
    b = projection_birack(3)
    assert t_map(b).images == (0, 1, 2)
    assert s_map(b).images == (0, 1, 2)


def test_t_s_mutually_inverse_on_involutive():
    for b in [RUMP_BIRACK, projection_birack(4),
              *enumerate_biracks(3, EnumFilter(3, require_involutive=True))]:
        t, s = t_map(b), s_map(b)
        assert t.bijective and s.bijective
        assert all(s(t(x)) == x and t(s(x)) == x for x in range(b.n))


# -- translations and multiplication groups ------------------------------------

def test_left_translations_of_essential():
    assert left_translation(ESSENTIAL, 0) == perm_parse_cycles("(12)(34)", 5)
    assert left_translation(ESSENTIAL, 1) == perm_parse_cycles("(12)(34)", 5)
    assert left_translation(ESSENTIAL, 2) == perm_parse_cycles("(04)(12)", 5)
    assert left_translation(ESSENTIAL, 3) == perm_parse_cycles("(04)(12)", 5)
    assert right_translation(ESSENTIAL, 0) != right_translation(ESSENTIAL, 1)


def test_lmlt_skewbrace_is_klein_four():
    g = lmlt(SKEWBRACE)
    assert g.order == 4
    assert all(perm_compose(e, e).is_identity() for e in g.elements)


def test_projection_multiplication_groups_are_trivial():
    b = projection_birack(5)
    assert lmlt(b).order == 1
    assert rmlt(b).order == 1


def test_translation_composition_identity_everywhere():
    for b in (NELSON, ESSENTIAL, SKEWBRACE, RUMP_BIRACK, projection_birack(2)):
        assert left_translation_identity(b).ok


def test_rump_identities_on_involutive():
    for b in [RUMP_BIRACK, *enumerate_biracks(3, EnumFilter(3, require_involutive=True))]:
        ld, rd = b.ld_circ.cells, b.rd_bullet.cells
        for x, y in product(range(b.n), repeat=2):
            assert rd[ld[y][x]][ld[x][y]] == x
            assert ld[rd[x][y]][rd[y][x]] == y


def test_involutive_twisting_identity():
    # composing the inverse left translation with T equals T after R_a
    for b in [RUMP_BIRACK, *enumerate_biracks(3, EnumFilter(3, require_involutive=True))]:
        t = t_map(b).images
        ld = b.ld_circ.cells
        bl = b.bullet.cells
        for a in range(b.n):
            for c in range(b.n):
                assert ld[a][t[c]] == t[bl[c][a]]


# -- permutation biracks --------------------------------------------------------

def test_permutation_birack_trivial():
    b = permutation_birack(Permutation.identity(3), Permutation.identity(3))
    assert classify(b).involutive
    assert b == projection_birack(3)


def test_permutation_birack_inverse_pair_is_involutive():
    f = perm_parse_cycles("(0 1 2 3)", 4)
    b = permutation_birack(f, f.inverse())
    assert classify(b).involutive


def test_permutation_birack_disjoint_cycles_commute_non_involutive():
    f = perm_parse_cycles("(01)", 4)
    g = perm_parse_cycles("(23)", 4)
    b = permutation_birack(f, g)
    assert check_axioms(b.circ, b.bullet).valid_birack
    assert not classify(b).involutive


def test_permutation_birack_rejects_non_commuting():
    f = perm_parse_cycles("(012)", 3)
    g = perm_parse_cycles("(01)", 3)
    with pytest.raises(ValueError, match="commute"):
        permutation_birack(f, g)


# -- stanovsky equivalence -------------------------------------------------------

def test_biquandle_identities_agree_on_enumerated_biracks():
    for b in enumerate_biracks(2):
        ld, rd = b.ld_circ.cells, b.rd_bullet.cells
        first = all(rd[ld[x][x]][ld[x][x]] == x for x in range(b.n))
        second = all(ld[rd[x][x]][rd[x][x]] == x for x in range(b.n))
        assert first == second
    for b in (NELSON, ESSENTIAL, SKEWBRACE, RUMP_BIRACK):
        ld, rd = b.ld_circ.cells, b.rd_bullet.cells
        first = all(rd[ld[x][x]][ld[x][x]] == x for x in range(b.n))
        second = all(ld[rd[x][x]][rd[x][x]] == x for x in range(b.n))
        assert first == second


def test_ess_relation_on_essential_example():
    # right-translation classes differ from the left-translation ones
    from biracks.core import Partition
    assert ess_relation(ESSENTIAL) == Partition.from_blocks(5, [(0, 3, 4), (1, 2)])
    from biracks.retraction import left_equality
    assert left_equality(ESSENTIAL) == Partition.from_blocks(5, [(0, 1), (2, 3), (4,)])


def test_ess_equals_retraction_on_involutive():
    for b in [RUMP_BIRACK, *enumerate_biracks(3, EnumFilter(3, require_involutive=True))]:
        assert ess_relation(b) == generalized_retraction(b)
