import pytest

from biracks.core import BinaryOpTable, Partition, perm_parse_cycles
from biracks.birack import classify, left_translation, right_translation
from biracks.constructions import AffineData, affine_structures, builtin
from biracks.cycleset import (
    LeftQuasigroup,
    alpha_relation,
    birack_from_cycleset,
    cycleset_from_birack,
    is_nondegenerate,
    is_right_cyclic,
    kon1_check,
    t_preimage_steps,
)
from biracks.enumerate import EnumFilter, enumerate_biracks, enumerate_cyclesets

RUMP = builtin("rump_cycleset_ex").structure
PROJECTION_CS = LeftQuasigroup.from_rows(((0, 1, 2),) * 3)


def test_left_quasigroup_requires_permutation_rows():
    with pytest.raises(ValueError):
        LeftQuasigroup.from_rows(((0, 0), (0, 1)))


def test_left_quasigroup_division_is_derived():
    lq = LeftQuasigroup.from_rows(((1, 2, 0), (0, 1, 2), (2, 0, 1)))
    for x in range(3):
        for y in range(3):
            assert lq.apply(x, lq.divide(x, y)) == y
            assert lq.divide(x, lq.apply(x, y)) == y
    with pytest.raises(ValueError):
        LeftQuasigroup(lq.op, lq.op)


# -- the right cyclic law ----------------------------------------------------------

def test_rump_table_is_right_cyclic():
    assert is_right_cyclic(RUMP).ok


def test_projection_is_right_cyclic():
    assert is_right_cyclic(PROJECTION_CS).ok


def test_right_cyclic_failure_with_witness():
    lq = LeftQuasigroup.from_rows(((1, 2, 0), (0, 1, 2), (0, 1, 2)))
    v = is_right_cyclic(lq)
    assert not v.ok
    op = lq.op.cells
    x, y, z = v.witness
    assert op[op[x][y]][op[x][z]] != op[op[y][x]][op[y][z]]


# -- non-degeneracy -----------------------------------------------------------------

def test_rump_diagonal_is_bijective():
    assert RUMP.diagonal_map().images == (2, 3, 0, 1)
    assert is_nondegenerate(RUMP)


def test_projection_diagonal_is_identity():
    assert is_nondegenerate(PROJECTION_CS)
    assert PROJECTION_CS.diagonal_map().images == (0, 1, 2)


def test_nondegenerate_requires_right_cyclic():
    lq = LeftQuasigroup.from_rows(((1, 2, 0), (0, 1, 2), (0, 1, 2)))
    with pytest.raises(ValueError):
        is_nondegenerate(lq)


def test_all_small_cyclesets_are_nondegenerate():
    for n in (1, 2, 3, 4):
        for cs in enumerate_cyclesets(n):
            assert is_nondegenerate(cs)


# -- conversion to biracks ------------------------------------------------------------

def test_rump_conversion_translations():
    b = birack_from_cycleset(RUMP)
    fourcycle_a = perm_parse_cycles("(1423)", 4, base=1)
    fourcycle_b = perm_parse_cycles("(1324)", 4, base=1)
    for x in (0, 1):
        assert left_translation(b, x) == fourcycle_a
        assert right_translation(b, x) == fourcycle_a
    for x in (2, 3):
        assert left_translation(b, x) == fourcycle_b
        assert right_translation(b, x) == fourcycle_b
    assert classify(b).involutive


def test_projection_cycleset_gives_trivial_solution():
    b = birack_from_cycleset(PROJECTION_CS)
    assert all(left_translation(b, x).is_identity() for x in range(3))
    assert all(right_translation(b, x).is_identity() for x in range(3))


def test_affine_cycleset_conversion_matches_closed_form():
    cs, b = affine_structures(AffineData(4, 3, 0))
    assert cs.op.cells == BinaryOpTable.from_function(
        4, lambda x, y: (-2 * x + 3 * y) % 4).cells
    assert b.circ.cells == cs.op.cells
    assert b.bullet.cells == BinaryOpTable.from_function(
        4, lambda x, y: (3 * x - 2 * y) % 4).cells


def test_conversion_rejects_non_right_cyclic():
    lq = LeftQuasigroup.from_rows(((1, 2, 0), (0, 1, 2), (0, 1, 2)))
    with pytest.raises(ValueError, match="right cyclic"):
        birack_from_cycleset(lq)


# -- conversion from biracks -----------------------------------------------------------

def test_extraction_requires_involutive():
    nelson = builtin("nelson_ex").structure
    with pytest.raises(ValueError, match="involutive"):
        cycleset_from_birack(nelson)


def test_round_trip_from_rump():
    assert cycleset_from_birack(birack_from_cycleset(RUMP)) == RUMP


def test_round_trip_from_trivial_solution():
    b = birack_from_cycleset(PROJECTION_CS)
    assert cycleset_from_birack(b) == PROJECTION_CS


def test_affine_extraction_closed_form():
    _, b = affine_structures(AffineData(4, 3, 0))
    cs = cycleset_from_birack(b)
    assert cs.op.cells == BinaryOpTable.from_function(
        4, lambda x, y: (2 * x + 3 * y) % 4).cells


def test_round_trip_a_exhaustive_small():
    for n in (1, 2, 3, 4):
        for cs in enumerate_cyclesets(n):
            assert cycleset_from_birack(birack_from_cycleset(cs)) == cs


def test_round_trip_b_exhaustive_small():
    for n in (1, 2, 3):
        for b in enumerate_biracks(n, EnumFilter(n, require_involutive=True)):
            assert birack_from_cycleset(cycleset_from_birack(b)) == b


# -- alpha relation ---------------------------------------------------------------------

def test_alpha_on_rump_table():
    res = alpha_relation(RUMP)
    assert res.partition == Partition.from_blocks(4, [(0, 1), (2, 3)])
    assert res.congruence_of_op.ok


def test_alpha_on_projection():
    res = alpha_relation(PROJECTION_CS)
    assert res.partition == Partition.full(3)
    assert res.congruence_of_op.ok and res.congruence_of_companion.ok


def test_alpha_companion_congruence_on_all_small_cyclesets():
    for n in (1, 2, 3, 4):
        for cs in enumerate_cyclesets(n):
            res = alpha_relation(cs)
            assert res.congruence_of_op.ok
            assert res.congruence_of_companion.ok


# -- the diagonal-value identity ----------------------------------------------------------

def test_kon1_on_rump():
    assert kon1_check(RUMP).ok


def test_kon1_on_projection():
    assert kon1_check(PROJECTION_CS).ok


def test_kon1_on_affine_instance():
    cs, _ = affine_structures(AffineData(4, 3, 2))
    assert kon1_check(cs).ok


def test_preimage_chain_reaches_every_element():
    for cs in (RUMP, PROJECTION_CS):
        for z in range(cs.n):
            steps = t_preimage_steps(cs, z)
            assert steps is not None
            assert steps <= cs.lmlt().order


def test_preimage_chain_on_enumerated_cyclesets():
    for n in (1, 2, 3):
        for cs in enumerate_cyclesets(n):
            assert all(t_preimage_steps(cs, z) is not None for z in range(n))
