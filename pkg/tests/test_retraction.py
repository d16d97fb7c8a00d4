import pytest

from biracks.core import Partition
from biracks.birack import classify
from biracks.constructions import builtin, projection_birack
from biracks.cycleset import birack_from_cycleset
from biracks.enumerate import enumerate_biracks
from biracks.retraction import (
    NotMultipermutation,
    Singleton,
    Stabilized,
    Truncated,
    Unknown,
    ess_relation,
    generalized_retraction,
    multipermutation_level,
    proof_identity_suite,
    quotient_birack,
    retraction_tower,
    verify_congruence_bruteforce,
)

NELSON = builtin("nelson_ex").structure
ESSENTIAL = builtin("essential_ex").structure
SKEWBRACE = builtin("sv_skewbrace_ex").structure


# -- the relation ---------------------------------------------------------------

def test_skewbrace_retraction_classes():
    part = generalized_retraction(SKEWBRACE)
    assert part == Partition.from_blocks(8, [(0, 5), (1, 4), (2, 7), (3, 6)])


def test_projection_retraction_is_single_class():
    assert generalized_retraction(projection_birack(4)) == Partition.full(4)


def test_essential_retraction_is_identity_partition():
    # left classes pair elements but right translations split them again
    assert generalized_retraction(ESSENTIAL) == Partition.identity(5)


# -- the congruence oracle --------------------------------------------------------

def test_skewbrace_relation_is_a_congruence():
    part = generalized_retraction(SKEWBRACE)
    assert verify_congruence_bruteforce(SKEWBRACE, part).ok


def test_left_only_relation_is_not_a_congruence():
    part = Partition.from_blocks(5, [(0, 1), (2, 3), (4,)])
    v = verify_congruence_bruteforce(ESSENTIAL, part)
    assert not v.ok
    assert v.witness[0] == "circ"
    # the claimed translation collision really happens
    l1 = ESSENTIAL.circ.row(ESSENTIAL.circ.cells[0][2])
    l4 = ESSENTIAL.circ.row(ESSENTIAL.circ.cells[1][3])
    assert ESSENTIAL.circ.cells[0][2] == 1 and ESSENTIAL.circ.cells[1][3] == 4
    assert l1 != l4


def test_identity_partition_always_passes():
    for b in (NELSON, ESSENTIAL, SKEWBRACE):
        assert verify_congruence_bruteforce(b, Partition.identity(b.n)).ok


def test_oracle_size_mismatch():
    with pytest.raises(ValueError):
        verify_congruence_bruteforce(NELSON, Partition.identity(3))


def test_retraction_is_congruence_on_all_enumerated_biracks():
    for n in (1, 2, 3):
        for b in enumerate_biracks(n):
            assert verify_congruence_bruteforce(b, generalized_retraction(b)).ok


# -- quotients --------------------------------------------------------------------

def test_skewbrace_quotient_is_trivial_involutive_square_free():
    part = generalized_retraction(SKEWBRACE)
    q = quotient_birack(SKEWBRACE, part)
    assert q.n == 4
    assert all(q.circ.row(x) == (0, 1, 2, 3) for x in range(4))
    assert all(q.bullet.column(y) == (0, 1, 2, 3) for y in range(4))
    flags = classify(q)
    assert flags.involutive and flags.square_free


def test_quotient_by_identity_partition_is_the_same_birack():
    q = quotient_birack(NELSON, Partition.identity(4))
    assert q == NELSON


def test_projection_quotient_collapses():
    b = projection_birack(3)
    q = quotient_birack(b, generalized_retraction(b))
    assert q.n == 1


def test_quotient_rejects_non_congruences():
    part = Partition.from_blocks(5, [(0, 1), (2, 3), (4,)])
    with pytest.raises(ValueError, match="congruence"):
        quotient_birack(ESSENTIAL, part)


def test_quotient_preserves_flags_on_involutive_inputs():
    for b in enumerate_biracks(3):
        part = generalized_retraction(b)
        q = quotient_birack(b, part)
        flags, qflags = classify(b), classify(q)
        if flags.involutive:
            assert qflags.involutive
        if flags.square_free:
            assert qflags.square_free


# -- towers and levels --------------------------------------------------------------

def test_skewbrace_tower():
    tower = retraction_tower(SKEWBRACE)
    assert tower.sizes == (8, 4, 1)
    assert tower.terminal == Singleton(2)
    assert multipermutation_level(SKEWBRACE) == 2


def test_projection_tower():
    tower = retraction_tower(projection_birack(5))
    assert tower.sizes == (5, 1)
    assert tower.terminal == Singleton(1)
    assert multipermutation_level(projection_birack(5)) == 1


def test_singleton_input_has_level_zero():
    b = projection_birack(1)
    tower = retraction_tower(b)
    assert tower.sizes == (1,)
    assert tower.terminal == Singleton(0)
    assert multipermutation_level(b) == 0


def test_essential_tower_stabilizes():
    tower = retraction_tower(ESSENTIAL)
    assert tower.sizes == (5,)
    assert tower.terminal == Stabilized(5)
    assert multipermutation_level(ESSENTIAL) == NotMultipermutation(5)


def test_tower_truncation():
    tower = retraction_tower(SKEWBRACE, max_steps=1)
    assert tower.terminal == Truncated(1)
    assert multipermutation_level(SKEWBRACE, max_steps=1) == Unknown(1)
    with pytest.raises(ValueError):
        retraction_tower(SKEWBRACE, max_steps=0)


def test_tower_sizes_strictly_decrease_until_terminal():
    for n in (1, 2, 3):
        for b in enumerate_biracks(n):
            sizes = retraction_tower(b).sizes
            assert all(a > b2 for a, b2 in zip(sizes, sizes[1:]))


def test_both_defining_routes_agree_on_enumerated_biracks():
    # generalized_retraction itself would raise if the division route differed
    for n in (2, 3):
        for b in enumerate_biracks(n):
            generalized_retraction(b)


# -- the claims suite -----------------------------------------------------------------

def test_claims_pass_on_nelson():
    report = proof_identity_suite(NELSON)
    assert report.all_ok


def test_claims_pass_on_skewbrace():
    assert proof_identity_suite(SKEWBRACE).all_ok


def test_claims_pass_on_projection():
    assert proof_identity_suite(projection_birack(4)).all_ok


def test_claims_pass_on_all_small_biracks():
    for n in (1, 2):
        for b in enumerate_biracks(n):
            assert proof_identity_suite(b).all_ok


def test_ess_single_class_on_projection():
    assert ess_relation(projection_birack(3)) == Partition.full(3)
