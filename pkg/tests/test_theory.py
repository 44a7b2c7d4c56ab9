import pytest
from hypothesis import given, strategies as st

from oracles import schur_ring_partitions, set_partitions
from sctkit.characters import character_table
from sctkit.errors import EnumerationCapExceeded, GroupMismatch
from sctkit.groups import conjugacy_classes, whole_group
from sctkit.library import builtin_group
from sctkit.structure import sct_center, sct_commutator
from sctkit.theory import (
    Rejection,
    SupercharacterTheory,
    enumerate_scts,
    is_sct,
    join,
    maximal_sct,
    meet,
    minimal_sct,
    refines,
    sigma_character,
    theory_from_classes,
    validate_sct,
)

# Theory counts, frozen from the brute-force Schur-ring oracle in oracles.py
# (the larger groups take minutes there, so only the cheap ones re-run live).
FROZEN_COUNTS = {
    "C2": 1, "C3": 2, "C4": 3, "C5": 3, "C6": 7, "C7": 4, "C8": 10, "C9": 7,
    "C10": 10, "C11": 4, "C12": 32, "C2^2": 5, "C2^3": 100, "C4xC2": 28,
    "C3^2": 40, "S3": 2, "D4": 9, "Q8": 9, "D5": 3, "D6": 15, "A4": 3, "Dic12": 9,
}

LIVE_ORACLE = ["C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C2^2", "C2^3", "C4xC2", "C3^2",
               "S3", "D4", "Q8", "D5", "D6", "A4", "Dic12"]


def theories(name):
    return enumerate_scts(character_table(builtin_group(name)))


@pytest.mark.parametrize("name,count", sorted(FROZEN_COUNTS.items()))
def test_frozen_theory_counts(name, count):
    assert len(theories(name)) == count


@pytest.mark.parametrize("name", LIVE_ORACLE)
def test_enumeration_matches_schur_ring_oracle(name):
    G = builtin_group(name)
    got = {frozenset(frozenset(b) for b in S.classes) for S in theories(name)}
    assert got == set(schur_ring_partitions(G))


def test_minimal_and_maximal():
    T = character_table(builtin_group("D4"))
    m, M = minimal_sct(T), maximal_sct(T)
    assert len(m) == 5 and len(M) == 2
    assert refines(m, M) and not refines(M, m)
    for S in enumerate_scts(T):
        assert refines(m, S) and refines(S, M)
    # the maximal theory has supercharacters 1 and rho - 1
    assert sorted(M.degrees) == [1, 7]


def test_cyclic_order_six_worked_partition():
    G = builtin_group("C6")
    S = theory_from_classes(G, [[0], [3], [2, 5], [1, 4]])
    assert sorted(S.degrees) == [1, 1, 1, 3]
    big = S.supercharacters[S.degrees.index(3)]
    assert [big(g) for g in range(6)] == [3, 0, 0, -3, 0, 0]
    assert sct_center(S).members == (0, 3)
    assert sct_commutator(S, whole_group(G)).members == (0, 3)


def test_rejections_name_the_axiom():
    T = character_table(builtin_group("C6"))
    assert validate_sct(T, [[0, 1], [2, 3, 4, 5]]).axiom == "identity-block"
    assert validate_sct(T, [[0], [1], [2, 3, 4, 5]]).axiom == "inverse-closure"
    assert validate_sct(T, [[0], [1, 5], [2, 3, 4]]).axiom in {"equal-count", "sigma-constancy"}
    assert validate_sct(T, [[0], [1, 2]]).axiom == "partition"
    S3 = character_table(builtin_group("S3"))
    r = validate_sct(S3, [[0], [1], [2, 3, 4, 5]])
    assert isinstance(r, Rejection) and not r
    assert r.axiom in {"class-closure", "inverse-closure"}


def test_round_trip_and_json():
    for S in theories("Q8"):
        again = validate_sct(S.table, [list(b) for b in S.classes])
        assert isinstance(again, SupercharacterTheory)
        assert again == S and again.char_partition == S.char_partition
        data = S.to_json()
        assert data["classes"] == [list(b) for b in S.classes]
        assert len(data["supercharacter_values"]) == len(S)


def test_supercharacters_are_sigma_of_blocks():
    for S in theories("Dic12"):
        for X, s in zip(S.char_partition.blocks, S.supercharacters):
            assert s == sigma_character(S.table, X)
        degs = S.table.degrees
        assert list(S.degrees) == [sum(degs[i] ** 2 for i in X) for X in S.char_partition.blocks]
        assert sum(S.degrees) == S.group.order


def test_enumeration_cap():
    with pytest.raises(EnumerationCapExceeded):
        enumerate_scts(character_table(builtin_group("C12")), cap=5)


def test_group_mismatch():
    a = minimal_sct(character_table(builtin_group("C4")))
    b = minimal_sct(character_table(builtin_group("C2^2")))
    with pytest.raises(GroupMismatch):
        join(a, b)


# ---------------------------------------------------------------------------
# lattice properties on random pairs

LATTICE_GROUPS = ["C6", "C8", "D4", "Q8", "C4xC2", "D6"]


@st.composite
def theory_pair(draw):
    scts = theories(draw(st.sampled_from(LATTICE_GROUPS)))
    return draw(st.sampled_from(scts)), draw(st.sampled_from(scts))


@given(theory_pair())
def test_join_is_least_upper_bound(pair):
    S, U = pair
    V = join(S, U)
    assert refines(S, V) and refines(U, V)
    for W in enumerate_scts(S.table):
        if refines(S, W) and refines(U, W):
            assert refines(V, W)


@given(theory_pair())
def test_meet_is_greatest_lower_bound(pair):
    S, U = pair
    M = meet(S, U)
    assert refines(M, S) and refines(M, U)
    for W in enumerate_scts(S.table):
        if refines(W, S) and refines(W, U):
            assert refines(W, M)


@given(theory_pair())
def test_join_commutes_and_absorbs(pair):
    S, U = pair
    assert join(S, U) == join(U, S)
    assert join(S, meet(S, U)) == S
    assert meet(S, join(S, U)) == S


@given(st.sampled_from(["C6", "C2^2", "D4", "S3", "Q8"]), st.data())
def test_validator_agrees_with_oracle_on_random_partitions(name, data):
    G = builtin_group(name)
    T = character_table(G)
    cls = conjugacy_classes(G).blocks
    parts = list(set_partitions(list(range(1, len(cls)))))
    part = data.draw(st.sampled_from(parts))
    blocks = [[0]] + [[g for c in b for g in cls[c]] for b in part]
    oracle = {frozenset(frozenset(b) for b in S.classes) for S in theories(name)}
    assert is_sct(T, blocks) == (frozenset(frozenset(b) for b in blocks) in oracle)


@given(theory_pair())
def test_refinement_matches_character_sums(pair):
    from sctkit.suites import characters_are_sums

    S, U = pair
    # the coarser theory's characters are sums of the finer theory's
    assert refines(S, U) == characters_are_sums(U, S)
    if refines(S, U) and S != U:
        assert not characters_are_sums(S, U)
