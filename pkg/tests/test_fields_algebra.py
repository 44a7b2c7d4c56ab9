import json

import pytest
from hypothesis import given, strategies as st

from oracles import ut_double_orbits
from sctkit.algebra import (
    Ideal,
    algebra_group,
    algebra_to_spec,
    annihilator_series,
    build_algebra,
    compare_series,
    double_orbit_sct,
    ideal_subgroups_by_order,
    load_algebra,
    nullspace,
    power_ideals,
    quotient_algebra,
    quotient_theory_matches,
    rref,
    s_normal_sets_closed,
)
from sctkit.errors import (
    AlgebraNotAssociative,
    BadField,
    InputError,
    NotNilpotent,
    OrderCapExceeded,
    UnsupportedField,
)
from sctkit.fields import check_field_axioms, field_of_order, make_field
from sctkit.characters import character_table
from sctkit.structure import is_s_nilpotent, is_s_normal
from sctkit.theory import minimal_sct


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms(q):
    F = field_of_order(q)
    assert check_field_axioms(F)
    # Frobenius: x^q = x
    for x in range(q):
        y = 1
        for _ in range(q):
            y = F.mul[y][x]
        assert y == x


@pytest.mark.parametrize("q", [4, 8, 9])
def test_trace_is_additive_onto_prime_field(q):
    F = field_of_order(q)
    assert set(F.trace) == set(range(F.p))
    for a in range(q):
        for b in range(q):
            assert F.trace[F.add[a][b]] == (F.trace[a] + F.trace[b]) % F.p


def test_bad_fields():
    with pytest.raises(BadField):
        make_field(2, 2, [1, 0, 1])  # t^2 + 1 = (t + 1)^2 over F_2
    with pytest.raises(BadField):
        make_field(6)
    with pytest.raises(UnsupportedField):
        field_of_order(12)
    with pytest.raises(UnsupportedField):
        field_of_order(16)
    assert check_field_axioms(make_field(2, 4, [1, 1, 0, 0, 1]))


def test_rref_and_nullspace():
    F = field_of_order(3)
    R, piv = rref(F, [[1, 2, 0], [2, 1, 0], [0, 0, 1]])
    assert piv == [0, 2] and len(R) == 2
    N = nullspace(F, [[1, 2, 0], [0, 0, 1]], 3)
    assert len(N) == 1
    v = N[0]
    assert (v[0] + 2 * v[1]) % 3 == 0 and v[2] == 0


def test_structure_constant_errors():
    with pytest.raises(NotNilpotent):
        build_algebra(2, 1, 1, [(0, 0, [1])])
    # b0 b0 = b1, b1 b0 = b1 is not associative: (b0 b0) b0 = b1, b0 (b0 b0) = 0
    with pytest.raises(AlgebraNotAssociative):
        build_algebra(2, 1, 2, [(0, 0, [0, 1]), (1, 0, [0, 1])])
    with pytest.raises(InputError):
        build_algebra(2, 1, 2, [(0, 3, [0, 1])])
    with pytest.raises(InputError):
        load_algebra("ut:3")


@pytest.mark.parametrize("n,q,powers", [(3, 2, [3, 1, 0]), (4, 2, [6, 3, 1, 0]), (3, 4, [3, 1, 0])])
def test_unitriangular_series_dimensions(n, q, powers):
    J = load_algebra(f"ut:{n}:{q}")
    assert [I.dim for I in power_ideals(J)] == powers
    # for unitriangular algebras the annihilator series is the power series reversed
    assert [I.dim for I in annihilator_series(J)] == powers[::-1]
    assert J.nilpotency_class == n


@pytest.mark.parametrize("n,p", [(3, 2), (3, 3), (4, 2)])
def test_double_orbits_match_matrix_oracle(n, p):
    J = load_algebra(f"ut:{n}:{p}")
    S = double_orbit_sct(J)
    classes, duals = ut_double_orbits(n, p)
    assert {frozenset(b) for b in S.classes} == classes
    got = {tuple(chi(g) for g in range(S.group.order)) for chi in S.supercharacters}
    want = {tuple(v[g] for g in range(S.group.order)) for _, v in duals}
    assert got == want
    assert sorted(S.degrees) == sorted(size for size, _ in duals)


def test_unitriangular_three_by_three_over_two():
    S = double_orbit_sct(load_algebra("ut:3:2"))
    assert sorted(S.class_sizes) == [1, 1, 2, 2, 2]
    assert sorted(S.degrees) == [1, 1, 1, 1, 4]


def test_unitriangular_over_four_elements():
    J = load_algebra("ut:3:4")
    S = double_orbit_sct(J)
    assert S.group.order == 64
    assert all(d in (1, 4, 16) for d in S.degrees)
    assert compare_series(J).ok


def test_commutative_truncated_polynomials():
    # t F_2[t] / (t^4): basis t, t^2, t^3
    J = build_algebra(2, 1, 3, [(0, 0, [0, 1, 0]), (0, 1, [0, 0, 1]), (1, 0, [0, 0, 1])])
    S = double_orbit_sct(J)
    assert S.group.is_abelian()
    assert compare_series(J).ok
    assert is_s_nilpotent(S)


def test_zero_algebra_gives_minimal_theory():
    J = build_algebra(3, 1, 2, [])
    S = double_orbit_sct(J)
    assert S == minimal_sct(character_table(S.group))
    assert [I.dim for I in annihilator_series(J)] == [0, 2]


def test_ideal_subgroups_every_order():
    J = load_algebra("ut:4:2")
    out = ideal_subgroups_by_order(J)
    assert [o for o, _, _ in out] == [2**m for m in range(7)]
    assert all(I.is_two_sided() and N.order == o for o, N, I in out)
    assert all(ok for _, ok in s_normal_sets_closed(J))


def test_spec_round_trip(tmp_path):
    J = load_algebra("ut:3:3")
    path = tmp_path / "ut33.json"
    path.write_text(json.dumps(algebra_to_spec(J)))
    K = load_algebra(str(path))
    assert K.sc == J.sc and K.q == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(InputError):
        load_algebra(str(bad))


def test_order_cap():
    J = load_algebra("ut:4:3")
    with pytest.raises(OrderCapExceeded):
        algebra_group(J, cap=100)


# ---------------------------------------------------------------------------
# random ideals of small unitriangular algebras


def generated_ideal(J, vectors):
    """Smallest two-sided ideal containing the vectors."""
    basis = [J.basis_vector(i) for i in range(J.dim)]
    I = Ideal.span(J, vectors)
    while True:
        more = list(I.basis)
        for v in I.basis:
            for b in basis:
                more.append(J.mul(v, b))
                more.append(J.mul(b, v))
        nxt = Ideal.span(J, more)
        if nxt.dim == I.dim:
            return I
        I = nxt


@st.composite
def algebra_and_ideal(draw):
    J = load_algebra(draw(st.sampled_from(["ut:3:2", "ut:3:3", "ut:4:2"])))
    vecs = draw(st.lists(st.lists(st.integers(0, J.q - 1), min_size=J.dim, max_size=J.dim), max_size=2))
    return J, generated_ideal(J, vecs)


@given(algebra_and_ideal())
def test_quotient_by_any_ideal(pair):
    J, I = pair
    assert I.is_two_sided()
    assert quotient_theory_matches(J, I)
    Q, keep = quotient_algebra(J, I)
    assert Q.dim == J.dim - I.dim
    assert compare_series(Q).ok


@given(algebra_and_ideal())
def test_ideal_subgroups_are_s_normal(pair):
    J, I = pair
    AG = algebra_group(J)
    S = double_orbit_sct(J)
    assert is_s_normal(S, AG.subgroup_of(I))
