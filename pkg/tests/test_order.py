import pytest
from hypothesis import given

import displayed as D
from asmgroups import IntMatrix, Permutation, permutation_matrix
from asmgroups.asm import is_asm
from asmgroups.matrix import multiply, power, rank
from asmgroups.order import (
    CAP_EXCEEDED,
    MAGNITUDE_EXCEEDED,
    POWER_NOT_ASM,
    REPEAT_NOT_AT_A,
    ClosureTooLarge,
    GroupError,
    asm_cyclic_order,
    closure,
    detect_order,
    fingerprint,
    group_from_elements,
    idempotent_orbit,
    induced_table,
    is_idempotent,
    lift_to_linear_group,
    nullity,
    same_columnspace,
    same_rowspace,
)
from oracles import brute_closure, table_fingerprint
from strategies import asms, permutations


def as_tuples(m):
    return tuple(tuple(r) for r in m.tolist())


def test_e1_idempotent_all_powers():
    assert is_idempotent(D.E1)
    assert power(D.E1, 7) == D.E1
    v = detect_order(D.E1)
    assert v.order == 1 and v.identity == D.E1 and v.rank == 3 and v.nullity == 2


def test_a5_order_two_with_e1_identity():
    v = detect_order(D.A5)
    assert v.order == 2 and v.identity == D.E1
    assert multiply(D.E1, D.A5) == D.A5 == multiply(D.A5, D.E1)


@pytest.mark.parametrize("name,order", [
    ("A7_S3", 3), ("B7_S3", 2), ("A7_D4", 4), ("A7_D6", 6), ("A7_NEG", 2),
    ("A7_FRAME3", 3), ("B7_FRAME6", 6), ("A8", 4), ("B8", 2), ("A9_ORDER3", 3),
    ("B9_ORDER4", 4), ("S9", 3), ("T9", 2), ("A9_EMBED", 4), ("B13", 20),
])
def test_displayed_orders(name, order):
    m = getattr(D, name)
    assert detect_order(m).order == order
    assert asm_cyclic_order(m).order == order


def test_three_negative_example_squares_to_its_identity():
    assert multiply(D.A7_NEG, D.A7_NEG) == D.E7_NEG
    assert detect_order(D.A7_NEG).identity == D.E7_NEG


def test_no_finite_order_verdicts():
    nil = IntMatrix([[0, 1], [0, 0]])
    v = detect_order(nil)
    assert not v.finite and v.reason == REPEAT_NOT_AT_A and v.proven
    v = detect_order(IntMatrix([[1, 1], [0, 1]]), cap=500, magnitude_bound=100)
    assert v.reason == MAGNITUDE_EXCEEDED and not v.proven
    v = detect_order(permutation_matrix(Permutation.cycle(7)), cap=3)
    assert v.reason == CAP_EXCEEDED
    assert detect_order(permutation_matrix(Permutation.cycle(7))).order == 7


def test_asm_cyclic_order_rejects_powers_leaving_asms():
    # singular, A^3 = A, but A^2 is not an ASM
    a = IntMatrix([[1, 0, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1],
                   [0, 1, -1, 1, 0], [0, 0, 1, 0, 0]])
    assert is_asm(a) and rank(a) == 4
    assert detect_order(a).order == 2
    assert not is_asm(multiply(a, a))
    v = asm_cyclic_order(a)
    assert not v.finite and v.reason == POWER_NOT_ASM


@given(permutations(max_size=7))
def test_permutation_order_matches(p):
    assert detect_order(permutation_matrix(p)).order == p.order()


@given(asms(max_n=5))
def test_finite_order_powers_share_rank(m):
    v = detect_order(m)
    if v.finite:
        assert is_idempotent(v.identity)
        assert {rank(x) for x in v.powers} == {v.rank}
        assert all(same_rowspace(x, v.identity) and same_columnspace(x, v.identity) for x in v.powers)


def test_rowspace_comparison():
    assert same_rowspace(D.E6, D.A6) and same_columnspace(D.E6, D.B6)
    assert not same_rowspace(D.E1, D.E1.T)
    assert same_rowspace(IntMatrix([[1, 2], [2, 4]]), IntMatrix([[3, 6], [0, 0]]))
    assert nullity(D.E1) == 2


def test_klein_group_6x6():
    g = closure([D.A6, D.B6])
    assert g.order == 4 and g.identity_matrix == D.E6
    assert set(g.elements) == {D.E6, D.A6, D.B6, D.C6}
    assert multiply(D.A6, D.B6) == D.C6 == multiply(D.B6, D.A6)
    fp = fingerprint(g)
    assert fp.abelian and fp.element_order_histogram == {1: 1, 2: 3}


def test_gamma_lift_matches_display():
    g = closure([D.A6, D.B6])
    lifted = dict(zip(g.elements, lift_to_linear_group(g)))
    assert lifted[D.A6] == D.GAMMA6_A
    assert lifted[D.B6] == D.GAMMA6_B
    assert lifted[D.C6] == D.GAMMA6_C
    assert lifted[D.E6] == IntMatrix.identity(6)
    assert induced_table(list(lifted.values())) == g.cayley


def test_theta_group_row_translate():
    # B = P E with P a non-permutation matrix of a linear group
    assert multiply(D.P6, D.E6) == D.B6


@pytest.mark.parametrize("gens,order,abelian,hist", [
    (("A7_S3", "B7_S3"), 6, False, {1: 1, 2: 3, 3: 2}),
    (("A7_D4", "B7_D4"), 8, False, {1: 1, 2: 5, 4: 2}),
    (("A7_D6", "B7_D6"), 12, False, {1: 1, 2: 7, 3: 2, 6: 2}),
])
def test_seven_by_seven_groups(gens, order, abelian, hist):
    mats = [getattr(D, n) for n in gens]
    g = closure(mats)
    assert g.order == order and g.all_asm()
    fp = fingerprint(g)
    assert fp.abelian == abelian and fp.element_order_histogram == hist
    # independent closure and fingerprint
    brute = brute_closure([as_tuples(m) for m in mats])
    assert brute == {as_tuples(x) for x in g.elements}
    assert table_fingerprint([list(r) for r in g.cayley]) == hist


def test_cayley_table_is_consistent():
    g = closure([D.A7_D6, D.B7_D6])
    for i, x in enumerate(g.elements):
        for j, y in enumerate(g.elements):
            assert g.elements[g.cayley[i][j]] == multiply(x, y)
        assert g.cayley[i][g.inverse(i)] == g.identity


def test_closure_size_guard():
    with pytest.raises(ClosureTooLarge):
        closure([D.A7_D6, D.B7_D6], max_size=5)


def test_group_from_elements_rejects_non_groups():
    with pytest.raises(GroupError):
        group_from_elements([D.A5])
    with pytest.raises(GroupError):
        group_from_elements([D.E1, D.E1.T])


def test_linear_lift_of_5x5_group():
    g = closure([D.A5])
    lifted = lift_to_linear_group(g)
    assert D.A5_LIFT in lifted
    assert all(rank(x) == 5 for x in lifted)


def test_idempotent_orbit_5x5():
    # both column swaps together keep E1's row space; one alone does not
    both = Permutation.from_cycles(5, (1, 2), (4, 5))
    orbit = idempotent_orbit(D.E1, [both])
    assert orbit.all_asm and orbit.all_rowspace_preserving
    assert set(orbit.products) == {D.E1, D.A5}
    one = idempotent_orbit(D.E1, [Permutation.from_cycles(5, (4, 5))])
    assert one.all_asm and not one.all_rowspace_preserving
