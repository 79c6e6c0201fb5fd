import math
from itertools import permutations as all_perms

import numpy as np
import pytest
from hypothesis import given, strategies as st

import displayed as D
from asmgroups import IntMatrix, Permutation, permutation_matrix
from asmgroups.asm import is_asm, is_reduced_form
from asmgroups.constructions import (
    FrameError,
    TBlock,
    build_E_k,
    build_frame,
    build_symmetric_group_generators,
    build_symmetric_group_low_rank,
    even_index_permutation,
    expand_center,
    kronecker_group,
    reassemble,
    recognize_frame,
    shares_identity,
    t_block_decomposition,
    theta_embed,
    theta_embed_framed,
)
from asmgroups.matrix import kronecker, multiply, rank
from asmgroups.order import closure, detect_order, fingerprint, is_idempotent
from oracles import symmetric_group_fingerprint
from strategies import permutations


def expected_b_order(k):
    return 2 * k if k % 2 else k


@given(permutations(max_size=8))
def test_frame_order_law(p):
    a = build_frame(p, "A").asm
    b = build_frame(p, "B").asm
    k = p.order()
    assert is_asm(a) and is_asm(b)
    assert rank(a) == rank(b) == p.n + 2
    assert detect_order(a).order == k
    assert detect_order(b).order == expected_b_order(k)


def test_frames_match_displays():
    c3 = Permutation.cycle(3)
    assert build_frame(c3, "A").asm == D.A7_FRAME3
    assert build_frame(c3, "B").asm == D.B7_FRAME6
    one = Permutation.identity(1)
    assert build_frame(one, "A").asm == D.E1
    assert build_frame(one, "B").asm == D.A5


def test_frame_rejects_bad_variant():
    with pytest.raises(ValueError):
        build_frame(Permutation.cycle(2), "C")


@given(permutations(max_size=6))
def test_frame_reassembles(p):
    f = build_frame(p, "A")
    assert reassemble(f) == f.asm
    assert recognize_frame(f.asm) == f


@given(st.integers(2, 6), st.data())
def test_shares_identity_matches_powers(n, data):
    perm = st.permutations(range(1, n + 1)).map(lambda t: Permutation(tuple(t)))
    a = build_frame(data.draw(perm), "A")
    b = build_frame(data.draw(perm), "A")
    same = detect_order(a.asm).identity == detect_order(b.asm).identity
    assert shares_identity(a, b) == same


def test_shares_identity_needs_metadata():
    from asmgroups.constructions import FramedAsm
    with pytest.raises(FrameError):
        shares_identity(FramedAsm(D.E1), build_frame(Permutation.identity(1)))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_symmetric_group_frames(n):
    s, t = build_symmetric_group_generators(n)
    g = closure([s.asm, t.asm], max_size=200)
    assert g.order == math.factorial(n)
    assert g.all_asm()
    assert all(x.n == n + 4 and rank(x) < x.n for x in g.elements)
    hist, center = symmetric_group_fingerprint(n)
    fp = fingerprint(g)
    assert fp.element_order_histogram == hist and fp.center_size == center


def test_s4_generators_match_display():
    s, t = build_symmetric_group_generators(4)
    assert s.asm == D.A8 and t.asm == D.B8
    s, t = build_symmetric_group_generators(3)
    assert s.asm == D.A7_S3 and t.asm == D.B7_S3


@pytest.mark.parametrize("k", range(1, 7))
def test_E_k(k):
    e = build_E_k(k)
    n = 4 * k + 1
    assert e.n == n and is_asm(e) and is_idempotent(e) and is_reduced_form(e)
    assert rank(e) == 2 * k + 1
    blocks = t_block_decomposition(k)
    assert len(blocks) == 2 * k
    mats = [b.matrix(n) for b in blocks]
    total = IntMatrix.zeros(n)
    for m in mats:
        total = total + m
    assert IntMatrix.identity(n) - total == e
    for i, x in enumerate(mats):
        for j, y in enumerate(mats):
            if i != j:
                assert multiply(x, y).is_zero()


def test_E_1_is_display():
    assert build_E_k(1) == D.E1


def test_t_block_validation():
    with pytest.raises(ValueError):
        TBlock(2, 1, 1, 2)
    m = TBlock(1, 1, 2, 2).matrix(2)
    assert m.tolist() == [[1, -1], [-1, 1]]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_theta_embedding_is_faithful(k):
    perms = [even_index_permutation(Permutation(q), k) for q in all_perms(range(1, 2 * k + 1))]
    images = {}
    for p in perms:
        a = theta_embed(p, k)
        assert is_asm(a) and rank(a) == 2 * k + 1
        assert detect_order(a).order == p.order()
        images[a] = p
    assert len(images) == math.factorial(2 * k)
    # sample products rather than all (2k)!^2 pairs at k = 3
    sample = perms if k < 3 else perms[::37]
    for p in sample:
        for q in sample:
            lhs = multiply(theta_embed(p, k), theta_embed(q, k))
            assert lhs == theta_embed(p.compose(q), k)


def test_theta_closure_s4():
    gens = [theta_embed(even_index_permutation(Permutation.cycle(4), 2), 2),
            theta_embed(even_index_permutation(Permutation.from_cycles(4, (1, 2)), 2), 2)]
    g = closure(gens)
    assert g.order == 24 and g.all_asm()
    assert fingerprint(g).element_order_histogram == {1: 1, 2: 9, 3: 8, 4: 6}
    assert fingerprint(g).element_order_histogram == symmetric_group_fingerprint(4)[0]


def test_theta_rejects_moving_odd_index():
    with pytest.raises(ValueError):
        theta_embed(Permutation.from_cycles(5, (1, 3)), 1)


def test_nine_by_nine_displays():
    for name, order in (("A9_ORDER3", 3), ("B9_ORDER4", 4), ("A9_EMBED", 4)):
        f = recognize_frame(getattr(D, name))
        assert f is not None and f.frame_meta.outer_size == 9
        assert detect_order(f.asm).order == order
    g = closure([D.A9_ORDER3, D.B9_ORDER4])
    assert g.order == 24 and g.all_asm()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_low_rank_symmetric_groups(n):
    s, t = build_symmetric_group_low_rank(n)
    k = math.ceil(n / 2)
    g = closure([s, t], max_size=200)
    assert g.order == math.factorial(n) and g.all_asm()
    assert all(x.n == 4 * k + 1 and rank(x) == 2 * k + 1 and is_reduced_form(x) for x in g.elements)


def test_low_rank_s3_matches_display():
    s, t = build_symmetric_group_low_rank(3)
    assert s == D.S9 and t == D.T9


def test_expand_center_reproduces_order_20():
    base = recognize_frame(D.A9_EMBED)
    b = expand_center(base, Permutation.cycle(5))
    assert b.asm == D.B13
    assert detect_order(b.asm).order == 20
    assert permutation_matrix(Permutation.cycle(5)) == D.P5_CYCLE


def test_expand_center_with_metadata_from_theta():
    p = even_index_permutation(Permutation.cycle(4), 2)
    f = theta_embed_framed(p, 2)
    assert f.asm == theta_embed(p, 2)
    out = expand_center(f, Permutation.cycle(3))
    assert out.asm.n == 11 and is_asm(out.asm)
    assert detect_order(out.asm).order == 12


def test_expand_center_needs_metadata():
    from asmgroups.constructions import FramedAsm
    with pytest.raises(FrameError):
        expand_center(FramedAsm(D.E1), Permutation.cycle(2))


def test_kronecker_of_displays():
    k = kronecker(D.E1, D.E1)
    assert k.n == 25 and rank(k) == 9 and is_asm(k) and is_idempotent(k)
    k = kronecker(D.KRON_LEFT, D.KRON_RIGHT)
    assert k.n == 49 and is_asm(k) and rank(k) < 49
    assert detect_order(k).order == 6


def test_kronecker_group():
    g = closure([D.A7_S3, D.B7_S3])
    h = closure([D.A5])
    gh = kronecker_group(g, h)
    assert gh.order == 12 and gh.all_asm()
    orders = fingerprint(gh).element_order_histogram
    expect = {}
    for i in range(g.order):
        for j in range(h.order):
            o = math.lcm(g.element_order(i), h.element_order(j))
            expect[o] = expect.get(o, 0) + 1
    assert orders == dict(sorted(expect.items()))


@given(st.integers(1, 6), st.data(), st.sampled_from("AB"), st.sampled_from("AB"))
def test_frame_products_compose_corners(n, data, va, vb):
    # corner patterns multiply like Z/2 and the blocks multiply as permutations
    perm = st.permutations(range(1, n + 1)).map(lambda t: Permutation(tuple(t)))
    p, q = data.draw(perm), data.draw(perm)
    ab = multiply(build_frame(p, va).asm, build_frame(q, vb).asm)
    ref = build_frame(p.compose(q), "A" if va == vb else "B").asm
    outside = [0, 1, n + 2, n + 3]
    assert is_asm(ab) and rank(ab) == n + 2
    assert (ab.array[np.ix_(outside, outside)] == ref.array[np.ix_(outside, outside)]).all()
    assert (ab.array[2:n + 2, 2:n + 2] == ref.array[2:n + 2, 2:n + 2]).all()


def test_identity_complement_rank():
    for g in (closure([D.A6, D.B6]), closure([D.A9_ORDER3, D.B9_ORDER4])):
        e = g.identity_matrix
        t = IntMatrix.identity(e.n) - e
        assert is_idempotent(t) and rank(t) == e.n - rank(e)
