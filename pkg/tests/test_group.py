"""Finite group tables: classes, subgroups, Sylow theory, transversals."""

import json

import pytest

from symvert import catalog
from symvert.group import (
    FeasibilityError,
    direct_product,
    from_permutations,
    group_from_dict,
    group_to_dict,
)

S3 = catalog.suite_group("S3")
S4 = catalog.suite_group("S4")
D12 = catalog.suite_group("D12")
SL23 = catalog.suite_group("SL(2,3)")


def test_suite_group_orders():
    want = {
        "C2": 2, "V4": 4, "S3": 6, "D12": 12, "A4": 12, "S4": 24,
        "S5": 120, "SL(2,3)": 24, "GL(3,2):2": 336, "C3:C4": 12,
    }
    for name, order in want.items():
        assert catalog.suite_group(name).order == order


def test_group_axioms_spot():
    for G in (S3, D12):
        for a in range(G.order):
            assert G.mul(a, G.inverse(a)) == 0
            assert G.mul(0, a) == a == G.mul(a, 0)
            for b in range(G.order):
                assert G.inverse(G.mul(a, b)) == G.mul(G.inverse(b), G.inverse(a))


def test_element_orders_divide_group_order():
    for G in (S3, S4, SL23):
        for x in range(G.order):
            assert G.order % G.element_order(x) == 0
        assert G.element_order(0) == 1


def test_conjugacy_classes_s3():
    cls = S3.conjugacy_classes()
    assert sorted(c.size for c in cls) == [1, 2, 3]
    for c in cls:
        assert c.is_real  # symmetric groups are ambivalent
        o = S3.element_order(c.rep)
        assert c.is_2regular == (o % 2 == 1)
    assert sum(c.size for c in cls) == 6


def test_conjugacy_classes_sl23_real_and_inverse():
    cls = SL23.conjugacy_classes()
    assert len(cls) == 7
    # the four order-3 and order-6 classes are non-real, in two inverse pairs
    non_real = [i for i, c in enumerate(cls) if not c.is_real]
    assert len(non_real) == 4
    assert sorted(SL23.element_order(cls[i].rep) for i in non_real) == [3, 3, 6, 6]
    for i in non_real:
        j = cls[i].inverse_class
        assert j != i and cls[j].inverse_class == i
    for c in cls:
        inv_rep = SL23.inverse(c.rep)
        assert inv_rep in cls[c.inverse_class].members


def test_involutions():
    assert len(S3.involutions()) == 3
    assert len(D12.involutions()) == 7
    assert len(SL23.involutions()) == 1  # the centre of the quaternion Sylow


def test_closure_and_subgroup():
    t = S3.involutions()[0]
    H = S3.closure([t])
    assert H.order == 2 and H.contains(t) and H.contains(0)
    Ht, elems = H.as_table()
    assert Ht.order == 2 and elems[0] == 0


def test_centralizer_and_normalizer():
    t = S3.involutions()[0]
    C = S3.centralizer(t)
    assert C.order == 2
    H = S3.closure([t])
    N = S3.normalizer(H)
    assert N.order == 2  # self-normalizing in S3
    r = next(x for x in range(S3.order) if S3.element_order(x) == 3)
    R = S3.closure([r])
    assert S3.normalizer(R).order == 6  # normal


def test_extended_centralizer_index():
    # C*(x) contains C(x) with index <= 2; index 2 iff x is conjugate to x^-1
    for G in (S3, SL23):
        for x in range(G.order):
            C = G.centralizer(x)
            E = G.extended_centralizer(x)
            assert E.order % C.order == 0
            assert E.order // C.order in (1, 2)
            if G.element_order(x) > 2:
                real = any(
                    G.conj(g, x) == G.inverse(x) for g in range(G.order)
                )
                assert (E.order == 2 * C.order) == real


def test_sylow2():
    assert S3.sylow2().order == 2
    assert S4.sylow2().order == 8
    assert D12.sylow2().order == 4
    assert catalog.suite_group("S5").sylow2().order == 8
    assert catalog.suite_group("GL(3,2):2").sylow2().order == 16


def test_sylow2_within():
    H = S4.closure([x for x in range(S4.order) if S4.element_order(x) == 3][:1]
                   + S4.involutions()[:1])
    P = S4.sylow2(within=H)
    assert H.order % P.order == 0
    assert (H.order // P.order) % 2 == 1


def test_two_subgroups_up_to_conjugacy_s4():
    subs = S4.two_subgroups_up_to_conjugacy()
    orders = sorted(H.order for H in subs)
    # 1, C2 (two classes), C4, V4 (two classes), D8
    assert orders == [1, 2, 2, 4, 4, 4, 8]
    for A in subs:
        for B in subs:
            if A is not B and A.order == B.order:
                assert S4.subgroup_conjugate(A, B) is None


def test_conjugate_subgroup_and_witness():
    invs = S3.involutions()
    A, B = S3.closure([invs[0]]), S3.closure([invs[1]])
    g = S3.subgroup_conjugate(A, B)
    assert g is not None
    assert S3.conjugate_subgroup(g, A).elements == B.elements


def test_conjugate_into():
    P = S4.sylow2()
    for H in S4.two_subgroups_up_to_conjugacy():
        assert S4.conjugate_into(H, P) is not None
    odd = S4.closure([x for x in range(S4.order) if S4.element_order(x) == 3][:1])
    assert S4.conjugate_into(P, odd) is None


def test_left_transversal_partitions():
    t = S3.involutions()[0]
    H = S3.closure([t])
    T = S3.left_transversal(H)
    assert len(T) == 3
    seen = set()
    for g in T:
        for h in sorted(H.elements):
            seen.add(S3.mul(g, h))
    assert seen == set(range(6))


def test_double_cosets_cover():
    H = S4.sylow2()
    K = S4.closure([x for x in range(S4.order) if S4.element_order(x) == 3][:1])
    reps = S4.double_cosets(K, H)
    covered = set()
    for g in reps:
        for k in sorted(K.elements):
            for h in sorted(H.elements):
                covered.add(S4.mul(k, S4.mul(g, h)))
    assert covered == set(range(24))


def test_direct_product():
    P, maps = direct_product(S3, S3)
    assert P.order == 36
    a, b = 2, 3
    x = maps.pair(a, b)
    assert maps.split(x) == (a, b)
    y = maps.pair(1, 4)
    assert maps.split(P.mul(x, y)) == (S3.mul(a, 1), S3.mul(b, 4))


def test_from_permutations_rejects_garbage():
    with pytest.raises((ValueError, AssertionError, IndexError)):
        from_permutations(3, [[1, 1, 2]])  # not a permutation


def test_serialization_round_trip(tmp_path):
    d = group_to_dict(S3)
    G2 = group_from_dict(json.loads(json.dumps(d)))
    assert G2.order == 6
    for a in range(6):
        for b in range(6):
            assert G2.mul(a, b) == S3.mul(a, b)


def test_feasibility_error_type():
    assert issubclass(FeasibilityError, Exception)
