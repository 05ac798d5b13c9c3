import random

import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation as SymPerm, PermutationGroup
from sympy.combinatorics.named_groups import SymmetricGroup

from essdim.constructions import section5_groups
from essdim.perm import (
    GroupTooLargeError,
    PermGroup,
    Permutation,
    center,
    conjugate,
    cosets,
    g_group,
    generated_by,
    h_group,
    intersect,
    is_internal_direct_product,
    product,
    stabilizer,
    support_subgroup,
    sylow2_sym,
    sym,
)

perms = st.integers(1, 9).flatmap(lambda n: st.permutations(range(n))).map(Permutation)


def same_degree_pair():
    return st.integers(1, 9).flatmap(
        lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n)))
    ).map(lambda t: (Permutation(t[0]), Permutation(t[1])))


def sympy_group(G: PermGroup) -> PermutationGroup:
    return PermutationGroup([SymPerm(list(g.images)) for g in G.gens] or [SymPerm(list(range(G.degree)))])


# -- permutations ----------------------------------------------------------

def test_composition_applies_right_factor_first():
    p = Permutation.from_cycles(3, [(0, 1)])
    q = Permutation.from_cycles(3, [(1, 2)])
    assert (p * q)(1) == p(q(1)) == 2


def test_cycle_rendering_is_one_based():
    assert Permutation.from_cycles(4, [(0, 1), (2, 3)]).cycle_str() == "(1 2)(3 4)"
    assert Permutation.identity(3).cycle_str() == "()"


def test_invalid_images_rejected():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


@given(same_degree_pair())
def test_inverse_and_product(pair):
    p, q = pair
    assert (p * p.inverse()).is_identity()
    assert (p * q).inverse() == q.inverse() * p.inverse()
    assert all((p * q)(i) == p(q(i)) for i in range(p.degree))


@given(perms)
def test_order_matches_sympy(p):
    assert p.order() == SymPerm(list(p.images)).order()
    assert (p ** p.order()).is_identity()


# -- standard groups -----------------------------------------------------------

@pytest.mark.parametrize("n, order", [(1, 1), (3, 6), (4, 24), (5, 120)])
def test_symmetric_orders(n, order):
    assert sym(n).order() == order


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_sylow2_order(k):
    m = 2 ** k
    P = sylow2_sym(m)
    assert P.order() == 2 ** (m - 1)
    assert P.order() == SymmetricGroup(m).sylow_subgroup(2).order()


def test_sylow2_rejects_non_powers():
    with pytest.raises(ValueError):
        sylow2_sym(6)


@pytest.mark.parametrize("r, order", [(3, 8), (4, 32), (5, 512)])
def test_h_group_orders_and_transitivity(r, order):
    H = h_group(r)
    assert H.order() == order == 4 * sylow2_sym(2 ** (r - 2)).order()
    assert H.order() == sympy_group(H).order()
    assert H.is_transitive()


@pytest.mark.parametrize("r", [3, 4, 5])
def test_h_group_has_odd_index_in_g_group(r):
    G, H = g_group(r), h_group(r)
    assert H.is_subgroup_of(G)
    assert (G.order() // H.order()) % 2 == 1
    assert G.order() == sympy_group(G).order()


def test_h3_is_simply_transitive():
    H = h_group(3)
    assert H.order() == H.degree
    assert stabilizer(H, 0).order() == 1


@pytest.mark.parametrize(
    "G, point, order",
    [(h_group(4), 0, 2), (sym(3), 0, 2), (h_group(3), 0, 1), (h_group(5), 0, 16)],
)
def test_stabilizer_orders(G, point, order):
    assert stabilizer(G, point).order() == order


@pytest.mark.parametrize("G", [sym(4), sylow2_sym(8), h_group(4), h_group(5), g_group(4)])
def test_orbit_stabilizer(G):
    for x in range(G.degree):
        assert G.order() == len(G.orbit(x)) * stabilizer(G, x).order()


def test_center_of_sylow_8():
    Z = center(sylow2_sym(8))
    sigma = Permutation.from_cycles(8, [(0, 1), (2, 3), (4, 5), (6, 7)])
    assert Z.order() == 2 and sigma in Z
    assert Z.order() == sympy_group(sylow2_sym(8)).center().order()


def test_center_of_s4_is_trivial():
    assert center(sym(4)).order() == 1


def test_enumeration_limit():
    with pytest.raises(GroupTooLargeError):
        sym(12).elements(limit=1000)


# -- cosets -------------------------------------------------------------------------

def test_coset_indices_for_r4():
    d = section5_groups(4)
    t1 = generated_by(16, [("tau1", d.tau1)])
    K1 = product(t1, stabilizer(d.H, 0))
    assert cosets(d.H, K1).index == 8
    assert cosets(d.H, d.subgroups[3]).index == 16


def test_single_coset():
    G = sym(4)
    assert cosets(G, G).index == 1


def test_conjugated_stabilizer_intersection_r4():
    d = section5_groups(4)
    inter = intersect(conjugate(d.Hx, d.tau_top), d.Hx)
    assert inter.order() == 1 == stabilizer(h_group(3), 0).order() ** 2


def test_direct_product_of_block_supports_r5():
    d = section5_groups(5)
    half = 4
    near = [p for p in range(32) if p % 8 < half]
    far = [p for p in range(32) if p % 8 >= half]
    inter = intersect(conjugate(d.Hx, d.tau_top), d.Hx)
    A, B = support_subgroup(inter, near), support_subgroup(inter, far)
    assert is_internal_direct_product(inter, A, B)
    assert all(a * b == b * a for a in A.gens for b in B.gens)


@pytest.mark.parametrize("r", [3, 4])
def test_coset_action_is_a_group_action(r):
    d = section5_groups(r)
    rng = random.Random(r)
    for K in d.subgroups:
        space = cosets(d.H, K)
        gens = d.H.gens
        for _ in range(100):
            w1 = [rng.randrange(len(gens)) for _ in range(rng.randint(0, 6))]
            w2 = [rng.randrange(len(gens)) for _ in range(rng.randint(0, 6))]
            g, h = d.H.evaluate_word(w1), d.H.evaluate_word(w2)
            for i in range(space.index):
                assert space.act(g * h, i) == space.act(g, space.act(h, i))
