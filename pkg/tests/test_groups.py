import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from doublekit.exceptions import ClosureTooLarge, NotAGroup, NotAPermutation, ParseError
from doublekit.groups import (
    BUILTIN_GROUPS, FiniteGroup, builtin_group, commuting_pairs, conjugacy_data,
    group_from_permutations, group_from_table, parse_permutation, subgroup,
)

from .conftest import ALL_GROUPS

ORDERS = {"trivial": 1, "Z2": 2, "Z3": 3, "Z4": 4, "Klein4": 4, "S3": 6, "D4": 8, "Q8": 8, "A4": 12, "S4": 24}
NUM_CLASSES = {"trivial": 1, "Z2": 2, "Z3": 3, "Z4": 4, "Klein4": 4, "S3": 3, "D4": 5, "Q8": 5, "A4": 4, "S4": 5}
# number of G-orbits of commuting pairs = number of irreps of D(G)
NUM_ORBITS = {"trivial": 1, "Z2": 4, "Z3": 9, "Z4": 16, "Klein4": 16, "S3": 8, "D4": 22, "Q8": 22, "A4": 14, "S4": 21}


def cyclic_table(n):
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n


def brute_classes(G):
    n = G.order
    seen, out = set(), []
    for x in range(n):
        if x in seen:
            continue
        cls = {G.mul(G.mul(g, x), int(G.inverse[g])) for g in range(n)}
        seen |= cls
        out.append(frozenset(cls))
    return set(out)


def test_catalogue_is_complete():
    assert set(BUILTIN_GROUPS) == set(ORDERS)


@pytest.mark.parametrize("name", ALL_GROUPS)
def test_builtin_orders_and_axioms(name):
    G = builtin_group(name)
    assert G.order == ORDERS[name]
    # revalidating the generated table must succeed
    H = group_from_table(G.table)
    np.testing.assert_array_equal(H.table, G.table)
    assert G.identity == 0


def test_unknown_builtin():
    with pytest.raises(ParseError):
        builtin_group("Z5")


@pytest.mark.parametrize("name", ALL_GROUPS)
def test_conjugacy_classes(name):
    G = builtin_group(name)
    cd = conjugacy_data(G)
    assert cd.num_classes == NUM_CLASSES[name]
    assert {frozenset(c.tolist()) for c in cd.classes} == brute_classes(G)
    assert cd.sizes.sum() == G.order
    assert cd.classes[0].tolist() == [G.identity]
    for A, members in enumerate(cd.classes):
        gA = cd.reps[A]
        assert gA == members.min()
        # orbit-stabiliser
        assert len(members) * len(cd.centralizers[A]) == G.order
        for h in cd.centralizers[A]:
            assert G.mul(h, gA) == G.mul(gA, h)
        for x in members:
            B = cd.section[x]
            assert G.mul(G.mul(B, gA), int(G.inverse[B])) == x
            assert cd.class_of[x] == A


def test_s3_classes():
    cd = conjugacy_data(builtin_group("S3"))
    assert cd.sizes.tolist() == [1, 3, 2]
    assert [len(c) for c in cd.centralizers] == [6, 2, 3]


@pytest.mark.parametrize("name", ALL_GROUPS)
def test_commuting_pairs(name):
    G = builtin_group(name)
    cd = conjugacy_data(G)
    cp = commuting_pairs(G, cd)
    brute = sum(G.mul(x, y) == G.mul(y, x) for x in range(G.order) for y in range(G.order))
    assert cp.count == brute
    # |G_comm| = |G| * (number of classes)
    assert cp.count == G.order * cd.num_classes
    assert cp.num_orbits == NUM_ORBITS[name]
    assert (cp.orbit_of[G.commuting] >= 0).all()
    assert (cp.orbit_of[~G.commuting] == -1).all()
    # orbit labels are constant on simultaneous conjugacy orbits
    for z in range(G.order):
        c = G.conj[z]
        np.testing.assert_array_equal(cp.orbit_of[c[:, None], c[None, :]], cp.orbit_of)
    # per class, the orbits are counted by N_A-classes
    per_class = Counter(A for A, _, _, _ in cp.orbit_reps)
    for A, N in enumerate(cd.centralizers):
        H, _ = subgroup(G, N)
        assert per_class[A] == conjugacy_data(H).num_classes


def test_power_and_orders():
    G = builtin_group("S4")
    orders = Counter(G.element_orders.tolist())
    assert orders == {1: 1, 2: 9, 3: 8, 4: 6}
    for x in range(G.order):
        assert G.power(x, int(G.element_orders[x])) == G.identity
        assert G.power(x, -1) == G.inverse[x]
        assert G.power(x, 0) == G.identity


def test_abelian_flags():
    assert builtin_group("Klein4").is_abelian
    assert not builtin_group("Q8").is_abelian


def test_q8_structure():
    G = builtin_group("Q8")
    # one involution, six elements of order 4, non-abelian
    assert Counter(G.element_orders.tolist()) == {1: 1, 2: 1, 4: 6}
    cd = conjugacy_data(G)
    assert sorted(cd.sizes.tolist()) == [1, 1, 2, 2, 2]


# -- permutations --------------------------------------------------------------

def test_parse_permutation():
    assert parse_permutation("(1 2 3)", 4) == (1, 2, 0, 3)
    assert parse_permutation("(1,3)(2 4)", 4) == (2, 3, 0, 1)
    assert parse_permutation("()", 3) == (0, 1, 2)
    assert parse_permutation([[1, 2]], 2) == (1, 0)


@pytest.mark.parametrize("bad", ["(1 2)(2 3)", "(1 5)", "(1 a)", "1 2", "(0 1)"])
def test_parse_permutation_errors(bad):
    with pytest.raises(NotAPermutation):
        parse_permutation(bad, 4)


def test_product_convention():
    # a*b applies b first
    G = group_from_permutations(3, ["(1 2)", "(2 3)"])
    P = G.permutations
    for a, b in itertools.product(range(G.order), repeat=2):
        np.testing.assert_array_equal(P[G.mul(a, b)], P[a][P[b]])


def test_closure_cap():
    with pytest.raises(ClosureTooLarge):
        group_from_permutations(5, ["(1 2 3 4 5)", "(1 2)"], order_cap=50)


def test_closure_reproducible():
    a = group_from_permutations(4, ["(1 2)", "(1 2 3 4)"])
    b = group_from_permutations(4, ["(1 2)", "(1 2 3 4)"])
    np.testing.assert_array_equal(a.table, b.table)


# -- table validation ------------------------------------------------------------

def test_cyclic_table_accepted():
    G = group_from_table(cyclic_table(5).tolist())
    assert G.order == 5 and G.is_abelian


def test_not_square():
    with pytest.raises(NotAGroup):
        group_from_table([[0, 1, 2], [1, 2, 0]])


def test_ragged():
    with pytest.raises(NotAGroup):
        group_from_table([[0, 1], [1]])


def test_out_of_range_witness():
    with pytest.raises(NotAGroup) as err:
        group_from_table([[0, 1], [1, 2]])
    assert err.value.witness == (1, 1)


def test_no_identity():
    with pytest.raises(NotAGroup):
        group_from_table([[1, 0], [0, 0]])


def test_no_inverse():
    # identity 0, but 1*x is never 0
    with pytest.raises(NotAGroup) as err:
        group_from_table([[0, 1, 2], [1, 1, 1], [2, 2, 2]])
    assert err.value.witness == (1,)


def test_non_associative_witness():
    # a Latin square with identity 0 that is not associative (order-5 loop)
    t = np.array([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ])
    with pytest.raises(NotAGroup) as err:
        group_from_table(t)
    a, b, c = err.value.witness
    assert t[t[a, b], c] != t[a, t[b, c]]


def test_subgroup_not_closed():
    with pytest.raises(NotAGroup):
        subgroup(builtin_group("S3"), [0, 1, 2])


@settings(max_examples=25, deadline=None)
@given(data=st.data(), name=st.sampled_from(["S3", "D4", "Q8", "A4"]))
def test_relabelling_invariance(data, name):
    # a relabelled copy has the same class structure, wherever the identity lands
    G = builtin_group(name)
    n = G.order
    p = np.array(data.draw(st.permutations(range(n))))  # old index -> new index
    pinv = np.argsort(p)
    t2 = p[G.table[pinv[:, None], pinv[None, :]]]
    H = group_from_table(t2)
    assert H.identity == p[G.identity]
    assert sorted(conjugacy_data(H).sizes.tolist()) == sorted(conjugacy_data(G).sizes.tolist())
    assert commuting_pairs(H, conjugacy_data(H)).num_orbits == NUM_ORBITS[name]


def test_finite_group_is_read_only():
    G = builtin_group("Z3")
    with pytest.raises(ValueError):
        G.table[0, 0] = 1
    assert isinstance(G, FiniteGroup)
