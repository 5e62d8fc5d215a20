import itertools

import pytest
from hypothesis import given, settings, strategies as st

from bredon.errors import BadHomomorphism, ClosureExceedsCap, ComplexSyntaxError, NonInvertibleGenerator
from bredon.groups import (
    GroupHomomorphism,
    Subgroup,
    all_subgroups,
    centralizer,
    close_generators,
    conjugation_hom,
    cyclic_group,
    dihedral_group,
    direct_product,
    double_coset_representatives,
    group_from_table,
    homomorphism_from_generator_images,
    identity_hom,
    isomorphism_label,
    normalizer,
    quotient_group,
    subgroup_class_index,
    subgroup_classes,
    subgroup_generated,
    symmetric_group,
    _int_det,
)


def brute_classes(G):
    seen, out = set(), []
    for x in range(G.order):
        if x in seen:
            continue
        cls = {G.mul[G.mul[g][x]][G.inv[g]] for g in range(G.order)}
        seen |= cls
        out.append(frozenset(cls))
    return set(out)


@pytest.mark.parametrize("G, order, classes", [
    (cyclic_group(1), 1, 1),
    (cyclic_group(6), 6, 6),
    (dihedral_group(4), 8, 5),
    (dihedral_group(6), 12, 6),
    (symmetric_group(3), 6, 3),
    (symmetric_group(4), 24, 5),
])
def test_orders_and_classes(G, order, classes):
    assert G.order == order
    assert G.check_axioms()[0]
    assert len(G.conjugacy_classes) == classes
    assert {frozenset(c.members) for c in G.conjugacy_classes} == brute_classes(G)
    assert G.conjugacy_classes[0].members == (0,)


def test_matrix_closure_and_det_filter():
    # the order-6 rotation of SL2(Z)
    G = close_generators([((0, -1), (1, 1))])
    assert G.order == 6 and G.is_abelian
    with pytest.raises(NonInvertibleGenerator):
        close_generators([((2, 0), (0, 1))])
    with pytest.raises(NonInvertibleGenerator):
        close_generators([(0, 0, 1)])


def test_closure_cap():
    with pytest.raises(ClosureExceedsCap):
        close_generators([(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)], cap=100)
    assert close_generators([(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)], cap=120).order == 120


def test_int_det_matches_expansion():
    m = [[2, -1, 0], [1, 3, 2], [0, 5, -4]]
    expected = sum(
        (-1) ** sum(1 for i, j in itertools.combinations(range(3), 2) if p[i] > p[j])
        * m[0][p[0]] * m[1][p[1]] * m[2][p[2]]
        for p in itertools.permutations(range(3)))
    assert _int_det(m) == expected


def test_table_validation():
    C3 = cyclic_group(3)
    G = group_from_table(C3.mul, name="C3")
    assert G.order == 3
    with pytest.raises(ComplexSyntaxError):
        group_from_table([[0, 1], [1, 1]])
    with pytest.raises(ComplexSyntaxError):
        group_from_table([[1, 0], [0, 1]])
    # a Latin square that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(ComplexSyntaxError):
        group_from_table(bad)


def test_subgroups_of_s4():
    S4 = symmetric_group(4)
    subs = all_subgroups(S4)
    assert len(subs) == 30
    assert len(subgroup_classes(S4)) == 11
    assert all(S.is_closed() for S in subs)
    assert all(S4.order % S.order == 0 for S in subs)
    # each subgroup lies in exactly one conjugacy class
    for S in subs:
        i = subgroup_class_index(S4, S.members)
        assert S.members in {T.members for T in subgroup_classes(S4)[i]}


def test_centralizer_normalizer_quotient():
    D4 = dihedral_group(4)
    Z = centralizer(D4, range(D4.order))
    assert Z.order == 2
    assert normalizer(D4, Z).order == 8
    Q, pi = quotient_group(D4, Z)
    assert Q.order == 4 and Q.is_abelian and Q.exponent == 2
    assert pi.verify()[0]
    with pytest.raises(ValueError):
        quotient_group(D4, subgroup_generated(D4, [D4.gens[1]]))


def test_direct_product_and_projections():
    A, B = cyclic_group(2), cyclic_group(3)
    P, p1, p2 = direct_product(A, B)
    assert P.order == 6 and P.is_abelian and P.exponent == 6
    assert p1.verify()[0] and p2.verify()[0]
    assert P.factors == (A, B)


def test_homomorphisms():
    C6, C2 = cyclic_group(6), cyclic_group(2)
    h = homomorphism_from_generator_images(C2, C6, [3])
    assert h.is_injective and h.images == (0, 3)
    with pytest.raises(BadHomomorphism) as exc:
        homomorphism_from_generator_images(C2, C6, [1])
    assert exc.value.pair is not None
    assert identity_hom(C6).then(identity_hom(C6)) == identity_hom(C6)
    S3 = symmetric_group(3)
    c = conjugation_hom(S3, S3.gens[0])
    assert c.verify()[0] and c.is_injective


def test_double_cosets_partition():
    S4 = symmetric_group(4)
    subs = all_subgroups(S4)
    K, H = subs[5], subs[12]
    reps = double_coset_representatives(S4, K, H)
    total = 0
    for g in reps:
        total += len({S4.mul[S4.mul[k][g]][h] for k in K.members for h in H.members})
    assert total == S4.order


def test_isomorphism_labels():
    assert isomorphism_label(symmetric_group(4)) == "S4"
    assert isomorphism_label(dihedral_group(6)) == "D6"
    assert isomorphism_label(cyclic_group(4)) == "C4"


perms5 = st.permutations(range(5)).map(tuple)


@settings(max_examples=60, deadline=None)
@given(st.lists(perms5, min_size=1, max_size=3))
def test_closure_properties(gens):
    G = close_generators(gens, cap=120)
    assert 120 % G.order == 0
    assert G.check_axioms()[0]
    # every element's word evaluates back to it
    for x, word in enumerate(G.words):
        y = 0
        for pos in word:
            y = G.mul[y][G.gens[pos]]
        assert y == x
    assert sum(c.size for c in G.conjugacy_classes) == G.order


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 11))
def test_cyclic_power_hom(n, k):
    G = cyclic_group(n)
    images = tuple(G.power(x, k) for x in range(n))
    assert GroupHomomorphism(G, G, images).verify()[0]


def test_subgroup_groups_are_memoised():
    S3 = symmetric_group(3)
    S = Subgroup(S3, (0, S3.gens[0]))
    (A, inc), (B, inc2) = S.as_group(), S.as_group()
    assert A is B and inc is inc2
