import pytest

from bredon.burnside import (
    burnside_induction_matrix,
    burnside_restriction_matrix,
    table_of_marks,
)
from bredon.errors import CapExceeded, NonInjectiveHomomorphism
from bredon.groups import GroupHomomorphism, all_subgroups, cyclic_group, symmetric_group

from conftest import bundled_groups
from oracles import brute_burnside_induction, brute_burnside_restriction

SMALL = [(n, G) for n, G in bundled_groups(12)]


def test_s3_table_of_marks():
    # subgroups 1, C2, C3, S3; marks by hand
    t = table_of_marks(symmetric_group(3))
    assert [S.order for S in t.representatives] == [1, 2, 3, 6]
    assert t.marks == (
        (6, 0, 0, 0),
        (3, 1, 0, 0),
        (2, 0, 2, 0),
        (1, 1, 1, 1),
    )
    assert t.labels() == ["[/1:0]", "[/2:1]", "[/3:2]", "[/6:3]"]


def test_marks_of_round_trip():
    t = table_of_marks(symmetric_group(4))
    for i in range(len(t)):
        assert t.marks_of(list(t.marks[i])) == [int(i == j) for j in range(len(t))]
    with pytest.raises(ValueError):
        t.marks_of([1] + [0] * (len(t) - 1))


def test_cyclic_rank_counts_divisors():
    for n in (1, 2, 4, 6, 12):
        divisors = sum(1 for d in range(1, n + 1) if n % d == 0)
        assert len(table_of_marks(cyclic_group(n))) == divisors


@pytest.mark.parametrize("G", [G for _, G in SMALL], ids=[n for n, _ in SMALL])
def test_matrices_match_explicit_g_sets(G):
    tG = table_of_marks(G)
    for S in all_subgroups(G):
        _, inc = G.subgroup_group(S.members)
        tS = table_of_marks(inc.source)
        assert burnside_restriction_matrix(inc) == brute_burnside_restriction(inc, tS, tG)
        assert burnside_induction_matrix(inc) == brute_burnside_induction(inc, tS, tG)


def test_s4_against_explicit_g_sets():
    S4 = symmetric_group(4)
    for S in all_subgroups(S4):
        if S.order not in (3, 4, 8):
            continue
        _, inc = S4.subgroup_group(S.members)
        tS, tG = table_of_marks(inc.source), table_of_marks(S4)
        assert burnside_restriction_matrix(inc) == brute_burnside_restriction(inc, tS, tG)


def test_errors():
    with pytest.raises(CapExceeded):
        table_of_marks(symmetric_group(5), cap=50)
    C2, C4 = cyclic_group(2), cyclic_group(4)
    with pytest.raises(NonInjectiveHomomorphism):
        burnside_induction_matrix(GroupHomomorphism(C2, C4, (0, 0)))
