import random

import pytest
from hypothesis import given, settings, strategies as st

from bredon.coefficients import BurnsideRing, ComplexRepRing, ConstantZ
from bredon.complexes import BUNDLED, CellOrbit, EquivariantCellComplex, Incidence, load_bundled, parse_complex
from bredon.errors import NotAComplex
from bredon.groups import GroupHomomorphism, cyclic_group
from bredon.homology import (
    CRITERION_FAILS,
    INCONCLUSIVE,
    TORSION_FREE,
    AbelianGroup,
    ChainComplex,
    GradedAbelianGroup,
    IntegerMatrix,
    assemble_chain,
    assemble_cochain,
    bredon_cohomology,
    bredon_homology,
    homology,
    normalize_torsion,
    torsion_free_criterion,
)
from bredon.snf import smith_normal_form
from bredon.theorems import random_complex

from oracles import cellular_homology, primary_decomposition, rational_rank

TRIVIAL = cyclic_group(1, "T")


def ag(free, *torsion):
    return AbelianGroup(free, tuple(torsion))


# -- SL2(Z) -----------------------------------------------------------------------------

def test_sl2z_rep_homology(sl2z):
    H = bredon_homology(sl2z, ComplexRepRing())
    assert H[0] == ag(8) and H[1] == ag(0)
    assert H.degrees() == [0, 1]


def test_sl2z_rank_bookkeeping(sl2z):
    C = assemble_chain(sl2z, ComplexRepRing())
    d1 = C.maps[1]
    assert (d1.rows, d1.cols) == (10, 2)
    assert C.rank(0) == 10 and C.rank(1) == 2
    assert smith_normal_form(d1.entries, d1.cols).rank == 2
    assert rational_rank(d1.entries, d1.cols) == 2


def test_sl2z_other_systems(sl2z):
    assert bredon_homology(sl2z, ConstantZ())[0] == ag(1)
    # C0 = A(C6) + A(C4) has rank 4 + 3, C1 = A(C2) has rank 2, and ∂ is injective
    C = assemble_chain(sl2z, BurnsideRing())
    assert (C.rank(0), C.rank(1)) == (7, 2)
    H = bredon_homology(sl2z, BurnsideRing())
    assert H[0] == ag(5) and H[1] == ag(0)
    assert bredon_cohomology(sl2z, ComplexRepRing())[0] == ag(8)


def test_sl3z_values(sl3z):
    H = bredon_homology(sl3z, ComplexRepRing())
    assert [H[n] for n in range(4)] == [ag(8), ag(0), ag(0), ag(0)]
    assert bredon_homology(sl3z, ConstantZ())[0] == ag(1)
    for s in (ConstantZ(), ComplexRepRing(), BurnsideRing()):
        homology(assemble_chain(sl3z, s))
        homology(assemble_cochain(sl3z, s))


def test_small_examples():
    assert bredon_homology(load_bundled("torsion_demo"), ConstantZ())[0] == ag(0, 2)
    circle = bredon_homology(load_bundled("circle_free"), ComplexRepRing())
    assert circle[0] == ag(1) and circle[1] == ag(1)
    pt = bredon_homology(load_bundled("point"), ComplexRepRing())
    assert pt.groups == ((0, ag(1)),)


def test_degree_selection(sl2z):
    H = bredon_homology(sl2z, ComplexRepRing(), degrees=[1])
    assert H.degrees() == [1]


def test_not_a_complex():
    C = ChainComplex(
        {0: ("a",), 1: ("b",), 2: ("c",)},
        {1: IntegerMatrix(("a",), ("b",), ((1,),)), 2: IntegerMatrix(("b",), ("c",), ((1,),))},
        -1)
    with pytest.raises(NotAComplex) as info:
        homology(C)
    assert info.value.exit_code == 2
    # unchecked homology still runs
    assert homology(C, check=False)[2] == ag(0)


# -- abelian group bookkeeping ---------------------------------------------------------------

def test_normalize_torsion():
    assert normalize_torsion([2, 3]) == (6,)
    assert normalize_torsion([2, 4, 3]) == (2, 12)
    assert normalize_torsion([1, 1]) == ()
    assert str(ag(2, 2, 2)) == "Z^2 + Z/2 + Z/2"
    assert str(ag(0)) == "0"
    with pytest.raises(ValueError):
        ag(0, -2)


@given(st.lists(st.integers(1, 60), max_size=6))
def test_normalize_torsion_property(cs):
    t = normalize_torsion(cs)
    assert all(t[i + 1] % t[i] == 0 for i in range(len(t) - 1))
    assert primary_decomposition(t) == primary_decomposition(cs)


def test_graded_group():
    G = GradedAbelianGroup.from_dict({1: ag(1), 0: ag(2)})
    assert G.degrees() == [0, 1]
    assert G[5] == ag(0)
    assert G.free_ranks() == {0: 2, 1: 1}
    assert "H1: Z" in str(G)


# -- free-action oracle -----------------------------------------------------------------------

def random_free_complex(rng: random.Random):
    """A chain complex of free modules with d∘d = 0, scrambled by unimodular base changes."""
    dims = [rng.randint(1, 4) for _ in range(3)]
    # standard pieces: Z -(d)-> Z blocks plus free summands
    D = {1: [[0] * dims[1] for _ in range(dims[0])], 2: [[0] * dims[2] for _ in range(dims[1])]}
    # next free basis index per degree; ∂2 targets C1 vectors after the ones ∂1 uses, so ∂1∂2 = 0
    used = {0: 0, 1: 0, 2: 0}
    for n in (1, 2):
        for _ in range(rng.randint(0, 2)):
            if used[n] < dims[n] and used[n - 1] < dims[n - 1]:
                D[n][used[n - 1]][used[n]] = rng.choice((1, 2, 3, -2))
                used[n] += 1
                used[n - 1] += 1

    def unimodular(k):
        P = [[int(i == j) for j in range(k)] for i in range(k)]
        Q = [row[:] for row in P]  # inverse
        for _ in range(3 * k):
            i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
            if i == j:
                continue
            c = rng.randint(-2, 2)
            for col in range(k):
                P[i][col] += c * P[j][col]
            for row in Q:
                row[j] -= c * row[i]
        return P, Q

    Ps = {n: unimodular(dims[n]) for n in range(3)}

    def mul(A, B):
        return [[sum(a * b for a, b in zip(r, c)) for c in zip(*B)] for r in A]

    B = {n: mul(mul(Ps[n - 1][0], D[n]), Ps[n][1]) for n in (1, 2)}
    cells = []
    for n in range(3):
        cells += [CellOrbit(f"c{n}_{i}", n, TRIVIAL, "T") for i in range(dims[n])]
    triv = GroupHomomorphism(TRIVIAL, TRIVIAL, (0,))
    incs = [Incidence(f"c{n}_{j}", f"c{n - 1}_{i}", B[n][i][j], triv)
            for n in (1, 2) for i in range(dims[n - 1]) for j in range(dims[n]) if B[n][i][j]]
    X = EquivariantCellComplex("free", cells, incs, {"T": TRIVIAL})
    return X, dims, B


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_free_action_matches_quotient_cellular_homology(seed):
    X, dims, B = random_free_complex(random.Random(seed))
    expected = cellular_homology({n: dims[n] for n in range(3)}, B)
    for system in (ConstantZ(), ComplexRepRing(), BurnsideRing()):
        H = bredon_homology(X, system)
        for n in range(3):
            free, torsion = expected[n]
            assert H[n].free_rank == free
            assert primary_decomposition(H[n].torsion) == primary_decomposition(torsion)


def test_free_circle_matches_oracle():
    X = load_bundled("circle_free")
    expected = cellular_homology({0: 1, 1: 1}, {1: [[0]]})
    H = bredon_homology(X, ConstantZ())
    assert (H[0].free_rank, list(H[0].torsion)) == expected[0]
    assert (H[1].free_rank, list(H[1].torsion)) == expected[1]


# -- torsion-freeness criterion --------------------------------------------------------------------

def test_criterion_on_sl2z(sl2z):
    for system in (ConstantZ(), ComplexRepRing()):
        C = assemble_chain(sl2z, system)
        assert torsion_free_criterion(C, sl2z).status == TORSION_FREE


def test_criterion_witness():
    X = load_bundled("torsion_demo")
    r = torsion_free_criterion(assemble_chain(X, ConstantZ()), X)
    assert r.status == CRITERION_FAILS
    vertex, rows, cols, sub, minor = r.witness
    assert vertex == "v" and minor == 2


def test_criterion_inconclusive_above_cap(sl3z):
    C = assemble_chain(sl3z, ComplexRepRing())
    assert torsion_free_criterion(C, sl3z, minor_cap=2).status == INCONCLUSIVE


def test_criterion_failure_without_torsion():
    # minors of ±2 although the homology is torsion free: the criterion is sufficient only
    triv = GroupHomomorphism(TRIVIAL, TRIVIAL, (0,))
    cells = [CellOrbit("v", 0, TRIVIAL, "T"), CellOrbit("a", 1, TRIVIAL, "T"), CellOrbit("b", 1, TRIVIAL, "T")]
    X = EquivariantCellComplex("c", cells, [Incidence("a", "v", 1, triv), Incidence("b", "v", 3, triv)],
                               {"T": TRIVIAL})
    C = assemble_chain(X, ConstantZ())
    assert torsion_free_criterion(C, X).status == CRITERION_FAILS
    assert homology(C)[0] == ag(0)


def test_criterion_without_edges():
    X = load_bundled("point")
    assert torsion_free_criterion(assemble_chain(X, ConstantZ()), X).status == TORSION_FREE


TWO_BLOCKS = """group T perm
cell v dim=0 stab=T
cell w dim=0 stab=T
cell a dim=1 stab=T
cell b dim=1 stab=T
face a v coeff=1
face a w coeff=1
face b v coeff=1
face b w coeff=-1
"""


def test_criterion_sees_single_blocks_only():
    # every vertex block is a row of ±1 entries, but the full ∂ has determinant −2
    X = parse_complex(TWO_BLOCKS)
    C = assemble_chain(X, ConstantZ())
    assert torsion_free_criterion(C, X).status == TORSION_FREE
    assert homology(C)[0] == ag(0, 2)


# -- invariants ----------------------------------------------------------------------------------

def _euler_ok(X, system):
    C = assemble_chain(X, system)
    H = homology(C)
    chain_side = sum((-1) ** n * C.rank(n) for n in C.degrees())
    return chain_side == sum((-1) ** n * H[n].free_rank for n in H.degrees())


def test_euler_characteristic_bundled():
    for name in BUNDLED:
        X = load_bundled(name)
        systems = [ConstantZ(), ComplexRepRing()] + ([] if X.extensions else [BurnsideRing()])
        for system in systems:
            assert _euler_ok(X, system), (name, system.name)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_euler_characteristic_random(seed):
    X = random_complex(random.Random(seed))
    for system in (ConstantZ(), ComplexRepRing(), BurnsideRing()):
        assert _euler_ok(X, system)


class ReversedRep(ComplexRepRing):
    """The representation ring with every basis listed in reverse order."""

    name = "rep-reversed"

    def map_covariant(self, h):
        return tuple(tuple(reversed(r)) for r in reversed(super().map_covariant(h)))

    def map_contravariant(self, h):
        return tuple(tuple(reversed(r)) for r in reversed(super().map_contravariant(h)))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.randoms(use_true_random=False))
def test_basis_order_invariance(seed, shuffler):
    X = random_complex(random.Random(seed))
    cells, incs = list(X.cells), list(X.incidences)
    shuffler.shuffle(cells)
    shuffler.shuffle(incs)
    Y = EquivariantCellComplex(X.name, cells, incs, dict(X.groups))
    for system in (ConstantZ(), ComplexRepRing(), BurnsideRing()):
        assert bredon_homology(X, system) == bredon_homology(Y, system)
        assert bredon_cohomology(X, system) == bredon_cohomology(Y, system)
    assert bredon_homology(X, ComplexRepRing()) == bredon_homology(Y, ReversedRep())


def test_basis_order_invariance_sl3z(sl3z):
    Y = EquivariantCellComplex(sl3z.name, list(reversed(sl3z.cells)), list(reversed(sl3z.incidences)),
                               dict(sl3z.groups))
    assert bredon_cohomology(sl3z, ComplexRepRing()) == bredon_cohomology(Y, ReversedRep())
