"""Executable checks of the universal coefficient, Künneth and untwisting statements.

Everything is compared at the level of isomorphism classes of finitely
generated abelian groups (free rank plus invariant factors).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd

from .coefficients import (
    CoefficientSystem,
    ComplexRepRing,
    ConstantZ,
    KCentralRepRing,
    TensorSystem,
)
from .complexes import CellOrbit, EquivariantCellComplex, Incidence, product_complex
from .errors import ConditionDViolated, ExtensionMismatch, MissingExtensionData
from .groups import (
    DEFAULT_GROUP_CAP,
    FiniteGroup,
    GroupHomomorphism,
    Subgroup,
    cyclic_group,
    quotient_group,
)
from .homology import (
    AbelianGroup,
    GradedAbelianGroup,
    assemble_chain,
    assemble_cochain,
    first_nonzero_composite,
    homology,
)


# -- UCT -------------------------------------------------------------------------------

@dataclass(frozen=True)
class UctDegree:
    degree: int
    homology: AbelianGroup
    cohomology: AbelianGroup
    rank_match: bool
    torsion_match: bool


@dataclass(frozen=True)
class UctReport:
    degrees: tuple[UctDegree, ...]

    @property
    def overall(self) -> bool:
        return all(d.rank_match and d.torsion_match for d in self.degrees)


def check_condition_d(X: EquivariantCellComplex, sys: CoefficientSystem) -> None:
    """Contravariant matrices must be transposes of covariant ones on every incidence."""
    for inc in X.incidences:
        cov = sys.map_covariant(inc.hom)
        contra = sys.map_contravariant(inc.hom)
        if tuple(zip(*cov)) != tuple(tuple(r) for r in contra):
            raise ConditionDViolated(
                f"{sys.name}: restriction along {inc.source} -> {inc.target} "
                "is not the transpose of induction")


def uct_check(X: EquivariantCellComplex, sys: CoefficientSystem) -> UctReport:
    """free H^n = free H_n and torsion H^n = torsion H_{n−1}, both sides computed separately."""
    check_condition_d(X, sys)
    hom = homology(assemble_chain(X, sys))
    coh = homology(assemble_cochain(X, sys))
    rows = []
    for n in range(X.dim + 1):
        h, c = hom[n], coh[n]
        below = hom[n - 1] if n > 0 else AbelianGroup(0)
        rows.append(UctDegree(n, h, c, h.free_rank == c.free_rank, c.torsion == below.torsion))
    return UctReport(tuple(rows))


# -- Künneth -----------------------------------------------------------------------------

def tensor(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    torsion = [d for d in b.torsion for _ in range(a.free_rank)]
    torsion += [d for d in a.torsion for _ in range(b.free_rank)]
    torsion += [gcd(x, y) for x in a.torsion for y in b.torsion]
    return AbelianGroup(a.free_rank * b.free_rank, tuple(torsion))


def tor(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    return AbelianGroup(0, tuple(gcd(x, y) for x in a.torsion for y in b.torsion))


def direct_sum(groups) -> AbelianGroup:
    free, torsion = 0, []
    for g in groups:
        free += g.free_rank
        torsion.extend(g.torsion)
    return AbelianGroup(free, tuple(torsion))


def kunneth_prediction(HX: GradedAbelianGroup, HY: GradedAbelianGroup, top: int) -> dict[int, AbelianGroup]:
    """⊕_{i+j=n} H_i ⊗ H_j ⊕ ⊕_{i+j=n−1} Tor(H_i, H_j) for n = 0..top."""
    dx, dy = HX.degrees(), HY.degrees()
    out = {}
    for n in range(top + 1):
        parts = [tensor(HX[i], HY[n - i]) for i in dx if n - i in dy]
        parts += [tor(HX[i], HY[n - 1 - i]) for i in dx if n - 1 - i in dy]
        out[n] = direct_sum(parts)
    return out


@dataclass(frozen=True)
class KunnethDegree:
    degree: int
    predicted: AbelianGroup
    computed: AbelianGroup

    @property
    def match(self) -> bool:
        return self.predicted == self.computed


@dataclass(frozen=True)
class KunnethReport:
    degrees: tuple[KunnethDegree, ...]

    @property
    def overall(self) -> bool:
        return all(d.match for d in self.degrees)


def kunneth_check(X: EquivariantCellComplex, Y: EquivariantCellComplex,
                  M: CoefficientSystem, N: CoefficientSystem,
                  cap: int = DEFAULT_GROUP_CAP) -> KunnethReport:
    HX = homology(assemble_chain(X, M))
    HY = homology(assemble_chain(Y, N))
    P = product_complex(X, Y, cap)
    HP = homology(assemble_chain(P, TensorSystem(M, N)))
    top = max(P.dim, 0)
    predicted = kunneth_prediction(HX, HY, top)
    return KunnethReport(tuple(KunnethDegree(n, predicted[n], HP[n]) for n in range(top + 1)))


# -- untwisting --------------------------------------------------------------------------

def quotient_complex(X: EquivariantCellComplex) -> EquivariantCellComplex:
    """Replace each extended stabilizer by its quotient by the central subgroup."""
    quotients: dict[str, tuple[FiniteGroup, GroupHomomorphism]] = {}
    for name, G in X.groups.items():
        ext = X.extensions.get(name)
        if ext is None:
            raise MissingExtensionData(f"group {name} has no extension block")
        quotients[name] = quotient_group(G, Subgroup(G, ext.central_subgroup), name=f"{name}/t")
    cells = [CellOrbit(c.id, c.dim, quotients[c.stab_name][0], c.stab_name, c.orientation) for c in X.cells]
    incidences = []
    for inc in X.incidences:
        Qs, ps = quotients[X.cell(inc.source).stab_name]
        Qt, pt = quotients[X.cell(inc.target).stab_name]
        images = [0] * Qs.order
        for x in range(inc.hom.source.order):
            images[ps.images[x]] = pt.images[inc.hom.images[x]]
        incidences.append(Incidence(inc.source, inc.target, inc.coeff, GroupHomomorphism(Qs, Qt, tuple(images))))
    groups = {name: q[0] for name, q in quotients.items()}
    return EquivariantCellComplex(f"{X.name}/t", cells, incidences, groups)


@dataclass
class UntwistReport:
    k: int
    n: int
    cohomology: GradedAbelianGroup
    homology: GradedAbelianGroup
    dsquare_ok: bool
    uct: UctReport
    comparisons: dict[str, bool] = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return self.dsquare_ok and self.uct.overall and all(self.comparisons.values())


def untwist_consistency(X: EquivariantCellComplex, k: int = 1) -> UntwistReport:
    exts = X.extension_map()
    orders = set()
    for c in X.cells:
        ext = exts.get(c.stabilizer)
        if ext is None:
            raise MissingExtensionData(f"stabilizer {c.stab_name} of {c.id} has no extension block")
        orders.add(ext.n)
    if len(orders) > 1:
        raise ExtensionMismatch(f"extensions of different orders {sorted(orders)}")
    n = orders.pop() if orders else 1
    sys = KCentralRepRing(k % n, exts)
    chain = assemble_chain(X, sys)
    cochain = assemble_cochain(X, sys)
    dsquare = first_nonzero_composite(chain) is None and first_nonzero_composite(cochain) is None
    coh = homology(cochain, check=False)
    hom = homology(chain, check=False)
    report = UntwistReport(k % n, n, coh, hom, dsquare, uct_check(X, sys))
    if n == 1:
        plain = assemble_cochain(X, ComplexRepRing())
        report.comparisons["matches untwisted cochains"] = (
            {d: m.entries for d, m in plain.maps.items()} == {d: m.entries for d, m in cochain.maps.items()})
        report.comparisons["matches untwisted cohomology"] = homology(plain) == coh
    if k % n == 0:
        Q = quotient_complex(X)
        report.comparisons["k=0 matches quotient-group cohomology"] = (
            homology(assemble_cochain(Q, ComplexRepRing())) == coh)
    return report


# -- random complexes ---------------------------------------------------------------------

_RANDOM_ORDERS = (1, 2, 4, 6)


def _random_injection(rng: random.Random, S: FiniteGroup, T: FiniteGroup) -> GroupHomomorphism:
    """A random injective map between cyclic groups (generator to an element of equal order)."""
    if S.order == 1:
        return GroupHomomorphism(S, T, (0,))
    choices = [y for y in range(T.order) if T.element_orders[y] == S.order]
    y = rng.choice(choices)
    g = S.gens[0]
    images = [0] * S.order
    for e in range(S.order):
        images[S.power(g, e)] = T.power(y, e)
    return GroupHomomorphism(S, T, tuple(images))


def random_complex(rng: random.Random, max_per_dim: int = 3,
                   systems: tuple[CoefficientSystem, ...] | None = None) -> EquivariantCellComplex:
    """A random complex of dimension ≤ 2 with cyclic stabilizers of order 1, 2, 4 or 6.

    Edges get random endpoints, injective homomorphisms and coefficients;
    2-cells have trivial stabilizer and random boundary coefficients.
    Candidates failing d∘d = 0 under any of ``systems`` are discarded.
    """
    groups = {n: cyclic_group(n) for n in _RANDOM_ORDERS}
    systems = systems or (ConstantZ(), ComplexRepRing())
    while True:
        cells, incidences = [], []
        verts = []
        for i in range(rng.randint(1, max_per_dim)):
            n = rng.choice(_RANDOM_ORDERS)
            verts.append(CellOrbit(f"v{i}", 0, groups[n], f"C{n}"))
        cells.extend(verts)
        edges = []
        for i in range(rng.randint(0, max_per_dim)):
            a, b = rng.choice(verts), rng.choice(verts)
            common = [n for n in _RANDOM_ORDERS
                      if a.stabilizer.order % n == 0 and b.stabilizer.order % n == 0]
            n = rng.choice(common)
            e = CellOrbit(f"e{i}", 1, groups[n], f"C{n}")
            edges.append(e)
            kind = rng.random()
            if kind < 0.7:
                incidences.append(Incidence(e.id, b.id, 1, _random_injection(rng, e.stabilizer, b.stabilizer)))
                incidences.append(Incidence(e.id, a.id, -1, _random_injection(rng, e.stabilizer, a.stabilizer)))
            else:
                incidences.append(Incidence(e.id, a.id, rng.choice((-2, -1, 1, 2, 3)),
                                            _random_injection(rng, e.stabilizer, a.stabilizer)))
        cells.extend(edges)
        if edges:
            # orbit-level boundary of each edge; a trivially stabilized 2-cell
            # passes d∘d = 0 exactly when its orbit-level boundary does
            edge_boundary = {e.id: {v.id: 0 for v in verts} for e in edges}
            for inc in incidences:
                edge_boundary[inc.source][inc.target] += inc.coeff
            for i in range(rng.randint(0, max_per_dim)):
                for _ in range(20):
                    coeffs = [rng.choice((-1, 0, 0, 1)) for _ in edges]
                    if any(coeffs) and all(sum(c * edge_boundary[e.id][v.id] for c, e in zip(coeffs, edges)) == 0
                                           for v in verts):
                        break
                else:
                    continue
                f = CellOrbit(f"f{i}", 2, groups[1], "C1")
                cells.append(f)
                for c, e in zip(coeffs, edges):
                    if c:
                        incidences.append(Incidence(f.id, e.id, c, _random_injection(rng, groups[1], e.stabilizer)))
        groups_used = {c.stab_name: c.stabilizer for c in cells}
        X = EquivariantCellComplex("random", cells, incidences, groups_used)
        if all(first_nonzero_composite(assemble_chain(X, s)) is None for s in systems):
            return X
