"""Coefficient systems on stabilizers.

A system evaluates each finite stabilizer to a free abelian group with a
distinguished basis and turns each stabilizer homomorphism into an integer
matrix: covariantly (target rank × source rank) for homology and
contravariantly (source rank × target rank) for cohomology.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Mapping

from .burnside import burnside_induction_matrix, burnside_restriction_matrix, table_of_marks
from .characters import character_table, induction_matrix, restriction_matrix
from .cyclotomic import Cyclotomic
from .errors import (
    CoefficientError,
    ExtensionMismatch,
    MissingExtensionData,
    NonInjectiveHomomorphism,
    UnsupportedVariance,
)
from .groups import DEFAULT_GROUP_CAP, FiniteGroup, GroupHomomorphism

Matrix = tuple[tuple[int, ...], ...]


def _freeze(m) -> Matrix:
    return tuple(tuple(row) for row in m)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x * y for x in ra for y in rb) for ra in a for rb in b)


@dataclass(frozen=True)
class BasedModule:
    """A free abelian group given by the labels of its basis."""
    labels: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.labels)


class CoefficientSystem:
    name = "abstract"
    covariant = True
    contravariant = True

    def __init__(self, cap: int = DEFAULT_GROUP_CAP):
        self.cap = cap
        self._lock = threading.Lock()
        self._cov: dict[GroupHomomorphism, Matrix] = {}
        self._contra: dict[GroupHomomorphism, Matrix] = {}

    # subclasses implement these three
    def _labels(self, H: FiniteGroup) -> tuple[str, ...]:
        raise NotImplementedError

    def _cov_matrix(self, h: GroupHomomorphism) -> Matrix:
        raise NotImplementedError

    def _contra_matrix(self, h: GroupHomomorphism) -> Matrix:
        raise NotImplementedError

    def evaluate(self, H: FiniteGroup) -> BasedModule:
        return BasedModule(self._labels(H))

    def rank(self, H: FiniteGroup) -> int:
        return len(self._labels(H))

    def map_covariant(self, h: GroupHomomorphism) -> Matrix:
        if not self.covariant:
            raise UnsupportedVariance(f"{self.name} has no covariant structure")
        if not h.is_injective:
            raise NonInjectiveHomomorphism(
                f"covariant map along a non-injective homomorphism {h.source.name} -> {h.target.name}")
        with self._lock:
            m = self._cov.get(h)
        if m is None:
            m = self._cov_matrix(h)
            with self._lock:
                self._cov[h] = m
        return m

    def map_contravariant(self, h: GroupHomomorphism) -> Matrix:
        if not self.contravariant:
            raise UnsupportedVariance(f"{self.name} has no contravariant structure")
        with self._lock:
            m = self._contra.get(h)
        if m is None:
            m = self._contra_matrix(h)
            with self._lock:
                self._contra[h] = m
        return m

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class ConstantZ(CoefficientSystem):
    name = "constant"

    def _labels(self, H):
        return ("1",)

    def _cov_matrix(self, h):
        return ((1,),)

    def _contra_matrix(self, h):
        return ((1,),)


class ComplexRepRing(CoefficientSystem):
    """R_C(H) on irreducible characters; induction covariantly, restriction contravariantly."""
    name = "rep"

    def _labels(self, H):
        return tuple(f"X.{i}" for i in range(len(character_table(H, self.cap))))

    def _cov_matrix(self, h):
        return _freeze(induction_matrix(h, self.cap))

    def _contra_matrix(self, h):
        return _freeze(restriction_matrix(h, self.cap))


class BurnsideRing(CoefficientSystem):
    name = "burnside"

    def _labels(self, H):
        return tuple(table_of_marks(H, self.cap).labels())

    def _cov_matrix(self, h):
        return _freeze(burnside_induction_matrix(h, self.cap))

    def _contra_matrix(self, h):
        return _freeze(burnside_restriction_matrix(h, self.cap))


@dataclass(frozen=True, eq=False)
class CentralExtensionData:
    """An extension 1 → ⟨t⟩ → total → total/⟨t⟩ → 1 with ⟨t⟩ central of order n."""
    total: FiniteGroup
    center_gen: int
    n: int

    def validate(self) -> None:
        G, t = self.total, self.center_gen
        if not 0 <= t < G.order:
            raise CoefficientError(f"center element {t} is not in {G.name}")
        if G.element_orders[t] != self.n:
            raise CoefficientError(
                f"center element of {G.name} has order {G.element_orders[t]}, declared {self.n}")
        if any(G.mul[t][x] != G.mul[x][t] for x in range(G.order)):
            raise CoefficientError(f"declared center element of {G.name} is not central")

    @property
    def central_subgroup(self) -> tuple[int, ...]:
        return tuple(sorted({self.total.power(self.center_gen, m) for m in range(self.n)}))


def k_central_basis(ext: CentralExtensionData, k: int, cap: int = DEFAULT_GROUP_CAP) -> list[int]:
    """Indices of the irreducibles of the extension on which t acts by ζ_n^k."""
    if not 0 <= k < ext.n:
        raise ValueError(f"k = {k} is not in 0..{ext.n - 1}")
    table = character_table(ext.total, cap)
    cls = ext.total.class_of[ext.center_gen]
    scalar = Cyclotomic.root_of_unity(ext.n, k)
    return [i for i, chi in enumerate(table.irreducibles)
            if chi.values[cls] == scalar * table.degrees[i]]


class KCentralRepRing(CoefficientSystem):
    """k-central characters of the declared extensions of each stabilizer.

    Stabilizers must be the extended groups themselves, and homomorphisms
    must send the central generator to the central generator.
    """

    def __init__(self, k: int, extensions: Mapping[FiniteGroup, CentralExtensionData],
                 cap: int = DEFAULT_GROUP_CAP):
        super().__init__(cap)
        self.k = k
        self.extensions = dict(extensions)
        self.name = f"kcentral:{k}"

    def _ext(self, H: FiniteGroup) -> CentralExtensionData:
        ext = self.extensions.get(H)
        if ext is None:
            raise MissingExtensionData(f"stabilizer {H.name or H} has no extension block")
        if not 0 <= self.k < ext.n:
            raise CoefficientError(f"k = {self.k} is not a residue mod {ext.n} for {H.name}")
        return ext

    def basis(self, H: FiniteGroup) -> list[int]:
        return k_central_basis(self._ext(H), self.k, self.cap)

    def _labels(self, H):
        return tuple(f"X.{i}" for i in self.basis(H))

    def _check_lift(self, h: GroupHomomorphism):
        es, et = self._ext(h.source), self._ext(h.target)
        if es.n != et.n:
            raise ExtensionMismatch(
                f"extensions of {h.source.name} and {h.target.name} have different orders {es.n}, {et.n}")
        if h.images[es.center_gen] != et.center_gen:
            raise ExtensionMismatch(
                f"homomorphism {h.source.name} -> {h.target.name} does not send t to t")

    def _submatrix(self, full, rows, cols) -> Matrix:
        return tuple(tuple(full[r][c] for c in cols) for r in rows)

    def _cov_matrix(self, h):
        self._check_lift(h)
        return self._submatrix(induction_matrix(h, self.cap), self.basis(h.target), self.basis(h.source))

    def _contra_matrix(self, h):
        self._check_lift(h)
        return self._submatrix(restriction_matrix(h, self.cap), self.basis(h.source), self.basis(h.target))


class TensorSystem(CoefficientSystem):
    """M ⊗ N on products of groups, using the tensor basis of the factor bases.

    Groups must be direct products (``factors`` set) and homomorphisms
    products of factor homomorphisms.
    """

    def __init__(self, left: CoefficientSystem, right: CoefficientSystem):
        super().__init__(max(left.cap, right.cap))
        self.left, self.right = left, right
        self.name = f"{left.name}*{right.name}"
        self.covariant = left.covariant and right.covariant
        self.contravariant = left.contravariant and right.contravariant

    @staticmethod
    def _split(H: FiniteGroup):
        if H.factors is None:
            raise CoefficientError(f"{H.name} is not a direct product")
        return H.factors

    @staticmethod
    def _split_hom(h: GroupHomomorphism):
        if h.factors is None:
            raise CoefficientError("homomorphism is not a product of factor homomorphisms")
        return h.factors

    def _labels(self, H):
        A, B = self._split(H)
        return tuple(f"{a}*{b}" for a in self.left._labels(A) for b in self.right._labels(B))

    def _cov_matrix(self, h):
        f, g = self._split_hom(h)
        return kron(self.left.map_covariant(f), self.right.map_covariant(g))

    def _contra_matrix(self, h):
        f, g = self._split_hom(h)
        return kron(self.left.map_contravariant(f), self.right.map_contravariant(g))


def system_from_spec(spec: str, extensions: Mapping[FiniteGroup, CentralExtensionData] | None = None,
                     cap: int = DEFAULT_GROUP_CAP) -> CoefficientSystem:
    """Parse ``constant``, ``rep``, ``burnside`` or ``kcentral:<k>``."""
    if spec == "constant":
        return ConstantZ(cap)
    if spec == "rep":
        return ComplexRepRing(cap)
    if spec == "burnside":
        return BurnsideRing(cap)
    if spec.startswith("kcentral:"):
        try:
            k = int(spec.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad k in {spec!r}") from None
        return KCentralRepRing(k, extensions or {}, cap)
    raise ValueError(f"unknown coefficient system {spec!r}")
