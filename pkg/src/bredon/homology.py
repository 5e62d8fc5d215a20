"""Bredon chain and cochain complexes as integer matrices, and their homology.

The chain group in degree n is ⊕ over n-cell orbits λ of N(S_λ), basis
labelled ``cell:label``.  The differential block from λ to a face μ is the
sum over incidences λ → μ of (coefficient × induced coefficient matrix).
Homology uses the Smith normal form formula: with m = rank C_n,
r = rank of the outgoing map and d_1 | … | d_s the elementary divisors of
the incoming map, H_n ≅ Z^(m − s − r) ⊕ ⊕ Z/d_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .coefficients import CoefficientSystem
from .complexes import EquivariantCellComplex
from .errors import NotAComplex
from .groups import _int_det
from .snf import elementary_divisors, matmul


@dataclass(frozen=True)
class IntegerMatrix:
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != len(self.row_labels):
            raise ValueError("row count does not match labels")
        if any(len(r) != len(self.col_labels) for r in self.entries):
            raise ValueError("column count does not match labels")
        if len(set(self.row_labels)) != len(self.row_labels) or len(set(self.col_labels)) != len(self.col_labels):
            raise ValueError("basis labels must be unique")

    @property
    def rows(self) -> int:
        return len(self.row_labels)

    @property
    def cols(self) -> int:
        return len(self.col_labels)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.col_labels, self.row_labels,
                             tuple(zip(*self.entries)) if self.entries else tuple(() for _ in self.col_labels))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def elementary_divisors(self) -> tuple[int, ...]:
        return elementary_divisors(self.entries, self.cols)

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass
class ChainComplex:
    """Free abelian groups ``bases[n]`` with maps ``maps[n]`` from degree n to n + step.

    step = −1 for chain complexes (∂_n: C_n → C_{n−1}) and +1 for cochain
    complexes (δ^n: C^n → C^{n+1}).  Missing maps are zero.
    """
    bases: dict[int, tuple[str, ...]]
    maps: dict[int, IntegerMatrix]
    step: int
    _divisors: dict[int, tuple[int, ...]] = field(default_factory=dict, repr=False)

    def rank(self, n: int) -> int:
        return len(self.bases.get(n, ()))

    def divisors(self, n: int) -> tuple[int, ...]:
        if n not in self._divisors:
            M = self.maps.get(n)
            self._divisors[n] = M.elementary_divisors() if M is not None else ()
        return self._divisors[n]

    def degrees(self) -> list[int]:
        return sorted(self.bases)


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(d for d in self.torsion if d != 1)
        if any(d <= 0 for d in t):
            raise ValueError("torsion coefficients must be positive")
        object.__setattr__(self, "torsion", normalize_torsion(t))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def _prime_powers(d: int) -> list[int]:
    out = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            out.append(q)
        p += 1
    if d > 1:
        out.append(d)
    return out


def normalize_torsion(coeffs: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | … of ⊕ Z/c_i (entries 1 dropped)."""
    by_prime: dict[int, list[int]] = {}
    for c in coeffs:
        for q in _prime_powers(c):
            p = next(k for k in range(2, q + 1) if q % k == 0)
            by_prime.setdefault(p, []).append(q)
    if not by_prime:
        return ()
    for v in by_prime.values():
        v.sort(reverse=True)
    length = max(len(v) for v in by_prime.values())
    factors = []
    for i in range(length):
        d = 1
        for v in by_prime.values():
            if i < len(v):
                d *= v[i]
        factors.append(d)
    return tuple(reversed(factors))


@dataclass(frozen=True)
class GradedAbelianGroup:
    groups: tuple[tuple[int, AbelianGroup], ...]  # sorted by degree

    @classmethod
    def from_dict(cls, d: dict[int, AbelianGroup]) -> "GradedAbelianGroup":
        return cls(tuple(sorted(d.items())))

    def __getitem__(self, n: int) -> AbelianGroup:
        for k, g in self.groups:
            if k == n:
                return g
        return AbelianGroup(0)

    def degrees(self) -> list[int]:
        return [k for k, _ in self.groups]

    def free_ranks(self) -> dict[int, int]:
        return {k: g.free_rank for k, g in self.groups}

    def __str__(self):
        return "\n".join(f"H{n}: {g}" for n, g in self.groups)


# -- assembly -------------------------------------------------------------------------

def _basis(X: EquivariantCellComplex, sys: CoefficientSystem, n: int):
    labels = []
    offsets = {}
    for c in X.cells_in_dim(n):
        offsets[c.id] = len(labels)
        labels.extend(f"{c.id}:{lab}" for lab in sys.evaluate(c.stabilizer).labels)
    return tuple(labels), offsets


def _bases(X, sys):
    return {n: _basis(X, sys, n) for n in range(X.dim + 1)}


def assemble_chain(X: EquivariantCellComplex, sys: CoefficientSystem) -> ChainComplex:
    """∂_n: C_n → C_{n−1} for n = 1..dim X, built from covariant maps."""
    bases = _bases(X, sys)
    maps = {}
    for n in range(1, X.dim + 1):
        rows, roff = bases[n - 1]
        cols, coff = bases[n]
        M = [[0] * len(cols) for _ in rows]
        for inc in X.incidences_from_dim(n):
            block = sys.map_covariant(inc.hom)
            r0, c0 = roff[inc.target], coff[inc.source]
            for i, brow in enumerate(block):
                row = M[r0 + i]
                for j, v in enumerate(brow):
                    if v:
                        row[c0 + j] += inc.coeff * v
        maps[n] = IntegerMatrix(rows, cols, tuple(tuple(r) for r in M))
    return ChainComplex({n: b[0] for n, b in bases.items()}, maps, -1)


def assemble_cochain(X: EquivariantCellComplex, sys: CoefficientSystem) -> ChainComplex:
    """δ^n: C^n → C^{n+1} for n = 0..dim X − 1, built from contravariant maps."""
    bases = _bases(X, sys)
    maps = {}
    for n in range(0, X.dim):
        rows, roff = bases[n + 1]
        cols, coff = bases[n]
        M = [[0] * len(cols) for _ in rows]
        for inc in X.incidences_from_dim(n + 1):
            block = sys.map_contravariant(inc.hom)
            r0, c0 = roff[inc.source], coff[inc.target]
            for i, brow in enumerate(block):
                row = M[r0 + i]
                for j, v in enumerate(brow):
                    if v:
                        row[c0 + j] += inc.coeff * v
        maps[n] = IntegerMatrix(rows, cols, tuple(tuple(r) for r in M))
    return ChainComplex({n: b[0] for n, b in bases.items()}, maps, +1)


def first_nonzero_composite(C: ChainComplex):
    """(n, row label, column label, value) of the first nonzero entry of maps[n+step]∘maps[n], or None."""
    for n in sorted(C.maps):
        nxt = C.maps.get(n + C.step)
        if nxt is None:
            continue
        cur = C.maps[n]
        prod = matmul(nxt.entries, cur.entries, cur.cols)
        for i, row in enumerate(prod):
            for j, v in enumerate(row):
                if v:
                    return n, nxt.row_labels[i], cur.col_labels[j], v
    return None


def check_complex(C: ChainComplex) -> None:
    bad = first_nonzero_composite(C)
    if bad is not None:
        n, row, col, v = bad
        raise NotAComplex(f"composite of the maps out of degree {n} is nonzero: entry {v} at ({row}, {col})")


def homology(C: ChainComplex, degrees: Iterable[int] | None = None, *, check: bool = True) -> GradedAbelianGroup:
    """Homology of C in the given degrees (default: every degree with a basis)."""
    if check:
        check_complex(C)
    degs = list(degrees) if degrees is not None else C.degrees()
    out = {}
    for n in degs:
        m = C.rank(n)
        r = len(C.divisors(n)) if n in C.maps else 0
        incoming = n - C.step
        divs = C.divisors(incoming) if incoming in C.maps else ()
        out[n] = AbelianGroup(m - r - len(divs), tuple(d for d in divs if d > 1))
    return GradedAbelianGroup.from_dict(out)


def bredon_homology(X: EquivariantCellComplex, sys: CoefficientSystem,
                    degrees: Iterable[int] | None = None) -> GradedAbelianGroup:
    return homology(assemble_chain(X, sys), degrees)


def bredon_cohomology(X: EquivariantCellComplex, sys: CoefficientSystem,
                      degrees: Iterable[int] | None = None) -> GradedAbelianGroup:
    return homology(assemble_cochain(X, sys), degrees)


# -- torsion-freeness criterion ----------------------------------------------------------

TORSION_FREE = "TorsionFree"
INCONCLUSIVE = "Inconclusive"
CRITERION_FAILS = "CriterionFails"


@dataclass(frozen=True)
class CriterionResult:
    status: str
    witness: tuple | None = None  # (vertex, row labels, column labels, submatrix, minor)
    detail: str = ""


def _det(M: list[list[int]]) -> int:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    return _int_det(M)


def _dedupe_columns(cols: list[tuple[int, ...]]) -> list[int]:
    keep, seen = [], set()
    for j, c in enumerate(cols):
        if not any(c):
            continue
        neg = tuple(-v for v in c)
        if c in seen or neg in seen:
            continue
        seen.add(c)
        keep.append(j)
    return keep


def torsion_free_criterion(C: ChainComplex, X: EquivariantCellComplex, minor_cap: int = 12) -> CriterionResult:
    """Check that every minor of every vertex block of ∂_1 lies in {−1, 0, 1}.

    A vertex block is the set of rows of ∂_1 belonging to one 0-cell orbit.
    Zero rows/columns and rows/columns equal up to sign are dropped first
    (they add no new minor values); a block with more than ``minor_cap``
    remaining rows or columns is Inconclusive.  Only the given basis is examined.
    """
    if 1 not in C.maps:
        return CriterionResult(TORSION_FREE, detail="no 1-cells")
    d1 = C.maps[1]
    too_big = []
    for v in X.cells_in_dim(0):
        prefix = f"{v.id}:"
        rows = [i for i, lab in enumerate(d1.row_labels) if lab.startswith(prefix)]
        if not rows:
            continue
        block_cols = [tuple(d1.entries[i][j] for i in rows) for j in range(d1.cols)]
        keep = _dedupe_columns(block_cols)
        kept_rows = _dedupe_columns([tuple(d1.entries[i][j] for j in keep) for i in rows])
        rows = [rows[i] for i in kept_rows]
        if max(len(keep), len(rows)) > minor_cap:
            too_big.append(f"{v.id} ({len(rows)}x{len(keep)})")
            continue
        block = [[d1.entries[i][j] for j in keep] for i in rows]
        for size in range(1, min(len(rows), len(keep)) + 1):
            for rs in combinations(range(len(rows)), size):
                for cs in combinations(range(len(keep)), size):
                    sub = [[block[r][c] for c in cs] for r in rs]
                    d = _det(sub)
                    if d not in (-1, 0, 1):
                        witness = (v.id, tuple(d1.row_labels[rows[r]] for r in rs),
                                   tuple(d1.col_labels[keep[c]] for c in cs),
                                   tuple(tuple(r) for r in sub), d)
                        return CriterionResult(CRITERION_FAILS, witness,
                                               f"minor {d} in the block of {v.id}")
    if too_big:
        return CriterionResult(INCONCLUSIVE, detail="blocks above the minor cap: " + ", ".join(too_big))
    return CriterionResult(TORSION_FREE)
