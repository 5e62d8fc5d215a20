"""E₂ page of the equivariant Atiyah–Hirzebruch spectral sequence for K-theory.

With KU coefficients the page is E₂^{p,q} = H^p(X; R_C) for even q and 0 for
odd q.  By periodicity the grid stores one even and one odd row; ``entry``
answers for any q.  Higher differentials are never computed.  Collapse is only
asserted when bidegrees force every d_r (r ≥ 2) to vanish.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coefficients import ComplexRepRing
from .complexes import EquivariantCellComplex
from .groups import DEFAULT_GROUP_CAP
from .homology import AbelianGroup, GradedAbelianGroup, bredon_cohomology

COLLAPSES = "CollapsesForDimensionReasons"
UNKNOWN = "Unknown"

D3_NOTE = ("d3 and higher differentials are not computed: no closed formula is available, "
           "so collapse is not asserted")
SINGLE_COLUMN_NOTE = ("only one column is nonzero; this is not used to assert collapse "
                      "(see the dimension criterion)")
EXTENSION_CAVEAT = ("torsion is associated-graded data; the extension problem is not solved")


@dataclass(frozen=True)
class E2Page:
    cohomology: GradedAbelianGroup
    dim: int
    collapse_status: str
    notes: tuple[str, ...] = ()

    @property
    def grid(self) -> dict[tuple[int, int], AbelianGroup]:
        """Representative rows q = 0 (even) and q = 1 (odd)."""
        out = {}
        for p in range(self.dim + 1):
            out[(p, 0)] = self.cohomology[p]
            out[(p, 1)] = AbelianGroup(0)
        return out

    def entry(self, p: int, q: int) -> AbelianGroup:
        if p < 0 or p > self.dim or q % 2:
            return AbelianGroup(0)
        return self.cohomology[p]

    def nonzero_columns(self) -> list[int]:
        return [p for p in range(self.dim + 1) if not self.cohomology[p].is_zero()]

    def render(self, q_rows: tuple[int, ...] = (1, 0)) -> str:
        cells = [[str(self.entry(p, q)) for p in range(self.dim + 1)] for q in q_rows]
        width = max([len(c) for row in cells for c in row] + [3])
        heads = [f"q={q} ({'odd' if q % 2 else 'even'})" for q in q_rows]
        lw = max(len(h) for h in heads)
        lines = [h.rjust(lw) + " | " + " ".join(c.rjust(width) for c in row) for h, row in zip(heads, cells)]
        lines.append(" " * lw + " +-" + "-".join("-" * width for _ in range(self.dim + 1)))
        lines.append("p =".rjust(lw) + " | " + " ".join(str(p).rjust(width) for p in range(self.dim + 1)))
        lines.append(f"collapse: {self.collapse_status}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def e2_page(X: EquivariantCellComplex, cap: int = DEFAULT_GROUP_CAP) -> E2Page:
    coh = bredon_cohomology(X, ComplexRepRing(cap))
    dim = max(X.dim, 0)
    notes = []
    # odd rows vanish, so d_2 always lands in a zero row; d_3 needs columns p and p+3
    if dim <= 2:
        status = COLLAPSES
    else:
        status = UNKNOWN
        notes.append(D3_NOTE)
        if sum(not coh[p].is_zero() for p in range(dim + 1)) <= 1:
            notes.append(SINGLE_COLUMN_NOTE)
    return E2Page(coh, dim, status, tuple(notes))


@dataclass(frozen=True)
class KTheoryRanks:
    even: int
    odd: int
    even_torsion: tuple[int, ...]
    odd_torsion: tuple[int, ...]
    caveat: str = EXTENSION_CAVEAT


def k_theory_ranks_if_collapse(page: E2Page) -> KTheoryRanks | None:
    if page.collapse_status != COLLAPSES:
        return None
    even = odd = 0
    even_t: list[int] = []
    odd_t: list[int] = []
    for p in range(page.dim + 1):
        g = page.entry(p, 0)
        if p % 2:
            odd += g.free_rank
            odd_t.extend(g.torsion)
        else:
            even += g.free_rank
            even_t.extend(g.torsion)
    return KTheoryRanks(even, odd, tuple(even_t), tuple(odd_t))
