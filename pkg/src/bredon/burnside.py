"""Tables of marks and Burnside-ring induction/restriction matrices.

The Burnside ring A(H) is based by transitive H-sets H/L, one per conjugacy
class of subgroups L.  A finite H-set is determined by its marks
|X^L| (number of L-fixed points), which is how restrictions are decomposed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, NonInjectiveHomomorphism
from .groups import FiniteGroup, GroupHomomorphism, Subgroup, subgroup_class_index, subgroup_classes

DEFAULT_MARKS_CAP = 200


@dataclass(frozen=True, eq=False)
class TableOfMarks:
    group: FiniteGroup
    representatives: tuple[Subgroup, ...]
    # marks[i][j] = |(G/H_i)^{H_j}|
    marks: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.representatives)

    def labels(self) -> list[str]:
        return [f"[/{S.order}:{i}]" for i, S in enumerate(self.representatives)]

    def marks_of(self, fixed_points: list[int]) -> list[int]:
        """Decompose a G-set given by its mark vector into transitive summands.

        Solves Σ_i c_i marks[i][j] = fixed_points[j]; the matrix is lower
        triangular with positive diagonal, so back-substitute from the
        largest subgroup down.
        """
        r = len(self.representatives)
        coeffs = [Fraction(0)] * r
        for j in range(r - 1, -1, -1):
            rest = fixed_points[j] - sum(coeffs[i] * self.marks[i][j] for i in range(j + 1, r))
            coeffs[j] = Fraction(rest, self.marks[j][j])
        if any(c.denominator != 1 for c in coeffs):
            raise ValueError(f"mark vector {fixed_points} is not the marks of an actual set")
        return [int(c) for c in coeffs]


def _count_marks(G: FiniteGroup, H: Subgroup, L: Subgroup) -> int:
    """|(G/H)^L| = #{g : g^-1 L g ⊆ H} / |H|."""
    hs = H.member_set
    count = 0
    for g in range(G.order):
        gi = G.inv[g]
        if all(G.conj(gi, x) in hs for x in L.members):
            count += 1
    return count // H.order


def table_of_marks(G: FiniteGroup, cap: int = DEFAULT_MARKS_CAP) -> TableOfMarks:
    cached = getattr(G, "_table_of_marks", None)
    if cached is not None:
        return cached
    if G.order > cap:
        raise CapExceeded(f"table of marks of a group of order {G.order} exceeds cap {cap}")
    reps = tuple(cls[0] for cls in subgroup_classes(G))
    marks = tuple(tuple(_count_marks(G, Hi, Hj) if j <= i else 0 for j, Hj in enumerate(reps))
                  for i, Hi in enumerate(reps))
    tom = TableOfMarks(G, reps, marks)
    G._table_of_marks = tom  # type: ignore[attr-defined]
    return tom


def burnside_induction_matrix(h: GroupHomomorphism, cap: int = DEFAULT_MARKS_CAP) -> list[list[int]]:
    """[H/L] ↦ [K/h(L)]; a 0/1 matrix of shape |A(K)| × |A(H)|."""
    if not h.is_injective:
        raise NonInjectiveHomomorphism("induction needs an injective homomorphism")
    tH = table_of_marks(h.source, cap)
    tK = table_of_marks(h.target, cap)
    out = [[0] * len(tH) for _ in range(len(tK))]
    for j, L in enumerate(tH.representatives):
        out[subgroup_class_index(h.target, (h.images[x] for x in L.members))][j] = 1
    return out


def burnside_restriction_matrix(h: GroupHomomorphism, cap: int = DEFAULT_MARKS_CAP) -> list[list[int]]:
    """Restrict K/M along h and decompose by marks; shape |A(H)| × |A(K)|."""
    H, K = h.source, h.target
    tH = table_of_marks(H, cap)
    tK = table_of_marks(K, cap)
    image_class = [subgroup_class_index(K, {h.images[x] for x in L.members})
                   for L in tH.representatives]
    cols = []
    for i in range(len(tK)):
        # |(K/M_i)^{h(L)}| depends only on the class of h(L)
        fixed = [tK.marks[i][c] if c <= i else 0 for c in image_class]
        cols.append(tH.marks_of(fixed))
    return [[cols[j][i] for j in range(len(tK))] for i in range(len(tH))]
