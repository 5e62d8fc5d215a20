"""Independent reference computations used by the tests.

Each oracle takes a different route from the library code it checks:
rational elimination instead of integer pivoting, sympy's invariant factors
instead of our Smith form, element-wise character sums instead of class
sums, and explicit G-sets instead of tables of marks.
"""

from __future__ import annotations

from fractions import Fraction

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from bredon.groups import FiniteGroup, GroupHomomorphism, subgroup_class_index


# -- linear algebra -------------------------------------------------------------------

def rational_rank(A, cols: int | None = None) -> int:
    rows = [[Fraction(v) for v in r] for r in A]
    if not rows:
        return 0
    n = len(rows[0]) if cols is None else cols
    rank = 0
    for c in range(n):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def integer_det(A) -> int:
    """Exact determinant by fraction-free elimination with full row pivoting."""
    m = [list(map(int, r)) for r in A]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * prev if n else 1


def sympy_divisors(A, rows: int, cols: int) -> list[int]:
    """Nonzero invariant factors via sympy."""
    if rows == 0 or cols == 0:
        return []
    facs = invariant_factors(Matrix(rows, cols, [v for r in A for v in r]), domain=ZZ)
    return [abs(int(d)) for d in facs if d != 0]


def cellular_homology(ranks: dict[int, int], boundaries: dict[int, list[list[int]]]) -> dict[int, tuple[int, list[int]]]:
    """Integral homology of a chain complex of free modules given by ∂_n: C_n → C_{n−1}.

    Returns degree ↦ (free rank, sorted torsion divisors > 1).
    """
    divs = {n: sympy_divisors(B, ranks[n - 1], ranks[n]) for n, B in boundaries.items()}
    out = {}
    for n, m in ranks.items():
        out_rank = len(divs.get(n, []))
        incoming = divs.get(n + 1, [])
        out[n] = (m - out_rank - len(incoming), sorted(d for d in incoming if d > 1))
    return out


def primary_decomposition(torsion) -> list[int]:
    """Prime-power parts, sorted; compares torsion lists written in any normal form."""
    out = []
    for d in torsion:
        p = 2
        while d > 1:
            if d % p == 0:
                q = 1
                while d % p == 0:
                    d //= p
                    q *= p
                out.append(q)
            p += 1
    return sorted(out)


# -- characters --------------------------------------------------------------------

def character_on_elements(table, chi) -> list:
    G = table.group
    return [chi.values[G.class_of[g]] for g in range(G.order)]


def elementwise_inner(G: FiniteGroup, a: list, b: list):
    """|G|^-1 Σ_g a(g) conj(b(g)) with conj(b(g)) = b(g^-1)."""
    from bredon.cyclotomic import Cyclotomic
    total = Cyclotomic.rational(0)
    for g in range(G.order):
        total = total + a[g] * b[G.inv[g]]
    return total / G.order


def brute_induce(h: GroupHomomorphism, values: list) -> list:
    """Induced character of K from element values on H: |H|^-1 Σ_{x∈K} χ°(x⁻¹ g x)."""
    from bredon.cyclotomic import Cyclotomic
    H, K = h.source, h.target
    pre = {h.images[a]: a for a in range(H.order)}
    out = []
    for g in range(K.order):
        total = Cyclotomic.rational(0)
        for x in range(K.order):
            y = K.mul[K.mul[K.inv[x]][g]][x]
            if y in pre:
                total = total + values[pre[y]]
        out.append(total / H.order)
    return out


def brute_induction_matrix(h: GroupHomomorphism, tH, tK) -> list[list[int]]:
    cols = []
    for chi in tH.irreducibles:
        ind = brute_induce(h, character_on_elements(tH, chi))
        col = []
        for psi in tK.irreducibles:
            c = elementwise_inner(h.target, ind, character_on_elements(tK, psi))
            assert c.is_integer()
            col.append(int(c.rational_value()))
        cols.append(col)
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(tK))]


# -- Burnside ring via explicit G-sets ------------------------------------------------------

def _cosets(K: FiniteGroup, members) -> list[frozenset]:
    seen, out = set(), []
    for g in range(K.order):
        if g in seen:
            continue
        c = frozenset(K.mul[g][m] for m in members)
        seen |= c
        out.append(c)
    return out


def _orbit_stabilizer_classes(G: FiniteGroup, points: list, act) -> list[int]:
    """Class indices of point stabilizers, one per orbit of the G-set (points, act)."""
    index = {p: i for i, p in enumerate(points)}
    seen = set()
    out = []
    for p in points:
        if index[p] in seen:
            continue
        orbit = {act(g, p) for g in range(G.order)}
        seen |= {index[q] for q in orbit}
        stab = [g for g in range(G.order) if act(g, p) == p]
        out.append(subgroup_class_index(G, stab))
    return out


def brute_burnside_restriction(h: GroupHomomorphism, tH, tK) -> list[list[int]]:
    H, K = h.source, h.target
    M = [[0] * len(tK) for _ in range(len(tH))]
    for j, S in enumerate(tK.representatives):
        cosets = _cosets(K, S.members)
        act = lambda a, c: frozenset(K.mul[h.images[a]][x] for x in c)  # noqa: E731
        for i in _orbit_stabilizer_classes(H, cosets, act):
            M[i][j] += 1
    return M


def brute_burnside_induction(h: GroupHomomorphism, tH, tK) -> list[list[int]]:
    """K ×_H (H/L) built as equivalence classes of pairs (k, coset)."""
    H, K = h.source, h.target
    M = [[0] * len(tH) for _ in range(len(tK))]
    for j, L in enumerate(tH.representatives):
        cosets = _cosets(H, L.members)
        cidx = {c: i for i, c in enumerate(cosets)}
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k in range(K.order):
            for c in cosets:
                for a in range(H.order):
                    # (k·h(a), c) ~ (k, a·c)
                    lhs = (K.mul[k][h.images[a]], cidx[c])
                    rhs = (k, cidx[frozenset(H.mul[a][x] for x in c)])
                    ra, rb = find(lhs), find(rhs)
                    if ra != rb:
                        parent[ra] = rb
        classes = {}
        for k in range(K.order):
            for i in range(len(cosets)):
                classes.setdefault(find((k, i)), (k, i))
        points = sorted(classes)
        act = lambda g, p: find((K.mul[g][p[0]], p[1]))  # noqa: E731
        for i in _orbit_stabilizer_classes(K, points, act):
            M[i][j] += 1
    return M
