"""Character tables, induction and restriction with exact cyclotomic values.

Tables are computed with the Burnside/Dixon–Schneider class-sum method:
the central characters are the common eigenvectors of the class
multiplication matrices.  The eigenvectors are found over a prime field
F_p with p ≡ 1 (mod exponent) and p > 2|G|; every value is then lifted to
an exact cyclotomic integer through the eigenvalue multiplicities of
ρ(g), which are integers in [0, χ(1)] and hence recovered exactly mod p.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclotomic import Cyclotomic
from .errors import CapExceeded, NonInjectiveHomomorphism, NotVirtualCharacter
from .groups import FiniteGroup, GroupHomomorphism

DEFAULT_TABLE_CAP = 200

_cache_lock = threading.Lock()
_table_cache: dict[tuple, "CharacterTable"] = {}


@dataclass(frozen=True, eq=False)
class ClassFunction:
    group: FiniteGroup
    values: tuple[Cyclotomic, ...]  # indexed by conjugacy class

    def __call__(self, x: int) -> Cyclotomic:
        return self.values[self.group.class_of[x]]

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def scale(self, k) -> "ClassFunction":
        return ClassFunction(self.group, tuple(v * k for v in self.values))

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group.mul == other.group.mul and self.values == other.values

    def __hash__(self):
        return hash(self.values)


@dataclass(frozen=True, eq=False)
class RepRingElement:
    table: "CharacterTable"
    coeffs: tuple[int, ...]

    def character(self) -> ClassFunction:
        r = len(self.table.classes)
        vals = [Cyclotomic.rational(0)] * r
        for c, chi in zip(self.coeffs, self.table.irreducibles):
            if c:
                vals = [v + w * c for v, w in zip(vals, chi.values)]
        return ClassFunction(self.table.group, tuple(vals))

    def __eq__(self, other):
        if not isinstance(other, RepRingElement):
            return NotImplemented
        return self.table is other.table and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)


@dataclass(eq=False)
class CharacterTable:
    group: FiniteGroup
    irreducibles: tuple[ClassFunction, ...]
    degrees: tuple[int, ...]
    prime: int = 0
    _inverse_class: tuple[int, ...] = field(default=(), repr=False)

    @property
    def classes(self):
        return self.group.conjugacy_classes

    def __len__(self):
        return len(self.irreducibles)

    def rebind(self, G: FiniteGroup) -> "CharacterTable":
        """Same table for another group object with an identical multiplication table."""
        if G is self.group:
            return self
        irr = tuple(ClassFunction(G, chi.values) for chi in self.irreducibles)
        return CharacterTable(G, irr, self.degrees, self.prime, self._inverse_class)

    def inner(self, chi: ClassFunction, psi: ClassFunction):
        """⟨χ, ψ⟩ = |G|^-1 Σ_g χ(g) conj(ψ(g)), exact."""
        G = self.group
        total = Cyclotomic.rational(0)
        inv = self._inverse_class
        for i, cls in enumerate(self.classes):
            a = chi.values[i]
            b = psi.values[inv[i]]  # conj(ψ(g)) = ψ(g^-1)
            if a.is_zero() or b.is_zero():
                continue
            total = total + a * b * cls.size
        return total / G.order

    def decompose(self, chi: ClassFunction) -> RepRingElement:
        """Coefficients ⟨χ, χ_i⟩; raises NotVirtualCharacter unless all are integers."""
        coeffs = []
        for i, irr in enumerate(self.irreducibles):
            c = self.inner(chi, irr)
            if not c.is_integer():
                raise NotVirtualCharacter(
                    f"⟨χ, χ_{i}⟩ = {c} is not an integer on {self.group.name or 'group'}")
            coeffs.append(int(c.rational_value()))
        return RepRingElement(self, tuple(coeffs))

    def regular_character(self) -> ClassFunction:
        r = len(self.classes)
        vals = [Cyclotomic.rational(self.group.order if i == 0 else 0) for i in range(r)]
        return ClassFunction(self.group, tuple(vals))

    def format(self) -> str:
        G = self.group
        head = ["class"] + [str(c.representative) for c in self.classes]
        sizes = ["size"] + [str(c.size) for c in self.classes]
        orders = ["order"] + [str(G.element_orders[c.representative]) for c in self.classes]
        rows = [head, orders, sizes]
        for i, chi in enumerate(self.irreducibles):
            rows.append([f"X.{i}"] + [str(v) for v in chi.values])
        widths = [max(len(r[j]) for r in rows) for j in range(len(head))]
        return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)


# -- table computation -----------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _choose_prime(exponent: int, order: int) -> int:
    p = exponent * (2 * order // exponent + 1) + 1
    while not _is_prime(p) or p <= 2 * order:
        p += exponent
    return p


def _primitive_root_of_unity(p: int, e: int) -> int:
    factors = []
    m, d = p - 1, 2
    while d * d <= m:
        if m % d == 0:
            factors.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.append(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return pow(g, (p - 1) // e, p)
    raise ArithmeticError("no primitive root")  # p = 2 never occurs


def _nullspace_mod_p(A: list[list[int]], p: int) -> list[list[int]]:
    rows, cols = len(A), len(A[0]) if A else 0
    M = [list(r) for r in A]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] % p), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [(v * inv) % p for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] % p:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-M[i][f]) % p
        basis.append(v)
    return basis


def _charpoly_mod_p(A: list[list[int]], p: int) -> list[int]:
    """Faddeev–LeVerrier over F_p; coefficients lowest degree first (monic)."""
    n = len(A)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum(A[i][t] * Mk[t][j] for t in range(n)) % p for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] = (prod[i][i] + coeffs[n - k + 1]) % p
        Mk = prod
        tr = sum(sum(A[i][t] * Mk[t][i] for t in range(n)) for i in range(n)) % p
        coeffs[n - k] = (-tr * pow(k, p - 2, p)) % p
    return coeffs


def _roots_mod_p(poly: list[int], p: int) -> list[int]:
    roots = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


def _rref_mod_p(vectors: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    M = [list(v) for v in vectors]
    cols = len(M[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(M)) if M[i][c] % p), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [(v * inv) % p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] % p:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def _structure_constants(G: FiniteGroup) -> list[list[list[int]]]:
    """a[i][j][k] = #{x in C_i : x^-1 z in C_j} for a fixed z in C_k."""
    classes = G.conjugacy_classes
    r = len(classes)
    cls = G.class_of
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    mul, inv = G.mul, G.inv
    for k, ck in enumerate(classes):
        z = ck.representative
        for x in range(G.order):
            a[cls[x]][cls[mul[inv[x]][z]]][k] += 1
    return a


def _compute_table(G: FiniteGroup) -> CharacterTable:
    classes = G.conjugacy_classes
    r = len(classes)
    n = G.order
    e = G.exponent
    p = _choose_prime(e, n)
    a = _structure_constants(G)
    sizes = [c.size for c in classes]
    inverse_class = tuple(G.class_of[G.inv[c.representative]] for c in classes)

    # Simultaneous eigenvectors of M_i with (M_i)[j][k] = a[i][j][k].
    spaces = [[[int(i == j) for j in range(r)] for i in range(r)]]
    for i in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        Mi = a[i]
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            basis, pivots = _rref_mod_p(basis, p)
            dim = len(basis)
            images = [[sum(Mi[j][k] * b[k] for k in range(r)) % p for j in range(r)] for b in basis]
            # coordinates in an RREF basis are the values at the pivot columns
            A = [[images[col][pivots[row]] for col in range(dim)] for row in range(dim)]
            found = 0
            for lam in _roots_mod_p(_charpoly_mod_p(A, p), p):
                shifted = [[(A[x][y] - (lam if x == y else 0)) % p for y in range(dim)] for x in range(dim)]
                null = _nullspace_mod_p(shifted, p)
                if null:
                    vecs = [[sum(c * basis[t][k] for t, c in enumerate(v)) % p for k in range(r)]
                            for v in null]
                    new_spaces.append(vecs)
                    found += len(vecs)
            if found != dim:
                raise ArithmeticError("class multiplication matrix is not diagonalizable mod p")
        spaces = new_spaces
    if len(spaces) != r or any(len(s) != 1 for s in spaces):
        raise ArithmeticError("central characters did not separate")

    zeta = _primitive_root_of_unity(p, e)
    zeta_inv = pow(zeta, p - 2, p)
    e_inv = pow(e, p - 2, p)
    power_class = [[G.class_of[G.power(c.representative, m)] for m in range(e)] for c in classes]

    irreducibles = []
    degrees = []
    for (vec,) in spaces:
        scale = pow(vec[0], p - 2, p)
        omega = [(v * scale) % p for v in vec]
        s = sum(omega[j] * omega[inverse_class[j]] * pow(sizes[j], p - 2, p) for j in range(r)) % p
        d2 = (n * pow(s, p - 2, p)) % p
        d = next(d for d in range(1, int(n ** 0.5) + 1) if (d * d) % p == d2)
        modp = [(d * omega[j] * pow(sizes[j], p - 2, p)) % p for j in range(r)]
        values = []
        for j in range(r):
            mult = {}
            for k in range(e):
                m = sum(modp[power_class[j][t]] * pow(zeta_inv, t * k, p) for t in range(e)) * e_inv % p
                if m:
                    if m > d:
                        raise ArithmeticError("eigenvalue multiplicity out of range")
                    mult[k] = m
            values.append(Cyclotomic.from_exponent_sum(e, mult))
        irreducibles.append(tuple(values))
        degrees.append(d)

    order = sorted(range(r), key=lambda i: (degrees[i], tuple(v.sort_key() for v in irreducibles[i])))
    irr = tuple(ClassFunction(G, irreducibles[i]) for i in order)
    degs = tuple(degrees[i] for i in order)
    if sum(d * d for d in degs) != n:
        raise ArithmeticError("degree sum check failed")
    return CharacterTable(G, irr, degs, p, inverse_class)


def character_table(G: FiniteGroup, cap: int = DEFAULT_TABLE_CAP) -> CharacterTable:
    """Exact character table; memoised process-wide by multiplication table."""
    own = getattr(G, "_character_table", None)
    if own is not None:
        return own
    if G.order > cap:
        raise CapExceeded(f"character table of a group of order {G.order} exceeds cap {cap}")
    key = G.table_key
    with _cache_lock:
        cached = _table_cache.get(key)
    if cached is None:
        computed = _compute_table(G)
        with _cache_lock:
            cached = _table_cache.setdefault(key, computed)
    table = cached.rebind(G)
    G._character_table = table  # type: ignore[attr-defined]
    return table


# -- induction and restriction ------------------------------------------------------

def restrict(chi: ClassFunction, h: GroupHomomorphism) -> ClassFunction:
    """(res χ)(x) = χ(h(x)) on the source of h."""
    H = h.source
    return ClassFunction(H, tuple(chi(h.images[c.representative]) for c in H.conjugacy_classes))


def _induction_counts(h: GroupHomomorphism) -> list[list[int]]:
    """counts[k][c] = #{x in K : x^-1 k x in h(C_c)} for each class rep k of K."""
    H, K = h.source, h.target
    pre = {y: x for x, y in enumerate(h.images)}
    hcls = H.class_of
    counts = []
    for ck in K.conjugacy_classes:
        k = ck.representative
        row = [0] * len(H.conjugacy_classes)
        for x in range(K.order):
            y = K.conj(K.inv[x], k)
            src = pre.get(y)
            if src is not None:
                row[hcls[src]] += 1
        counts.append(row)
    return counts


def induce(chi: ClassFunction, h: GroupHomomorphism) -> ClassFunction:
    """Frobenius formula (ind χ)(k) = |H|^-1 Σ_{x∈K, x^-1kx ∈ h(H)} χ(h^-1(x^-1 k x))."""
    if not h.is_injective:
        raise NonInjectiveHomomorphism("induction needs an injective homomorphism")
    counts = _induction_counts(h)
    return _induce_with_counts(chi, counts, h)


def _induce_with_counts(chi, counts, h):
    H, K = h.source, h.target
    vals = []
    for row in counts:
        acc = Cyclotomic.rational(0)
        for c, m in enumerate(row):
            if m:
                acc = acc + chi.values[c] * m
        vals.append(acc / H.order)
    return ClassFunction(K, tuple(vals))


def decompose(chi: ClassFunction) -> RepRingElement:
    return character_table(chi.group).decompose(chi)


def induction_matrix(h: GroupHomomorphism, cap: int = DEFAULT_TABLE_CAP) -> list[list[int]]:
    """|Irr K| × |Irr H| integer matrix; column j decomposes the induced j-th irreducible."""
    if not h.is_injective:
        raise NonInjectiveHomomorphism("induction needs an injective homomorphism")
    tH = character_table(h.source, cap)
    tK = character_table(h.target, cap)
    counts = _induction_counts(h)
    cols = [tK.decompose(_induce_with_counts(chi, counts, h)).coeffs for chi in tH.irreducibles]
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(tK))]


def restriction_matrix(h: GroupHomomorphism, cap: int = DEFAULT_TABLE_CAP) -> list[list[int]]:
    """|Irr H| × |Irr K| integer matrix; column j decomposes the restricted j-th irreducible of K."""
    tH = character_table(h.source, cap)
    tK = character_table(h.target, cap)
    cols = [tH.decompose(restrict(chi, h)).coeffs for chi in tK.irreducibles]
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(tH))]


def class_function_from_values(G: FiniteGroup, values: Sequence) -> ClassFunction:
    vals = tuple(v if isinstance(v, Cyclotomic) else Cyclotomic.rational(Fraction(v)) for v in values)
    return ClassFunction(G, vals)
