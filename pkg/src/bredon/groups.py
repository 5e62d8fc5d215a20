"""Finite groups as dense multiplication tables.

Elements are the integers ``0 .. |G|-1`` with ``0`` the identity.  Groups
given by generators (permutations or integer matrices) are closed
breadth-first from the identity, right-multiplying by the generators in the
order given, so the element numbering is reproducible from the input alone.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .errors import (
    BadHomomorphism,
    ClosureExceedsCap,
    ComplexSyntaxError,
    NonInvertibleGenerator,
)

DEFAULT_GROUP_CAP = 200


class FiniteGroup:
    """A finite group with elements ``0..n-1`` and a full multiplication table.

    ``gens`` are element indices; word-based constructions (homomorphisms
    given on generators, serialization) refer to them by 1-based position.
    ``labels`` holds the concrete element data (permutation tuples or matrix
    tuples) when the group came from generators.
    """

    def __init__(
        self,
        mul: Sequence[Sequence[int]],
        gens: Sequence[int] = (),
        *,
        origin: str = "table",
        labels: Sequence | None = None,
        name: str = "",
        factors: tuple["FiniteGroup", "FiniteGroup"] | None = None,
    ):
        self.mul = tuple(tuple(row) for row in mul)
        self.order = len(self.mul)
        inv = [0] * self.order
        for a in range(self.order):
            row = self.mul[a]
            for b in range(self.order):
                if row[b] == 0:
                    inv[a] = b
                    break
        self.inv = tuple(inv)
        self.gens = tuple(gens)
        self.origin = origin
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        self.factors = factors
        self._subgroup_groups: dict[frozenset, tuple[FiniteGroup, GroupHomomorphism]] = {}

    def __repr__(self):
        label = self.name or "group"
        return f"<FiniteGroup {label} order={self.order}>"

    def __len__(self):
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        result = 0
        base = x
        while k:
            if k & 1:
                result = self.mul[result][base]
            base = self.mul[base][base]
            k >>= 1
        return result

    @cached_property
    def table_key(self) -> tuple:
        """Hashable key of the multiplication table (memo caches use it)."""
        return self.mul

    @cached_property
    def is_abelian(self) -> bool:
        mul = self.mul
        return all(mul[a][b] == mul[b][a] for a in range(self.order) for b in range(a))

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for x in range(self.order):
            k, y = 1, x
            while y != 0:
                y = self.mul[y][x]
                k += 1
            orders.append(k)
        return tuple(orders)

    def element_order(self, x: int) -> int:
        return self.element_orders[x]

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.element_orders, 1)

    @cached_property
    def words(self) -> tuple[tuple[int, ...], ...]:
        """A shortest generator word (0-based generator positions) for every element."""
        words: list[tuple[int, ...] | None] = [None] * self.order
        words[0] = ()
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for pos, s in enumerate(self.gens):
                y = self.mul[x][s]
                if words[y] is None:
                    words[y] = words[x] + (pos,)
                    queue.append(y)
        if any(w is None for w in words):
            raise ValueError(f"generators of {self.name or 'group'} do not generate it")
        return tuple(words)  # type: ignore[arg-type]

    def evaluate_word(self, word: Iterable[tuple[int, int]]) -> int:
        """Evaluate a word given as ``(generator position, exponent)`` pairs."""
        x = 0
        for pos, exp in word:
            x = self.mul[x][self.power(self.gens[pos], exp)]
        return x

    @cached_property
    def conjugacy_classes(self) -> tuple["ConjugacyClass", ...]:
        return tuple(conjugacy_classes(self))

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        """Class index for every element."""
        index = [0] * self.order
        for i, cls in enumerate(self.conjugacy_classes):
            for x in cls.members:
                index[x] = i
        return tuple(index)

    def check_axioms(self) -> tuple[bool, str]:
        """Exhaustive group-axiom check; returns ``(ok, message)``."""
        n, mul, inv = self.order, self.mul, self.inv
        for a in range(n):
            if mul[0][a] != a or mul[a][0] != a:
                return False, f"0 is not an identity for {a}"
            if mul[a][inv[a]] != 0 or mul[inv[a]][a] != 0:
                return False, f"bad inverse for {a}"
            if sorted(mul[a]) != list(range(n)):
                return False, f"row {a} is not a permutation"
        for a in range(n):
            ma = mul[a]
            for b in range(n):
                ab = ma[b]
                mab = mul[ab]
                mb = mul[b]
                for c in range(n):
                    if mab[c] != ma[mb[c]]:
                        return False, f"not associative at {(a, b, c)}"
                if inv[ab] != mul[inv[b]][inv[a]]:
                    return False, f"inverse of product fails at {(a, b)}"
        return True, "ok"

    # subgroup helpers -------------------------------------------------------

    def subgroup_group(self, members: Iterable[int]) -> tuple["FiniteGroup", "GroupHomomorphism"]:
        """The subgroup on ``members`` as a group in its own right, with its inclusion.

        Elements of the new group are numbered by increasing parent index.
        Results are memoised per member set so repeated calls share
        character tables.
        """
        key = frozenset(members)
        cached = self._subgroup_groups.get(key)
        if cached is not None:
            return cached
        elems = sorted(key)
        pos = {x: i for i, x in enumerate(elems)}
        mul = [[pos[self.mul[a][b]] for b in elems] for a in elems]
        gens = _greedy_generators(mul)
        labels = [self.labels[x] for x in elems] if self.labels is not None else None
        sub = FiniteGroup(mul, gens, origin="subgroup", labels=labels,
                          name=f"{self.name or 'G'}<{len(elems)}>")
        inc = GroupHomomorphism(sub, self, tuple(elems))
        self._subgroup_groups[key] = (sub, inc)
        return sub, inc


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def is_closed(self) -> bool:
        s = self.member_set
        mul, inv = self.parent.mul, self.parent.inv
        return 0 in s and all(inv[a] in s for a in s) and all(mul[a][b] in s for a in s for b in s)

    def as_group(self) -> tuple[FiniteGroup, "GroupHomomorphism"]:
        return self.parent.subgroup_group(self.members)

    def conjugate(self, g: int) -> "Subgroup":
        return Subgroup(self.parent, tuple(self.parent.conj(g, x) for x in self.members))


@dataclass(frozen=True, eq=False)
class GroupHomomorphism:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]
    # set on homomorphisms between direct products built factorwise
    factors: tuple["GroupHomomorphism", "GroupHomomorphism"] | None = None

    def __call__(self, x: int) -> int:
        return self.images[x]

    def verify(self) -> tuple[bool, tuple[int, int] | None]:
        """Check multiplicativity on every pair; return the first violating pair."""
        return verify_homomorphism(self)

    @cached_property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @cached_property
    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def then(self, other: "GroupHomomorphism") -> "GroupHomomorphism":
        """Composite ``other ∘ self``."""
        if other.source is not self.target:
            raise ValueError("homomorphisms are not composable")
        return GroupHomomorphism(self.source, other.target,
                                 tuple(other.images[x] for x in self.images))

    def __eq__(self, other):
        if not isinstance(other, GroupHomomorphism):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and self.images == other.images)

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.images))


# -- construction ---------------------------------------------------------------

def _is_permutation(g) -> bool:
    return isinstance(g, (list, tuple)) and all(isinstance(v, int) for v in g)


def _int_det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def normalize_generator(g):
    """Return ``(kind, hashable element)`` for a raw generator; rejects non-invertible ones."""
    if _is_permutation(g):
        perm = tuple(g)
        if sorted(perm) != list(range(len(perm))):
            raise NonInvertibleGenerator(f"not a bijection: {list(perm)}")
        return "perm", perm
    rows = [tuple(int(v) for v in row) for row in g]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonInvertibleGenerator("matrix generator is not square")
    if abs(_int_det(rows)) != 1:
        raise NonInvertibleGenerator(f"matrix has determinant {_int_det(rows)}, not ±1")
    return "matrix", tuple(rows)


def _compose_perm(p, q):
    return tuple(p[i] for i in q)


def _compose_matrix(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def close_generators(gens: Sequence, cap: int = DEFAULT_GROUP_CAP, *, name: str = "",
                     degree: int | None = None) -> FiniteGroup:
    """Close a list of permutations or square integer matrices into a group.

    Permutations are tuples in one-line notation on ``0..n-1`` and compose
    as functions, ``(p*q)[i] = p[q[i]]``.  ``degree`` fixes the point count
    or matrix size when ``gens`` is empty (defaults to the trivial group on
    one point).

    Raises ``ClosureExceedsCap`` once more than ``cap`` elements appear.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    normalized = [normalize_generator(g) for g in gens]
    kinds = {k for k, _ in normalized}
    if len(kinds) > 1:
        raise NonInvertibleGenerator("mixed permutation and matrix generators")
    kind = kinds.pop() if kinds else "perm"
    elems = [e for _, e in normalized]
    if kind == "perm":
        n = len(elems[0]) if elems else (degree or 1)
        if any(len(e) != n for e in elems):
            raise NonInvertibleGenerator("permutations of different degrees")
        identity = tuple(range(n))
        compose = _compose_perm
    else:
        n = len(elems[0])
        if any(len(e) != n for e in elems):
            raise NonInvertibleGenerator("matrices of different sizes")
        identity = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        compose = _compose_matrix

    index = {identity: 0}
    labels = [identity]
    parent = [(-1, -1)]
    right: list[list[int]] = []
    gen_index: list[int] = []
    i = 0
    while i < len(labels):
        row = []
        for pos, s in enumerate(elems):
            y = compose(labels[i], s)
            j = index.get(y)
            if j is None:
                j = len(labels)
                if j >= cap:
                    raise ClosureExceedsCap(
                        f"closure of {name or 'generators'} exceeds cap {cap}")
                index[y] = j
                labels.append(y)
                parent.append((i, pos))
            row.append(j)
        right.append(row)
        i += 1
    gen_index = [index[s] for s in elems]

    size = len(labels)
    mul = [[0] * size for _ in range(size)]
    for a in range(size):
        row = mul[a]
        row[0] = a
        for b in range(1, size):
            p, pos = parent[b]
            row[b] = right[row[p]][pos]
    origin = "perm" if kind == "perm" else "matrix"
    return FiniteGroup(mul, gen_index, origin=origin, labels=labels, name=name)


def _greedy_generators(mul: Sequence[Sequence[int]]) -> list[int]:
    """Scan elements in index order, keeping those not yet generated."""
    n = len(mul)
    gens: list[int] = []
    generated = {0}
    for x in range(1, n):
        if x in generated:
            continue
        gens.append(x)
        generated = _closure_of(mul, generated | {x})
        if len(generated) == n:
            break
    return gens


def _closure_of(mul, seed: set[int]) -> set[int]:
    members = set(seed) | {0}
    frontier = list(members)
    gens = list(seed)
    while frontier:
        new = []
        for a in frontier:
            for s in gens:
                c = mul[a][s]
                if c not in members:
                    members.add(c)
                    new.append(c)
        frontier = new
    return members


def group_from_table(table: Sequence[Sequence[int]], *, name: str = "") -> FiniteGroup:
    """Validate an explicit multiplication table (identity at index 0).

    Associativity is checked with Light's test over a generating set, which
    is equivalent to the exhaustive check.
    """
    n = len(table)
    if n == 0:
        raise ComplexSyntaxError(f"group {name}: empty multiplication table")
    rows = [tuple(int(v) for v in row) for row in table]
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ComplexSyntaxError(f"group {name}: row {i} has {len(row)} entries, expected {n}")
        if sorted(row) != list(range(n)):
            raise ComplexSyntaxError(f"group {name}: row {i} is not a permutation of 0..{n - 1}")
    if list(rows[0]) != list(range(n)) or any(rows[i][0] != i for i in range(n)):
        raise ComplexSyntaxError(f"group {name}: element 0 is not the identity")
    for j in range(n):
        if sorted(rows[i][j] for i in range(n)) != list(range(n)):
            raise ComplexSyntaxError(f"group {name}: column {j} is not a permutation")
    gens = _greedy_generators(rows)
    for s in gens:
        for x in range(n):
            xs = rows[x][s]
            for y in range(n):
                if rows[xs][y] != rows[x][rows[s][y]]:
                    raise ComplexSyntaxError(f"group {name}: table is not associative")
    return FiniteGroup(rows, gens, origin="table", name=name)


def cyclic_group(n: int, name: str = "") -> FiniteGroup:
    """C_n generated by the n-cycle; element ``k`` is the k-th power."""
    if n == 1:
        return close_generators([], name=name or "C1")
    return close_generators([tuple((i + 1) % n for i in range(n))], cap=max(n, 1),
                            name=name or f"C{n}")


def dihedral_group(n: int, name: str = "") -> FiniteGroup:
    """Dihedral group with 2n elements acting on an n-gon."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return close_generators([rot, ref], cap=2 * n, name=name or f"D{n}")


def symmetric_group(n: int, name: str = "") -> FiniteGroup:
    gens = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else []
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    return close_generators(gens, cap=math.factorial(n), name=name or f"S{n}", degree=n)


# -- interrogation ------------------------------------------------------------------

def conjugacy_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    """Classes ordered by representative order, then minimal element index.

    The representative of a class is its minimal element index, so the
    identity class comes first.
    """
    seen = [False] * G.order
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        members = sorted({G.conj(g, x) for g in range(G.order)})
        for m in members:
            seen[m] = True
        classes.append(ConjugacyClass(members[0], tuple(members)))
    orders = G.element_orders
    classes.sort(key=lambda c: (orders[c.representative], c.representative))
    return classes


def verify_homomorphism(h: GroupHomomorphism) -> tuple[bool, tuple[int, int] | None]:
    s, t, im = h.source, h.target, h.images
    if len(im) != s.order or any(not 0 <= y < t.order for y in im):
        return False, None
    if im[0] != 0:
        return False, (0, 0)
    smul, tmul = s.mul, t.mul
    for a in range(s.order):
        ia = im[a]
        row = smul[a]
        trow = tmul[ia]
        for b in range(s.order):
            if im[row[b]] != trow[im[b]]:
                return False, (a, b)
    return True, None


def homomorphism_from_generator_images(source: FiniteGroup, target: FiniteGroup,
                                       gen_images: Sequence[int]) -> GroupHomomorphism:
    """Extend generator images along the source's generator words and verify.

    Raises ``BadHomomorphism`` (carrying the first violating pair) when the
    images do not define a homomorphism.
    """
    if len(gen_images) != len(source.gens):
        raise BadHomomorphism(
            f"{len(gen_images)} generator images for {len(source.gens)} generators")
    images = [0] * source.order
    for x, word in enumerate(source.words):
        y = 0
        for pos in word:
            y = target.mul[y][gen_images[pos]]
        images[x] = y
    h = GroupHomomorphism(source, target, tuple(images))
    ok, pair = h.verify()
    if not ok:
        raise BadHomomorphism(
            f"generator images do not define a homomorphism {source.name} -> {target.name}"
            f" (violating pair {pair})", pair=pair)
    return h


def identity_hom(G: FiniteGroup) -> GroupHomomorphism:
    return GroupHomomorphism(G, G, tuple(range(G.order)))


def conjugation_hom(G: FiniteGroup, g: int) -> GroupHomomorphism:
    """Inner automorphism x -> g x g^-1."""
    return GroupHomomorphism(G, G, tuple(G.conj(g, x) for x in range(G.order)))


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: int | None = None, *,
                   name: str = "") -> tuple[FiniteGroup, GroupHomomorphism, GroupHomomorphism]:
    """G × H with (a, b) at index a·|H| + b, plus both projections."""
    n, m = G.order, H.order
    if cap is not None and n * m > cap:
        raise ClosureExceedsCap(f"product of orders {n} and {m} exceeds cap {cap}")
    mul = [[G.mul[a][c] * m + H.mul[b][d] for c in range(n) for d in range(m)]
           for a in range(n) for b in range(m)]
    gens = [g * m for g in G.gens] + [h for h in H.gens]
    labels = None
    if G.labels is not None and H.labels is not None:
        labels = [(x, y) for x in G.labels for y in H.labels]
    P = FiniteGroup(mul, gens, origin="product", labels=labels,
                    name=name or f"{G.name}x{H.name}", factors=(G, H))
    p1 = GroupHomomorphism(P, G, tuple(i // m for i in range(n * m)))
    p2 = GroupHomomorphism(P, H, tuple(i % m for i in range(n * m)))
    return P, p1, p2


def product_hom(f: GroupHomomorphism, g: GroupHomomorphism, source: FiniteGroup,
                target: FiniteGroup) -> GroupHomomorphism:
    """f × g between already-built products ``source`` and ``target``."""
    m_s, m_t = g.source.order, g.target.order
    images = tuple(f.images[i // m_s] * m_t + g.images[i % m_s] for i in range(source.order))
    return GroupHomomorphism(source, target, images, factors=(f, g))


def subgroup_generated(G: FiniteGroup, indices: Iterable[int]) -> Subgroup:
    return Subgroup(G, tuple(_closure_of(G.mul, set(indices))))


def centralizer(G: FiniteGroup, S: Subgroup | Iterable[int]) -> Subgroup:
    members = S.members if isinstance(S, Subgroup) else tuple(S)
    mul = G.mul
    return Subgroup(G, tuple(g for g in range(G.order)
                             if all(mul[g][x] == mul[x][g] for x in members)))


def normalizer(G: FiniteGroup, S: Subgroup) -> Subgroup:
    s = S.member_set
    return Subgroup(G, tuple(g for g in range(G.order)
                             if all(G.conj(g, x) in s for x in S.members)))


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by order then member tuple.

    Subgroups are joined from cyclic ones until nothing new appears; fine
    for the few-dozen-element groups this package targets.
    """
    cached = getattr(G, "_all_subgroups", None)
    if cached is not None:
        return cached
    mul = G.mul
    cyclic: dict[frozenset, int] = {}
    for x in range(G.order):
        members = frozenset(_closure_of(mul, {x}))
        cyclic.setdefault(members, x)
    found: dict[frozenset, tuple[int, ...]] = {m: (x,) for m, x in cyclic.items()}
    queue = deque(found)
    cyclic_items = list(cyclic.items())
    while queue:
        s = queue.popleft()
        gens = found[s]
        for c, x in cyclic_items:
            if c <= s:
                continue
            joined = frozenset(_closure_of(mul, set(gens) | {x}))
            if joined not in found:
                found[joined] = gens + (x,)
                queue.append(joined)
    subs = [Subgroup(G, tuple(sorted(m))) for m in found]
    subs.sort(key=lambda S: (S.order, S.members))
    G._all_subgroups = subs  # type: ignore[attr-defined]
    return subs


def subgroup_classes(G: FiniteGroup) -> list[list[Subgroup]]:
    """Conjugacy classes of subgroups, ordered by order then canonical representative.

    Within a class the canonical representative (listed first) is the one
    with the smallest sorted member tuple.
    """
    cached = getattr(G, "_subgroup_classes", None)
    if cached is not None:
        return cached
    remaining = {S.members: S for S in all_subgroups(G)}
    classes = []
    for S in all_subgroups(G):
        if S.members not in remaining:
            continue
        conj = {}
        for g in range(G.order):
            T = S.conjugate(g)
            conj[T.members] = remaining.pop(T.members, T)
        members = sorted(conj.values(), key=lambda T: T.members)
        classes.append(members)
    classes.sort(key=lambda cls: (cls[0].order, cls[0].members))
    G._subgroup_classes = classes  # type: ignore[attr-defined]
    return classes


def subgroup_class_index(G: FiniteGroup, members: Iterable[int]) -> int:
    key = tuple(sorted(set(members)))
    lookup = getattr(G, "_subgroup_class_lookup", None)
    if lookup is None:
        lookup = {S.members: i for i, cls in enumerate(subgroup_classes(G)) for S in cls}
        G._subgroup_class_lookup = lookup  # type: ignore[attr-defined]
    try:
        return lookup[key]
    except KeyError:
        raise ValueError(f"{list(key)} is not a subgroup of {G.name}") from None


def quotient_group(G: FiniteGroup, N: Subgroup, *, name: str = "") -> tuple[FiniteGroup, GroupHomomorphism]:
    """G/N for a normal subgroup N, with cosets numbered by their least element."""
    n = N.member_set
    if any(G.conj(g, x) not in n for g in range(G.order) for x in N.members):
        raise ValueError("subgroup is not normal")
    coset_of = {}
    reps = []
    for g in range(G.order):
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for x in N.members:
            coset_of[G.mul[g][x]] = idx
    mul = [[coset_of[G.mul[a][b]] for b in reps] for a in reps]
    gens = []
    for s in G.gens:
        c = coset_of[s]
        if c != 0 and c not in gens:
            gens.append(c)
    Q = FiniteGroup(mul, gens, origin="quotient", name=name or f"{G.name}/{N.order}")
    pi = GroupHomomorphism(G, Q, tuple(coset_of[g] for g in range(G.order)))
    return Q, pi


def double_coset_representatives(G: FiniteGroup, K: Subgroup, H: Subgroup) -> list[int]:
    """Minimal representatives g of the double cosets K g H, in increasing order."""
    seen = set()
    reps = []
    for g in range(G.order):
        if g in seen:
            continue
        reps.append(g)
        for k in K.members:
            kg = G.mul[k][g]
            for h in H.members:
                seen.add(G.mul[kg][h])
    return reps


def isomorphism_label(G: FiniteGroup) -> str:
    """Best-effort name (C_n, D_n, S4, …) for display only."""
    n = G.order
    if n == 1:
        return "1"
    exp = G.exponent
    k = len(G.conjugacy_classes)
    if G.is_abelian:
        if exp == n:
            return f"C{n}"
        if exp == 2:
            return " x ".join(["C2"] * (n.bit_length() - 1))
        return f"abelian({n}, exp {exp})"
    if n == 24 and exp == 12 and k == 5:
        return "S4"
    if n % 2 == 0:
        m = n // 2
        dihedral_classes = (m + 6) // 2 if m % 2 == 0 else (m + 3) // 2
        if k == dihedral_classes and exp == math.lcm(m, 2):
            involutions = sum(1 for o in G.element_orders if o == 2)
            if involutions == (m + 1 if m % 2 == 0 else m):
                return f"D{m}"
    return f"group({n})"
