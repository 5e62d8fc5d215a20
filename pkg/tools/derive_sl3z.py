"""Derive the SL3(Z) cell data (incidences, signs, stabilizer maps) from geometry.

The quotient cell structure comes from a fundamental polyhedron inside
the space of positive definite ternary forms

    [[2, z, y], [z, 2, x], [y, x, 2]]  <->  (x, y, z),

with SL3(Z) acting by A -> g^T A g.  Stabilizer generators per cell are
the standard ones (matrices g1..g14).  What is *derived* here:

* which cell orbit each face of a representative belongs to, and an
  element x of SL3(Z) carrying the orbit representative onto that face
  (searched among matrices with entries in {-1, 0, 1});
* the stabilizer homomorphism y -> x y x^-1 into the representative's
  stabilizer;
* the incidence sign, by transporting a fixed orientation of each
  representative along x and comparing with the boundary orientation.

Orientations live on the cones spanned by the vertex forms (6-dimensional
vectors), so the positive-scalar ambiguity of the projective picture
never matters.  A k-cell is oriented by its first k+1 linearly
independent vertices; the boundary orientation of a face F of c is the
one for which (outward vector, frame of F) is positive in c, with
outward vector minus the barycentre of c.

Usage:  python tools/derive_sl3z.py [output path]
"""

from __future__ import annotations

import itertools
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from bredon.complexes import format_word  # noqa: E402
from bredon.groups import close_generators  # noqa: E402

F = Fraction

GENERATORS = {
    1: ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    2: ((-1, 0, 0), (0, 0, -1), (0, -1, 0)),
    3: ((0, 0, 1), (0, 1, 0), (-1, 0, 0)),
    4: ((-1, 0, 0), (0, 1, 1), (0, 0, -1)),
    5: ((-1, 0, 0), (0, 0, 1), (0, 1, 0)),
    6: ((0, -1, 0), (-1, 0, 0), (0, 0, -1)),
    7: ((0, 0, -1), (-1, 0, 0), (1, 1, 1)),
    8: ((-1, 0, 0), (0, 1, 0), (0, -1, -1)),
    9: ((0, 0, -1), (-1, 0, -1), (0, 1, 1)),
    10: ((0, 0, -1), (0, -1, 0), (-1, 0, 0)),
    11: ((-1, 0, 0), (0, -1, 0), (1, 1, 1)),
    12: ((0, -1, -1), (0, -1, 0), (-1, 1, 0)),
    13: ((0, 1, 1), (1, 0, 1), (0, 0, -1)),
    14: ((-1, 0, 0), (-1, 0, -1), (1, -1, 0)),
}

POINTS = {
    "O": (0, 0, 0),
    "Q": (1, 0, 0),
    "M": (1, 1, 1),
    "N": (1, 1, F(1, 2)),
    "M'": (1, 1, 0),
    "N'": (1, F(1, 2), F(-1, 2)),
    "P": (F(2, 3), F(2, 3), F(-2, 3)),
}
VERTEX_ORDER = ["O", "Q", "M", "M'", "N", "N'", "P"]

# orbit representatives: (dimension, vertices, stabilizer generators)
# The 2-cell with stabilizer <g12, g14> is M'N'P: those generators fix
# M', N' and P but not M.
CELLS = {
    "v1": (0, ["O"], [2, 3]),
    "v2": (0, ["Q"], [4, 5]),
    "v3": (0, ["M"], [6, 7]),
    "v4": (0, ["N"], [6, 8]),
    "v5": (0, ["P"], [5, 9]),
    "e1": (1, ["O", "Q"], [2, 5]),
    "e2": (1, ["O", "M"], [6, 10]),
    "e3": (1, ["O", "P"], [6, 5]),
    "e4": (1, ["Q", "M"], [2]),
    "e5": (1, ["Q", "N'"], [5]),
    "e6": (1, ["M", "N"], [6, 11]),
    "e7": (1, ["M'", "P"], [6, 12]),
    "e8": (1, ["N'", "P"], [5, 13]),
    "t1": (2, ["O", "Q", "M"], [2]),
    "t2": (2, ["Q", "M'", "N"], [1]),
    "t3": (2, ["M'", "N'", "P"], [12, 14]),
    "t4": (2, ["O", "Q", "N'", "P"], [5]),
    "t5": (2, ["O", "M", "N", "M'", "P"], [6]),
    "T1": (3, ["O", "Q", "M", "N", "M'", "N'", "P"], [1]),
}

# faces of each representative, as vertex lists
FACES = {
    "T1": [["O", "Q", "M"], ["O", "Q", "N'", "P"], ["O", "M", "N", "M'", "P"], ["M'", "N'", "P"],
           ["Q", "M", "N"], ["Q", "N", "M'"], ["Q", "M'", "N'"]],
}
POLYGONS = {"t1": ["O", "Q", "M"], "t2": ["Q", "M'", "N"], "t3": ["M'", "N'", "P"],
            "t4": ["O", "Q", "N'", "P"], "t5": ["O", "M", "N", "M'", "P"]}
for name, cyc in POLYGONS.items():
    FACES[name] = [[cyc[i], cyc[(i + 1) % len(cyc)]] for i in range(len(cyc))]
for name, (dim, verts, _) in CELLS.items():
    if dim == 1:
        FACES[name] = [[v] for v in verts]


# -- linear algebra over Q ---------------------------------------------------------------

def mat_mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def transpose(a):
    return tuple(zip(*a))


def det3(a):
    return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))


def inverse_unimodular(a):
    d = det3(a)
    adj = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            minor = [[a[r][c] for c in range(3) if c != j] for r in range(3) if r != i]
            adj[j][i] = (-1) ** (i + j) * (minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0])
    return tuple(tuple(v // d for v in row) for row in adj)


def form(point):
    x, y, z = (F(c) for c in point)
    return ((F(2), z, y), (z, F(2), x), (y, x, F(2)))


def act(A, g):
    return mat_mul(mat_mul(transpose(g), A), g)


def vec(A):
    return (A[0][0], A[1][1], A[2][2], A[0][1], A[0][2], A[1][2])


def ray_key(A):
    """Normalise a positive definite form up to positive scalars."""
    t = A[0][0] + A[1][1] + A[2][2]
    return tuple(v / t for v in vec(A))


def solve_coordinates(basis, v):
    """Coordinates of v in the span of ``basis`` (exact); raises if v is outside."""
    k = len(basis)
    rows = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(6)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, 6) if rows[i][c] != 0), None)
        if p is None:
            raise ValueError("degenerate frame")
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(6):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, 6)):
        raise ValueError("vector outside the span")
    return [rows[i][k] for i in range(k)]


def det(m):
    m = [list(r) for r in m]
    n = len(m)
    d = F(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return F(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d


def rank(vectors):
    m = [list(v) for v in vectors]
    r = 0
    for c in range(6):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(r + 1, len(m)):
            f = m[i][c] / m[r][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def frame(forms, k):
    """First k+1 linearly independent vertex vectors, in the given order."""
    chosen = []
    for A in forms:
        cand = chosen + [vec(A)]
        if rank(cand) == len(cand):
            chosen = cand
        if len(chosen) == k + 1:
            return chosen
    raise ValueError("cell has too few independent vertices")


def sorted_vertices(verts):
    return sorted(verts, key=VERTEX_ORDER.index)


# -- derivation ----------------------------------------------------------------------------

def small_sl3z():
    out = []
    for entries in itertools.product((-1, 0, 1), repeat=9):
        g = (entries[0:3], entries[3:6], entries[6:9])
        if det3(g) == 1:
            out.append(g)
    # identity first, then a fixed order, so the first match is deterministic
    ident = GENERATORS[1]
    out.sort(key=lambda g: (g != ident, sum(abs(v) for row in g for v in row), g))
    return out


def derive():
    groups = {name: close_generators([GENERATORS[i] for i in gens], name=f"G{name}")
              for name, (_, _, gens) in CELLS.items()}
    rep_forms = {name: [form(POINTS[v]) for v in verts] for name, (_, verts, _) in CELLS.items()}
    rep_frames = {name: frame([form(POINTS[v]) for v in sorted_vertices(verts)], CELLS[name][0])
                  for name, (_, verts, _) in CELLS.items()}

    candidates = small_sl3z()
    rep_keys = {name: frozenset(ray_key(A) for A in forms) for name, forms in rep_forms.items()}

    def locate(fverts, dim):
        """Orbit representative of a face and an element carrying it onto the face."""
        key = frozenset(ray_key(form(POINTS[v])) for v in fverts)
        reps = [n for n, (d, verts, _) in CELLS.items() if d == dim and len(verts) == len(fverts)]
        for name in reps:
            if rep_keys[name] == key:
                return name, GENERATORS[1]
        for g in candidates:
            for name in reps:
                if frozenset(ray_key(act(A, g)) for A in rep_forms[name]) == key:
                    return name, g
        raise SystemExit(f"no orbit representative found for face {fverts}")

    incidences = []
    for cname, faces in FACES.items():
        cdim, cverts, cgens = CELLS[cname]
        cframe = rep_frames[cname]
        bary = [sum(v[i] for v in (vec(form(POINTS[p])) for p in cverts)) for i in range(6)]
        outward = [-b for b in bary]
        for fverts in faces:
            rname, x = locate(fverts, cdim - 1)
            # stabilizer map y -> x y x^-1
            xinv = inverse_unimodular(x)
            target = groups[rname]
            lookup = {lab: i for i, lab in enumerate(target.labels)}
            images = []
            for gi in cgens:
                z = mat_mul(mat_mul(x, GENERATORS[gi]), xinv)
                if z not in lookup:
                    raise SystemExit(f"conjugated generator g{gi} of {cname} is not in the stabilizer of {rname}")
                images.append(format_word(target, lookup[z]))
            # sign: transported frame of the representative versus the boundary orientation
            transported = [vec(act(((v[0], v[3], v[4]), (v[3], v[1], v[5]), (v[4], v[5], v[2])), x))
                           for v in rep_frames[rname]]
            coords = [solve_coordinates(cframe, w) for w in [outward] + transported]
            d = det([[c[i] for c in coords] for i in range(cdim + 1)])
            if d == 0:
                raise SystemExit(f"degenerate orientation comparison for {fverts} in {cname}")
            sign = 1 if d > 0 else -1
            incidences.append((cname, rname, sign, images, x, fverts))
    return groups, incidences


def render(groups, incidences) -> str:
    out = [
        "# SL3(Z) acting on the well-rounded retract of the space of positive",
        "# definite ternary forms; one orbit representative per cell.",
        "#! stabilizer generators are the standard matrices g1..g14",
        "#! incidences, signs and stabilizer maps are DERIVED by tools/derive_sl3z.py",
        "#! the 2-cell with stabilizer <g12,g14> is taken to be M'N'P",
        "complex sl3z",
    ]
    for name, (_, _, gens) in CELLS.items():
        out.append(f"group G{name} matrix")
        for gi in gens:
            out.append("gen " + " ".join(str(v) for row in GENERATORS[gi] for v in row) + f"  # g{gi}")
    for name, (dim, verts, _) in CELLS.items():
        label = "".join(v for v in verts)
        out.append(f"cell {name} dim={dim} stab=G{name} orient={label}")
    for cname, rname, sign, images, x, fverts in incidences:
        conj = ";".join(",".join(str(v) for v in row) for row in x)
        out.append(f"# face {''.join(fverts)} of {cname} is {rname} moved by [{conj}]")
        out.append(f"face {cname} {rname} coeff={sign}")
        for pos, word in enumerate(images, start=1):
            out.append(f"hom {pos} {word}")
    return "\n".join(out) + "\n"


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    target = Path(argv[0]) if argv else ROOT / "src" / "bredon" / "data" / "sl3z.gcw"
    groups, incidences = derive()
    text = render(groups, incidences)
    target.write_text(text, encoding="utf-8")
    print(f"wrote {target} ({len(incidences)} incidences)")


if __name__ == "__main__":
    main()
