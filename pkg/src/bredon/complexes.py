"""Proper G-CW complexes given by cell orbits, stabilizers and incidences.

The ambient (possibly infinite) group never appears.  Each cell orbit
records its finite stabilizer, and each incidence between an n-cell and an
(n-1)-cell carries a signed multiplicity plus an explicit injective
homomorphism between the two stabilizers.

The text format (``.gcw``) is documented in the README; ``parse_complex``
and ``serialize`` round-trip on canonical form.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable

from .coefficients import CentralExtensionData, CoefficientSystem
from .errors import (
    BadHomomorphism,
    BredonError,
    CoefficientError,
    ComplexSyntaxError,
    DimensionMismatch,
    ParseError,
    UnknownCell,
    UnknownGroup,
)
from .groups import (
    DEFAULT_GROUP_CAP,
    FiniteGroup,
    GroupHomomorphism,
    close_generators,
    direct_product,
    group_from_table,
    homomorphism_from_generator_images,
    identity_hom,
    normalize_generator,
    product_hom,
)

GROUP_KINDS = ("perm", "matrix", "table")


@dataclass(frozen=True)
class GroupSource:
    """How a group was written in the file, kept for serialization."""
    kind: str
    data: tuple[tuple[int, ...], ...]  # generator lines, or table rows


@dataclass(frozen=True)
class CellOrbit:
    id: str
    dim: int
    stabilizer: FiniteGroup
    stab_name: str
    orientation: str | None = None


@dataclass(frozen=True)
class Incidence:
    source: str  # the n-cell
    target: str  # the (n-1)-cell
    coeff: int
    hom: GroupHomomorphism


@dataclass
class EquivariantCellComplex:
    name: str
    cells: list[CellOrbit]
    incidences: list[Incidence]
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    extensions: dict[str, CentralExtensionData] = field(default_factory=dict)
    group_sources: dict[str, GroupSource] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        self._by_id = {c.id: c for c in self.cells}
        if len(self._by_id) != len(self.cells):
            raise ComplexSyntaxError("duplicate cell ids")
        for c in self.cells:
            self.groups.setdefault(c.stab_name, c.stabilizer)

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def cell(self, cell_id: str) -> CellOrbit:
        try:
            return self._by_id[cell_id]
        except KeyError:
            raise UnknownCell(f"unknown cell {cell_id!r}") from None

    def cells_in_dim(self, n: int) -> list[CellOrbit]:
        return [c for c in self.cells if c.dim == n]

    def incidences_from_dim(self, n: int) -> list[Incidence]:
        return [i for i in self.incidences if self._by_id[i.source].dim == n]

    def extension_map(self) -> dict[FiniteGroup, CentralExtensionData]:
        return {self.groups[name]: ext for name, ext in self.extensions.items()}

    def with_coefficient(self, index: int, coeff: int) -> "EquivariantCellComplex":
        """Copy with one incidence coefficient replaced (used to build counterexamples)."""
        inc = list(self.incidences)
        old = inc[index]
        inc[index] = Incidence(old.source, old.target, coeff, old.hom)
        return EquivariantCellComplex(self.name, list(self.cells), inc, dict(self.groups),
                                      dict(self.extensions), dict(self.group_sources), list(self.notes))


# -- words ---------------------------------------------------------------------------

_WORD_FACTOR = re.compile(r"^g(\d+)(?:\^(-?\d+))?$")


def parse_word(word: str, G: FiniteGroup, line: int | None = None) -> int:
    """Evaluate ``e`` or ``g1*g2^-1*g1^3`` (1-based generator positions) in G."""
    if word == "e":
        return 0
    x = 0
    for part in word.split("*"):
        m = _WORD_FACTOR.match(part)
        if not m:
            raise ComplexSyntaxError(f"bad word factor {part!r}", line)
        pos = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if not 1 <= pos <= len(G.gens):
            raise BadHomomorphism(f"{G.name} has no generator g{pos}", line)
        x = G.mul[x][G.power(G.gens[pos - 1], exp)]
    return x


def format_word(G: FiniteGroup, x: int) -> str:
    """Shortest generator word for x, with runs compressed (``g1^3*g2``)."""
    word = G.words[x]
    if not word:
        return "e"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        parts.append(f"g{word[i] + 1}" + (f"^{run}" if run > 1 else ""))
        i = j
    return "*".join(parts)


# -- parsing -------------------------------------------------------------------------

def _ints(tokens: list[str], line: int) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise ComplexSyntaxError(f"expected integers, got {' '.join(tokens)!r}", line) from None


def _keyvals(tokens: list[str], line: int, required: Iterable[str], optional: Iterable[str] = ()) -> dict:
    out = {}
    allowed = set(required) | set(optional)
    for t in tokens:
        if "=" not in t:
            raise ComplexSyntaxError(f"expected key=value, got {t!r}", line)
        k, v = t.split("=", 1)
        if k not in allowed:
            raise ComplexSyntaxError(f"unknown key {k!r}", line)
        if k in out:
            raise ComplexSyntaxError(f"duplicate key {k!r}", line)
        out[k] = v
    missing = [k for k in required if k not in out]
    if missing:
        raise ComplexSyntaxError(f"missing {', '.join(missing)}", line)
    return out


def _int_field(value: str, key: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ComplexSyntaxError(f"{key} must be an integer, got {value!r}", line) from None


def _build_group(name: str, kind: str, data: list[tuple[int, ...]], lines: list[int],
                 line: int, cap: int) -> FiniteGroup:
    """Close the generators of one group block; per-generator errors point at their own line."""
    gens = []
    for row, at in zip(data, lines):
        if kind == "matrix":
            n = int(round(len(row) ** 0.5))
            if n * n != len(row) or n == 0:
                raise ComplexSyntaxError(f"group {name}: matrix generator needs n^2 entries, got {len(row)}", at)
            row = [row[i * n:(i + 1) * n] for i in range(n)]
        if kind != "table":
            try:
                normalize_generator(row)
            except ParseError as exc:
                raise type(exc)(f"group {name}: {exc}", at) from None
        gens.append(row)
    try:
        if kind == "table":
            if not data:
                return close_generators([], name=name)
            return group_from_table(data, name=name)
        return close_generators(gens, cap=cap, name=name)
    except ParseError as exc:
        if exc.line is None:
            raise type(exc)(str(exc), line) from None
        raise
    except BredonError as exc:
        exc.args = (f"line {line}: {exc}",)
        raise


def parse_complex(text: str, group_cap: int = DEFAULT_GROUP_CAP) -> EquivariantCellComplex:
    """Parse a ``.gcw`` document; raises the first error with its line number."""
    name = ""
    notes: list[str] = []
    groups_raw: dict[str, dict] = {}
    ext_raw: list[tuple[int, list[str]]] = []
    cells_raw: list[tuple[int, str, dict]] = []
    faces_raw: list[dict] = []
    current_group: dict | None = None
    current_face: dict | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        if not body.strip() and comment.strip().startswith("!"):
            notes.append(comment.strip()[1:].strip())
        tokens = body.split()
        if not tokens:
            continue
        key, args = tokens[0], tokens[1:]
        if key == "complex":
            if len(args) != 1:
                raise ComplexSyntaxError("expected: complex NAME", lineno)
            name = args[0]
            current_group = current_face = None
        elif key == "group":
            if len(args) != 2 or args[1] not in GROUP_KINDS:
                raise ComplexSyntaxError("expected: group NAME perm|matrix|table", lineno)
            if args[0] in groups_raw:
                raise ComplexSyntaxError(f"group {args[0]} declared twice", lineno)
            current_group = {"kind": args[1], "data": [], "lines": [], "line": lineno}
            groups_raw[args[0]] = current_group
            current_face = None
        elif key in ("gen", "row"):
            if current_group is None:
                raise ComplexSyntaxError(f"{key} outside a group block", lineno)
            expected = "row" if current_group["kind"] == "table" else "gen"
            if key != expected:
                raise ComplexSyntaxError(f"{current_group['kind']} groups take {expected} lines", lineno)
            current_group["data"].append(_ints(args, lineno))
            current_group["lines"].append(lineno)
        elif key == "extension":
            if not args:
                raise ComplexSyntaxError("expected: extension GROUP center=... order=n", lineno)
            ext_raw.append((lineno, args))
            current_group = current_face = None
        elif key == "cell":
            if not args:
                raise ComplexSyntaxError("expected: cell ID dim=d stab=GROUP", lineno)
            kv = _keyvals(args[1:], lineno, ("dim", "stab"), ("orient",))
            cells_raw.append((lineno, args[0], kv))
            current_group = current_face = None
        elif key == "face":
            if len(args) < 2:
                raise ComplexSyntaxError("expected: face FROM TO coeff=c", lineno)
            kv = _keyvals(args[2:], lineno, ("coeff",))
            current_face = {"from": args[0], "to": args[1],
                            "coeff": _int_field(kv["coeff"], "coeff", lineno),
                            "homs": {}, "line": lineno}
            faces_raw.append(current_face)
            current_group = None
        elif key == "hom":
            if current_face is None:
                raise ComplexSyntaxError("hom outside a face block", lineno)
            if len(args) != 2:
                raise ComplexSyntaxError("expected: hom K WORD", lineno)
            k = _int_field(args[0], "generator position", lineno)
            if k in current_face["homs"]:
                raise ComplexSyntaxError(f"image of generator {k} given twice", lineno)
            current_face["homs"][k] = (args[1], lineno)
        else:
            raise ComplexSyntaxError(f"unknown directive {key!r}", lineno)

    groups: dict[str, FiniteGroup] = {}
    sources: dict[str, GroupSource] = {}
    for gname, g in groups_raw.items():
        groups[gname] = _build_group(gname, g["kind"], g["data"], g["lines"], g["line"], group_cap)
        sources[gname] = GroupSource(g["kind"], tuple(g["data"]))

    extensions: dict[str, CentralExtensionData] = {}
    for lineno, args in ext_raw:
        gname = args[0]
        if gname not in groups:
            raise UnknownGroup(f"extension of unknown group {gname!r}", lineno)
        if gname in extensions:
            raise ComplexSyntaxError(f"second extension block for {gname}", lineno)
        kv = _keyvals(args[1:], lineno, ("center", "order"))
        G = groups[gname]
        center = kv["center"]
        t = int(center) if center.lstrip("-").isdigit() else parse_word(center, G, lineno)
        ext = CentralExtensionData(G, t, _int_field(kv["order"], "order", lineno))
        try:
            ext.validate()
        except CoefficientError as exc:
            raise ComplexSyntaxError(str(exc), lineno) from None
        extensions[gname] = ext

    cells: list[CellOrbit] = []
    seen: set[str] = set()
    for lineno, cid, kv in cells_raw:
        if cid in seen:
            raise ComplexSyntaxError(f"cell {cid} declared twice", lineno)
        seen.add(cid)
        dim = _int_field(kv["dim"], "dim", lineno)
        if dim < 0:
            raise ComplexSyntaxError("dim must be nonnegative", lineno)
        stab = kv["stab"]
        if stab not in groups:
            raise UnknownGroup(f"cell {cid} uses unknown group {stab!r}", lineno)
        cells.append(CellOrbit(cid, dim, groups[stab], stab, kv.get("orient")))

    by_id = {c.id: c for c in cells}
    incidences: list[Incidence] = []
    for f in faces_raw:
        line = f["line"]
        for end in ("from", "to"):
            if f[end] not in by_id:
                raise UnknownCell(f"face refers to unknown cell {f[end]!r}", line)
        src, dst = by_id[f["from"]], by_id[f["to"]]
        if src.dim != dst.dim + 1:
            raise DimensionMismatch(
                f"face {src.id} (dim {src.dim}) -> {dst.id} (dim {dst.dim}) needs consecutive dimensions", line)
        S, T = src.stabilizer, dst.stabilizer
        ngens = len(S.gens)
        extra = sorted(k for k in f["homs"] if not 1 <= k <= ngens)
        if extra:
            raise BadHomomorphism(f"{src.stab_name} has no generator {extra[0]}", f["homs"][extra[0]][1])
        missing = [k for k in range(1, ngens + 1) if k not in f["homs"]]
        if missing:
            raise BadHomomorphism(f"no image given for generator {missing[0]} of {src.stab_name}", line)
        images = [parse_word(f["homs"][k][0], T, f["homs"][k][1]) for k in range(1, ngens + 1)]
        try:
            hom = homomorphism_from_generator_images(S, T, images)
        except BadHomomorphism as exc:
            raise BadHomomorphism(str(exc), line, exc.pair) from None
        if not hom.is_injective:
            raise BadHomomorphism(f"homomorphism {src.stab_name} -> {dst.stab_name} is not injective", line)
        incidences.append(Incidence(src.id, dst.id, f["coeff"], hom))

    return EquivariantCellComplex(name, cells, incidences, groups, extensions, sources, notes)


def load_complex(path, group_cap: int = DEFAULT_GROUP_CAP) -> EquivariantCellComplex:
    with open(path, encoding="utf-8") as fh:
        return parse_complex(fh.read(), group_cap)


BUNDLED = ("point", "sl2z", "sl3z", "circle_free", "torsion_demo", "sl2z_twisted", "sl2z_trivial_ext")


def bundled_text(name: str) -> str:
    """Text of a bundled dataset, by stem (``sl2z``) or file name (``sl2z.gcw``)."""
    stem = name[:-4] if name.endswith(".gcw") else name
    if stem not in BUNDLED:
        raise ParseError(f"no bundled dataset named {name!r}")
    return (resources.files("bredon") / "data" / f"{stem}.gcw").read_text(encoding="utf-8")


def load_bundled(name: str, group_cap: int = DEFAULT_GROUP_CAP) -> EquivariantCellComplex:
    return parse_complex(bundled_text(name), group_cap)


# -- serialization ----------------------------------------------------------------------

def serialize(X: EquivariantCellComplex) -> str:
    """Canonical ``.gcw`` text for X."""
    out = [f"complex {X.name or 'unnamed'}"]
    for note in X.notes:
        out.append(f"#! {note}")
    for gname, G in X.groups.items():
        src = X.group_sources.get(gname)
        if src is None:
            src = GroupSource("table", G.mul)
        out.append(f"group {gname} {src.kind}")
        word = "row" if src.kind == "table" else "gen"
        for row in src.data:
            out.append(f"{word} " + " ".join(str(v) for v in row))
    for gname, ext in X.extensions.items():
        out.append(f"extension {gname} center={format_word(ext.total, ext.center_gen)} order={ext.n}")
    for c in X.cells:
        orient = f" orient={c.orientation}" if c.orientation else ""
        out.append(f"cell {c.id} dim={c.dim} stab={c.stab_name}{orient}")
    for inc in X.incidences:
        out.append(f"face {inc.source} {inc.target} coeff={inc.coeff}")
        S, T = inc.hom.source, inc.hom.target
        for pos, g in enumerate(S.gens, start=1):
            out.append(f"hom {pos} {format_word(T, inc.hom.images[g])}")
    return "\n".join(out) + "\n"


def to_dict(X: EquivariantCellComplex) -> dict:
    """Plain-data description (JSON-compatible)."""
    return {
        "name": X.name,
        "groups": [{"name": n, "order": G.order, "generators": list(G.gens)} for n, G in X.groups.items()],
        "extensions": [{"group": n, "center": e.center_gen, "order": e.n} for n, e in X.extensions.items()],
        "cells": [{"id": c.id, "dim": c.dim, "stab": c.stab_name, "orient": c.orientation} for c in X.cells],
        "incidences": [{"from": i.source, "to": i.target, "coeff": i.coeff,
                        "generator_images": [i.hom.images[g] for g in i.hom.source.gens]}
                       for i in X.incidences],
    }


# -- validation ----------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


def validate(X: EquivariantCellComplex, system: CoefficientSystem | None = None) -> ValidationReport:
    """Run structural checks plus d∘d = 0 (ConstantZ unless a system is given)."""
    from .homology import assemble_chain, first_nonzero_composite
    from .coefficients import ConstantZ

    checks = []
    for gname, G in X.groups.items():
        ok, msg = G.check_axioms()
        checks.append(CheckResult(f"group {gname} axioms", ok, msg))
    for i, inc in enumerate(X.incidences):
        src, dst = X.cell(inc.source), X.cell(inc.target)
        checks.append(CheckResult(f"incidence {i} dimensions", src.dim == dst.dim + 1,
                                  f"{src.id}:{src.dim} -> {dst.id}:{dst.dim}"))
        ok, pair = inc.hom.verify()
        checks.append(CheckResult(f"incidence {i} homomorphism", ok and inc.hom.is_injective,
                                  "" if ok else f"violating pair {pair}"))
    for gname, ext in X.extensions.items():
        try:
            ext.validate()
            checks.append(CheckResult(f"extension {gname}", True))
        except CoefficientError as exc:
            checks.append(CheckResult(f"extension {gname}", False, str(exc)))
    sysname = (system or ConstantZ()).name
    try:
        chain = assemble_chain(X, system or ConstantZ())
        bad = first_nonzero_composite(chain)
        if bad is None:
            checks.append(CheckResult(f"d∘d = 0 ({sysname})", True))
        else:
            n, row, col, value = bad
            checks.append(CheckResult(
                f"d∘d = 0 ({sysname})", False,
                f"∂_{n - 1}∘∂_{n} has entry {value} from {col} to {row}"))
    except BredonError as exc:
        checks.append(CheckResult(f"d∘d = 0 ({sysname})", False, str(exc)))
    return ValidationReport(checks)


# -- products ----------------------------------------------------------------------------

def product_complex(X: EquivariantCellComplex, Y: EquivariantCellComplex,
                    cap: int = DEFAULT_GROUP_CAP) -> EquivariantCellComplex:
    """X × Y over G × H with the product cell structure.

    ∂(a × b) = ∂a × b + (−1)^{dim a} a × ∂b, with stabilizer homomorphisms
    f × id and id × g.
    """
    products: dict[tuple[str, str], FiniteGroup] = {}
    groups: dict[str, FiniteGroup] = {}

    def stab(a: CellOrbit, b: CellOrbit) -> tuple[str, FiniteGroup]:
        key = (a.stab_name, b.stab_name)
        if key not in products:
            name = f"{a.stab_name}x{b.stab_name}"
            P, _, _ = direct_product(a.stabilizer, b.stabilizer, cap, name=name)
            products[key] = P
            groups[name] = P
        return f"{a.stab_name}x{b.stab_name}", products[key]

    cells = []
    for n in range(X.dim + Y.dim + 1):
        for a in X.cells:
            for b in Y.cells:
                if a.dim + b.dim == n:
                    gname, P = stab(a, b)
                    cells.append(CellOrbit(f"{a.id}*{b.id}", n, P, gname))
    incidences = []
    for a in X.cells:
        for b in Y.cells:
            _, P = stab(a, b)
            for inc in X.incidences:
                if inc.source == a.id:
                    a2 = X.cell(inc.target)
                    _, Q = stab(a2, b)
                    h = product_hom(inc.hom, identity_hom(b.stabilizer), P, Q)
                    incidences.append(Incidence(f"{a.id}*{b.id}", f"{a2.id}*{b.id}", inc.coeff, h))
            sign = -1 if a.dim % 2 else 1
            for inc in Y.incidences:
                if inc.source == b.id:
                    b2 = Y.cell(inc.target)
                    _, Q = stab(a, b2)
                    h = product_hom(identity_hom(a.stabilizer), inc.hom, P, Q)
                    incidences.append(Incidence(f"{a.id}*{b.id}", f"{a.id}*{b2.id}", sign * inc.coeff, h))
    return EquivariantCellComplex(f"{X.name}x{Y.name}", cells, incidences, groups)


# -- Euler data ----------------------------------------------------------------------------

@dataclass(frozen=True)
class EulerData:
    orbit_counts: tuple[int, ...]
    ranks: tuple[int, ...] | None
    alternating_sum: int | None


def euler_data(X: EquivariantCellComplex, system: CoefficientSystem | None = None) -> EulerData:
    counts = defaultdict(int)
    ranks = defaultdict(int)
    for c in X.cells:
        counts[c.dim] += 1
        if system is not None:
            ranks[c.dim] += system.rank(c.stabilizer)
    dims = range(X.dim + 1)
    orbit_counts = tuple(counts[n] for n in dims)
    if system is None:
        return EulerData(orbit_counts, None, None)
    rk = tuple(ranks[n] for n in dims)
    return EulerData(orbit_counts, rk, sum((-1) ** n * r for n, r in enumerate(rk)))

