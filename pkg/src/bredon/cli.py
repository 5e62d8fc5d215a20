"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 validation error or failed check,
3 cap exceeded, 4 coefficient mismatch.  ``--format=machine`` prints JSON
lines: a schema header followed by one record per result.  It contains no
floats and no timings, so identical invocations give identical bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from .ahss import e2_page, k_theory_ranks_if_collapse
from .characters import character_table
from .coefficients import CoefficientSystem, system_from_spec
from .complexes import BUNDLED, EquivariantCellComplex, bundled_text, euler_data, parse_complex, serialize, to_dict, validate
from .errors import BredonError, CheckFailed, CoefficientError, ParseError, UnknownGroup
from .groups import DEFAULT_GROUP_CAP
from .homology import (
    CRITERION_FAILS,
    INCONCLUSIVE,
    TORSION_FREE,
    GradedAbelianGroup,
    assemble_chain,
    bredon_cohomology,
    bredon_homology,
    homology,
    torsion_free_criterion,
)
from .theorems import kunneth_check, untwist_consistency, uct_check

SCHEMA = "bredon-result/1"
DEFAULT_MINOR_CAP = 12


# -- input ----------------------------------------------------------------------------

def read_input(name: str) -> tuple[str, str]:
    """(text, display name); falls back to the bundled datasets for bare names."""
    path = Path(name)
    if path.is_file():
        return path.read_text(encoding="utf-8"), name
    stem = path.name[:-4] if path.name.endswith(".gcw") else path.name
    if stem in BUNDLED and path.parent == Path("."):
        return bundled_text(stem), f"{stem}.gcw"
    raise ParseError(f"cannot read {name!r}: no such file or bundled dataset")


def load(name: str, cap: int) -> tuple[EquivariantCellComplex, str]:
    text, _ = read_input(name)
    return parse_complex(text, cap), hashlib.sha256(text.encode("utf-8")).hexdigest()


def parse_degrees(spec: str | None) -> range | None:
    if spec is None:
        return None
    try:
        if ".." in spec:
            a, b = spec.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(spec)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree range {spec!r}; expected a..b") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty degree range {spec!r}")
    return range(lo, hi + 1)


def resolve_cap(flag: int | None, env: str, default: int) -> int:
    """Flag wins over the environment variable, which wins over the default."""
    if flag is not None:
        return flag
    raw = os.environ.get(env)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise BredonError(f"{env}={raw!r} is not an integer") from None


def make_system(spec: str, X: EquivariantCellComplex, cap: int) -> CoefficientSystem:
    try:
        return system_from_spec(spec, X.extension_map(), cap)
    except ValueError as exc:
        raise CoefficientError(str(exc)) from None


# -- output ---------------------------------------------------------------------------

class Output:
    def __init__(self, fmt: str, command: str, stream=None):
        self.fmt = fmt
        self.command = command
        self.stream = stream or sys.stdout
        self._header_done = False

    def header(self, inputs: list[str], **extra):
        if self.fmt != "machine" or self._header_done:
            return
        rec = {"schema": SCHEMA, "command": self.command, "input_sha256": inputs}
        rec.update(extra)
        self._emit(rec)
        self._header_done = True

    def _emit(self, rec: dict):
        self.stream.write(json.dumps(rec, ensure_ascii=False, separators=(",", ":")) + "\n")

    def record(self, rec: dict):
        if self.fmt == "machine":
            self._emit(rec)

    def text(self, line: str = ""):
        if self.fmt == "text":
            self.stream.write(line + "\n")


def _group_record(kind: str, n: int, g) -> dict:
    return {"type": kind, "degree": n, "free_rank": g.free_rank, "torsion": list(g.torsion)}


# -- commands -------------------------------------------------------------------------

def cmd_homology(args, out: Output, cohomology: bool = False) -> int:
    X, digest = load(args.file, args.group_cap)
    system = make_system(args.coefficients, X, args.group_cap)
    window = parse_degrees(args.degrees)
    inside = None if window is None else [n for n in window if 0 <= n <= X.dim]
    H = (bredon_cohomology if cohomology else bredon_homology)(X, system, inside)
    if window is not None:
        # chains vanish outside 0..dim
        H = GradedAbelianGroup.from_dict({n: H[n] for n in window})
    kind = "cohomology" if cohomology else "homology"
    out.header([digest], coefficients=system.name)
    out.text(f"{kind} of {X.name} with {system.name} coefficients")
    for n, g in H.groups:
        out.record(_group_record(kind, n, g))
        out.text(f"H^{n} = {g}" if cohomology else f"H_{n} = {g}")
    return 0


def cmd_e2(args, out: Output) -> int:
    X, digest = load(args.file, args.group_cap)
    page = e2_page(X, args.group_cap)
    out.header([digest], coefficients="rep")
    for (p, q), g in sorted(page.grid.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        out.record({"type": "e2", "p": p, "q_parity": "odd" if q % 2 else "even",
                    "free_rank": g.free_rank, "torsion": list(g.torsion)})
    out.record({"type": "collapse", "status": page.collapse_status, "notes": list(page.notes)})
    out.text(f"E2 page of {X.name} (K-theory coefficients, rows repeat with period 2)")
    out.text(page.render())
    ranks = k_theory_ranks_if_collapse(page)
    if ranks is not None:
        out.record({"type": "k_ranks", "even": ranks.even, "odd": ranks.odd,
                    "even_torsion": list(ranks.even_torsion), "odd_torsion": list(ranks.odd_torsion),
                    "caveat": ranks.caveat})
        out.text(f"K-theory ranks: even {ranks.even}, odd {ranks.odd}")
        if ranks.even_torsion or ranks.odd_torsion:
            out.text(f"torsion: even {list(ranks.even_torsion)}, odd {list(ranks.odd_torsion)} ({ranks.caveat})")
    return 0


def cmd_check(args, out: Output) -> int:
    X, digest = load(args.file, args.group_cap)
    system = make_system(args.coefficients, X, args.group_cap)
    out.header([digest], coefficients=system.name, check=args.check)
    if args.check == "dsquare":
        report = validate(X, system)
        for c in report.checks:
            out.record({"type": "check", "name": c.name, "passed": c.passed, "detail": c.detail})
            if not c.passed:
                out.text(f"FAIL {c.name}: {c.detail}")
        ok = report.passed
        out.text(f"dsquare: {'pass' if ok else 'fail'}")
        out.record({"type": "summary", "passed": ok})
    elif args.check == "uct":
        report = uct_check(X, system)
        for d in report.degrees:
            out.record({"type": "uct", "degree": d.degree,
                        "homology": {"free_rank": d.homology.free_rank, "torsion": list(d.homology.torsion)},
                        "cohomology": {"free_rank": d.cohomology.free_rank,
                                       "torsion": list(d.cohomology.torsion)},
                        "rank_match": d.rank_match, "torsion_match": d.torsion_match})
            out.text(f"n={d.degree}: H_{d.degree} = {d.homology}, H^{d.degree} = {d.cohomology}, "
                     f"ranks {'match' if d.rank_match else 'differ'}, "
                     f"torsion {'matches' if d.torsion_match else 'differs'}")
        ok = report.overall
        out.text(f"uct: {'pass' if ok else 'fail'}")
        out.record({"type": "summary", "passed": ok})
    elif args.check == "torsionfree":
        chain = assemble_chain(X, system)
        result = torsion_free_criterion(chain, X, args.minor_cap)
        rec = {"type": "torsionfree", "status": result.status, "detail": result.detail}
        if result.witness is not None:
            v, rows, cols, sub, minor = result.witness
            rec["witness"] = {"vertex": v, "rows": list(rows), "columns": list(cols),
                              "submatrix": [list(r) for r in sub], "minor": minor}
        # the criterion only inspects single vertex blocks, so cross-check against the computed H_0
        h0 = homology(chain, [0])[0]
        rec["h0_torsion"] = list(h0.torsion)
        out.record(rec)
        out.text(f"torsionfree: {result.status}" + (f" ({result.detail})" if result.detail else ""))
        out.text(f"computed H_0 = {h0}")
        if result.status == INCONCLUSIVE:
            return 3
        ok = result.status != CRITERION_FAILS
        if result.status == TORSION_FREE and h0.torsion:
            out.text("warning: the vertex-block criterion holds but H_0 has torsion")
            ok = False
    elif args.check == "untwist":
        report = untwist_consistency(X, args.k)
        out.record({"type": "untwist", "k": report.k, "n": report.n, "dsquare": report.dsquare_ok,
                    "uct": report.uct.overall, "comparisons": dict(sorted(report.comparisons.items()))})
        for n, g in report.cohomology.groups:
            out.record(_group_record("cohomology", n, g))
            out.text(f"H^{n} = {g}")
        for name, val in sorted(report.comparisons.items()):
            out.text(f"{name}: {'yes' if val else 'no'}")
        ok = report.overall
        out.text(f"untwist (k={report.k}, n={report.n}): {'pass' if ok else 'fail'}")
    else:  # pragma: no cover - argparse restricts choices
        raise CheckFailed(f"unknown check {args.check}")
    return 0 if ok else 2


def cmd_kunneth(args, out: Output) -> int:
    X, dx = load(args.file_a, args.group_cap)
    Y, dy = load(args.file_b, args.group_cap)
    M = make_system(args.coefficients, X, args.group_cap)
    N = make_system(args.coefficients_b or args.coefficients, Y, args.group_cap)
    report = kunneth_check(X, Y, M, N, args.group_cap)
    out.header([dx, dy], coefficients=[M.name, N.name])
    for d in report.degrees:
        out.record({"type": "kunneth", "degree": d.degree,
                    "predicted": {"free_rank": d.predicted.free_rank, "torsion": list(d.predicted.torsion)},
                    "computed": {"free_rank": d.computed.free_rank, "torsion": list(d.computed.torsion)},
                    "match": d.match})
        out.text(f"n={d.degree}: predicted {d.predicted}, computed {d.computed}"
                 f"{'' if d.match else '  MISMATCH'}")
    out.record({"type": "summary", "passed": report.overall})
    out.text(f"kunneth: {'pass' if report.overall else 'fail'}")
    return 0 if report.overall else 2


def cmd_chartable(args, out: Output) -> int:
    X, digest = load(args.file, args.group_cap)
    names = [args.group] if args.group else list(X.groups)
    out.header([digest])
    for name in names:
        G = X.groups.get(name)
        if G is None:
            raise UnknownGroup(f"no group named {name!r}")
        table = character_table(G, args.group_cap)
        out.record({"type": "chartable", "group": name, "order": G.order,
                    "class_representatives": [c.representative for c in table.classes],
                    "class_sizes": [c.size for c in table.classes],
                    "characters": [[str(v) for v in chi.values] for chi in table.irreducibles]})
        out.text(f"{name} (order {G.order})")
        out.text(table.format())
        out.text()
    return 0


def cmd_show(args, out: Output) -> int:
    X, digest = load(args.file, args.group_cap)
    out.header([digest])
    out.record({"type": "complex", **to_dict(X)})
    if out.fmt == "text":
        if args.canonical:
            out.stream.write(serialize(X))
            return 0
        ed = euler_data(X)
        out.text(f"complex {X.name}, dimension {X.dim}")
        out.text("orbits per dimension: " + ", ".join(str(c) for c in ed.orbit_counts))
        for c in X.cells:
            out.text(f"  {c.id}: dim {c.dim}, stabilizer {c.stab_name} of order {c.stabilizer.order}")
        for note in X.notes:
            out.text(f"note: {note}")
    return 0


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--group-cap", type=int, default=None,
                        help=f"largest group order handled (env BREDON_GROUP_CAP, default {DEFAULT_GROUP_CAP})")
    common.add_argument("--minor-cap", type=int, default=None,
                        help=f"largest vertex block for the minor test (env BREDON_MINOR_CAP, "
                             f"default {DEFAULT_MINOR_CAP})")
    common.add_argument("--timing", action="store_true", help="print elapsed time to stderr")

    coeff = argparse.ArgumentParser(add_help=False)
    coeff.add_argument("--coefficients", default="rep",
                       help="constant, rep, burnside or kcentral:<k> (default rep)")

    p = argparse.ArgumentParser(prog="bredon", description="Bredon homology of proper G-CW complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    for name in ("homology", "cohomology"):
        s = sub.add_parser(name, parents=[common, coeff], help=f"Bredon {name}")
        s.add_argument("file")
        s.add_argument("--degrees", help="degree range a..b")

    s = sub.add_parser("e2", parents=[common], help="E2 page of the K-theory spectral sequence")
    s.add_argument("file")

    s = sub.add_parser("check", parents=[common, coeff], help="run a structural check")
    s.add_argument("file")
    s.add_argument("check", choices=("dsquare", "uct", "torsionfree", "untwist"))
    s.add_argument("--k", type=int, default=1, help="central character index for untwist")

    s = sub.add_parser("kunneth", parents=[common, coeff], help="compare X x Y with the Künneth formula")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--coefficients-b", default=None, help="system for the second factor")

    s = sub.add_parser("chartable", parents=[common], help="character tables of the groups in a file")
    s.add_argument("file")
    s.add_argument("--group", default=None)

    s = sub.add_parser("show", parents=[common], help="summarize a complex")
    s.add_argument("file")
    s.add_argument("--canonical", action="store_true", help="print the canonical .gcw form")
    return p


COMMANDS = {
    "homology": lambda a, o: cmd_homology(a, o, False),
    "cohomology": lambda a, o: cmd_homology(a, o, True),
    "e2": cmd_e2,
    "check": cmd_check,
    "kunneth": cmd_kunneth,
    "chartable": cmd_chartable,
    "show": cmd_show,
}


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        args.group_cap = resolve_cap(args.group_cap, "BREDON_GROUP_CAP", DEFAULT_GROUP_CAP)
        args.minor_cap = resolve_cap(args.minor_cap, "BREDON_MINOR_CAP", DEFAULT_MINOR_CAP)
        if args.command in ("homology", "cohomology"):
            try:
                parse_degrees(args.degrees)
            except argparse.ArgumentTypeError as exc:
                parser.error(str(exc))  # exits 2 like any usage error
        out = Output(args.format, args.command, stdout)
        code = COMMANDS[args.command](args, out)
    except BredonError as exc:
        stderr.write(f"error: {exc}\n")
        return exc.exit_code
    if args.timing:
        stderr.write(f"elapsed {time.perf_counter() - start:.3f}s\n")
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
