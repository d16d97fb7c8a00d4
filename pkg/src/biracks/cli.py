"""Command-line front end.

Subcommands: check, retract, convert, enumerate, props, builtin.  Output
is a line-oriented ``key: value`` report, with witnesses rendered in the
input file's index base.  Exit codes: 0 on success, 1 on semantic failure
(invalid structure, failed precondition), 2 on parse or usage errors.
"""

from __future__ import annotations

import argparse
import sys

from .core import Verdict
from .birack import (
    Birack,
    BirackError,
    check_axioms,
    classify,
)
from .retraction import (
    Singleton,
    Stabilized,
    generalized_retraction,
    retraction_tower,
    verify_congruence_bruteforce,
)
from .cycleset import (
    LeftQuasigroup,
    birack_from_cycleset,
    cycleset_from_birack,
    is_nondegenerate,
    is_right_cyclic,
)
from .modes import Groupoid, is_mode, is_quandle
from .constructions import BUILTIN_NAMES, builtin
from . import enumerate as census
from . import structfile

PARSE_ERROR = 2
SEMANTIC_ERROR = 1


def _fmt_witness(witness, base: int) -> str:
    return ",".join(str(v + base) for v in witness)


def _fmt_verdict(v: Verdict | None, base: int) -> str:
    if v is None:
        return "n/a"
    if v.ok:
        return "yes"
    if v.witness is None:
        return "no"
    return f"no (witness {_fmt_witness(v.witness, base)})"


def _fmt_bool(flag: bool) -> str:
    return "yes" if flag else "no"


def _emit(out, key: str, value: str):
    print(f"{key}: {value}", file=out)


def _load(path: str) -> structfile.StructureFile:
    with open(path, "r", encoding="utf-8") as fh:
        return structfile.parse_structure_text(fh.read())


def _classes_text(partition, base: int) -> str:
    return " ".join(
        "{" + ",".join(str(x + base) for x in block) + "}"
        for block in partition.blocks())


def cmd_check(args, out) -> int:
    sf = _load(args.path)
    base = sf.base
    _emit(out, "kind", sf.kind)
    _emit(out, "n", str(sf.n))
    _emit(out, "base", str(base))
    if sf.kind in ("birack", "solution_perms"):
        if sf.kind == "solution_perms":
            b = structfile.to_structure(sf)  # translation perms always validate rows
            circ, bullet = b.circ, b.bullet
        else:
            circ, bullet = sf.table("circ"), sf.table("bullet")
        report = check_axioms(circ, bullet)
        _emit(out, "left_quasigroup", _fmt_verdict(report.left_quasigroup, base))
        _emit(out, "right_quasigroup", _fmt_verdict(report.right_quasigroup, base))
        _emit(out, "b1", _fmt_verdict(report.b1, base))
        _emit(out, "b2", _fmt_verdict(report.b2, base))
        _emit(out, "b3", _fmt_verdict(report.b3, base))
        _emit(out, "birack", _fmt_bool(report.valid_birack))
        if not report.valid_birack:
            return SEMANTIC_ERROR
        inv = report.involutive_l if not report.involutive_l.ok else report.involutive_r
        _emit(out, "involutive",
              "yes" if report.involutive else _fmt_verdict(inv, base))
        sq = (report.idempotent_circ if not report.idempotent_circ.ok
              else report.idempotent_bullet)
        _emit(out, "square_free",
              "yes" if report.square_free else _fmt_verdict(sq, base))
        _emit(out, "biquandle", _fmt_verdict(report.biquandle, base))
        return 0
    if sf.kind == "left_quasigroup":
        op = sf.table("op")
        rows_ok = op.rows_are_permutations()
        _emit(out, "left_quasigroup", _fmt_verdict(rows_ok, base))
        if not rows_ok.ok:
            return SEMANTIC_ERROR
        lq = LeftQuasigroup.from_op(op)
        _emit(out, "idempotent", _fmt_bool(lq.is_idempotent()))
        rc = is_right_cyclic(lq)
        _emit(out, "right_cyclic", _fmt_verdict(rc, base))
        if rc.ok:
            _emit(out, "nondegenerate", _fmt_bool(is_nondegenerate(lq)))
        _emit(out, "quandle", _fmt_verdict(is_quandle(lq), base))
        return 0
    flags = is_mode(Groupoid(sf.table("op")))
    _emit(out, "idempotent", _fmt_verdict(flags.idempotent, base))
    _emit(out, "medial", _fmt_verdict(flags.medial, base))
    _emit(out, "mode", _fmt_bool(flags.is_mode))
    return 0


def cmd_retract(args, out) -> int:
    sf = _load(args.path)
    structure = structfile.to_structure(sf)
    if not isinstance(structure, Birack):
        print("retract requires a birack file", file=sys.stderr)
        return SEMANTIC_ERROR
    base = sf.base
    part = generalized_retraction(structure)
    _emit(out, "kind", sf.kind)
    _emit(out, "n", str(structure.n))
    _emit(out, "base", str(base))
    _emit(out, "classes", _classes_text(part, base))
    verdict = verify_congruence_bruteforce(structure, part)
    _emit(out, "congruence", _fmt_bool(verdict.ok))
    tower = retraction_tower(structure, args.max_steps)
    if len(tower.stages) > 1:
        quotient = tower.stages[1]
        print("quotient_circ:", file=out)
        for row in quotient.circ.cells:
            print(" ".join(str(v + base) for v in row), file=out)
        print("quotient_bullet:", file=out)
        for row in quotient.bullet.cells:
            print(" ".join(str(v + base) for v in row), file=out)
    if args.tower:
        _emit(out, "tower_sizes", " ".join(str(s) for s in tower.sizes))
        terminal = tower.terminal
        if isinstance(terminal, Singleton):
            _emit(out, "terminal", f"level {terminal.level}")
        elif isinstance(terminal, Stabilized):
            _emit(out, "terminal", f"stabilized at size {terminal.size}")
        else:
            _emit(out, "terminal", f"truncated after {terminal.steps} steps")
    return 0


def cmd_convert(args, out) -> int:
    sf = _load(args.path)
    structure = structfile.to_structure(sf)
    if args.to == "cycleset":
        if not isinstance(structure, Birack):
            print("convert --to cycleset requires a birack file", file=sys.stderr)
            return SEMANTIC_ERROR
        flags = classify(structure)
        if not flags.involutive:
            report = check_axioms(structure.circ, structure.bullet)
            bad = (report.involutive_l if not report.involutive_l.ok
                   else report.involutive_r)
            print(f"not involutive (witness {_fmt_witness(bad.witness, sf.base)})",
                  file=sys.stderr)
            return SEMANTIC_ERROR
        cs = cycleset_from_birack(structure)
        print(structfile.serialize(
            structfile.from_left_quasigroup(cs, sf.base, sf.note)), end="", file=out)
        return 0
    if not isinstance(structure, LeftQuasigroup):
        print("convert --to birack requires a left_quasigroup file", file=sys.stderr)
        return SEMANTIC_ERROR
    rc = is_right_cyclic(structure)
    if not rc.ok:
        print(f"not right cyclic (witness {_fmt_witness(rc.witness, sf.base)})",
              file=sys.stderr)
        return SEMANTIC_ERROR
    if not is_nondegenerate(structure):
        print("degenerate: diagonal is not a bijection", file=sys.stderr)
        return SEMANTIC_ERROR
    b = birack_from_cycleset(structure)
    print(structfile.serialize(
        structfile.from_birack(b, sf.base, sf.note, as_perms=True)),
        end="", file=out)
    return 0


def cmd_enumerate(args, out) -> int:
    n = args.n
    filt = census.EnumFilter(
        n,
        require_involutive=args.involutive,
        require_square_free=args.square_free,
    )
    if args.kind == "birack":
        stream = lambda: census.enumerate_biracks(n, filt)
    elif args.kind == "cycleset":
        stream = lambda: census.enumerate_cyclesets(n)
    elif args.kind == "left_quasigroup":
        stream = lambda: census.enumerate_left_quasigroups(n)
    else:
        stream = lambda: census.enumerate_modes(n)
    if args.count_only:
        count = census.count_structures(args.kind, n, filt, jobs=args.jobs)
        _emit(out, "kind", args.kind)
        _emit(out, "n", str(n))
        if args.involutive:
            _emit(out, "involutive", "yes")
        if args.square_free:
            _emit(out, "square_free", "yes")
        _emit(out, "count", str(count))
        return 0
    first = True
    for structure in stream():
        if not first:
            print("---", file=out)
        first = False
        if isinstance(structure, Birack):
            sf = structfile.from_birack(structure)
        elif isinstance(structure, LeftQuasigroup):
            sf = structfile.from_left_quasigroup(structure)
        else:
            sf = structfile.from_groupoid(structure)
        print(structfile.serialize(sf), end="", file=out)
    return 0


def cmd_props(args, out) -> int:
    reports = census.run_all_properties(max_n=args.max_n, jobs=args.jobs)
    ok = True
    for r in reports:
        status = "exhausted" if r.violation is None else f"VIOLATED {r.violation}"
        print(f"prop: {r.name} max_n: {r.max_n} count: {r.count} "
              f"status: {status}", file=out)
        ok = ok and r.violation is None
    _emit(out, "overall", "pass" if ok else "fail")
    return 0 if ok else SEMANTIC_ERROR


def cmd_builtin(args, out) -> int:
    fixture = builtin(args.name)
    structure = fixture.structure
    if isinstance(structure, Birack):
        sf = structfile.from_birack(structure, fixture.base, fixture.note)
    else:
        sf = structfile.from_left_quasigroup(structure, fixture.base, fixture.note)
    print(structfile.serialize(sf), end="", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biracks",
        description="Validate, retract, convert and enumerate finite biracks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="axiom and classification report")
    p.add_argument("path")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("retract", help="retraction classes, quotient, tower")
    p.add_argument("path")
    p.add_argument("--tower", action="store_true",
                   help="also print the size sequence and terminal")
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(fn=cmd_retract)

    p = sub.add_parser("convert", help="convert between birack and cycle set")
    p.add_argument("path")
    p.add_argument("--to", required=True, choices=("birack", "cycleset"))
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("enumerate", help="stream or count structures of size n")
    p.add_argument("n", type=int)
    p.add_argument("--kind", default="birack",
                   choices=("birack", "left_quasigroup", "cycleset", "mode"))
    p.add_argument("--involutive", action="store_true")
    p.add_argument("--square-free", action="store_true")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("props", help="run every registered property sweep")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_props)

    p = sub.add_parser("builtin", help="dump a named fixture; names: "
                       + ", ".join(BUILTIN_NAMES))
    p.add_argument("name")
    p.set_defaults(fn=cmd_builtin)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, sys.stdout)
    except structfile.ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return PARSE_ERROR
    except FileNotFoundError as e:
        print(f"cannot read {e.filename}", file=sys.stderr)
        return PARSE_ERROR
    except census.BoundExceeded as e:
        print(str(e), file=sys.stderr)
        return PARSE_ERROR
    except BirackError as e:
        print(f"invalid structure: {e}", file=sys.stderr)
        return SEMANTIC_ERROR
    except (ValueError, KeyError) as e:
        message = e.args[0] if e.args else str(e)
        print(f"error: {message}", file=sys.stderr)
        return SEMANTIC_ERROR


if __name__ == "__main__":
    sys.exit(main())
