"""Command-line entry point.

Exit status: 0 when the command succeeds or the verdict holds, 1 when the
verdict fails or a counterexample is found, 2 on usage or format errors and
whenever a question could not be decided (budget, missing meets).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import classify
from .corpus import corpus_entries, self_test
from .enumeration import (SIZE_CAP, EnumSpec, budget_from_env, enumerate_wbck,
                          search_counterexample)
from .errors import (GstarViolation, NotWbck, ReconstructionFailure,
                     UnknownName, WbckError)
from .harness import registry, verify_all
from .laws import eval_law, law_named, parse_law
from .sections import parse_sections, reconstruct_subtraction, section_profiles
from .table import format_table, parse_table, validate_wbck

OK, FALSE, ERROR = 0, 1, 2


class Usage(Exception):
    pass


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as e:
        raise Usage(f"cannot read {path}: {e.strerror}") from None


def _table(path):
    return parse_table(_read(path))


def _dump(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _list(text):
    return tuple(s.strip() for s in (text or "").split(",") if s.strip())


def cmd_classify(args, out):
    a = _table(args.file)
    report = classify(a)
    if args.json:
        print(report.to_json(), file=out)
    else:
        for cls, v in report.classes.items():
            print(f"{cls:22} {v}", file=out)
        for cls, w in report.witnesses.items():
            print(f"  not {cls}: {w['law']} fails at {w['witness']}", file=out)
        for ag in report.critical():
            print(f"DISAGREEMENT {ag.pair} {ag.witness}", file=out)
    return FALSE if report.critical() else OK


def cmd_check(args, out):
    a = _table(args.file)
    lw = law_named(args.law_name) if args.law_name else parse_law(args.law)
    v = eval_law(a, lw)
    if v.holds:
        print(f"holds: {lw}", file=out)
        return OK
    wit = ", ".join(f"{k}={val}" for k, val in v.witness(a.names).items())
    print(f"fails: {lw}\n  at {wit}", file=out)
    return FALSE


def cmd_sections(args, out):
    a = _table(args.file)
    v = validate_wbck(a)
    if not v.holds:
        raise NotWbck(f"not a wBCK-algebra: {v.atom} fails at {v.witness(a.names)}")
    profiles = [p.as_dict(a.names) for p in section_profiles(a)]
    if args.json:
        print(_dump(profiles), file=out)
        return OK
    for p in profiles:
        flags = " ".join(k for k, val in p["flags"].items() if val) or "-"
        kind = p["lattice_kind"]
        kinds = "not a lattice" if kind is None else \
            (" ".join(k for k, val in kind.items() if val) or "lattice")
        comp = " ".join(f"{x}->{y}" for x, y in p["comp"].items())
        print(f"[0,{p['top']}]  {comp}  flags: {flags}  kind: {kinds}", file=out)
    return OK


def cmd_reconstruct(args, out):
    sp = parse_sections(_read(args.file))
    try:
        a = reconstruct_subtraction(sp)
    except ReconstructionFailure as e:
        pairs = ", ".join(f"({x},{y})" for x, y in e.pairs)
        print(f"no subtraction: x - y is undefined at {pairs}", file=out)
        return FALSE
    except GstarViolation as e:
        print(f"not sectionally g*-complemented: {e}", file=out)
        return FALSE
    print(format_table(a), end="", file=out)
    return OK


def cmd_enumerate(args, out):
    if args.size > SIZE_CAP:
        raise Usage(f"--size is capped at {SIZE_CAP}")
    mode = "count" if args.count_only else "emit"
    spec = EnumSpec(args.size, _list(args.require), _list(args.forbid), mode,
                    budget_from_env())
    res = enumerate_wbck(spec, workers=args.workers, out_dir=args.emit)
    if res.partial:
        print(f"budget exhausted after {res.nodes} nodes; partial count "
              f"{res.count}", file=out)
        return ERROR
    print(f"size {res.size}: {res.count} algebras up to isomorphism", file=out)
    for cls, k in res.class_counts.items():
        print(f"  {cls:22} {k}", file=out)
    if args.emit:
        print(f"wrote {len(res.tables)} tables to {args.emit}", file=out)
    elif not args.count_only:
        for a in res.tables:
            print(format_table(a), file=out)
    return OK


def cmd_verify(args, out):
    if args.max_size > SIZE_CAP:
        raise Usage(f"--max-size is capped at {SIZE_CAP}")
    selection = None
    if args.theorem:
        selection = _list(args.theorem)
        known = {c.name for c in registry()}
        for name in selection:
            if name not in known:
                raise UnknownName(f"unknown theorem {name!r}")
    report = verify_all(args.max_size, selection, out_dir=args.out)
    if any(r.error for r in report.results.values()):
        print(report.to_json() if args.json else "budget exhausted", file=out)
        return ERROR
    if args.json:
        print(report.to_json(), file=out)
    else:
        for name, r in report.results.items():
            status = "FAIL" if r.counterexamples else (
                "vacuous" if r.vacuous else "ok")
            print(f"{name:4} {status:8} instances={r.instances} "
                  f"exercised={r.exercised} counterexamples={len(r.counterexamples)}",
                  file=out)
        print(f"checked sizes <= {args.max_size} only", file=out)
    return OK if report.ok else FALSE


def cmd_counterexample(args, out):
    a = search_counterexample(_list(args.satisfies), _list(args.violates),
                              args.max_size)
    if a is None:
        print(f"none found up to size {args.max_size}", file=out)
        return OK
    print(format_table(a), end="", file=out)
    return FALSE


def cmd_corpus(args, out):
    if not args.self_test:
        for e in corpus_entries():
            size = e.table.size if e.table is not None else e.sections.order.size
            print(f"{e.name:14} {size:3}  {e.provenance}", file=out)
        return OK
    results = self_test()
    for name, check, ok, detail in results:
        line = f"{'PASS' if ok else 'FAIL'} {name}: {check}"
        print(f"{line} ({detail})" if detail and not ok else line, file=out)
    return OK if all(r[2] for r in results) else FALSE


def build_parser():
    p = argparse.ArgumentParser(prog="wbck", description="weak BCK-algebra workbench")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="class memberships of a table")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(run=cmd_classify)

    c = sub.add_parser("check", help="evaluate one law on a table")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--law")
    g.add_argument("--law-name")
    c.add_argument("file")
    c.set_defaults(run=cmd_check)

    c = sub.add_parser("sections", help="sectional complementations")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(run=cmd_sections)

    c = sub.add_parser("reconstruct", help="subtraction from a sectioned poset")
    c.add_argument("file")
    c.set_defaults(run=cmd_reconstruct)

    c = sub.add_parser("enumerate", help="all algebras of one size")
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--require", default="")
    c.add_argument("--forbid", default="")
    c.add_argument("--workers", type=int, default=1)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--count-only", action="store_true")
    g.add_argument("--emit", metavar="DIR")
    c.set_defaults(run=cmd_enumerate)

    c = sub.add_parser("verify", help="run the theorem harness")
    c.add_argument("--max-size", type=int, required=True)
    c.add_argument("--theorem")
    c.add_argument("--json", action="store_true")
    c.add_argument("--out", metavar="DIR", help="write counterexamples here")
    c.set_defaults(run=cmd_verify)

    c = sub.add_parser("counterexample", help="smallest separating algebra")
    c.add_argument("--satisfies", default="")
    c.add_argument("--violates", default="")
    c.add_argument("--max-size", type=int, required=True)
    c.set_defaults(run=cmd_counterexample)

    c = sub.add_parser("corpus", help="list or self-test the built-in tables")
    c.add_argument("--self-test", action="store_true")
    c.set_defaults(run=cmd_corpus)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out)
    except NotWbck as e:
        print(f"error: {e}", file=sys.stderr)
        return FALSE
    except (Usage, WbckError, ValueError) as e:
        # format and syntax errors, unknown names, budget, missing meets
        print(f"error: {e}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
