"""Command-line front end.

Exit codes: 0 success or equivalent, 1 semantic negative, 2 invalid input or
unmet hypothesis, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import classical as cl
from .automaton import EventAutomaton, difference, from_structure, is_complete, is_simple, lattice_of
from .cdes import Cdes, enabled
from .kernel import (
    HypothesisError,
    ModelSyntaxError,
    PreconditionError,
    ValidationError,
    compatible,
    es,
    fmt_set,
)
from .modelfile import export_dot, export_json, export_text, parse, serialize
from .oracle import DEFAULT_MAX_EVENTS, run_oracle
from .translate import translate

OK, NEGATIVE, INVALID, IO_ERROR = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise _Exit(IO_ERROR, f"{path}: {err.strerror or err}") from err
    try:
        return parse(text)
    except (ModelSyntaxError, ValidationError) as err:
        raise _Exit(INVALID, f"{path}:{err}") from err


def _declared_conflict(x):
    if isinstance(x, (Cdes, cl.Pes, cl.Fes, cl.Rpes, cl.Dces)):
        return x.conflict
    return None


def cmd_validate(args, out) -> int:
    x = _load(args.file)
    print(f"valid {x.kind}", file=out)
    return OK


def cmd_configs(args, out) -> int:
    lattice = lattice_of(_load(args.file))
    if args.count:
        print(f"states: {len(lattice.states)}", file=out)
        print(f"edges: {len(lattice.edges)}", file=out)
    elif args.format == "dot":
        out.write(export_dot(lattice))
    elif args.format == "json":
        out.write(export_json(lattice))
    else:
        out.write(export_text(lattice))
    return OK


def cmd_translate(args, out) -> int:
    report = translate(_load(args.file), to=args.to, via=args.via)
    out.write(serialize(report.output))
    if report.verified:
        print("// equivalence: verified", file=out)
        return OK
    print(f"// equivalence: FAILED ({report.witness})", file=out)
    return NEGATIVE


def cmd_equiv(args, out) -> int:
    a = from_structure(_load(args.first))
    b = from_structure(_load(args.second))
    witness = difference(a, b)
    if witness is None:
        print("equivalent", file=out)
        return OK
    print(f"not equivalent: {witness}", file=out)
    return NEGATIVE


def cmd_props(args, out) -> int:
    x = _load(args.file)
    lattice = lattice_of(x)
    automaton = EventAutomaton.from_lattice(lattice) if not isinstance(x, EventAutomaton) else x
    seen = frozenset().union(*lattice.states)
    lines = [("full", seen == x.events)]
    declared = _declared_conflict(x)
    if declared is not None:
        together = {frozenset((a, b)) for s in lattice.states for a in s for b in s if a != b}
        missing = [(a, b) for a in sorted(x.events) for b in sorted(x.events)
                   if a < b and frozenset((a, b)) not in together and not declared.conflicts(a, b)]
        lines.append(("faithful", not missing))
    lines += [("simple", is_simple(automaton)), ("complete", is_complete(automaton))]
    if isinstance(x, cl.Rpes):
        lines.append(("partial-order", all(cl.rpes_po_check(x, s) for s in lattice.states)))
    for name, value in lines:
        print(f"{name}: {str(value).lower()}", file=out)
    return OK


def cmd_enabled(args, out) -> int:
    x = _load(args.file)
    if not isinstance(x, Cdes):
        raise _Exit(INVALID, f"enabled is defined for cdes models, not {x.kind}")
    c = es(*args.at)
    on = enabled(x, c, args.event)
    cf = compatible(c, args.event, x.conflict)
    print(f"enabled at {fmt_set(c)}: {str(on).lower()}", file=out)
    print(f"conflict-free: {str(cf).lower()}", file=out)
    return OK if on and cf else NEGATIVE


def cmd_oracle(args, out) -> int:
    report = run_oracle(_load(args.file), max_events=args.max_events)
    print(report.render(), file=out)
    return OK if report.agree else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="evstruct", description="Event structures and their configuration spaces.")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("validate", help="parse and validate a model")
    v.add_argument("file")
    v.set_defaults(run=cmd_validate)

    c = sub.add_parser("configs", help="configurations and steps")
    c.add_argument("file")
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--dot", dest="format", action="store_const", const="dot")
    fmt.add_argument("--text", dest="format", action="store_const", const="text")
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--count", action="store_true", help="print only the numbers of states and edges")
    c.set_defaults(run=cmd_configs, format="text")

    t = sub.add_parser("translate", help="translate and verify")
    t.add_argument("file")
    t.add_argument("--to", choices=("cdes", "ies"), default="cdes")
    t.add_argument("--via", choices=("direct", "ea"), default="ea")
    t.set_defaults(run=cmd_translate)

    e = sub.add_parser("equiv", help="compare event automata")
    e.add_argument("first")
    e.add_argument("second")
    e.set_defaults(run=cmd_equiv)

    pr = sub.add_parser("props", help="fullness, faithfulness, simplicity, completeness")
    pr.add_argument("file")
    pr.set_defaults(run=cmd_props)

    en = sub.add_parser("enabled", help="cdes enabling at a set, with the conflict check reported apart")
    en.add_argument("file")
    en.add_argument("event")
    en.add_argument("--at", nargs="*", default=[], metavar="EVENT")
    en.set_defaults(run=cmd_enabled)

    o = sub.add_parser("oracle", help="compare against exhaustive trace enumeration")
    o.add_argument("file")
    o.add_argument("--max-events", type=int, default=DEFAULT_MAX_EVENTS)
    o.set_defaults(run=cmd_oracle)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out)
    except _Exit as err:
        print(f"error: {err.message}", file=sys.stderr)
        return err.code
    except HypothesisError as err:
        print(f"error: {err}", file=sys.stderr)
        return INVALID
    except (PreconditionError, ValidationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return INVALID
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return IO_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
