"""Line-oriented model files, DOT and JSON export.

One declaration per line, ``//`` starts a comment, sets are written
``{a b c}``.  Declarations by kind::

    kind <cdes|pes|fes|rpes|dces|ies|rces|ea>
    events a b c
    conflict a b                                 all kinds with a conflict
    entry e : ({X}|{Y}) ({X}|{Y}) ...            cdes
    le a b                                       pes (a ≤ b, generators)
    flow a b / selfconflict a                    fes
    en a b                                       rpes, dces (a → b)
    shrink mod=M target=T contrib=C              dces
    grow mod=M target=T contrib=C                dces
    inh {a} e {A...}                             ies (a ⊢ e ↠ A)
    turnstile {X} {Y}                            rces (X ⊢ Y)
    init {} / state {a b} / trans {a} {a b}      ea
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterator

from . import classical as cl
from .automaton import EventAutomaton, Structure
from .cdes import Cdes, Entry
from .kernel import (
    ConflictRelation,
    Lattice,
    ModelSyntaxError,
    ValidationError,
    fmt_set,
    set_key,
)

KINDS = ("cdes", "pes", "fes", "rpes", "dces", "ies", "rces", "ea")

_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_]+)|([{}()|:=])|(\S))")

# Declarations allowed per kind, besides `kind` and `events`.
_ALLOWED = {
    "cdes": {"conflict", "entry"},
    "pes": {"conflict", "le"},
    "fes": {"conflict", "flow", "selfconflict"},
    "rpes": {"conflict", "en"},
    "dces": {"conflict", "en", "shrink", "grow"},
    "ies": {"inh"},
    "rces": {"turnstile"},
    "ea": {"init", "state", "trans"},
}


@dataclass
class _Tok:
    text: str
    col: int
    is_name: bool


class _Line:
    def __init__(self, lineno: int, toks: list[_Tok]):
        self.lineno = lineno
        self.toks = toks
        self.i = 0

    def error(self, msg: str, tok: _Tok | None = None) -> ModelSyntaxError:
        if tok is None:
            tok = self.toks[self.i] if self.i < len(self.toks) else None
        col = tok.col if tok else (self.toks[-1].col + len(self.toks[-1].text) if self.toks else 1)
        return ModelSyntaxError(self.lineno, col, msg)

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self, what: str = "token") -> _Tok:
        tok = self.peek()
        if tok is None:
            raise self.error(f"expected {what}, found end of line")
        self.i += 1
        return tok

    def name(self) -> str:
        tok = self.next("event name")
        if not tok.is_name:
            raise self.error(f"expected event name, found {tok.text!r}", tok)
        return tok.text

    def expect(self, text: str) -> None:
        tok = self.next(repr(text))
        if tok.text != text:
            raise self.error(f"expected {text!r}, found {tok.text!r}", tok)

    def set(self) -> frozenset:
        self.expect("{")
        out = []
        while (tok := self.peek()) is not None and tok.text != "}":
            out.append(self.name())
        self.expect("}")
        return frozenset(out)

    def names(self) -> list[str]:
        out = []
        while self.peek() is not None:
            out.append(self.name())
        return out

    def done(self) -> None:
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek().text!r}")

    def fields(self, keys: tuple[str, ...]) -> dict[str, str]:
        got: dict[str, str] = {}
        while self.peek() is not None:
            key = self.next()
            if key.text not in keys:
                raise self.error(f"unknown field {key.text!r}, expected one of {', '.join(keys)}", key)
            if key.text in got:
                raise self.error(f"duplicate field {key.text!r}", key)
            self.expect("=")
            got[key.text] = self.name()
        missing = [k for k in keys if k not in got]
        if missing:
            raise self.error(f"missing field(s) {', '.join(missing)}")
        return got


def _lines(text: str) -> Iterator[_Line]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("//", 1)[0]
        toks = []
        pos = 0
        while pos < len(body):
            m = _TOKEN.match(body, pos)
            if m is None or m.end() == pos:
                break
            if m.group(3):
                raise ModelSyntaxError(lineno, m.start(3) + 1, f"unexpected character {m.group(3)!r}")
            if m.group(1):
                toks.append(_Tok(m.group(1), m.start(1) + 1, True))
            elif m.group(2):
                toks.append(_Tok(m.group(2), m.start(2) + 1, False))
            pos = m.end()
        if toks:
            yield _Line(lineno, toks)


def parse(text: str) -> Structure:
    """Parse and validate a model; errors carry line and column."""
    lines = list(_lines(text))
    if not lines:
        raise ModelSyntaxError(1, 1, "empty model: expected 'kind <tag>'")
    first = lines[0]
    if first.next().text != "kind":
        raise first.error("first declaration must be 'kind <tag>'", first.toks[0])
    tag_tok = first.next("kind tag")
    if tag_tok.text not in KINDS:
        raise first.error(f"unknown kind {tag_tok.text!r}", tag_tok)
    first.done()
    kind = tag_tok.text

    events: list[str] = []
    event_pos: dict[str, tuple[int, int]] = {}
    decls: list[tuple[str, _Line, object]] = []
    refs: list[tuple[str, int, int]] = []
    for ln in lines[1:]:
        head = ln.next()
        if head.text == "events":
            for tok in ln.toks[1:]:
                if not tok.is_name:
                    raise ln.error(f"expected event name, found {tok.text!r}", tok)
                if tok.text in event_pos:
                    raise ValidationError("duplicate event", tok.text, ln.lineno, tok.col)
                event_pos[tok.text] = (ln.lineno, tok.col)
                events.append(tok.text)
            continue
        if head.text == "kind":
            raise ln.error("duplicate 'kind' declaration", head)
        if head.text not in _ALLOWED[kind]:
            raise ln.error(f"'{head.text}' is not a {kind} declaration", head)
        start = ln.i
        item = _parse_decl(head.text, ln)
        ln.done()
        refs.extend((t.text, ln.lineno, t.col) for t in ln.toks[start:] if t.is_name
                    and not _is_field_key(head.text, ln, t))
        decls.append((head.text, ln, item))

    declared = set(events)
    for name, lineno, col in refs:
        if name not in declared:
            raise ValidationError("undeclared event", name, lineno, col)
    for head, ln, item in decls:
        if head == "conflict" and item[0] == item[1]:
            raise ValidationError("irreflexivity", item, ln.lineno, ln.toks[1].col)

    try:
        return _build(kind, frozenset(events), decls)
    except ValidationError as err:
        if err.line is None:
            err.line, err.col = _locate(err.witness, decls, err.rule)
            err.args = (str(err),)
        raise


def _is_field_key(head: str, ln: _Line, tok: _Tok) -> bool:
    if head not in ("shrink", "grow"):
        return False
    idx = ln.toks.index(tok)
    return idx + 1 < len(ln.toks) and ln.toks[idx + 1].text == "="


def _parse_decl(head: str, ln: _Line) -> object:
    if head in ("conflict", "le", "flow", "en"):
        return (ln.name(), ln.name())
    if head == "selfconflict":
        return ln.name()
    if head == "entry":
        target = ln.name()
        ln.expect(":")
        elements = []
        while ln.peek() is not None:
            ln.expect("(")
            x = ln.set()
            ln.expect("|")
            y = ln.set()
            ln.expect(")")
            elements.append((x, y))
        if not elements:
            raise ln.error("entry needs at least one element")
        return (target, elements)
    if head in ("shrink", "grow"):
        return ln.fields(("mod", "target", "contrib"))
    if head == "inh":
        a = ln.set()
        e = ln.name()
        alts = ln.set()
        return (a, e, alts)
    if head == "turnstile":
        return (ln.set(), ln.set())
    if head in ("init", "state"):
        return ln.set()
    if head == "trans":
        return (ln.set(), ln.set())
    raise ln.error(f"unknown declaration {head!r}")  # pragma: no cover


def _build(kind: str, events: frozenset, decls: list) -> Structure:
    by: dict[str, list] = {}
    for head, _, item in decls:
        by.setdefault(head, []).append(item)
    conflict = by.get("conflict", [])
    if kind == "cdes":
        seen: dict[str, list] = {}
        entries = []
        for target, elements in by.get("entry", []):
            mods = [x for x, _ in elements]
            for x in mods:
                if mods.count(x) > 1:
                    raise ValidationError("duplicate modifiers", (target, x))
            entries.append(Entry.of(target, elements))
            seen.setdefault(target, []).append(elements)
        return Cdes(events, ConflictRelation.of(conflict), frozenset(entries))
    if kind == "pes":
        return cl.Pes.build(events, by.get("le", []), conflict)
    if kind == "fes":
        return cl.Fes.build(events, by.get("flow", []), conflict, by.get("selfconflict", []))
    if kind == "rpes":
        return cl.Rpes.build(events, by.get("en", []), conflict)
    if kind == "dces":
        shrink = [cl.Shrink(f["contrib"], f["target"], f["mod"]) for f in by.get("shrink", [])]
        grow = [cl.Grow(f["mod"], f["contrib"], f["target"]) for f in by.get("grow", [])]
        return cl.Dces.build(events, by.get("en", []), conflict, shrink, grow)
    if kind == "ies":
        return cl.Ies.build(events, by.get("inh", []))
    if kind == "rces":
        return cl.Rces.build(events, by.get("turnstile", []))
    inits = by.get("init", [])
    if len(inits) > 1:
        raise ValidationError("duplicate init", inits[1])
    initial = inits[0] if inits else frozenset()
    return EventAutomaton.build(events, by.get("state", []), by.get("trans", []), initial)


def _flatten(w: object) -> set[str]:
    if isinstance(w, str):
        return {w}
    if isinstance(w, (tuple, frozenset, set, list)):
        out: set[str] = set()
        for x in w:
            out |= _flatten(x)
        return out
    return set()


def _locate(witness: object, decls: list, rule: str = "") -> tuple[int | None, int | None]:
    names = _flatten(witness)
    if not names:
        return None, None
    if rule.startswith("condition"):
        # dynamic-causality conditions concern the shrink/grow declarations
        decls = sorted(decls, key=lambda d: d[0] not in ("shrink", "grow"))
    for _, ln, _ in decls:
        toks = [t for t in ln.toks[1:] if t.is_name]
        if names <= {t.text for t in toks}:
            first = next(t for t in toks if t.text in names)
            return ln.lineno, first.col
    return None, None


# --------------------------------------------------------------------------- #
# Serialization
# --------------------------------------------------------------------------- #


def _s(xs) -> str:
    return fmt_set(xs, " ")


def serialize(x: Structure) -> str:
    """Canonical text: lexicographic order, LF line endings."""
    out = [f"kind {x.kind}", " ".join(["events", *sorted(x.events)]).rstrip()]
    if isinstance(x, EventAutomaton):
        out.append(f"init {_s(x.initial)}")
        out += [f"state {_s(s)}" for s in x.sorted_states()]
        out += [f"trans {_s(s)} {_s(t)}" for s, t in x.sorted_trans()]
    elif isinstance(x, cl.Ies):
        out += [f"inh {_s(t.inhibitor)} {t.target} {_s(t.alternatives)}" for t in x.sorted_triples()]
    elif isinstance(x, cl.Rces):
        pairs = sorted(x.enabling, key=lambda p: (set_key(p[0]), set_key(p[1])))
        out += [f"turnstile {_s(a)} {_s(b)}" for a, b in pairs]
    else:
        conflict = x.conflict
        out += [f"conflict {a} {b}" for a, b in conflict if a != b]
        if isinstance(x, Cdes):
            for entry in x.sorted_entries():
                els = " ".join(f"({_s(el.modifiers)}|{_s(el.dependencies)})"
                               for el in entry.sorted_elements())
                out.append(f"entry {entry.target} : {els}")
        elif isinstance(x, cl.Pes):
            out += [f"le {a} {b}" for a, b in sorted(x.generators())]
        elif isinstance(x, cl.Fes):
            out += [f"selfconflict {e}" for e in sorted(x.self_conflicting())]
            out += [f"flow {a} {b}" for a, b in sorted(x.flow)]
        elif isinstance(x, cl.Rpes):
            out += [f"en {a} {b}" for a, b in sorted(x.en)]
        elif isinstance(x, cl.Dces):
            out += [f"en {a} {b}" for a, b in sorted(x.base.en)]
            out += [f"shrink mod={t.modifier} target={t.target} contrib={t.contribution}"
                    for t in sorted(x.shrink, key=lambda t: (t.target, t.modifier, t.contribution))]
            out += [f"grow mod={t.modifier} target={t.target} contrib={t.contribution}"
                    for t in sorted(x.grow, key=lambda t: (t.target, t.modifier, t.contribution))]
        else:
            raise TypeError(f"cannot serialize {type(x).__name__}")
    return "\n".join(out) + "\n"


def export_dot(lattice: Lattice, name: str = "configurations") -> str:
    states = lattice.sorted_states()
    ids = {s: f"n{i}" for i, s in enumerate(states)}
    out = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=plaintext];"]
    out += [f'  {ids[s]} [label="{fmt_set(s)}"];' for s in states]
    out += [f'  {ids[s]} -> {ids[t]} [label="{e}"];' for s, e, t in lattice.sorted_edges()]
    out.append("}")
    return "\n".join(out) + "\n"


def export_json(lattice: Lattice) -> str:
    doc = {
        "events": sorted(lattice.events),
        "initial": sorted(lattice.initial),
        "states": [sorted(s) for s in lattice.sorted_states()],
        "edges": [{"from": sorted(s), "event": e, "to": sorted(t)}
                  for s, e, t in lattice.sorted_edges()],
    }
    return json.dumps(doc, indent=2) + "\n"


def export_text(lattice: Lattice) -> str:
    """The lattice as an ``ea`` model file."""
    return serialize(EventAutomaton.from_lattice(lattice))
