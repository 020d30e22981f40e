"""Differential oracle.

Recomputes configurations straight from the definitions, without the
library's enabling functions or the set-based search:

* cdes, dces, ies, rces, ea: every sequence of distinct events is tried and
  each prefix is checked against the kind's trace condition;
* pes, rpes, fes: every subset is filtered by the declarative conditions.

The result is compared with the breadth-first lattice.  Trace enumeration
is factorial, so a hard cap on the number of events applies.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from . import classical as cl
from .automaton import EventAutomaton, Structure, lattice_of
from .cdes import Cdes
from .kernel import EMPTY, Lattice, PreconditionError, fmt_set, set_key

DEFAULT_MAX_EVENTS = 8

Step = Callable[[tuple, str], bool]  # (trace so far, next event) -> allowed


@dataclass(frozen=True)
class OracleReport:
    agree: bool
    states: frozenset
    edges: frozenset
    counterexample: tuple[str, ...] | None = None
    detail: str = ""

    def render(self) -> str:
        if self.agree:
            return "agree"
        return f"counterexample: trace {' '.join(self.counterexample or ()) or '(empty)'}: {self.detail}"


# --------------------------------------------------------------------------- #
# Definition-literal step predicates (on traces)
# --------------------------------------------------------------------------- #


def _pairs_conflict(pairs: frozenset, a: str, b: str) -> bool:
    return frozenset((a, b)) in pairs


def _cdes_step(s: Cdes) -> Step:
    pairs = s.conflict.pairs
    entries = [(en.target, [(el.modifiers, el.dependencies) for el in en.elements]) for en in s.entries]

    def step(trace: tuple, e: str) -> bool:
        h = frozenset(trace)
        if any(_pairs_conflict(pairs, x, e) for x in h):
            return False
        mine = [els for t, els in entries if t == e]
        if not mine:
            return False
        for els in mine:
            cxt = set()
            for x, _ in els:
                cxt |= x
            if not any(x == (cxt & h) and y <= h for x, y in els):
                return False
        return True

    return step


def _dces_step(d: cl.Dces) -> Step:
    pairs = d.base.conflict.pairs
    en, shrink, grow = d.base.en, d.shrink, d.grow

    def step(trace: tuple, e: str) -> bool:
        h = frozenset(trace)
        if any(_pairs_conflict(pairs, x, e) for x in h):
            return False
        ic = {a for a, b in en if b == e}
        dc = {t.contribution for t in shrink if t.target == e and t.modifier in h}
        ac = {t.contribution for t in grow if t.target == e and t.modifier in h}
        return ((ic | ac) - dc) <= h

    return step


def _ies_step(i: cl.Ies) -> Step:
    triples = list(i.triples)

    def step(trace: tuple, e: str) -> bool:
        h = frozenset(trace)
        return all(not (a <= h) or (h & alts) for a, t, alts in triples if t == e)

    return step


def _rces_leads(r: cl.Rces, x: frozenset, y: frozenset) -> bool:
    if not (x <= y and len(y - x) <= 1):
        return False
    items = sorted(y)
    for k in range(len(items) + 1):
        for z in combinations(items, k):
            z = frozenset(z)
            if not any(w <= x and rhs == z for w, rhs in r.enabling):
                return False
    return True


def _rces_step(r: cl.Rces) -> Step:
    def step(trace: tuple, e: str) -> bool:
        h = frozenset(trace)
        return _rces_leads(r, h, h | {e})

    return step


def _ea_step(a: EventAutomaton) -> Step:
    def step(trace: tuple, e: str) -> bool:
        h = frozenset(trace)
        return (h, h | {e}) in a.trans

    return step


def enumerate_traces(events: frozenset, step: Step, start: frozenset = EMPTY
                     ) -> tuple[dict[frozenset, tuple], set]:
    """All valid traces of distinct events.

    Returns the first (shortest, then lexicographic) trace reaching each set
    and the set of labelled steps taken by any trace.
    """
    order = sorted(events - start)
    witness: dict[frozenset, tuple] = {start: ()}
    edges: set = set()

    def walk(trace: tuple) -> None:
        h = start | frozenset(trace)
        for e in order:
            if e in h or not step(trace, e):
                continue
            nxt = trace + (e,)
            g = h | {e}
            edges.add((h, e, g))
            best = witness.get(g)
            if best is None or (len(nxt), nxt) < (len(best), best):
                witness[g] = nxt
            walk(nxt)

    walk(())
    return witness, edges


# --------------------------------------------------------------------------- #
# Definition-literal subset filters
# --------------------------------------------------------------------------- #


def _reach(pairs: frozenset) -> dict[str, set]:
    """Transitive closure by depth-first search from every node."""
    succ: dict[str, set] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    out = {}
    for a in succ:
        seen, todo = set(), list(succ[a])
        while todo:
            x = todo.pop()
            if x not in seen:
                seen.add(x)
                todo.extend(succ.get(x, ()))
        out[a] = seen
    return out


def _cf(c: frozenset, pairs: frozenset) -> bool:
    return not any(p <= c for p in pairs)


def _pes_filter(p: cl.Pes) -> Callable[[frozenset], bool]:
    below = _reach(frozenset((a, b) for a, b in p.leq if a != b))
    return lambda c: _cf(c, p.conflict.pairs) and all(
        e in c for x in c for e in p.events if x in below.get(e, ()))


def _rpes_filter(r: cl.Rpes) -> Callable[[frozenset], bool]:
    return lambda c: _cf(c, r.conflict.pairs) and all(a in c for a, b in r.en if b in c)


def _fes_filter(f: cl.Fes) -> Callable[[frozenset], bool]:
    star = _reach(f.flow)
    pairs = f.conflict.pairs

    def ok(c: frozenset) -> bool:
        if not _cf(c, pairs):
            return False
        for e in c:
            pre = {a for a, b in f.flow if b == e}
            for x in pre - c:
                if not any(_pairs_conflict(pairs, x, y) for y in pre & c):
                    return False
        return not any(a != b and b in star.get(a, ()) and a in star.get(b, ())
                       for a in c for b in c)

    return ok


def subset_states(events: frozenset, keep: Callable[[frozenset], bool]) -> frozenset:
    items = sorted(events)
    return frozenset(frozenset(s) for k in range(len(items) + 1)
                     for s in combinations(items, k) if keep(frozenset(s)))


# --------------------------------------------------------------------------- #
# Comparison
# --------------------------------------------------------------------------- #


def _path(lattice: Lattice, target: frozenset) -> tuple[str, ...]:
    """Shortest event path from the initial state in the lattice."""
    prev = {lattice.initial: None}
    todo = deque([lattice.initial])
    while todo:
        s = todo.popleft()
        if s == target:
            break
        for e, t in lattice.successors(s):
            if t not in prev:
                prev[t] = (s, e)
                todo.append(t)
    if target not in prev:
        return tuple(sorted(target))
    out = []
    cur = target
    while prev[cur] is not None:
        cur, e = prev[cur]
        out.append(e)
    return tuple(reversed(out))


def oracle_lattice(x: Structure) -> tuple[frozenset, frozenset, dict[frozenset, tuple]]:
    """States, edges and a witness trace per state, computed from the definitions."""
    filters = {cl.Pes: _pes_filter, cl.Rpes: _rpes_filter, cl.Fes: _fes_filter}
    for typ, make in filters.items():
        if isinstance(x, typ):
            states = subset_states(x.events, make(x))
            edges = frozenset((s, e, s | {e}) for s in states for e in x.events - s
                              if s | {e} in states)
            return states, edges, {}
    if isinstance(x, Cdes):
        step = _cdes_step(x)
    elif isinstance(x, cl.Dces):
        step = _dces_step(x)
    elif isinstance(x, cl.Ies):
        step = _ies_step(x)
    elif isinstance(x, cl.Rces):
        if not _rces_leads(x, EMPTY, EMPTY):
            return frozenset(), frozenset(), {}
        step = _rces_step(x)
    elif isinstance(x, EventAutomaton):
        step = _ea_step(x)
    else:
        raise TypeError(f"unsupported structure {type(x).__name__}")
    start = x.initial if isinstance(x, EventAutomaton) else EMPTY
    witness, edges = enumerate_traces(x.events, step, start)
    return frozenset(witness), frozenset(edges), witness


def run_oracle(x: Structure, max_events: int = DEFAULT_MAX_EVENTS,
               lattice: Lattice | None = None) -> OracleReport:
    if len(x.events) > max_events:
        raise PreconditionError(
            f"{len(x.events)} events exceed the oracle cap of {max_events}")
    states, edges, witness = oracle_lattice(x)
    if lattice is None:
        lattice = lattice_of(x)
    def trace_for(s: frozenset) -> tuple:
        return witness[s] if s in witness else _path(lattice, s)

    for s in sorted(states ^ lattice.states, key=set_key):
        where = "oracle" if s in states else "search"
        return OracleReport(False, states, edges, trace_for(s),
                            f"state {fmt_set(s)} only found by the {where}")
    for s, e, t in sorted(edges ^ lattice.edges, key=lambda k: (set_key(k[0]), k[1])):
        where = "oracle" if (s, e, t) in edges else "search"
        return OracleReport(False, states, edges, trace_for(s) + (e,),
                            f"step {fmt_set(s)} -{e}-> {fmt_set(t)} only found by the {where}")
    return OracleReport(True, states, edges)
