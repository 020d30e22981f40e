"""Translations into CDES (direct per kind, or through the event automaton)
and from growing-causality structures into inhibitor structures.

Every translation can be checked by comparing event automata; the
:func:`translate` front end always does so and returns a report.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from . import classical as cl
from .automaton import EventAutomaton, Structure, difference, from_structure, is_complete, is_simple
from .cdes import Cdes, Entry
from .kernel import (
    EMPTY,
    ConflictRelation,
    DanglingEvent,
    NotComplete,
    NotFaithful,
    NotFull,
    NotGes,
    NotSimple,
    PreconditionError,
    is_conflict_free,
    sorted_sets,
)


@dataclass(frozen=True)
class TranslationReport:
    output: Structure
    source_kind: str
    verified: bool
    witness: str | None = None

    def __post_init__(self) -> None:
        assert not (self.verified and self.witness), "a verified translation has no witness"


# --------------------------------------------------------------------------- #
# Event automaton → CDES
# --------------------------------------------------------------------------- #


def _check_event(a: EventAutomaton, e: str) -> None:
    if e not in a.events:
        raise PreconditionError(f"unknown event {e!r}")


def ctr(a: EventAutomaton, e: str) -> frozenset:
    """States from which a transition adds exactly ``e``."""
    _check_event(a, e)
    return frozenset(s for s in a.states if (s, s | {e}) in a.trans and e not in s)


def rtc(a: EventAutomaton, e: str) -> frozenset:
    """States that cannot be extended by ``e`` at all (``s ∪ {e}`` is no state)."""
    _check_event(a, e)
    return frozenset(s for s in a.states if s | {e} not in a.states)


def blocked(a: EventAutomaton, e: str) -> frozenset:
    """States ``s ∌ e`` where ``s ∪ {e}`` is a state but not reached from ``s``."""
    _check_event(a, e)
    return frozenset(
        s for s in a.states
        if e not in s and s | {e} in a.states and (s, s | {e}) not in a.trans
    )


def ea_conflict(a: EventAutomaton) -> ConflictRelation:
    together = set()
    for s in a.states:
        together.update(frozenset(p) for p in combinations(sorted(s), 2))
    every = {frozenset(p) for p in combinations(sorted(a.events), 2)}
    return ConflictRelation(frozenset(every - together))


def ea_to_cdes(a: EventAutomaton) -> Cdes:
    """One entry per event: ``(s, ∅)`` for each allowing state ``s`` and
    ``(s, {e})`` for each state where ``e`` must not be added.

    The negative part covers ``rtc`` and also the states where ``s ∪ {e}`` is
    a state but the automaton has no step to it; without these the result
    would add steps the automaton lacks.
    """
    # a dangling event also breaks simplicity; report the sharper diagnosis first
    dangling = a.events - frozenset().union(*a.states)
    if dangling:
        raise DanglingEvent(f"events in no state: {sorted(dangling)}")
    if not is_simple(a):
        raise NotSimple("some event is never added by a single-event transition")
    if not is_complete(a):
        raise NotComplete("some state is unreachable from the initial state")
    entries = []
    for e in sorted(a.events):
        pos = [(s, EMPTY) for s in sorted_sets(ctr(a, e))]
        neg = [(s, frozenset({e})) for s in sorted_sets(rtc(a, e) | blocked(a, e))]
        entries.append(Entry.of(e, pos + neg))
    return Cdes(a.events, ea_conflict(a), frozenset(entries))


# --------------------------------------------------------------------------- #
# Direct translations
# --------------------------------------------------------------------------- #


def pes_to_cdes(p: cl.Pes) -> Cdes:
    entries = [Entry.of(e, [(EMPTY, p.history(e) - {e})]) for e in p.events]
    return Cdes(p.events, p.conflict, frozenset(entries))


def _satisfiable(e: str, y: frozenset, k: ConflictRelation) -> frozenset:
    """``y`` itself, or ``{e}`` when ``y`` holds a conflict and so can never be met."""
    return y if is_conflict_free(y, k) else frozenset({e})


def rpes_to_cdes(r: cl.Rpes) -> Cdes:
    entries = [Entry.of(e, [(EMPTY, _satisfiable(e, r.ic(e), r.conflict))]) for e in r.events]
    return Cdes(r.events, r.conflict, frozenset(entries))


def maxfl(f: cl.Fes, e: str) -> frozenset:
    """Maximal conflict-free subsets of the flow predecessors of ``e``."""
    if e not in f.events:
        raise PreconditionError(f"unknown event {e!r}")
    pre = sorted(f.preds(e))
    cf = [frozenset(c) for r in range(len(pre) + 1) for c in combinations(pre, r)
          if is_conflict_free(c, f.conflict)]
    return frozenset(
        x for x in cf
        if not any(is_conflict_free(x | {y}, f.conflict) for y in pre if y not in x)
    )


def fes_to_cdes(f: cl.Fes) -> Cdes:
    lattice = cl.fes_configurations(f)
    occurring = frozenset().union(*lattice.states)
    if occurring != f.events:
        raise NotFull(f"events in no configuration: {sorted(f.events - occurring)}")
    together = set()
    for s in lattice.states:
        together.update(frozenset(p) for p in combinations(sorted(s), 2))
    for p in combinations(sorted(f.events), 2):
        if frozenset(p) not in together and not f.conflict.conflicts(*p):
            raise NotFaithful(f"semantic conflict {p[0]} # {p[1]} not declared")
    conflict = ConflictRelation(f.conflict.pairs)
    entries = [Entry.of(e, [(x, EMPTY) for x in maxfl(f, e)]) for e in f.events]
    return Cdes(f.events, conflict, frozenset(entries))


def dces_to_cdes(d: cl.Dces) -> Cdes:
    """One element per conflict-free subset of the modifiers of each event.

    A dependency set that is not conflict-free can never be met; it is
    replaced by ``{e}``, which is equally unsatisfiable but well formed.
    """
    entries = []
    for e in sorted(d.events):
        mods = sorted(d.grow_modifiers(e) | d.shrink_modifiers(e))
        elements = []
        for r in range(len(mods) + 1):
            for xs in combinations(mods, r):
                x = frozenset(xs)
                if not is_conflict_free(x, d.conflict):
                    continue
                dropped = frozenset().union(*(d.dropped_by(m, e) for m in x))
                added = frozenset().union(*(d.added_by(m, e) for m in x))
                y = (d.ic(e) - dropped) | added
                elements.append((x, _satisfiable(e, y, d.conflict)))
        entries.append(Entry.of(e, elements))
    return Cdes(d.events, d.conflict, frozenset(entries))


def _ies_elements(t: cl.Inhibitor, k: ConflictRelation) -> list[tuple[frozenset, frozenset]]:
    a, e, alts = t.inhibitor, t.target, t.alternatives
    if not alts:
        return [(EMPTY, EMPTY), (a, frozenset({e}))]
    if len(alts) == 1:
        return [(EMPTY, alts)] if not a else [(EMPTY, EMPTY), (a, alts)]
    out = [(frozenset({y}), EMPTY) for y in alts]
    if a:
        out.append((EMPTY, EMPTY))
        out += [(a | {y}, EMPTY) for y in alts if is_conflict_free(a | {y}, k)]
    return out


def ies_to_cdes(i: cl.Ies) -> Cdes:
    """Conflict is the induced one; one entry per triple, and ``{(∅,∅)}`` for
    events that no triple constrains.

    ``a ⊢ e ↠ ∅`` becomes ``{(∅,∅), (a,{e})}``; a single alternative ``y``
    becomes a dependency on ``y`` under context ``a``; larger ``A`` use the
    alternatives as modifiers.
    """
    k = i.induced_conflict()
    entries = {Entry.of(t.target, _ies_elements(t, k)) for t in i.triples}
    constrained = {t.target for t in i.triples}
    entries |= {Entry.of(e, [(EMPTY, EMPTY)]) for e in i.events - constrained}
    return Cdes(i.events, k, frozenset(entries))


def ges_to_ies(d: cl.Dces) -> cl.Ies:
    if not d.is_ges:
        raise NotGes("shrinking causality is not empty")
    triples = set()
    for x, y in d.conflict:
        triples.add(cl.Inhibitor(frozenset({x}), y, EMPTY))
        triples.add(cl.Inhibitor(frozenset({y}), x, EMPTY))
    for cause, effect in d.base.en:
        triples.add(cl.Inhibitor(EMPTY, effect, frozenset({cause})))
    for g in d.grow:
        triples.add(cl.Inhibitor(frozenset({g.modifier}), g.target, frozenset({g.contribution})))
    return cl.Ies(d.events, frozenset(triples))


def any_to_cdes(x: Structure) -> Cdes:
    return ea_to_cdes(from_structure(x))


# --------------------------------------------------------------------------- #
# Front end
# --------------------------------------------------------------------------- #

_DIRECT = {
    "pes": pes_to_cdes,
    "rpes": rpes_to_cdes,
    "fes": fes_to_cdes,
    "dces": dces_to_cdes,
    "ies": ies_to_cdes,
    "cdes": lambda x: x,
}


def verify(source: Structure, output: Structure) -> str | None:
    return difference(from_structure(source), from_structure(output))


def translate(x: Structure, to: str = "cdes", via: str = "ea") -> TranslationReport:
    """Translate and verify.  Raises :class:`HypothesisError` subclasses when a
    construction's hypotheses fail and ``PreconditionError`` for undefined routes."""
    kind = x.kind
    if to == "ies":
        if kind != "dces":
            raise PreconditionError(f"no translation from {kind} to ies")
        out: Structure = ges_to_ies(x)  # type: ignore[arg-type]
    elif to == "cdes" and via == "ea":
        out = any_to_cdes(x)
    elif to == "cdes" and via == "direct":
        if kind not in _DIRECT:
            raise PreconditionError(f"no direct translation from {kind} to cdes")
        out = _DIRECT[kind](x)
    else:
        raise PreconditionError(f"unknown route --to {to} --via {via}")
    witness = verify(x, out)
    return TranslationReport(out, kind, witness is None, witness)


def translations_for(kind: str) -> Iterable[tuple[str, str]]:
    yield ("cdes", "ea")
    if kind in _DIRECT:
        yield ("cdes", "direct")
    if kind == "dces":
        yield ("ies", "direct")
