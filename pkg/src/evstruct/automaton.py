"""Event automata: the common semantic currency for comparing structures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from . import classical as cl
from .cdes import Cdes, configurations as cdes_configurations
from .kernel import EMPTY, Lattice, PreconditionError, ValidationError, event_set, set_key, sorted_sets

Structure = Union[Cdes, cl.Pes, cl.Fes, cl.Rpes, cl.Dces, cl.Ies, cl.Rces, "EventAutomaton"]


@dataclass(frozen=True)
class EventAutomaton:
    events: frozenset
    states: frozenset
    trans: frozenset  # pairs (s, s') with s ⊂ s'
    initial: frozenset = EMPTY
    kind = "ea"

    def __post_init__(self) -> None:
        if self.initial not in self.states:
            raise ValidationError("initial state not a state", self.initial)
        for s in self.states:
            if not s <= self.events:
                raise ValidationError("undeclared event", s - self.events)
        for s, t in self.trans:
            if s not in self.states or t not in self.states:
                raise ValidationError("transition between non-states", (s, t))
            if not s < t:
                raise ValidationError("transition must strictly grow", (s, t))

    @classmethod
    def build(cls, events: Iterable[str], states: Iterable[Iterable[str]],
              trans: Iterable[tuple[Iterable[str], Iterable[str]]] = (),
              initial: Iterable[str] = ()) -> EventAutomaton:
        return cls(event_set(events), frozenset(frozenset(s) for s in states),
                   frozenset((frozenset(s), frozenset(t)) for s, t in trans), frozenset(initial))

    @classmethod
    def from_lattice(cls, lattice: Lattice) -> EventAutomaton:
        return cls(lattice.events, lattice.states,
                   frozenset((s, t) for s, _, t in lattice.edges), lattice.initial)

    def to_lattice(self) -> Lattice:
        """Single-event transitions only, labelled by the added event."""
        edges = frozenset((s, next(iter(t - s)), t) for s, t in self.trans if len(t - s) == 1)
        return Lattice(self.events, self.states, edges, self.initial)

    def sorted_states(self) -> list[frozenset]:
        return sorted_sets(self.states)

    def sorted_trans(self) -> list[tuple[frozenset, frozenset]]:
        return sorted(self.trans, key=lambda p: (set_key(p[0]), set_key(p[1])))


def is_simple(a: EventAutomaton) -> bool:
    """Every event can be added alone to some state by a transition."""
    added = {next(iter(t - s)) for s, t in a.trans if len(t - s) == 1}
    return a.events <= added


def reach(a: EventAutomaton, s: Iterable[str]) -> frozenset:
    s = frozenset(s)
    if s not in a.states:
        raise PreconditionError(f"not a state: {sorted(s)}")
    return frozenset(t for src, t in a.trans if src == s)


def reach_closure(a: EventAutomaton) -> list[frozenset]:
    """Kleene iterates of ``X ↦ {s0} ∪ reach(X)``; the last one is the lfp."""
    chain = [frozenset({a.initial})]
    while True:
        cur = chain[-1]
        nxt = cur | frozenset(t for s, t in a.trans if s in cur)
        if nxt == cur:
            return chain
        chain.append(nxt)


def is_complete(a: EventAutomaton) -> bool:
    return reach_closure(a)[-1] == a.states


def lattice_of(x: Structure) -> Lattice:
    """Configuration lattice of any supported structure."""
    if isinstance(x, Cdes):
        return cdes_configurations(x)
    if isinstance(x, cl.Pes):
        return cl.pes_configurations(x)
    if isinstance(x, cl.Fes):
        return cl.fes_configurations(x)
    if isinstance(x, cl.Rpes):
        return cl.rpes_configurations(x)
    if isinstance(x, cl.Dces):
        return cl.dces_configurations(x)
    if isinstance(x, cl.Ies):
        return cl.ies_configurations(x)
    if isinstance(x, cl.Rces):
        return cl.rces_configurations(x)
    if isinstance(x, EventAutomaton):
        return x.to_lattice()
    raise TypeError(f"unsupported structure {type(x).__name__}")


def from_structure(x: Structure) -> EventAutomaton:
    if isinstance(x, EventAutomaton):
        return x
    return EventAutomaton.from_lattice(lattice_of(x))


def equivalent(a: EventAutomaton, b: EventAutomaton) -> bool:
    """Literal component-wise equality, not isomorphism."""
    return (a.events == b.events and a.states == b.states
            and a.trans == b.trans and a.initial == b.initial)


def difference(a: EventAutomaton, b: EventAutomaton) -> str | None:
    """A human-readable witness of the first mismatch, or ``None`` if equal."""
    if a.events != b.events:
        return f"events differ: {sorted(a.events ^ b.events)}"
    if a.initial != b.initial:
        return "initial states differ"
    for s in sorted_sets(a.states ^ b.states):
        side = "first" if s in a.states else "second"
        return "state {" + " ".join(sorted(s)) + "} only in " + side
    for s, t in sorted(a.trans ^ b.trans, key=lambda p: (set_key(p[0]), set_key(p[1]))):
        side = "first" if (s, t) in a.trans else "second"
        return ("edge {" + " ".join(sorted(s)) + "} -> {" + " ".join(sorted(t))
                + "} only in " + side)
    return None
