"""Context-dependent event structures.

An entry ``Z ≫ e`` is a set of elements ``(X, Y)``: when the part of the
entry's context present in the current state is exactly ``X``, the events
``Y`` must already have happened for ``e`` to be added.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .kernel import (
    event_set,
    EMPTY,
    ConflictRelation,
    Lattice,
    PreconditionError,
    ValidationError,
    check_name,
    compatible,
    explore,
    is_conflict_free,
    set_key,
)


@dataclass(frozen=True, order=False)
class Element:
    modifiers: frozenset
    dependencies: frozenset

    def sort_key(self) -> tuple:
        return (set_key(self.modifiers), set_key(self.dependencies))


@dataclass(frozen=True)
class Entry:
    target: str
    elements: frozenset  # frozenset[Element]

    def __post_init__(self) -> None:
        if not self.elements:
            raise ValidationError("empty entry", self.target)
        mods = [el.modifiers for el in self.elements]
        if len(set(mods)) != len(mods):
            dup = next(m for m in mods if mods.count(m) > 1)
            raise ValidationError("duplicate modifiers", (self.target, dup))

    @classmethod
    def of(cls, target: str, elements: Iterable[tuple[Iterable[str], Iterable[str]]]) -> Entry:
        return cls(target, frozenset(Element(frozenset(x), frozenset(y)) for x, y in elements))

    @property
    def context(self) -> frozenset:
        return context(self)

    def sorted_elements(self) -> list[Element]:
        return sorted(self.elements, key=Element.sort_key)

    def sort_key(self) -> tuple:
        return (self.target, [el.sort_key() for el in self.sorted_elements()])


@dataclass(frozen=True)
class Cdes:
    events: frozenset
    conflict: ConflictRelation = ConflictRelation()
    entries: frozenset = EMPTY  # frozenset[Entry]
    _by_target: dict = field(default=None, repr=False, compare=False, hash=False)
    kind = "cdes"

    def __post_init__(self) -> None:
        for e in self.events:
            check_name(e)
        if self.conflict.allow_self:
            raise ValidationError("irreflexivity", "conflict relation allows self-conflict")
        for pair in self.conflict.pairs:
            for e in pair:
                if e not in self.events:
                    raise ValidationError("undeclared event", e)
        by_target: dict[str, list[Entry]] = {e: [] for e in self.events}
        for entry in self.entries:
            if entry.target not in self.events:
                raise ValidationError("undeclared event", entry.target)
            for el in entry.elements:
                for e in el.modifiers | el.dependencies:
                    if e not in self.events:
                        raise ValidationError("undeclared event", e)
                if not is_conflict_free(el.modifiers, self.conflict):
                    raise ValidationError("conflicting modifiers", (entry.target, el.modifiers))
                if not is_conflict_free(el.dependencies, self.conflict):
                    raise ValidationError("conflicting dependencies", (entry.target, el.dependencies))
            by_target[entry.target].append(entry)
        object.__setattr__(self, "_by_target", by_target)

    @classmethod
    def build(cls, events: Iterable[str], conflict: Iterable[tuple[str, str]] = (),
              entries: Iterable[Entry] = ()) -> Cdes:
        return cls(event_set(events), ConflictRelation.of(conflict), frozenset(entries))

    def entries_for(self, e: str) -> list[Entry]:
        return sorted(self._by_target[e], key=Entry.sort_key)

    def sorted_entries(self) -> list[Entry]:
        return sorted(self.entries, key=Entry.sort_key)


def context(entry: Entry) -> frozenset:
    """Union of the modifier sets of an entry."""
    return frozenset().union(*(el.modifiers for el in entry.elements))


def selected_element(entry: Entry, c: frozenset) -> Element | None:
    """The element whose modifiers equal ``Cxt(entry) ∩ C``, if any."""
    key = context(entry) & c
    found = [el for el in entry.elements if el.modifiers == key]
    assert len(found) <= 1, "modifier sets of an entry are pairwise distinct"
    return found[0] if found else None


def enabled(s: Cdes, c: Iterable[str], e: str) -> bool:
    """``C ⊢ e``: every entry for ``e`` selects an element whose dependencies are in C.

    Events that are the target of no entry are never enabled.  Conflict with
    ``C`` is not checked here; the configuration builder does that.
    """
    c = frozenset(c)
    if e not in s.events or not c <= s.events:
        raise PreconditionError(f"unknown event in {e!r} / {sorted(c - s.events)}")
    if e in c:
        raise PreconditionError(f"event {e!r} already in C")
    entries = s._by_target[e]
    if not entries:
        return False
    for entry in entries:
        el = selected_element(entry, c)
        if el is None or not el.dependencies <= c:
            return False
    return True


def configurations(s: Cdes) -> Lattice:
    return explore(s.events, lambda c, e: compatible(c, e, s.conflict) and enabled(s, c, e))


def semantic_conflict(s: Cdes, lattice: Lattice | None = None) -> ConflictRelation:
    """Pairs of distinct events that no configuration contains together."""
    lattice = lattice or configurations(s)
    together = set()
    for st in lattice.states:
        together.update(frozenset(p) for p in combinations(sorted(st), 2))
    every = {frozenset(p) for p in combinations(sorted(s.events), 2)}
    return ConflictRelation(frozenset(every - together))


def is_full(s: Cdes, lattice: Lattice | None = None) -> bool:
    lattice = lattice or configurations(s)
    seen = frozenset().union(*lattice.states)
    return seen == s.events


def is_faithful(s: Cdes, lattice: Lattice | None = None) -> bool:
    return semantic_conflict(s, lattice).issubset(s.conflict)
