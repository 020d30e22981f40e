"""
Shared vocabulary: event names, event sets, conflict relations, the
conflict-freeness predicate, error types and the labelled lattice that every
configuration builder returns.

Event sets are plain ``frozenset`` objects of event names.  Everything that
is printed or serialized is ordered lexicographically so that output is
deterministic.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

EventSet = frozenset  # frozenset[str]

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")

EMPTY: frozenset = frozenset()


# --------------------------------------------------------------------------- #
# Errors
# --------------------------------------------------------------------------- #


class ValidationError(ValueError):
    """A structure violates one of the invariants of its kind.

    ``rule`` names the violated rule (e.g. ``"irreflexivity"`` or
    ``"condition 4"``), ``witness`` is the offending item.  ``line``/``col``
    are filled in by the parser when the item can be traced to a declaration.
    """

    def __init__(self, rule: str, witness: object = None, line: int | None = None,
                 col: int | None = None):
        self.rule = rule
        self.witness = witness
        self.line = line
        self.col = col
        super().__init__(str(self))

    def __str__(self) -> str:
        where = f"{self.line}:{self.col}: " if self.line is not None else ""
        return f"{where}{self.rule}: {_show(self.witness)}"


class ModelSyntaxError(ValueError):
    """Malformed model text, located by 1-based line and column."""

    def __init__(self, line: int, col: int, message: str):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"{line}:{col}: {message}")


class PreconditionError(ValueError):
    """An operation was called outside its domain (unknown event, e in C, ...)."""


class HypothesisError(ValueError):
    """A translation hypothesis does not hold for the given input."""

    name = "hypothesis"

    def __init__(self, message: str = ""):
        super().__init__(f"{self.name}: {message}" if message else self.name)


class NotSimple(HypothesisError):
    name = "NotSimple"


class NotComplete(HypothesisError):
    name = "NotComplete"


class DanglingEvent(HypothesisError):
    name = "DanglingEvent"


class NotFull(HypothesisError):
    name = "NotFull"


class NotFaithful(HypothesisError):
    name = "NotFaithful"


class NotGes(HypothesisError):
    name = "NotGes"


class UnreachableConfiguration(UserWarning):
    """A declaratively defined configuration cannot be reached from the empty set."""


# --------------------------------------------------------------------------- #
# Events and event sets
# --------------------------------------------------------------------------- #


def check_name(name: str) -> str:
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise ValidationError("event name", name)
    return name


def es(*names: str) -> frozenset:
    """Build an event set; ``es()`` is the empty set, ``es("a b")`` splits on blanks."""
    out: set[str] = set()
    for n in names:
        out.update(n.split())
    return frozenset(out)


def event_set(events: Iterable[str] | str) -> frozenset:
    """Events given as an iterable of names or as one blank-separated string."""
    return es(events) if isinstance(events, str) else frozenset(events)


def set_key(s: Iterable[str]) -> tuple:
    """Total order on event sets: by size, then lexicographically."""
    items = sorted(s)
    return (len(items), items)


def sorted_sets(sets: Iterable[frozenset]) -> list[frozenset]:
    return sorted(sets, key=set_key)


def fmt_set(s: Iterable[str], sep: str = ",") -> str:
    return "{" + sep.join(sorted(s)) + "}"


def _show(x: object) -> str:
    if isinstance(x, frozenset) and all(isinstance(e, str) for e in x):
        return fmt_set(x)
    if isinstance(x, tuple):
        return "(" + ", ".join(_show(i) for i in x) + ")"
    return str(x)


# --------------------------------------------------------------------------- #
# Conflict
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class ConflictRelation:
    """Symmetric conflict, stored as unordered pairs.

    With ``allow_self`` a pair may be a singleton, meaning the event conflicts
    with itself (flow event structures only).
    """

    pairs: frozenset = EMPTY
    allow_self: bool = False

    def __post_init__(self) -> None:
        for p in self.pairs:
            if not isinstance(p, frozenset) or not 1 <= len(p) <= 2:
                raise ValidationError("conflict pair", p)
            if len(p) == 1 and not self.allow_self:
                (e,) = p
                raise ValidationError("irreflexivity", (e, e))

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, str]] = (), allow_self: bool = False) -> ConflictRelation:
        return cls(frozenset(frozenset(p) for p in pairs), allow_self)

    def conflicts(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.pairs

    def events(self) -> frozenset:
        return frozenset().union(*self.pairs) if self.pairs else EMPTY

    def __iter__(self) -> Iterator[tuple[str, str]]:
        for p in sorted(self.pairs, key=set_key):
            items = sorted(p)
            yield (items[0], items[-1])

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: object) -> bool:
        return frozenset(pair) in self.pairs  # type: ignore[arg-type]

    def issubset(self, other: ConflictRelation) -> bool:
        return self.pairs <= other.pairs


def is_conflict_free(xs: Iterable[str], k: ConflictRelation) -> bool:
    xs = list(xs)
    for i, a in enumerate(xs):
        if k.allow_self and frozenset((a,)) in k.pairs:
            return False
        for b in xs[i + 1:]:
            if k.conflicts(a, b):
                return False
    return True


def compatible(xs: Iterable[str], e: str, k: ConflictRelation) -> bool:
    """Incremental conflict check: is CF(xs ∪ {e}) given CF(xs)."""
    if k.allow_self and k.conflicts(e, e):
        return False
    return not any(k.conflicts(x, e) for x in xs if x != e)


# --------------------------------------------------------------------------- #
# Lattice
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Lattice:
    """Configurations of a structure plus the single-event steps between them.

    ``edges`` holds ``(source, event, target)`` with ``target = source | {event}``.
    """

    events: frozenset
    states: frozenset
    edges: frozenset
    initial: frozenset = EMPTY
    _succ: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.initial not in self.states:
            raise ValidationError("initial state", self.initial)
        succ: dict[frozenset, list] = {s: [] for s in self.states}
        for src, e, dst in self.edges:
            if src not in self.states or dst not in self.states:
                raise ValidationError("edge endpoint", (src, e, dst))
            if e in src or dst != src | {e}:
                raise ValidationError("edge label", (src, e, dst))
            succ[src].append((e, dst))
        object.__setattr__(self, "_succ", succ)

    def successors(self, s: frozenset) -> list[tuple[str, frozenset]]:
        return sorted(self._succ[s], key=lambda p: p[0])

    def predecessors(self, s: frozenset) -> list[frozenset]:
        return sorted_sets(src for src, _, dst in self.edges if dst == s)

    def sorted_states(self) -> list[frozenset]:
        return sorted_sets(self.states)

    def sorted_edges(self) -> list[tuple[frozenset, str, frozenset]]:
        return sorted(self.edges, key=lambda t: (set_key(t[0]), t[1]))

    def unreachable(self) -> list[frozenset]:
        seen = {self.initial}
        todo = deque([self.initial])
        while todo:
            s = todo.popleft()
            for _, t in self._succ[s]:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return sorted_sets(self.states - seen)


def explore(events: Iterable[str], can_add: Callable[[frozenset, str], bool]) -> Lattice:
    """Breadth-first closure of ``{∅}`` under single-event extension.

    ``can_add(C, e)`` is only asked for ``e ∉ C`` and must include any
    conflict check the kind requires.
    """
    events = frozenset(events)
    order = sorted(events)
    states = {EMPTY}
    edges = set()
    todo = deque([EMPTY])
    while todo:
        c = todo.popleft()
        for e in order:
            if e in c or not can_add(c, e):
                continue
            d = c | {e}
            edges.add((c, e, d))
            if d not in states:
                states.add(d)
                todo.append(d)
    return Lattice(events, frozenset(states), frozenset(edges))


def single_step_lattice(events: Iterable[str], states: Iterable[frozenset]) -> Lattice:
    """Lattice whose edges are all one-event inclusions between the given states."""
    events = frozenset(events)
    states = frozenset(states)
    edges = frozenset(
        (s, e, s | {e}) for s in states for e in events - s if s | {e} in states
    )
    return Lattice(events, states, edges)
