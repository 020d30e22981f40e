"""Classical event structures: PES, FES, rPES, DCES, IES and RCES.

Each kind validates its own invariants on construction and has a function
returning its configurations together with the one-event steps between them.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Iterable, NamedTuple

from .kernel import (
    event_set,
    EMPTY,
    ConflictRelation,
    Lattice,
    UnreachableConfiguration,
    ValidationError,
    check_name,
    compatible,
    explore,
    is_conflict_free,
    single_step_lattice,
)

# Universal subset checks in RCES steps are exponential in |Y|.
RCES_SOFT_LIMIT = 16


def _check_declared(events: frozenset, names: Iterable[str]) -> None:
    for n in names:
        if n not in events:
            raise ValidationError("undeclared event", n)


def _check_conflict(events: frozenset, conflict: ConflictRelation) -> None:
    _check_declared(events, conflict.events())


def transitive_closure(pairs: Iterable[tuple[str, str]]) -> frozenset:
    succ: dict[str, set[str]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    out = set()
    for start in list(succ):
        stack = list(succ[start])
        seen: set[str] = set()
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(succ.get(x, ()))
        out.update((start, x) for x in seen)
    return frozenset(out)


def transitive_reduction(pairs: frozenset) -> frozenset:
    """Covering pairs of a strict order given as its transitive closure."""
    strict = {(a, b) for a, b in pairs if a != b}
    mids = {b for _, b in strict}
    return frozenset(
        (a, b) for a, b in strict
        if not any((a, m) in strict and (m, b) in strict for m in mids if m not in (a, b))
    )


def _subsets(xs: Iterable[str]) -> Iterable[frozenset]:
    xs = sorted(xs)
    return (frozenset(c) for c in chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1)))


# --------------------------------------------------------------------------- #
# Prime event structures
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Pes:
    """Prime event structure.  ``leq`` may be given as generators; it is stored
    as its reflexive-transitive closure."""

    events: frozenset
    leq: frozenset = EMPTY
    conflict: ConflictRelation = ConflictRelation()
    kind = "pes"

    def __post_init__(self) -> None:
        for e in self.events:
            check_name(e)
        _check_declared(self.events, chain.from_iterable(self.leq))
        _check_conflict(self.events, self.conflict)
        if self.conflict.allow_self:
            raise ValidationError("irreflexivity", "conflict relation allows self-conflict")
        closed = transitive_closure(self.leq) | {(e, e) for e in self.events}
        object.__setattr__(self, "leq", closed)
        for a, b in closed:
            if a != b and (b, a) in closed:
                raise ValidationError("antisymmetry", (a, b))
            if a != b and self.conflict.conflicts(a, b):
                raise ValidationError("causality and conflict overlap", (a, b))
        for a, b in self.conflict:
            for x, y in ((a, b), (b, a)):
                for c in self.above(y):
                    if not self.conflict.conflicts(x, c):
                        raise ValidationError("conflict inheritance", (x, y, c))

    @classmethod
    def build(cls, events: Iterable[str], le: Iterable[tuple[str, str]] = (),
              conflict: Iterable[tuple[str, str]] = ()) -> Pes:
        return cls(event_set(events), frozenset(le), ConflictRelation.of(conflict))

    def history(self, e: str) -> frozenset:
        """⌊e⌋, the events below ``e`` including ``e``."""
        return frozenset(a for a, b in self.leq if b == e)

    def above(self, e: str) -> frozenset:
        return frozenset(b for a, b in self.leq if a == e)

    def generators(self) -> frozenset:
        return transitive_reduction(self.leq)

    def as_rpes(self) -> Rpes:
        strict = frozenset((a, b) for a, b in self.leq if a != b)
        return Rpes(self.events, strict, self.conflict)


def pes_configurations(p: Pes) -> Lattice:
    return explore(
        p.events,
        lambda c, e: p.history(e) - {e} <= c and compatible(c, e, p.conflict),
    )


# --------------------------------------------------------------------------- #
# Flow event structures
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Fes:
    events: frozenset
    flow: frozenset = EMPTY
    conflict: ConflictRelation = ConflictRelation(allow_self=True)
    kind = "fes"

    def __post_init__(self) -> None:
        for e in self.events:
            check_name(e)
        if not self.conflict.allow_self:
            object.__setattr__(self, "conflict", ConflictRelation(self.conflict.pairs, True))
        _check_declared(self.events, chain.from_iterable(self.flow))
        _check_conflict(self.events, self.conflict)
        for a, b in self.flow:
            if a == b:
                raise ValidationError("flow irreflexivity", (a, b))

    @classmethod
    def build(cls, events: Iterable[str], flow: Iterable[tuple[str, str]] = (),
              conflict: Iterable[tuple[str, str]] = (), self_conflict: Iterable[str] = ()) -> Fes:
        pairs = list(conflict) + [(e, e) for e in self_conflict]
        return cls(event_set(events), frozenset(flow), ConflictRelation.of(pairs, allow_self=True))

    def preds(self, e: str) -> frozenset:
        """fl(e): the events flowing into ``e``."""
        return frozenset(a for a, b in self.flow if b == e)

    def self_conflicting(self) -> frozenset:
        return frozenset(e for p in self.conflict.pairs if len(p) == 1 for e in p)


def is_fes_configuration(f: Fes, c: frozenset, closure: frozenset | None = None) -> bool:
    if not is_conflict_free(c, f.conflict):
        return False
    for e in c:
        for x in f.preds(e):
            if x in c:
                continue
            if not any(y in c and f.conflict.conflicts(x, y) for y in f.preds(e)):
                return False
    if closure is None:
        closure = transitive_closure(f.flow)
    return not any((b, a) in closure for a, b in closure if a != b and a in c and b in c)


def fes_configurations(f: Fes) -> Lattice:
    """All subsets meeting the three configuration conditions (exponential).

    Warns with :class:`UnreachableConfiguration` if some configuration has no
    one-event path from the empty set.
    """
    closure = transitive_closure(f.flow)
    states = [c for c in _subsets(f.events) if is_fes_configuration(f, c, closure)]
    lattice = single_step_lattice(f.events, states)
    lost = lattice.unreachable()
    if lost:
        warnings.warn(UnreachableConfiguration(f"unreachable configurations: {lost}"), stacklevel=2)
    return lattice


# --------------------------------------------------------------------------- #
# Relaxed prime event structures
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Rpes:
    events: frozenset
    en: frozenset = EMPTY  # pairs (cause, effect)
    conflict: ConflictRelation = ConflictRelation()
    kind = "rpes"

    def __post_init__(self) -> None:
        for e in self.events:
            check_name(e)
        _check_declared(self.events, chain.from_iterable(self.en))
        _check_conflict(self.events, self.conflict)
        if self.conflict.allow_self:
            raise ValidationError("irreflexivity", "conflict relation allows self-conflict")
        plus = transitive_closure(self.en)
        for a, b in sorted(self.en):
            if (a, a) in plus:
                raise ValidationError("enabling cycle", (a, b))

    @classmethod
    def build(cls, events: Iterable[str], en: Iterable[tuple[str, str]] = (),
              conflict: Iterable[tuple[str, str]] = ()) -> Rpes:
        return cls(event_set(events), frozenset(en), ConflictRelation.of(conflict))

    def ic(self, e: str) -> frozenset:
        """Immediate causes of ``e``."""
        return frozenset(a for a, b in self.en if b == e)


def rpes_configurations(r: Rpes) -> Lattice:
    return explore(r.events, lambda c, e: r.ic(e) <= c and compatible(c, e, r.conflict))


def rpes_po_check(r: Rpes, c: Iterable[str]) -> bool:
    """Is →* restricted to ``c`` a partial order (i.e. antisymmetric)?"""
    c = frozenset(c)
    star = transitive_closure(r.en)
    return not any(a != b and (b, a) in star for a, b in star if a in c and b in c)


# --------------------------------------------------------------------------- #
# Dynamic causality event structures
# --------------------------------------------------------------------------- #


class Shrink(NamedTuple):
    """``modifier`` drops the cause ``contribution`` of ``target``."""

    contribution: str
    target: str
    modifier: str


class Grow(NamedTuple):
    """``modifier`` adds the cause ``contribution`` to ``target``."""

    modifier: str
    contribution: str
    target: str


@dataclass(frozen=True)
class Dces:
    base: Rpes
    shrink: frozenset = EMPTY  # frozenset[Shrink]
    grow: frozenset = EMPTY  # frozenset[Grow]
    kind = "dces"

    def __post_init__(self) -> None:
        object.__setattr__(self, "shrink", frozenset(Shrink(*t) for t in self.shrink))
        object.__setattr__(self, "grow", frozenset(Grow(*t) for t in self.grow))
        en = self.base.en
        for t in sorted(self.shrink):
            _check_declared(self.events, t)
            if t.modifier in (t.contribution, t.target):
                raise ValidationError("modifier distinct from contribution and target", t)
        for t in sorted(self.grow):
            _check_declared(self.events, t)
            if t.modifier in (t.contribution, t.target):
                raise ValidationError("modifier distinct from contribution and target", t)
        shrunk = {(t.contribution, t.target) for t in self.shrink}
        grown = {(t.contribution, t.target) for t in self.grow}
        for t in sorted(self.shrink):
            if (t.contribution, t.target) not in grown and (t.contribution, t.target) not in en:
                raise ValidationError("condition 1", t)
        for t in sorted(self.grow):
            if (t.contribution, t.target) not in shrunk and (t.contribution, t.target) in en:
                raise ValidationError("condition 2", t)
        for t in sorted(self.grow):
            if Shrink(t.contribution, t.target, t.modifier) in self.shrink:
                raise ValidationError("condition 3", t)
        for pair in sorted(shrunk & grown):
            raise ValidationError("condition 4", pair)

    @classmethod
    def build(cls, events: Iterable[str], en: Iterable[tuple[str, str]] = (),
              conflict: Iterable[tuple[str, str]] = (), shrink: Iterable[tuple] = (),
              grow: Iterable[tuple] = ()) -> Dces:
        """``shrink`` triples are ``(contribution, target, modifier)``,
        ``grow`` triples ``(modifier, contribution, target)``."""
        return cls(Rpes.build(events, en, conflict), frozenset(shrink), frozenset(grow))

    @property
    def events(self) -> frozenset:
        return self.base.events

    @property
    def conflict(self) -> ConflictRelation:
        return self.base.conflict

    @property
    def is_ges(self) -> bool:
        return not self.shrink

    def ic(self, e: str) -> frozenset:
        return self.base.ic(e)

    def shrink_modifiers(self, e: str) -> frozenset:
        return frozenset(t.modifier for t in self.shrink if t.target == e)

    def grow_modifiers(self, e: str) -> frozenset:
        return frozenset(t.modifier for t in self.grow if t.target == e)

    def dropped_by(self, m: str, e: str) -> frozenset:
        return frozenset(t.contribution for t in self.shrink if t.modifier == m and t.target == e)

    def added_by(self, m: str, e: str) -> frozenset:
        return frozenset(t.contribution for t in self.grow if t.modifier == m and t.target == e)


def dces_aux(d: Dces, h: Iterable[str], e: str) -> tuple[frozenset, frozenset]:
    """Causes of ``e`` dropped and added by the modifiers present in ``h``."""
    h = frozenset(h)
    dropped = frozenset().union(*(d.dropped_by(m, e) for m in h & d.shrink_modifiers(e)))
    added = frozenset().union(*(d.added_by(m, e) for m in h & d.grow_modifiers(e)))
    return dropped, added


def dces_required(d: Dces, c: frozenset, e: str) -> frozenset:
    dropped, added = dces_aux(d, c, e)
    return (d.ic(e) | added) - dropped


def dces_configurations(d: Dces) -> Lattice:
    return explore(
        d.events,
        lambda c, e: dces_required(d, c, e) <= c and compatible(c, e, d.conflict),
    )


# --------------------------------------------------------------------------- #
# Inhibitor event structures
# --------------------------------------------------------------------------- #


class Inhibitor(NamedTuple):
    """``a ⊢ e ↠ A``: once the (at most one) event of ``a`` occurred, ``target``
    needs one of ``alternatives`` first."""

    inhibitor: frozenset
    target: str
    alternatives: frozenset


@dataclass(frozen=True)
class Ies:
    events: frozenset
    triples: frozenset = EMPTY  # frozenset[Inhibitor]
    kind = "ies"

    def __post_init__(self) -> None:
        for e in self.events:
            check_name(e)
        triples = frozenset(Inhibitor(frozenset(a), e, frozenset(alts)) for a, e, alts in self.triples)
        object.__setattr__(self, "triples", triples)
        for t in sorted(triples, key=_inh_key):
            _check_declared(self.events, chain(t.inhibitor, (t.target,), t.alternatives))
            if len(t.inhibitor) > 1:
                raise ValidationError("inhibitor has at most one event", t)
            if not t.inhibitor and not t.alternatives:
                raise ValidationError("a ∪ A non-empty", t)
        k = self.induced_conflict()
        for t in sorted(triples, key=_inh_key):
            for x, y in combinations(sorted(t.alternatives), 2):
                if not k.conflicts(x, y):
                    raise ValidationError("alternatives pairwise conflicting", (t, (x, y)))

    @classmethod
    def build(cls, events: Iterable[str], triples: Iterable[tuple] = ()) -> Ies:
        return cls(event_set(events), frozenset(
            Inhibitor(frozenset(a), e, frozenset(alts)) for a, e, alts in triples))

    def induced_conflict(self) -> ConflictRelation:
        blocks = {(next(iter(t.inhibitor)), t.target) for t in self.triples
                  if t.inhibitor and not t.alternatives}
        return ConflictRelation.of(
            (a, b) for a, b in blocks if a != b and (b, a) in blocks
        )

    def for_target(self, e: str) -> list[Inhibitor]:
        return sorted((t for t in self.triples if t.target == e), key=_inh_key)

    def sorted_triples(self) -> list[Inhibitor]:
        return sorted(self.triples, key=_inh_key)


def _inh_key(t: Inhibitor) -> tuple:
    return (t.target, sorted(t.inhibitor), sorted(t.alternatives))


def ies_allows(i: Ies, c: frozenset, e: str) -> bool:
    return all(not t.inhibitor <= c or c & t.alternatives for t in i.for_target(e))


def ies_configurations(i: Ies) -> Lattice:
    return explore(i.events, lambda c, e: ies_allows(i, c, e))


# --------------------------------------------------------------------------- #
# Event structures with resolvable conflicts
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Rces:
    events: frozenset
    enabling: frozenset = EMPTY  # frozenset[(X, Y)] meaning X ⊢ Y
    kind = "rces"
    _by_rhs: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        for e in self.events:
            check_name(e)
        enabling = frozenset((frozenset(x), frozenset(y)) for x, y in self.enabling)
        object.__setattr__(self, "enabling", enabling)
        by_rhs: dict[frozenset, list[frozenset]] = {}
        for x, y in enabling:
            _check_declared(self.events, x | y)
            by_rhs.setdefault(y, []).append(x)
        object.__setattr__(self, "_by_rhs", by_rhs)

    @classmethod
    def build(cls, events: Iterable[str], enabling: Iterable[tuple[Iterable[str], Iterable[str]]] = ()) -> Rces:
        return cls(event_set(events), frozenset((frozenset(x), frozenset(y)) for x, y in enabling))

    def entails(self, w_within: frozenset, z: frozenset) -> bool:
        """Is there ``W ⊆ w_within`` with ``W ⊢ z``?"""
        return any(w <= w_within for w in self._by_rhs.get(z, ()))


def rces_step(r: Rces, x: Iterable[str], y: Iterable[str]) -> bool:
    """``X ⇝ Y``.  Checks every subset of ``Y``; keep ``|Y|`` below ``RCES_SOFT_LIMIT``."""
    x, y = frozenset(x), frozenset(y)
    if not x <= y or len(y - x) > 1:
        return False
    if len(y) > RCES_SOFT_LIMIT:
        warnings.warn(f"rces_step over {len(y)} events enumerates 2^{len(y)} subsets",
                      ResourceWarning, stacklevel=2)
    return all(r.entails(x, z) for z in _subsets(y))


def rces_configurations(r: Rces) -> Lattice:
    if not rces_step(r, EMPTY, EMPTY):
        raise ValidationError("empty set is not a configuration", "∅ ⇝ ∅ fails")
    # C ⇝ C∪{e} already implies C∪{e} ⇝ C∪{e}
    return explore(r.events, lambda c, e: rces_step(r, c, c | {e}))
