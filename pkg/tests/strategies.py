"""Hypothesis strategies for small random structures (at most five events)."""

from itertools import combinations

from hypothesis import strategies as st

from evstruct import Cdes, ConflictRelation, Dces, EventAutomaton, Entry, Fes, Ies, Pes, Rces, Rpes
from evstruct.classical import Grow, Inhibitor, Shrink, transitive_closure
from evstruct.kernel import compatible

NAMES = ["a", "b", "c", "d", "e"]


def _cf(items, k: ConflictRelation) -> frozenset:
    """Greedy conflict-free subset, keeping the lexicographically first events."""
    out: set = set()
    for x in sorted(items):
        if compatible(out, x, k):
            out.add(x)
    return frozenset(out)


@st.composite
def event_sets(draw, min_size=0, max_size=5):
    n = draw(st.integers(min_size, max_size))
    return NAMES[:n]


@st.composite
def conflicts(draw, events):
    pairs = list(combinations(events, 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return ConflictRelation.of(chosen)


def _small(events, size):
    if not events:
        return st.just(frozenset())
    return st.frozensets(st.sampled_from(events), max_size=min(size, len(events)))


@st.composite
def cdes(draw):
    events = draw(event_sets())
    k = draw(conflicts(events))
    entries = []
    small = _small(events, 2)
    for e in events:
        for _ in range(draw(st.sampled_from([0, 1, 1, 1, 2]))):
            mods = {}
            # an empty-context element makes the event addable early
            if draw(st.integers(0, 3)):
                mods[frozenset()] = _cf(draw(small), k) if draw(st.booleans()) else frozenset()
            for _ in range(draw(st.integers(0 if mods else 1, 3))):
                x = _cf(draw(small), k)
                y = _cf(draw(small), k) if draw(st.booleans()) else frozenset()
                mods.setdefault(x, y)
            entries.append(Entry.of(e, list(mods.items())))
    return Cdes(frozenset(events), k, frozenset(entries))


@st.composite
def _dag(draw, events):
    """Random strict order given by a permutation: pairs only go forward."""
    order = draw(st.permutations(events)) if events else []
    forward = [(order[i], order[j]) for i in range(len(order)) for j in range(i + 1, len(order))]
    if not forward:
        return []
    return draw(st.lists(st.sampled_from(forward), unique=True, max_size=len(forward)))


@st.composite
def pes(draw):
    events = draw(event_sets())
    le = draw(_dag(events))
    closed = transitive_closure(le) | {(e, e) for e in events}
    above = {e: {b for a, b in closed if a == e} for e in events}
    conflict: set = set()
    seeds = [p for p in combinations(events, 2) if p not in closed and p[::-1] not in closed]
    for a, b in draw(st.lists(st.sampled_from(seeds), unique=True)) if seeds else []:
        # inherit upwards; drop the seed if inheritance would hit causality
        grown = {frozenset((x, y)) for x in above[a] for y in above[b]}
        if any(len(p) < 2 or tuple(p) in closed or tuple(p)[::-1] in closed for p in grown):
            continue
        conflict |= grown
    return Pes(frozenset(events), frozenset(le), ConflictRelation(frozenset(conflict)))


@st.composite
def rpes(draw):
    events = draw(event_sets())
    return Rpes(frozenset(events), frozenset(draw(_dag(events))), draw(conflicts(events)))


@st.composite
def fes(draw):
    events = draw(event_sets())
    pairs = [(a, b) for a in events for b in events if a != b]
    flow = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=6)) if pairs else []
    k = draw(conflicts(events))
    selfc = draw(st.lists(st.sampled_from(events), unique=True, max_size=1)) if events else []
    return Fes.build(events, flow, list(k), selfc)


@st.composite
def dces(draw, growing_only=False):
    events = draw(event_sets())
    base = Rpes(frozenset(events), frozenset(draw(_dag(events))), draw(conflicts(events)))
    shrink, grow = set(), set()
    triples = [(x, y, m) for x in events for y in events for m in events if len({x, y, m}) == 3]
    if triples:
        for c, t, m in draw(st.lists(st.sampled_from(triples), unique=True, max_size=4)):
            if (c, t) in base.en:
                if not growing_only:
                    shrink.add(Shrink(c, t, m))
            elif not transitive_closure(base.en | {(c, t)}) & {(t, t)}:
                grow.add(Grow(m, c, t))
    return Dces(base, frozenset(shrink), frozenset(grow))


@st.composite
def ies(draw):
    events = draw(event_sets())
    triples = set()
    pairs = list(combinations(events, 2))
    blocked = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=3)) if pairs else []
    for x, y in blocked:
        triples.add(Inhibitor(frozenset({x}), y, frozenset()))
        triples.add(Inhibitor(frozenset({y}), x, frozenset()))
    if events:
        for _ in range(draw(st.integers(0, 4))):
            e = draw(st.sampled_from(events))
            a = draw(st.sampled_from([frozenset()] + [frozenset({x}) for x in events]))
            shape = draw(st.integers(0, 2))
            if shape == 0:
                alts = frozenset()
            elif shape == 1:
                alts = frozenset({draw(st.sampled_from(events))})
            else:
                alts = frozenset(draw(st.sampled_from(blocked))) if blocked else frozenset()
            if a or alts:
                triples.add(Inhibitor(a, e, alts))
    return Ies(frozenset(events), frozenset(triples))


@st.composite
def rces(draw, with_empty=True):
    events = draw(event_sets())
    pairs = set()
    # most small sets get some enabling set, usually a small or empty one
    for r in (1, 2, 3):
        for y in combinations(events, r):
            if draw(st.integers(0, 4)):
                pairs.add((draw(_small(events, 1)), frozenset(y)))
    if with_empty:
        pairs.add((frozenset(), frozenset()))
    return Rces(frozenset(events), frozenset(pairs))


@st.composite
def automata(draw):
    """Arbitrary event automata with single-event transitions."""
    events = draw(event_sets())
    subsets = [frozenset(c) for r in range(len(events) + 1) for c in combinations(events, r)]
    states = {frozenset()} | set(draw(st.lists(st.sampled_from(subsets), max_size=10)))
    steps = [(s, s | {e}) for s in states for e in events if e not in s and s | {e} in states]
    steps.sort(key=lambda p: (sorted(p[0]), sorted(p[1])))
    trans = draw(st.lists(st.sampled_from(steps), unique=True)) if steps else []
    return EventAutomaton(frozenset(events), frozenset(states), frozenset(trans))


ANY_KIND = st.one_of(cdes(), pes(), fes(), rpes(), dces(), ies(), rces())
