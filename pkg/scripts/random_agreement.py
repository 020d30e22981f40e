"""Seeded random batches: set search against the trace oracle, and
translation round trips, for small structures of every kind.

    python3 scripts/random_agreement.py --seed 7 --cases 300
"""

import argparse
import random
from collections import Counter
from itertools import combinations

from evstruct import Cdes, ConflictRelation, Entry, Ies, Inhibitor, Rces, Rpes, run_oracle
from evstruct.kernel import HypothesisError, compatible
from evstruct.translate import translate, translations_for


def _cf_subset(rng, events, k, size):
    out = set()
    for e in rng.sample(events, min(size, len(events))):
        if compatible(out, e, k):
            out.add(e)
    return frozenset(out)


def _conflict(rng, events):
    return ConflictRelation.of(p for p in combinations(events, 2) if rng.random() < 0.25)


def random_cdes(rng, n):
    events = [f"e{i}" for i in range(n)]
    k = _conflict(rng, events)
    entries = []
    for e in events:
        mods = {frozenset(): _cf_subset(rng, events, k, rng.randint(0, 1))}
        for _ in range(rng.randint(0, 2)):
            mods.setdefault(_cf_subset(rng, events, k, 2), _cf_subset(rng, events, k, rng.randint(0, 1)))
        entries.append(Entry.of(e, list(mods.items())))
    return Cdes(frozenset(events), k, frozenset(entries))


def random_rpes(rng, n):
    events = [f"e{i}" for i in range(n)]
    en = {(a, b) for i, a in enumerate(events) for b in events[i + 1:] if rng.random() < 0.3}
    return Rpes(frozenset(events), frozenset(en), _conflict(rng, events))


def random_ies(rng, n):
    events = [f"e{i}" for i in range(n)]
    triples = set()
    for e in events:
        if rng.random() < 0.5:
            a = frozenset(rng.sample(events, 1)) if rng.random() < 0.5 else frozenset()
            alts = frozenset(rng.sample(events, 1)) if rng.random() < 0.7 else frozenset()
            if a or alts:
                triples.add(Inhibitor(a, e, alts))
    return Ies(frozenset(events), frozenset(triples))


def random_rces(rng, n):
    events = [f"e{i}" for i in range(n)]
    pairs = {(frozenset(), frozenset())}
    for r in (1, 2):
        for y in combinations(events, r):
            if rng.random() < 0.7:
                pairs.add((frozenset(rng.sample(events, rng.randint(0, 1))), frozenset(y)))
    return Rces(frozenset(events), frozenset(pairs))


GENERATORS = {"cdes": random_cdes, "rpes": random_rpes, "ies": random_ies, "rces": random_rces}


def main() -> None:
    ap = argparse.ArgumentParser(description="seeded oracle and translation agreement")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cases", type=int, default=200)
    ap.add_argument("--max-events", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally: Counter = Counter()
    for kind, gen in GENERATORS.items():
        for _ in range(args.cases):
            x = gen(rng, rng.randint(0, args.max_events))
            tally[kind, "oracle", run_oracle(x).agree] += 1
            for to, via in translations_for(kind):
                try:
                    ok = translate(x, to, via).verified
                except HypothesisError:
                    tally[kind, f"{to}/{via}", "refused"] += 1
                    continue
                tally[kind, f"{to}/{via}", ok] += 1
    for (kind, check, outcome), count in sorted(tally.items(), key=str):
        print(f"{kind:5} {check:12} {str(outcome):8} {count}")
    if any(outcome is False for _, _, outcome in tally):
        raise SystemExit(1)


if __name__ == "__main__":
    main()
