import pytest

from evstruct.kernel import (
    ConflictRelation,
    Lattice,
    ValidationError,
    check_name,
    compatible,
    es,
    explore,
    fmt_set,
    is_conflict_free,
    set_key,
    single_step_lattice,
    sorted_sets,
)


def test_names():
    assert check_name("e_1") == "e_1"
    for bad in ["", "a b", "a-b", "{a}", 3]:
        with pytest.raises(ValidationError):
            check_name(bad)


def test_event_sets_are_ordered_by_size_then_names():
    sets = [es("b c"), es(), es("a"), es("a c"), es("b")]
    assert sorted_sets(sets) == [es(), es("a"), es("b"), es("a c"), es("b c")]
    assert set_key(es("c a")) == (2, ["a", "c"])
    assert fmt_set(es("b a")) == "{a,b}"
    assert fmt_set(es()) == "{}"


def test_conflict_relation_is_symmetric_and_irreflexive():
    k = ConflictRelation.of([("a", "b")])
    assert k.conflicts("a", "b") and k.conflicts("b", "a")
    assert ("b", "a") in k and list(k) == [("a", "b")]
    with pytest.raises(ValidationError, match="irreflexivity"):
        ConflictRelation.of([("a", "a")])
    assert ConflictRelation.of([("a", "a")], allow_self=True).conflicts("a", "a")


@pytest.mark.parametrize("xs, pairs, expected", [
    ("a b", [("a", "b")], False),
    ("a c", [("a", "b")], True),
    ("", [("a", "b")], True),
    ("a b c", [], True),
])
def test_conflict_freeness(xs, pairs, expected):
    assert is_conflict_free(es(xs), ConflictRelation.of(pairs)) is expected


def test_compatible_matches_full_check():
    k = ConflictRelation.of([("a", "b"), ("c", "d")])
    for c in [es(), es("a"), es("a c")]:
        for e in "abcd":
            if e not in c:
                assert compatible(c, e, k) == is_conflict_free(c | {e}, k)
    self_k = ConflictRelation.of([("a", "a")], allow_self=True)
    assert not compatible(es(), "a", self_k)
    assert not is_conflict_free(es("a"), self_k)


def test_lattice_rejects_malformed_edges():
    with pytest.raises(ValidationError, match="edge label"):
        Lattice(es("a b"), frozenset({es(), es("a b")}), frozenset({(es(), "a", es("a b"))}))
    with pytest.raises(ValidationError, match="edge endpoint"):
        Lattice(es("a"), frozenset({es()}), frozenset({(es(), "a", es("a"))}))
    with pytest.raises(ValidationError, match="initial"):
        Lattice(es("a"), frozenset({es("a")}), frozenset())


def test_explore_and_unreachable():
    lat = explore(es("a b"), lambda c, e: e == "a" or "a" in c)
    assert lat.sorted_states() == [es(), es("a"), es("a b")]
    assert lat.successors(es()) == [("a", es("a"))]
    assert lat.predecessors(es("a b")) == [es("a")]
    assert lat.unreachable() == []
    detached = single_step_lattice(es("a b"), [es(), es("a b")])
    assert detached.edges == frozenset() and detached.unreachable() == [es("a b")]
