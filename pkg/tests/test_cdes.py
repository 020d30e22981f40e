import pytest
from conftest import load

from evstruct import Cdes, ConflictRelation, Entry, configurations, context, enabled, es
from evstruct.cdes import is_faithful, is_full, selected_element, semantic_conflict
from evstruct.kernel import PreconditionError, ValidationError, is_conflict_free


def test_context_is_union_of_modifiers():
    assert context(Entry.of("a", [(es(), es()), (es("c"), es()), (es("b"), es("c"))])) == es("b c")
    assert context(Entry.of("c", [(es("a"), es()), (es("b"), es())])) == es("a b")
    assert context(Entry.of("a", [(es(), es())])) == es()


def test_entry_validation():
    with pytest.raises(ValidationError, match="empty entry"):
        Entry.of("a", [])
    with pytest.raises(ValidationError, match="duplicate modifiers"):
        Entry("a", frozenset({Entry.of("a", [(es("b"), es())]).sorted_elements()[0],
                              Entry.of("a", [(es("b"), es("c"))]).sorted_elements()[0]}))


def test_cdes_validation():
    with pytest.raises(ValidationError, match="undeclared"):
        Cdes.build("a", entries=[Entry.of("a", [(es("z"), es())])])
    with pytest.raises(ValidationError, match="conflicting modifiers"):
        Cdes.build("a b c", [("a", "b")], [Entry.of("c", [(es("a b"), es())])])
    with pytest.raises(ValidationError, match="conflicting dependencies"):
        Cdes.build("a b c", [("a", "b")], [Entry.of("c", [(es(), es("a b"))])])


def test_duplicate_entries_are_merged():
    e = Entry.of("a", [(es(), es())])
    assert len(Cdes.build("a", entries=[e, Entry.of("a", [(es(), es())])]).entries) == 1


def test_enabled_examples():
    assert not enabled(load("resolvable_conflicts"), es("a"), "b")
    assert enabled(load("removing_dependencies"), es("b"), "c")
    assert not enabled(load("removing_dependencies"), es(), "c")
    assert not enabled(load("ternary_conflict"), es("b c"), "a")
    assert not enabled(load("asymmetric_conflict"), es("b"), "a")
    assert not enabled(load("adding_dependencies"), es("b"), "c")


def test_enabled_ignores_conflict():
    # conflict is the configuration builder's job
    s = load("or_causality")
    assert enabled(s, es("a"), "b")
    assert es("a b") not in configurations(s).states


def test_enabled_preconditions():
    s = load("or_causality")
    with pytest.raises(PreconditionError):
        enabled(s, es("a"), "a")
    with pytest.raises(PreconditionError):
        enabled(s, es(), "z")


def test_entry_less_event_is_never_enabled():
    s = load("fullness_counterexample")
    assert not enabled(s, es(), "e")
    assert configurations(s).sorted_states() == [es()]


def test_selected_element():
    entry = Entry.of("a", [(es(), es()), (es("c"), es()), (es("b"), es("c"))])
    assert selected_element(entry, es("b")).dependencies == es("c")
    assert selected_element(entry, es("b c")) is None


def test_configurations_invariants():
    for name in ["resolvable_conflicts", "removing_dependencies", "or_causality",
                 "asymmetric_conflict", "adding_dependencies", "ternary_conflict"]:
        s = load(name)
        lat = configurations(s)
        assert es() in lat.states
        for c, e, d in lat.edges:
            assert c < d and d - c == {e}
            assert enabled(s, c, e) and is_conflict_free(d, s.conflict)


def test_asymmetric_conflict_only_a_then_b():
    lat = configurations(load("asymmetric_conflict"))
    assert lat.predecessors(es("a b")) == [es("a")]


def test_full_and_faithful():
    assert not is_full(load("fullness_counterexample"))
    assert is_full(load("or_causality"))
    assert not is_faithful(load("faithfulness_counterexample"))
    assert semantic_conflict(load("faithfulness_counterexample")).pairs >= {es("e1 e2")}
    assert is_faithful(load("or_causality"))
    assert is_faithful(Cdes(es(), ConflictRelation(), frozenset()))
