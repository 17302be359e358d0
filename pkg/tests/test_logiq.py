import itertools

import pytest
from hypothesis import given, settings, strategies as st

from nlkb.logiq import (QueryError, Relation, committed, conda, conde, conj, diseq,
                        disj_all, eq, fail, featurec, fresh, in_interval, membero, once,
                        project, run_all, succeed, walk_star, Store)


def animals():
    animal = Relation("animal", 2)
    animal.add("cat", "Felix")
    animal.add("cat", "Mittens")
    animal.add("dog", "Waldo")
    return animal


def cat_or_dog(animal, name, q):
    t = fresh()
    return conj(animal(t, name), membero(t, ["cat", "dog"]), eq(t, q))


class TestAnimals:
    def test_waldo(self):
        q = fresh()
        assert run_all(q, cat_or_dog(animals(), "Waldo", q)) == ["dog"]

    def test_benjamin(self):
        q = fresh()
        assert run_all(q, cat_or_dog(animals(), "Benjamin", q)) == []

    def test_reverse(self):
        q = fresh()
        assert run_all(q, cat_or_dog(animals(), q, "cat")) == ["Felix", "Mittens"]


class TestUnify:
    def test_rebinding_same_value(self):
        x = fresh()
        assert run_all(x, conj(eq(x, 4), eq(x, 4))) == [4]

    def test_elementwise(self):
        x, y = fresh(2)
        assert run_all((x, y), eq([1, y], [x, 2])) == [(1, 2)]

    def test_length_mismatch(self):
        x = fresh()
        assert run_all(x, eq([1, x], [1, 2, 3])) == []

    def test_records_need_equal_keys(self):
        x = fresh()
        assert run_all(x, eq({"a": x}, {"a": 1})) == [1]
        assert run_all(x, eq({"a": x}, {"a": 1, "b": 2})) == []

    def test_bool_is_not_int(self):
        assert run_all(fresh(), eq(True, 1)) == []

    def test_unbound_reified(self):
        x, y = fresh(2)
        assert run_all((x, y), eq(x, [y, y])) == [(["_0", "_0"], "_0")]

    def test_occurs_check_flag(self):
        x = fresh()
        assert run_all(x, eq(x, [x]), occurs_check=True) == []


class TestDiseq:
    def test_never_four(self):
        q = fresh()
        assert run_all(q, conj(diseq(q, 4), eq(q, 4))) == []

    def test_ground_distinct(self):
        assert run_all(fresh(), diseq(1, 2)) == ["_0"]

    def test_same_var(self):
        x = fresh()
        assert run_all(x, diseq(x, x)) == []

    def test_other_value(self):
        x = fresh()
        assert run_all(x, conj(diseq(x, 1), eq(x, 2))) == [2]

    def test_structured(self):
        x, y = fresh(2)
        g = conj(diseq([x, y], [1, 2]), eq(x, 1), membero(y, [1, 2, 3]))
        assert run_all(y, g) == [1, 3]


class TestBranching:
    def test_conde_order(self):
        q = fresh()
        assert run_all(q, conde([eq(q, 1)], [eq(q, 2)])) == [1, 2]

    def test_empty_conde_fails(self):
        assert run_all(fresh(), disj_all([])) == []

    def test_failing_branch_skipped(self):
        q = fresh()
        assert run_all(q, conde([fail, eq(q, 1)], [eq(q, 2)])) == [2]

    def test_committed_first_head(self):
        q = fresh()
        assert run_all(q, conda([succeed, eq(q, 1)], [eq(q, 2)])) == [1]

    def test_committed_falls_through(self):
        q = fresh()
        assert run_all(q, conda([fail, eq(q, 1)], [eq(q, 2)])) == [2]

    def test_committed_all_fail(self):
        assert run_all(fresh(), committed([[fail], [fail]])) == []

    def test_committed_keeps_all_head_answers(self):
        q = fresh()
        g = conda([membero(q, [1, 2])], [eq(q, 3)])
        assert run_all(q, g) == [1, 2]

    def test_once(self):
        q = fresh()
        assert run_all(q, once(membero(q, [1, 2, 3]))) == [1]


class TestFeatures:
    def test_extract(self):
        q = fresh()
        assert run_all(q, featurec({"a": 4, "b": 5}, {"a": q})) == [4]

    def test_empty_pattern(self):
        assert run_all(fresh(), featurec({"a": 1}, {})) == ["_0"]

    def test_missing_key(self):
        q = fresh()
        assert run_all(q, featurec({"a": 1}, {"b": q})) == []

    def test_unbound_record_is_an_error(self):
        with pytest.raises(QueryError):
            run_all(fresh(), featurec(fresh(), {"a": 1}))


class TestMembersAndIntervals:
    def test_membero(self):
        q = fresh()
        assert run_all(q, membero(q, [1, 2, 3])) == [1, 2, 3]
        assert run_all(q, membero(2, [1, 2])) == ["_0"]
        assert run_all(q, membero(q, [])) == []

    def test_interval(self):
        q = fresh()
        assert run_all(q, in_interval(q, 1, 3)) == [1, 2, 3]
        assert run_all(q, in_interval(5, 1, 3)) == []
        assert run_all(q, in_interval(2, 1, 3)) == ["_0"]


class TestProject:
    def test_ground(self):
        x = fresh()
        assert run_all(x, conj(eq(x, 3), project([x], lambda v: v > 2))) == [3]

    def test_fails(self):
        x = fresh()
        assert run_all(x, conj(eq(x, 1), project([x], lambda v: v > 2))) == []

    def test_unbound_is_an_error(self):
        x = fresh()
        with pytest.raises(QueryError):
            run_all(x, project([x], lambda v: v > 2))


def test_relation_arity_checked():
    r = Relation("r", 2)
    with pytest.raises(ValueError):
        r.add(1)
    with pytest.raises(ValueError):
        r(1)


def test_duplicate_facts_stored_once():
    r = Relation("r", 1)
    r.add(1)
    r.add(1)
    assert len(r) == 1


# --- properties -----------------------------------------------------------------

atoms = st.one_of(st.integers(-3, 3), st.sampled_from(["a", "b", "c"]))


def terms(variables):
    leaf = st.one_of(atoms, st.sampled_from(variables))
    return st.recursive(leaf, lambda inner: st.lists(inner, max_size=3).map(tuple), max_leaves=8)


VARS = fresh(4)


def _answers(goal):
    # generated terms can be cyclic; the properties are about finite terms
    return run_all(VARS, goal, occurs_check=True)


@settings(max_examples=1000, deadline=None)
@given(terms(VARS), terms(VARS))
def test_unification_symmetric(a, b):
    assert _answers(eq(a, b)) == _answers(eq(b, a))


@settings(max_examples=1000, deadline=None)
@given(terms(VARS), terms(VARS), terms(VARS))
def test_substitution_idempotent(a, b, t):
    store = next(eq(a, b)(_store()), None)
    if store is None:
        return
    once_ = walk_star(t, store.subst)
    assert walk_star(once_, store.subst) == once_


def _store():
    return Store(occurs_check=True)


facts_strategy = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)),
                          max_size=100)
pattern_slot = st.one_of(st.none(), st.integers(0, 4))


@settings(max_examples=1000, deadline=None)
@given(facts_strategy, st.tuples(pattern_slot, pattern_slot, pattern_slot), st.booleans())
def test_relation_matches_brute_force(facts, pattern, shared):
    """Query a fact table with some positions fixed, some free, and
    optionally the first two free positions forced equal."""
    r = Relation("r", 3)
    for f in facts:
        r.add(*f)
    x, y, z = fresh(3)
    args = [x, y, z]
    goals = []
    for i, p in enumerate(pattern):
        if p is not None:
            args[i] = p
    if shared and pattern[0] is None and pattern[1] is None:
        goals.append(eq(x, y))
    got = run_all((x, y, z), conj(r(*args), *goals))

    expected = []
    for f in dict.fromkeys(facts):
        if any(p is not None and p != v for p, v in zip(pattern, f)):
            continue
        if shared and pattern[0] is None and pattern[1] is None and f[0] != f[1]:
            continue
        expected.append(tuple(v if p is None else "_" for p, v in zip(pattern, f)))
    normalize = lambda rows: [tuple(v if not isinstance(v, str) else "_" for v in row) for row in rows]  # noqa: E731
    assert normalize(got) == expected


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=30))
def test_join_matches_brute_force(edges):
    e = Relation("edge", 2)
    for a, b in edges:
        e.add(a, b)
    a, b, c = fresh(3)
    got = run_all((a, c), conj(e(a, b), e(b, c)))
    distinct = list(dict.fromkeys(edges))
    expected = [(x, w) for (x, y), (z, w) in itertools.product(distinct, distinct) if y == z]
    assert got == expected


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 5), max_size=6), st.integers(0, 5))
def test_diseq_filters_exactly(values, banned):
    q = fresh()
    assert run_all(q, conj(diseq(q, banned), membero(q, values))) == [v for v in values if v != banned]
    assert run_all(q, conj(membero(q, values), diseq(q, banned))) == [v for v in values if v != banned]


def test_ordering_is_deterministic():
    def query():
        q, r = fresh(2)
        return run_all((q, r), conj(conde([membero(q, [3, 1])], [eq(q, 2)]), membero(r, "ab")))
    assert query() == query() == [(3, "a"), (3, "b"), (1, "a"), (1, "b"), (2, "a"), (2, "b")]
