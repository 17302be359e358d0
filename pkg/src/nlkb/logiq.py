"""
A small relational query engine in the miniKanren tradition.

A goal is a callable taking a :class:`Store` and returning an iterator of
stores. Search is depth-first; disjunctions try their branches in order, so
answers always come back in the same order for the same facts.

Terms are atoms (str, numbers, None, bool), :class:`Var`, tuples/lists
(sequences unify element-wise), and mappings (records). Records unify
structurally only when both sides have the same keys; partial matching goes
through :func:`featurec`.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass

__all__ = [
    "Var", "Store", "QueryError", "Relation", "fresh", "unify", "eq", "diseq",
    "succeed", "fail", "conj", "disj_all", "conde", "committed", "conda",
    "once", "featurec", "membero", "in_interval", "project", "run_all",
    "walk", "walk_star", "reify",
]

_counter = itertools.count()


class Var:
    __slots__ = ("name", "id")

    def __init__(self, name=None):
        self.id = next(_counter)
        self.name = name

    def __repr__(self):
        return f"<{self.name or '_'}.{self.id}>"


def fresh(n=None, *names):
    """``fresh()`` gives one variable, ``fresh(3)`` a tuple of three,
    ``fresh("a", "b")`` a tuple of named ones."""
    if n is None:
        return Var()
    if isinstance(n, int):
        return tuple(Var() for _ in range(n))
    return tuple(Var(name) for name in (n,) + names)


class QueryError(Exception):
    """Raised when a goal sequence is mis-ordered, e.g. projecting an
    unbound variable."""


@dataclass(frozen=True)
class Store:
    subst: Mapping = None
    diseqs: tuple = ()
    occurs_check: bool = False

    def __post_init__(self):
        if self.subst is None:
            object.__setattr__(self, "subst", {})


def walk(term, subst):
    while isinstance(term, Var) and term in subst:
        term = subst[term]
    return term


def walk_star(term, subst):
    term = walk(term, subst)
    if isinstance(term, Var):
        return term
    if isinstance(term, tuple):
        return tuple(walk_star(t, subst) for t in term)
    if isinstance(term, list):
        return [walk_star(t, subst) for t in term]
    if isinstance(term, dict):
        return {k: walk_star(v, subst) for k, v in term.items()}
    return term


def _is_seq(t):
    return isinstance(t, (tuple, list))


def _occurs(v, term, subst):
    term = walk(term, subst)
    if term is v:
        return True
    if _is_seq(term):
        return any(_occurs(v, t, subst) for t in term)
    if isinstance(term, dict):
        return any(_occurs(v, t, subst) for t in term.values())
    return False


def _extend(v, term, subst, occurs_check):
    if occurs_check and _occurs(v, term, subst):
        return None
    s = dict(subst)
    s[v] = term
    return s


def _unify(a, b, subst, occurs_check=False):
    """Return the extended substitution, or None on clash."""
    a = walk(a, subst)
    b = walk(b, subst)
    if a is b:
        return subst
    if isinstance(a, Var):
        return _extend(a, b, subst, occurs_check)
    if isinstance(b, Var):
        return _extend(b, a, subst, occurs_check)
    if _is_seq(a) and _is_seq(b):
        if len(a) != len(b):
            return None
        for x, y in zip(a, b):
            subst = _unify(x, y, subst, occurs_check)
            if subst is None:
                return None
        return subst
    if isinstance(a, Mapping) and isinstance(b, Mapping):
        if a == b:
            return subst
        if set(a.keys()) != set(b.keys()):
            return None
        for k in a.keys():
            subst = _unify(a[k], b[k], subst, occurs_check)
            if subst is None:
                return None
        return subst
    if _is_seq(a) or _is_seq(b) or isinstance(a, Mapping) or isinstance(b, Mapping):
        return None
    # bool is an int subclass; keep True distinct from 1
    if type(a) is bool or type(b) is bool:
        return subst if type(a) is type(b) and a == b else None
    return subst if a == b else None


def _check_diseqs(store, subst):
    """Re-check every disequality against ``subst``. Returns the surviving
    constraints, or None when one of them is violated."""
    kept = []
    for a, b in store.diseqs:
        s2 = _unify(a, b, subst, store.occurs_check)
        if s2 is None:
            continue  # can never become equal
        if len(s2) == len(subst):
            return None  # already equal
        kept.append((a, b))
    return tuple(kept)


def _with_subst(store, subst):
    if subst is store.subst:
        return store
    diseqs = _check_diseqs(store, subst) if store.diseqs else ()
    if diseqs is None:
        return None
    return Store(subst, diseqs, store.occurs_check)


# --- goal constructors ------------------------------------------------------

def succeed(store):
    yield store


def fail(store):
    return iter(())


def unify(a, b):
    def goal(store):
        s = _unify(a, b, store.subst, store.occurs_check)
        if s is None:
            return
        new = _with_subst(store, s)
        if new is not None:
            yield new
    return goal


eq = unify


def diseq(a, b):
    def goal(store):
        s = _unify(a, b, store.subst, store.occurs_check)
        if s is None:
            yield store
        elif len(s) == len(store.subst):
            return
        else:
            yield Store(store.subst, store.diseqs + ((a, b),), store.occurs_check)
    return goal


def _bind(stream, goal):
    for store in stream:
        yield from goal(store)


def conj(*goals):
    if not goals:
        return succeed
    if len(goals) == 1:
        return goals[0]

    def goal(store):
        stream = goals[0](store)
        for g in goals[1:]:
            stream = _bind(stream, g)
        return stream
    return goal


def disj_all(branches):
    """Each branch is a sequence of goals run in conjunction. Answers come
    depth-first in branch order."""
    branches = [conj(*b) if _is_seq(b) else b for b in branches]

    def goal(store):
        for branch in branches:
            yield from branch(store)
    return goal


def conde(*branches):
    return disj_all(branches)


def committed(branches):
    """Soft cut: the first branch whose head goal succeeds supplies every
    answer; later branches are never tried."""
    branches = [tuple(b) if _is_seq(b) else (b,) for b in branches]

    def goal(store):
        for head, *rest in branches:
            stream = head(store)
            first = next(stream, None)
            if first is None:
                continue
            tail = conj(*rest)
            yield from tail(first)
            for s in stream:
                yield from tail(s)
            return
    return goal


def conda(*branches):
    return committed(branches)


def once(g):
    def goal(store):
        for s in g(store):
            yield s
            return
    return goal


def featurec(record, pattern):
    """Succeed when every key of ``pattern`` is present in ``record`` and the
    values unify. Extra keys in ``record`` are ignored."""
    def goal(store):
        r = walk(record, store.subst)
        if isinstance(r, Var):
            raise QueryError("featurec on an unbound record")
        if not isinstance(r, Mapping):
            return
        s = store.subst
        for k, v in pattern.items():
            if k not in r:
                return
            s = _unify(r[k], v, s, store.occurs_check)
            if s is None:
                return
        new = _with_subst(store, s)
        if new is not None:
            yield new
    return goal


def membero(x, coll):
    def goal(store):
        c = walk(coll, store.subst)
        if isinstance(c, Var):
            raise QueryError("membero over an unbound collection")
        for item in c:
            yield from unify(x, item)(store)
    return goal


def in_interval(x, lo, hi):
    """Constrain ``x`` to the integers ``lo..hi`` (inclusive); an unbound
    ``x`` is enumerated in ascending order."""
    def goal(store):
        v = walk(x, store.subst)
        if isinstance(v, Var):
            for i in range(lo, hi + 1):
                yield from unify(v, i)(store)
        elif isinstance(v, int) and not isinstance(v, bool) and lo <= v <= hi:
            yield store
    return goal


def project(vars, f):
    """Call ``f`` with the current values of ``vars``; it must return a goal
    (or a bool, treated as succeed/fail)."""
    vars = tuple(vars)

    def goal(store):
        values = []
        for v in vars:
            val = walk_star(v, store.subst)
            if not _ground(val):
                raise QueryError(f"project: {v!r} is not ground")
            values.append(val)
        g = f(*values)
        if g is True:
            g = succeed
        elif g is False or g is None:
            g = fail
        yield from g(store)
    return goal


def _ground(term):
    if isinstance(term, Var):
        return False
    if _is_seq(term):
        return all(_ground(t) for t in term)
    if isinstance(term, dict):
        return all(_ground(t) for t in term.values())
    return True


# --- relations --------------------------------------------------------------

class Relation:
    """A finite fact table. Facts keep insertion order and are stored once
    each; calling the relation gives a goal."""

    def __init__(self, name, arity):
        if arity < 1:
            raise ValueError("arity must be positive")
        self.name = name
        self.arity = arity
        self._facts = {}
        self._index = [dict() for _ in range(arity)]

    def add(self, *fact):
        if len(fact) != self.arity:
            raise ValueError(f"{self.name}/{self.arity} got {len(fact)} values")
        if fact in self._facts:
            return
        self._facts[fact] = None
        for i, v in enumerate(fact):
            self._index[i].setdefault(v, []).append(fact)

    @property
    def facts(self):
        return list(self._facts)

    def __len__(self):
        return len(self._facts)

    def __contains__(self, fact):
        return tuple(fact) in self._facts

    def __call__(self, *args):
        if len(args) != self.arity:
            raise ValueError(f"{self.name}/{self.arity} called with {len(args)} args")

        def goal(store):
            candidates = None
            for i, a in enumerate(args):
                a = walk_star(a, store.subst)
                if _ground(a):
                    try:
                        hit = self._index[i].get(a, ())
                    except TypeError:  # unhashable
                        continue
                    if candidates is None or len(hit) < len(candidates):
                        candidates = hit
            if candidates is None:
                candidates = self._facts
            for fact in list(candidates):
                yield from unify(args, fact)(store)
        return goal

    def __repr__(self):
        return f"Relation({self.name}/{self.arity}, {len(self)} facts)"


# --- running ----------------------------------------------------------------

class _Reified(str):
    pass


def reify(term, subst):
    """Replace the unbound variables left in ``term`` by ``_0``, ``_1``..."""
    term = walk_star(term, subst)
    names = {}

    def go(t):
        if isinstance(t, Var):
            if t not in names:
                names[t] = _Reified(f"_{len(names)}")
            return names[t]
        if isinstance(t, tuple):
            return tuple(go(x) for x in t)
        if isinstance(t, list):
            return [go(x) for x in t]
        if isinstance(t, dict):
            return {k: go(v) for k, v in t.items()}
        return t
    return go(term)


def run_all(vars, goal, *, occurs_check=False, limit=None):
    """Every binding of ``vars`` in search order. A single variable gives a
    list of values; a sequence of variables gives a list of tuples."""
    single = isinstance(vars, Var)
    target = vars if single else tuple(vars)
    out = []
    for store in goal(Store(occurs_check=occurs_check)):
        out.append(reify(target, store.subst))
        if limit is not None and len(out) >= limit:
            break
    return out
