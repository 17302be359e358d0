"""Subject and object walks over the ``triple`` relation.

A clause is ``(predicate, object)`` or ``(predicate, object, feature)`` where
``feature`` is a partial word map such as ``{"lemma": "Edge"}``. Reusing one
logic variable as the object of several clauses forces those clauses onto the
same object group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .logiq import conj, featurec, fresh, membero, once


@dataclass(frozen=True)
class WalkClause:
    predicate: str
    object: object
    feature: dict = None


def _clause(c):
    if isinstance(c, WalkClause):
        return c
    return WalkClause(*c)


def group_has(group_ref, feature):
    """Some word map of the group matches ``feature``; one witness is
    enough."""
    members, w = fresh(2)
    return once(conj(featurec(group_ref, {"group": members}),
                     membero(w, members), featurec(w, feature)))


def _step(kb, subject, clause):
    return kb.triple_spo(subject, clause.predicate, clause.object, fresh())


def subject_walk(kb, t, clauses):
    """Thread ``t``'s subject through every clause. Features are matched
    against the subject's group."""
    s0 = fresh()
    goals = [featurec(t, {"subject": s0})]
    for c in map(_clause, clauses):
        goals.append(_step(kb, s0, c))
        if c.feature:
            goals.append(group_has(s0, c.feature))
    return conj(*goals)


def object_walk(kb, t, clauses):
    """Chain from ``t``'s object: each clause's subject is the previous
    clause's object. Features are matched against the clause's own
    object group."""
    prev = fresh()
    goals = [featurec(t, {"object": prev})]
    for c in map(_clause, clauses):
        goals.append(_step(kb, prev, c))
        if c.feature:
            goals.append(group_has(c.object, c.feature))
        prev = c.object
    return conj(*goals)
