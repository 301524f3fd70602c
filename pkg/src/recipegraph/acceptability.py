"""Acceptability tuples: which (input, action, output) type triples make sense.

A recipe is acceptable when every pair of arcs through an action is licensed
by some tuple. Tuple sets can be expanded along the hierarchies so that a
licensed triple also licenses nearby generalizations and specializations.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .core import Recipe
from .errors import SchemaError
from .typekb import Hierarchies

POLICIES = ("exact", "path-comparable")

# Slot names for restricting expansion to a subset of tuple positions.
SLOTS = ("input", "action", "output")


@dataclass(frozen=True)
class AcceptTuple:
    """One licensed (input type, action type, output type) combination."""

    input: str
    action: str
    output: str

    def as_list(self) -> list[str]:
        return [self.input, self.action, self.output]


@dataclass(frozen=True)
class AcceptabilitySet:
    """A finite set of acceptability tuples plus its matching policy.

    ``seeds`` holds the tuples the set was originally declared with;
    expansion derives new tuples from the seeds, so re-expanding at the same
    depth never drifts further.
    """

    tuples: frozenset[AcceptTuple]
    policy: str = "exact"
    depth_limit: int = 1
    seeds: frozenset[AcceptTuple] | None = None

    def __post_init__(self):
        if self.policy not in POLICIES:
            raise ValueError(f"unknown policy {self.policy!r}")
        if self.seeds is None:
            object.__setattr__(self, "seeds", self.tuples)

    def __contains__(self, triple: AcceptTuple) -> bool:
        return triple in self.tuples

    def __len__(self) -> int:
        return len(self.tuples)


def accept_set(
    triples: Iterable[tuple[str, str, str] | AcceptTuple],
    policy: str = "exact",
    depth_limit: int = 1,
) -> AcceptabilitySet:
    items = frozenset(
        t if isinstance(t, AcceptTuple) else AcceptTuple(*t) for t in triples
    )
    return AcceptabilitySet(tuples=items, policy=policy, depth_limit=depth_limit)


def load_acceptability(doc, hierarchies: Hierarchies) -> AcceptabilitySet:
    """Parse ``{"tuples": [[in, act, out], ...], "policy": ..., "depth_limit": ...}``.

    A bare JSON array is accepted as shorthand for the ``tuples`` field.
    Type texts are resolved to canonical ids; unknown types are rejected.
    """
    if isinstance(doc, list):
        doc = {"tuples": doc}
    if not isinstance(doc, Mapping):
        raise SchemaError("acceptability", "expected an object or a list of triples")
    raw = doc.get("tuples", [])
    if not isinstance(raw, list):
        raise SchemaError("acceptability.tuples", "expected a list")
    tuples = []
    for i, item in enumerate(raw):
        path = f"acceptability.tuples[{i}]"
        if not (isinstance(item, list) and len(item) == 3):
            raise SchemaError(path, "expected an [input, action, output] triple")
        t1, t2, t3 = item
        tuples.append(
            AcceptTuple(
                hierarchies.comestible.resolve(t1),
                hierarchies.action.resolve(t2),
                hierarchies.comestible.resolve(t3),
            )
        )
    policy = doc.get("policy", "exact")
    if policy not in POLICIES:
        raise SchemaError("acceptability.policy", f"expected one of {POLICIES}")
    depth = doc.get("depth_limit", 1)
    if not isinstance(depth, int) or depth < 0:
        raise SchemaError("acceptability.depth_limit", "expected a non-negative integer")
    return accept_set(tuples, policy=policy, depth_limit=depth)


@dataclass(frozen=True)
class ArcViolation:
    """One unlicensed (comestible, action, comestible) arc pair of a recipe."""

    input: str
    action: str
    output: str
    triple: AcceptTuple

    def __str__(self) -> str:
        return (
            f"({self.input}, {self.action}, {self.output}) typed "
            f"({self.triple.input}, {self.triple.action}, {self.triple.output}) is not licensed"
        )


def arc_triples(recipe: Recipe) -> list[tuple[str, str, str]]:
    """All (c, a, c') node triples where (c, a) and (a, c') are arcs."""
    graph = recipe.graph
    triples = []
    for a in sorted(graph.actions):
        ins = sorted(graph.predecessors(a))
        outs = sorted(graph.successors(a))
        for c in ins:
            for c2 in outs:
                triples.append((c, a, c2))
    return triples


def _licensed(
    triple: AcceptTuple,
    accepts: AcceptabilitySet,
    hierarchies: Hierarchies,
) -> bool:
    if triple in accepts.tuples:
        return True
    if accepts.policy == "exact":
        return False
    k = accepts.depth_limit
    h_com, h_act = hierarchies.comestible, hierarchies.action
    for t in accepts.tuples:
        if (
            triple.input in h_com.comparable_within(t.input, k)
            and triple.action in h_act.comparable_within(t.action, k)
            and triple.output in h_com.comparable_within(t.output, k)
        ):
            return True
    return False


def check_acceptable(
    recipe: Recipe, accepts: AcceptabilitySet, hierarchies: Hierarchies
) -> list[ArcViolation]:
    """Return every unlicensed arc pair; an empty list means the recipe is acceptable.

    All offending pairs are reported, not just the first, so substitution
    planners can see the full repair surface.
    """
    violations = []
    for c, a, c2 in arc_triples(recipe):
        triple = AcceptTuple(recipe.type_of(c), recipe.type_of(a), recipe.type_of(c2))
        if not _licensed(triple, accepts, hierarchies):
            violations.append(ArcViolation(c, a, c2, triple))
    return violations


def is_acceptable(
    recipe: Recipe, accepts: AcceptabilitySet, hierarchies: Hierarchies
) -> bool:
    return not check_acceptable(recipe, accepts, hierarchies)


def expand_tuples(
    accepts: AcceptabilitySet,
    hierarchies: Hierarchies,
    policy: str | None = None,
    depth_limit: int | None = None,
    slots: Iterable[str] = SLOTS,
) -> AcceptabilitySet:
    """Add every tuple comparable to a seed tuple within ``depth_limit`` steps.

    Under the exact policy the set is returned unchanged. Expansion always
    derives from the seed tuples and unions into the existing ones, which
    makes it monotone and idempotent at a fixed depth. ``slots`` restricts
    which positions may vary; the others stay fixed at the seed's type.
    """
    policy = accepts.policy if policy is None else policy
    depth = accepts.depth_limit if depth_limit is None else depth_limit
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    if policy == "exact":
        return accepts
    slots = tuple(slots)
    for s in slots:
        if s not in SLOTS:
            raise ValueError(f"unknown slot {s!r}")

    h_com, h_act = hierarchies.comestible, hierarchies.action
    generated: set[AcceptTuple] = set()
    assert accepts.seeds is not None
    for seed in accepts.seeds:
        ins = h_com.comparable_within(seed.input, depth) if "input" in slots else {seed.input}
        acts_ = h_act.comparable_within(seed.action, depth) if "action" in slots else {seed.action}
        outs = h_com.comparable_within(seed.output, depth) if "output" in slots else {seed.output}
        for t1 in ins:
            for t2 in acts_:
                for t3 in outs:
                    generated.add(AcceptTuple(t1, t2, t3))
    return replace(
        accepts,
        tuples=accepts.tuples | frozenset(generated),
        policy=policy,
        depth_limit=depth,
    )
