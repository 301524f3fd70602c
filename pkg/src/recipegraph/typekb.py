"""Type hierarchies for actions and comestibles, plus type-distance models.

A hierarchy is a rooted DAG of type identifiers: every node is a subtype of
its ancestors, and two types are *comparable* when one is an ancestor of the
other. Type texts may be written in different ways; an alias table maps every
accepted spelling to one canonical identifier. Hierarchies are immutable after
load and all queries are pure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    CycleDetectedError,
    DanglingEdgeError,
    DuplicateAliasError,
    MultipleRootsError,
    NoRootError,
    SchemaError,
    UnknownReferenceError,
    UnknownTypeError,
)

KINDS = ("action", "comestible")


class TypeHierarchy:
    """Rooted DAG of type ids answering subtype, comparability, and depth queries.

    Construct through :func:`load_hierarchy`, which validates the invariants
    (acyclic, single root, no dangling edges, unambiguous aliases).
    """

    def __init__(
        self,
        kind: str,
        root: str,
        parents: Mapping[str, frozenset[str]],
        aliases: Mapping[str, str],
    ):
        self.kind = kind
        self.root = root
        self._parents = {t: frozenset(ps) for t, ps in parents.items()}
        self._aliases = dict(aliases)
        self._children: dict[str, set[str]] = {t: set() for t in self._parents}
        for t, ps in self._parents.items():
            for p in ps:
                self._children[p].add(t)
        # up_dist[t][u] = least number of child->parent steps from t to ancestor u
        self._up_dist: dict[str, dict[str, int]] = {
            t: self._bfs(t, self._parents) for t in self._parents
        }
        self._down_dist: dict[str, dict[str, int]] = {
            t: self._bfs(t, self._children) for t in self._parents
        }
        self.depth = max(d[self.root] for d in self._up_dist.values())

    @staticmethod
    def _bfs(start: str, edges: Mapping[str, Iterable[str]]) -> dict[str, int]:
        dist = {start: 0}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nxt in edges[cur]:
                if nxt not in dist:
                    dist[nxt] = dist[cur] + 1
                    queue.append(nxt)
        return dist

    @property
    def types(self) -> frozenset[str]:
        return frozenset(self._parents)

    @property
    def aliases(self) -> dict[str, str]:
        return dict(self._aliases)

    def __contains__(self, text: str) -> bool:
        return text in self._parents or text in self._aliases

    def resolve(self, text: str) -> str:
        """Map any accepted spelling to its canonical type id."""
        if text in self._parents:
            return text
        if text in self._aliases:
            return self._aliases[text]
        raise UnknownTypeError(text, self.kind)

    def parents(self, t: str) -> frozenset[str]:
        return self._parents[self.resolve(t)]

    def children(self, t: str) -> frozenset[str]:
        return frozenset(self._children[self.resolve(t)])

    def is_subtype(self, t1: str, t2: str) -> bool:
        """True iff ``t1`` equals ``t2`` or sits below it in the hierarchy."""
        t1, t2 = self.resolve(t1), self.resolve(t2)
        return t2 in self._up_dist[t1]

    def comparable(self, t1: str, t2: str) -> bool:
        """True iff one of the two types is an ancestor-or-self of the other."""
        return self.is_subtype(t1, t2) or self.is_subtype(t2, t1)

    def ancestors(self, t: str, within: int | None = None) -> frozenset[str]:
        """Ancestors of ``t`` including itself, optionally capped at ``within`` steps."""
        dist = self._up_dist[self.resolve(t)]
        if within is None:
            return frozenset(dist)
        return frozenset(u for u, d in dist.items() if d <= within)

    def descendants(self, t: str, within: int | None = None) -> frozenset[str]:
        dist = self._down_dist[self.resolve(t)]
        if within is None:
            return frozenset(dist)
        return frozenset(u for u, d in dist.items() if d <= within)

    def comparable_within(self, t: str, steps: int) -> frozenset[str]:
        """Types comparable to ``t`` reachable in at most ``steps`` up or down moves."""
        return self.ancestors(t, steps) | self.descendants(t, steps)

    def relatives(self, t: str, radius: int) -> frozenset[str]:
        """Types within ``radius`` steps of ``t`` treating edges as undirected."""
        t = self.resolve(t)
        dist = {t: 0}
        queue = deque([t])
        while queue:
            cur = queue.popleft()
            if dist[cur] == radius:
                continue
            for nxt in self._parents[cur] | frozenset(self._children[cur]):
                if nxt not in dist:
                    dist[nxt] = dist[cur] + 1
                    queue.append(nxt)
        return frozenset(dist)

    def up_distance(self, t: str, ancestor: str) -> int | None:
        """Least number of upward steps from ``t`` to ``ancestor``, or None."""
        return self._up_dist[self.resolve(t)].get(self.resolve(ancestor))

    def __repr__(self) -> str:  # pragma: no cover
        return f"TypeHierarchy(kind={self.kind!r}, root={self.root!r}, {len(self._parents)} types)"


@dataclass(frozen=True)
class Hierarchies:
    """The pair of hierarchies a workspace reasons over, one per node kind."""

    action: TypeHierarchy
    comestible: TypeHierarchy

    def for_kind(self, kind: str) -> TypeHierarchy:
        if kind == "action":
            return self.action
        if kind == "comestible":
            return self.comestible
        raise ValueError(f"unknown kind {kind!r}")

    def kind_of_type(self, text: str) -> str | None:
        """Which hierarchy declares ``text``, if any."""
        if text in self.comestible:
            return "comestible"
        if text in self.action:
            return "action"
        return None


def load_hierarchy(doc: Mapping) -> TypeHierarchy:
    """Build a validated hierarchy from its JSON document form.

    The document is ``{"kind", "root", "types": [{"id", "parents", "aliases"}]}``.
    Raises CycleDetectedError, MultipleRootsError, NoRootError,
    DanglingEdgeError, or DuplicateAliasError when the invariants fail, and
    SchemaError when the document shape itself is wrong.
    """
    if not isinstance(doc, Mapping):
        raise SchemaError("hierarchy", "expected an object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SchemaError("hierarchy.kind", f"expected one of {KINDS}, got {kind!r}")
    root = doc.get("root")
    if not isinstance(root, str) or not root:
        raise SchemaError("hierarchy.root", "expected a non-empty string")
    entries = doc.get("types")
    if not isinstance(entries, list):
        raise SchemaError("hierarchy.types", "expected a list")

    parents: dict[str, frozenset[str]] = {}
    aliases: dict[str, str] = {}
    for i, entry in enumerate(entries):
        path = f"hierarchy.types[{i}]"
        if not isinstance(entry, Mapping):
            raise SchemaError(path, "expected an object")
        tid = entry.get("id")
        if not isinstance(tid, str) or not tid:
            raise SchemaError(f"{path}.id", "expected a non-empty string")
        if tid in parents:
            raise DuplicateAliasError(tid, (tid, tid))
        ps = entry.get("parents", [])
        if not isinstance(ps, list) or not all(isinstance(p, str) for p in ps):
            raise SchemaError(f"{path}.parents", "expected a list of strings")
        parents[tid] = frozenset(ps)
        for alias in entry.get("aliases", []):
            if not isinstance(alias, str):
                raise SchemaError(f"{path}.aliases", "expected a list of strings")
            if alias in aliases and aliases[alias] != tid:
                raise DuplicateAliasError(alias, (aliases[alias], tid))
            aliases[alias] = tid

    for alias, target in aliases.items():
        if alias in parents and alias != target:
            raise DuplicateAliasError(alias, (alias, target))
        if target not in parents:
            raise DanglingEdgeError(alias, target)
    for t, ps in parents.items():
        for p in ps:
            if p not in parents:
                raise DanglingEdgeError(t, p)

    cycle = _find_cycle(parents)
    if cycle is not None:
        raise CycleDetectedError(cycle)

    parentless = sorted(t for t, ps in parents.items() if not ps)
    if root not in parents:
        raise NoRootError(f"declared root {root!r} is not among the types")
    if len(parentless) > 1:
        raise MultipleRootsError(tuple(parentless))
    if not parentless:
        raise NoRootError("every type has a parent; no maximal node exists")
    if parentless != [root]:
        raise NoRootError(f"declared root {root!r} has parents; maximal node is {parentless[0]!r}")

    return TypeHierarchy(kind, root, parents, aliases)


def _find_cycle(parents: Mapping[str, frozenset[str]]) -> tuple[str, ...] | None:
    """Return one directed cycle of the child->parent relation, if any."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {t: WHITE for t in parents}
    stack: list[str] = []

    def visit(t: str) -> tuple[str, ...] | None:
        color[t] = GRAY
        stack.append(t)
        for p in sorted(parents[t]):
            if color[p] == GRAY:
                return tuple(stack[stack.index(p):] + [p])
            if color[p] == WHITE:
                found = visit(p)
                if found:
                    return found
        stack.pop()
        color[t] = BLACK
        return None

    for t in sorted(parents):
        if color[t] == WHITE:
            found = visit(t)
            if found:
                return found
    return None


@dataclass(frozen=True)
class DistanceModel:
    """Symmetric non-negative distance on type pairs driving substitution cost.

    Exact pairs come from ``table``; anything else falls back to a hierarchy
    route: the two endpoints climb to their cheapest common ancestor, paying
    ``step_cost`` per step, plus ``generalization_penalty`` per level of
    difference between the endpoints' climbs. The level-shift penalty is what
    makes a same-level sibling a closer substitute than a general ancestor.
    The total is normalized by hierarchy depth, and the identity distance is
    0 regardless of table contents.
    """

    table: Mapping[tuple[str, str], float] = field(default_factory=dict)
    generalization_penalty: float = 2.0
    step_cost: float = 1.0

    @staticmethod
    def key(t1: str, t2: str) -> tuple[str, str]:
        return (t1, t2) if t1 <= t2 else (t2, t1)

    def distance(self, hierarchy: TypeHierarchy, t1: str, t2: str) -> float:
        t1, t2 = hierarchy.resolve(t1), hierarchy.resolve(t2)
        if t1 == t2:
            return 0.0
        entry = self.table.get(self.key(t1, t2))
        if entry is not None:
            return entry
        return self._fallback(hierarchy, t1, t2)

    def _fallback(self, hierarchy: TypeHierarchy, t1: str, t2: str) -> float:
        best = None
        up1 = hierarchy._up_dist[t1]
        up2 = hierarchy._up_dist[t2]
        for anc, d1 in up1.items():
            d2 = up2.get(anc)
            if d2 is None:
                continue
            cost = (d1 + d2) * self.step_cost + abs(d1 - d2) * self.generalization_penalty
            if best is None or cost < best:
                best = cost
        if best is None:  # unreachable in a rooted hierarchy
            raise UnknownTypeError(t2, hierarchy.kind)
        return best / max(1, hierarchy.depth)


def load_distances(doc, hierarchies: Hierarchies) -> DistanceModel:
    """Parse a distance document ``{"pairs": [[t1, t2, d], ...], "generalization_penalty": x}``.

    A bare JSON array is accepted as shorthand for the ``pairs`` field. Both
    types of a pair must live in the same hierarchy and distances must be
    non-negative.
    """
    if isinstance(doc, list):
        doc = {"pairs": doc}
    if not isinstance(doc, Mapping):
        raise SchemaError("distances", "expected an object or a list of triples")
    pairs = doc.get("pairs", [])
    if not isinstance(pairs, list):
        raise SchemaError("distances.pairs", "expected a list")
    table: dict[tuple[str, str], float] = {}
    for i, item in enumerate(pairs):
        path = f"distances.pairs[{i}]"
        if not (isinstance(item, list) and len(item) == 3):
            raise SchemaError(path, "expected a [t1, t2, d] triple")
        t1, t2, d = item
        if not isinstance(t1, str) or not isinstance(t2, str):
            raise SchemaError(path, "types must be strings")
        if not isinstance(d, (int, float)) or d < 0:
            raise SchemaError(path, "distance must be a non-negative number")
        kind = hierarchies.kind_of_type(t1)
        if kind is None:
            raise UnknownReferenceError(f"{path}: type {t1!r} is not declared in any hierarchy")
        h = hierarchies.for_kind(kind)
        if t2 not in h:
            raise UnknownReferenceError(f"{path}: type {t2!r} is not in the {kind} hierarchy")
        table[DistanceModel.key(h.resolve(t1), h.resolve(t2))] = float(d)
    penalty = doc.get("generalization_penalty", 2.0)
    if not isinstance(penalty, (int, float)) or penalty < 0:
        raise SchemaError("distances.generalization_penalty", "expected a non-negative number")
    step = doc.get("step_cost", 1.0)
    if not isinstance(step, (int, float)) or step < 0:
        raise SchemaError("distances.step_cost", "expected a non-negative number")
    return DistanceModel(table=table, generalization_penalty=float(penalty), step_cost=float(step))
