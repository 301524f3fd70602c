"""Recipe graphs and recipes: the central values every operator consumes.

A recipe graph is a connected acyclic bipartite graph over comestible and
action nodes satisfying five structural conditions:

  1. both node sets are non-empty;
  2. every arc joins a comestible to an action or an action to a comestible;
  3. the graph is connected and acyclic;
  4. every action has at least one incoming and one outgoing arc;
  5. every comestible has at most one incoming arc.

A recipe adds a typing function that is total, kind-respecting, and assigns
pairwise-incomparable types to distinct comestibles (no food item can be the
result of actions on itself). Recipes are immutable values: node identity is
workspace-global text and recipe equality is component-wise equality of the
node sets, arcs, and typing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InvalidRecipeError, UnknownNodeError
from .typekb import Hierarchies

Arc = tuple[str, str]


@dataclass(frozen=True)
class Violation:
    """One failed validation condition with the nodes/arcs that witness it.

    ``condition`` is the condition label: "1".."5" for graph conditions,
    "1".."6" for composition, "i".."v" for structural substitution, and the
    codes "untyped", "unknown-node", "unknown-type", "kind", "comparable" for
    typing checks.
    """

    condition: str
    message: str
    nodes: tuple[str, ...] = ()
    arcs: tuple[Arc, ...] = ()
    types: tuple[str, ...] = ()

    def __str__(self) -> str:
        parts = [f"condition {self.condition}: {self.message}"]
        if self.nodes:
            parts.append("nodes " + ", ".join(self.nodes))
        if self.arcs:
            parts.append("arcs " + ", ".join(f"{a}->{b}" for a, b in self.arcs))
        if self.types:
            parts.append("types " + ", ".join(self.types))
        return " | ".join(parts)


@dataclass(frozen=True)
class RecipeGraph:
    """Bare graph component: comestible ids, action ids, and directed arcs."""

    comestibles: frozenset[str]
    actions: frozenset[str]
    arcs: frozenset[Arc]

    @property
    def nodes(self) -> frozenset[str]:
        return self.comestibles | self.actions

    def in_degree(self, n: str) -> int:
        return sum(1 for _, t in self.arcs if t == n)

    def out_degree(self, n: str) -> int:
        return sum(1 for s, _ in self.arcs if s == n)

    def successors(self, n: str) -> frozenset[str]:
        return frozenset(t for s, t in self.arcs if s == n)

    def predecessors(self, n: str) -> frozenset[str]:
        return frozenset(s for s, t in self.arcs if t == n)


def recipe_graph(
    comestibles: Iterable[str], actions: Iterable[str], arcs: Iterable[Arc]
) -> RecipeGraph:
    """Build an (unvalidated) graph container from any iterables."""
    return RecipeGraph(
        frozenset(comestibles),
        frozenset(actions),
        frozenset((s, t) for s, t in arcs),
    )


def validate_recipe_graph(graph: RecipeGraph) -> list[Violation]:
    """Check the five structural conditions; an empty list means the graph is valid.

    Every violated condition is reported with its number and the offending
    nodes or arcs, independently of the others where possible.
    """
    violations: list[Violation] = []
    coms, acts, arcs = graph.comestibles, graph.actions, graph.arcs

    if not coms or not acts:
        missing = []
        if not coms:
            missing.append("comestibles")
        if not acts:
            missing.append("actions")
        violations.append(Violation("1", f"empty node set: {', '.join(missing)}"))

    overlap = coms & acts
    if overlap:
        violations.append(
            Violation("2", "node ids used as both kinds", nodes=tuple(sorted(overlap)))
        )
    bad_arcs = tuple(
        sorted(
            (s, t)
            for s, t in arcs
            if not (
                (s in coms and t in acts)
                or (s in acts and t in coms)
            )
        )
    )
    if bad_arcs:
        violations.append(
            Violation("2", "arcs must join a comestible and an action", arcs=bad_arcs)
        )

    nodes = coms | acts
    if nodes:
        cycle = _find_cycle(nodes, arcs)
        if cycle:
            violations.append(Violation("3", "graph contains a cycle", nodes=cycle))
        component = _component(next(iter(sorted(nodes))), nodes, arcs)
        if component != nodes:
            outside = tuple(sorted(nodes - component))
            violations.append(Violation("3", "graph is not connected", nodes=outside))

    no_in = tuple(sorted(a for a in acts if graph.in_degree(a) == 0))
    no_out = tuple(sorted(a for a in acts if graph.out_degree(a) == 0))
    if no_in:
        violations.append(Violation("4", "actions without any input", nodes=no_in))
    if no_out:
        violations.append(Violation("4", "actions without any output", nodes=no_out))

    crowded = tuple(sorted(c for c in coms if graph.in_degree(c) > 1))
    if crowded:
        violations.append(
            Violation("5", "comestibles with more than one incoming arc", nodes=crowded)
        )
    return violations


def _find_cycle(nodes: frozenset[str], arcs: frozenset[Arc]) -> tuple[str, ...] | None:
    succ: dict[str, list[str]] = {n: [] for n in nodes}
    for s, t in arcs:
        if s in succ and t in succ:
            succ[s].append(t)
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {n: WHITE for n in nodes}
    stack: list[str] = []

    def visit(n: str) -> tuple[str, ...] | None:
        color[n] = GRAY
        stack.append(n)
        for m in sorted(succ[n]):
            if color[m] == GRAY:
                return tuple(stack[stack.index(m):] + [m])
            if color[m] == WHITE:
                found = visit(m)
                if found:
                    return found
        stack.pop()
        color[n] = BLACK
        return None

    for n in sorted(nodes):
        if color[n] == WHITE:
            found = visit(n)
            if found:
                return found
    return None


def _component(start: str, nodes: frozenset[str], arcs: frozenset[Arc]) -> frozenset[str]:
    neighbours: dict[str, set[str]] = {n: set() for n in nodes}
    for s, t in arcs:
        if s in neighbours and t in neighbours:
            neighbours[s].add(t)
            neighbours[t].add(s)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in neighbours[cur]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


class Recipe:
    """A validated recipe graph together with its typing function.

    Instances compare and hash by value, so structurally equal recipes
    deduplicate in sets. Construct through :func:`make_recipe` (or
    :func:`build_recipe` from raw parts); the constructor itself does not
    validate.
    """

    __slots__ = ("graph", "typing", "_reach")

    def __init__(self, graph: RecipeGraph, typing: Mapping[str, str]):
        self.graph = graph
        self.typing = dict(typing)
        self._reach: dict[str, frozenset[str]] | None = None

    def type_of(self, n: str) -> str:
        try:
            return self.typing[n]
        except KeyError:
            raise UnknownNodeError(n) from None

    def _key(self):
        return (
            self.graph.comestibles,
            self.graph.actions,
            self.graph.arcs,
            tuple(sorted(self.typing.items())),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Recipe):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:  # pragma: no cover
        return (
            f"Recipe({len(self.graph.comestibles)} comestibles, "
            f"{len(self.graph.actions)} actions, {len(self.graph.arcs)} arcs)"
        )

    def reachable_from(self, n: str) -> frozenset[str]:
        """Nodes reachable from ``n`` along directed arcs, including ``n``."""
        if self._reach is None:
            self._reach = {}
        cached = self._reach.get(n)
        if cached is not None:
            return cached
        seen = {n}
        queue = deque([n])
        while queue:
            cur = queue.popleft()
            for nxt in self.graph.successors(cur):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        result = frozenset(seen)
        self._reach[n] = result
        return result


@dataclass(frozen=True)
class RoleSets:
    """Partition of a recipe's comestibles into inputs, outputs, and intermediates."""

    inputs: frozenset[str]
    outputs: frozenset[str]
    mids: frozenset[str]


def typing_violations(
    graph: RecipeGraph, typing: Mapping[str, str], hierarchies: Hierarchies
) -> list[Violation]:
    """Check a typing function against a structurally valid graph.

    Reports untyped or unknown nodes, kind mismatches, unknown types, and
    every pair of distinct comestibles whose types are comparable.
    """
    violations: list[Violation] = []
    nodes = graph.nodes
    untyped = tuple(sorted(nodes - set(typing)))
    if untyped:
        violations.append(Violation("untyped", "nodes without a type", nodes=untyped))
    stray = tuple(sorted(set(typing) - nodes))
    if stray:
        violations.append(
            Violation("unknown-node", "typing mentions nodes outside the graph", nodes=stray)
        )

    resolved: dict[str, str] = {}
    for n in sorted(nodes & set(typing)):
        kind = "comestible" if n in graph.comestibles else "action"
        own = hierarchies.for_kind(kind)
        text = typing[n]
        if text in own:
            resolved[n] = own.resolve(text)
            continue
        other = hierarchies.kind_of_type(text)
        if other is not None:
            violations.append(
                Violation(
                    "kind",
                    f"{kind} node typed with a {other} type",
                    nodes=(n,),
                    types=(text,),
                )
            )
        else:
            violations.append(
                Violation("unknown-type", "type not found in any hierarchy", nodes=(n,), types=(text,))
            )

    h_com = hierarchies.comestible
    typed_coms = sorted(c for c in graph.comestibles if c in resolved)
    for i, c1 in enumerate(typed_coms):
        for c2 in typed_coms[i + 1:]:
            if h_com.comparable(resolved[c1], resolved[c2]):
                violations.append(
                    Violation(
                        "comparable",
                        "distinct comestibles with comparable types",
                        nodes=(c1, c2),
                        types=(resolved[c1], resolved[c2]),
                    )
                )
    return violations


def make_recipe(
    graph: RecipeGraph, typing: Mapping[str, str], hierarchies: Hierarchies
) -> Recipe:
    """Validate a typing over an already-valid graph and build the recipe.

    Type texts are resolved to canonical ids, so recipes built from aliased
    spellings compare equal. Raises InvalidRecipeError listing every typing
    violation.
    """
    violations = typing_violations(graph, typing, hierarchies)
    if violations:
        raise InvalidRecipeError(violations)
    canonical = {
        n: hierarchies.for_kind("comestible" if n in graph.comestibles else "action").resolve(t)
        for n, t in typing.items()
    }
    return Recipe(graph, canonical)


def build_recipe(
    comestibles: Iterable[str],
    actions: Iterable[str],
    arcs: Iterable[Arc],
    typing: Mapping[str, str],
    hierarchies: Hierarchies,
) -> Recipe:
    """Validate graph then typing, raising InvalidRecipeError on any failure."""
    graph = recipe_graph(comestibles, actions, arcs)
    graph_violations = validate_recipe_graph(graph)
    if graph_violations:
        raise InvalidRecipeError(graph_violations)
    return make_recipe(graph, typing, hierarchies)


def roles(recipe: Recipe | RecipeGraph) -> RoleSets:
    """Partition comestibles: inputs have no incoming arc, outputs no outgoing arc."""
    graph = recipe.graph if isinstance(recipe, Recipe) else recipe
    has_in = {t for _, t in graph.arcs}
    has_out = {s for s, _ in graph.arcs}
    inputs = frozenset(c for c in graph.comestibles if c not in has_in)
    outputs = frozenset(c for c in graph.comestibles if c not in has_out)
    mids = graph.comestibles - inputs - outputs
    return RoleSets(inputs, outputs, mids)


def coms(recipe: Recipe) -> frozenset[str]:
    return recipe.graph.comestibles


def acts(recipe: Recipe) -> frozenset[str]:
    return recipe.graph.actions


def nodes(recipe: Recipe) -> frozenset[str]:
    return recipe.graph.nodes


def arcs(recipe: Recipe) -> frozenset[Arc]:
    return recipe.graph.arcs


def inputs_types(recipe: Recipe) -> frozenset[str]:
    return frozenset(recipe.type_of(n) for n in roles(recipe).inputs)


def outputs_types(recipe: Recipe) -> frozenset[str]:
    return frozenset(recipe.type_of(n) for n in roles(recipe).outputs)


def leq(recipe: Recipe, n: str, m: str) -> bool:
    """Path order: true iff ``n`` equals ``m`` or a directed path n -> m exists."""
    if n not in recipe.graph.nodes:
        raise UnknownNodeError(n)
    if m not in recipe.graph.nodes:
        raise UnknownNodeError(m)
    return m in recipe.reachable_from(n)


def is_atomic(recipe: Recipe) -> bool:
    """True iff the recipe has exactly one action node."""
    return len(recipe.graph.actions) == 1
