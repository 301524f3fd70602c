"""Type substitution: rebinding node types, repair planning, and cost.

A substitution set maps nodes to replacement types (one binding per node).
Primary substitutions are forced on the cook (a missing ingredient, an
impossible action); secondary substitutions repair the acceptability
violations the primary ones introduce. The preferred pair is the
acceptability-restoring combination of least total type distance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .acceptability import AcceptabilitySet, check_acceptable
from .compare import NodeBijection, isomorphic
from .core import Recipe, make_recipe
from .errors import (
    BudgetExceededError,
    InvalidRecipeError,
    NoSolutionError,
    NotIsomorphicError,
    UnknownTypeError,
)
from .typekb import DistanceModel, Hierarchies

SubstitutionSet = Mapping[str, str]

DEFAULT_BUDGET = 10**6
DEFAULT_RADIUS = 2


@dataclass(frozen=True)
class SubstitutionPair:
    """A primary substitution set with the secondary set that repairs it."""

    primary: tuple[tuple[str, str], ...]
    secondary: tuple[tuple[str, str], ...]

    @staticmethod
    def of(primary: SubstitutionSet, secondary: SubstitutionSet) -> "SubstitutionPair":
        overlap = set(primary) & set(secondary)
        if overlap:
            raise ValueError(f"primary and secondary rebind the same nodes: {sorted(overlap)}")
        return SubstitutionPair(
            tuple(sorted(primary.items())), tuple(sorted(secondary.items()))
        )

    @property
    def combined(self) -> dict[str, str]:
        return dict(self.primary) | dict(self.secondary)


@dataclass(frozen=True)
class CostModel:
    """Distance model plus aggregation rule ("sum" or "max") for pricing pairs."""

    distances: DistanceModel = field(default_factory=DistanceModel)
    aggregation: str = "sum"

    def __post_init__(self):
        if self.aggregation not in ("sum", "max"):
            raise ValueError(f"unknown aggregation {self.aggregation!r}")


def apply_substitution(
    recipe: Recipe, bindings: SubstitutionSet, hierarchies: Hierarchies
) -> Recipe:
    """Rebind node types, leaving the graph untouched.

    Bindings for nodes outside the recipe are ignored. The result is
    re-validated: a rebinding that makes two comestibles comparable, points a
    node at the wrong kind of type, or names an unknown type raises
    InvalidRecipeError.
    """
    typing = dict(recipe.typing)
    for n, t in bindings.items():
        if n in typing:
            typing[n] = t
    return make_recipe(recipe.graph, typing, hierarchies)


def substitution_to(
    r1: Recipe,
    r2: Recipe,
    witness: NodeBijection | None = None,
    budget: int = DEFAULT_BUDGET,
) -> dict[str, str]:
    """The substitution set that retypes ``r1`` to match ``r2`` along a bijection.

    Raises NotIsomorphicError when the graphs do not match. The returned set
    binds exactly the nodes whose types differ from their image's.
    """
    if witness is None:
        witness = isomorphic(r1, r2, budget=budget)
        if witness is None:
            raise NotIsomorphicError("the two recipe graphs are not isomorphic")
    b = witness.as_dict()
    return {
        n: r2.type_of(b[n])
        for n in r1.graph.nodes
        if r1.type_of(n) != r2.type_of(b[n])
    }


def cost(
    pair: SubstitutionPair | SubstitutionSet,
    recipe: Recipe,
    model: CostModel,
    hierarchies: Hierarchies,
) -> float:
    """Aggregate distance between each rebound node's old and new type.

    The empty pair costs 0 under both aggregations.
    """
    if isinstance(pair, SubstitutionPair):
        bindings = pair.combined
    else:
        bindings = dict(pair)
    terms = []
    for n, t in sorted(bindings.items()):
        if n not in recipe.typing:
            continue
        kind = "comestible" if n in recipe.graph.comestibles else "action"
        h = hierarchies.for_kind(kind)
        if t not in h:
            raise UnknownTypeError(t, kind)
        terms.append(model.distances.distance(h, recipe.type_of(n), t))
    if not terms:
        return 0.0
    return sum(terms) if model.aggregation == "sum" else max(terms)


def default_candidates(
    recipe: Recipe,
    accepts: AcceptabilitySet,
    hierarchies: Hierarchies,
    radius: int = DEFAULT_RADIUS,
    exclude: Iterable[str] = (),
) -> dict[str, list[str]]:
    """Candidate replacement types per node: tuple-slot types plus nearby relatives.

    For an action node the pool is every action type occurring in the tuple
    set; for a comestible it is the input-slot types when the node feeds an
    action, plus the output-slot types when it is produced by one. Relatives
    of the node's current type within ``radius`` undirected steps are added.
    The node's current type is dropped (rebinding to it is a no-op).
    """
    excluded = set(exclude)
    graph = recipe.graph
    in_slot = sorted({t.input for t in accepts.tuples})
    act_slot = sorted({t.action for t in accepts.tuples})
    out_slot = sorted({t.output for t in accepts.tuples})
    candidates: dict[str, list[str]] = {}
    for n in sorted(graph.nodes):
        if n in graph.actions:
            pool = set(act_slot)
            h = hierarchies.action
        else:
            pool = set()
            if graph.out_degree(n) > 0:
                pool.update(in_slot)
            if graph.in_degree(n) > 0:
                pool.update(out_slot)
            h = hierarchies.comestible
        pool.update(h.relatives(recipe.type_of(n), radius))
        pool.discard(recipe.type_of(n))
        pool -= excluded
        candidates[n] = sorted(pool)
    return candidates


class _Budget:
    __slots__ = ("left", "limit")

    def __init__(self, limit: int):
        self.left = limit
        self.limit = limit

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExceededError(self.limit)


def _acceptable_after(
    recipe: Recipe,
    bindings: Mapping[str, str],
    accepts: AcceptabilitySet,
    hierarchies: Hierarchies,
) -> bool:
    """Apply bindings and check acceptability; invalid typings count as failures."""
    try:
        candidate = apply_substitution(recipe, bindings, hierarchies)
    except InvalidRecipeError:
        return False
    return not check_acceptable(candidate, accepts, hierarchies)


def _minimal_repairs(
    recipe: Recipe,
    primary: dict[str, str],
    accepts: AcceptabilitySet,
    hierarchies: Hierarchies,
    candidates: Mapping[str, Sequence[str]],
    budget: "_Budget",
    max_size: int | None = None,
) -> list[dict[str, str]]:
    """Every subset-minimal repair over the candidate space, smallest first.

    Enumerates assignments by increasing domain size, so solutions are found
    smallest-first; an assignment with a known solution strictly inside it
    cannot be minimal and is skipped without an acceptability check. Raises
    NoSolutionError when the search space holds no repair at all.
    """
    if _acceptable_after(recipe, primary, accepts, hierarchies):
        return [{}]
    eligible = sorted(
        n for n in recipe.graph.nodes if n not in primary and candidates.get(n)
    )
    cap = len(eligible) if max_size is None else min(max_size, len(eligible))
    solutions: list[dict[str, str]] = []
    for size in range(1, cap + 1):
        for domain in itertools.combinations(eligible, size):
            pools = [candidates[n] for n in domain]
            for choice in itertools.product(*pools):
                budget.spend()
                assignment = dict(zip(domain, choice))
                items = set(assignment.items())
                if any(set(s.items()) < items for s in solutions):
                    continue
                if _acceptable_after(
                    recipe, dict(primary) | assignment, accepts, hierarchies
                ):
                    solutions.append(assignment)
    if not solutions:
        raise NoSolutionError("no secondary substitution restores acceptability")
    return solutions


def find_secondary(
    recipe: Recipe,
    primary: SubstitutionSet,
    accepts: AcceptabilitySet,
    hierarchies: Hierarchies,
    candidates: Mapping[str, Sequence[str]] | None = None,
    model: CostModel | None = None,
    budget: int = DEFAULT_BUDGET,
    max_size: int | None = None,
) -> list[dict[str, str]]:
    """All subset-minimal secondary sets that restore acceptability.

    Enumerates candidate rebindings over nodes outside the primary domain by
    increasing set size, so every reported set is minimal within the candidate
    space: dropping any single binding breaks acceptability. Results are
    sorted by cost when a model is given, canonically otherwise.
    ``max_size`` caps the bindings per secondary set. Raises NoSolutionError
    when the space is exhausted without a repair and BudgetExceededError when
    the budget runs out first.
    """
    b = _Budget(budget)
    if candidates is None:
        candidates = default_candidates(recipe, accepts, hierarchies)
    solutions = _minimal_repairs(
        recipe, dict(primary), accepts, hierarchies, candidates, b, max_size
    )
    if model is not None:
        solutions.sort(
            key=lambda s: (
                cost(s, recipe, model, hierarchies),
                sorted(s.items()),
            )
        )
    else:
        solutions.sort(key=lambda s: (len(s), sorted(s.items())))
    return solutions


def _min_repair_cost(
    recipe: Recipe,
    primary: dict[str, str],
    accepts: AcceptabilitySet,
    hierarchies: Hierarchies,
    candidates: Mapping[str, Sequence[str]],
    model: CostModel,
    budget: "_Budget",
    max_size: int | None = None,
) -> tuple[float, dict[str, str]] | None:
    """Cheapest acceptability-restoring secondary set for a fixed primary, or None."""
    try:
        repairs = _minimal_repairs(
            recipe, primary, accepts, hierarchies, candidates, budget, max_size
        )
    except NoSolutionError:
        return None
    best: tuple[float, list, dict[str, str]] | None = None
    for s in repairs:
        c = cost(s, recipe, model, hierarchies)
        key = (c, sorted(s.items()))
        if best is None or key < (best[0], best[1]):
            best = (c, sorted(s.items()), s)
    assert best is not None
    return best[0], best[2]


def resolve_unavailable(
    recipe: Recipe, unavailable: Iterable[str], hierarchies: Hierarchies
) -> tuple[frozenset[str], frozenset[str]]:
    """Split unavailability marks into affected nodes and banned types.

    A mark naming a node affects that node. A mark naming a type affects every
    node whose current type sits at or below it (lacking a type means lacking
    all of its specializations), and bans those types as candidates.
    """
    nodes: set[str] = set()
    banned: set[str] = set()
    for mark in unavailable:
        if mark in recipe.graph.nodes:
            nodes.add(mark)
            t = recipe.type_of(mark)
            kind = "comestible" if mark in recipe.graph.comestibles else "action"
            banned |= {t} | set(hierarchies.for_kind(kind).descendants(t))
            continue
        kind = hierarchies.kind_of_type(mark)
        if kind is None:
            raise UnknownTypeError(mark)
        h = hierarchies.for_kind(kind)
        t = h.resolve(mark)
        unavailable_types = {t} | set(h.descendants(t))
        banned |= unavailable_types
        for n in recipe.graph.nodes:
            node_kind = "comestible" if n in recipe.graph.comestibles else "action"
            if node_kind == kind and recipe.type_of(n) in unavailable_types:
                nodes.add(n)
    return frozenset(nodes), frozenset(banned)


def preferred_pair(
    recipe: Recipe,
    unavailable: Iterable[str],
    accepts: AcceptabilitySet,
    model: CostModel,
    hierarchies: Hierarchies,
    candidates: Mapping[str, Sequence[str]] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> SubstitutionPair | None:
    """Cheapest substitution pair whose primary rebinds exactly the unavailable nodes.

    Branch and bound over primary assignments: partial assignments are priced
    by their accumulated distance plus the cheapest possible remainder, and
    pruned against the best complete pair found so far. For each surviving
    primary the cheapest minimal secondary repair is computed. Ties break on
    the canonical ordering of the bindings. Returns None when no acceptable
    pair exists in the candidate space.
    """
    b = _Budget(budget)
    target_nodes, banned = resolve_unavailable(recipe, unavailable, hierarchies)
    if candidates is None:
        candidates = default_candidates(
            recipe, accepts, hierarchies, exclude=banned
        )
    else:
        candidates = {
            n: [t for t in pool if t not in banned] for n, pool in candidates.items()
        }

    if not target_nodes:
        found = _min_repair_cost(
            recipe, {}, accepts, hierarchies, candidates, model, b
        )
        if found is None:
            return None
        return SubstitutionPair.of({}, found[1])

    order = sorted(target_nodes)
    pools = []
    for n in order:
        pool = list(candidates.get(n, ()))
        if not pool:
            return None
        kind = "comestible" if n in recipe.graph.comestibles else "action"
        h = hierarchies.for_kind(kind)
        priced = sorted(
            (model.distances.distance(h, recipe.type_of(n), t), t) for t in pool
        )
        pools.append(priced)
    summing = model.aggregation == "sum"
    if summing:
        min_tail = [0.0] * (len(order) + 1)
        for i in range(len(order) - 1, -1, -1):
            min_tail[i] = min_tail[i + 1] + pools[i][0][0]
    else:
        min_tail = [0.0] * (len(order) + 1)
        for i in range(len(order) - 1, -1, -1):
            min_tail[i] = max(min_tail[i + 1], pools[i][0][0])

    best_key: tuple[float, list, list] | None = None
    best_pair: SubstitutionPair | None = None

    def walk(i: int, partial: dict[str, str], spent: float):
        nonlocal best_key, best_pair
        bound = spent + min_tail[i] if summing else max(spent, min_tail[i])
        if best_key is not None and bound > best_key[0]:
            return
        if i == len(order):
            found = _min_repair_cost(
                recipe, dict(partial), accepts, hierarchies, candidates, model, b
            )
            if found is None:
                return
            repair_cost, secondary = found
            total = spent + repair_cost if summing else max(spent, repair_cost)
            key = (total, sorted(partial.items()), sorted(secondary.items()))
            if best_key is None or key < best_key:
                best_key = key
                best_pair = SubstitutionPair.of(dict(partial), secondary)
            return
        n = order[i]
        for d, t in pools[i]:
            b.spend()
            partial[n] = t
            walk(i + 1, partial, spent + d if summing else max(spent, d))
            del partial[n]

    walk(0, {}, 0.0)
    return best_pair
