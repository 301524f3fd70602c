"""Structural substitution: replacing a subrecipe by another subrecipe.

The replaced part must be untrimmed (it contains every comestible its actions
touch in the host recipe) and the replacement must plug into the same front
nodes, the comestibles where the part interfaces with the rest of the host,
with arcs in the same directions. Five side conditions govern applicability:

  i.   every front node is an input or output of the replacement;
  ii.  the replacement is parallel to the replaced part at the front;
  iii. the replaced part is an untrimmed subrecipe of the host;
  iv.  the replacement introduces no node ids already owned by the kept part;
  v.   no kept comestible's type is comparable to an inserted comestible's
       type, except on the identical node.

A failed substitution is a value (RewriteFailure), not an exception.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace as _dc_replace
from typing import Sequence

from .acceptability import AcceptabilitySet, check_acceptable
from .core import (
    Recipe,
    Violation,
    make_recipe,
    recipe_graph,
    roles,
    validate_recipe_graph,
)
from .errors import (
    BudgetExceededError,
    InvalidRecipeError,
    NotSubrecipeError,
    RewriteFailureError,
)
from .compare import is_subrecipe
from .typekb import DistanceModel, Hierarchies


@dataclass(frozen=True)
class RewriteStep:
    """One substitution: remove one subrecipe, insert another."""

    remove: Recipe
    insert: Recipe


@dataclass(frozen=True)
class RewriteFailure:
    """Evidence for every violated side condition. Falsy on purpose.

    ``step`` is set when the failure happened inside a sequence.
    """

    violations: tuple[Violation, ...]
    step: int | None = None

    @property
    def conditions(self) -> frozenset[str]:
        return frozenset(v.condition for v in self.violations)

    def __bool__(self) -> bool:
        return False

    def with_step(self, index: int) -> "RewriteFailure":
        return _dc_replace(self, step=index)

    def __str__(self) -> str:
        where = f" at step {self.step}" if self.step is not None else ""
        return f"structural substitution failed{where}: " + "; ".join(
            str(v) for v in self.violations
        )


def front(host: Recipe, part: Recipe) -> frozenset[str]:
    """Comestibles where ``part`` interfaces with the rest of ``host``.

    These are the part's inputs and outputs that are not inputs or outputs of
    the host itself. Raises NotSubrecipeError when ``part`` is not a
    subrecipe of ``host``.
    """
    if not is_subrecipe(part, host):
        raise NotSubrecipeError("front is only defined for subrecipes")
    host_roles, part_roles = roles(host), roles(part)
    return (part_roles.outputs - host_roles.outputs) | (
        part_roles.inputs - host_roles.inputs
    )


def is_untrimmed_subrecipe(part: Recipe, host: Recipe) -> bool:
    """True iff ``part`` is a subrecipe keeping every comestible its actions touch."""
    if not is_subrecipe(part, host):
        return False
    part_nodes = part.graph.nodes
    for a in part.graph.actions:
        for c in host.graph.predecessors(a) | host.graph.successors(a):
            if c not in part_nodes:
                return False
    return True


def is_parallel(part: Recipe, replacement: Recipe, host: Recipe) -> bool:
    """True iff the replacement offers arcs in the part's directions at each front node."""
    for c in front(host, part):
        for (s, t) in part.graph.arcs:
            if s == c and not any(s2 == c for s2, _ in replacement.graph.arcs):
                return False
            if t == c and not any(t2 == c for _, t2 in replacement.graph.arcs):
                return False
    return True


def structural_substitute(
    host: Recipe,
    part: Recipe,
    replacement: Recipe,
    hierarchies: Hierarchies,
    allow_empty_front: bool = True,
) -> Recipe | RewriteFailure:
    """Replace ``part`` inside ``host`` by ``replacement``.

    Checks side conditions i-v, reporting all of them on failure, and
    re-validates the assembled result. ``allow_empty_front=False`` is a
    policy switch that additionally rejects whole-recipe swaps and other
    substitutions that touch none of the host's interior seams.
    """
    violations: list[Violation] = []

    untrimmed = is_untrimmed_subrecipe(part, host)
    if not untrimmed:
        violations.append(
            Violation("iii", "the removed part is not an untrimmed subrecipe of the host")
        )
    if is_subrecipe(part, host):
        fr = front(host, part)
        repl_roles = roles(replacement)
        missing = fr - (repl_roles.inputs | repl_roles.outputs)
        if missing:
            violations.append(
                Violation(
                    "i",
                    "front nodes missing from the replacement's inputs and outputs",
                    nodes=tuple(sorted(missing)),
                )
            )
        if not is_parallel(part, replacement, host):
            violations.append(
                Violation("ii", "replacement arcs do not match the part's directions at the front")
            )
        if not allow_empty_front and not fr:
            violations.append(
                Violation("policy", "empty-front substitutions are disabled")
            )

    kept = host.graph.nodes - part.graph.nodes
    stolen = kept & replacement.graph.nodes
    if stolen:
        violations.append(
            Violation(
                "iv",
                "replacement reuses node ids of the kept part",
                nodes=tuple(sorted(stolen)),
            )
        )

    # Condition v protects the typing rule of the result, which constrains
    # comestibles only: actions may share or refine each other's types freely
    # (a host with two equally typed actions must still satisfy R[R1/R1] = R).
    h_com = hierarchies.comestible
    for n in sorted(kept & host.graph.comestibles):
        for m in sorted(replacement.graph.comestibles):
            if n == m:
                continue
            if h_com.comparable(host.type_of(n), replacement.type_of(m)):
                violations.append(
                    Violation(
                        "v",
                        "kept comestible's type is comparable to an inserted one's",
                        nodes=(n, m),
                        types=(host.type_of(n), replacement.type_of(m)),
                    )
                )
    if violations:
        return RewriteFailure(tuple(violations))

    comestibles = (host.graph.comestibles - part.graph.comestibles) | replacement.graph.comestibles
    actions = (host.graph.actions - part.graph.actions) | replacement.graph.actions
    arcs = (host.graph.arcs - part.graph.arcs) | replacement.graph.arcs
    typing = {}
    for n in comestibles | actions:
        typing[n] = (
            replacement.type_of(n) if n in replacement.graph.nodes else host.type_of(n)
        )

    graph = recipe_graph(comestibles, actions, arcs)
    graph_violations = validate_recipe_graph(graph)
    if graph_violations:
        # conditions i-v can hold while the assembly still breaks a structural
        # rule, e.g. when the part swallows a comestible the kept actions use
        return RewriteFailure(
            tuple(
                Violation("result", v.message, nodes=v.nodes, arcs=v.arcs)
                for v in graph_violations
            )
        )
    try:
        return make_recipe(graph, typing, hierarchies)
    except InvalidRecipeError as exc:
        return RewriteFailure(
            tuple(
                Violation("result", v.message, nodes=v.nodes, types=v.types)
                for v in exc.violations
            )
        )


def apply_sequence(
    host: Recipe,
    steps: Sequence[RewriteStep],
    hierarchies: Hierarchies,
    allow_empty_front: bool = True,
) -> Recipe | RewriteFailure:
    """Left-to-right fold of structural substitutions.

    The empty sequence returns the host unchanged; the first failing step
    aborts and its index is recorded on the failure.
    """
    current = host
    for i, step in enumerate(steps):
        result = structural_substitute(
            current, step.remove, step.insert, hierarchies, allow_empty_front
        )
        if isinstance(result, RewriteFailure):
            return result.with_step(i)
        current = result
    return current


def verify_secondary_sequence(
    host: Recipe,
    primary: Sequence[RewriteStep],
    secondary: Sequence[RewriteStep],
    accepts: AcceptabilitySet,
    hierarchies: Hierarchies,
) -> bool:
    """Does the secondary sequence repair acceptability after the primary one?

    True iff the combined sequence applies and its result is acceptable. A
    sequence that does not even apply raises RewriteFailureError rather than
    answering False, so structural impossibility stays distinguishable from
    an unacceptable outcome.
    """
    result = apply_sequence(host, list(primary) + list(secondary), hierarchies)
    if isinstance(result, RewriteFailure):
        raise RewriteFailureError(result)
    return not check_acceptable(result, accepts, hierarchies)


def search_secondary_steps(
    host: Recipe,
    primary: Sequence[RewriteStep],
    library: Sequence[RewriteStep],
    accepts: AcceptabilitySet,
    hierarchies: Hierarchies,
    max_steps: int = 2,
    budget: int = 10**5,
) -> list[tuple[RewriteStep, ...]]:
    """Bounded enumeration of secondary sequences drawn from a step library.

    Tries every sequence of up to ``max_steps`` library steps after the
    primary sequence and returns those whose result is acceptable, shortest
    first. Only user-supplied steps are considered; there is no synthesis of
    replacement subrecipes from scratch.
    """
    after_primary = apply_sequence(host, primary, hierarchies)
    if isinstance(after_primary, RewriteFailure):
        raise RewriteFailureError(after_primary)

    found: list[tuple[RewriteStep, ...]] = []
    spent = 0

    def extend(current: Recipe, chosen: tuple[RewriteStep, ...]):
        nonlocal spent
        if not check_acceptable(current, accepts, hierarchies):
            found.append(chosen)
        if len(chosen) == max_steps:
            return
        for step in library:
            spent += 1
            if spent > budget:
                raise BudgetExceededError(budget)
            result = structural_substitute(current, step.remove, step.insert, hierarchies)
            if isinstance(result, RewriteFailure):
                continue
            extend(result, chosen + (step,))

    extend(after_primary, ())
    found.sort(key=lambda seq: (len(seq), [str(s) for s in seq]))
    return found


@dataclass(frozen=True)
class StructuralCostModel:
    """Tunable weights for the heuristic edit cost between two recipes.

    The default charges ``edit_weight`` per inserted or deleted node and per
    arc that the best same-kind node matching cannot carry over, plus the
    type distance between matched nodes. This is a pragmatic default, not a
    canonical definition; reports should mark it non-normative.
    """

    distances: DistanceModel = field(default_factory=DistanceModel)
    edit_weight: float = 1.0


def structural_cost(
    r1: Recipe,
    r2: Recipe,
    hierarchies: Hierarchies,
    model: StructuralCostModel | None = None,
) -> float:
    """Heuristic edit distance between two recipes.

    Minimizes, over injective same-kind node matchings that are total on the
    smaller side, the weighted count of unmatched nodes and unpreserved arcs
    plus the summed type distance of matched pairs.
    """
    if model is None:
        model = StructuralCostModel()
    coms1, coms2 = sorted(r1.graph.comestibles), sorted(r2.graph.comestibles)
    acts1, acts2 = sorted(r1.graph.actions), sorted(r2.graph.actions)

    pair_cost: dict[tuple[str, str], float] = {}
    for kind, left, right in (("comestible", coms1, coms2), ("action", acts1, acts2)):
        h = hierarchies.for_kind(kind)
        for n in left:
            for m in right:
                pair_cost[(n, m)] = model.distances.distance(
                    h, r1.type_of(n), r2.type_of(m)
                )

    unmatched = (
        abs(len(coms1) - len(coms2)) + abs(len(acts1) - len(acts2))
    )

    best: float | None = None

    def arc_edits(mapping: dict[str, str]) -> int:
        carried = sum(
            1
            for (s, t) in r1.graph.arcs
            if s in mapping and t in mapping and (mapping[s], mapping[t]) in r2.graph.arcs
        )
        return (len(r1.graph.arcs) - carried) + (len(r2.graph.arcs) - carried)

    def assign(kind_pairs: list[tuple[list[str], list[str]]], mapping: dict[str, str], spent: float):
        nonlocal best
        if best is not None and spent >= best:
            return
        if not kind_pairs:
            total = spent + model.edit_weight * (unmatched + arc_edits(mapping))
            if best is None or total < best:
                best = total
            return
        (left, right), rest = kind_pairs[0], kind_pairs[1:]
        if not left or not right:
            assign(rest, mapping, spent)
            return
        n, remaining = left[0], left[1:]
        if len(left) > len(right):
            # n may stay unmatched when the left side is larger
            assign([(remaining, right)] + rest, mapping, spent)
        for i, m in enumerate(right):
            mapping[n] = m
            assign(
                [(remaining, right[:i] + right[i + 1:])] + rest,
                mapping,
                spent + pair_cost[(n, m)],
            )
            del mapping[n]

    assign([(coms1, coms2), (acts1, acts2)], {}, 0.0)
    assert best is not None
    return best
