from __future__ import annotations

import pytest

from recipegraph.core import (
    build_recipe,
    inputs_types,
    is_atomic,
    leq,
    make_recipe,
    outputs_types,
    recipe_graph,
    roles,
    typing_violations,
    validate_recipe_graph,
)
from recipegraph.errors import InvalidRecipeError, UnknownNodeError


def conditions(violations):
    return {v.condition for v in violations}


class TestValidateRecipeGraph:
    def test_pasta_fixture_is_valid(self, corpus):
        raw = corpus.raw("spaghetti-pasata")
        assert validate_recipe_graph(raw.graph) == []

    def test_empty_actions_is_condition_1(self):
        g = recipe_graph({"c1"}, set(), set())
        found = validate_recipe_graph(g)
        assert conditions(found) == {"1"}

    def test_empty_comestibles_is_condition_1(self):
        g = recipe_graph(set(), {"a1"}, set())
        found = conditions(validate_recipe_graph(g))
        assert "1" in found
        assert found <= {"1", "4"}  # the arcless action also trips condition 4

    def test_comestible_to_comestible_arc_is_condition_2(self):
        g = recipe_graph({"c1", "c2", "c3"}, {"a1"}, {("c1", "a1"), ("a1", "c3"), ("c1", "c2"), ("c2", "a1")})
        assert "2" in conditions(validate_recipe_graph(g))

    def test_cycle_is_condition_3(self, corpus):
        # union of the chop-tomato and tomato-loop graphs closes a loop
        from recipegraph.compose import bipartite_union

        g = bipartite_union(
            corpus.recipe("chop-tomato").graph, corpus.recipe("tomato-loop").graph
        )
        found = validate_recipe_graph(g)
        assert conditions(found) == {"3"}
        [violation] = found
        assert "cycle" in violation.message

    def test_disconnected_is_condition_3(self):
        g = recipe_graph(
            {"c1", "c2", "c3", "c4"},
            {"a1", "a2"},
            {("c1", "a1"), ("a1", "c2"), ("c3", "a2"), ("a2", "c4")},
        )
        found = validate_recipe_graph(g)
        assert conditions(found) == {"3"}
        [violation] = found
        assert "connected" in violation.message

    def test_action_without_output_is_condition_4(self):
        g = recipe_graph(
            {"c1", "c2"}, {"a1", "a2"}, {("c1", "a1"), ("a1", "c2"), ("c2", "a2")}
        )
        found = validate_recipe_graph(g)
        assert conditions(found) == {"4"}
        assert found[0].nodes == ("a2",)

    def test_comestible_with_two_producers_is_condition_5(self):
        g = recipe_graph(
            {"c1", "c2", "c3"},
            {"a1", "a2"},
            {("c1", "a1"), ("a1", "c2"), ("c1", "a2"), ("a2", "c2"), ("a2", "c3")},
        )
        found = validate_recipe_graph(g)
        assert conditions(found) == {"5"}
        assert found[0].nodes == ("c2",)

    def test_all_violations_are_reported_together(self):
        g = recipe_graph({"c1", "c2"}, {"a1", "a2"}, {("c1", "a1"), ("a1", "c1"), ("a2", "c2")})
        found = conditions(validate_recipe_graph(g))
        assert {"3", "4"} <= found


class TestMakeRecipe:
    def test_fixture_types_pass(self, corpus, hierarchies):
        raw = corpus.raw("spaghetti-pasata")
        recipe = make_recipe(raw.graph, raw.typing, hierarchies)
        assert recipe.type_of("c3") == "pasata"

    def test_equal_comestible_types_are_rejected(self, hierarchies):
        g = recipe_graph({"x1", "x2", "x3"}, {"y1"}, {("x1", "y1"), ("x2", "y1"), ("y1", "x3")})
        typing = {"x1": "raw onion", "x2": "raw onion", "y1": "fry", "x3": "fried onion"}
        found = typing_violations(g, typing, hierarchies)
        assert conditions(found) == {"comparable"}
        assert found[0].nodes == ("x1", "x2")
        with pytest.raises(InvalidRecipeError):
            make_recipe(g, typing, hierarchies)

    def test_ancestor_descendant_comestibles_are_rejected(self, hierarchies):
        g = recipe_graph({"x1", "x2"}, {"y1"}, {("x1", "y1"), ("y1", "x2")})
        typing = {"x1": "raw onion", "x2": "onion", "y1": "fry"}
        found = typing_violations(g, typing, hierarchies)
        assert conditions(found) == {"comparable"}

    def test_sibling_branch_types_are_accepted(self, corpus, hierarchies):
        # distinct freezer states live on different branches on purpose
        for rid in ("peas-freeze", "peas-thaw", "peas-refreeze"):
            raw = corpus.raw(rid)
            assert typing_violations(raw.graph, raw.typing, hierarchies) == []

    def test_untyped_node_is_reported(self, hierarchies):
        g = recipe_graph({"x1", "x2"}, {"y1"}, {("x1", "y1"), ("y1", "x2")})
        found = typing_violations(g, {"x1": "raw onion", "y1": "fry"}, hierarchies)
        assert conditions(found) == {"untyped"}
        assert found[0].nodes == ("x2",)

    def test_kind_mismatch_is_reported(self, hierarchies):
        g = recipe_graph({"x1", "x2"}, {"y1"}, {("x1", "y1"), ("y1", "x2")})
        typing = {"x1": "fry", "x2": "fried onion", "y1": "raw onion"}
        found = typing_violations(g, typing, hierarchies)
        assert conditions(found) == {"kind"}

    def test_unknown_type_is_reported(self, hierarchies):
        g = recipe_graph({"x1", "x2"}, {"y1"}, {("x1", "y1"), ("y1", "x2")})
        typing = {"x1": "raw onion", "x2": "moon rock", "y1": "fry"}
        found = typing_violations(g, typing, hierarchies)
        assert conditions(found) == {"unknown-type"}

    def test_alias_spellings_resolve_to_canonical(self, hierarchies):
        g = recipe_graph({"x1", "x2"}, {"y1"}, {("x1", "y1"), ("y1", "x2")})
        typing = {"x1": "raw onion", "y1": "bake at 356F for 45min", "x2": "fried onions"}
        recipe = make_recipe(g, typing, hierarchies)
        assert recipe.type_of("y1") == "bake at 180C for 45min"
        assert recipe.type_of("x2") == "fried onion"


class TestRolesAndOrder:
    def test_pasta_roles_match_the_fixture(self, corpus):
        rs = roles(corpus.recipe("spaghetti-pasata"))
        assert rs.inputs == {"c0", "c1", "c3", "c4"}
        assert rs.outputs == {"c6", "c8"}
        assert rs.mids == {"c2", "c5", "c7"}

    def test_atomic_roles(self, corpus):
        rs = roles(corpus.recipe("boil-atomic"))
        assert rs.inputs == {"c1", "c2"}
        assert rs.outputs == {"c3"}
        assert rs.mids == set()

    def test_role_type_accessors(self, corpus):
        recipe = corpus.recipe("boil-atomic")
        assert inputs_types(recipe) == {"spaghetti", "boiling salted water"}
        assert outputs_types(recipe) == {"cooked spaghetti"}

    def test_every_fixture_has_inputs_and_outputs(self, corpus):
        for rid in corpus.recipe_ids():
            rs = roles(corpus.recipe(rid))
            assert rs.inputs, rid
            assert rs.outputs, rid
            assert rs.inputs | rs.outputs | rs.mids == corpus.recipe(rid).graph.comestibles

    def test_leq_examples(self, corpus):
        recipe = corpus.recipe("spaghetti-pasata")
        assert leq(recipe, "c1", "c7")
        assert leq(recipe, "c3", "c8")
        assert leq(recipe, "c5", "c8")
        assert leq(recipe, "c5", "c5")
        assert not leq(recipe, "c8", "c1")

    def test_leq_unknown_node(self, corpus):
        with pytest.raises(UnknownNodeError):
            leq(corpus.recipe("boil-atomic"), "c1", "zz")

    def test_leq_is_a_partial_order(self, corpus):
        recipe = corpus.recipe("spaghetti-pasata")
        nodes = sorted(recipe.graph.nodes)
        for n in nodes:
            assert leq(recipe, n, n)
            for m in nodes:
                if leq(recipe, n, m) and leq(recipe, m, n):
                    assert n == m
                for k in nodes:
                    if leq(recipe, n, m) and leq(recipe, m, k):
                        assert leq(recipe, n, k)

    def test_is_atomic(self, corpus):
        assert is_atomic(corpus.recipe("boil-atomic"))
        assert not is_atomic(corpus.recipe("spaghetti-pasata"))


class TestRecipeValue:
    def test_structural_equality_and_hash(self, corpus, hierarchies):
        raw = corpus.raw("fry-onion")
        again = build_recipe(
            raw.graph.comestibles, raw.graph.actions, raw.graph.arcs, raw.typing, hierarchies
        )
        first = corpus.recipe("fry-onion")
        assert first == again
        assert hash(first) == hash(again)
        assert len({first, again}) == 1

    def test_typing_difference_breaks_equality(self, corpus, hierarchies):
        from recipegraph.typesubst import apply_substitution

        first = corpus.recipe("fry-onion")
        changed = apply_substitution(first, {"c1": "sliced onion"}, hierarchies)
        assert first != changed
