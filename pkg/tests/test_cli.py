from __future__ import annotations

import json

import pytest

from recipegraph.bundle import load_corpus, serialize_bundle
from recipegraph.cli import run

REPORT_KEYS = {"command", "status", "data", "diagnostics"}


@pytest.fixture()
def bundle_path(tmp_path):
    path = tmp_path / "bundle.json"
    path.write_bytes(serialize_bundle(load_corpus()))
    return str(path)


def run_json(capsys, *argv):
    code = run([*argv, "--format", "json"])
    report = json.loads(capsys.readouterr().out)
    assert set(report) == REPORT_KEYS
    return code, report


class TestValidate:
    def test_corpus_is_clean(self, capsys):
        code, report = run_json(capsys, "validate")
        assert code == 0
        assert report["status"] == "ok"
        assert report["data"]["invalid"] == {}

    def test_empty_graph_recipe_is_an_input_error(self, capsys, tmp_path):
        ws = load_corpus()
        doc = json.loads(serialize_bundle(ws))
        doc["recipes"].append(
            {"id": "broken", "comestibles": ["c1"], "actions": [], "arcs": [], "typing": {"c1": "spaghetti"}}
        )
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(doc))
        code, report = run_json(capsys, "validate", "-b", str(path), "broken")
        assert code == 2
        assert report["status"] == "error"
        conditions = [v["condition"] for v in report["data"]["invalid"]["broken"]]
        assert "1" in conditions

    def test_missing_bundle_file_is_an_input_error(self, capsys):
        code, report = run_json(capsys, "validate", "-b", "/nonexistent/bundle.json")
        assert code == 2


class TestCompare:
    def test_finer_comparison_with_witness(self, capsys, bundle_path):
        code, report = run_json(
            capsys,
            "compare",
            "-b",
            bundle_path,
            "--relation",
            "finer",
            "spaghetti-pasata",
            "spaghetti-one-pot",
        )
        assert code == 0
        assert report["data"]["holds"] is True
        assert set(report["data"]["witness"]) == {
            "a1", "a2", "a3", "a4", "c0", "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8",
        }

    def test_negative_answer_exits_one(self, capsys, bundle_path):
        code, report = run_json(
            capsys, "compare", "-b", bundle_path, "--relation", "equiv", "fry-onion", "fry-onion-timed"
        )
        assert code == 1
        assert report["status"] == "negative"
        assert report["data"]["holds"] is False

    def test_specificity_direction(self, bundle_path):
        assert (
            run(["compare", "-b", bundle_path, "--relation", "specific", "fry-onion-timed", "fry-onion"])
            == 0
        )
        assert (
            run(["compare", "-b", bundle_path, "--relation", "specific", "fry-onion", "fry-onion-timed"])
            == 1
        )

    def test_unknown_recipe_is_an_input_error(self, bundle_path):
        assert run(["compare", "-b", bundle_path, "--relation", "iso", "fry-onion", "nope"]) == 2


class TestCompose:
    def test_failed_composition_names_the_condition(self, capsys, bundle_path):
        code, report = run_json(capsys, "compose", "-b", bundle_path, "chop-tomato", "tomato-loop")
        assert code == 1
        assert [v["condition"] for v in report["data"]["violations"]] == ["4"]
        assert "condition 4" in report["diagnostics"][0]

    def test_successful_composition_emits_the_recipe(self, capsys, bundle_path):
        code, report = run_json(capsys, "compose", "-b", bundle_path, "boil-chain", "drain-chain")
        assert code == 0
        assert report["data"]["recipe"]["comestibles"] == ["c1", "c2", "c3"]

    def test_closure_of_the_peas_family(self, capsys, bundle_path):
        code, report = run_json(
            capsys, "closure", "-b", bundle_path, "peas-freeze", "peas-thaw", "peas-refreeze"
        )
        assert code == 0
        assert report["data"]["size"] == 6
        assert report["data"]["truncated"] is False

    def test_closure_limit_exits_three(self, capsys, bundle_path):
        code, report = run_json(
            capsys,
            "closure",
            "-b",
            bundle_path,
            "peas-freeze",
            "peas-thaw",
            "peas-refreeze",
            "--max-recipes",
            "4",
        )
        assert code == 3
        assert report["status"] == "budget"
        assert report["data"]["truncated"] is True

    def test_decompose_counts_actions(self, capsys, bundle_path):
        code, report = run_json(capsys, "decompose", "-b", bundle_path, "spaghetti-pasata")
        assert code == 0
        assert report["data"]["count"] == 4


class TestAcceptAndPlan:
    def test_acceptable_recipe(self, bundle_path):
        assert run(["accept", "-b", bundle_path, "spaghetti-pasata"]) == 0

    def test_unacceptable_recipe_lists_triples(self, capsys, bundle_path):
        code, report = run_json(capsys, "accept", "-b", bundle_path, "fry-onion")
        assert code == 1
        assert report["data"]["violations"]

    def test_substitute_rewrites_typing(self, capsys, bundle_path):
        code, report = run_json(
            capsys, "substitute", "-b", bundle_path, "carrot-soup", "--bind", "c1=raw onion"
        )
        assert code == 0
        assert report["data"]["recipe"]["typing"]["c1"] == "raw onion"

    def test_substitute_conflicting_binding_is_an_input_error(self, bundle_path):
        assert (
            run(["substitute", "-b", bundle_path, "carrot-soup", "--bind", "c2=raw carrot"]) == 2
        )

    def test_plan_picks_the_cheapest_pasta(self, capsys, bundle_path):
        code, report = run_json(
            capsys, "plan", "-b", bundle_path, "spaghetti-pasata", "--missing", "spaghetti"
        )
        assert code == 0
        assert report["data"]["primary"] == {"c1": "tagliatelle"}
        assert report["data"]["secondary"] == {}
        assert report["data"]["cost"] == pytest.approx(0.1)

    def test_plan_without_candidates_is_negative(self, capsys, bundle_path, tmp_path):
        accept = tmp_path / "accept.json"
        accept.write_text(
            json.dumps(
                {"tuples": [["fresh spaghetti", "boil spaghetti for 3 minutes", "cooked spaghetti"]]}
            )
        )
        code, report = run_json(
            capsys,
            "plan",
            "-b",
            bundle_path,
            "fresh-spaghetti",
            "--missing",
            "c1",
            "--accept-file",
            str(accept),
        )
        assert code == 1
        assert report["data"] == {"found": False}

    def test_budget_exhaustion_exits_three(self, capsys, bundle_path):
        code, report = run_json(
            capsys,
            "plan",
            "-b",
            bundle_path,
            "vegetable-soup",
            "--missing",
            "barley",
            "--budget",
            "5",
        )
        assert code == 3
        assert report["status"] == "budget"


class TestRewriteCommands:
    def test_rewrite_with_document_files(self, capsys, bundle_path, tmp_path, corpus, induced):
        from recipegraph.bundle import recipe_doc

        host = corpus.recipe("hummus")
        part = induced(host, {"c1", "a1", "c2", "a2", "c3"})
        part_path = tmp_path / "part.json"
        part_path.write_text(json.dumps(recipe_doc(part)))
        code, report = run_json(
            capsys,
            "rewrite",
            "-b",
            bundle_path,
            "hummus",
            "--remove",
            str(part_path),
            "--insert",
            "hummus-canned-shortcut",
        )
        assert code == 0
        assert report["data"]["recipe"]["actions"] == ["a3", "a9"]

    def test_rewrite_failure_is_negative(self, capsys, bundle_path):
        code, report = run_json(
            capsys,
            "rewrite",
            "-b",
            bundle_path,
            "hummus",
            "--remove",
            "fry-onion",
            "--insert",
            "fry-onion-alt",
        )
        assert code == 1
        assert report["data"]["violations"]

    def test_rewrite_seq_plan_file(self, capsys, bundle_path, tmp_path, corpus, induced):
        from recipegraph.bundle import recipe_doc
        from recipegraph.rewrite import RewriteStep, apply_sequence

        host = corpus.recipe("spaghetti-pasata")
        prim_remove = induced(host, {"c3", "c4", "a2", "c5"})
        intermediate = apply_sequence(
            host,
            [RewriteStep(prim_remove, corpus.recipe("bolognese-sauce-prep"))],
            corpus.hierarchies,
        )
        sec_remove = induced(intermediate, {"c5", "c7", "a4", "c8"})
        paths = {}
        for name, recipe in [("prim.json", prim_remove), ("sec.json", sec_remove)]:
            p = tmp_path / name
            p.write_text(json.dumps(recipe_doc(recipe)))
            paths[name] = str(p)
        plan = tmp_path / "plan.json"
        plan.write_text(
            json.dumps(
                {
                    "primary": [
                        {"remove": paths["prim.json"], "insert": "bolognese-sauce-prep"}
                    ],
                    "secondary": [
                        {"remove": paths["sec.json"], "insert": "bolognese-assembly"}
                    ],
                    "check_acceptability": True,
                }
            )
        )
        code, report = run_json(
            capsys, "rewrite-seq", "-b", bundle_path, "spaghetti-pasata", str(plan)
        )
        assert code == 0
        assert report["data"]["acceptable"] is True
        assert report["data"]["recipe"]["typing"]["c8"] == "spaghetti bolognese"


class TestExportDot:
    def test_stdout_matches_the_library(self, capsys, bundle_path, corpus):
        from recipegraph.bundle import export_dot

        code = run(["export-dot", "-b", bundle_path, "boil-atomic"])
        out = capsys.readouterr().out
        assert code == 0
        assert out == export_dot(corpus.recipe("boil-atomic"))

    def test_write_to_file(self, tmp_path, bundle_path):
        target = tmp_path / "out.dot"
        code = run(["export-dot", "-b", bundle_path, "hummus", "--out", str(target)])
        assert code == 0
        assert target.read_text().startswith("digraph recipe {")


class TestReportShape:
    def test_reports_parse_under_the_schema_for_every_status(self, capsys, bundle_path):
        cases = [
            (["roles", "-b", bundle_path, "spaghetti-pasata"], 0),
            (["compare", "-b", bundle_path, "--relation", "iso", "fry-onion", "boil-atomic"], 1),
            (["roles", "-b", bundle_path, "missing-recipe"], 2),
        ]
        for argv, expected in cases:
            code, report = run_json(capsys, *argv)
            assert code == expected
            assert report["status"] in {"ok", "negative", "error", "budget"}
            assert isinstance(report["diagnostics"], list)
