"""Command-line surface over the whole engine.

Exit codes partition outcomes so shell pipelines can branch on them:

  0  success, or the relation/composition/check holds
  1  a well-formed negative answer (not equivalent, failed composition, ...)
  2  an input error (bad bundle, invalid recipe, unknown id)
  3  a search budget or closure limit was exceeded

``--format json`` emits one machine-readable report object per run:
``{"command", "status", "data", "diagnostics"}`` where status is one of
"ok", "negative", "error", "budget".
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import compare as cmp_mod
from .acceptability import check_acceptable, load_acceptability
from .bundle import (
    WorkspaceBundle,
    canonical_json,
    export_dot,
    load_corpus,
    parse_bundle,
    recipe_doc,
)
from .compose import CompositionFailure, compose, compose_closure, decompose
from .core import Recipe, Violation, build_recipe, roles, validate_recipe_graph, typing_violations
from .errors import (
    BudgetExceededError,
    ClosureLimitError,
    NoSolutionError,
    RecipeError,
    RewriteFailureError,
)
from .rewrite import (
    RewriteFailure,
    RewriteStep,
    apply_sequence,
    structural_cost,
    structural_substitute,
    StructuralCostModel,
)
from .typekb import load_distances
from .typesubst import CostModel, apply_substitution, cost, preferred_pair

DEFAULT_BUDGET = 10**6

OK, NEGATIVE, INPUT_ERROR, BUDGET = 0, 1, 2, 3
_STATUS = {OK: "ok", NEGATIVE: "negative", INPUT_ERROR: "error", BUDGET: "budget"}


class _Report:
    def __init__(self, command: str, fmt: str):
        self.command = command
        self.fmt = fmt
        self.data: dict = {}
        self.diagnostics: list[str] = []
        self.lines: list[str] = []

    def say(self, line: str):
        self.lines.append(line)

    def diagnose(self, message: str):
        self.diagnostics.append(message)

    def emit(self, exit_code: int) -> int:
        if self.fmt == "json":
            doc = {
                "command": self.command,
                "status": _STATUS[exit_code],
                "data": self.data,
                "diagnostics": self.diagnostics,
            }
            sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        else:
            for line in self.lines:
                print(line)
            for message in self.diagnostics:
                print(message)
        return exit_code


def _violation_docs(violations) -> list[dict]:
    return [
        {
            "condition": v.condition,
            "message": v.message,
            "nodes": list(v.nodes),
            "arcs": [list(a) for a in v.arcs],
            "types": list(v.types),
        }
        for v in violations
    ]


def _load_bundle(args) -> WorkspaceBundle:
    if args.bundle == "corpus":
        return load_corpus()
    return parse_bundle(Path(args.bundle).read_bytes())


def _recipe_ref(ws: WorkspaceBundle, ref: str) -> Recipe:
    """Resolve a recipe reference: a bundle id, or a path to a recipe document."""
    if ref in ws.raw_recipes:
        return ws.recipe(ref)
    path = Path(ref)
    if path.suffix == ".json" and path.exists():
        doc = json.loads(path.read_text(encoding="utf-8"))
        return build_recipe(
            doc.get("comestibles", []),
            doc.get("actions", []),
            [tuple(a) for a in doc.get("arcs", [])],
            doc.get("typing", {}),
            ws.hierarchies,
        )
    raise RecipeError(f"no recipe named {ref!r} in the bundle and no such file")


def _accepts(ws: WorkspaceBundle, args):
    if getattr(args, "accept_file", None):
        doc = json.loads(Path(args.accept_file).read_text(encoding="utf-8"))
        return load_acceptability(doc, ws.hierarchies)
    return ws.acceptability


def _distances(ws: WorkspaceBundle, args):
    if getattr(args, "distances_file", None):
        doc = json.loads(Path(args.distances_file).read_text(encoding="utf-8"))
        return load_distances(doc, ws.hierarchies)
    return ws.distances


def cmd_validate(args, report: _Report) -> int:
    ws = _load_bundle(args)
    ids = args.ids or ws.recipe_ids()
    all_violations: dict[str, list[Violation]] = {}
    for rid in ids:
        raw = ws.raw(rid)
        violations = validate_recipe_graph(raw.graph)
        if not violations:
            violations = typing_violations(raw.graph, raw.typing, ws.hierarchies)
        if violations:
            all_violations[rid] = violations
            report.say(f"{rid}: INVALID")
            for v in violations:
                report.diagnose(f"{rid}: {v}")
        else:
            report.say(f"{rid}: ok")
    report.data = {
        "checked": list(ids),
        "invalid": {
            rid: _violation_docs(vs) for rid, vs in sorted(all_violations.items())
        },
    }
    return report.emit(INPUT_ERROR if all_violations else OK)


def cmd_roles(args, report: _Report) -> int:
    ws = _load_bundle(args)
    recipe = _recipe_ref(ws, args.recipe)
    rs = roles(recipe)
    report.data = {
        "inputs": sorted(rs.inputs),
        "outputs": sorted(rs.outputs),
        "mids": sorted(rs.mids),
        "input_types": sorted(recipe.type_of(n) for n in rs.inputs),
        "output_types": sorted(recipe.type_of(n) for n in rs.outputs),
    }
    report.say(f"inputs:  {', '.join(sorted(rs.inputs))}")
    report.say(f"outputs: {', '.join(sorted(rs.outputs))}")
    report.say(f"mids:    {', '.join(sorted(rs.mids))}")
    return report.emit(OK)


def cmd_compare(args, report: _Report) -> int:
    ws = _load_bundle(args)
    r1 = _recipe_ref(ws, args.first)
    r2 = _recipe_ref(ws, args.second)
    relation = args.relation
    witness = None
    if relation == "iso":
        witness = cmp_mod.isomorphic(r1, r2, budget=args.budget)
        holds = witness is not None
    elif relation == "equiv":
        witness = cmp_mod.equivalent(r1, r2, budget=args.budget)
        holds = witness is not None
    elif relation == "sub":
        holds = cmp_mod.is_subrecipe(r1, r2)
    elif relation == "io":
        holds = cmp_mod.in_out_aligned(r1, r2)
    elif relation == "finer":
        witness = cmp_mod.finer_grained(r1, r2, budget=args.budget, fix_io=args.fix_io)
        holds = witness is not None
    elif relation == "specific":
        witness = cmp_mod.more_specific(r1, r2, ws.hierarchies, budget=args.budget)
        holds = witness is not None
    else:  # pragma: no cover - argparse restricts choices
        raise RecipeError(f"unknown relation {relation!r}")
    report.data = {"relation": relation, "holds": holds}
    if witness is not None:
        report.data["witness"] = dict(witness.forward)
    report.say(f"{relation}({args.first}, {args.second}) = {str(holds).lower()}")
    if witness is not None:
        for n, m in witness.forward:
            report.say(f"  {n} -> {m}")
    return report.emit(OK if holds else NEGATIVE)


def cmd_compose(args, report: _Report) -> int:
    ws = _load_bundle(args)
    r1 = _recipe_ref(ws, args.first)
    r2 = _recipe_ref(ws, args.second)
    result = compose(r1, r2, ws.hierarchies)
    if isinstance(result, CompositionFailure):
        report.data = {
            "composed": False,
            "violations": _violation_docs(result.violations),
        }
        for v in result.violations:
            report.diagnose(f"condition {v.condition} violated: {v.message}")
        return report.emit(NEGATIVE)
    report.data = {"composed": True, "recipe": recipe_doc(result)}
    report.say(canonical_json(recipe_doc(result)).decode("utf-8").rstrip("\n"))
    return report.emit(OK)


def cmd_closure(args, report: _Report) -> int:
    ws = _load_bundle(args)
    ids = args.ids or ws.recipe_ids()
    seeds = [_recipe_ref(ws, rid) for rid in ids]
    try:
        closed = compose_closure(
            seeds, ws.hierarchies, max_recipes=args.max_recipes, max_nodes=args.max_nodes
        )
    except ClosureLimitError as exc:
        report.data = {
            "truncated": True,
            "size": len(exc.partial),
            "recipes": _sorted_docs(exc.partial),
        }
        report.diagnose(str(exc))
        return report.emit(BUDGET)
    report.data = {
        "truncated": False,
        "size": len(closed),
        "recipes": _sorted_docs(closed),
    }
    report.say(f"closure size: {len(closed)}")
    return report.emit(OK)


def _sorted_docs(recipes) -> list[dict]:
    docs = [recipe_doc(r) for r in recipes]
    docs.sort(key=lambda d: canonical_json(d))
    return docs


def cmd_decompose(args, report: _Report) -> int:
    ws = _load_bundle(args)
    recipe = _recipe_ref(ws, args.recipe)
    pieces = decompose(recipe, ws.hierarchies)
    report.data = {"count": len(pieces), "recipes": [recipe_doc(p) for p in pieces]}
    report.say(f"{len(pieces)} atomic piece(s)")
    for piece in pieces:
        report.say(canonical_json(recipe_doc(piece)).decode("utf-8").rstrip("\n"))
    return report.emit(OK)


def cmd_accept(args, report: _Report) -> int:
    ws = _load_bundle(args)
    recipe = _recipe_ref(ws, args.recipe)
    accepts = _accepts(ws, args)
    violations = check_acceptable(recipe, accepts, ws.hierarchies)
    report.data = {
        "acceptable": not violations,
        "violations": [
            {
                "input": v.input,
                "action": v.action,
                "output": v.output,
                "triple": v.triple.as_list(),
            }
            for v in violations
        ],
    }
    report.say("acceptable" if not violations else "not acceptable")
    for v in violations:
        report.diagnose(str(v))
    return report.emit(OK if not violations else NEGATIVE)


def cmd_substitute(args, report: _Report) -> int:
    ws = _load_bundle(args)
    recipe = _recipe_ref(ws, args.recipe)
    bindings: dict[str, str] = {}
    for item in args.bind:
        if "=" not in item:
            raise RecipeError(f"--bind expects node=type, got {item!r}")
        node, type_text = item.split("=", 1)
        if node in bindings:
            raise RecipeError(f"node {node!r} bound twice")
        bindings[node] = type_text
    result = apply_substitution(recipe, bindings, ws.hierarchies)
    report.data = {"recipe": recipe_doc(result)}
    report.say(canonical_json(recipe_doc(result)).decode("utf-8").rstrip("\n"))
    return report.emit(OK)


def cmd_plan(args, report: _Report) -> int:
    ws = _load_bundle(args)
    recipe = _recipe_ref(ws, args.recipe)
    accepts = _accepts(ws, args)
    model = CostModel(distances=_distances(ws, args), aggregation=args.aggregation)
    pair = preferred_pair(
        recipe,
        args.missing,
        accepts,
        model,
        ws.hierarchies,
        budget=args.budget,
    )
    if pair is None:
        report.say("no acceptable substitution pair in the candidate space")
        report.data = {"found": False}
        return report.emit(NEGATIVE)
    pair_cost = cost(pair, recipe, model, ws.hierarchies)
    report.data = {
        "found": True,
        "primary": dict(pair.primary),
        "secondary": dict(pair.secondary),
        "cost": pair_cost,
    }
    report.say(f"cost: {pair_cost}")
    for n, t in pair.primary:
        report.say(f"primary:   {n} -> {t}")
    for n, t in pair.secondary:
        report.say(f"secondary: {n} -> {t}")
    return report.emit(OK)


def cmd_rewrite(args, report: _Report) -> int:
    ws = _load_bundle(args)
    host = _recipe_ref(ws, args.recipe)
    part = _recipe_ref(ws, args.remove)
    replacement = _recipe_ref(ws, args.insert)
    result = structural_substitute(host, part, replacement, ws.hierarchies)
    if isinstance(result, RewriteFailure):
        report.data = {"applied": False, "violations": _violation_docs(result.violations)}
        for v in result.violations:
            report.diagnose(f"condition {v.condition} violated: {v.message}")
        return report.emit(NEGATIVE)
    if args.cost:
        cost_model = StructuralCostModel(distances=_distances(ws, args))
        report.data["cost"] = {
            "value": structural_cost(part, replacement, ws.hierarchies, cost_model),
            "normative": False,
        }
    report.data = {"applied": True, **report.data, "recipe": recipe_doc(result)}
    report.say(canonical_json(recipe_doc(result)).decode("utf-8").rstrip("\n"))
    return report.emit(OK)


def cmd_rewrite_seq(args, report: _Report) -> int:
    ws = _load_bundle(args)
    host = _recipe_ref(ws, args.recipe)
    plan = json.loads(Path(args.plan).read_text(encoding="utf-8"))
    steps = []
    for phase in ("primary", "secondary"):
        for sdoc in plan.get(phase, []):
            steps.append(
                RewriteStep(
                    remove=_recipe_ref(ws, sdoc["remove"]),
                    insert=_recipe_ref(ws, sdoc["insert"]),
                )
            )
    result = apply_sequence(host, steps, ws.hierarchies)
    if isinstance(result, RewriteFailure):
        report.data = {
            "applied": False,
            "failed_step": result.step,
            "violations": _violation_docs(result.violations),
        }
        report.diagnose(str(result))
        return report.emit(NEGATIVE)
    report.data = {"applied": True, "recipe": recipe_doc(result)}
    if args.accept_file or plan.get("check_acceptability"):
        accepts = _accepts(ws, args)
        violations = check_acceptable(result, accepts, ws.hierarchies)
        report.data["acceptable"] = not violations
        if violations:
            for v in violations:
                report.diagnose(str(v))
            return report.emit(NEGATIVE)
    report.say(canonical_json(recipe_doc(result)).decode("utf-8").rstrip("\n"))
    return report.emit(OK)


def cmd_export_dot(args, report: _Report) -> int:
    ws = _load_bundle(args)
    recipe = _recipe_ref(ws, args.recipe)
    dot = export_dot(recipe, name=args.name)
    if args.out:
        Path(args.out).write_text(dot, encoding="utf-8")
        report.say(f"wrote {args.out}")
        report.data = {"path": args.out}
    else:
        report.data = {"dot": dot}
        report.say(dot.rstrip("\n"))
    return report.emit(OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recipegraph",
        description="Validate, compare, compose, and rewrite recipes stored in a workspace bundle.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--bundle",
        "-b",
        default="corpus",
        help="path to a workspace bundle, or 'corpus' for the built-in fixture corpus",
    )
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="max search expansions before giving up (exit 3)",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check recipes against the graph and typing rules")
    p.add_argument("ids", nargs="*", help="recipe ids (default: all in the bundle)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("roles", parents=[common], help="show input/output/intermediate nodes")
    p.add_argument("recipe")
    p.set_defaults(func=cmd_roles)

    p = sub.add_parser("compare", parents=[common], help="test one of the comparison relations")
    p.add_argument("--relation", required=True, choices=("iso", "sub", "equiv", "io", "finer", "specific"))
    p.add_argument("--fix-io", action="store_true", help="require the finer-grained map to fix in/out nodes")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("compose", parents=[common], help="compose two recipes")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("closure", parents=[common], help="closure of a seed set under composition")
    p.add_argument("ids", nargs="*", help="seed recipe ids (default: all)")
    p.add_argument("--max-recipes", type=int, default=10_000)
    p.add_argument("--max-nodes", type=int, default=1_000)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("decompose", parents=[common], help="split a recipe into one atomic piece per action")
    p.add_argument("recipe")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("accept", parents=[common], help="check a recipe against acceptability tuples")
    p.add_argument("recipe")
    p.add_argument(
        "--accept-file", "--accept", dest="accept_file",
        help="acceptability document overriding the bundle's",
    )
    p.set_defaults(func=cmd_accept)

    p = sub.add_parser("substitute", parents=[common], help="rebind node types")
    p.add_argument("recipe")
    p.add_argument("--bind", action="append", default=[], metavar="NODE=TYPE", required=True)
    p.set_defaults(func=cmd_substitute)

    p = sub.add_parser("plan", parents=[common], help="find the cheapest substitution pair")
    p.add_argument("recipe")
    p.add_argument("--missing", action="append", default=[], required=True,
                   help="an unavailable node id or type (repeatable)")
    p.add_argument("--accept-file", "--accept", dest="accept_file")
    p.add_argument("--distances-file", "--distances", dest="distances_file")
    p.add_argument("--aggregation", choices=("sum", "max"), default="sum")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("rewrite", parents=[common], help="replace one subrecipe by another")
    p.add_argument("recipe")
    p.add_argument("--remove", required=True, help="recipe id or recipe-document path")
    p.add_argument("--insert", required=True, help="recipe id or recipe-document path")
    p.add_argument("--cost", action="store_true", help="also report the heuristic edit cost")
    p.add_argument("--distances-file", "--distances", dest="distances_file")
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("rewrite-seq", parents=[common], help="apply a rewrite plan file")
    p.add_argument("recipe")
    p.add_argument("plan", help="JSON plan with primary/secondary step lists")
    p.add_argument(
        "--accept-file", "--accept", dest="accept_file",
        help="verify acceptability of the result",
    )
    p.set_defaults(func=cmd_rewrite_seq)

    p = sub.add_parser("export-dot", parents=[common], help="render a recipe as DOT")
    p.add_argument("recipe")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.add_argument("--name", default="recipe")
    p.set_defaults(func=cmd_export_dot)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = _Report(args.command, args.format)
    try:
        return args.func(args, report)
    except (BudgetExceededError, ClosureLimitError) as exc:
        report.diagnose(str(exc))
        return report.emit(BUDGET)
    except NoSolutionError as exc:
        report.diagnose(str(exc))
        return report.emit(NEGATIVE)
    except RewriteFailureError as exc:
        report.diagnose(str(exc))
        return report.emit(NEGATIVE)
    except RecipeError as exc:
        report.diagnose(str(exc))
        return report.emit(INPUT_ERROR)
    except FileNotFoundError as exc:
        report.diagnose(str(exc))
        return report.emit(INPUT_ERROR)
    except json.JSONDecodeError as exc:
        report.diagnose(f"invalid JSON input: {exc}")
        return report.emit(INPUT_ERROR)


def main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(run())
