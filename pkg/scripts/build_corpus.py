"""Regenerate the fixture corpus shipped as package data.

Builds the workspace document from the tables below, round-trips it through
the parser so the stored bytes are canonical, and sanity-checks that every
recipe validates. Run from the repository root:

    python scripts/build_corpus.py
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from recipegraph.bundle import canonical_json, parse_bundle, serialize_bundle

ACTION_TYPES = [
    ("action", []),
    ("mix", ["action"]),
    ("mix and heat", ["mix"]),
    ("fry", ["action"]),
    ("fry onion", ["fry"]),
    ("fry for 4 min", ["fry"]),
    ("fry onion for 4 min", ["fry onion", "fry for 4 min"]),
    ("boil", ["action"]),
    ("boil pasta for 10 min", ["boil"]),
    ("boil chickpeas", ["boil"]),
    ("boil spaghetti for 3 minutes", ["boil"]),
    ("boil spaghetti for 11 minutes", ["boil"]),
    ("cut in smaller pieces", ["action"]),
    ("chop", ["action", "cut in smaller pieces"]),
    ("finely chop", ["chop"]),
    ("chop carrot", ["chop"]),
    ("chop onion", ["chop"]),
    ("finely chop onion", ["finely chop", "chop onion"]),
    ("bake", ["action"]),
    ("bake at 180C for 45min", ["bake"], ["bake at 356F for 45min"]),
    ("drain and pour in bowl", ["action"]),
    ("pour pasta sauce on spaghetti", ["action"]),
    ("pour bolognese sauce on spaghetti", ["action"]),
    ("boil spaghetti and serve with pasata and fried onions", ["action"]),
    ("put in freezer", ["action"]),
    ("take out of freezer", ["action"]),
    ("soak", ["action"]),
    ("soak barley", ["soak"]),
    ("peel and chop potato", ["action"]),
    ("blend with tahini", ["action"]),
    ("heat canned chickpeas in water", ["action"]),
    ("rinse", ["action"]),
    ("pressure cook", ["action"]),
]

COMESTIBLE_TYPES = [
    ("comestible", []),
    ("fish", ["comestible"]),
    ("pasta", ["comestible"]),
    ("spaghetti", ["pasta"]),
    ("fresh spaghetti", ["spaghetti"]),
    ("dried spaghetti", ["spaghetti"]),
    ("fusilli", ["pasta"]),
    ("tagliatelle", ["pasta"]),
    ("vegetable", ["comestible"]),
    ("onion", ["vegetable"]),
    ("raw onion", ["onion"]),
    ("fried onion", ["onion"], ["fried onions"]),
    ("sliced onion", ["onion"]),
    ("chopped onion", ["onion", "chopped vegetable"]),
    ("carrot", ["vegetable"]),
    ("raw carrot", ["carrot"]),
    ("raw purple carrot", ["raw carrot"]),
    ("chopped carrot", ["carrot", "chopped vegetable"]),
    ("finely chopped carrot", ["chopped carrot"]),
    ("potato", ["vegetable"]),
    ("tomato", ["vegetable"]),
    ("lettuce", ["vegetable"]),
    ("chopped vegetable", ["vegetable"]),
    ("chopped tomato", ["chopped vegetable"]),
    ("chopped lettuce", ["chopped vegetable"]),
    ("fruit", ["comestible"]),
    ("dairy", ["comestible"]),
    ("milk", ["dairy"]),
    ("grain", ["comestible"]),
    ("rice", ["grain"]),
    ("barley", ["grain"]),
    ("legume", ["comestible"]),
    ("chickpeas", ["legume"]),
    ("dried chickpeas", ["chickpeas"]),
    ("soaked chickpeas", ["chickpeas"]),
    ("rinsed chickpeas", ["chickpeas"]),
    ("cooked chickpeas", ["chickpeas"]),
    ("canned chickpeas", ["chickpeas"]),
    ("peas", ["legume"]),
    ("fresh peas", ["peas"]),
    ("frozen peas", ["peas"]),
    ("thawed peas", ["peas"]),
    ("refrozen peas", ["peas"]),
    ("sauce", ["comestible"]),
    ("pasata", ["sauce"]),
    ("heated pasta sauce", ["sauce"]),
    ("jar of bolognese sauce", ["sauce"]),
    ("heated bolognese sauce", ["sauce"]),
    ("liquid", ["comestible"]),
    ("water", ["liquid"]),
    ("boiling salted water", ["liquid"]),
    ("pasta water", ["liquid"]),
    ("prepared", ["comestible"]),
    ("cooked spaghetti", ["prepared"]),
    ("spaghetti in bowl", ["prepared"]),
    ("spaghetti con pasata", ["prepared"]),
    ("spaghetti bolognese", ["prepared"]),
    ("salad", ["prepared"]),
    ("soup", ["prepared"]),
    ("soup base", ["prepared"]),
    ("hummus", ["prepared"]),
]

# recipe id -> (comestibles, actions, arcs, typing)
RECIPES = {
    # two ingredients, one action, one product
    "boil-atomic": (
        ["c1", "c2", "c3"],
        ["a1"],
        [("c1", "a1"), ("c2", "a1"), ("a1", "c3")],
        {
            "c1": "spaghetti",
            "c2": "boiling salted water",
            "a1": "boil pasta for 10 min",
            "c3": "cooked spaghetti",
        },
    ),
    # the four-step pasta dish most structural fixtures build on
    "spaghetti-pasata": (
        ["c0", "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8"],
        ["a1", "a2", "a3", "a4"],
        [
            ("c0", "a1"),
            ("c1", "a1"),
            ("a1", "c2"),
            ("c3", "a2"),
            ("c4", "a2"),
            ("a2", "c5"),
            ("c2", "a3"),
            ("a3", "c6"),
            ("a3", "c7"),
            ("c7", "a4"),
            ("c5", "a4"),
            ("a4", "c8"),
        ],
        {
            "c0": "boiling salted water",
            "c1": "spaghetti",
            "a1": "boil pasta for 10 min",
            "c2": "cooked spaghetti",
            "c3": "pasata",
            "c4": "fried onions",
            "a2": "mix and heat",
            "c5": "heated pasta sauce",
            "a3": "drain and pour in bowl",
            "c6": "pasta water",
            "c7": "spaghetti in bowl",
            "a4": "pour pasta sauce on spaghetti",
            "c8": "spaghetti con pasata",
        },
    ),
    # one-action variant with the same inputs and outputs
    "spaghetti-one-pot": (
        ["c0", "c1", "c3", "c4", "c6", "c8"],
        ["a1"],
        [
            ("c0", "a1"),
            ("c1", "a1"),
            ("c3", "a1"),
            ("c4", "a1"),
            ("a1", "c6"),
            ("a1", "c8"),
        ],
        {
            "c0": "boiling salted water",
            "c1": "spaghetti",
            "c3": "pasata",
            "c4": "fried onion",
            "a1": "boil spaghetti and serve with pasata and fried onions",
            "c6": "pasta water",
            "c8": "spaghetti con pasata",
        },
    ),
    "fry-onion": (
        ["c1", "c2"],
        ["a1"],
        [("c1", "a1"), ("a1", "c2")],
        {"c1": "raw onion", "a1": "fry", "c2": "fried onion"},
    ),
    "fry-onion-alt": (
        ["c7", "c4"],
        ["a8"],
        [("c7", "a8"), ("a8", "c4")],
        {"c7": "raw onion", "a8": "fry", "c4": "fried onion"},
    ),
    "fry-onion-timed": (
        ["c1", "c2"],
        ["a2"],
        [("c1", "a2"), ("a2", "c2")],
        {"c1": "raw onion", "a2": "fry for 4 min", "c2": "fried onion"},
    ),
    # bolognese variant of spaghetti-pasata, target of the rewrite sequence
    "spaghetti-bolognese": (
        ["c0", "c1", "c2", "c5", "c6", "c7", "c8", "c9"],
        ["a1", "a2", "a3", "a4"],
        [
            ("c0", "a1"),
            ("c1", "a1"),
            ("a1", "c2"),
            ("c9", "a2"),
            ("a2", "c5"),
            ("c2", "a3"),
            ("a3", "c6"),
            ("a3", "c7"),
            ("c7", "a4"),
            ("c5", "a4"),
            ("a4", "c8"),
        ],
        {
            "c0": "boiling salted water",
            "c1": "spaghetti",
            "a1": "boil pasta for 10 min",
            "c2": "cooked spaghetti",
            "c9": "jar of bolognese sauce",
            "a2": "mix and heat",
            "c5": "heated bolognese sauce",
            "a3": "drain and pour in bowl",
            "c6": "pasta water",
            "c7": "spaghetti in bowl",
            "a4": "pour bolognese sauce on spaghetti",
            "c8": "spaghetti bolognese",
        },
    ),
    "bolognese-sauce-prep": (
        ["c9", "c5"],
        ["a2"],
        [("c9", "a2"), ("a2", "c5")],
        {
            "c9": "jar of bolognese sauce",
            "a2": "mix and heat",
            "c5": "heated bolognese sauce",
        },
    ),
    "bolognese-assembly": (
        ["c5", "c7", "c8"],
        ["a4"],
        [("c5", "a4"), ("c7", "a4"), ("a4", "c8")],
        {
            "c5": "heated bolognese sauce",
            "c7": "spaghetti in bowl",
            "a4": "pour bolognese sauce on spaghetti",
            "c8": "spaghetti bolognese",
        },
    ),
    "chop-tomato": (
        ["c1", "c2"],
        ["a1"],
        [("c1", "a1"), ("a1", "c2")],
        {"c1": "tomato", "a1": "chop", "c2": "chopped tomato"},
    ),
    # consumes chop-tomato's product and outputs onto its input node
    "tomato-loop": (
        ["c1", "c2"],
        ["a2"],
        [("c2", "a2"), ("a2", "c1")],
        {"c2": "chopped tomato", "a2": "mix", "c1": "salad"},
    ),
    "chop-lettuce": (
        ["c3", "c4"],
        ["a2"],
        [("c3", "a2"), ("a2", "c4")],
        {"c3": "lettuce", "a2": "chop", "c4": "chopped lettuce"},
    ),
    "mix-salad": (
        ["c2", "c4", "c5"],
        ["a3"],
        [("c2", "a3"), ("c4", "a3"), ("a3", "c5")],
        {
            "c2": "chopped tomato",
            "c4": "chopped lettuce",
            "a3": "mix",
            "c5": "salad",
        },
    ),
    "boil-chain": (
        ["c1", "c2"],
        ["a1"],
        [("c1", "a1"), ("a1", "c2")],
        {"c1": "spaghetti", "a1": "boil pasta for 10 min", "c2": "cooked spaghetti"},
    ),
    "drain-chain": (
        ["c2", "c3"],
        ["a2"],
        [("c2", "a2"), ("a2", "c3")],
        {
            "c2": "cooked spaghetti",
            "a2": "drain and pour in bowl",
            "c3": "spaghetti in bowl",
        },
    ),
    # five-node chain used by the typing-table checks
    "carrot-soup": (
        ["c1", "c2", "c3"],
        ["a1", "a2"],
        [("c1", "a1"), ("a1", "c2"), ("c2", "a2"), ("a2", "c3")],
        {
            "c1": "raw carrot",
            "a1": "chop",
            "c2": "chopped carrot",
            "a2": "boil",
            "c3": "soup",
        },
    ),
    "vegetable-soup": (
        ["c1", "c2", "c3", "c4", "c5"],
        ["a1", "a2", "a3"],
        [
            ("c1", "a1"),
            ("a1", "c3"),
            ("c2", "a2"),
            ("a2", "c4"),
            ("c3", "a3"),
            ("c4", "a3"),
            ("a3", "c5"),
        ],
        {
            "c1": "raw carrot",
            "a1": "chop carrot",
            "c3": "chopped vegetable",
            "c2": "barley",
            "a2": "soak barley",
            "c4": "soup base",
            "a3": "boil",
            "c5": "soup",
        },
    ),
    "fresh-spaghetti": (
        ["c1", "c2"],
        ["a1"],
        [("c1", "a1"), ("a1", "c2")],
        {
            "c1": "fresh spaghetti",
            "a1": "boil spaghetti for 3 minutes",
            "c2": "cooked spaghetti",
        },
    ),
    "peas-freeze": (
        ["c1", "c2"],
        ["a1"],
        [("c1", "a1"), ("a1", "c2")],
        {"c1": "fresh peas", "a1": "put in freezer", "c2": "frozen peas"},
    ),
    "peas-thaw": (
        ["c2", "c3"],
        ["a2"],
        [("c2", "a2"), ("a2", "c3")],
        {"c2": "frozen peas", "a2": "take out of freezer", "c3": "thawed peas"},
    ),
    "peas-refreeze": (
        ["c3", "c4"],
        ["a3"],
        [("c3", "a3"), ("a3", "c4")],
        {"c3": "thawed peas", "a3": "put in freezer", "c4": "refrozen peas"},
    ),
    "peas-rethaw": (
        ["c4", "c5"],
        ["a4"],
        [("c4", "a4"), ("a4", "c5")],
        {"c4": "refrozen peas", "a4": "take out of freezer", "c5": "thawed peas"},
    ),
    # seven-node chain hosting the structural-substitution fixtures
    "hummus": (
        ["c1", "c2", "c3", "c4"],
        ["a1", "a2", "a3"],
        [
            ("c1", "a1"),
            ("a1", "c2"),
            ("c2", "a2"),
            ("a2", "c3"),
            ("c3", "a3"),
            ("a3", "c4"),
        ],
        {
            "c1": "dried chickpeas",
            "a1": "soak",
            "c2": "soaked chickpeas",
            "a2": "boil chickpeas",
            "c3": "cooked chickpeas",
            "a3": "blend with tahini",
            "c4": "hummus",
        },
    ),
    "hummus-canned-shortcut": (
        ["c7", "c8", "c3"],
        ["a9"],
        [("c7", "a9"), ("c8", "a9"), ("a9", "c3")],
        {
            "c7": "canned chickpeas",
            "c8": "water",
            "a9": "heat canned chickpeas in water",
            "c3": "cooked chickpeas",
        },
    ),
    "hummus-canned": (
        ["c7", "c8", "c3", "c4"],
        ["a9", "a3"],
        [
            ("c7", "a9"),
            ("c8", "a9"),
            ("a9", "c3"),
            ("c3", "a3"),
            ("a3", "c4"),
        ],
        {
            "c7": "canned chickpeas",
            "c8": "water",
            "a9": "heat canned chickpeas in water",
            "c3": "cooked chickpeas",
            "a3": "blend with tahini",
            "c4": "hummus",
        },
    ),
    "hummus-pressure-cook": (
        ["c2", "c5", "c3"],
        ["a4", "a6"],
        [("c2", "a4"), ("a4", "c5"), ("c5", "a6"), ("a6", "c3")],
        {
            "c2": "soaked chickpeas",
            "a4": "rinse",
            "c5": "rinsed chickpeas",
            "a6": "pressure cook",
            "c3": "cooked chickpeas",
        },
    ),
    "hummus-slow": (
        ["c1", "c2", "c5", "c3", "c4"],
        ["a1", "a4", "a6", "a3"],
        [
            ("c1", "a1"),
            ("a1", "c2"),
            ("c2", "a4"),
            ("a4", "c5"),
            ("c5", "a6"),
            ("a6", "c3"),
            ("c3", "a3"),
            ("a3", "c4"),
        ],
        {
            "c1": "dried chickpeas",
            "a1": "soak",
            "c2": "soaked chickpeas",
            "a4": "rinse",
            "c5": "rinsed chickpeas",
            "a6": "pressure cook",
            "c3": "cooked chickpeas",
            "a3": "blend with tahini",
            "c4": "hummus",
        },
    ),
}

ACCEPTABILITY = [
    ["boiling salted water", "boil pasta for 10 min", "cooked spaghetti"],
    ["spaghetti", "boil pasta for 10 min", "cooked spaghetti"],
    ["pasata", "mix and heat", "heated pasta sauce"],
    ["fried onions", "mix and heat", "heated pasta sauce"],
    ["cooked spaghetti", "drain and pour in bowl", "pasta water"],
    ["cooked spaghetti", "drain and pour in bowl", "spaghetti in bowl"],
    ["spaghetti in bowl", "pour pasta sauce on spaghetti", "spaghetti con pasata"],
    ["heated pasta sauce", "pour pasta sauce on spaghetti", "spaghetti con pasata"],
    ["tagliatelle", "boil pasta for 10 min", "cooked spaghetti"],
    ["rice", "boil pasta for 10 min", "cooked spaghetti"],
    ["jar of bolognese sauce", "mix and heat", "heated bolognese sauce"],
    ["spaghetti in bowl", "pour bolognese sauce on spaghetti", "spaghetti bolognese"],
    ["heated bolognese sauce", "pour bolognese sauce on spaghetti", "spaghetti bolognese"],
    ["fresh spaghetti", "boil spaghetti for 3 minutes", "cooked spaghetti"],
    ["dried spaghetti", "boil spaghetti for 11 minutes", "cooked spaghetti"],
    ["raw carrot", "chop carrot", "chopped vegetable"],
    ["raw onion", "chop onion", "chopped vegetable"],
    ["barley", "soak barley", "soup base"],
    ["potato", "peel and chop potato", "soup base"],
    ["chopped vegetable", "boil", "soup"],
    ["soup base", "boil", "soup"],
]

DISTANCES = [
    ["spaghetti", "tagliatelle", 0.1],
    ["rice", "spaghetti", 0.8],
    ["raw carrot", "raw onion", 0.2],
    ["barley", "potato", 0.5],
    ["chop carrot", "chop onion", 0.2],
    ["peel and chop potato", "soak barley", 0.6],
    ["dried spaghetti", "fresh spaghetti", 0.15],
    ["boil spaghetti for 11 minutes", "boil spaghetti for 3 minutes", 0.1],
]


def type_entries(rows):
    entries = []
    for row in rows:
        tid, parents = row[0], row[1]
        entry = {"id": tid, "parents": parents}
        if len(row) > 2:
            entry["aliases"] = row[2]
        entries.append(entry)
    return entries


def build_doc() -> dict:
    registry: dict[str, str] = {}
    recipes = []
    for rid, (coms, acts, arcs, typing) in RECIPES.items():
        for c in coms:
            assert registry.get(c, "comestible") == "comestible", (rid, c)
            registry[c] = "comestible"
        for a in acts:
            assert registry.get(a, "action") == "action", (rid, a)
            registry[a] = "action"
        recipes.append(
            {
                "id": rid,
                "comestibles": coms,
                "actions": acts,
                "arcs": [list(arc) for arc in arcs],
                "typing": typing,
            }
        )
    return {
        "hierarchies": {
            "action": {"kind": "action", "root": "action", "types": type_entries(ACTION_TYPES)},
            "comestible": {
                "kind": "comestible",
                "root": "comestible",
                "types": type_entries(COMESTIBLE_TYPES),
            },
        },
        "nodes": registry,
        "recipes": recipes,
        "acceptability": {"tuples": ACCEPTABILITY, "policy": "exact", "depth_limit": 1},
        "distances": {
            "pairs": DISTANCES,
            "generalization_penalty": 2.0,
            "step_cost": 1.0,
        },
    }


def main() -> None:
    doc = build_doc()
    ws = parse_bundle(canonical_json(doc))
    for rid in ws.recipe_ids():
        ws.recipe(rid)  # raises if any fixture is invalid
    data = serialize_bundle(ws)
    assert parse_bundle(data) is not None
    out = Path(__file__).resolve().parent.parent / "src" / "recipegraph" / "data" / "corpus.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(data)
    print(f"wrote {out} ({len(data)} bytes, {len(ws.raw_recipes)} recipes)")


if __name__ == "__main__":
    main()
