from __future__ import annotations

import pytest

from recipegraph.bundle import WorkspaceBundle, load_corpus
from recipegraph.core import Recipe, build_recipe
from recipegraph.typekb import Hierarchies


@pytest.fixture(scope="session")
def corpus() -> WorkspaceBundle:
    return load_corpus()


@pytest.fixture(scope="session")
def hierarchies(corpus) -> Hierarchies:
    return corpus.hierarchies


@pytest.fixture(scope="session")
def induced(hierarchies):
    """Induced subrecipe of a host on a node set, with inherited arcs and types."""

    def _induced(host: Recipe, keep: set[str]) -> Recipe:
        g = host.graph
        coms = g.comestibles & keep
        acts = g.actions & keep
        arcs = [(s, t) for s, t in g.arcs if s in keep and t in keep]
        typing = {n: host.type_of(n) for n in keep}
        return build_recipe(coms, acts, arcs, typing, hierarchies)

    return _induced
