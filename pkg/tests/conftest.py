import itertools
import os
import random
import sys

import pytest
from typer.testing import CliRunner

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))
from app.algebra.graph import SimpleGraph
from app.algebra.tgraph import enumerate_connected, family
from app.core.config import settings

CORPUS_SIZE = 200
CORPUS_MAX_VERTICES = 6


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=settings.SEED, help="Seed for randomized corpora")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("CAYGEN_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="set CAYGEN_EXTENDED=1 to run n = 6, 7 enumeration")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture(scope="session")
def rng(seed) -> random.Random:
    return random.Random(seed)


@pytest.fixture(scope="session")
def random_corpus(seed) -> list[SimpleGraph]:
    """200 seeded random graphs on at most 6 vertices, edge density varying per graph."""
    r = random.Random(seed)
    corpus = []
    for _ in range(CORPUS_SIZE):
        n = r.randint(1, CORPUS_MAX_VERTICES)
        p = r.random()
        edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if r.random() < p]
        corpus.append(SimpleGraph.from_edges(n, edges))
    return corpus


@pytest.fixture(scope="session")
def classes_n4():
    return enumerate_connected(4)


@pytest.fixture(scope="session")
def classes_n5():
    return enumerate_connected(5)


@pytest.fixture(scope="session")
def families_n5():
    return {name: family(name, 5) for name in ("path", "cycle", "star", "complete")}


def _all_bijections(n: int):
    return itertools.permutations(range(n))


@pytest.fixture(scope="session")
def brute_force_aut_order():
    """|Aut(g)| by trying every bijection."""

    def _order(g: SimpleGraph) -> int:
        return sum(
            all(g.has_edge(p[u], p[v]) for u, v in g.edges)
            for p in _all_bijections(g.num_vertices)
        )

    return _order


@pytest.fixture(scope="session")
def brute_force_isomorphic():
    def _isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
        if g.num_vertices != h.num_vertices or g.num_edges != h.num_edges:
            return False
        return any(
            all(h.has_edge(p[u], p[v]) for u, v in g.edges)
            for p in _all_bijections(g.num_vertices)
        )

    return _isomorphic


@pytest.fixture(scope="session")
def to_networkx():
    return SimpleGraph.to_networkx


@pytest.fixture(scope="function")
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture(scope="function")
def cli_app():
    from app.main import app

    return app


@pytest.fixture(scope="function")
def edge_list_file(tmp_path):
    """Write an edge-list file and return its path."""

    def _write(text: str, name: str = "graph.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
