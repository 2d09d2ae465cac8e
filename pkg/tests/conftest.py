import random

import networkx as nx
import pytest

from zerr.graphs import Graph

ACCEPTANCE_LINES = []


def from_nx(G) -> Graph:
    return Graph.from_edges([str(v) for v in G.nodes], [(str(a), str(b)) for a, b in G.edges])


def to_nx(g: Graph):
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges())
    return G


def random_graph(rng: random.Random, n_max: int, n_min: int = 1) -> Graph:
    n = rng.randint(n_min, n_max)
    return from_nx(nx.gnp_random_graph(n, rng.random(), seed=rng.randrange(2**31)))


def random_bipartite(rng: random.Random, n_max: int) -> Graph:
    n = rng.randint(2, n_max)
    left = rng.randint(1, n - 1)
    p = rng.random()
    edges = [(str(a), str(b)) for a in range(left) for b in range(left, n) if rng.random() < p]
    return Graph.from_edges([str(i) for i in range(n)], edges)


@pytest.fixture
def rng():
    return random.Random(20261019)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.call_report = rep
