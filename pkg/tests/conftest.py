"""Shared instance builders and brute-force reference helpers."""

from __future__ import annotations

import itertools
import math
import random

import numpy as np
import pytest

from hyperising import (
    Hyperedge,
    Hypergraph,
    IsingActivity,
    TableActivity,
    induced_insect,
    is_connected,
)
from hyperising.instances import random_connected_hypergraph


def ising_edge(verts, beta):
    return Hyperedge(tuple(sorted(verts)), IsingActivity(float(beta)))


def k2(beta=0.5):
    return Hypergraph(2, (ising_edge((0, 1), beta),))


def path3(beta=0.5):
    return Hypergraph(3, (ising_edge((0, 1), beta), ising_edge((1, 2), beta)))


def triangle(beta=0.5):
    return Hypergraph(3, (ising_edge((0, 1), beta), ising_edge((0, 2), beta),
                          ising_edge((1, 2), beta)))


def single_edge(k, beta):
    return Hypergraph(k, (ising_edge(range(k), beta),))


def edgeless(n):
    return Hypergraph(n, ())


def path_graph(n, beta=0.5):
    return Hypergraph(n, tuple(ising_edge((i, i + 1), beta)
                               for i in range(n - 1)))


def cycle_graph(n, beta=0.5):
    edges = [ising_edge((i, (i + 1) % n), beta) for i in range(n)]
    return Hypergraph(n, tuple(sorted(edges, key=lambda e: e.vertices)))


def table_edge(verts, values):
    return Hyperedge(tuple(sorted(verts)), TableActivity(tuple(values)))


def brute_connected_sets(g: Hypergraph, t: int) -> dict[int, set[tuple[int, ...]]]:
    """All connected label sets of size <= t by exhausting every subset."""
    out: dict[int, set[tuple[int, ...]]] = {s: set() for s in range(1, t + 1)}
    for size in range(1, min(t, g.n) + 1):
        for sub in itertools.combinations(range(g.n), size):
            if is_connected(induced_insect(g, sub)):
                out[size].add(sub)
    return out


def spanning_tree_count(adj: np.ndarray) -> int:
    """Kirchhoff: number of spanning trees from any Laplacian minor."""
    n = adj.shape[0]
    if n == 1:
        return 1
    lap = np.diag(adj.sum(axis=1)) - adj
    det = np.linalg.det(lap[1:, 1:])
    return int(round(det))


def subtree_count(g: Hypergraph, t: int, v: int) -> int:
    """Number of t-vertex subtrees of a (multi)graph containing v: spanning
    trees of the induced subgraph, summed over vertex subsets through v."""
    adj = np.zeros((g.n, g.n))
    for e in g.edges:
        a, b = e.vertices
        adj[a, b] += 1
        adj[b, a] += 1
    total = 0
    for sub in itertools.combinations(range(g.n), t):
        if v not in sub:
            continue
        block = adj[np.ix_(sub, sub)]
        if ((block.sum(axis=1) > 0).all() or t == 1):
            total += spanning_tree_count(block)
    return total


def corpus_n14() -> list[Hypergraph]:
    """Fixed small-instance corpus: graphs and hypergraphs up to 14
    vertices, including parallel edges, isolated vertices, and a
    disconnected host."""
    rng = random.Random(1404)
    hosts = [
        k2(0.5),
        path3(0.4),
        triangle(0.3),
        single_edge(3, -1 / 3),
        single_edge(5, 0.15),
        path_graph(8, 0.6),
        cycle_graph(10, 0.2),
        # parallel edges and an isolated vertex
        Hypergraph(5, (ising_edge((0, 1), 0.5), ising_edge((0, 1), 0.5),
                       ising_edge((1, 2, 3), 0.2))),
        # disconnected host
        Hypergraph(7, (ising_edge((0, 1), 0.5), ising_edge((1, 2), 0.5),
                       ising_edge((4, 5, 6), 0.25))),
        random_connected_hypergraph(rng, 12, 4, 4, activity="in-range"),
        random_connected_hypergraph(rng, 14, 4, 5, activity="in-range"),
        random_connected_hypergraph(rng, 13, 3, 3, activity="mixed"),
    ]
    return hosts


@pytest.fixture(scope="session")
def small_corpus():
    return corpus_n14()


def rel_err(approx: complex, exact: complex) -> float:
    return abs(approx - exact) / max(abs(exact), 1e-300)


def max_coeff_rel_err(c_approx, c_exact) -> float:
    scale = max(max(abs(x) for x in c_exact), 1e-300)
    worst = 0.0
    for a, b in zip(c_approx, c_exact):
        denom = abs(b) if abs(b) > 1e-9 * scale else scale
        worst = max(worst, abs(a - b) / denom)
    return worst


LAMBDA_GRID = [0.3, 0.5 * complex(math.cos(math.pi / 3), math.sin(math.pi / 3)),
               0.9, 1.5]
