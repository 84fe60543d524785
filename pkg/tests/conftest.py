"""Shared test oracles: independent routes to the quantities under test."""

import random

import numpy as np
import pytest

from walkspectra import Graph
from walkspectra.walks import walk_totals


def naive_walk_totals(g, depth):
    """Walk totals via exact integer matrix powers: W_L = 1^T A^L 1.

    Independent of the per-vertex recurrence used by the library.
    """
    n = g.n
    a = [[int(g.adj[i, j]) for j in range(n)] for i in range(n)]
    cur = [row[:] for row in a]
    totals = []
    for _ in range(depth):
        totals.append(sum(sum(row) for row in cur))
        cur = [
            [sum(cur[i][k] * a[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return totals


def dfs_walk_count(g, u, length):
    """Walks of a given length starting at u, counted by direct enumeration."""
    if length == 0:
        return 1
    return sum(dfs_walk_count(g, v, length - 1) for v in g.neighbor_lists[u])


def eig_rho(g):
    """Spectral radius via the library eigensolver (LAPACK), used as a third
    oracle distinct from both in-package solvers."""
    if g.n == 0:
        return 0.0
    return float(np.linalg.eigvalsh(g.adjacency(float)).max())


def random_graph(rng, n, p):
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return Graph.from_edge_list(n, edges)


def random_connected_graph(rng, n, p):
    """Random graph plus a random spanning tree to force connectivity."""
    g = random_graph(rng, n, p)
    order = list(range(n))
    rng.shuffle(order)
    tree = [(order[i - 1], order[i]) for i in range(1, n)]
    return g.with_edges(tree)


def exact_inner_fraction(host, x, depth):
    """Sum_{i=1..depth} W_i(host) / x^(i+1) as an exact rational (num, den).

    The float x is taken at its exact binary value, so the comparison against
    certified float bounds is exact integer arithmetic.
    """
    p, q = float(x).as_integer_ratio()
    assert p > 0 and q > 0
    totals = walk_totals(host, depth)
    ppow = [1] * (depth + 2)
    qpow = [1] * (depth + 2)
    for i in range(1, depth + 2):
        ppow[i] = ppow[i - 1] * p
        qpow[i] = qpow[i - 1] * q
    num = 0
    for i in range(1, depth + 1):
        num += totals[i - 1] * qpow[i + 1] * ppow[depth - i]
    return num, ppow[depth + 1]


def frac_leq(num, den, bound):
    """num/den <= bound, exactly (bound is a finite float)."""
    bp, bq = float(bound).as_integer_ratio()
    if bq < 0:
        bp, bq = -bp, -bq
    return num * bq <= bp * den


def frac_geq(num, den, bound):
    bp, bq = float(bound).as_integer_ratio()
    if bq < 0:
        bp, bq = -bp, -bq
    return num * bq >= bp * den


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
