"""
Directed graphs for the k-path demos, plus their walk polynomial ABP.

Vertices are 0..n-1 internally and 1..n in files and printed output.
The graph polynomial C_G(z) = sum over k-vertex walks v_1 ... v_k of
z_{v_1} ... z_{v_k}; its multilinear words are exactly the simple k-paths.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np

from src.abp.core import ABPBuilder
from src.abp.linform import LinForm
from src.algebra.scalars import RATIONAL
from src.errors import InvalidParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError("a digraph needs at least one vertex")
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidParameterError(f"arc ({u + 1}, {v + 1}) outside 1..{self.n}")

    @classmethod
    def from_arcs(cls, n, arcs):
        return cls(n, frozenset((int(u), int(v)) for u, v in arcs))

    def adjacency(self):
        out = {u: [] for u in range(self.n)}
        for u, v in sorted(self.arcs):
            out[u].append(v)
        return out

    def adjacency_matrix(self):
        """0/1 adjacency matrix with exact (object) entries."""
        a = nx.to_numpy_array(self.to_networkx(), nodelist=range(self.n), dtype=np.int64)
        return a.astype(object)

    def to_networkx(self):
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(sorted(self.arcs))
        return g

    @classmethod
    def from_networkx(cls, g):
        nodes = sorted(g.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls.from_arcs(len(nodes), [(index[u], index[v]) for u, v in g.edges()])

    def __str__(self):
        arcs = ", ".join(f"{u + 1}->{v + 1}" for u, v in sorted(self.arcs))
        return f"Digraph(n={self.n}: {arcs})"


# ──────────────────────────────────────────────
# INPUT / FIXTURES
# ──────────────────────────────────────────────

def parse_digraph(text):
    """
    Edge list, one "u v" pair per line (1-indexed). A line holding a single
    number declares a vertex, so isolated vertices survive. '#' starts a
    comment.
    """
    arcs = []
    n = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            ids = [int(p) for p in parts]
        except ValueError as exc:
            raise InvalidParameterError(f"line {lineno}: expected integers, got {raw!r}") from exc
        if len(ids) not in (1, 2) or min(ids) < 1:
            raise InvalidParameterError(f"line {lineno}: expected 'u v' with 1-based vertices")
        n = max(n, *ids)
        if len(ids) == 2:
            arcs.append((ids[0] - 1, ids[1] - 1))
    return Digraph.from_arcs(n, arcs)


def load_digraph(path):
    with open(path, "r", encoding="utf-8") as f:
        return parse_digraph(f.read())


def random_digraph(n, p=0.4, seed=None):
    """G(n, p) digraph (no self-loops) via networkx."""
    return Digraph.from_networkx(nx.gnp_random_graph(n, p, seed=seed, directed=True))


def path_digraph(n):
    return Digraph.from_arcs(n, [(i, i + 1) for i in range(n - 1)])


def cycle_digraph(n):
    return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def complete_digraph(n):
    return Digraph.from_arcs(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def bipartite_digraph(a, b):
    """Every arc goes from the left part (1..a) to the right part."""
    return Digraph.from_arcs(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def edgeless_digraph(n):
    return Digraph.from_arcs(n, [])


# ──────────────────────────────────────────────
# GRAPH POLYNOMIAL
# ──────────────────────────────────────────────

def graph_poly_abp(G, k, field=RATIONAL):
    """
    ABP for C_G with k edge layers over z_1..z_n.

    Layer 0 is the source, layers 1..k-1 hold one node per vertex (the
    last vertex of the walk so far), layer k is the sink. Entering vertex
    v reads z_v; the last edge from u reads sum of z_v over arcs u -> v.
    """
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    n = G.n
    one = field.one
    builder = ABPBuilder(n, field)
    builder.add_layer(1)
    builder.labels[(0, 0)] = "s"
    if k == 1:
        builder.add_layer(1)
        builder.labels[(1, 0)] = "t"
        builder.add_edge(0, 0, 0, LinForm({v: one for v in range(n)}))
        return builder.build(sources=[0], sinks=[0])
    for layer in range(1, k):
        builder.add_layer()
        for v in range(n):
            builder.add_node(layer, f"v{v + 1}")
    builder.add_layer(1)
    builder.labels[(k, 0)] = "t"
    adj = G.adjacency()
    for v in range(n):
        builder.add_edge(0, 0, v, LinForm.var(v, one))
    for layer in range(1, k - 1):
        for u, outs in adj.items():
            for v in outs:
                builder.add_edge(layer, u, v, LinForm.var(v, one))
    for u, outs in adj.items():
        if outs:
            builder.add_edge(k - 1, u, 0, LinForm({v: one for v in outs}))
    out = builder.build(sources=[0], sinks=[0])
    logger.debug("graph_poly_abp(n=%d, k=%d): %s", n, k, out)
    return out


def count_k_walks(G, k):
    """Number of k-vertex walks, sum of entries of adjacency^(k-1)."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    return int(np.linalg.matrix_power(G.adjacency_matrix(), k - 1).sum())
