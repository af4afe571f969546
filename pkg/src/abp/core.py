"""
Layered algebraic branching programs.

An ABP here is a list of node layers (node counts), and for every pair of
adjacent layers a list of edges labeled by LinForms. The polynomial for a
(source, sink) pair is the sum over paths of the left-to-right product of
the edge labels. Several sources and several sinks are allowed: B1/B2 of
the S* construction are multi-output.

Key design decisions:
- Nodes are addressed as (layer, index). For transition matrices every node
  also gets a global index: offset(layer) + index.
- ABPs are immutable once built. All building happens in ABPBuilder,
  which merges parallel edges by adding their labels.
- Dead nodes are only removed by prune()/normalize(), never implicitly, so
  size checks see exactly what a construction produced.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from src import config
from src.abp.linform import LinForm
from src.algebra.scalars import RATIONAL
from src.errors import (
    FieldMismatchError,
    GuardExceeded,
    InvalidParameterError,
    MissingAssignmentError,
    NonHomogeneousError,
)
from src.poly.ncpoly import NCPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    layer: int
    src: int
    dst: int
    label: LinForm


class ABP:
    """An immutable layered ABP. Build one with ABPBuilder."""

    def __init__(self, layers, edges, sources, sinks, nvars, field=RATIONAL,
                 labels=None, commutative=False, pruned=False):
        self.layers = tuple(layers)
        self.nvars = nvars
        self.field = field
        self.commutative = commutative
        self.pruned = pruned
        self.sources = tuple(sources)
        self.sinks = tuple(sinks)
        self.labels = dict(labels or {})
        by_layer = [[] for _ in range(max(len(self.layers) - 1, 0))]
        for e in edges:
            if not 0 <= e.layer < len(by_layer):
                raise InvalidParameterError(f"edge layer {e.layer} out of range")
            if not (0 <= e.src < self.layers[e.layer] and 0 <= e.dst < self.layers[e.layer + 1]):
                raise InvalidParameterError(f"edge {e.src}->{e.dst} at layer {e.layer} has a bad endpoint")
            by_layer[e.layer].append(e)
        for bucket in by_layer:
            bucket.sort(key=lambda e: (e.src, e.dst))
        self.edges_by_layer = by_layer
        for s in self.sources:
            if not 0 <= s < self.layers[0]:
                raise InvalidParameterError(f"source {s} not in layer 0")
        for t in self.sinks:
            if not 0 <= t < self.layers[-1]:
                raise InvalidParameterError(f"sink {t} not in the last layer")

    # ── shape ──

    @property
    def edges(self):
        return [e for bucket in self.edges_by_layer for e in bucket]

    @property
    def num_edge_layers(self):
        return len(self.layers) - 1

    @property
    def size(self):
        """Total node count."""
        return sum(self.layers)

    @property
    def num_edges(self):
        return sum(len(bucket) for bucket in self.edges_by_layer)

    def offsets(self):
        out, acc = [], 0
        for count in self.layers:
            out.append(acc)
            acc += count
        return out

    @property
    def is_homogeneous(self):
        return all(e.label.is_homogeneous and not e.label.is_scalar for e in self.edges)

    @property
    def has_scalar_parts(self):
        return any(not e.label.is_homogeneous for e in self.edges)

    def used_variables(self):
        out = set()
        for e in self.edges:
            out |= e.label.variables()
        return out

    def label(self, layer, node):
        return self.labels.get((layer, node))

    def with_flags(self, **changes):
        fields = dict(
            layers=self.layers, edges=self.edges, sources=self.sources, sinks=self.sinks,
            nvars=self.nvars, field=self.field, labels=self.labels,
            commutative=self.commutative, pruned=self.pruned,
        )
        fields.update(changes)
        return ABP(**fields)

    def __repr__(self):
        return (f"ABP(layers={len(self.layers)}, nodes={self.size}, edges={self.num_edges}, "
                f"nvars={self.nvars}, sources={len(self.sources)}, sinks={len(self.sinks)})")


class ABPBuilder:
    """Mutable build phase for an ABP."""

    def __init__(self, nvars, field=RATIONAL, commutative=False):
        self.nvars = nvars
        self.field = field
        self.commutative = commutative
        self.layers = []
        self.labels = {}
        self._keys = []
        self._edges = {}

    def add_layer(self, count=0):
        self.layers.append(count)
        self._keys.append({})
        return len(self.layers) - 1

    def add_node(self, layer, label=None):
        idx = self.layers[layer]
        self.layers[layer] += 1
        if label is not None:
            self.labels[(layer, idx)] = label
        return idx

    def node(self, layer, key, label=None):
        """Get-or-create the node with a hashable key (e.g. a subset bitmask)."""
        while layer >= len(self.layers):
            self.add_layer()
        keys = self._keys[layer]
        if key not in keys:
            keys[key] = self.add_node(layer, label if label is not None else str(key))
        return keys[key]

    def has_node(self, layer, key):
        return layer < len(self._keys) and key in self._keys[layer]

    def keys(self, layer):
        return dict(self._keys[layer])

    def add_edge(self, layer, src, dst, label):
        key = (layer, src, dst)
        if key in self._edges:
            self._edges[key] = self._edges[key] + label
        else:
            self._edges[key] = label

    def build(self, sources=None, sinks=None, pruned=False):
        sources = list(range(self.layers[0])) if sources is None else sources
        sinks = list(range(self.layers[-1])) if sinks is None else sinks
        edges = [Edge(l, s, d, lab) for (l, s, d), lab in self._edges.items() if not lab.is_zero]
        return ABP(self.layers, edges, sources, sinks, self.nvars, self.field,
                   self.labels, self.commutative, pruned)


def subset_label(mask, base=1):
    """'{1,3}' style label for a bitmask."""
    members = [str(i + base) for i in range(mask.bit_length()) if mask >> i & 1]
    return "{" + ",".join(members) + "}"


# ──────────────────────────────────────────────
# EXPANSION
# ──────────────────────────────────────────────

def _pick(b, source, sink):
    source = b.sources[0] if source is None else source
    sink = b.sinks[0] if sink is None else sink
    return source, sink


def expand_outputs(b, source=None, commutative=None, guard=None):
    """
    Expand the polynomials from one source to every last-layer node.

    Returns:
        dict last-layer node -> NCPoly
    """
    source = b.sources[0] if source is None else source
    commutative = b.commutative if commutative is None else commutative
    guard = config.resolve_guard(guard, config.EXPAND_GUARD)
    one = b.field.one
    width = max(b.layers)
    cur = {source: {(): one}}
    for layer, bucket in enumerate(b.edges_by_layer):
        nxt = defaultdict(dict)
        for e in bucket:
            poly = cur.get(e.src)
            if not poly:
                continue
            target = nxt[e.dst]
            lab = e.label
            for word, c in poly.items():
                if lab.constant != 0:
                    target[word] = target.get(word, 0) + c * lab.constant
                for v, a in lab.coeffs.items():
                    w = tuple(sorted(word + (v,))) if commutative else word + (v,)
                    target[w] = target.get(w, 0) + c * a
        cur = {}
        for node, poly in nxt.items():
            poly = {w: c for w, c in poly.items() if c != 0}
            if poly:
                cur[node] = poly
        live = max((len(p) for p in cur.values()), default=0)
        estimate = len(b.layers) * width * live
        if estimate > guard:
            raise GuardExceeded(f"expand (layer {layer + 1})", estimate, guard)
    return {
        node: NCPoly(poly, b.nvars, commutative, b.field)
        for node, poly in cur.items()
    }


def expand(b, source=None, sink=None, commutative=None, guard=None):
    """
    Full polynomial computed between one source and one sink.

    Args:
        b: ABP
        source, sink: node indices in the first / last layer (default: first of each)
        commutative: sort words; defaults to the ABP's own flag
        guard: expansion guard (None -> config.EXPAND_GUARD)
    """
    source, sink = _pick(b, source, sink)
    commutative = b.commutative if commutative is None else commutative
    outputs = expand_outputs(b, source, commutative, guard)
    return outputs.get(sink, NCPoly.zero(b.nvars, commutative, b.field))


# ──────────────────────────────────────────────
# EVALUATION
# ──────────────────────────────────────────────

def _as_mapping(point):
    if isinstance(point, dict):
        return point
    return dict(enumerate(point))


def _check_point(b, point):
    missing = b.used_variables() - set(point)
    if missing:
        raise MissingAssignmentError(f"no value for variables {sorted(missing)[:10]}")


def _evaluate(b, lift, zero, one, source, sink):
    source, sink = _pick(b, source, sink)
    values = {source: one}
    for bucket in b.edges_by_layer:
        nxt = {}
        for e in bucket:
            val = values.get(e.src)
            if val is None:
                continue
            term = val * lift(e.label)
            nxt[e.dst] = nxt[e.dst] + term if e.dst in nxt else term
        values = nxt
    return values.get(sink, zero)


def eval_scalar(b, point, source=None, sink=None):
    """Value at a scalar point (var id -> scalar, or a sequence)."""
    point = _as_mapping(point)
    _check_point(b, point)
    field = b.field
    point = {v: field(x) for v, x in point.items()}
    return _evaluate(b, lambda lab: lab.evaluate(point, field), field.zero, field.one, source, sink)


def eval_algebra(b, point, source=None, sink=None):
    """
    Value with every variable replaced by an element of one algebra; edge
    labels multiply left to right along each path.
    """
    point = _as_mapping(point)
    _check_point(b, point)
    algebras = {id(x.algebra): x.algebra for x in point.values()}
    if len(algebras) > 1:
        raise FieldMismatchError("evaluation point mixes elements of different algebras")
    if not algebras:
        raise MissingAssignmentError("empty evaluation point")
    algebra = next(iter(algebras.values()))

    def lift(lab):
        out = algebra.scalar(lab.constant) if lab.constant != 0 else algebra.zero()
        for v, c in lab.coeffs.items():
            out = out + point[v].scale(c)
        return out

    return _evaluate(b, lift, algebra.zero(), algebra.one(), source, sink)


def identity_matrix(size, field=RATIONAL):
    out = np.full((size, size), field.zero, dtype=object)
    for i in range(size):
        out[i, i] = field.one
    return out


def eval_matrices(b, point, source=None, sink=None):
    """
    Value over the full matrix ring: every variable becomes a square numpy
    object-dtype matrix of exact scalars.
    """
    point = _as_mapping(point)
    _check_point(b, point)
    if not point:
        raise MissingAssignmentError("matrix evaluation needs at least one assigned matrix")
    sizes = {m.shape for m in point.values()}
    if len(sizes) != 1:
        raise FieldMismatchError(f"matrices of different shapes {sorted(sizes)}")
    size = next(iter(sizes))[0]
    field = b.field
    ident = identity_matrix(size, field)
    zero = np.full((size, size), field.zero, dtype=object)

    def lift(lab):
        out = ident * lab.constant if lab.constant != 0 else zero.copy()
        for v, c in lab.coeffs.items():
            out = out + point[v] * c
        return out

    class _Mat:
        # wraps numpy so that '*' in the shared evaluator means matrix product
        __slots__ = ("m",)

        def __init__(self, m):
            self.m = m

        def __mul__(self, other):
            return _Mat(self.m.dot(other.m))

        def __add__(self, other):
            return _Mat(self.m + other.m)

    value = _evaluate(b, lambda lab: _Mat(lift(lab)), _Mat(zero), _Mat(ident), source, sink)
    return value.m


# ──────────────────────────────────────────────
# TRANSITION MATRICES
# ──────────────────────────────────────────────

@dataclass(frozen=True)
class TransitionMatrices:
    """
    One s x s matrix per variable, s = node count. M_i[u, v] is the
    coefficient of y_i on edge (u, v) under global node indexing.
    """

    size: int
    matrices: dict
    source_index: int
    sink_index: int

    def scaled(self, point):
        """a_i * M_i for every variable the point assigns."""
        return {v: self.matrices[v] * c for v, c in point.items()}


def transition_matrices(b, source=None, sink=None):
    """Transition matrices of a homogeneous ABP."""
    for e in b.edges:
        if not e.label.is_homogeneous:
            raise NonHomogeneousError(
                f"edge {e.src}->{e.dst} at layer {e.layer} has a constant part; normalize() first"
            )
    source, sink = _pick(b, source, sink)
    offsets = b.offsets()
    s = b.size
    zero = b.field.zero
    mats = {v: np.full((s, s), zero, dtype=object) for v in range(b.nvars)}
    for e in b.edges:
        u = offsets[e.layer] + e.src
        w = offsets[e.layer + 1] + e.dst
        for v, c in e.label.coeffs.items():
            mats[v][u, w] = mats[v][u, w] + c
    return TransitionMatrices(s, mats, offsets[0] + source, offsets[-1] + sink)


def hadamard_eval_via_matrices(f_abp, g_abp, point):
    """
    (f o g)(a) by evaluating f's ABP on a_i * M_i, the scaled transition
    matrices of g's ABP, and reading entry (source, sink).
    """
    point = _as_mapping(point)
    tm = transition_matrices(g_abp)
    scaled = tm.scaled({v: g_abp.field(point[v]) for v in range(f_abp.nvars)})
    value = eval_matrices(f_abp, scaled)
    return value[tm.source_index, tm.sink_index]


# ──────────────────────────────────────────────
# NORMALIZE / PRUNE
# ──────────────────────────────────────────────

def _live_nodes(b):
    """Nodes on some source -> sink path, as a set of (layer, node)."""
    fwd = {(0, s) for s in b.sources}
    for layer, bucket in enumerate(b.edges_by_layer):
        for e in bucket:
            if (layer, e.src) in fwd:
                fwd.add((layer + 1, e.dst))
    last = len(b.layers) - 1
    bwd = {(last, t) for t in b.sinks}
    for layer in range(last - 1, -1, -1):
        for e in b.edges_by_layer[layer]:
            if (layer + 1, e.dst) in bwd:
                bwd.add((layer, e.src))
    return fwd & bwd


def is_pruned(b):
    """True when every node lies on a source -> sink path."""
    return len(_live_nodes(b)) == b.size


def prune(b):
    """Drop nodes that are not on any source -> sink path (sources/sinks stay)."""
    live = _live_nodes(b)
    last = len(b.layers) - 1
    keep = {(0, s) for s in b.sources} | {(last, t) for t in b.sinks} | live
    remap = []
    layers = []
    for layer, count in enumerate(b.layers):
        mapping = {}
        for node in range(count):
            if (layer, node) in keep:
                mapping[node] = len(mapping)
        remap.append(mapping)
        layers.append(len(mapping))
    edges = [
        Edge(e.layer, remap[e.layer][e.src], remap[e.layer + 1][e.dst], e.label)
        for e in b.edges
        if (e.layer, e.src) in live and (e.layer + 1, e.dst) in live
    ]
    labels = {
        (layer, remap[layer][node]): lab
        for (layer, node), lab in b.labels.items()
        if node in remap[layer]
    }
    return ABP(layers, edges, [remap[0][s] for s in b.sources], [remap[last][t] for t in b.sinks],
               b.nvars, b.field, labels, b.commutative, pruned=True)


def normalize(b):
    """
    Make every edge homogeneous and prune.

    Constant (degree-0) edge parts are removed by epsilon-closure: a node
    reached by a linear edge becomes a state indexed by its degree, and the
    weight of every constant path out of it is folded into the next linear
    edge (or, at the end, into the edge entering the sink). Raises
    NonHomogeneousError if sinks are reached at more than one degree.
    """
    if not b.has_scalar_parts:
        return prune(b)

    last = len(b.layers) - 1
    sink_set = {(last, t) for t in b.sinks}
    eps = defaultdict(list)
    lin = defaultdict(list)
    for e in b.edges:
        if e.label.constant != 0:
            eps[(e.layer, e.src)].append(((e.layer + 1, e.dst), e.label.constant))
        if e.label.coeffs:
            lin[(e.layer, e.src)].append(((e.layer + 1, e.dst), LinForm(e.label.coeffs)))

    closures = {}

    def closure(node):
        if node not in closures:
            out = {node: 1}
            for nxt, c in eps.get(node, ()):
                for far, w in closure(nxt).items():
                    out[far] = out.get(far, 0) + c * w
            closures[node] = {k: v for k, v in out.items() if v != 0}
        return closures[node]

    def step(state):
        """Linear moves out of a state, weighted by its closure."""
        out = {}
        for mid, w in closure(state).items():
            for target, lab in lin.get(mid, ()):
                scaled = lab.scale(w)
                out[target] = out[target] + scaled if target in out else scaled
        return {t: lab for t, lab in out.items() if not lab.is_zero}

    def final(state):
        return {node: w for node, w in closure(state).items() if node in sink_set}

    # forward sweep by degree
    frontier = sorted({(0, s) for s in b.sources})
    levels = [frontier]
    moves = {}
    sink_degrees = set()
    while frontier:
        d = len(levels) - 1
        nxt = set()
        for state in frontier:
            if final(state):
                sink_degrees.add(d)
            moves[(state, d)] = step(state)
            nxt.update(moves[(state, d)])
        frontier = sorted(nxt)
        if frontier:
            levels.append(frontier)

    if len(sink_degrees) > 1:
        raise NonHomogeneousError(f"sinks reached at degrees {sorted(sink_degrees)}")
    if not sink_degrees:
        logger.debug("normalize: ABP computes the zero polynomial")
        builder = ABPBuilder(b.nvars, b.field, b.commutative)
        builder.add_layer(len(b.sources))
        builder.add_layer(len(b.sinks))
        return builder.build(pruned=True)
    degree = sink_degrees.pop()
    if degree == 0:
        return prune(b)

    # backward sweep: states that still reach a sink at the right degree
    alive = {}
    alive[degree - 1] = set()
    for state in levels[degree - 1]:
        if any(final(t) for t in moves[(state, degree - 1)]):
            alive[degree - 1].add(state)
    for d in range(degree - 2, -1, -1):
        alive[d] = {s for s in levels[d] if any(t in alive[d + 1] for t in moves[(s, d)])}

    builder = ABPBuilder(b.nvars, b.field, b.commutative)
    index = []
    for d in range(degree):
        builder.add_layer()
        states = [(0, s) for s in b.sources] if d == 0 else sorted(alive[d])
        mapping = {}
        for state in states:
            mapping[state] = builder.add_node(d, b.labels.get(state))
        index.append(mapping)
    builder.add_layer()
    sink_index = {}
    for t in b.sinks:
        sink_index[(last, t)] = builder.add_node(degree, b.labels.get((last, t)))

    for d in range(degree):
        for state, u in index[d].items():
            if state not in alive[d]:
                continue
            for target, lab in moves[(state, d)].items():
                if d < degree - 1:
                    if target in index[d + 1]:
                        builder.add_edge(d, u, index[d + 1][target], lab)
                else:
                    for sink, w in final(target).items():
                        builder.add_edge(d, u, sink_index[sink], lab.scale(w))

    out = builder.build(
        sources=list(range(len(b.sources))),
        sinks=[sink_index[(last, t)] for t in b.sinks],
        pruned=True,
    )
    logger.debug("normalize: %d nodes -> %d nodes, degree %d", b.size, out.size, degree)
    return out
