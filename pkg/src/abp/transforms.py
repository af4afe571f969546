"""
Structural ABP transformations: mirror/reverse, Hadamard product,
noncommutative lift, variable relabeling and layer splitting.
"""

from __future__ import annotations

import logging
from collections import defaultdict

import numpy as np

from src.abp.core import ABP, ABPBuilder, Edge, normalize
from src.abp.linform import LinForm
from src.algebra.scalars import RATIONAL
from src.errors import DegreeMismatchError, FieldMismatchError, InvalidParameterError, NonHomogeneousError

logger = logging.getLogger(__name__)

# product ABPs larger than this are built without node labels
LABEL_LIMIT = 20000


# ──────────────────────────────────────────────
# MIRROR
# ──────────────────────────────────────────────

def reverse_mirror(b, link_scalars, mirror=None, homogeneous=True):
    """
    Glue a multi-output ABP to the mirror image of itself (or of `mirror`).

    Sink t of `b` is linked to source t of the mirrored copy by a scalar edge
    with weight link_scalars[t]; the result computes
    sum_t f_t * link_t * g_t^R, where g_t is the mirror ABP's polynomial at
    the sink paired with t. With mirror=None, g_t = f_t.

    Args:
        b: multi-output ABP (sinks in its last layer)
        link_scalars: mapping sink node of b -> scalar (missing or 0 -> no link)
        mirror: optional second multi-output ABP; sinks are paired by node label
        homogeneous: fold the scalar link layer into the first mirror edges

    Returns:
        single-output ABP (one sink: the mirrored source)
    """
    m = b if mirror is None else mirror
    if m.field != b.field:
        raise FieldMismatchError("mirror ABP uses a different field")
    if len(m.sources) != 1:
        raise InvalidParameterError("the mirrored ABP must have exactly one source")
    last_b = len(b.layers) - 1
    last_m = len(m.layers) - 1

    if mirror is None:
        partner = {t: t for t in b.sinks}
    else:
        by_label = {m.labels.get((last_m, t)): t for t in m.sinks}
        partner = {}
        for t in b.sinks:
            lab = b.labels.get((last_b, t))
            if lab is not None and lab in by_label:
                partner[t] = by_label[lab]

    layers = list(b.layers) + list(reversed(m.layers))
    base = last_b + 1

    def mirrored(layer):
        return base + (last_m - layer)

    edges = list(b.edges)
    for t in b.sinks:
        c = link_scalars.get(t, 0)
        if t in partner and c != 0:
            edges.append(Edge(last_b, t, partner[t], LinForm.const(b.field(c))))
    for e in m.edges:
        edges.append(Edge(mirrored(e.layer + 1), e.dst, e.src, e.label))

    labels = dict(b.labels)
    for (layer, node), lab in m.labels.items():
        labels[(mirrored(layer), node)] = f"R{lab}"

    raw = ABP(layers, edges, b.sources, m.sources, b.nvars, b.field, labels, b.commutative)
    logger.debug("reverse_mirror: %d nodes over %d layers", raw.size, len(raw.layers))
    return normalize(raw) if homogeneous else raw


# ──────────────────────────────────────────────
# HADAMARD PRODUCT
# ──────────────────────────────────────────────

def _require_homogeneous(b, name):
    if b.has_scalar_parts:
        raise NonHomogeneousError(f"{name} has constant edge labels; normalize() it first")


def hadamard_abp(b1, b2, project=None):
    """
    Product construction for the Hadamard product of two homogeneous
    noncommutative ABPs of the same degree.

    Nodes of layer l are pairs (u, u'); the edge (u,u') -> (v,v') carries
    sum_i [y_i]L_uv * [y_i]L_u'v' * y_i.

    Args:
        b1, b2: homogeneous ABPs with the same number of layers
        project: optional map from b1's letters to b2's alphabet. The term
            for letter v of b1 is weighted by b2's coefficient of project(v)
            and keeps letter v. With project=None both share one alphabet.

    Returns:
        ABP whose layer l has size(b1, l) * size(b2, l) nodes
    """
    _require_homogeneous(b1, "first ABP")
    _require_homogeneous(b2, "second ABP")
    if b1.num_edge_layers != b2.num_edge_layers:
        raise DegreeMismatchError(
            f"degrees differ: {b1.num_edge_layers} vs {b2.num_edge_layers}"
        )
    if project is None and b1.nvars != b2.nvars:
        raise DegreeMismatchError(f"alphabets differ: {b1.nvars} vs {b2.nvars} variables")
    if b1.field != b2.field:
        raise FieldMismatchError(f"{b1.field.name} vs {b2.field.name}")

    layers = [x * y for x, y in zip(b1.layers, b2.layers)]
    edges = []
    for layer in range(b1.num_edge_layers):
        w_src = b2.layers[layer]
        w_dst = b2.layers[layer + 1]
        by_var = defaultdict(list)
        for e in b2.edges_by_layer[layer]:
            for v, c in e.label.coeffs.items():
                by_var[v].append((e.src, e.dst, c))
        acc = defaultdict(dict)
        for e in b1.edges_by_layer[layer]:
            for v, c in e.label.coeffs.items():
                for s2, d2, c2 in by_var.get(project(v) if project else v, ()):
                    key = (e.src * w_src + s2, e.dst * w_dst + d2)
                    terms = acc[key]
                    terms[v] = terms.get(v, 0) + c * c2
        for (src, dst), terms in acc.items():
            lab = LinForm(terms)
            if not lab.is_zero:
                edges.append(Edge(layer, src, dst, lab))

    sources = [s1 * b2.layers[0] + s2 for s1 in b1.sources for s2 in b2.sources]
    last = len(layers) - 1
    sinks = [t1 * b2.layers[last] + t2 for t1 in b1.sinks for t2 in b2.sinks]

    labels = {}
    if sum(layers) <= LABEL_LIMIT and b1.labels and b2.labels:
        for layer in range(len(layers)):
            for u in range(b1.layers[layer]):
                for u2 in range(b2.layers[layer]):
                    l1 = b1.labels.get((layer, u))
                    l2 = b2.labels.get((layer, u2))
                    if l1 is not None and l2 is not None:
                        labels[(layer, u * b2.layers[layer] + u2)] = f"{l1}|{l2}"

    out = ABP(layers, edges, sources, sinks, b1.nvars, b1.field, labels, b1.commutative)
    logger.debug("hadamard_abp: %s x %s -> %s", b1, b2, out)
    return out


# ──────────────────────────────────────────────
# RELABELING
# ──────────────────────────────────────────────

def nc_lift(b):
    """Same graph read over noncommuting variables, layer order = product order."""
    return b.with_flags(commutative=False)


def relabel(b, fn, nvars=None):
    """
    Position-aware variable renaming on every edge label.

    Args:
        fn: fn(edge_layer, var) -> new var id, or None to substitute 1
        nvars: size of the new alphabet (default: unchanged)
    """
    edges = []
    for e in b.edges:
        lab = e.label.relabel(lambda v, layer=e.layer: fn(layer, v))
        if not lab.is_zero:
            edges.append(Edge(e.layer, e.src, e.dst, lab))
    return ABP(b.layers, edges, b.sources, b.sinks, b.nvars if nvars is None else nvars,
               b.field, b.labels, b.commutative)


def split_layers(b, first, second, nvars):
    """
    Replace each term c*y_j on edge layer i by two consecutive edges
    c*first(i, j) then second(i, j), through one middle node per (target, j).
    Degree doubles.
    """
    _require_homogeneous(b, "split_layers input")
    builder = ABPBuilder(nvars, b.field, b.commutative)
    for layer, count in enumerate(b.layers):
        builder.add_layer(count)
        if layer < len(b.layers) - 1:
            builder.add_layer()
    for (layer, node), lab in b.labels.items():
        builder.labels[(2 * layer, node)] = lab
    seconds = set()
    for e in b.edges:
        for j, c in e.label.coeffs.items():
            mid = builder.node(2 * e.layer + 1, (e.dst, j), label=f"{e.dst}:{j + 1}")
            builder.add_edge(2 * e.layer, e.src, mid, LinForm.var(first(e.layer, j), c))
            if (e.layer, e.dst, j) not in seconds:
                seconds.add((e.layer, e.dst, j))
                builder.add_edge(2 * e.layer + 1, mid, e.dst, LinForm.var(second(e.layer, j)))
    return builder.build(sources=list(b.sources), sinks=list(b.sinks))


# ──────────────────────────────────────────────
# RANDOM INSTANCES
# ──────────────────────────────────────────────

def random_abp(nvars, degree, max_width=3, coef_range=(-2, 2), density=0.6,
               seed=None, field=RATIONAL):
    """
    Random homogeneous single-source single-sink ABP for property tests.

    Args:
        nvars: alphabet size
        degree: number of edge layers
        max_width: inner layers get 1..max_width nodes
        coef_range: inclusive range for coefficients (0 drawn means 'absent')
        density: probability that a possible edge exists
        seed: numpy seed or Generator
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    lo, hi = coef_range
    widths = [1] + [int(rng.integers(1, max_width + 1)) for _ in range(degree - 1)] + [1]
    builder = ABPBuilder(nvars, field)
    for w in widths:
        builder.add_layer(w)
    for layer in range(degree):
        for u in range(widths[layer]):
            for v in range(widths[layer + 1]):
                if rng.random() > density:
                    continue
                terms = {}
                for var in range(nvars):
                    c = int(rng.integers(lo, hi + 1))
                    if c != 0:
                        terms[var] = field(c)
                if terms:
                    builder.add_edge(layer, u, v, LinForm(terms))
    return builder.build(sources=[0], sinks=[0])
