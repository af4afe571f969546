"""
Counting simple directed k-paths with the ABP toolkit.

Three routes, all returning the number of k-vertex simple paths counted as
vertex sequences:

- direct:  (S*_{n,k} o C_G)(1, ..., 1)
- rdet:    (rdet_{2k x 2n} o F o C'_G)(1, ..., 1) / (-1)^{k(k-1)/2}
- matrix:  the same value, with the rdet ABP evaluated on the transition
           matrices of F o C'_G instead of forming the Hadamard product

The y variables live on a 2k x 2n grid, id (i-1)*2n + (j-1) for y_{i,j}.
F keeps the "doubled" injections f_g: f(2i-1) = g(i), f(2i) = n + g(i).
C'_G is C_G with every z_j edge on layer i split into y_{2i-1,j} y_{2i,n+j}.
"""

from __future__ import annotations

import logging
from functools import lru_cache

from src import config
from src.abp.core import ABPBuilder, eval_scalar, hadamard_eval_via_matrices, normalize, prune
from src.abp.linform import LinForm
from src.abp.transforms import hadamard_abp, relabel, split_layers
from src.algebra.scalars import RATIONAL, PrimeField
from src.applications.graphs import graph_poly_abp
from src.constructions.determinant import construct_rdet_nc
from src.constructions.symmetric import construct_S_star
from src.errors import GuardExceeded, InvalidParameterError, VerificationFailed
from src.poly.oracle import injections

logger = logging.getLogger(__name__)


def global_sign(k):
    """(-1)^{k(k-1)/2}, the sign every doubled injection carries."""
    return -1 if (k * (k - 1) // 2) % 2 else 1


def grid_var(i, j, n):
    """y_{i,j} on the 2k x 2n grid, 1-based i and j."""
    return (i - 1) * 2 * n + (j - 1)


def doubled_injections(k, n):
    """The set S: f_g as a 0-based tuple (g0, n+g0, g1, n+g1, ...) per injection g."""
    out = []
    for g in injections(k, n):
        f = []
        for gi in g:
            f.extend((gi, n + gi))
        out.append(tuple(f))
    return out


def filter_abp(k, n, field=RATIONAL):
    """
    2k+1 layers: one node q at even levels, n nodes p_j at odd levels.
    q_{2i} -> p_{2i+1,j} reads y_{2i+1,j}; p_{2i+1,j} -> q_{2i+2} reads
    y_{2i+2,n+j}. Among injective words it keeps exactly the f_g.
    """
    if not 1 <= k <= n:
        raise InvalidParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    one = field.one
    builder = ABPBuilder(4 * k * n, field)
    for level in range(2 * k + 1):
        builder.add_layer()
        if level % 2 == 0:
            builder.add_node(level, f"q{level}")
        else:
            for j in range(n):
                builder.add_node(level, f"p{level},{j + 1}")
    for i in range(k):
        for j in range(n):
            builder.add_edge(2 * i, 0, j, LinForm.var(grid_var(2 * i + 1, j + 1, n), one))
            builder.add_edge(2 * i + 1, j, 0, LinForm.var(grid_var(2 * i + 2, n + j + 1, n), one))
    return builder.build(sources=[0], sinks=[0])


def modified_graph_abp(G, k, field=RATIONAL):
    """C'_G: split every z_j edge on (0-based) layer i into y_{2i+1,j} then y_{2i+2,n+j}."""
    n = G.n
    return split_layers(
        graph_poly_abp(G, k, field),
        first=lambda layer, j: grid_var(2 * layer + 1, j + 1, n),
        second=lambda layer, j: grid_var(2 * layer + 2, n + j + 1, n),
        nvars=4 * k * n,
    )


def tau_substitute(b, k, n):
    """
    y_{i,j} -> z_j on odd rows, -> 1 on even rows, then normalize.

    Odd-row letters must use a column j <= n; anything else has no z image.
    """
    def tau(layer, v):
        row, col = divmod(v, 2 * n)
        if row % 2 == 1:
            return None
        if col >= n:
            raise InvalidParameterError(f"y_{{{row + 1},{col + 1}}} has no image under tau")
        return col

    return normalize(relabel(b, tau, nvars=n))


@lru_cache(maxsize=32)
def _rdet_doubled(k, n, field=RATIONAL):
    return construct_rdet_nc(2 * k, 2 * n, field)


def rdet_filter(k, n, field=RATIONAL):
    """rdet_{2k x 2n} o F."""
    return prune(hadamard_abp(_rdet_doubled(k, n, field), filter_abp(k, n, field)))


def _ones(b):
    return {v: b.field.one for v in range(b.nvars)}


def _as_count(value, field, sign=1):
    """
    Apply the sign inside the field, then read the count back: an exact
    integer over Q, the residue in 0..p-1 over F_p.
    """
    value = field(value) * field(sign)
    if isinstance(field, PrimeField):
        return value.value
    if value.denominator != 1:
        raise VerificationFailed(f"path count {value} is not an integer")
    return int(value)


# ──────────────────────────────────────────────
# COUNTS
# ──────────────────────────────────────────────

def count_k_paths_direct(G, k, field=RATIONAL):
    """(S*_{n,k} o C_G) at all ones."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    if k > G.n:
        return 0
    product = hadamard_abp(construct_S_star(G.n, k, field), graph_poly_abp(G, k, field))
    value = eval_scalar(product, _ones(product))
    logger.info("direct k-path count (n=%d, k=%d): %s", G.n, k, value)
    return _as_count(value, field)


def filtered_graph_abp(G, k, field=RATIONAL):
    """prune(F o C'_G), the doubled walk ABP."""
    return prune(hadamard_abp(filter_abp(k, G.n, field), modified_graph_abp(G, k, field)))


def count_k_paths_via_rdet(G, k, field=RATIONAL):
    """(rdet o F o C'_G) at all ones, divided by the global sign."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    if k > G.n:
        return 0
    walks = filtered_graph_abp(G, k, field)
    product = hadamard_abp(_rdet_doubled(k, G.n, field), walks)
    value = eval_scalar(product, _ones(product))
    logger.info("rdet k-path count (n=%d, k=%d): %s, %d product nodes", G.n, k, value, product.size)
    return _as_count(value, field, global_sign(k))


def count_k_paths_via_transition_matrices(G, k, field=RATIONAL):
    """
    rdet's ABP evaluated on a_i * M_i, M_i the transition matrices of
    normalize(F o C'_G); entry (source, sink) divided by the global sign.
    Each rdet edge costs a dense s x s product, so this is for small graphs.
    """
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    if k > G.n:
        return 0
    walks = normalize(filtered_graph_abp(G, k, field))
    rdet = _rdet_doubled(k, G.n, field)
    value = hadamard_eval_via_matrices(rdet, walks, _ones(rdet))
    return _as_count(value, field, global_sign(k))


def enumerate_k_paths(G, k, guard=None):
    """Exhaustive DFS count of simple k-vertex paths (ordered sequences)."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    guard = config.resolve_guard(guard, config.PATH_GUARD)
    adj = G.adjacency()
    steps = 0
    count = 0
    stack = [(v, 1, 1 << v) for v in range(G.n)]
    while stack:
        v, length, seen = stack.pop()
        steps += 1
        if steps > guard:
            raise GuardExceeded("enumerate_k_paths", steps, guard)
        if length == k:
            count += 1
            continue
        for w in adj[v]:
            if not seen >> w & 1:
                stack.append((w, length + 1, seen | (1 << w)))
    return count


COUNTERS = {
    "direct": count_k_paths_direct,
    "rdet": count_k_paths_via_rdet,
    "matrix": count_k_paths_via_transition_matrices,
}


def count_k_paths(G, k, method="direct", field=RATIONAL):
    """
    Exact count over Q. With a prime field the same route is also run over
    F_p and must agree with the exact count mod p.
    """
    try:
        counter = COUNTERS[method]
    except KeyError:
        raise InvalidParameterError(f"unknown method {method!r} (use {', '.join(COUNTERS)})") from None
    exact = counter(G, k, RATIONAL)
    if isinstance(field, PrimeField):
        residue = counter(G, k, field)
        if residue != exact % field.modulus:
            raise VerificationFailed(
                f"{method} count over {field.name} is {residue}, exact count {exact} is {exact % field.modulus} mod {field.modulus}"
            )
    return exact
