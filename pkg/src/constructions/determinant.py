"""
Subset-lattice ABPs with insertion signs.

All constructions here walk the lattice of subsets S of [k] one element at
a time; a path is a permutation sigma listed as sigma(1), ..., sigma(k) and
the product of insertion signs sgn(S, j) = (-1)^{#{s in S : s > j}} along
it is sgn(sigma).

- construct_ncdet: edge (S, S+j) at layer i labeled sgn(S,j) * y_{i+1,j}.
- construct_weak_S_star: labels sgn(S,j) * sum_i alpha_i^j y_i; the word
  coefficients are Vandermonde determinants.
- construct_rdet / construct_rper_commutative: letters x_{j,i} z_i,
  Hadamard-filtered by S^nc over z, then z := 1.
- construct_rdet_nc: the same lattice over used columns, for the
  noncommutative rectangular determinant.
"""

from __future__ import annotations

import itertools
import logging

from src.abp.core import ABPBuilder, normalize, prune, subset_label
from src.abp.linform import LinForm
from src.abp.transforms import hadamard_abp, nc_lift
from src.algebra.scalars import RATIONAL, PrimeField
from src.errors import InvalidParameterError

logger = logging.getLogger(__name__)


# ──────────────────────────────────────────────
# SIGNS
# ──────────────────────────────────────────────

def sgn(mask, j):
    """Insertion sign for bitmask S and element j (0-based) not in S."""
    return -1 if bin(mask >> (j + 1)).count("1") % 2 else 1


def sign_of_insertion_chain(sigma):
    """
    prod_i sgn(T_{i-1}, sigma(i)) with T_i = {sigma(1..i)}.

    Only relative order matters, so 0- and 1-based permutations both work.
    """
    seen = []
    sign = 1
    for j in sigma:
        if sum(1 for s in seen if s > j) % 2:
            sign = -sign
        seen.append(j)
    return sign


def _lattice(k, nvars, field, label_for, commutative=False):
    """Subsets of [k] layer by layer; label_for(layer, mask, j) -> LinForm."""
    builder = ABPBuilder(nvars, field, commutative)
    builder.node(0, 0, subset_label(0))
    for layer in range(k):
        for combo in itertools.combinations(range(k), layer):
            mask = sum(1 << i for i in combo)
            src = builder.node(layer, mask, subset_label(mask))
            for j in range(k):
                if mask >> j & 1:
                    continue
                bigger = mask | (1 << j)
                dst = builder.node(layer + 1, bigger, subset_label(bigger))
                builder.add_edge(layer, src, dst, label_for(layer, mask, j))
    return builder.build(sources=[0], sinks=[0])


# ──────────────────────────────────────────────
# DETERMINANT AND WEAK EQUIVALENTS
# ──────────────────────────────────────────────

def construct_ncdet(k, field=RATIONAL):
    """k x k noncommutative determinant on exactly 2^k nodes."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    return _lattice(
        k, k * k, field,
        lambda layer, mask, j: LinForm.var(layer * k + j, field(sgn(mask, j))),
    )


def default_alphas(n, field=RATIONAL):
    """alpha_i = i for i = 1..n; over F_p this needs p > n."""
    if isinstance(field, PrimeField) and field.modulus <= n:
        raise InvalidParameterError(
            f"F_{field.modulus} has fewer than {n} distinct nonzero elements"
        )
    return [field(i) for i in range(1, n + 1)]


def construct_weak_S_star(n, k, alphas=None, field=RATIONAL):
    """
    2^k-node ABP with the same support as S*_{n,k}.

    The coefficient of y_{i1}...y_{ik} is det of the Vandermonde-type matrix
    whose q-th column is (a_{iq}, a_{iq}^2, ..., a_{iq}^k)^T.
    """
    if not 1 <= k <= n:
        raise InvalidParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    alphas = default_alphas(n, field) if alphas is None else [field(a) for a in alphas]
    if len(alphas) != n:
        raise InvalidParameterError(f"need {n} alphas, got {len(alphas)}")
    if len(set(alphas)) != n:
        raise InvalidParameterError("alphas must be pairwise distinct")
    powers = [[a ** (j + 1) for a in alphas] for j in range(k)]

    def label(layer, mask, j):
        s = field(sgn(mask, j))
        return LinForm({i: s * powers[j][i] for i in range(n)})

    return _lattice(k, n, field, label)


def construct_positive_weak(n, k, alphas=None, field=RATIONAL):
    """g o g for the weak ABP g: squares of the Vandermonde coefficients, C(k, l)^2 nodes on layer l."""
    g = construct_weak_S_star(n, k, alphas, field)
    return hadamard_abp(g, g)


# ──────────────────────────────────────────────
# ELEMENTARY SYMMETRIC
# ──────────────────────────────────────────────

def construct_Snk_classic(n, k, field=RATIONAL):
    """
    The (k+1) x (n+1) grid ABP for commutative S_{n,k}: node (i, l) means
    "l of the first i variables chosen"; skipping x_{i+1} is a scalar edge.
    """
    if not 0 <= k <= n:
        raise InvalidParameterError(f"need 0 <= k <= n, got k={k}, n={n}")
    builder = ABPBuilder(n, field, commutative=True)
    one = LinForm.const(field.one)
    builder.node(0, 0, "(0,0)")
    for i in range(n):
        for chosen in range(0, min(i, k) + 1):
            if not builder.has_node(i, chosen):
                continue
            src = builder.node(i, chosen)
            builder.add_edge(i, src, builder.node(i + 1, chosen, f"({i + 1},{chosen})"), one)
            if chosen < k:
                dst = builder.node(i + 1, chosen + 1, f"({i + 1},{chosen + 1})")
                builder.add_edge(i, src, dst, LinForm.var(i, field.one))
    sink = builder.node(n, k, f"({n},{k})")
    return builder.build(sources=[0], sinks=[sink])


def construct_Snc(n, k, field=RATIONAL, homogeneous=True):
    """sum_{i1 < ... < ik} z_{i1}...z_{ik}: the noncommutative lift of the grid."""
    lifted = nc_lift(construct_Snk_classic(n, k, field))
    return normalize(lifted) if homogeneous else lifted


# ──────────────────────────────────────────────
# RECTANGULAR DETERMINANT / PERMANENT
# ──────────────────────────────────────────────

def _filtered_rectangular(k, n, signed, field):
    if not 1 <= k <= n:
        raise InvalidParameterError(f"need 1 <= k <= n, got k={k}, n={n}")

    # letter j*n + i stands for x_{j,i} z_i; its z-shadow is i
    def label(layer, mask, j):
        s = field(sgn(mask, j) if signed else 1)
        return LinForm({j * n + i: s for i in range(n)})

    lattice = _lattice(k, k * n, field, label, commutative=True)
    snc = construct_Snc(n, k, field)
    product = hadamard_abp(lattice, snc, project=lambda v: v % n)
    out = prune(product)
    logger.info("rectangular %s (k=%d, n=%d): %d nodes", "rdet" if signed else "rper", k, n, out.size)
    return out


def construct_rdet(k, n, field=RATIONAL):
    """Commutative k x n rectangular determinant over x_{j,i}, O*(2^k) nodes."""
    return _filtered_rectangular(k, n, True, field)


def construct_rper_commutative(k, n, field=RATIONAL):
    """Commutative k x n rectangular permanent by the same filtered lattice."""
    return _filtered_rectangular(k, n, False, field)


def construct_rdet_nc(k, n, field=RATIONAL):
    """
    Noncommutative k x n rectangular determinant: rows in order, node = set
    of columns used so far, edge (T, T+c) at layer q labeled
    sgn(T, c) * y_{q+1, c}. All full sets collapse into one sink.
    """
    if not 1 <= k <= n:
        raise InvalidParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    builder = ABPBuilder(k * n, field)
    builder.node(0, 0, subset_label(0))
    for layer in range(k):
        last = layer == k - 1
        for combo in itertools.combinations(range(n), layer):
            mask = sum(1 << i for i in combo)
            src = builder.node(layer, mask, subset_label(mask))
            for c in range(n):
                if mask >> c & 1:
                    continue
                if last:
                    dst = builder.node(layer + 1, "sink", "sink")
                else:
                    bigger = mask | (1 << c)
                    dst = builder.node(layer + 1, bigger, subset_label(bigger))
                builder.add_edge(layer, src, dst, LinForm.var(layer * n + c, field(sgn(mask, c))))
    return builder.build(sources=[0], sinks=[0])
