"""
ABPs for the symmetrized elementary symmetric polynomial S*_{n,k} and the
noncommutative rectangular permanent.

Pipeline:
1. B1(n, h): subset lattice, sink S computes m*_S (all orderings of S).
2. B2(n, h): B1 plus n scalar layers running the superset-sum (zeta)
   transform, sink S computes f_hat_S = sum_{A >= S, |A| = h} m*_A.
3. S*_{n,k} = sum_S (-1)^|S| f_hat_S * f_hat_S^R by inclusion-exclusion
   over the common part of the two halves; f_hat_S^R = f_hat_S because it
   is symmetrized, so the right half is a mirror image of B2.

Odd k splits as ceil(k/2) letters on the left and floor(k/2) on the right;
both halves keep their own B2 and sinks are paired by subset.
"""

from __future__ import annotations

import itertools
import logging
import math

from src.abp.core import ABPBuilder, subset_label
from src.abp.linform import LinForm
from src.abp.transforms import relabel, reverse_mirror
from src.algebra.scalars import RATIONAL
from src.errors import InvalidParameterError

logger = logging.getLogger(__name__)


def binomial_tail(n, r):
    """C(n, down r) = sum_{i <= r} C(n, i)."""
    return sum(math.comb(n, i) for i in range(r + 1))


def _masks(n, size):
    for combo in itertools.combinations(range(n), size):
        yield sum(1 << i for i in combo)


def _b1_into(builder, n, h):
    one = builder.field.one
    builder.node(0, 0, subset_label(0))
    for layer in range(1, h + 1):
        for mask in _masks(n, layer):
            dst = builder.node(layer, mask, subset_label(mask))
            for j in range(n):
                if mask >> j & 1:
                    src = builder.node(layer - 1, mask ^ (1 << j), subset_label(mask ^ (1 << j)))
                    builder.add_edge(layer - 1, src, dst, LinForm.var(j, one))


def build_B1(n, h, field=RATIONAL):
    """
    Multi-output ABP whose sink S (|S| = h) computes m*_S, using
    m*_S = sum_{j in S} m*_{S - j} * y_j.

    Args:
        n: number of variables
        h: half-degree, 0 <= h <= n

    Returns:
        ABP with h+1 layers, layer l holding the C(n, l) subsets of size l
    """
    if not 0 <= h <= n:
        raise InvalidParameterError(f"need 0 <= h <= n, got h={h}, n={n}")
    builder = ABPBuilder(n, field)
    _b1_into(builder, n, h)
    return builder.build(sources=[0])


def build_B2(n, h, field=RATIONAL):
    """
    B1 followed by n identity-wired layers. Going from index i to i-1,
    f_hat_{i-1,S} = f_hat_{i,S} + f_hat_{i,S+{i}} when i is not in S, else
    f_hat_{i,S}. Sinks are all subsets of size <= h.
    """
    if not 0 <= h <= n:
        raise InvalidParameterError(f"need 0 <= h <= n, got h={h}, n={n}")
    builder = ABPBuilder(n, field)
    _b1_into(builder, n, h)
    one = LinForm.const(field.one)
    for step in range(n):
        elem = n - 1 - step
        prev = h + step
        for mask, src in sorted(builder.keys(prev).items()):
            builder.add_edge(prev, src, builder.node(prev + 1, mask, subset_label(mask)), one)
            if mask >> elem & 1:
                smaller = mask ^ (1 << elem)
                builder.add_edge(prev, src, builder.node(prev + 1, smaller, subset_label(smaller)), one)
    out = builder.build(sources=[0])
    logger.debug("build_B2(n=%d, h=%d): %s", n, h, out)
    return out


def sink_subsets(b):
    """popcount of every sink, read back from its '{..}' label."""
    last = len(b.layers) - 1
    out = {}
    for t in b.sinks:
        lab = b.labels[(last, t)].strip("{}")
        out[t] = len([x for x in lab.split(",") if x])
    return out


def construct_S_star(n, k, field=RATIONAL, homogeneous=True):
    """
    ABP for S*_{n,k} of size O(k * C(n, down ceil(k/2))).

    Args:
        homogeneous: True returns the normalized ABP (one letter per edge
            layer, usable by hadamard_abp); False returns the raw glued object
            with its scalar zeta/link layers, which is what size bounds count.
    """
    if not 1 <= k <= n:
        raise InvalidParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    left_h = (k + 1) // 2
    right_h = k // 2
    left = build_B2(n, left_h, field)
    right = left if right_h == left_h else build_B2(n, right_h, field)
    links = {
        t: field((-1) ** size)
        for t, size in sink_subsets(left).items()
        if size <= right_h
    }
    out = reverse_mirror(left, links, mirror=None if right is left else right,
                         homogeneous=homogeneous)
    logger.info("construct_S_star(n=%d, k=%d): %d nodes", n, k, out.size)
    return out


def s_star_size_bound(n, k):
    """2 * (n + ceil(k/2) + 2) * C(n, down ceil(k/2))."""
    h = (k + 1) // 2
    return 2 * (n + h + 2) * binomial_tail(n, h)


def construct_rper_nc(k, n, field=RATIONAL):
    """
    Noncommutative k x n rectangular permanent: the S*_{n,k} ABP with y_i on
    edge layer j renamed to y_{j,i}.
    """
    star = construct_S_star(n, k, field)
    return relabel(star, lambda layer, v: layer * n + v, nvars=k * n)
