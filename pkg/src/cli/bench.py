"""
Size/time table for the constructions (`bench`).

For every (n, k) on the grid, each construction is built `repeat` times and
the best wall time is kept. The table keeps node counts next to that time
so that the time-per-node column can be compared across the grid.
"""

from __future__ import annotations

import logging
import time

import pandas as pd
from tqdm import tqdm

from src.constructions.determinant import construct_ncdet, construct_rdet, construct_weak_S_star
from src.constructions.symmetric import construct_S_star, s_star_size_bound

logger = logging.getLogger(__name__)

# a time/node ratio this far above its construction's median is an outlier
RATIO_FACTOR = 10

BENCH_CONSTRUCTIONS = {
    "s-star": lambda n, k: construct_S_star(n, k, homogeneous=False),
    "ncdet": lambda n, k: construct_ncdet(k),
    "weak-s-star": lambda n, k: construct_weak_S_star(n, k),
    "rdet": lambda n, k: construct_rdet(k, n),
}


def _best_time(build, n, k, repeat):
    best = None
    b = None
    for _ in range(max(repeat, 1)):
        start = time.perf_counter()
        b = build(n, k)
        seconds = time.perf_counter() - start
        best = seconds if best is None else min(best, seconds)
    return b, best


def run_bench(max_n, max_k, names=None, quiet=False, repeat=3):
    """
    Returns:
        DataFrame with columns construction, n, k, nodes, edges, bound,
        seconds, us_per_node
    """
    names = list(BENCH_CONSTRUCTIONS) if not names else names
    grid = [
        (name, n, k)
        for name in names
        for n in range(2, max_n + 1)
        for k in range(1, min(n, max_k) + 1)
    ]
    rows = []
    for name, n, k in tqdm(grid, desc="bench", disable=quiet, leave=False):
        b, seconds = _best_time(BENCH_CONSTRUCTIONS[name], n, k, repeat)
        rows.append({
            "construction": name,
            "n": n,
            "k": k,
            "nodes": b.size,
            "edges": b.num_edges,
            "bound": s_star_size_bound(n, k) if name == "s-star" else None,
            "seconds": round(seconds, 6),
            "us_per_node": round(seconds * 1e6 / max(b.size, 1), 3),
        })
    df = pd.DataFrame(rows)
    logger.info("bench: %d rows", len(df))
    return df


def ratio_outliers(df, factor=RATIO_FACTOR):
    """Rows whose time per node exceeds factor x the median ratio of their construction."""
    if df.empty:
        return df
    median = df.groupby("construction")["us_per_node"].transform("median").clip(lower=1e-3)
    return df[df["us_per_node"] > factor * median]
