"""
Oracle suites behind `verify`.

Every suite is a generator of (case name, check) pairs; a check returns
(passed, detail). Suites compare constructions against the brute-force
oracles in src.poly.oracle, so a failure always names the exact (n, k).
"""

from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import dataclass

import numpy as np
from sympy import nextprime
from tqdm import tqdm

from src.abp.core import expand, eval_algebra, eval_scalar, hadamard_eval_via_matrices
from src.abp.transforms import hadamard_abp, random_abp
from src.algebra.algebras import matrix_algebra
from src.algebra.rectangular import (
    random_algebra_matrix,
    random_matrix,
    rdet_dp,
    rper_algebra,
    rper_algebra_bruteforce,
    rper_dp,
)
from src.algebra.scalars import RATIONAL, PrimeField
from src.applications.graphs import complete_digraph, cycle_digraph, path_digraph, random_digraph
from src.applications.paths import count_k_paths_direct, count_k_paths_via_rdet, enumerate_k_paths
from src.constructions.determinant import (
    construct_ncdet,
    construct_rdet,
    construct_rdet_nc,
    construct_weak_S_star,
    default_alphas,
    sign_of_insertion_chain,
)
from src.constructions.symmetric import construct_S_star, s_star_size_bound
from src.poly.ncpoly import hadamard, is_multilinear, substitute
from src.poly.oracle import brute_det, brute_rdet, brute_S_star, permutation_parity, vandermonde_det

logger = logging.getLogger(__name__)


@dataclass
class CaseResult:
    suite: str
    case: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


# ──────────────────────────────────────────────
# SUITES
# ──────────────────────────────────────────────

def suite_s_star(max_n, max_k, rng):
    for n in range(2, max_n + 1):
        for k in range(1, min(n, max_k) + 1):
            def check(n=n, k=k):
                raw = construct_S_star(n, k, homogeneous=False)
                bound = s_star_size_bound(n, k)
                if raw.size > bound:
                    return False, f"{raw.size} nodes > bound {bound}"
                if expand(construct_S_star(n, k)) != brute_S_star(n, k):
                    return False, "expansion differs from brute_S_star"
                return True, f"{raw.size} nodes (bound {bound})"
            yield f"n={n} k={k}", check


def suite_ncdet(max_n, max_k, rng):
    for k in range(1, min(max_k, 5) + 1):
        def check(k=k):
            b = construct_ncdet(k)
            if b.size != 2 ** k:
                return False, f"{b.size} nodes, expected {2 ** k}"
            if expand(b) != brute_det(k):
                return False, "expansion differs from brute_det"
            return True, f"{b.size} nodes"
        yield f"k={k}", check


def suite_sign(max_n, max_k, rng):
    for k in range(1, 8):
        def check(k=k):
            for sigma in itertools.permutations(range(k)):
                if sign_of_insertion_chain(sigma) != permutation_parity(sigma):
                    return False, f"sigma={sigma}"
            return True, f"{math.factorial(k)} permutations"
        yield f"k={k}", check


def suite_weak(max_n, max_k, rng):
    for n in range(1, max_n + 1):
        for k in range(1, min(n, max_k, 3) + 1):
            for field in (RATIONAL, PrimeField(int(nextprime(n)))):
                def check(n=n, k=k, field=field):
                    alphas = default_alphas(n, field)
                    poly = expand(construct_weak_S_star(n, k, alphas, field))
                    for word in itertools.product(range(n), repeat=k):
                        c = poly.coefficient(word)
                        if is_multilinear(word) != (c != 0):
                            return False, f"support wrong at {word}"
                        if c != 0 and c != vandermonde_det([alphas[i] for i in word]):
                            return False, f"coefficient of {word} is not the Vandermonde value"
                    return True, f"{n ** k} words"
                yield f"n={n} k={k} {field.name}", check


def suite_rdet(max_n, max_k, rng, trials=20):
    for k in range(1, max_k + 1):
        for n in range(k, max_n + 1):
            def check(k=k, n=n):
                abp = construct_rdet(k, n)
                if expand(abp) != brute_rdet(k, n):
                    return False, "expansion differs from brute_rdet"
                oracle = brute_rdet(k, n)
                for _ in range(trials):
                    A = random_matrix(k, n, rng)
                    point = {j * n + i: A[j][i] for j in range(k) for i in range(n)}
                    want = substitute(oracle, point)
                    if eval_scalar(abp, point) != want or rdet_dp(A) != want:
                        return False, f"disagreement on {A}"
                return True, f"{abp.size} nodes"
            yield f"k={k} n={n}", check


def suite_hadamard(max_n, max_k, rng, pairs=20):
    for t in range(pairs):
        def check(t=t):
            nvars = int(rng.integers(1, 4))
            degree = int(rng.integers(1, 5))
            f = random_abp(nvars, degree, seed=rng)
            g = random_abp(nvars, degree, seed=rng)
            h = hadamard_abp(f, g)
            if list(h.layers) != [a * b for a, b in zip(f.layers, g.layers)]:
                return False, "layer sizes are not products"
            if expand(h) != hadamard(expand(f), expand(g)):
                return False, "expansion differs"
            return True, f"degree {degree}, {h.size} nodes"
        yield f"pair {t + 1}", check


def suite_matrix_eval(max_n, max_k, rng, triples=10):
    for t in range(triples):
        def check(t=t):
            nvars = int(rng.integers(1, 4))
            degree = int(rng.integers(1, 4))
            f = random_abp(nvars, degree, seed=rng)
            g = random_abp(nvars, degree, seed=rng)
            point = {v: RATIONAL(int(rng.integers(-3, 4))) for v in range(nvars)}
            want = substitute(hadamard(expand(f), expand(g)), point)
            got = hadamard_eval_via_matrices(f, g, point)
            return got == want, f"{got} vs {want}"
        yield f"triple {t + 1}", check


def suite_paths(max_n, max_k, rng, graphs=8):
    corpus = []
    for n in range(3, max_n + 1):
        corpus += [(f"path{n}", path_digraph(n)), (f"cycle{n}", cycle_digraph(n))]
        if n <= 5:
            corpus.append((f"complete{n}", complete_digraph(n)))
    for t in range(graphs):
        n = int(rng.integers(3, max_n + 1))
        corpus.append((f"random{t + 1}", random_digraph(n, 0.3, seed=int(rng.integers(0, 2 ** 31)))))
    for name, G in corpus:
        for k in range(1, min(G.n, max_k) + 1):
            def check(G=G, k=k):
                want = enumerate_k_paths(G, k)
                direct = count_k_paths_direct(G, k)
                via_rdet = count_k_paths_via_rdet(G, k)
                ok = direct == via_rdet == want
                return ok, f"dfs={want} direct={direct} rdet={via_rdet}"
            yield f"{name} k={k}", check


def suite_algebra(max_n, max_k, rng):
    for r in (1, 2):
        algebra = matrix_algebra(r)
        for k in range(1, min(max_k, 3) + 1):
            for n in range(k, min(max_n, 4) + 1):
                def check(algebra=algebra, k=k, n=n):
                    A = random_algebra_matrix(algebra, k, n, rng)
                    for signed in (False, True):
                        if rper_algebra(A, signed) != rper_algebra_bruteforce(A, signed):
                            return False, f"signed={signed}"
                    if rper_algebra(A, True) != eval_algebra(
                        construct_rdet_nc(k, n), {i * n + j: A[i][j] for i in range(k) for j in range(n)}
                    ):
                        return False, "rdet ABP route differs"
                    return True, ""
                yield f"r={algebra.dim} k={k} n={n}", check
    for k in range(1, min(max_k, 4) + 1):
        for n in range(k, max_n + 1):
            def check(k=k, n=n):
                A = random_matrix(k, n, rng)
                want = sum(
                    (math.prod(A[i][f[i]] for i in range(k)) for f in itertools.permutations(range(n), k)),
                    RATIONAL.zero,
                )
                return rper_dp(A) == want, "rper_dp vs injection sum"
            yield f"rper_dp k={k} n={n}", check


SUITES = {
    "s-star": suite_s_star,
    "ncdet": suite_ncdet,
    "sign": suite_sign,
    "weak": suite_weak,
    "rdet": suite_rdet,
    "hadamard": suite_hadamard,
    "matrix-eval": suite_matrix_eval,
    "paths": suite_paths,
    "algebra": suite_algebra,
}


def run_suites(names, max_n, max_k, seed=None, quiet=False):
    """
    Run the named suites ("all" for every one) and return CaseResults.
    Checks that raise are reported as failures with the exception text.
    """
    rng = np.random.default_rng(seed)
    if "all" in names:
        names = list(SUITES)
    cases = []
    for name in names:
        cases += [(name, label, check) for label, check in SUITES[name](max_n, max_k, rng)]
    results = []
    for suite, label, check in tqdm(cases, desc="verify", disable=quiet, leave=False):
        start = time.perf_counter()
        try:
            passed, detail = check()
        except Exception as exc:
            logger.exception("%s %s raised", suite, label)
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CaseResult(suite, label, passed, detail, time.perf_counter() - start))
    return results
