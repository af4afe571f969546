"""
Brute-force reference polynomials.

Each function opens its polynomial family up completely from the
definition (permutations, injections, subsets). They are slow on purpose:
every ABP construction is checked coefficient-for-coefficient against
these, so they must not share any cleverness with the constructions.

Size guards raise GuardExceeded instead of truncating.
"""

from __future__ import annotations

import itertools
import math

from src import config
from src.algebra.scalars import RATIONAL
from src.errors import GuardExceeded, InvalidParameterError
from src.poly.ncpoly import NCPoly


def _guard(what, size, guard):
    guard = config.resolve_guard(guard, config.ORACLE_GUARD)
    if size > guard:
        raise GuardExceeded(what, size, guard)


def _check_kn(k, n):
    if k < 1 or n < 1 or k > n:
        raise InvalidParameterError(f"need 1 <= k <= n, got k={k}, n={n}")


# ──────────────────────────────────────────────
# PERMUTATION HELPERS
# ──────────────────────────────────────────────

def inversions(seq):
    """Number of pairs p < q with seq[p] > seq[q]."""
    return sum(1 for p, q in itertools.combinations(range(len(seq)), 2) if seq[p] > seq[q])


def permutation_parity(seq):
    """+1 or -1 from the inversion count (works for injections too)."""
    return -1 if inversions(seq) % 2 else 1


injection_sign = permutation_parity


def injections(k, n):
    """All injections [k] -> [n] as 0-based tuples (f(0), ..., f(k-1))."""
    return itertools.permutations(range(n), k)


def falling_factorial(n, k):
    return math.perm(n, k)


# ──────────────────────────────────────────────
# POLYNOMIAL FAMILIES
# ──────────────────────────────────────────────

def brute_S_star(n, k, field=RATIONAL, guard=None):
    """
    S*_{n,k}: every multilinear degree-k word over y_1..y_n, coefficient 1.
    """
    _check_kn(k, n)
    _guard("brute_S_star", math.comb(n, k) * math.factorial(k), guard)
    one = field.one
    return NCPoly({word: one for word in itertools.permutations(range(n), k)}, n, False, field)


def brute_snc(n, k, field=RATIONAL, guard=None):
    """S^nc_{n,k}: the increasing words z_{i1} ... z_{ik}, i1 < ... < ik."""
    _check_kn(k, n)
    _guard("brute_snc", math.comb(n, k), guard)
    one = field.one
    return NCPoly({word: one for word in itertools.combinations(range(n), k)}, n, False, field)


def brute_rper(k, n, commutative=False, field=RATIONAL, guard=None):
    """
    Rectangular permanent: sum over injections f of y_{1,f(1)} ... y_{k,f(k)}.
    Row-major ids make every word already sorted, so the commutative and
    noncommutative versions share words and differ only in the flag.
    """
    _check_kn(k, n)
    _guard("brute_rper", falling_factorial(n, k), guard)
    one = field.one
    terms = {tuple(i * n + f[i] for i in range(k)): one for f in injections(k, n)}
    return NCPoly(terms, k * n, commutative, field)


def brute_det(k, field=RATIONAL, guard=None):
    """Noncommutative k x k determinant, rows read left to right."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    _guard("brute_det", math.factorial(k), guard)
    terms = {
        tuple(i * k + sigma[i] for i in range(k)): field(permutation_parity(sigma))
        for sigma in itertools.permutations(range(k))
    }
    return NCPoly(terms, k * k, False, field)


def brute_rdet(k, n, commutative=True, field=RATIONAL, guard=None):
    """
    Rectangular (Cullis) determinant: sum over injections f of
    sgn(f) * y_{1,f(1)} ... y_{k,f(k)}, where sgn(f) is the parity of the
    sequence f(1..k). Equals the sum of the k x k minors over column sets.
    """
    _check_kn(k, n)
    _guard("brute_rdet", falling_factorial(n, k), guard)
    terms = {
        tuple(i * n + f[i] for i in range(k)): field(injection_sign(f))
        for f in injections(k, n)
    }
    return NCPoly(terms, k * n, commutative, field)


def brute_rdet_by_minors(k, n, field=RATIONAL, guard=None):
    """Same polynomial assembled as sum over column subsets of per-subset determinants."""
    _check_kn(k, n)
    _guard("brute_rdet_by_minors", math.comb(n, k) * math.factorial(k), guard)
    total = NCPoly.zero(k * n, True, field)
    for cols in itertools.combinations(range(n), k):
        minor = brute_det(k, field)
        # relabel the k x k alphabet onto the chosen columns of the k x n one
        terms = {
            tuple(sorted((v // k) * n + cols[v % k] for v in word)): c
            for word, c in minor.terms.items()
        }
        total = total + NCPoly(terms, k * n, True, field)
    return total


# ──────────────────────────────────────────────
# VANDERMONDE
# ──────────────────────────────────────────────

def vandermonde_det(values):
    """
    det of the k x k matrix whose q-th column is (a_q, a_q^2, ..., a_q^k)^T,
    in closed form: prod a_q * prod_{p<q} (a_q - a_p).
    """
    out = 1
    for a in values:
        out = out * a
    for p, q in itertools.combinations(range(len(values)), 2):
        out = out * (values[q] - values[p])
    return out


def vandermonde_det_leibniz(values):
    """Same determinant by the Leibniz formula (independent cross-check)."""
    k = len(values)
    total = 0
    for sigma in itertools.permutations(range(k)):
        term = permutation_parity(sigma)
        for q in range(k):
            term = term * values[q] ** (sigma[q] + 1)
        total = total + term
    return total
