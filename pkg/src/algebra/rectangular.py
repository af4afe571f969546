"""
Direct evaluators for the rectangular permanent and determinant.

rper(A) = sum over injections f: [k] -> [n] of A[0][f(0)] ... A[k-1][f(k-1)]
rdet(A) = the same sum weighted by the parity of the sequence f(0..k-1)

rper_dp / rdet_dp sweep the columns once, keeping one value per set of
rows already placed (2^k states). rper_algebra lifts them to entries in a
finite-dimensional algebra: every entry is split over the basis, and for
each tuple t in [r]^k the scalar matrix A^(t)[i][j] = coordinate t_i of
A[i][j] is handled by the scalar DP, then multiplied by e_{t_1} ... e_{t_k}.
"""

from __future__ import annotations

import itertools
import logging
import math

import numpy as np

from src import config
from src.algebra.algebras import AlgebraElement, MatrixAlgebra, algebra_from_spec
from src.algebra.scalars import RATIONAL, field_from_spec, field_of
from src.constructions.determinant import sgn
from src.errors import FieldMismatchError, GuardExceeded, InvalidParameterError
from src.poly.oracle import injection_sign, injections

logger = logging.getLogger(__name__)


def _shape(A):
    k = len(A)
    if k == 0:
        raise InvalidParameterError("matrix has no rows")
    n = len(A[0])
    if any(len(row) != n for row in A):
        raise InvalidParameterError("matrix rows have different lengths")
    if k > n:
        raise InvalidParameterError(f"need k <= n, got a {k}x{n} matrix")
    return k, n


def _sweep(A, signed, zero, one):
    k, n = _shape(A)
    full = (1 << k) - 1
    dp = {0: one}
    for j in range(n):
        nxt = dict(dp)
        for mask in range(1, full + 1):
            acc = None
            for i in range(k):
                if not mask >> i & 1:
                    continue
                prev = dp.get(mask ^ (1 << i))
                if prev is None:
                    continue
                w = A[i][j] * prev
                if signed and sgn(mask ^ (1 << i), i) < 0:
                    w = -w
                acc = w if acc is None else acc + w
            if acc is not None:
                nxt[mask] = nxt[mask] + acc if mask in nxt else acc
        dp = nxt
    return dp.get(full, zero)


def _scalar_identities(A):
    field = field_of(A[0][0])
    return field, field.zero, field.one


def rper_dp(A):
    """Rectangular permanent of a k x n scalar matrix (k <= n)."""
    _shape(A)
    _, zero, one = _scalar_identities(A)
    return _sweep(A, False, zero, one)


def rdet_dp(A):
    """Rectangular determinant of a k x n scalar matrix (k <= n)."""
    _shape(A)
    _, zero, one = _scalar_identities(A)
    return _sweep(A, True, zero, one)


# ──────────────────────────────────────────────
# ALGEBRA ENTRIES
# ──────────────────────────────────────────────

def _common_algebra(A):
    algebras = {id(x.algebra): x.algebra for row in A for x in row if isinstance(x, AlgebraElement)}
    if len(algebras) != 1 or any(not isinstance(x, AlgebraElement) for row in A for x in row):
        raise FieldMismatchError("all entries must be elements of one algebra")
    return next(iter(algebras.values()))


def rper_algebra(A, signed=False, guard=None):
    """
    rper (or rdet when signed) of a k x n matrix over an r-dimensional
    algebra, as sum_t dp(A^(t)) * e_{t_1} ... e_{t_k} over t in [r]^k.

    Args:
        A: k x n grid of AlgebraElement, all from the same algebra
        signed: rdet instead of rper
        guard: limit on r^k (None -> config.ALGEBRA_GUARD)
    """
    k, n = _shape(A)
    algebra = _common_algebra(A)
    r = algebra.dim
    guard = config.resolve_guard(guard, config.ALGEBRA_GUARD)
    if r ** k > guard:
        raise GuardExceeded("rper_algebra tuples", r ** k, guard)
    field = algebra.field
    total = algebra.zero()
    basis = [algebra.basis(a) for a in range(r)]
    for t in itertools.product(range(r), repeat=k):
        scalar = [[A[i][j].coords[t[i]] for j in range(n)] for i in range(k)]
        if all(c == 0 for row in scalar for c in row):
            continue
        value = _sweep(scalar, signed, field.zero, field.one)
        if value == 0:
            continue
        word = basis[t[0]]
        for a in t[1:]:
            word = word * basis[a]
        total = total + word.scale(value)
    logger.debug("rper_algebra(k=%d, n=%d, r=%d, signed=%s): %d tuples", k, n, r, signed, r ** k)
    return total


def rper_algebra_bruteforce(A, signed=False, guard=None):
    """Injection sum with ordered algebra products, row 1 leftmost."""
    k, n = _shape(A)
    algebra = _common_algebra(A)
    guard = config.resolve_guard(guard, config.ORACLE_GUARD)
    count = math.perm(n, k)
    if count > guard:
        raise GuardExceeded("rper_algebra_bruteforce injections", count, guard)
    total = algebra.zero()
    for f in injections(k, n):
        term = A[0][f[0]]
        for i in range(1, k):
            term = term * A[i][f[i]]
        if signed and injection_sign(f) < 0:
            term = -term
        total = total + term
    return total


# ──────────────────────────────────────────────
# INPUT
# ──────────────────────────────────────────────

def _scalar(field, value):
    if isinstance(value, (list, dict)) or value is None or isinstance(value, bool):
        raise InvalidParameterError(f"expected a scalar, got {value!r}")
    return field.parse(str(value))


def _cell_algebra(cell, field, r):
    """Algebra implied by one non-scalar cell when nothing names it."""
    if isinstance(cell, list):
        return MatrixAlgebra(len(cell) if r is None else r, field)
    if not isinstance(cell.get("coords"), list):
        raise InvalidParameterError(f"algebra cell needs a 'coords' list, got {cell!r}")
    if "algebra" in cell:
        return algebra_from_spec(cell["algebra"], field)
    if r is not None:
        return MatrixAlgebra(r, field)
    side = math.isqrt(len(cell["coords"]))
    if side < 1 or side * side != len(cell["coords"]):
        raise InvalidParameterError(
            f"{len(cell['coords'])} coordinates do not fit M_r; name the algebra or pass r"
        )
    return MatrixAlgebra(side, field)


def _algebra_cell(cell, algebra, field):
    if isinstance(cell, list):
        if not isinstance(algebra, MatrixAlgebra):
            raise InvalidParameterError(f"matrix cell given for {algebra.name}")
        if len(cell) != algebra.r or any(not isinstance(line, list) or len(line) != algebra.r for line in cell):
            raise InvalidParameterError(f"expected a {algebra.r}x{algebra.r} matrix cell, got {cell!r}")
        return algebra.from_matrix(np.array([[_scalar(field, c) for c in line] for line in cell], dtype=object))
    if isinstance(cell, dict):
        coords = cell.get("coords")
        if not isinstance(coords, list):
            raise InvalidParameterError(f"algebra cell needs a 'coords' list, got {cell!r}")
        if "algebra" in cell and algebra_from_spec(cell["algebra"], field).name != algebra.name:
            raise InvalidParameterError(f"cell algebra {cell['algebra']!r} differs from {algebra.name}")
        return algebra.element([_scalar(field, c) for c in coords])
    raise InvalidParameterError("mixed scalar and algebra cells")


def parse_matrix_entries(data, field=RATIONAL, r=None):
    """
    Matrix-entry JSON -> grid of scalars or of AlgebraElements.

    Accepted cells:
        "3/2" or 7                              scalar
        [[..], [..]]                            r x r matrix, an element of M_r
        {"algebra": "matrix:2", "coords": [..]} coordinates in the algebra's basis;
                                                without "algebra" the basis is M_r's

    A top-level {"field": ..., "algebra": ..., "entries": [...]} overrides
    `field` and names the algebra for every cell. `r` fixes the size of M_r.
    """
    algebra = None
    if isinstance(data, dict):
        field = field_from_spec(data.get("field", field))
        if "algebra" in data:
            algebra = algebra_from_spec(data["algebra"], field)
        data = data.get("entries")
    if r is not None and r < 1:
        raise InvalidParameterError("r must be >= 1")
    if not isinstance(data, list) or not data or not all(isinstance(row, list) and row for row in data):
        raise InvalidParameterError("matrix entries must be a non-empty list of non-empty rows")
    first = data[0][0]
    if isinstance(first, (list, dict)) or algebra is not None:
        if algebra is None:
            algebra = _cell_algebra(first, field, r)
        if r is not None and isinstance(algebra, MatrixAlgebra) and algebra.r != r:
            raise InvalidParameterError(f"entries are in {algebra.name}, but r={r}")
        grid = [[_algebra_cell(cell, algebra, field) for cell in row] for row in data]
        _shape(grid)
        return grid
    grid = [[_scalar(field, c) for c in row] for row in data]
    _shape(grid)
    return grid


def random_matrix(k, n, seed=None, low=-5, high=5, field=RATIONAL):
    """Random k x n scalar matrix with integer entries in [low, high]."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return [[field(int(rng.integers(low, high + 1))) for _ in range(n)] for _ in range(k)]


def random_algebra_matrix(algebra, k, n, seed=None, low=-3, high=3):
    """Random k x n grid of algebra elements with small integer coordinates."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return [
        [algebra.element([int(rng.integers(low, high + 1)) for _ in range(algebra.dim)]) for _ in range(n)]
        for _ in range(k)
    ]
