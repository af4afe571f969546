import time
from fractions import Fraction

import numpy as np
import pytest

from src.abp.core import eval_algebra
from src.algebra.algebras import Algebra, diagonal_algebra, matrix_algebra
from src.algebra.rectangular import (
    parse_matrix_entries,
    random_algebra_matrix,
    random_matrix,
    rdet_dp,
    rper_algebra,
    rper_algebra_bruteforce,
    rper_dp,
)
from src.algebra.scalars import PrimeField
from src.constructions.determinant import construct_rdet_nc
from src.constructions.symmetric import construct_rper_nc
from src.errors import FieldMismatchError, GuardExceeded, InvalidParameterError
from src.poly.ncpoly import substitute
from src.poly.oracle import brute_rdet, brute_rper


# ── scalar DP ──

def test_rper_all_ones_2x3():
    assert rper_dp([[1, 1, 1], [1, 1, 1]]) == 6


def test_rdet_1x2():
    assert rdet_dp([[Fraction(3), Fraction(4)]]) == 7


def test_rdet_square_is_det():
    assert rdet_dp([[1, 2], [3, 4]]) == 1 * 4 - 2 * 3
    A = [[2, 0, 1], [1, 3, 2], [1, 1, 1]]
    assert rdet_dp(A) == round(np.linalg.det(np.array(A, dtype=float)))


def test_rdet_2x3_by_minors():
    A = [[1, 2, 3], [4, 5, 6]]
    minors = (1 * 5 - 2 * 4) + (1 * 6 - 3 * 4) + (2 * 6 - 3 * 5)
    assert rdet_dp(A) == minors


def test_k_above_n():
    with pytest.raises(InvalidParameterError):
        rper_dp([[1], [2]])


def test_ragged_rows():
    with pytest.raises(InvalidParameterError):
        rdet_dp([[1, 2], [3]])


@pytest.mark.parametrize("k,n", [(k, n) for k in range(1, 5) for n in range(k, 8)])
def test_dp_matches_oracles(k, n, rng):
    A = random_matrix(k, n, rng)
    point = [A[i][j] for i in range(k) for j in range(n)]
    assert rper_dp(A) == substitute(brute_rper(k, n, commutative=True), point)
    assert rdet_dp(A) == substitute(brute_rdet(k, n), point)


def test_dp_over_prime_field():
    f7 = PrimeField(7)
    A = [[f7(1), f7(2)], [f7(3), f7(4)]]
    assert rdet_dp(A) == f7(-2)
    assert rper_dp(A) == f7(10)


# ── algebras ──

def test_matrix_algebra_structure():
    m2 = matrix_algebra(2)
    assert m2.dim == 4
    e12, e21, e11 = m2.basis(1), m2.basis(2), m2.basis(0)
    assert e12 * e21 == e11
    assert e21 * e12 == m2.basis(3)
    assert m2.check_associativity()


def test_matrix_algebra_r1_is_the_field():
    m1 = matrix_algebra(1)
    x = m1.element([3])
    assert x * m1.element([5]) == m1.element([15])


def test_non_associative_table_rejected():
    # (e0 e0) e0 = e1 e0 = e0, but e0 (e0 e0) = e0 e1 = 0
    with pytest.raises(InvalidParameterError):
        Algebra(2, {(0, 0): {1: 1}, (1, 0): {0: 1}}, [0, 0])


def test_matrix_round_trip():
    m2 = matrix_algebra(2)
    M = np.array([[1, 2], [3, 4]], dtype=object)
    x = m2.from_matrix(M)
    assert (m2.to_matrix(x) == M).all()


def test_mixed_algebras_rejected():
    a, b = matrix_algebra(2), matrix_algebra(2)
    with pytest.raises(FieldMismatchError):
        a.one() + b.one()
    with pytest.raises(FieldMismatchError):
        rper_algebra([[a.one(), b.one()]])


# ── rper over algebras ──

@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("k,n", [(1, 2), (2, 3), (2, 4), (3, 4)])
def test_rper_algebra_matches_injection_sum(r, k, n, rng):
    if r == 3 and k == 3:
        n = 3
    algebra = matrix_algebra(r)
    A = random_algebra_matrix(algebra, k, n, rng)
    for signed in (False, True):
        assert rper_algebra(A, signed) == rper_algebra_bruteforce(A, signed)


def test_rper_algebra_on_scalars_reduces_to_dp(rng):
    m1 = matrix_algebra(1)
    A = random_matrix(2, 4, rng)
    lifted = [[m1.element([c]) for c in row] for row in A]
    assert rper_algebra(lifted).coords[0] == rper_dp(A)
    assert rper_algebra(lifted, signed=True).coords[0] == rdet_dp(A)


def test_diagonal_entries_decompose():
    d = diagonal_algebra(2)
    rng = np.random.default_rng(3)
    A = random_algebra_matrix(d, 2, 3, rng)
    value = rper_algebra(A)
    for i in range(2):
        assert value.coords[i] == rper_dp([[x.coords[i] for x in row] for row in A])


@pytest.mark.parametrize("k,n", [(1, 3), (2, 3), (2, 4), (3, 4)])
def test_abp_route_matches_algebra_route(k, n, rng):
    algebra = matrix_algebra(2)
    A = random_algebra_matrix(algebra, k, n, rng)
    point = {i * n + j: A[i][j] for i in range(k) for j in range(n)}
    assert eval_algebra(construct_rdet_nc(k, n), point) == rper_algebra(A, signed=True)
    assert eval_algebra(construct_rper_nc(k, n), point) == rper_algebra(A)


def test_rper_algebra_guard(rng):
    A = random_algebra_matrix(matrix_algebra(2), 3, 3, rng)
    with pytest.raises(GuardExceeded):
        rper_algebra(A, guard=10)


def _best_seconds(fn, repeat=3):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def test_rper_algebra_growth_per_row(rng):
    algebra = matrix_algebra(2)
    small = random_algebra_matrix(algebra, 2, 4, rng)
    large = random_algebra_matrix(algebra, 3, 4, rng)
    t_small = _best_seconds(lambda: rper_algebra(small))
    t_large = _best_seconds(lambda: rper_algebra(large))
    # one more row: about 2 r^2 times the work
    assert t_large <= 40 * t_small + 0.05
    assert t_large < 5.0


# ── input ──

def test_parse_scalar_entries():
    A = parse_matrix_entries([["1/2", 3], [4, "5"]])
    assert A[0][0] == Fraction(1, 2)
    assert rdet_dp(A) == Fraction(5, 2) - 12


def test_parse_matrix_cells():
    A = parse_matrix_entries({"field": "fp:5", "entries": [[[[1, 0], [0, 1]], [[0, 1], [0, 0]]]]})
    assert A[0][0].algebra.dim == 4
    value = rper_algebra(A)
    assert value.coords == tuple(PrimeField(5)(c) for c in (1, 1, 0, 1))


def test_parse_rejects_k_above_n():
    with pytest.raises(InvalidParameterError):
        parse_matrix_entries([[1], [2]])


def test_parse_coordinate_cells_with_named_algebra():
    A = parse_matrix_entries([[{"algebra": "diagonal:2", "coords": [1, 2]}, {"algebra": "diagonal:2", "coords": [3, 4]}]])
    assert A[0][0].algebra.name == "Diag2"
    assert rper_algebra(A).coords == (4, 6)


def test_parse_top_level_algebra():
    A = parse_matrix_entries({"algebra": "matrix:1", "entries": [[{"coords": [2]}, {"coords": [5]}]]})
    assert rper_algebra(A, signed=True).coords == (7,)


def test_parse_coordinate_cells_use_r():
    A = parse_matrix_entries([[{"coords": [1, 0, 0, 1]}]], r=2)
    assert A[0][0].algebra.name == "M2"
    with pytest.raises(InvalidParameterError):
        parse_matrix_entries([[{"coords": [1, 0, 0, 1]}]], r=3)


@pytest.mark.parametrize(
    "data",
    [
        [[{"coord": [1]}]],
        [[{"coords": [1, 2, 3]}]],
        [[{"algebra": "octonions", "coords": [1]}]],
        [[{"algebra": "matrix:1", "coords": [1]}, {"algebra": "diagonal:1", "coords": [1]}]],
        [[[[1, 0], [0, 1]], [[1, 0]]]],
        [[[[1, 0], [0, 1]], 3]],
        [[1, [1]]],
        [[]],
        {"entries": "nope"},
    ],
)
def test_parse_rejects_malformed_cells(data):
    with pytest.raises(InvalidParameterError):
        parse_matrix_entries(data)
