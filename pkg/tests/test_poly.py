import itertools
import math
from fractions import Fraction

import pytest

from src.algebra.scalars import PrimeField
from src.errors import FieldMismatchError, GuardExceeded, InvalidParameterError, NonHomogeneousError
from src.poly.ncpoly import (
    FlatVars,
    NCPoly,
    RectMatrixVars,
    hadamard,
    reverse,
    set_multilinearize,
    substitute,
    symmetrize,
)
from src.poly.oracle import (
    brute_det,
    brute_rdet,
    brute_rdet_by_minors,
    brute_rper,
    brute_S_star,
    brute_snc,
    injections,
    inversions,
    permutation_parity,
    vandermonde_det,
    vandermonde_det_leibniz,
)


def poly(terms, nvars=3, commutative=False):
    return NCPoly(terms, nvars, commutative)


def test_noncommutative_words_are_ordered():
    x = NCPoly.variable(0, 2)
    y = NCPoly.variable(1, 2)
    assert x * y != y * x
    assert (x * y - y * x).coefficient((0, 1)) == 1


def test_commutative_words_are_sorted():
    f = poly({(1, 0): 2}, 2, commutative=True)
    assert f.coefficient((0, 1)) == 2
    assert f.coefficient((1, 0)) == 2


def test_zero_coefficients_vanish():
    f = poly({(0,): 1}) + poly({(0,): -1})
    assert f.is_zero()
    assert len(f) == 0


def test_variable_out_of_range():
    with pytest.raises(InvalidParameterError):
        poly({(5,): 1})


def test_mixing_commutative_flags():
    with pytest.raises(FieldMismatchError):
        poly({(0,): 1}) + poly({(0,): 1}, commutative=True)


def test_degree_and_homogeneity():
    f = poly({(0, 1): 1, (2,): 1})
    assert not f.is_homogeneous()
    with pytest.raises(NonHomogeneousError):
        f.degree()
    assert poly({(0, 1): 1}).degree() == 2
    assert NCPoly.zero(3).degree() is None


def test_symmetrize_of_sorted_subsets_is_s_star():
    for n, k in [(3, 2), (4, 3)]:
        assert symmetrize(brute_snc(n, k)) == brute_S_star(n, k)


def test_symmetrize_guard():
    with pytest.raises(GuardExceeded):
        symmetrize(brute_snc(5, 4), guard=10)


def test_symmetrize_rejects_mixed_degrees():
    with pytest.raises(NonHomogeneousError):
        symmetrize(poly({(0,): 1, (0, 1): 1}))


def test_hadamard_and_reverse():
    f = poly({(0, 1): 2, (1, 2): 3})
    g = poly({(0, 1): 5, (2, 1): 7})
    assert hadamard(f, g) == poly({(0, 1): 10})
    assert reverse(f) == poly({(1, 0): 2, (2, 1): 3})


def test_set_multilinearize():
    f = poly({(2, 0): 1}, nvars=3)
    g = set_multilinearize(f)
    # y_3 at position 1 -> y_{1,3}; y_1 at position 2 -> y_{2,1}
    assert g.support() == {(2, 3)}
    assert g.nvars == 6


def test_substitute():
    f = poly({(0, 1): 2, (2,): 0, (): 1})
    assert substitute(f, [Fraction(1, 2), 3, 7]) == 4


def test_dump_is_sorted():
    f = poly({(1, 0): 1, (0, 1): Fraction(-3, 2)})
    assert f.dump(FlatVars(3)) == "-3/2  y_{1} y_{2}\n1  y_{2} y_{1}\n"


def test_rect_matrix_names():
    names = RectMatrixVars(2, 3)
    assert names.id(2, 1) == 3
    assert names.name(3) == "y_{2,1}"
    with pytest.raises(InvalidParameterError):
        names.id(3, 1)


# ── oracles ──

def test_s_star_counts():
    for n, k in [(3, 1), (3, 3), (5, 2)]:
        f = brute_S_star(n, k)
        assert len(f) == math.perm(n, k)
        assert all(c == 1 for c in f.terms.values())


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_permutation_parity_matches_cycle_sign(k):
    for sigma in itertools.permutations(range(k)):
        seen, cycles = set(), 0
        for start in range(k):
            if start in seen:
                continue
            cycles += 1
            j = start
            while j not in seen:
                seen.add(j)
                j = sigma[j]
        assert permutation_parity(sigma) == (-1) ** (k - cycles)


def test_inversions():
    assert inversions((2, 0, 1)) == 2
    assert inversions((0, 1, 2)) == 0


def test_injection_count():
    assert len(list(injections(2, 4))) == 12


def test_det_2x2():
    d = brute_det(2)
    assert d.terms == {(0, 3): 1, (1, 2): -1}


def test_rdet_is_sum_of_minors():
    for k, n in [(1, 3), (2, 3), (2, 4), (3, 4)]:
        assert brute_rdet(k, n) == brute_rdet_by_minors(k, n)


def test_rdet_1x2_and_rper_all_ones():
    assert brute_rdet(1, 2).terms == {(0,): 1, (1,): 1}
    assert substitute(brute_rper(2, 3), [1] * 6) == 6


def test_rdet_noncommutative_flag():
    f = brute_rdet(2, 3, commutative=False)
    assert not f.commutative
    assert f.coefficient((1, 3)) == -1


def test_oracle_guard():
    with pytest.raises(GuardExceeded):
        brute_S_star(6, 4, guard=100)


def test_oracle_rejects_k_above_n():
    with pytest.raises(InvalidParameterError):
        brute_rper(3, 2)


def test_vandermonde_closed_form_matches_leibniz():
    for values in [[1, 2, 3], [2, 5], [Fraction(1, 2), 3, -1, 4]]:
        assert vandermonde_det(values) == vandermonde_det_leibniz(values)
    f5 = PrimeField(5)
    vals = [f5(1), f5(2), f5(4)]
    assert vandermonde_det(vals) == vandermonde_det_leibniz(vals)


def random_poly(rng, nvars=3, degree=3, terms=8):
    words = {
        tuple(int(v) for v in rng.integers(0, nvars, size=degree)): int(rng.integers(1, 6))
        for _ in range(terms)
    }
    return poly(words, nvars=nvars)


def test_hadamard_laws_on_random_polynomials(rng):
    for _ in range(25):
        f, g, h = (random_poly(rng) for _ in range(3))
        assert hadamard(f, g) == hadamard(g, f)
        assert hadamard(hadamard(f, g), h) == hadamard(f, hadamard(g, h))
        assert hadamard(f.scale(3) + g, h) == hadamard(f, h).scale(3) + hadamard(g, h)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 6) for k in range(1, n + 1)])
def test_s_star_set_multilinearizes_to_rper(n, k):
    assert set_multilinearize(brute_S_star(n, k)) == brute_rper(k, n)


def test_symmetrized_polynomials_are_palindromic(rng):
    for _ in range(10):
        f = symmetrize(random_poly(rng, nvars=4, degree=3, terms=5))
        assert reverse(f) == f
    assert reverse(brute_S_star(4, 3)) == brute_S_star(4, 3)
