from fractions import Fraction

import numpy as np
import pytest

from src.abp.core import (
    ABP,
    ABPBuilder,
    Edge,
    eval_algebra,
    eval_matrices,
    eval_scalar,
    expand,
    expand_outputs,
    hadamard_eval_via_matrices,
    is_pruned,
    normalize,
    prune,
    transition_matrices,
)
from src.abp.linform import LinForm
from src.abp.transforms import random_abp
from src.algebra.algebras import matrix_algebra
from src.constructions.determinant import construct_ncdet
from src.errors import GuardExceeded, InvalidParameterError, MissingAssignmentError, NonHomogeneousError
from src.poly.ncpoly import NCPoly, hadamard, substitute


def two_paths():
    """y1*y2 + 3*y2*y1 over two variables."""
    builder = ABPBuilder(2)
    builder.add_layer(1)
    builder.add_layer(2)
    builder.add_layer(1)
    builder.add_edge(0, 0, 0, LinForm.var(0))
    builder.add_edge(0, 0, 1, LinForm.var(1, 3))
    builder.add_edge(1, 0, 0, LinForm.var(1))
    builder.add_edge(1, 1, 0, LinForm.var(0))
    return builder.build()


def test_expand_two_paths():
    assert expand(two_paths()) == NCPoly({(0, 1): 1, (1, 0): 3}, 2)


def test_commutative_expand_merges_words():
    f = expand(two_paths(), commutative=True)
    assert f.terms == {(0, 1): 4}


def test_builder_merges_parallel_edges():
    builder = ABPBuilder(1)
    builder.add_layer(1)
    builder.add_layer(1)
    builder.add_edge(0, 0, 0, LinForm.var(0, 2))
    builder.add_edge(0, 0, 0, LinForm.var(0, 5))
    b = builder.build()
    assert b.num_edges == 1
    assert b.edges[0].label == LinForm.var(0, 7)


def test_builder_drops_cancelled_edges():
    builder = ABPBuilder(1)
    builder.add_layer(1)
    builder.add_layer(1)
    builder.add_edge(0, 0, 0, LinForm.var(0, 2))
    builder.add_edge(0, 0, 0, LinForm.var(0, -2))
    assert builder.build().num_edges == 0


def test_bad_edge_endpoint():
    with pytest.raises(InvalidParameterError):
        ABP([1, 1], [Edge(0, 0, 3, LinForm.var(0))], [0], [0], 1)


def test_eval_scalar_and_missing_variable():
    b = two_paths()
    assert eval_scalar(b, [2, 5]) == 2 * 5 + 3 * 5 * 2
    with pytest.raises(MissingAssignmentError):
        eval_scalar(b, {0: 1})


def test_eval_over_matrices_respects_order():
    b = two_paths()
    A = np.array([[Fraction(0), Fraction(1)], [Fraction(0), Fraction(0)]], dtype=object)
    B = np.array([[Fraction(0), Fraction(0)], [Fraction(1), Fraction(0)]], dtype=object)
    value = eval_matrices(b, {0: A, 1: B})
    expected = A.dot(B) + 3 * B.dot(A)
    assert (value == expected).all()


def test_eval_algebra_matches_matrices():
    m2 = matrix_algebra(2)
    a = m2.element([1, 2, 0, 1])
    c = m2.element([0, 1, 1, 0])
    b = two_paths()
    value = eval_algebra(b, {0: a, 1: c})
    assert value == a * c + (c * a).scale(3)


def test_expand_guard():
    with pytest.raises(GuardExceeded):
        expand(construct_ncdet(3), guard=1)


def test_expand_outputs_per_sink():
    builder = ABPBuilder(2)
    builder.add_layer(1)
    builder.add_layer(2)
    builder.add_edge(0, 0, 0, LinForm.var(0))
    builder.add_edge(0, 0, 1, LinForm.var(1))
    outs = expand_outputs(builder.build())
    assert outs[0].support() == {(0,)}
    assert outs[1].support() == {(1,)}


# ── normalize / prune ──

def test_prune_drops_dead_nodes():
    builder = ABPBuilder(1)
    builder.add_layer(1)
    builder.add_layer(3)
    builder.add_layer(1)
    builder.add_edge(0, 0, 0, LinForm.var(0))
    builder.add_edge(0, 0, 1, LinForm.var(0))
    builder.add_edge(1, 0, 0, LinForm.var(0))
    b = builder.build()
    assert not is_pruned(b)
    p = prune(b)
    assert is_pruned(p)
    assert p.layers == (1, 1, 1)
    assert expand(p) == expand(b)


def test_normalize_folds_scalar_layers():
    # y1 then a scalar layer (weights 2 and 3 into one node) then y2
    builder = ABPBuilder(2)
    builder.add_layer(1)
    builder.add_layer(2)
    builder.add_layer(1)
    builder.add_layer(1)
    builder.add_edge(0, 0, 0, LinForm.var(0))
    builder.add_edge(0, 0, 1, LinForm.var(0))
    builder.add_edge(1, 0, 0, LinForm.const(2))
    builder.add_edge(1, 1, 0, LinForm.const(3))
    builder.add_edge(2, 0, 0, LinForm.var(1))
    raw = builder.build()
    assert raw.has_scalar_parts
    out = normalize(raw)
    assert out.is_homogeneous
    assert out.num_edge_layers == 2
    assert expand(out) == expand(raw) == NCPoly({(0, 1): 5}, 2)


def test_normalize_rejects_mixed_degrees():
    builder = ABPBuilder(1)
    builder.add_layer(1)
    builder.add_layer(1)
    builder.add_edge(0, 0, 0, LinForm({0: 1}, 1))
    with pytest.raises(NonHomogeneousError):
        normalize(builder.build())


def test_normalize_is_idempotent(rng):
    b = random_abp(2, 3, seed=rng)
    once = normalize(b)
    assert expand(normalize(once)) == expand(once) == expand(b)


# ── transition matrices ──

def test_transition_matrices_need_homogeneous_labels():
    builder = ABPBuilder(1)
    builder.add_layer(1)
    builder.add_layer(1)
    builder.add_edge(0, 0, 0, LinForm({0: 1}, 1))
    with pytest.raises(NonHomogeneousError):
        transition_matrices(builder.build())


def test_transition_matrix_entries():
    tm = transition_matrices(two_paths())
    assert tm.size == 4
    assert tm.matrices[1][0, 2] == 3
    assert tm.matrices[0][0, 1] == 1
    assert (tm.source_index, tm.sink_index) == (0, 3)


def test_hadamard_via_matrices_on_random_triples():
    rng = np.random.default_rng(7)
    for _ in range(50):
        nvars = int(rng.integers(1, 4))
        degree = int(rng.integers(1, 4))
        f = random_abp(nvars, degree, seed=rng)
        g = random_abp(nvars, degree, seed=rng)
        point = {v: Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 3))) for v in range(nvars)}
        want = substitute(hadamard(expand(f), expand(g)), point)
        assert hadamard_eval_via_matrices(f, g, point) == want


def test_eval_scalar_matches_expansion_at_random_points(rng):
    for _ in range(20):
        nvars = int(rng.integers(1, 5))
        b = random_abp(nvars, int(rng.integers(1, 5)), seed=rng)
        point = {v: Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4))) for v in range(nvars)}
        assert eval_scalar(b, point) == substitute(expand(b), point)


def test_eval_algebra_over_1x1_matrices_is_scalar_eval(rng):
    m1 = matrix_algebra(1)
    for _ in range(10):
        nvars = int(rng.integers(1, 4))
        b = random_abp(nvars, int(rng.integers(1, 4)), seed=rng)
        point = {v: Fraction(int(rng.integers(-3, 4))) for v in range(nvars)}
        lifted = {v: m1.element([c]) for v, c in point.items()}
        assert eval_algebra(b, lifted) == m1.element([eval_scalar(b, point)])
