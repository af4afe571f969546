"""
Sparse exact polynomials in noncommuting (or commuting) variables.

A Word is a tuple of variable ids; an NCPoly maps words to nonzero field
coefficients. Commutative polynomials reuse the same class with the
`commutative` flag set: their words are kept sorted at insertion, so
x2*x1 and x1*x2 land on the same key.

This is the ground-truth representation every ABP gets expanded into.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from src import config
from src.algebra.scalars import RATIONAL
from src.errors import FieldMismatchError, GuardExceeded, InvalidParameterError, NonHomogeneousError

Word = tuple


# ──────────────────────────────────────────────
# VARIABLE NAMING
# ──────────────────────────────────────────────

@dataclass(frozen=True)
class RectMatrixVars:
    """
    The symbolic k x n matrix (y_ij). Row-major ids: id(i, j) = (i-1)*n + (j-1),
    with i, j 1-based in names and 0-based ids.
    """

    k: int
    n: int
    symbol: str = "y"

    def id(self, i, j):
        if not (1 <= i <= self.k and 1 <= j <= self.n):
            raise InvalidParameterError(f"({i}, {j}) outside a {self.k}x{self.n} matrix")
        return (i - 1) * self.n + (j - 1)

    def position(self, var):
        return var // self.n + 1, var % self.n + 1

    @property
    def nvars(self):
        return self.k * self.n

    def name(self, var):
        i, j = self.position(var)
        return f"{self.symbol}_{{{i},{j}}}"


@dataclass(frozen=True)
class FlatVars:
    """Plain variables y_1..y_n (ids 0..n-1)."""

    n: int
    symbol: str = "y"

    @property
    def nvars(self):
        return self.n

    def name(self, var):
        return f"{self.symbol}_{{{var + 1}}}"


# ──────────────────────────────────────────────
# POLYNOMIALS
# ──────────────────────────────────────────────

class NCPoly:
    """Immutable sparse polynomial: word -> coefficient, no stored zeros."""

    __slots__ = ("terms", "nvars", "commutative", "field")

    def __init__(self, terms=None, nvars=0, commutative=False, field=RATIONAL):
        self.nvars = nvars
        self.commutative = commutative
        self.field = field
        clean = {}
        for word, coef in (terms or {}).items():
            word = tuple(sorted(word)) if commutative else tuple(word)
            if any(v < 0 or v >= nvars for v in word):
                raise InvalidParameterError(f"word {word} uses a variable outside 0..{nvars - 1}")
            total = field(clean.get(word, 0) + coef)
            if total == 0:
                clean.pop(word, None)
            else:
                clean[word] = total
        self.terms = clean

    # ── constructors ──

    @classmethod
    def zero(cls, nvars, commutative=False, field=RATIONAL):
        return cls({}, nvars, commutative, field)

    @classmethod
    def constant(cls, c, nvars, commutative=False, field=RATIONAL):
        return cls({(): field(c)}, nvars, commutative, field)

    @classmethod
    def variable(cls, var, nvars, commutative=False, field=RATIONAL):
        return cls({(var,): field.one}, nvars, commutative, field)

    def _like(self, terms, nvars=None, commutative=None):
        return NCPoly(
            terms,
            self.nvars if nvars is None else nvars,
            self.commutative if commutative is None else commutative,
            self.field,
        )

    def _check(self, other):
        if not isinstance(other, NCPoly):
            raise TypeError(f"expected NCPoly, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field.name} vs {other.field.name}")
        if other.commutative != self.commutative:
            raise FieldMismatchError("cannot mix commutative and noncommutative polynomials")

    # ── arithmetic ──

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for word, coef in other.terms.items():
            terms[word] = terms.get(word, 0) + coef
        return self._like(terms, max(self.nvars, other.nvars))

    def __neg__(self):
        return self._like({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c)
        return self._like({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                terms[w] = terms.get(w, 0) + c1 * c2
        return self._like(terms, max(self.nvars, other.nvars))

    def __rmul__(self, other):
        return self.scale(other)

    # ── queries ──

    def coefficient(self, word):
        word = tuple(sorted(word)) if self.commutative else tuple(word)
        return self.terms.get(word, self.field.zero)

    def __getitem__(self, word):
        return self.coefficient(word)

    def support(self):
        return set(self.terms)

    def __len__(self):
        return len(self.terms)

    def degrees(self):
        return {len(w) for w in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        """Degree of a homogeneous polynomial (None for the zero polynomial)."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise NonHomogeneousError(f"polynomial has several degrees {sorted(degs)}")
        return next(iter(degs))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.commutative == other.commutative and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # ── text form ──

    def dump(self, namer=None):
        """
        Canonical text dump: one term per line, "coef  y_{i1} y_{i2} ...",
        words in lexicographic order.
        """
        namer = namer or FlatVars(self.nvars)
        lines = []
        for word in sorted(self.terms):
            coef = self.field.format(self.terms[word])
            names = " ".join(namer.name(v) for v in word) if word else "1"
            lines.append(f"{coef}  {names}")
        return "\n".join(lines) + ("\n" if lines else "")

    def __repr__(self):
        kind = "comm" if self.commutative else "nc"
        return f"NCPoly({kind}, nvars={self.nvars}, terms={len(self.terms)})"


# ──────────────────────────────────────────────
# OPERATIONS
# ──────────────────────────────────────────────

def _require_homogeneous(f, what):
    if not f.is_homogeneous():
        raise NonHomogeneousError(f"{what} needs a homogeneous polynomial, got degrees {sorted(f.degrees())}")
    return f.degree()


def symmetrize(f, guard=None):
    """
    Symmetrized polynomial f* = sum over sigma in S_k of f^sigma, where
    sigma permutes the positions of every word.
    """
    k = _require_homogeneous(f, "symmetrize")
    if k is None:
        return f._like({})
    guard = config.resolve_guard(guard, config.ORACLE_GUARD)
    work = len(f.terms) * math.factorial(k)
    if work > guard:
        raise GuardExceeded("symmetrize", work, guard)
    terms = {}
    perms = list(itertools.permutations(range(k)))
    for word, coef in f.terms.items():
        for sigma in perms:
            w = tuple(word[sigma[p]] for p in range(k))
            terms[w] = terms.get(w, 0) + coef
    return f._like(terms)


def hadamard(f, g):
    """Coefficient-wise product; words missing on either side drop out."""
    f._check(g)
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    terms = {w: c * big.terms[w] for w, c in small.terms.items() if w in big.terms}
    return f._like(terms, max(f.nvars, g.nvars))


def reverse(f):
    """m^R for every word m."""
    return f._like({w[::-1]: c for w, c in f.terms.items()})


def set_multilinearize(f, k=None, n=None):
    """
    Rename y_i at position j to y_{j,i}: the result lives on the k x n
    matrix alphabet (id (j-1)*n + (i-1)).
    """
    degree = _require_homogeneous(f, "set_multilinearize")
    k = degree if k is None else k
    n = f.nvars if n is None else n
    if degree is not None and degree != k:
        raise NonHomogeneousError(f"polynomial has degree {degree}, expected {k}")
    terms = {
        tuple(pos * n + var for pos, var in enumerate(word)): coef
        for word, coef in f.terms.items()
    }
    return NCPoly(terms, k * n, f.commutative, f.field)


def substitute(f, assignment):
    """
    Value of f at a scalar point (commutative once scalars are plugged in).

    Args:
        f: NCPoly
        assignment: mapping var id -> scalar, or a sequence indexed by var id
    """
    total = f.field.zero
    for word, coef in f.terms.items():
        term = coef
        for v in word:
            term = term * assignment[v]
        total = total + term
    return total


def is_multilinear(word):
    return len(set(word)) == len(word)
