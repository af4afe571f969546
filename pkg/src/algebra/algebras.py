"""
Finite-dimensional associative algebras given by structure constants.

An Algebra is a basis e_1..e_r plus the table e_a * e_b = sum_c C[a][b][c] e_c.
Elements are coordinate vectors. The matrix algebra M_r(F) is the stock
instance (basis E_ab, E_ab * E_cd = [b == c] E_ad).

Key design decisions:
- Associativity is checked on every basis triple when the algebra is built,
  because the basis-product expansion used by rper_algebra silently breaks
  on a non-associative table.
- Structure constants are stored sparsely (only nonzero c entries), so M_r
  costs r^3 table entries instead of r^6.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from src.algebra.scalars import RATIONAL
from src.errors import FieldMismatchError, InvalidParameterError


class Algebra:
    """An r-dimensional associative algebra over an exact field."""

    def __init__(self, dim, structure, unit, labels=None, field=RATIONAL, name=None):
        """
        Args:
            dim: r, the dimension
            structure: dict (a, b) -> dict c -> coefficient, 0-based basis ids
            unit: length-r coordinates of the multiplicative identity
            labels: optional basis names, e.g. ["E11", "E12", ...]
            field: coefficient Field
            name: short tag used in reprs and JSON
        """
        if dim < 1:
            raise InvalidParameterError("algebra dimension must be >= 1")
        if len(unit) != dim:
            raise InvalidParameterError("unit must have one coordinate per basis element")
        self.dim = dim
        self.field = field
        self.labels = list(labels) if labels else [f"e{i + 1}" for i in range(dim)]
        self.name = name or f"A{dim}"
        self.structure = {
            key: {c: field(v) for c, v in row.items() if v != 0}
            for key, row in structure.items()
        }
        self.unit_coords = tuple(field(u) for u in unit)
        self.check_associativity()
        self._check_unit()

    # ── construction checks ──

    def check_associativity(self):
        """(e_a e_b) e_c == e_a (e_b e_c) for all r^3 basis triples."""
        basis = [self.basis(i) for i in range(self.dim)]
        for a, b, c in itertools.product(range(self.dim), repeat=3):
            left = (basis[a] * basis[b]) * basis[c]
            right = basis[a] * (basis[b] * basis[c])
            if left != right:
                raise InvalidParameterError(
                    f"structure constants are not associative at "
                    f"({self.labels[a]}, {self.labels[b]}, {self.labels[c]})"
                )
        return True

    def _check_unit(self):
        one = self.one()
        for i in range(self.dim):
            e = self.basis(i)
            if one * e != e or e * one != e:
                raise InvalidParameterError("unit coordinates are not a two-sided identity")

    # ── elements ──

    def element(self, coords):
        if len(coords) != self.dim:
            raise InvalidParameterError(f"expected {self.dim} coordinates, got {len(coords)}")
        return AlgebraElement(self, tuple(self.field(c) for c in coords))

    def zero(self):
        return AlgebraElement(self, tuple(self.field.zero for _ in range(self.dim)))

    def one(self):
        return AlgebraElement(self, self.unit_coords)

    def basis(self, i):
        coords = [self.field.zero] * self.dim
        coords[i] = self.field.one
        return AlgebraElement(self, tuple(coords))

    def scalar(self, c):
        return self.one().scale(c)

    def multiply(self, x, y):
        out = [self.field.zero] * self.dim
        for a, xa in enumerate(x):
            if xa == 0:
                continue
            for b, yb in enumerate(y):
                if yb == 0:
                    continue
                row = self.structure.get((a, b))
                if not row:
                    continue
                w = xa * yb
                for c, coef in row.items():
                    out[c] = out[c] + w * coef
        return tuple(out)

    def __repr__(self):
        return f"Algebra({self.name}, dim={self.dim}, field={self.field.name})"


class MatrixAlgebra(Algebra):
    """M_r(F) with the unit-matrix basis E_ab (row-major, index a*r + b)."""

    def __init__(self, r, field=RATIONAL):
        if r < 1:
            raise InvalidParameterError("matrix size r must be >= 1")
        self.r = r
        structure = {}
        for a, b, d in itertools.product(range(r), repeat=3):
            structure[(a * r + b, b * r + d)] = {a * r + d: 1}
        unit = [1 if a == b else 0 for a in range(r) for b in range(r)]
        labels = [f"E{a + 1}{b + 1}" for a in range(r) for b in range(r)]
        super().__init__(r * r, structure, unit, labels=labels, field=field, name=f"M{r}")

    def from_matrix(self, matrix):
        matrix = np.asarray(matrix, dtype=object)
        if matrix.shape != (self.r, self.r):
            raise InvalidParameterError(f"expected a {self.r}x{self.r} matrix, got {matrix.shape}")
        return self.element([matrix[a, b] for a in range(self.r) for b in range(self.r)])

    def to_matrix(self, element):
        out = np.empty((self.r, self.r), dtype=object)
        for a in range(self.r):
            for b in range(self.r):
                out[a, b] = element.coords[a * self.r + b]
        return out


def matrix_algebra(r, field=RATIONAL):
    """M_r(F) as an r^2-dimensional algebra."""
    return MatrixAlgebra(r, field)


def diagonal_algebra(r, field=RATIONAL):
    """F^r with coordinatewise product (diagonal r x r matrices)."""
    structure = {(i, i): {i: 1} for i in range(r)}
    return Algebra(r, structure, [1] * r, labels=[f"D{i + 1}" for i in range(r)],
                   field=field, name=f"Diag{r}")


def algebra_from_spec(spec, field=RATIONAL):
    """
    Parse an algebra name: "matrix:<r>" (or "M<r>") for M_r,
    "diagonal:<r>" (or "Diag<r>") for F^r.
    """
    text = str(spec).strip().lower()
    for prefixes, build in (
        (("matrix:", "m"), matrix_algebra),
        (("diagonal:", "diag"), diagonal_algebra),
    ):
        for prefix in prefixes:
            rest = text[len(prefix):]
            if text.startswith(prefix) and rest.isdigit() and int(rest) >= 1:
                return build(int(rest), field)
    raise InvalidParameterError(f"unknown algebra {spec!r} (use 'matrix:<r>' or 'diagonal:<r>')")


# ──────────────────────────────────────────────
# ELEMENTS
# ──────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: Algebra
    coords: tuple

    def _same(self, other):
        if not isinstance(other, AlgebraElement):
            raise FieldMismatchError(f"expected an algebra element, got {other!r}")
        if other.algebra is not self.algebra:
            raise FieldMismatchError(
                f"elements of different algebras: {self.algebra.name} vs {other.algebra.name}"
            )

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-x for x in self.coords))

    def scale(self, c):
        return AlgebraElement(self.algebra, tuple(c * x for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._same(other)
            return AlgebraElement(self.algebra, self.algebra.multiply(self.coords, other.coords))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self):
        return all(x == 0 for x in self.coords)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            return NotImplemented
        return all(x == y for x, y in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        parts = [
            f"{self.algebra.field.format(c)}*{label}"
            for c, label in zip(self.coords, self.algebra.labels)
            if c != 0
        ]
        return " + ".join(parts) if parts else "0"
