"""
Edge labels: affine linear forms sum_i c_i * y_i + c_0.

A label with c_0 == 0 is homogeneous. A label with no variable terms is a
scalar (degree-0) edge; those only appear transiently (zeta-transform and
link layers) and are removed by normalize().
"""

from __future__ import annotations

from src.algebra.scalars import RATIONAL


class LinForm:
    __slots__ = ("coeffs", "constant")

    def __init__(self, coeffs=None, constant=0):
        self.coeffs = {v: c for v, c in (coeffs or {}).items() if c != 0}
        self.constant = constant

    @classmethod
    def var(cls, v, coef=1):
        return cls({v: coef})

    @classmethod
    def const(cls, c):
        return cls({}, c)

    # ── queries ──

    @property
    def is_homogeneous(self):
        return self.constant == 0

    @property
    def is_scalar(self):
        return not self.coeffs

    @property
    def is_zero(self):
        return not self.coeffs and self.constant == 0

    def coeff(self, v):
        return self.coeffs.get(v, 0)

    def variables(self):
        return set(self.coeffs)

    # ── arithmetic ──

    def __add__(self, other):
        coeffs = dict(self.coeffs)
        for v, c in other.coeffs.items():
            coeffs[v] = coeffs.get(v, 0) + c
        return LinForm(coeffs, self.constant + other.constant)

    def scale(self, s):
        return LinForm({v: s * c for v, c in self.coeffs.items()}, s * self.constant)

    def relabel(self, fn):
        """fn(var) -> new var, or None to substitute the constant 1."""
        coeffs = {}
        constant = self.constant
        for v, c in self.coeffs.items():
            w = fn(v)
            if w is None:
                constant = constant + c
            else:
                coeffs[w] = coeffs.get(w, 0) + c
        return LinForm(coeffs, constant)

    def evaluate(self, point, field=RATIONAL):
        total = field(self.constant)
        for v, c in self.coeffs.items():
            total = total + c * point[v]
        return total

    def __eq__(self, other):
        if not isinstance(other, LinForm):
            return NotImplemented
        return self.coeffs == other.coeffs and self.constant == other.constant

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.constant))

    def format(self, field=RATIONAL, namer=None):
        parts = []
        for v in sorted(self.coeffs):
            name = namer.name(v) if namer else f"y{v + 1}"
            c = self.coeffs[v]
            parts.append(name if c == 1 else f"{field.format(c)}*{name}")
        if self.constant != 0 or not parts:
            parts.append(field.format(self.constant))
        return " + ".join(parts)

    def __repr__(self):
        return f"LinForm({self.format()})"
