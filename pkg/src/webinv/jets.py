"""Truncated bivariate Taylor-jet arithmetic.

A ``Jet`` stores the Taylor coefficients c_ij (derivative / i!j!) of a scalar
field at a base point, for all i + j <= order, and supports the ring
operations plus division and composition with a few analytic functions.
Every derivative taken anywhere in the invariant pipeline is a coefficient
read off one of these jets.

Two scalar backends sit behind the same interface: exact rationals
(``fractions.Fraction``), on which every identity in the pipeline is an exact
zero test, and double-precision floats with tolerance-based degeneracy tests.
Jets are immutable; all operations return fresh values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DivisionByDegenerateJet,
    DomainError,
    OrderExhausted,
    UnsupportedOnExactBackend,
)

RATIONAL = "rational"
FLOAT = "float"

# Relative size of a constant term, against the largest coefficient of the
# same jet, below which float division is refused as degenerate.
DIV_DEGENERACY_RTOL = 1e-12

ANALYTIC_TAGS = ("exp", "ln", "sin", "cos", "sqrt")


def _coerce(value, backend):
    """Coerce a plain number to the backend's scalar type."""
    if backend == RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            raise TypeError("float scalar mixed into a rational-backend jet")
        return Fraction(value)
    return float(value)


@lru_cache(maxsize=None)
def _exponents(order):
    """Storage layout: (i, j) pairs by total degree, then descending i."""
    out = []
    for d in range(order + 1):
        for j in range(d + 1):
            out.append((d - j, j))
    return tuple(out)


def _idx(i, j):
    d = i + j
    return d * (d + 1) // 2 + j


def _ncoeffs(order):
    return (order + 1) * (order + 2) // 2


class Jet:
    """Truncated Taylor expansion of a scalar field at a base point."""

    __slots__ = ("order", "coeffs", "backend")

    def __init__(self, order, coeffs, backend):
        if order < 0:
            raise ValueError("jet order must be non-negative")
        coeffs = tuple(coeffs)
        if len(coeffs) != _ncoeffs(order):
            raise ValueError(
                f"order-{order} jet needs {_ncoeffs(order)} coefficients, got {len(coeffs)}"
            )
        self.order = order
        self.coeffs = coeffs
        self.backend = backend

    # -- inspection ---------------------------------------------------------

    @property
    def const(self):
        """Value of the represented field at the base point."""
        return self.coeffs[0]

    def coefficient(self, i, j):
        """Taylor coefficient of x^i y^j (zero beyond the truncation order)."""
        if i < 0 or j < 0:
            raise ValueError("negative exponent")
        if i + j > self.order:
            return self._zero()
        return self.coeffs[_idx(i, j)]

    def derivative(self, i, j):
        """Partial derivative d^(i+j) / dx^i dy^j at the base point."""
        return self.coefficient(i, j) * math.factorial(i) * math.factorial(j)

    @property
    def magnitude(self):
        """Largest absolute coefficient; the scale used by degeneracy tests."""
        return max(abs(c) for c in self.coeffs)

    def _zero(self):
        return Fraction(0) if self.backend == RATIONAL else 0.0

    def _one(self):
        return Fraction(1) if self.backend == RATIONAL else 1.0

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    # -- plumbing -----------------------------------------------------------

    def _check_same(self, other):
        if self.order != other.order:
            raise ValueError(f"jet order mismatch: {self.order} vs {other.order}")
        if self.backend != other.backend:
            raise ValueError(f"jet backend mismatch: {self.backend} vs {other.backend}")

    def _lift(self, value):
        return constant(_coerce(value, self.backend), self.order, self.backend)

    def truncate(self, order):
        """Copy truncated to a lower order (used to align operand orders)."""
        if order > self.order:
            raise ValueError("cannot raise a jet's order by truncation")
        return Jet(order, self.coeffs[: _ncoeffs(order)], self.backend)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Jet):
            other = self._lift(other)
        self._check_same(other)
        return Jet(self.order, (a + b for a, b in zip(self.coeffs, other.coeffs)), self.backend)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.order, (-a for a in self.coeffs), self.backend)

    def __sub__(self, other):
        if not isinstance(other, Jet):
            other = self._lift(other)
        self._check_same(other)
        return Jet(self.order, (a - b for a, b in zip(self.coeffs, other.coeffs)), self.backend)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            s = _coerce(other, self.backend)
            return Jet(self.order, (s * a for a in self.coeffs), self.backend)
        self._check_same(other)
        n = self.order
        out = [self._zero()] * _ncoeffs(n)
        exps = _exponents(n)
        ca, cb = self.coeffs, other.coeffs
        for p, (i1, j1) in enumerate(exps):
            a = ca[p]
            if a == 0:
                continue
            d1 = i1 + j1
            for q, (i2, j2) in enumerate(exps):
                if i2 + j2 > n - d1:
                    break
                b = cb[q]
                if b == 0:
                    continue
                out[_idx(i1 + i2, j1 + j2)] += a * b
        return Jet(n, out, self.backend)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            s = _coerce(other, self.backend)
            if s == 0:
                raise DivisionByDegenerateJet("division by zero scalar")
            return Jet(self.order, (a / s for a in self.coeffs), self.backend)
        self._check_same(other)
        b0 = other.coeffs[0]
        if self.backend == RATIONAL:
            if b0 == 0:
                raise DivisionByDegenerateJet("constant term of divisor is zero")
        else:
            if abs(b0) <= DIV_DEGENERACY_RTOL * other.magnitude:
                raise DivisionByDegenerateJet(
                    f"constant term {b0!r} is degenerate against coefficient scale "
                    f"{other.magnitude!r}"
                )
        n = self.order
        out = [self._zero()] * _ncoeffs(n)
        exps = _exponents(n)
        cb = other.coeffs
        for p, (i, j) in enumerate(exps):
            acc = self.coeffs[p]
            # all lower-degree quotient terms feed coefficient (i, j)
            for q in range(_ncoeffs(i + j - 1) if i + j else 0):
                k, l = exps[q]
                if k <= i and l <= j:
                    acc -= out[q] * cb[_idx(i - k, j - l)]
            out[p] = acc / b0
        return Jet(n, out, self.backend)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise TypeError("jet exponent must be an integer")
        if exponent < 0:
            return self._lift(1) / self.__pow__(-exponent)
        result = self._lift(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Jet)
            and self.order == other.order
            and self.backend == other.backend
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.backend, self.coeffs))

    def __repr__(self):
        terms = []
        for (i, j), c in zip(_exponents(self.order), self.coeffs):
            if c != 0:
                terms.append(f"{c}*x^{i}y^{j}")
        body = " + ".join(terms) if terms else "0"
        return f"Jet(order={self.order}, {self.backend}: {body})"

    # -- calculus -----------------------------------------------------------

    def partial(self, axis):
        """Jet of order N-1 for the partial derivative along ``axis`` (x|y)."""
        if self.order == 0:
            raise OrderExhausted(
                "cannot differentiate an order-0 jet; increase the jet order"
            )
        n = self.order - 1
        out = [self._zero()] * _ncoeffs(n)
        for q, (i, j) in enumerate(_exponents(n)):
            if axis == "x":
                out[q] = (i + 1) * self.coeffs[_idx(i + 1, j)]
            elif axis == "y":
                out[q] = (j + 1) * self.coeffs[_idx(i, j + 1)]
            else:
                raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
        return Jet(n, out, self.backend)


def constant(value, order, backend):
    """Jet of a constant field."""
    v = _coerce(value, backend)
    zero = Fraction(0) if backend == RATIONAL else 0.0
    coeffs = [zero] * _ncoeffs(order)
    coeffs[0] = v
    return Jet(order, coeffs, backend)


def make_var(axis, base_value, order, backend):
    """Jet of a coordinate function: constant term plus a unit linear term."""
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    j = constant(base_value, order, backend)
    if order >= 1:
        coeffs = list(j.coeffs)
        coeffs[_idx(1, 0) if axis == "x" else _idx(0, 1)] = j._one()
        return Jet(order, coeffs, backend)
    return j


def _series_coefficients(tag, c0, order):
    """Taylor coefficients f^(k)(c0)/k! of the analytic function ``tag``."""
    if tag == "exp":
        e = math.exp(c0)
        return [e / math.factorial(k) for k in range(order + 1)]
    if tag == "ln":
        if c0 <= 0:
            raise DomainError(f"ln of non-positive constant term {c0!r}")
        out = [math.log(c0)]
        for k in range(1, order + 1):
            out.append((-1.0) ** (k + 1) / (k * c0**k))
        return out
    if tag == "sin":
        cycle = (math.sin(c0), math.cos(c0), -math.sin(c0), -math.cos(c0))
        return [cycle[k % 4] / math.factorial(k) for k in range(order + 1)]
    if tag == "cos":
        cycle = (math.cos(c0), -math.sin(c0), -math.cos(c0), math.sin(c0))
        return [cycle[k % 4] / math.factorial(k) for k in range(order + 1)]
    if tag == "sqrt":
        if c0 <= 0:
            raise DomainError(f"sqrt of non-positive constant term {c0!r}")
        out = [math.sqrt(c0)]
        for k in range(1, order + 1):
            # f_k = f_{k-1} * (1/2 - (k-1)) / (k * c0)
            out.append(out[-1] * (0.5 - (k - 1)) / (k * c0))
        return out
    raise ValueError(f"unknown analytic function tag {tag!r}")


def apply_analytic(tag, jet, exponent=None):
    """Compose an analytic function with a jet.

    ``tag`` is one of exp/ln/sin/cos/sqrt, or "pow" with an integer
    ``exponent``.  Transcendental tags require the float backend; integer
    powers stay closed on the exact backend.
    """
    if tag == "pow":
        if exponent is None:
            raise ValueError("tag 'pow' needs an integer exponent")
        return jet**exponent
    if tag not in ANALYTIC_TAGS:
        raise ValueError(f"unknown analytic function tag {tag!r}")
    if jet.backend == RATIONAL:
        raise UnsupportedOnExactBackend(
            f"{tag} is not closed over the rationals; use the float backend"
        )
    coeffs = _series_coefficients(tag, jet.const, jet.order)
    shifted = jet - jet.const  # zero constant term
    result = constant(coeffs[-1], jet.order, jet.backend)
    for k in range(jet.order - 1, -1, -1):
        result = result * shifted + coeffs[k]
    return result
