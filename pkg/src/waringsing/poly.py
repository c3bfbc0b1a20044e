"""Sparse multivariate polynomials over Q(i) (exact) or complex doubles.

A :class:`Poly` maps exponent tuples to nonzero coefficients.  Terms are
ordered graded-lexicographically with ``x1 > x2 > ...`` whenever an order is
needed (leading terms, serialization, printing).  Instances are immutable.
"""

from __future__ import annotations

import json
import math
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import linalg
from .scalars import (
    EXACT,
    FLOAT,
    QQi,
    exact_div,
    is_exact,
    normalize,
    scalar_from_json,
    scalar_to_json,
)

Monomial = tuple


def grlex_key(exp: Monomial):
    return (sum(exp), exp)


def _add_exp(e1, e2):
    return tuple([a + b for a, b in zip(e1, e2)])


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "ring", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable = (), ring: str | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        any_float = ring == FLOAT
        raw = []
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            if isinstance(c, (float, complex)):
                any_float = True
            raw.append((exp, c))
        for exp, c in raw:
            if any_float:
                c = complex(c)
                if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                    raise ValueError("non-finite coefficient")
            else:
                c = normalize(c)
            if exp in clean:
                c = clean[exp] + c
            clean[exp] = c
        self._init(nvars, {e: c for e, c in clean.items() if c != 0},
                   FLOAT if any_float else EXACT)

    def _init(self, nvars, terms, ring):
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, nvars, terms, ring):
        obj = cls.__new__(cls)
        obj._init(nvars, terms, ring)
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, ring: str = EXACT) -> "Poly":
        return cls._raw(nvars, {}, ring)

    @classmethod
    def const(cls, nvars: int, c, ring: str | None = None) -> "Poly":
        return cls(nvars, {(0,) * nvars: c}, ring)

    @classmethod
    def var(cls, nvars: int, i: int, ring: str = EXACT) -> "Poly":
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1}, ring)

    @classmethod
    def linear(cls, coeffs: Sequence, ring: str | None = None) -> "Poly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(n, terms, ring)

    # basic properties -----------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.ring == EXACT

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def coefficient(self, exp: Monomial):
        return self.terms.get(tuple(exp), 0)

    def max_abs_coeff(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    def norm1(self) -> float:
        return sum(abs(complex(c)) for c in self.terms.values())

    def to_float(self) -> "Poly":
        if self.ring == FLOAT:
            return self
        return Poly._raw(self.nvars, {e: complex(c) for e, c in self.terms.items()}, FLOAT)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Poly.const(self.nvars, other)

    @staticmethod
    def _join_ring(a: "Poly", b: "Poly") -> str:
        return EXACT if a.ring == EXACT and b.ring == EXACT else FLOAT

    def __add__(self, other):
        other = self._coerce(other)
        ring = self._join_ring(self, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                s = terms[e] + c
                if s == 0:
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c
        return Poly._finish(self.nvars, terms, ring)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    @staticmethod
    def _finish(nvars, terms, ring):
        if ring == EXACT:
            terms = {e: normalize(c) for e, c in terms.items() if c != 0}
        else:
            terms = {e: complex(c) for e, c in terms.items() if c != 0}
        return Poly._raw(nvars, terms, ring)

    def scale(self, c) -> "Poly":
        if c == 0:
            return Poly.zero(self.nvars, self.ring)
        if self.ring == EXACT and is_exact(c):
            return Poly._raw(self.nvars, {e: normalize(v * c) for e, v in self.terms.items()}, EXACT)
        c = complex(c)
        return Poly._finish(self.nvars, {e: complex(v) * c for e, v in self.terms.items()}, FLOAT)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        ring = self._join_ring(self, other)
        terms: dict = {}
        get = terms.get
        b_items = list(other.terms.items())
        for e1, c1 in self.terms.items():
            for e2, c2 in b_items:
                e = tuple([a + b for a, b in zip(e1, e2)])
                terms[e] = get(e, 0) + c1 * c2
        return Poly._finish(self.nvars, terms, ring)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = Poly.const(self.nvars, 1, self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divmod(self, divisor: "Poly"):
        """Multivariate division by a single polynomial (grlex leading terms).

        Returns ``(quotient, remainder)``; the remainder is zero exactly when
        ``divisor`` divides ``self``.
        """
        if not divisor.terms:
            raise ZeroDivisionError("division by zero polynomial")
        ring = self._join_ring(self, divisor)
        exact = ring == EXACT
        lexp, lc = divisor.leading_term()
        rem = dict(self.terms)
        quot: dict = {}
        out_rem: dict = {}
        dterms = list(divisor.terms.items())
        while rem:
            exp = max(rem, key=grlex_key)
            c = rem[exp]
            qexp = tuple([a - b for a, b in zip(exp, lexp)])
            if min(qexp) < 0:
                out_rem[exp] = rem.pop(exp)
                continue
            qc = exact_div(c, lc) if exact else complex(c) / complex(lc)
            quot[qexp] = qc
            for e2, c2 in dterms:
                e = _add_exp(qexp, e2)
                v = rem.get(e, 0) - qc * c2
                if e == exp or (exact and v == 0):
                    rem.pop(e, None)
                else:
                    rem[e] = v
        return Poly._finish(self.nvars, quot, ring), Poly._finish(self.nvars, out_rem, ring)

    def exact_div(self, divisor: "Poly") -> "Poly":
        q, r = self.divmod(divisor)
        if r.terms and (r.ring == EXACT or r.max_abs_coeff() > 1e-9 * max(self.max_abs_coeff(), 1e-300)):
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if not self.terms:
            return other == 0
        return self.terms == {(0,) * self.nvars: other}

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nvars, frozenset(self.terms.items()))))
        return self._hash

    def allclose(self, other: "Poly", rel: float = 1e-10) -> bool:
        diff = self - other
        scale = max(self.max_abs_coeff(), other.max_abs_coeff(), 1e-300)
        return diff.max_abs_coeff() <= rel * scale

    # calculus and evaluation ---------------------------------------------
    def evaluate(self, point: Sequence):
        """Value at ``point``; exact when both inputs are exact."""
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        exact = self.ring == EXACT and all(is_exact(v) for v in point)
        if exact:
            pts = [normalize(v) for v in point]
        else:
            pts = [complex(v) for v in point]
        # powers cached per variable, accumulated term by term
        cache = [{0: 1} for _ in range(self.nvars)]
        total = 0
        for exp, c in self.terms.items():
            t = c if exact else complex(c)
            for i, e in enumerate(exp):
                if e:
                    pw = cache[i].get(e)
                    if pw is None:
                        pw = pts[i] ** e
                        cache[i][e] = pw
                    t = t * pw
            total = total + t
        return normalize(total) if exact else complex(total)

    __call__ = evaluate

    def partial(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise IndexError("variable index out of range")
        terms = {}
        for exp, c in self.terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                terms[tuple(e)] = c * exp[i]
        return Poly._finish(self.nvars, terms, self.ring)

    def gradient(self) -> list["Poly"]:
        return [self.partial(i) for i in range(self.nvars)]

    def substitute(self, matrix: Sequence[Sequence]) -> "Poly":
        """Return ``p(M x)``: variable ``x_i`` becomes ``sum_j M[i][j] x_j``."""
        n = self.nvars
        if len(matrix) != n:
            raise ValueError("substitution matrix has wrong size")
        forms = [Poly(len(matrix[i]), {tuple(int(k == j) for k in range(len(matrix[i]))): matrix[i][j]
                                       for j in range(len(matrix[i]))}) for i in range(n)]
        m = len(matrix[0]) if n else 0
        powers = [{0: Poly.const(m, 1)} for _ in range(n)]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                best = max(k for k in cache if k < e)
                p = cache[best]
                for k in range(best + 1, e + 1):
                    p = p * forms[i]
                    cache[k] = p
            return cache[e]

        acc: dict = {}
        for exp, c in self.terms.items():
            t = Poly.const(m, c)
            for i, e in enumerate(exp):
                if e:
                    t = t * power(i, e)
            for e2, c2 in t.terms.items():
                acc[e2] = acc.get(e2, 0) + c2
        ring = self.ring
        if any(not is_exact(x) for row in matrix for x in row):
            ring = FLOAT
        return Poly._finish(m, acc, ring)

    def specialize(self, i: int, value) -> "Poly":
        """Set ``x_i = value`` and drop that variable."""
        terms: dict = {}
        exact = self.ring == EXACT and is_exact(value)
        for exp, c in self.terms.items():
            e = exp[:i] + exp[i + 1:]
            v = c * (value ** exp[i]) if exp[i] else c
            terms[e] = terms.get(e, 0) + v
        return Poly._finish(self.nvars - 1, terms, EXACT if exact else FLOAT)

    def homogenize(self, i: int, d: int | None = None) -> "Poly":
        """Insert a new variable at position ``i`` homogenizing to degree ``d``."""
        d = self.degree() if d is None else d
        terms = {}
        for exp, c in self.terms.items():
            terms[exp[:i] + (d - sum(exp),) + exp[i:]] = c
        return Poly._raw(self.nvars + 1, terms, self.ring)

    # serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vars": self.nvars,
            "ring": self.ring,
            "terms": [
                {"exp": list(e), **scalar_to_json(c, self.ring)} for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "Poly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        ring = obj.get("ring", EXACT)
        if ring not in (EXACT, FLOAT):
            raise ValueError(f"unknown ring {ring!r}")
        n = int(obj["vars"])
        terms = [(tuple(t["exp"]), scalar_from_json(t, ring)) for t in obj["terms"]]
        return cls(n, terms, ring)

    def __repr__(self):
        return f"Poly({self.nvars}, {self.format()})"

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = ("x", "y", "z") if self.nvars <= 3 else tuple(f"x{i + 1}" for i in range(self.nvars))
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exp) if e
            )
            if isinstance(c, complex):
                cs = f"({c.real:.12g}{c.imag:+.12g}j)"
            elif isinstance(c, QQi):
                cs = f"({c.re}{'+' if c.im >= 0 else '-'}{abs(c.im)}*i)"
            else:
                cs = str(c)
            if mono:
                parts.append(mono if cs == "1" else ("-" + mono if cs == "-1" else f"{cs}*{mono}"))
            else:
                parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ")


# module-level operations --------------------------------------------------

def evaluate(p: Poly, point: Sequence):
    return p.evaluate(point)


def partial_derivative(p: Poly, i: int) -> Poly:
    return p.partial(i)


def substitute(p: Poly, matrix) -> Poly:
    return p.substitute(matrix)


MAX_HESSIAN_VARS = 5


def hessian_matrix(p: Poly) -> list[list[Poly]]:
    grad = p.gradient()
    return [[grad[i].partial(j) for j in range(p.nvars)] for i in range(p.nvars)]


def hessian_det(p: Poly, max_vars: int = MAX_HESSIAN_VARS) -> Poly:
    """Determinant of the matrix of second partials.

    Fraction-free elimination over the polynomial ring, so the result is
    exact for exact input.
    """
    if p.nvars > max_vars:
        raise ValueError(f"hessian_det supports at most {max_vars} variables, got {p.nvars}")
    if not p.is_homogeneous():
        raise ValueError("hessian_det expects a homogeneous polynomial")
    det = linalg.bareiss_det(hessian_matrix(p), divide=lambda a, b: a.exact_div(b))
    if not isinstance(det, Poly):
        det = Poly.const(p.nvars, det, p.ring)
    return det


def _coordinate_change_for(alpha: Poly):
    """Matrix ``S`` such that ``p(S y)`` is ``p`` written in coordinates with
    ``y_i = alpha(x)`` for the pivot index ``i`` and ``y_j = x_j`` otherwise."""
    if alpha.is_zero() or not alpha.is_homogeneous(1):
        raise ValueError("alpha must be a nonzero linear form")
    n = alpha.nvars
    coeffs = [alpha.coefficient(tuple(int(k == j) for k in range(n))) for j in range(n)]
    i = max(range(n), key=lambda j: (abs(complex(coeffs[j])), -j))
    if alpha.ring == EXACT:
        div = exact_div
    else:
        coeffs = [complex(c) for c in coeffs]
        div = lambda a, b: a / b  # noqa: E731
    m = [[1 if j == row else 0 for j in range(n)] for row in range(n)]
    m[i] = [div(1, coeffs[i]) if j == i else div(-coeffs[j], coeffs[i]) for j in range(n)]
    return m, i


def divides_power(p: Poly, alpha: Poly, tol: float = 1e-9) -> int:
    """Largest ``e`` with ``alpha**e`` dividing ``p``.

    The coordinate change sending ``alpha`` to a coordinate ``y_i`` turns the
    question into the smallest power of ``y_i`` across the terms.  For float
    polynomials, terms below ``tol`` times the largest coefficient are
    treated as zero.
    """
    if p.is_zero():
        raise ValueError("zero polynomial is divisible by every power")
    m, i = _coordinate_change_for(alpha)
    q = p.substitute(m)
    if q.ring == EXACT:
        return min(e[i] for e in q.terms)
    cutoff = tol * q.max_abs_coeff()
    return min(e[i] for e, c in q.terms.items() if abs(c) > cutoff)


def monomials(nvars: int, d: int):
    """All exponent vectors of total degree ``d`` in grlex-descending order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        exp = [0] * nvars
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    return sorted(set(out), key=grlex_key, reverse=True)


def euler_check(p: Poly) -> bool:
    """``sum x_i * df/dx_i == deg * f`` for homogeneous ``p``."""
    d = p.degree()
    acc = Poly.zero(p.nvars, p.ring)
    for i in range(p.nvars):
        acc = acc + Poly.var(p.nvars, i) * p.partial(i)
    return acc == p.scale(d) if p.ring == EXACT else acc.allclose(p.scale(d))


def random_invertible_integer_matrix(n: int, rng: np.random.Generator, bound: int = 3):
    while True:
        m = rng.integers(-bound, bound + 1, size=(n, n)).tolist()
        if linalg.exact_rank(m) == n:
            return [[int(x) for x in row] for row in m]
