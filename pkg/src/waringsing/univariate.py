"""Univariate kernel: roots with multiplicities, gcd, resultants, and
factorization of binary forms into linear factors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from . import linalg
from .poly import Poly
from .scalars import EXACT, FLOAT, QQi, exact_div, is_exact, normalize

DEFAULT_TOL = 1e-9


class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``u**i``."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Sequence, ring: str | None = None):
        exact = ring != FLOAT and all(is_exact(c) for c in coeffs)
        if exact:
            cs = [normalize(c) for c in coeffs]
        else:
            cs = [complex(c) for c in coeffs]
            if not all(math.isfinite(c.real) and math.isfinite(c.imag) for c in cs):
                raise ValueError("non-finite coefficient")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "ring", EXACT if exact else FLOAT)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def from_roots(cls, roots: Sequence, lead=1) -> "UniPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @classmethod
    def from_poly(cls, p: Poly, var: int = 0) -> "UniPoly":
        """Read a polynomial that only involves variable ``var``."""
        deg = max(p.degree_in(var), 0)
        cs: list = [0] * (deg + 1)
        for exp, c in p.terms.items():
            if any(e for i, e in enumerate(exp) if i != var):
                raise ValueError("polynomial involves other variables")
            cs[exp[var]] = c
        return cls(cs, p.ring)

    @property
    def is_exact(self) -> bool:
        return self.ring == EXACT

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return normalize(acc) if (self.is_exact and is_exact(acc)) else acc

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)})"

    def __add__(self, other):
        other = _as_uni(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)], _join(self, other))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.ring)

    def __sub__(self, other):
        return self + (-_as_uni(other))

    def __mul__(self, other):
        other = _as_uni(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], _join(self, other))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, _join(self, other))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = UniPoly([1], self.ring)
        for _ in range(e):
            result = result * self
        return result

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.ring)

    def divmod(self, other: "UniPoly"):
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        exact = self.is_exact and other.is_exact
        div = exact_div if exact else (lambda a, b: complex(a) / complex(b))
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([], self.ring), self
        quot = [0] * (dq + 1)
        lc = other.coeffs[-1]
        for k in range(dq, -1, -1):
            q = div(rem[k + len(other.coeffs) - 1], lc)
            quot[k] = q
            if q != 0:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - q * c
            rem[k + len(other.coeffs) - 1] = 0
        ring = EXACT if exact else FLOAT
        return UniPoly(quot, ring), UniPoly(rem[: len(other.coeffs) - 1], ring)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_quotient(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if r.coeffs:
            raise ArithmeticError("univariate division is not exact")
        return q

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if self.is_exact:
            return UniPoly([exact_div(c, lc) for c in self.coeffs], EXACT)
        return UniPoly([c / lc for c in self.coeffs], FLOAT)

    def to_float(self) -> "UniPoly":
        return UniPoly([complex(c) for c in self.coeffs], FLOAT)

    def scale_norm(self, x: complex) -> float:
        """Sum of |c_i| |x|^i: the natural size of ``self(x)``."""
        ax = abs(x)
        return sum(abs(complex(c)) * ax ** i for i, c in enumerate(self.coeffs))


def _as_uni(x) -> UniPoly:
    return x if isinstance(x, UniPoly) else UniPoly([x])


def _join(a: UniPoly, b: UniPoly) -> str:
    return EXACT if a.is_exact and b.is_exact else FLOAT


# roots ---------------------------------------------------------------------

@dataclass(frozen=True)
class RootCluster:
    value: complex
    multiplicity: int
    radius: float = 0.0
    ill_conditioned: bool = False
    exact_value: object = None


def _exact_size(c) -> Fraction:
    if hasattr(c, "im"):
        return abs(c.re) + abs(c.im)
    return abs(Fraction(c))


def _float_coeffs(g: UniPoly) -> np.ndarray:
    """Coefficients (high to low) as complex128, rescaled to avoid overflow."""
    cs = g.coeffs
    if g.is_exact:
        big = max(_exact_size(c) for c in cs)
        cs = [exact_div(c, big) for c in cs]
    return np.array([complex(c) for c in reversed(cs)], dtype=complex)


def _polish(g: UniPoly, roots: np.ndarray, steps: int = 3) -> np.ndarray:
    cf = _float_coeffs(g)
    dcf = np.polyder(cf)
    out = roots.copy()
    for _ in range(steps):
        val = np.polyval(cf, out)
        der = np.polyval(dcf, out)
        ok = der != 0
        step = np.zeros_like(out)
        step[ok] = val[ok] / der[ok]
        out = out - step
    return out


def _simple_roots(g: UniPoly) -> list[complex]:
    if g.degree() < 1:
        return []
    if g.degree() == 1:
        a0, a1 = g.coeffs
        return [complex(-complex(a0) / complex(a1))]
    cf = _float_coeffs(g)
    raw = np.roots(cf)
    return list(_polish(g, raw))


def squarefree_decomposition(g: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm over Q(i): ``g = lc * prod P_i**i`` with monic,
    pairwise coprime, square-free ``P_i``."""
    if not g.is_exact:
        raise ValueError("squarefree_decomposition needs an exact polynomial")
    if g.degree() < 1:
        return []
    out = []
    dg = g.derivative()
    a = gcd_uni(g, dg)
    b = g.exact_quotient(a)
    c = dg.exact_quotient(a)
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        a = gcd_uni(b, d) if d.coeffs else b.monic()
        if a.degree() > 0:
            out.append((a.monic(), i))
        b = b.exact_quotient(a)
        c = d.exact_quotient(a) if d.coeffs else d
        d = c - b.derivative()
        i += 1
    return out


def univariate_roots(g: UniPoly, tol: float = DEFAULT_TOL) -> list[RootCluster]:
    """All complex roots of ``g`` with multiplicity.

    Exact input goes through a square-free decomposition so multiplicities
    are exact; roots of each square-free part come from companion-matrix
    eigenvalues polished by Newton steps.  Float input is clustered: nearby
    eigenvalues are merged when the cluster radius is consistent with the
    perturbation of an ``m``-fold root at relative tolerance ``tol`` and the
    first ``m-1`` derivatives vanish at the centroid.
    """
    if not g.coeffs:
        raise ValueError("univariate_roots of the zero polynomial")
    if g.degree() < 1:
        return []
    if g.is_exact:
        clusters = []
        for part, mult in squarefree_decomposition(g):
            if part.degree() == 1:
                r = normalize(-part.coeffs[0])
                clusters.append(RootCluster(complex(r), mult, 0.0, False, r))
            else:
                for r in _simple_roots(part):
                    clusters.append(RootCluster(complex(r), mult, 0.0, False, _rational_guess(part, r)))
        return _with_radii(sorted(clusters, key=lambda c: (round(c.value.real, 12), round(c.value.imag, 12))))
    return _cluster_float(g, tol)


def _rational_guess(part: UniPoly, r: complex, max_den: int = 10**6):
    """Exact Gaussian-rational root near ``r`` if there is one, else None."""
    guess = normalize(QQi(Fraction(r.real).limit_denominator(max_den),
                          Fraction(r.imag).limit_denominator(max_den)))
    return guess if part(guess) == 0 else None


def _with_radii(clusters: list[RootCluster]) -> list[RootCluster]:
    if len(clusters) < 2:
        return clusters
    vals = np.array([c.value for c in clusters])
    out = []
    for i, c in enumerate(clusters):
        dist = np.abs(vals - c.value)
        dist[i] = np.inf
        out.append(RootCluster(c.value, c.multiplicity, float(dist.min()) / 2,
                               c.ill_conditioned, c.exact_value))
    return out


def _derivative_residual(cf: np.ndarray, c: complex, j: int) -> float:
    """Relative size of the j-th Taylor coefficient of the polynomial at c."""
    d = cf
    for _ in range(j):
        d = np.polyder(d)
    val = abs(np.polyval(d, c)) / math.factorial(j)
    deg = len(cf) - 1
    ac = max(abs(c), 1.0)
    size = sum(abs(cf[deg - i]) * math.comb(i, j) * ac ** (i - j) for i in range(j, deg + 1))
    return val / size if size else 0.0


def _cluster_float(g: UniPoly, tol: float) -> list[RootCluster]:
    cf = _float_coeffs(g)
    raw = np.roots(cf)
    n = len(raw)
    eff = max(tol, 1e-15)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def members(root):
        return [k for k in range(n) if find(k) == root]

    pairs = sorted((abs(raw[i] - raw[j]), i, j) for i in range(n) for j in range(i + 1, n))
    for dist, i, j in pairs:
        ri, rj = find(i), find(j)
        if ri == rj:
            continue
        group = members(ri) + members(rj)
        m = len(group)
        centre = raw[group].mean()
        radius = float(np.max(np.abs(raw[group] - centre)))
        limit = 10 * eff ** (1.0 / m) * max(abs(centre), 1.0)
        if radius > limit:
            continue
        if all(_derivative_residual(cf, centre, k) <= math.sqrt(eff) for k in range(m)):
            parent[rj] = ri
    clusters = []
    for root in sorted({find(k) for k in range(n)}):
        group = members(root)
        centre = complex(raw[group].mean())
        radius = float(np.max(np.abs(raw[group] - centre))) if len(group) > 1 else 0.0
        limit = 10 * eff ** (1.0 / len(group)) * max(abs(centre), 1.0)
        ill = len(group) > 1 and radius > 0.1 * limit
        if len(group) == 1:
            centre = complex(_polish(g, np.array([centre]))[0])
        clusters.append(RootCluster(centre, len(group), radius, ill))
    return sorted(clusters, key=lambda c: (round(c.value.real, 12), round(c.value.imag, 12)))


# gcd and resultants ---------------------------------------------------------

def _prem(a: UniPoly, b: UniPoly) -> UniPoly:
    """Pseudo-remainder ``lc(b)**(deg a - deg b + 1) * a mod b``."""
    delta = a.degree() - b.degree()
    lc = b.lc()
    scaled = UniPoly([c * lc ** (delta + 1) for c in a.coeffs], EXACT)
    return scaled.divmod(b)[1]


def _subresultant_gcd(g: UniPoly, h: UniPoly) -> UniPoly:
    a, b = (g, h) if g.degree() >= h.degree() else (h, g)
    if not b.coeffs:
        return a
    gg, hh = 1, 1
    while True:
        delta = a.degree() - b.degree()
        r = _prem(a, b)
        if not r.coeffs:
            return b
        if r.degree() == 0:
            return UniPoly([1], EXACT)
        denom = normalize(gg * hh ** delta)
        a, b = b, UniPoly([exact_div(c, denom) for c in r.coeffs], EXACT)
        gg = a.lc()
        if delta:
            hh = exact_div(gg ** delta, hh ** (delta - 1))


def gcd_uni(g: UniPoly, h: UniPoly, tol: float = DEFAULT_TOL) -> UniPoly:
    """Monic gcd.

    Exact rings use the subresultant remainder sequence; float rings match
    root clusters of ``g`` against ``h`` by relative residual.
    """
    if not g.coeffs or not h.coeffs:
        raise ValueError("gcd_uni needs nonzero inputs")
    if g.is_exact and h.is_exact:
        return _subresultant_gcd(g, h).monic()
    g, h = g.to_float(), h.to_float()
    if g.degree() == 0 or h.degree() == 0:
        return UniPoly([1], FLOAT)
    gcd_roots = []
    hr = univariate_roots(h, tol)
    for cl in univariate_roots(g, tol):
        if abs(h(cl.value)) > tol * max(h.scale_norm(cl.value), 1e-300):
            continue
        # multiplicity in h: nearest h-cluster
        near = min(hr, key=lambda c: abs(c.value - cl.value))
        gcd_roots.extend([cl.value] * min(cl.multiplicity, near.multiplicity))
    return UniPoly.from_roots(gcd_roots).to_float()


def sylvester_matrix(g_desc: Sequence, h_desc: Sequence, zero=0) -> list[list]:
    """Sylvester matrix from coefficient lists in descending order.

    The ``g`` block (``deg h`` shifted rows) comes first, then the ``h``
    block (``deg g`` rows).
    """
    m, n = len(g_desc) - 1, len(h_desc) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(g_desc) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(h_desc) + [zero] * (size - n - 1 - i))
    return rows


def resultant_uni(g: UniPoly, h: UniPoly, deg_g: int | None = None, deg_h: int | None = None):
    """Determinant of the Sylvester matrix of ``g`` and ``h`` at their formal
    degrees (g-rows first)."""
    deg_g = g.degree() if deg_g is None else deg_g
    deg_h = h.degree() if deg_h is None else deg_h
    if deg_g < g.degree() or deg_h < h.degree():
        raise ValueError("formal degree below actual degree")
    if deg_g <= 0 and deg_h <= 0:
        raise ValueError("resultant of two constants is undefined")
    g_desc = list(reversed(g.coeffs + (0,) * (deg_g + 1 - len(g.coeffs))))
    h_desc = list(reversed(h.coeffs + (0,) * (deg_h + 1 - len(h.coeffs))))
    return linalg.det(sylvester_matrix(g_desc, h_desc))


# binary forms ---------------------------------------------------------------

def _binary_dehomogenize(h: Poly) -> tuple[UniPoly, int]:
    if h.nvars != 2 or h.is_zero() or not h.is_homogeneous():
        raise ValueError("expected a nonzero homogeneous binary form")
    deg = h.degree()
    cs: list = [0] * (deg + 1)
    for (ex, _ey), c in h.terms.items():
        cs[ex] = c
    u = UniPoly(cs, h.ring)
    return u, deg - u.degree()


def binary_factor(h: Poly, tol: float = DEFAULT_TOL) -> list[tuple[tuple, int]]:
    """Linear factors ``(alpha, beta) -> alpha*x + beta*y`` with multiplicity.

    Factors are ``x - r*y`` for the roots ``r`` of ``h(x, 1)`` plus ``y`` for
    the root at infinity; exact coefficients are kept when a root is rational
    (or Gaussian rational) in exact mode.
    """
    u, at_infinity = _binary_dehomogenize(h)
    out = []
    for cl in univariate_roots(u, tol):
        r = cl.exact_value if cl.exact_value is not None else cl.value
        out.append(((1, normalize(-r) if is_exact(r) else -complex(r)), cl.multiplicity))
    if at_infinity:
        out.append(((0, 1), at_infinity))
    return out


def _homogenize_uni(u: UniPoly, deg: int) -> Poly:
    return Poly(2, {(i, deg - i): c for i, c in enumerate(u.coeffs) if c != 0}, u.ring)


def perfect_power_test(h: Poly, tol: float = DEFAULT_TOL) -> tuple[int, Poly, object]:
    """Largest ``e`` with ``h = c * h1**e``; ``h1`` has leading coefficient 1.

    In exact mode ``h1`` is assembled from the exact square-free
    decomposition, so it stays exact even when the roots are irrational.
    """
    u, at_infinity = _binary_dehomogenize(h)
    if u.is_exact:
        parts = squarefree_decomposition(u)
        mults = [m for _, m in parts] + ([at_infinity] if at_infinity else [])
        e = reduce(math.gcd, mults) if mults else 1
        base = UniPoly([1], EXACT)
        for part, m in parts:
            base = base * part ** (m // e)
    else:
        clusters = univariate_roots(u, tol)
        mults = [c.multiplicity for c in clusters] + ([at_infinity] if at_infinity else [])
        e = reduce(math.gcd, mults) if mults else 1
        base = UniPoly.from_roots([c.value for c in clusters for _ in range(c.multiplicity // e)]).to_float()
    deg1 = h.degree() // e
    h1 = _homogenize_uni(base, deg1)
    c = h.leading_term()[1]
    lead1 = h1.leading_term()[1]
    c = exact_div(c, lead1 ** e) if (h.is_exact and h1.is_exact) else complex(c) / complex(lead1) ** e
    return e, h1, c
