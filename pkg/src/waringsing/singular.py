"""Singular points of the canonical rank-(n+1) hypersurfaces and of plane
curves: system (S), a resultant-based point finder, Milnor numbers and
A_m classification."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .errors import CheckMismatch, NonReducedError, PreconditionError
from .poly import Poly
from .scalars import EXACT, FLOAT, exact_div, is_exact, normalize
from .univariate import UniPoly, univariate_roots
from .waring import CanonicalForm

S_TOL = 1e-8
GRAD_TOL = 1e-8
ACCEPT_TOL = 1e-7
MAX_PLANE_DEGREE = 8


# system (S) -----------------------------------------------------------------

@dataclass(frozen=True)
class SystemS:
    """``g_j = a_k u_j**(d-1) - a_j`` (j < k) and
    ``g_k = a_k (a_1 u_1 + ... + a_{k-1} u_{k-1} + a_k)**(d-1) + 1``."""

    d: int
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if len(self.a) < 2:
            raise PreconditionError("system (S) needs k >= 2")
        if any(x == 0 for x in self.a):
            raise PreconditionError("all a_j must be nonzero")
        if self.d < 3:
            raise PreconditionError("degree must be at least 3")

    @property
    def k(self) -> int:
        return len(self.a)

    def g(self, u: Sequence) -> list:
        a, d = self.a, self.d
        ak = a[-1]
        out = [ak * u[j] ** (d - 1) - a[j] for j in range(self.k - 1)]
        out.append(ak * (sum(a[j] * u[j] for j in range(self.k - 1)) + ak) ** (d - 1) + 1)
        return out

    def scale(self, u: Sequence) -> float:
        """Size of the largest monomial of ``g_k`` at ``u``."""
        a = [abs(complex(x)) for x in self.a]
        lin = sum(a[j] * abs(u[j]) for j in range(self.k - 1)) + a[-1]
        return max(a[-1] * lin ** (self.d - 1), 1.0)


@dataclass(frozen=True)
class SolutionSet:
    solutions: tuple
    residuals: tuple
    borderline: tuple = ()

    @property
    def NS(self) -> int:
        return len(self.solutions)


def _all_roots(c: complex, m: int) -> list[complex]:
    r = abs(c) ** (1.0 / m)
    th = cmath.phase(c) / m
    return [r * cmath.exp(1j * (th + 2 * math.pi * t / m)) for t in range(m)]


def solve_system_S(sys: SystemS, tol: float = S_TOL) -> SolutionSet:
    """Enumerate the ``(d-1)**(k-1)`` candidates from the binomial equations
    and keep those where ``g_k`` vanishes to relative tolerance ``tol``.
    Candidates within a factor 10 of the threshold are reported as
    borderline."""
    a = [complex(x) for x in sys.a]
    m = sys.d - 1
    per_coord = [_all_roots(a[j] / a[-1], m) for j in range(sys.k - 1)]
    sols, res, border = [], [], []
    for u in itertools.product(*per_coord):
        val = abs(a[-1] * (sum(a[j] * u[j] for j in range(sys.k - 1)) + a[-1]) ** m + 1)
        limit = tol * sys.scale(u)
        if limit / 10 < val <= 10 * limit:
            border.append(tuple(u))
        if val <= limit:
            sols.append(tuple(u))
            res.append(val)
    return SolutionSet(tuple(sols), tuple(res), tuple(border))


# reports --------------------------------------------------------------------

@dataclass(frozen=True)
class SingularPoint:
    coords: tuple
    type: str
    mu: int
    tau: int | None
    corank: int
    borderline: bool = False

    def to_json(self) -> dict:
        return {
            "coords": [_float_json(c) for c in display_normalize(self.coords)],
            "type": self.type,
            "mu": self.mu,
            "tau": self.tau,
            "corank": self.corank,
            "borderline": self.borderline,
        }


@dataclass
class SingularityReport:
    singular: bool
    points: list = field(default_factory=list)
    mu_global: int = 0
    tau_global: int | None = 0
    NS: int | None = None
    k: int | None = None
    n: int | None = None
    d: int | None = None
    formula_check: bool | None = None
    components: int | None = None
    family: str | None = None
    note: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def type_label(self) -> str | None:
        if self.k is None:
            return None
        return type_label(self.n, self.k, self.d)

    def to_json(self) -> dict:
        out = {
            "singular": self.singular,
            "points": [p.to_json() for p in self.points],
            "mu_global": self.mu_global,
            "tau_global": self.tau_global,
            "NS": self.NS,
            "k": self.k,
            "formula_check": self.formula_check,
        }
        if self.n is not None:
            out["n"] = self.n
        if self.d is not None:
            out["d"] = self.d
        if self.k is not None:
            out["type_label"] = self.type_label
        if self.components is not None:
            out["components"] = self.components
        if self.family is not None:
            out["family"] = self.family
        if self.note is not None:
            out["note"] = self.note
        out.update(self.extra)
        return out


def _clean(x: float) -> float:
    x = round(x, 12)
    return 0.0 if x == 0 else x


def _float_json(c) -> dict:
    z = complex(c)
    return {"re": _clean(z.real), "im": _clean(z.imag)}


def display_normalize(p: Sequence) -> tuple:
    """Largest coordinate scaled to modulus 1, then the first nonzero
    coordinate rotated to be real positive."""
    z = [complex(c) for c in p]
    big = max(abs(c) for c in z)
    z = [c / big for c in z]
    first = next(c for c in z if abs(c) > 1e-12)
    rot = abs(first) / first
    return tuple(c * rot for c in z)


def projective_close(p: Sequence, q: Sequence, tol: float = 1e-6) -> bool:
    a = np.array(display_normalize(p))
    b = np.array(display_normalize(q))
    return float(np.max(np.abs(a - b))) <= tol


def type_label(n: int, k: int, d: int) -> str:
    """Name of ``v_1^2 + ... + v_{k-1}^2 + w_1^d + ... + w_{n-k}^d``."""
    if n == k:
        return "A1"
    if n - k == 1:
        return f"A{d - 1}"
    return f"A[2^{k - 1},{d}^{n - k}]"


def _abs_scale(p: Poly, point: Sequence) -> float:
    """Sum of absolute values of the monomials of ``p`` at ``point``."""
    mags = [abs(complex(v)) for v in point]
    total = 0.0
    for exp, c in p.terms.items():
        t = abs(complex(c))
        for m, e in zip(mags, exp):
            if e:
                t *= m ** e
        total += t
    return max(total, 1e-300)


def _residual(polys: Sequence[Poly], point: Sequence) -> float:
    """``max |p(point)|`` over homogeneous ``polys`` at the point scaled to unit
    max-modulus, relative to the largest coefficient 1-norm.

    Every monomial is at most 1 in modulus there, so this bounds the backward
    error; a monomial-by-monomial scale would blow up at coordinate points,
    where all terms vanish together.
    """
    polys = [g for g in polys if not g.is_zero()]
    if not polys:
        return 0.0
    q = [complex(c) for c in point]
    big = max(abs(c) for c in q)
    if big == 0:
        raise ValueError("the zero vector is not a projective point")
    q = [c / big for c in q]
    scale = max(sum(abs(complex(c)) for c in g.terms.values()) for g in polys)
    return max(abs(complex(g(q))) for g in polys) / scale


def gradient_residual(f: Poly, p: Sequence) -> float:
    """Largest partial derivative at the normalized point, relative to the
    monomial scale of the gradient."""
    q = [complex(c) for c in p]
    big = max(abs(c) for c in q)
    return _residual(f.gradient(), [c / big for c in q])


def analyze_rank_np1(cf: CanonicalForm, tol: float = S_TOL, f: Poly | None = None) -> SingularityReport:
    """Singular points of ``x_1^d + ... + x_n^d + (a_1 x_1 + ... + a_k x_k)^d``,
    reported in the coordinates of the original decomposition."""
    n, k, d = cf.n, cf.k, cf.d
    sol = solve_system_S(SystemS(d, cf.a), tol)
    canon = cf.poly()
    inv = np.array([[complex(x) for x in row] for row in cf.inverse])
    mu_p = (d - 1) ** (n - k)
    label = type_label(n, k, d)
    border = set(sol.borderline)
    points = []
    for u in sol.solutions:
        X = list(u) + [1] + [0] * (n - k)
        if gradient_residual(canon, X) > GRAD_TOL:
            raise CheckMismatch(f"gradient does not vanish at canonical point {X}")
        x = inv @ np.array(X, dtype=complex)
        if f is not None and gradient_residual(f, x) > GRAD_TOL:
            raise CheckMismatch(f"gradient of f does not vanish at {x.tolist()}")
        points.append(SingularPoint(tuple(complex(c) for c in x), label, mu_p, mu_p, n - k, u in border))
    points.sort(key=lambda p: _sort_key(p.coords))
    mu = sum(p.mu for p in points)
    report = SingularityReport(
        singular=bool(points),
        points=points,
        mu_global=mu,
        tau_global=mu,
        NS=sol.NS,
        k=k,
        n=n,
        d=d,
        formula_check=mu == sol.NS * (d - 1) ** (n - k),
    )
    if n == 3 and k == 2:
        from .families import suspension_components

        h = Poly(2, {e[:2]: c for e, c in canon.terms.items() if e[2] == 0}, canon.ring)
        report.components = suspension_components(h, d).e
    if sol.borderline:
        report.note = f"{len(sol.borderline)} borderline candidate(s) near the acceptance threshold"
    return report


def _sort_key(p: Sequence):
    return tuple((round(c.real, 9), round(c.imag, 9)) for c in display_normalize(p))


# plane curves ---------------------------------------------------------------

def _shears(seed: int, count: int = 8) -> tuple:
    """Deterministic rational orthogonal matrices ``(I - A)(I + A)^-1`` for
    small skew-symmetric integer ``A``: generic but well conditioned."""
    rng = np.random.default_rng(seed + 7919)
    out: list = []
    while len(out) < count:
        p, q, r = (int(v) for v in rng.integers(-3, 4, size=3))
        if min(abs(p), abs(q), abs(r)) == 0:
            continue
        A = [[0, p, q], [-p, 0, r], [-q, -r, 0]]
        plus = [[Fraction(int(i == j) + A[i][j]) for j in range(3)] for i in range(3)]
        minus = [[int(i == j) - A[i][j] for j in range(3)] for i in range(3)]
        inv = linalg.inverse(plus)
        Q = tuple(tuple(normalize(sum(minus[i][t] * inv[t][j] for t in range(3))) for j in range(3))
                  for i in range(3))
        if Q not in out:
            out.append(Q)
    return tuple(out)


def _y_table(p: Poly) -> list[dict]:
    """Coefficients of a polynomial in (X, Y) grouped by the power of Y."""
    deg = max(p.degree_in(1), 0)
    table: list[dict] = [dict() for _ in range(deg + 1)]
    for (ex, ey), c in p.terms.items():
        table[ey][ex] = c
    return table


def _fiber(table: list[dict], x0, exact: bool) -> UniPoly:
    cs = []
    for row in table:
        v = 0
        for e, c in row.items():
            v = v + (c if exact else complex(c)) * x0 ** e
        cs.append(v)
    return UniPoly(cs, EXACT if exact else FLOAT)


@dataclass(frozen=True)
class _ChartData:
    matrix: tuple
    inverse: np.ndarray
    G: Poly
    gx: Poly
    gy: Poly
    tx: tuple
    ty: tuple
    clusters: tuple


def _interpolate_exact(xs: list[int], ys: list) -> list:
    """Newton divided differences to monomial coefficients (low to high)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = exact_div(coef[i] - coef[i - 1], xs[i] - xs[i - j])
    poly = [0] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [0] * n
        for t in range(n - 1):
            new[t + 1] = new[t + 1] + poly[t]
            new[t] = new[t] - xs[i] * poly[t]
        new[0] = new[0] + coef[i]
        poly = [normalize(v) for v in new]
    return poly


def _resultant_at(tx, ty, x0, deg: int, exact: bool):
    from .univariate import resultant_uni

    return resultant_uni(_fiber(tx, x0, exact), _fiber(ty, x0, exact), deg, deg)


def _elimination_polynomial(tx, ty, deg: int, exact: bool) -> UniPoly:
    """``Res_Y(g_X, g_Y)`` as a polynomial in ``X`` by interpolation."""
    bound = deg * deg
    if exact:
        xs = list(range(bound + 1))
        vals = [_resultant_at(tx, ty, x, deg, True) for x in xs]
        coeffs = _interpolate_exact(xs, vals)
        res = UniPoly(coeffs, EXACT)
        for x in (-1, -2):
            if res(x) != _resultant_at(tx, ty, x, deg, True):
                raise CheckMismatch("elimination polynomial failed its verification points")
        return res
    # float: discrete Fourier interpolation on the unit circle
    N = bound + 1
    nodes = np.exp(2j * np.pi * np.arange(N) / N)
    vals = np.array([complex(_resultant_at(tx, ty, complex(z), deg, False)) for z in nodes])
    coeffs = np.fft.fft(vals) / N
    # fft computes sum v_m w^{-jm}, matching c_j for nodes w^m
    big = np.max(np.abs(coeffs)) if N else 0.0
    coeffs[np.abs(coeffs) <= 1e-13 * big] = 0
    return UniPoly(list(coeffs), FLOAT)


@lru_cache(maxsize=256)
def _chart(f: Poly, matrix: tuple, tol: float):
    """Eliminant data for ``f`` in the sheared chart ``Z = 1``; None when the
    shear is degenerate for the projection."""
    d = f.degree()
    M = [list(row) for row in matrix]
    G = f.substitute(M)
    gx = G.partial(0).specialize(2, 1)
    gy = G.partial(1).specialize(2, 1)
    tx, ty = _y_table(gx), _y_table(gy)
    deg = d - 1
    if len(tx) != deg + 1 or len(ty) != deg + 1 or not tx[deg] or not ty[deg]:
        return None
    exact = G.ring == EXACT
    res = _elimination_polynomial(tuple(tx), tuple(ty), deg, exact)
    if not res.coeffs:
        return "zero"
    clusters = tuple(univariate_roots(res, tol)) if res.degree() > 0 else ()
    inv = np.linalg.inv(np.array(M, dtype=float))
    return _ChartData(matrix, inv, G, gx, gy, tuple(tx), tuple(ty), clusters)


def _usable_charts(f: Poly, seed: int, tol: float):
    zeros = 0
    for M in _shears(seed):
        data = _chart(f, M, tol)
        if data is None:
            continue
        if data == "zero":
            zeros += 1
            if zeros >= 2:
                raise NonReducedError("curve is not reduced: the eliminant vanishes identically in two independent charts")
            continue
        yield data


def _fiber_points(data: _ChartData, x0: complex, tol: float) -> list[complex]:
    """``y`` values with ``g_X = g_Y = g = 0`` over ``X = x0``."""
    ux = _fiber(data.tx, x0, False)
    if ux.degree() < 1:
        return []
    out = []
    G = data.G
    for cl in univariate_roots(ux, tol):
        y0 = cl.value
        pt = (x0, y0, 1.0)
        if _residual([data.G.partial(0), data.G.partial(1), G], pt) <= ACCEPT_TOL:
            out.append(y0)
    return out


def _critical_fiber(data: _ChartData, x0: complex, tol: float) -> list[complex]:
    """``y`` values with ``g_X = g_Y = 0`` over ``X = x0`` (on or off the curve)."""
    ux = _fiber(data.tx, x0, False)
    gy = data.G.partial(1)
    out = []
    for cl in univariate_roots(ux, tol):
        pt = (x0, cl.value, 1.0)
        if _residual([data.G.partial(0), gy], pt) <= ACCEPT_TOL:
            out.append(cl.value)
    return out


def _newton_polish(G: Poly, x0: complex, y0: complex, steps: int = 4):
    gx, gy = G.partial(0), G.partial(1)
    H = [[gx.partial(0), gx.partial(1)], [gy.partial(0), gy.partial(1)]]
    x, y = x0, y0
    best = _residual([gx, gy], (x, y, 1.0))
    for _ in range(steps):
        pt = (x, y, 1.0)
        J = np.array([[complex(h(pt)) for h in row] for row in H])
        if np.linalg.cond(J) > 1e8:
            break
        F = np.array([complex(gx(pt)), complex(gy(pt))])
        dx, dy = np.linalg.solve(J, F)
        r = _residual([gx, gy], (x - dx, y - dy, 1.0))
        if r >= best:
            break  # near-degenerate Jacobian: steps no longer help
        x, y, best = x - dx, y - dy, r
    return x, y


def _line_at_infinity(G: Poly, tol: float) -> list[tuple]:
    """Singular points on ``Z = 0`` of the sheared curve."""
    partials = [g.specialize(2, 0) for g in G.gradient()]  # binary forms in X, Y
    cands = [(1.0, 0.0)]
    base = next((p for p in partials if not p.is_zero()), None)
    if base is None:
        raise NonReducedError("curve is not reduced: singular along a whole line")
    u = UniPoly([base.terms.get((i, base.degree() - i), 0) for i in range(base.degree() + 1)], base.ring)
    if u.coeffs and u.degree() > 0:
        cands += [(cl.value, 1.0) for cl in univariate_roots(u, tol)]
    out = []
    for X, Y in cands:
        pt = (complex(X), complex(Y), 0.0)
        if _residual(G.gradient(), pt) <= ACCEPT_TOL:
            out.append(pt)
    return out


def _check_plane(f: Poly):
    if f.nvars != 3 or not f.is_homogeneous():
        raise PreconditionError("expected a homogeneous polynomial in 3 variables")
    d = f.degree()
    if d < 2 or d > MAX_PLANE_DEGREE:
        raise PreconditionError(f"plane curve degree must be between 2 and {MAX_PLANE_DEGREE}, got {d}")


def plane_singular_points(f: Poly, tol: float = 1e-9, seed: int = 0) -> list[tuple]:
    """Singular points of the plane curve ``f = 0`` by resultant elimination
    in a sheared affine chart plus a sweep of its line at infinity."""
    _check_plane(f)
    data = next(_usable_charts(f, seed, tol), None)
    if data is None:
        raise CheckMismatch("no usable chart among the generated shears")
    M = np.array(data.matrix, dtype=float)
    found: list[np.ndarray] = []
    for cl in data.clusters:
        x0 = cl.value
        for y0 in _fiber_points(data, x0, tol):
            x1, y1 = _newton_polish(data.G, x0, y0)
            found.append(M @ np.array([x1, y1, 1.0]))
    for pt in _line_at_infinity(data.G, tol):
        found.append(M @ np.array(pt))
    points: list[tuple] = []
    for p in found:
        q = display_normalize(tuple(p))
        if not any(projective_close(q, r) for r in points):
            points.append(q)
    points = [p for p in points if gradient_residual(f, p) <= ACCEPT_TOL]
    return sorted(points, key=_sort_key)


def _require_singular(f: Poly, p: Sequence, tol: float = ACCEPT_TOL):
    if gradient_residual(f, p) > tol:
        raise PreconditionError(f"point {tuple(p)} is not a singular point")


def _milnor_in_chart(data: _ChartData, p: Sequence, tol: float) -> int | None:
    P = data.inverse @ np.array([complex(c) for c in p])
    if abs(P[2]) <= 1e-6 * np.max(np.abs(P)):
        return None
    x0, y0 = P[0] / P[2], P[1] / P[2]
    if not data.clusters:
        return None
    near = min(data.clusters, key=lambda c: abs(c.value - x0))
    if abs(near.value - x0) > 1e-5 * max(1.0, abs(x0)):
        return None
    fiber = _critical_fiber(data, near.value, tol)
    if len(fiber) != 1 or abs(fiber[0] - y0) > 1e-4 * max(1.0, abs(y0)):
        return None  # projection not generic over this point
    return near.multiplicity


def local_milnor(f: Poly, p: Sequence, tol: float = 1e-9, seed: int = 0) -> int:
    """Intersection multiplicity of the partials at ``p``, read from the
    eliminant in two generic charts that must agree."""
    _check_plane(f)
    _require_singular(f, p)
    values = []
    for data in _usable_charts(f, seed, tol):
        m = _milnor_in_chart(data, p, tol)
        if m is not None:
            values.append(m)
            if len(values) == 2:
                break
    if len(values) < 2:
        raise CheckMismatch(f"could not find two generic charts at {tuple(p)}")
    if values[0] != values[1]:
        raise CheckMismatch(f"Milnor number depends on the chart: {values[0]} vs {values[1]}")
    return values[0]


def corank_at(f: Poly, p: Sequence, tol: float = 1e-7) -> int:
    """``(n-1) - rank`` of the Hessian of the local equation at ``p``."""
    n = f.nvars
    _require_singular(f, p)
    exact = f.ring == EXACT and all(is_exact(c) for c in p)
    mags = [abs(complex(c)) for c in p]
    i = max(range(n), key=lambda j: (mags[j], -j))
    if exact:
        q = [exact_div(c, p[i]) for c in p]
    else:
        q = [complex(c) / complex(p[i]) for c in p]
    idx = [j for j in range(n) if j != i]
    H = [[f.partial(j).partial(l) for l in idx] for j in idx]
    if exact:
        vals = [[h(q) for h in row] for row in H]
        return (n - 1) - linalg.exact_rank(vals)
    vals = np.array([[complex(h(q)) for h in row] for row in H])
    scale = max(_abs_scale(h, q) for row in H for h in row if not h.is_zero()) if any(
        not h.is_zero() for row in H for h in row) else 1.0
    sv = np.linalg.svd(vals, compute_uv=False)
    return (n - 1) - int(np.sum(sv > tol * scale))


def classify_plane_singularity(f: Poly, p: Sequence, tol: float = 1e-9, seed: int = 0) -> SingularPoint:
    """A_1 for corank 0, A_mu for corank 1, ``non-A`` otherwise."""
    c = corank_at(f, p)
    if c == 0:
        return SingularPoint(tuple(p), "A1", 1, 1, 0)
    if c == 1:
        mu = local_milnor(f, p, tol, seed)
        return SingularPoint(tuple(p), f"A{mu}", mu, mu, 1)
    mu = local_milnor(f, p, tol, seed)
    return SingularPoint(tuple(p), "non-A", mu, None, c)


def analyze_plane_curve(f: Poly, tol: float = 1e-9, seed: int = 0) -> SingularityReport:
    points = [classify_plane_singularity(f, p, tol, seed) for p in plane_singular_points(f, tol, seed)]
    mu = sum(p.mu for p in points)
    tau = None if any(p.tau is None for p in points) else sum(p.tau for p in points)
    return SingularityReport(singular=bool(points), points=points, mu_global=mu, tau_global=tau,
                             n=3, d=f.degree())


# Fermat sections ------------------------------------------------------------

@dataclass(frozen=True)
class SectionReport:
    smooth: bool
    points: tuple
    NH: int
    all_A1: bool

    def to_json(self) -> dict:
        return {
            "smooth": self.smooth,
            "points": [[_float_json(c) for c in display_normalize(p)] for p in self.points],
            "NH": self.NH,
            "all_A1": self.all_A1,
        }


def fermat_section_check(b: Sequence, d: int, tol: float = S_TOL) -> SectionReport:
    """The section of the Fermat hypersurface ``y_1^d + ... + y_{n+1}^d`` by
    ``sum b_j y_j = 0``, written as ``y_1^d + ... + y_n^d + (a . y)^d`` with
    ``a_j = -b_j / b_{n+1}``; every tangency point must be a node."""
    b = list(b)
    if len(b) < 4:
        raise PreconditionError("need n + 1 >= 4 coefficients")
    if any(x == 0 for x in b):
        raise PreconditionError("all hyperplane coefficients must be nonzero")
    n = len(b) - 1
    a = tuple(normalize(exact_div(-x, b[-1])) if is_exact(x) and is_exact(b[-1]) else -complex(x) / complex(b[-1])
              for x in b[:-1])
    ring = EXACT if all(is_exact(x) for x in a) else FLOAT
    eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    cf = CanonicalForm(n, d, n, a, eye, eye, tuple(range(n + 1)), ring)
    report = analyze_rank_np1(cf, tol)
    f = cf.poly()
    coranks = [corank_at(f, p.coords) for p in report.points]
    return SectionReport(not report.singular, tuple(p.coords for p in report.points), report.NS,
                         all(c == 0 for c in coranks))
