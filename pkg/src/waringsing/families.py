"""Named families: generalized Cayley hypersurfaces, suspensions
``h(x, y) + z^d`` and the rank-5 plane-curve shapes."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CheckMismatch, PreconditionError
from .poly import Poly
from .scalars import FLOAT, root_of_unity
from .singular import (
    classify_plane_singularity,
    corank_at,
    gradient_residual,
    plane_singular_points,
    projective_close,
)
from .univariate import binary_factor, perfect_power_test
from .waring import WaringDecomposition, arrangement_combinatorics, expand


# Cayley ---------------------------------------------------------------------

@dataclass(frozen=True)
class CayleySpec:
    n: int
    d: int

    def __post_init__(self):
        if self.n < 3:
            raise PreconditionError("Cayley hypersurfaces need n >= 3")
        if self.d < 3 or self.d % 2 == 0:
            raise PreconditionError(f"Cayley hypersurfaces need odd d >= 3, got {self.d}")


def cayley_form(spec: CayleySpec) -> Poly:
    """``(n-2)^(d-1) (x_1^d + ... + x_n^d) - (x_1 + ... + x_n)^d``."""
    n, d = spec.n, spec.d
    power_sum = Poly.zero(n)
    for i in range(n):
        power_sum = power_sum + Poly.var(n, i) ** d
    return power_sum.scale((n - 2) ** (d - 1)) - Poly.linear([1] * n) ** d


def cayley_expected_nodes(spec: CayleySpec) -> list[tuple]:
    n, d = spec.n, spec.d
    if n > 3:
        return [tuple(-1 if j == i else 1 for j in range(n)) for i in range(n)]
    pts: list[tuple] = []
    for t in range(d - 1):
        u = root_of_unity(t, d - 1)
        for p in ((1, u, -u), (u, 1, -u), (u, -u, 1)):
            p = tuple(complex(c) for c in p)
            if not any(projective_close(p, q, 1e-9) for q in pts):
                pts.append(p)
    return pts


@dataclass(frozen=True)
class CayleyReport:
    d: int
    quotient: Poly
    quotient_smooth: bool
    nodes: tuple
    expected: tuple
    types: tuple

    @property
    def ok(self) -> bool:
        return self.quotient_smooth and len(self.nodes) == 3 * (self.d - 2) and all(t == "A1" for t in self.types)


def verify_cayley_curve(d: int, tol: float = 1e-9, seed: int = 0) -> CayleyReport:
    """Check ``f = (x+y)(x+z)(y+z) g`` with ``g`` smooth and that the nodes
    of ``f`` are the predicted ``3(d-2)`` points, all of type A1."""
    spec = CayleySpec(3, d)
    f = cayley_form(spec)
    lines = Poly.linear([1, 1, 0]) * Poly.linear([1, 0, 1]) * Poly.linear([0, 1, 1])
    try:
        g = f.exact_div(lines)
    except ArithmeticError as exc:
        raise CheckMismatch("(x+y)(x+z)(y+z) does not divide the Cayley curve") from exc
    smooth = True if g.degree() < 2 else not plane_singular_points(g, tol, seed)
    if not smooth:
        raise CheckMismatch("the residual curve g is singular")
    expected = cayley_expected_nodes(spec)
    nodes = plane_singular_points(f, tol, seed)
    if len(nodes) != len(expected):
        raise CheckMismatch(f"found {len(nodes)} singular points, expected {len(expected)}")
    for p in expected:
        if not any(projective_close(p, q, 1e-9) for q in nodes):
            raise CheckMismatch(f"predicted node {p} not found")
    types = tuple(classify_plane_singularity(f, p, tol, seed).type for p in nodes)
    bad = [p for p, t in zip(nodes, types) if t != "A1"]
    if bad:
        raise CheckMismatch(f"node {bad[0]} is not of type A1")
    return CayleyReport(d, g, smooth, tuple(nodes), tuple(expected), types)


def verify_cayley_hypersurface(spec: CayleySpec) -> bool:
    """For ``n >= 4``: gradient vanishing and corank 0 at the ``n`` predicted points."""
    f = cayley_form(spec)
    for p in cayley_expected_nodes(spec):
        if gradient_residual(f, p) > 1e-12:
            raise CheckMismatch(f"gradient does not vanish at {p}")
        if corank_at(f, p) != 0:
            raise CheckMismatch(f"{p} is not a node")
    return True


# suspensions ----------------------------------------------------------------

@dataclass(frozen=True)
class SuspensionAnalysis:
    e: int
    tag: str
    factors: tuple = ()
    intersection_points: tuple = ()
    residual: float = 0.0
    h1: Poly | None = None

    def to_json(self) -> dict:
        out = {"e": self.e, "tag": self.tag}
        if self.e == 2:
            out["factors"] = [p.to_json() for p in self.factors]
            out["intersection_points"] = [[{"re": complex(c).real, "im": complex(c).imag} for c in p]
                                          for p in self.intersection_points]
            out["residual"] = self.residual
        return out


def _lift(h: Poly) -> Poly:
    """Binary form as a ternary form not involving z."""
    return Poly(3, {e + (0,): c for e, c in h.terms.items()}, h.ring)


def suspension_components(h: Poly, d: int, tol: float = 1e-9) -> SuspensionAnalysis:
    """Number of irreducible components of ``h(x, y) + z^d = 0``: two exactly
    when ``d`` is even and ``h = c h1^2`` with ``h1`` square-free."""
    if h.nvars != 2 or h.is_zero() or not h.is_homogeneous(d):
        raise PreconditionError(f"expected a nonzero binary form of degree {d}")
    e, h1, c = perfect_power_test(h, tol)
    if e == 1:
        return SuspensionAnalysis(1, "irreducible: h is not a square")
    if d % 2:
        return SuspensionAnalysis(1, "irreducible: d is odd")
    roots = binary_factor(h1, tol)
    if e > 2 or any(m > 1 for _, m in roots):
        raise PreconditionError(f"h is c*h1^{e} with h1 not square-free: h + z^d is outside the reduced setting")
    dp = d // 2
    root_c = cmath.sqrt(complex(c))
    H1 = _lift(h1).scale(root_c)
    zpow = Poly.var(3, 2, FLOAT) ** dp
    plus, minus = H1 - zpow.scale(1j), H1 + zpow.scale(1j)
    f = _lift(h) + Poly.var(3, 2) ** d
    diff = plus * minus - f
    residual = diff.max_abs_coeff() / max(f.max_abs_coeff(), 1e-300)
    pts = []
    for (alpha, beta), _ in roots:
        # alpha x + beta y = 0  ->  (x : y) = (beta : -alpha)
        pts.append((complex(beta), -complex(alpha), 0j))
    if len(pts) != dp:
        raise CheckMismatch(f"found {len(pts)} intersection points, expected {dp}")
    return SuspensionAnalysis(2, "two smooth components", (minus, plus), tuple(pts), residual, h1)


# rank-5 plane curves --------------------------------------------------------

SHAPE_LABELS = {"T1": "5L-1", "T2": "5L-2", "T3": "5L-3", "T4": "5L-4"}
SHAPE_PARAMS = {
    "T1": ("a3", "b3", "a4", "b4"),
    "T2": ("a1", "b1", "a2", "b2"),
    "T3": ("a1", "b1", "a2", "b2", "c2"),
    "T4": ("a1", "b1", "c1", "a2", "b2", "c2"),
}


@dataclass(frozen=True)
class Rank5Shape:
    tag: str
    d: int
    params: dict = field(hash=False)

    def __post_init__(self):
        if self.tag not in SHAPE_PARAMS:
            raise PreconditionError(f"unknown shape {self.tag!r}")
        missing = [k for k in SHAPE_PARAMS[self.tag] if k not in self.params]
        if missing:
            raise PreconditionError(f"missing parameters {missing}")
        if any(self.params[k] == 0 for k in SHAPE_PARAMS[self.tag]):
            raise PreconditionError("all shape parameters must be nonzero")
        p = self.params
        if self.tag == "T3" and p["a2"] * p["b1"] - p["a1"] * p["b2"] == 0:
            raise PreconditionError("T3 needs a2*b1 != a1*b2")
        if self.tag == "T4":
            minors = (p["a1"] * p["b2"] - p["a2"] * p["b1"],
                      p["a1"] * p["c2"] - p["a2"] * p["c1"],
                      p["b1"] * p["c2"] - p["b2"] * p["c1"])
            if any(m == 0 for m in minors):
                raise PreconditionError("T4 needs m12, m13, m23 all nonzero")

    def forms(self) -> list[tuple]:
        p = self.params
        base = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        if self.tag == "T1":
            return [(1, 0, 0), (0, 1, 0), (p["a3"], p["b3"], 0), (p["a4"], p["b4"], 0), (0, 0, 1)]
        if self.tag == "T2":
            return base + [(p["a1"], p["b1"], 0), (p["a2"], 0, p["b2"])]
        if self.tag == "T3":
            return base + [(p["a1"], p["b1"], 0), (p["a2"], p["b2"], p["c2"])]
        return base + [(p["a1"], p["b1"], p["c1"]), (p["a2"], p["b2"], p["c2"])]

    def decomposition(self) -> WaringDecomposition:
        return WaringDecomposition(self.d, tuple(self.forms()))


def rank5_form(shape: Rank5Shape) -> Poly:
    """Expanded curve; the arrangement of the five lines must have the
    combinatorics belonging to the shape."""
    D = shape.decomposition()
    label = arrangement_combinatorics(D).label
    if label != SHAPE_LABELS[shape.tag]:
        raise PreconditionError(f"shape {shape.tag} expects arrangement {SHAPE_LABELS[shape.tag]}, got {label}")
    return expand(D)


def ex_t3_shape() -> Rank5Shape:
    t = -(0.25 ** (1.0 / 3.0))  # the real cube root of -1/4
    return Rank5Shape("T3", 3, {"a1": t, "b1": t, "a2": 1, "b2": -1, "c2": -1})


@dataclass(frozen=True)
class T3Conditions:
    cond1: complex
    cond2_literal: complex
    cond2_gradient: complex
    cond3: complex
    singular_at_p: bool
    tol: float = 1e-10

    def holds(self, value: complex) -> bool:
        return abs(value) <= self.tol

    def to_json(self) -> dict:
        def enc(z):
            z = complex(z)
            return {"value": {"re": z.real, "im": z.imag}, "zero": self.holds(z)}
        return {
            "cond1": enc(self.cond1),
            "cond2_literal": enc(self.cond2_literal),
            "cond2_gradient": enc(self.cond2_gradient),
            "cond3": enc(self.cond3),
            "singular_at_p": self.singular_at_p,
        }


def t3_conditions(shape: Rank5Shape, tol: float = 1e-10) -> T3Conditions:
    """Both versions of the second condition are evaluated, together with a
    direct gradient test at ``p = (-b2 : a2 : 0)``."""
    if shape.tag != "T3":
        raise PreconditionError("t3_conditions needs a T3 shape")
    p, d = shape.params, shape.d
    a1, b1, a2, b2, c2 = (complex(p[k]) for k in SHAPE_PARAMS["T3"])
    sign = (-1) ** d
    cond1 = b2 ** (d - 1) + a1 * (a1 * b2 - a2 * b1) ** (d - 1)
    cond2_literal = sign * b1 * b2 ** (d - 2) + a1 * a2 ** (d - 2)
    cond2_gradient = sign * b1 * b2 ** (d - 1) + a1 * a2 ** (d - 1)
    cond3 = c2 ** d + 1
    f = expand(shape.decomposition())
    singular = gradient_residual(f, (-b2, a2, 0)) <= tol
    return T3Conditions(cond1, cond2_literal, cond2_gradient, cond3, singular, tol)


# unit circle ----------------------------------------------------------------

def contains_one(values, tol: float = 1e-10) -> bool:
    """True when some value equals 1 within ``tol``."""
    return any(abs(complex(v) - 1) <= tol for v in values)


def _circle_pair(s: complex):
    """Unit ``v, w`` with ``v + w = s`` (needs ``0 < |s| <= 2``)."""
    r = abs(s)
    h = math.sqrt(max(0.0, 1 - r * r / 4))
    n = 1j * s / r
    return s / 2 + h * n, s / 2 - h * n


def unit_circle_check(samples: int = 10_000, seed: int = 0) -> bool:
    """Sample unit ``u, v, w`` with ``u + v + w = 1`` and check one of them
    is 1; also confirm four unit numbers can sum to 1 with none equal to 1."""
    if samples <= 0:
        raise PreconditionError("sample count must be positive")
    rng = np.random.default_rng(seed)
    done = 0
    while done < samples:
        u = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        s = 1 - u
        if abs(s) < 1e-12:
            continue
        v, w = _circle_pair(s)
        if abs(u + v + w - 1) > 1e-12 or not contains_one((u, v, w)):
            return False
        done += 1
    z = cmath.exp(2j * math.pi / 5)
    quad = [-z, -z ** 2, -z ** 3, -z ** 4]
    return abs(sum(quad) - 1) < 1e-12 and not contains_one(quad) and all(abs(abs(q) - 1) < 1e-12 for q in quad)
