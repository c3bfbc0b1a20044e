"""Waring decompositions, their expansion and canonical forms, and the
combinatorics of the induced line arrangement."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from . import linalg
from .errors import CheckMismatch, PreconditionError
from .poly import Poly, divides_power, hessian_det, monomials
from .scalars import (
    EXACT,
    FLOAT,
    RINGS,
    QQi,
    is_exact,
    normalize,
    scalar_from_json,
    scalar_to_json,
)
from .univariate import binary_factor

DEFAULT_TOL = 1e-9
#: bit budget for exact expansion coefficients
MAX_COEFF_BITS = 4096


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs or all(c == 0 for c in self.coeffs):
            raise PreconditionError("linear form must not be identically zero")

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def poly(self) -> Poly:
        return Poly.linear(self.coeffs)

    def __call__(self, point):
        return sum(c * v for c, v in zip(self.coeffs, point))


@dataclass(frozen=True)
class WaringDecomposition:
    """``f = l_1**d + ... + l_r**d``."""

    degree: int
    forms: tuple

    def __post_init__(self):
        forms = tuple(f if isinstance(f, LinearForm) else LinearForm(tuple(f)) for f in self.forms)
        object.__setattr__(self, "forms", forms)
        if self.degree < 3:
            raise PreconditionError(f"degree must be at least 3, got {self.degree}")
        if not forms:
            raise PreconditionError("a decomposition needs at least one form")
        if len({f.nvars for f in forms}) != 1:
            raise PreconditionError("all forms must have the same number of variables")

    @property
    def nvars(self) -> int:
        return self.forms[0].nvars

    @property
    def r(self) -> int:
        return len(self.forms)

    @property
    def ring(self) -> str:
        return EXACT if all(f.is_exact for f in self.forms) else FLOAT

    def matrix(self) -> list[list]:
        return [list(f.coeffs) for f in self.forms]

    @classmethod
    def from_json(cls, obj) -> "WaringDecomposition":
        if isinstance(obj, str):
            obj = json.loads(obj)
        ring = obj.get("ring", EXACT)
        forms = [tuple(scalar_from_json(c, ring) for c in row) for row in obj["forms"]]
        return cls(int(obj["degree"]), tuple(forms))

    def to_json(self) -> dict:
        ring = self.ring
        return {
            "degree": self.degree,
            "ring": ring,
            "forms": [[scalar_to_json(c, ring) for c in f.coeffs] for f in self.forms],
        }


def _check_budget(p: Poly, budget: int):
    if p.ring != EXACT:
        return
    for c in p.terms.values():
        parts = (c.re, c.im) if isinstance(c, QQi) else (Fraction(c),)
        for q in parts:
            if q.numerator.bit_length() > budget or q.denominator.bit_length() > budget:
                raise OverflowError(f"exact coefficient exceeds the {budget}-bit budget")


def expand(D: WaringDecomposition, max_bits: int = MAX_COEFF_BITS) -> Poly:
    """Sum of d-th powers by the multinomial theorem."""
    n, d = D.nvars, D.degree
    exps = monomials(n, d)
    # multinomial coefficients d! / prod(e_i!)
    multi = {e: math.factorial(d) // math.prod(math.factorial(k) for k in e) for e in exps}
    terms: dict = {}
    for form in D.forms:
        cs = form.coeffs
        for e in exps:
            t = multi[e]
            for c, k in zip(cs, e):
                if k:
                    t = t * c ** k
            if t != 0:
                terms[e] = terms.get(e, 0) + t
    p = Poly(n, terms, D.ring)
    _check_budget(p, max_bits)
    return p


def is_essential(D: WaringDecomposition, tol: float = DEFAULT_TOL) -> bool:
    """The forms span the whole space of linear forms."""
    return linalg.rank(D.matrix(), tol) == D.nvars


def _proportional(u: Sequence, v: Sequence, tol: float) -> bool:
    return linalg.rank([list(u), list(v)], tol) < 2


def check_pairwise_distinct(D: WaringDecomposition, tol: float = DEFAULT_TOL):
    for i, j in combinations(range(D.r), 2):
        if _proportional(D.forms[i].coeffs, D.forms[j].coeffs, tol):
            raise PreconditionError(f"forms {i} and {j} are proportional")


@dataclass(frozen=True)
class CanonicalForm:
    """``x_1**d + ... + x_n**d + (a_1 x_1 + ... + a_k x_k)**d`` together with
    the coordinate change ``X = matrix @ x`` that produces it."""

    n: int
    d: int
    k: int
    a: tuple
    matrix: tuple
    inverse: tuple
    permutation: tuple
    ring: str = EXACT

    def __post_init__(self):
        if self.ring not in RINGS:
            raise PreconditionError(f"unknown ring {self.ring!r}; expected one of {RINGS}")

    def poly(self) -> Poly:
        n, d = self.n, self.d
        total = Poly.zero(n, self.ring)
        for i in range(n):
            total = total + Poly.var(n, i) ** d
        ell = Poly.linear(list(self.a) + [0] * (n - self.k))
        return total + ell ** d

    def invariant(self):
        """``(k, sorted a_j**d)``: independent of the root-of-unity choice."""
        powers = [complex(x ** self.d) for x in self.a]
        return self.k, sorted(powers, key=lambda z: (round(z.real, 9), round(z.imag, 9)))

    def to_json(self) -> dict:
        ring = self.ring
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "a": [scalar_to_json(x, ring) for x in self.a],
            "matrix": [[scalar_to_json(x, ring) for x in row] for row in self.matrix],
            "inverse": [[scalar_to_json(x, ring) for x in row] for row in self.inverse],
            "permutation": list(self.permutation),
            "ring": ring,
        }

    @classmethod
    def from_json(cls, obj) -> "CanonicalForm":
        ring = obj.get("ring", EXACT)
        dec = lambda x: scalar_from_json(x, ring)  # noqa: E731
        return cls(
            n=int(obj["n"]),
            d=int(obj["d"]),
            k=int(obj["k"]),
            a=tuple(dec(x) for x in obj["a"]),
            matrix=tuple(tuple(dec(x) for x in row) for row in obj["matrix"]),
            inverse=tuple(tuple(dec(x) for x in row) for row in obj["inverse"]),
            permutation=tuple(obj["permutation"]),
            ring=ring,
        )


def canonicalize_rank_np1(D: WaringDecomposition, tol: float = DEFAULT_TOL) -> CanonicalForm:
    """Normal form of a decomposition with ``n + 1`` forms.

    The first index subset (lexicographic) of ``n`` independent forms becomes
    the coordinate system; the remaining form is rewritten in it and the
    coordinates with nonzero coefficient are moved to the front.
    """
    n, r = D.nvars, D.r
    if r != n + 1:
        raise PreconditionError(f"expected n + 1 = {n + 1} forms, got {r}")
    if not is_essential(D, tol):
        raise PreconditionError("decomposition is not essential: the forms do not span the space of linear forms")
    check_pairwise_distinct(D, tol)
    rows = D.matrix()
    exact = D.ring == EXACT
    for subset in combinations(range(r), n):
        sub = [rows[i] for i in subset]
        if linalg.rank(sub, tol) == n:
            break
    rest = next(i for i in range(r) if i not in subset)
    inv = linalg.inverse(sub)
    alpha = [sum(rows[rest][i] * inv[i][j] for i in range(n)) for j in range(n)]
    if exact:
        alpha = [normalize(x) for x in alpha]
        nonzero = [j for j in range(n) if alpha[j] != 0]
    else:
        alpha = [complex(x) for x in alpha]
        big = max(abs(x) for x in alpha)
        nonzero = [j for j in range(n) if abs(alpha[j]) > tol * big]
    k = len(nonzero)
    if k <= 1:
        raise PreconditionError("remaining form is proportional to a coordinate form (k <= 1, f not reduced)")
    order = nonzero + [j for j in range(n) if j not in nonzero]
    matrix = [list(sub[j]) for j in order]
    inverse = linalg.inverse(matrix)
    if not exact:
        matrix = [[complex(x) for x in row] for row in matrix]
        inverse = [[complex(x) for x in row] for row in inverse]
    return CanonicalForm(
        n=n,
        d=D.degree,
        k=k,
        a=tuple(alpha[j] for j in nonzero),
        matrix=tuple(tuple(row) for row in matrix),
        inverse=tuple(tuple(row) for row in inverse),
        permutation=tuple([subset[j] for j in order] + [rest]),
        ring=D.ring,
    )


def verify_canonical(D: WaringDecomposition, cf: CanonicalForm, rel: float = 1e-10) -> bool:
    """``expand(D)`` in the recorded coordinates equals the normal form."""
    moved = expand(D).substitute([list(row) for row in cf.inverse])
    target = cf.poly()
    if moved.ring == EXACT and target.ring == EXACT:
        return moved == target
    return moved.allclose(target, rel)


def dual_point(cf: CanonicalForm) -> tuple:
    """Coordinates ``(a_1 : ... : a_k : 0 : ... : 0 : -1)`` of the hyperplane
    spanned by the embedding, as a point of the dual projective space."""
    return tuple(cf.a) + (0,) * (cf.n - cf.k) + (-1,)


# Hessian-based recovery of k ------------------------------------------------

@dataclass(frozen=True)
class HessianRecovery:
    coordinates: frozenset
    k: int
    ambiguous: bool
    forms: tuple = ()
    powers: tuple = ()


def _normalize_projective(v: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(v)))
    return v / v[i]


def _rationalize(v: np.ndarray, max_den: int = 1000):
    out = []
    for z in v:
        re = Fraction(float(z.real)).limit_denominator(max_den)
        im = Fraction(float(z.imag)).limit_denominator(max_den)
        if abs(complex(float(re), float(im)) - z) > 1e-9:
            return None
        out.append(normalize(QQi(re, im)))
    return out


def _linear_factor_candidates(h: Poly, rng: np.random.Generator, tol: float) -> list[np.ndarray]:
    """Linear forms whose zero set lies in ``h = 0``, found by restricting
    ``h`` to random lines and joining root points."""
    n = h.nvars
    hf = h.to_float()
    restricted = []
    for _ in range(n - 1):
        p0 = rng.normal(size=n) + 1j * rng.normal(size=n)
        p1 = rng.normal(size=n) + 1j * rng.normal(size=n)
        line = [[complex(p0[i]), complex(p1[i])] for i in range(n)]
        binary = hf.substitute(line)
        pts = []
        for (alpha, beta), _mult in binary_factor(binary, tol):
            s, t = complex(beta), -complex(alpha)
            if alpha == 0:
                s, t = 1.0, 0.0
            pts.append(s * p0 + t * p1)
        restricted.append(pts)
    found: list[np.ndarray] = []
    scale = hf.norm1()
    for combo in _product(restricted):
        mat = np.array(combo)
        _, sv, vh = np.linalg.svd(mat)
        cand = _normalize_projective(vh[-1].conj())
        # test h on random points of the hyperplane cand = 0
        basis = np.linalg.svd(cand.reshape(1, -1))[2][1:].conj()
        ok = True
        for _ in range(3):
            pt = rng.normal(size=n - 1) @ basis
            pt = pt / np.max(np.abs(pt))
            if abs(hf(list(pt))) > 1e-7 * scale:
                ok = False
                break
        if ok and not any(np.allclose(cand, f, atol=1e-7) for f in found):
            found.append(cand)
    return found


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for tail in _product(lists[1:]):
            yield (head,) + tail


def recover_k_via_hessian(f: Poly, d: int, tol: float = DEFAULT_TOL, seed: int = 0) -> HessianRecovery:
    """Estimate ``k`` of a canonical form from the linear factors of its
    Hessian: coordinates ``x_j`` with ``j > k`` divide it to power ``d - 2``."""
    n = f.nvars
    if n > 4:
        raise PreconditionError("recover_k_via_hessian supports n <= 4")
    h = hessian_det(f)
    threshold = d - 2
    coords = []
    forms = []
    powers = []
    for j in range(n):
        e = divides_power(h, Poly.var(n, j), tol)
        if e >= threshold:
            coords.append(j)
            forms.append(tuple(int(i == j) for i in range(n)))
            powers.append(e)
    rng = np.random.default_rng(seed)
    extra = False
    for cand in _linear_factor_candidates(h, rng, tol):
        if np.count_nonzero(np.abs(cand) > 1e-9) == 1:
            continue  # coordinate forms were handled exactly above
        exact = _rationalize(cand) if h.ring == EXACT else None
        alpha = Poly.linear(exact) if exact is not None else Poly.linear([complex(z) for z in cand])
        if exact is not None and h.divmod(alpha)[1]:
            alpha = Poly.linear([complex(z) for z in cand])
        e = divides_power(h, alpha, 1e-7)
        if e >= threshold:
            extra = True
            forms.append(tuple(exact) if exact is not None else tuple(complex(z) for z in cand))
            powers.append(e)
    ambiguous = (n, d) == (3, 3) or extra
    return HessianRecovery(frozenset(coords), n - len(coords), ambiguous, tuple(forms), tuple(powers))


# line arrangements ----------------------------------------------------------

@dataclass(frozen=True)
class ArrangementCombinatorics:
    points: tuple  # (projective point, multiplicity)
    counts: dict = field(hash=False)
    label: str = "other"

    def to_json(self) -> dict:
        return {
            "points": [{"coords": [_jsonable(c) for c in p], "multiplicity": m} for p, m in self.points],
            "counts": {f"n{m}": c for m, c in sorted(self.counts.items(), reverse=True)},
            "label": self.label,
        }


def _jsonable(c):
    if is_exact(c):
        return scalar_to_json(c, EXACT)
    return scalar_to_json(c, FLOAT)


_LABELS = {
    (4, ((3, 1), (2, 3))): "4L-1",
    (4, ((2, 6),)): "4L-2",
    (5, ((4, 1), (2, 4))): "5L-1",
    (5, ((3, 2), (2, 4))): "5L-2",
    (5, ((3, 1), (2, 7))): "5L-3",
    (5, ((2, 10),)): "5L-4",
}


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def projective_normalize(p: Sequence) -> tuple:
    """Scale so the largest-magnitude coordinate (first on ties) is 1."""
    mags = [abs(complex(c)) for c in p]
    big = max(mags)
    i = next(j for j, m in enumerate(mags) if m >= big * (1 - 1e-12))
    piv = p[i]
    if all(is_exact(c) for c in p):
        from .scalars import exact_div
        return tuple(exact_div(c, piv) for c in p)
    return tuple(complex(c) / complex(piv) for c in p)


def arrangement_combinatorics(D: WaringDecomposition, tol: float = DEFAULT_TOL) -> ArrangementCombinatorics:
    """Intersection points of the line arrangement ``l_1 ... l_r = 0`` in P^2."""
    if D.nvars != 3:
        raise PreconditionError("arrangement combinatorics needs n = 3")
    if not is_essential(D, tol):
        raise PreconditionError("decomposition is not essential: the forms do not span the space of linear forms")
    check_pairwise_distinct(D, tol)
    exact = D.ring == EXACT
    lines = [f.coeffs for f in D.forms]
    points: list = []
    for i, j in combinations(range(D.r), 2):
        p = projective_normalize(_cross(lines[i], lines[j]))
        if exact:
            if p not in points:
                points.append(p)
        elif not any(max(abs(a - b) for a, b in zip(p, q)) <= tol for q in points):
            points.append(p)
    tallied = []
    for p in points:
        if exact:
            m = sum(1 for ln in lines if sum(c * v for c, v in zip(ln, p)) == 0)
        else:
            m = sum(1 for ln in lines
                    if abs(sum(complex(c) * v for c, v in zip(ln, p))) <= tol * max(abs(complex(c)) for c in ln) * 3)
        tallied.append((p, m))
    pairs = sum(math.comb(m, 2) for _, m in tallied)
    if pairs != math.comb(D.r, 2):
        raise CheckMismatch(f"line-pair bookkeeping failed: {pairs} != C({D.r},2)")
    counts: dict = {}
    for _, m in tallied:
        counts[m] = counts.get(m, 0) + 1
    key = (D.r, tuple(sorted(counts.items(), reverse=True)))
    ordered = sorted(tallied, key=lambda t: tuple((round(complex(c).real, 9), round(complex(c).imag, 9)) for c in t[0]))
    return ArrangementCombinatorics(tuple(ordered), counts, _LABELS.get(key, "other"))


def binary_rank_lower_bound(h: Poly, tol: float = DEFAULT_TOL) -> int:
    """``m + 1`` for the largest multiplicity ``m`` of a linear factor."""
    factors = binary_factor(h, tol)
    if len(factors) < 2:
        raise PreconditionError("binary form is a power of a single linear form (needs s >= 2 factors)")
    return max(m for _, m in factors) + 1
