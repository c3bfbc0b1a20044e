"""Sylvester matrices of the k = 2 system, the bivariate resultant R2,
common-root counts, and the stored d = 3 discriminant data."""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import permutations

import numpy as np

from . import linalg
from .errors import CheckMismatch, PreconditionError
from .poly import Poly
from .scalars import is_exact, normalize
from .singular import SystemS, solve_system_S
from .univariate import UniPoly, gcd_uni

MIN_D, MAX_D = 3, 8
DATA_FILES = ("r3_d3.json", "delta_d3_r4.json")
MANIFEST = "manifest.json"


def _check_d(d: int):
    if not MIN_D <= d <= MAX_D:
        raise PreconditionError(f"d must be between {MIN_D} and {MAX_D}, got {d}")


# Sylvester data -------------------------------------------------------------

def g1_coeffs(d: int, a, b) -> list:
    """``b u^(d-1) - a``, descending."""
    return [b] + [a * 0] * (d - 2) + [-a]


def g2_coeffs(d: int, a, b) -> list:
    """``b (a u + b)^(d-1) + 1``, descending."""
    m = d - 1
    out = [b * math.comb(m, i) * a ** (m - i) * b ** i for i in range(m + 1)]
    out[-1] = out[-1] + 1
    return out


def sylvester_rows(d: int, a, b, zero=0) -> list[list]:
    g, h = g1_coeffs(d, a, b), g2_coeffs(d, a, b)
    size = 2 * (d - 1)
    rows = []
    for i in range(d - 1):
        rows.append([zero] * i + g + [zero] * (size - d - i))
    for i in range(d - 1):
        rows.append([zero] * i + h + [zero] * (size - d - i))
    return rows


@dataclass(frozen=True)
class SylvesterData:
    d: int
    matrix: tuple  # entries are Poly in (a, b)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def evaluate(self, a, b) -> list[list]:
        return [[e((a, b)) for e in row] for row in self.matrix]

    def format(self) -> str:
        cells = [[e.format(["a", "b"]) for e in row] for row in self.matrix]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def sylvester_system_k2(d: int) -> SylvesterData:
    """Sylvester matrix of ``g1 = b u^(d-1) - a`` and
    ``g2 = b (a u + b)^(d-1) + 1`` with the g1 rows first."""
    _check_d(d)
    a, b = Poly.var(2, 0), Poly.var(2, 1)
    rows = sylvester_rows(d, a, b, Poly.zero(2))
    return SylvesterData(d, tuple(tuple(row) for row in rows))


def _poly_det(rows) -> Poly:
    return linalg.bareiss_det(rows, divide=lambda x, y: x.exact_div(y))


@lru_cache(maxsize=None)
def sylvester_det_poly(d: int) -> Poly:
    """``det M(g1, g2)`` by fraction-free elimination over Z[a, b]."""
    return _poly_det(sylvester_system_k2(d).matrix)


@lru_cache(maxsize=None)
def R2_poly(d: int) -> Poly:
    """The resultant ``R2(a, b)``.

    The g1 rows all carry the leading coefficient ``b``, so the determinant
    of the matrix is ``b^(d-1) R2``; the unit ``b^(d-1)`` is divided out.
    """
    _check_d(d)
    return sylvester_det_poly(d).exact_div(Poly.var(2, 1) ** (d - 1))


def R2_eval(d: int, a, b):
    if a == 0 or b == 0:
        raise PreconditionError("a and b must be nonzero")
    return R2_poly(d)((a, b))


def sylvester_det(d: int, a, b):
    """Determinant of the numeric Sylvester matrix (independent of R2_poly)."""
    _check_d(d)
    return linalg.det(sylvester_rows(d, a, b))


def common_root_count(d: int, a, b, tol: float = 1e-9) -> int:
    """Degree of ``gcd(g1, g2)``; on exact input the Sylvester rank relation
    ``N = size - rank`` is checked as well."""
    _check_d(d)
    if a == 0 or b == 0:
        raise PreconditionError("a and b must be nonzero")
    g = UniPoly(list(reversed(g1_coeffs(d, a, b))))
    h = UniPoly(list(reversed(g2_coeffs(d, a, b))))
    n = gcd_uni(g, h, tol).degree()
    if is_exact(a) and is_exact(b):
        r = linalg.exact_rank(sylvester_rows(d, a, b))
        if 2 * (d - 1) - r != n:
            raise CheckMismatch(f"gcd degree {n} disagrees with Sylvester rank deficiency {2 * (d - 1) - r}")
    return n


# stored data ----------------------------------------------------------------

def _data_bytes(name: str) -> bytes:
    return resources.files("waringsing.data").joinpath(name).read_bytes()


def sha256(name: str) -> str:
    return hashlib.sha256(_data_bytes(name)).hexdigest()


def verify_checksums() -> dict:
    """Recompute the SHA-256 of each stored file against the manifest."""
    manifest = json.loads(_data_bytes(MANIFEST))["sha256"]
    out = {}
    for name in DATA_FILES:
        out[name] = manifest.get(name) == sha256(name)
    return out


@lru_cache(maxsize=None)
def load_stored(name: str) -> Poly:
    manifest = json.loads(_data_bytes(MANIFEST))["sha256"]
    if manifest.get(name) != sha256(name):
        raise CheckMismatch(f"checksum mismatch for stored data {name}")
    return Poly.from_json(json.loads(_data_bytes(name)))


def stored_R3() -> Poly:
    """``R3(a, b, c)`` for d = 3."""
    return load_stored("r3_d3.json")


def stored_delta() -> Poly:
    """The degree-12 dual discriminant ``Delta(A, B, C, D)`` for d = 3, r = 4."""
    return load_stored("delta_d3_r4.json")


def R3_eval_d3(a, b, c):
    return stored_R3()((a, b, c))


def delta_at_minus_one() -> Poly:
    """``Delta(a, b, c, -1)``."""
    return stored_delta().specialize(3, -1)


def discriminant_degree_check() -> bool:
    delta = stored_delta()
    return delta.is_homogeneous(12) and delta.degree() == 3 * 2 ** 2


def delta_symmetry_check() -> bool:
    """Invariance of Delta under all 24 permutations of its variables."""
    delta = stored_delta()
    for perm in permutations(range(4)):
        M = [[int(j == perm[i]) for j in range(4)] for i in range(4)]
        if delta.substitute(M) != delta:
            return False
    return True


def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    while True:
        q = Fraction(rng.randint(-bound * 4, bound * 4), rng.randint(1, 4))
        if q != 0:
            return q


@dataclass(frozen=True)
class FactorizationReport:
    cofactor: tuple
    root_checks: tuple  # (factor, root, NS, expected multiplicity)

    @property
    def ok(self) -> bool:
        return all(ns == exp for _, _, ns, exp in self.root_checks)


QUINTIC = (961, 2015, 1777, 841, 215, 25)  # low to high


def r3_on_family() -> UniPoly:
    """``R3(a, -a-2, -a-2)`` as a univariate polynomial in ``a``."""
    r3 = stored_R3()
    # (a, t) -> (a, -a - 2t, -a - 2t), then t = 1
    lifted = r3.substitute([[1, 0], [-1, -2], [-1, -2]]).specialize(1, 1)
    return UniPoly.from_poly(lifted, 0)


def family_factorization_check(tol: float = 1e-8) -> FactorizationReport:
    """``R3(a, -a-2, -a-2) = (a+1)^3 (a^2-a+1)^2 q(a)`` with the stated
    quintic ``q``, and ``N(S)`` at a root of each factor equals its exponent."""
    p = r3_on_family()
    lin = UniPoly([1, 1]) ** 3
    quad = UniPoly([1, -1, 1]) ** 2
    try:
        q = p.exact_quotient(lin).exact_quotient(quad)
    except ArithmeticError as exc:
        raise CheckMismatch(f"family polynomial is not divisible by the expected factors: {exc}") from exc
    if q.coeffs != tuple(normalize(c) for c in QUINTIC):
        bad = next((i, c, e) for i, (c, e) in enumerate(zip(q.coeffs + (None,) * 6, QUINTIC)) if c != e)
        raise CheckMismatch(f"quintic cofactor differs at degree {bad[0]}: {bad[1]} != {bad[2]}")
    checks = []
    reps = [("a+1", -1.0 + 0j, 3), ("a^2-a+1", complex(np.exp(1j * np.pi / 3)), 2)]
    reps += [("quintic", complex(r), 1) for r in np.roots(QUINTIC[::-1])]
    for name, root, expected in reps:
        ns = solve_system_S(SystemS(3, (root, -root - 2, -root - 2)), tol).NS
        checks.append((name, root, ns, expected))
    report = FactorizationReport(q.coeffs, tuple(checks))
    if not report.ok:
        bad = next(c for c in checks if c[2] != c[3])
        raise CheckMismatch(f"N(S) at root {bad[1]} of {bad[0]} is {bad[2]}, expected {bad[3]}")
    return report
