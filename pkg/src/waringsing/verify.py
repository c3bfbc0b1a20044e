"""The acceptance suite: each criterion is a function returning
``(passed, detail)``; shared by ``waringsing verify`` and the tests."""

from __future__ import annotations

import cmath
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .poly import Poly, hessian_det


PASS, FAIL, XFAIL, XPASS = "PASS", "FAIL", "XFAIL", "XPASS"


@dataclass
class Context:
    eps: float = 1e-8
    seed: int = 0
    warnings: list = field(default_factory=list)


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    run: Callable[[Context], tuple]
    expected_failure: str | None = None


@dataclass(frozen=True)
class Outcome:
    number: int
    title: str
    status: str
    detail: str
    seconds: float

    @property
    def ok(self) -> bool:
        return self.status in (PASS, XFAIL)

    def line(self) -> str:
        return f"[{self.status}] {self.number:2d}. {self.title} ({self.seconds:.2f}s): {self.detail}"


def _xy(n=3):
    return [Poly.var(n, i) for i in range(n)]


def _ab():
    return Poly.var(2, 0), Poly.var(2, 1)


def reference_R2(d: int) -> Poly:
    """The closed forms for d = 3, 4, 6 entered independently of the solver."""
    a, b = _ab()
    if d == 3:
        return (a ** 3 - b ** 3) ** 2 + (a ** 3 + b ** 3).scale(2) + 1
    if d == 4:
        A, B = a ** 4, b ** 4
        return (A + B) ** 3 + (a ** 8 - (A * B).scale(7) + b ** 8).scale(3) + (A + B).scale(3) + 1
    if d == 6:
        A, B = a ** 6, b ** 6
        t1 = a ** 24 - (a ** 18 * B).scale(121) + (a ** 12 * b ** 12).scale(381) - (A * b ** 18).scale(121) + b ** 24
        t2 = (a ** 18).scale(2) + (a ** 12 * B).scale(381) + (A * b ** 12).scale(381) + (b ** 18).scale(2)
        t3 = (a ** 12).scale(2) - (A * B).scale(121) + (b ** 12).scale(2)
        return (A + B) ** 5 + t1.scale(5) + t2.scale(5) + t3.scale(5) + (A + B).scale(5) + 1
    raise ValueError(d)


# criteria -------------------------------------------------------------------

def c1_sylvester_d3(ctx: Context):
    from .resultants import _poly_det, sylvester_system_k2

    t = time.perf_counter()
    det = _poly_det(sylvester_system_k2(3).matrix)
    elapsed = time.perf_counter() - t
    target = reference_R2(3)
    b = Poly.var(2, 1)
    literal = det == target
    up_to_unit = det == target * b ** 2
    detail = (f"det M == reference: {literal}; det M == b^2 * reference: {up_to_unit}; "
              f"{elapsed * 1000:.1f} ms")
    return literal and elapsed < 1.0, detail


def c2_r2_d4_d6(ctx: Context):
    from .resultants import _poly_det, sylvester_system_k2

    ok4 = (_poly_det(sylvester_system_k2(4).matrix) == reference_R2(4) * Poly.var(2, 1) ** 3)
    t = time.perf_counter()
    det6 = _poly_det(sylvester_system_k2(6).matrix)
    r6 = det6.exact_div(Poly.var(2, 1) ** 5)
    elapsed = time.perf_counter() - t
    ok6 = r6 == reference_R2(6)
    from .resultants import R2_poly

    ok = ok4 and ok6 and R2_poly(4) == reference_R2(4) and R2_poly(6) == reference_R2(6) and elapsed < 10
    return ok, f"d=4 match: {ok4}; d=6 match: {ok6}; d=6 determinant {elapsed:.3f}s"


def c3_r3_c0(ctx: Context):
    from .resultants import R2_poly, stored_R3

    diff = stored_R3().specialize(2, 0) - R2_poly(3) ** 2
    return diff.is_zero(), f"R3(a,b,0) - R2(a,b)^2 has {len(diff.terms)} terms"


def c4_delta(ctx: Context):
    from .resultants import discriminant_degree_check, random_rational, stored_delta, stored_R3

    rng = random.Random(ctx.seed)
    delta, r3 = stored_delta(), stored_R3()
    bad = 0
    for _ in range(100):
        a, b, c = (random_rational(rng) for _ in range(3))
        if delta((a, b, c, -1)) != r3((a, b, c)):
            bad += 1
    deg = discriminant_degree_check()
    return bad == 0 and deg, f"{bad} mismatches at 100 rational points; degree 12 = 3*2^2: {deg}"


def c5_family(ctx: Context):
    from .resultants import family_factorization_check

    rep = family_factorization_check(ctx.eps)
    ns = ", ".join(f"{name}:{n}" for name, _, n, _ in rep.root_checks[:3])
    return rep.ok, f"quintic cofactor {list(rep.cofactor)}; N(S) {ns}"


def c6_cayley(ctx: Context):
    from .families import verify_cayley_curve

    t = time.perf_counter()
    counts = []
    for d in (3, 5, 7):
        rep = verify_cayley_curve(d, seed=ctx.seed)
        if not rep.ok:
            return False, f"d={d} failed"
        counts.append(len(rep.nodes))
    elapsed = time.perf_counter() - t
    return counts == [3, 9, 15] and elapsed < 5, f"nodes {counts}, all A1, g smooth; {elapsed:.2f}s"


def c7_quartic(ctx: Context):
    from .families import suspension_components
    from .singular import analyze_rank_np1, plane_singular_points, projective_close
    from .waring import WaringDecomposition, canonicalize_rank_np1, expand

    D = WaringDecomposition(4, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)))
    f = expand(D)
    rep = analyze_rank_np1(canonicalize_rank_np1(D), ctx.eps, f)
    alphas = [cmath.exp(2j * cmath.pi / 3), cmath.exp(-2j * cmath.pi / 3)]
    expected = [(1, al, 0) for al in alphas]
    located = all(any(projective_close(p.coords, q, 1e-9) for p in rep.points) for q in expected)
    found = plane_singular_points(f, seed=ctx.seed)
    finder = len(found) == 2 and all(any(projective_close(p, q, 1e-9) for p in found) for q in expected)
    x, y = _xy(2)
    sus = suspension_components(x ** 4 + y ** 4 + (x + y) ** 4, 4)
    ok = (len(rep.points) == 2 and all(p.type == "A3" for p in rep.points) and rep.mu_global == 6
          and located and finder and sus.e == 2 and sus.residual <= 1e-10)
    return ok, (f"{len(rep.points)} points {[p.type for p in rep.points]}, mu={rep.mu_global}, "
                f"e={sus.e}, conic factorization residual {sus.residual:.1e}")


def c8_hessian(ctx: Context):
    x, y, z = _xy()
    f = x ** 3 + y ** 3 + z ** 3 - (x + y + z) ** 3
    h = hessian_det(f)
    target = ((x + y) * (y + z) * (x + z)).scale(-216)
    return h == target, "hess == -216(x+y)(y+z)(x+z)" if h == target else f"hess = {h.format()}"


def c9_rank5_cubic(ctx: Context):
    from .families import ex_t3_shape, rank5_form, t3_conditions
    from .singular import classify_plane_singularity, plane_singular_points, projective_close

    shape = ex_t3_shape()
    f = rank5_form(shape)
    x, y, z = _xy()
    conic = ((x ** 2).scale(7) - (x * y).scale(8) + y ** 2
             - (x * z).scale(12) + (y * z).scale(12) + (z ** 2).scale(12))
    target = ((x - y) * conic).scale(Fraction(1, 4))
    residual = (f - target).max_abs_coeff() / target.max_abs_coeff()
    pts = plane_singular_points(f, seed=ctx.seed)
    types = [classify_plane_singularity(f, p, seed=ctx.seed).type for p in pts]
    cond = t3_conditions(shape)
    ok = (len(pts) == 1 and projective_close(pts[0], (1, 1, 0), 1e-9) and types == ["A3"]
          and residual <= 1e-10 and cond.holds(cond.cond1) and cond.holds(cond.cond2_gradient)
          and cond.holds(cond.cond3) and not cond.holds(cond.cond2_literal) and cond.singular_at_p)
    return ok, (f"points {len(pts)} {types}; factorization residual {residual:.1e}; "
                f"literal second condition = {complex(cond.cond2_literal).real:.6f} (2*a1), "
                f"gradient variant = {abs(cond.cond2_gradient):.1e}")


def grid_values():
    return [Fraction(-2) + Fraction(i, 10) for i in range(41)]


def c10_cross_oracle(ctx: Context):
    from .resultants import R2_eval, common_root_count
    from .singular import SystemS, solve_system_S

    vals = [v for v in grid_values() if v != 0]
    disagreements = 0
    singular = {}
    for d in (3, 4, 5, 6):
        count = 0
        for a in vals:
            for b in vals:
                r = R2_eval(d, a, b) == 0
                sol = solve_system_S(SystemS(d, (a, b)), ctx.eps)
                if sol.borderline:
                    ctx.warnings.append(f"borderline candidate at d={d}, (a,b)=({a},{b})")
                ns = sol.NS > 0
                n = common_root_count(d, a, b) > 0
                if not (r == ns == n):
                    disagreements += 1
                count += r
        singular[d] = count
    return disagreements == 0, f"{disagreements} disagreements; singular grid points per d: {singular}"


def c11_sections(ctx: Context):
    from .singular import fermat_section_check

    rng = random.Random(ctx.seed)
    violations = singular = 0
    for i in range(200):
        n = 3 if i % 2 == 0 else 4
        d = (3, 4, 5)[i % 3]
        b = [rng.choice((-2, -1, 1, 2)) for _ in range(n + 1)]
        rep = fermat_section_check(b, d, ctx.eps)
        singular += not rep.smooth
        if not rep.all_A1:
            violations += 1
    return violations == 0, f"{violations} violations; {singular} of 200 sections singular, all nodal"


def c12_suspensions(ctx: Context):
    from .families import suspension_components
    from .resultants import common_root_count

    rng = np.random.default_rng(ctx.seed)
    x, y = _xy(2)
    bad = 0
    for d in (3, 5):
        for _ in range(50):
            a, b = (complex(*rng.normal(size=2)) for _ in range(2))
            h = x ** d + y ** d + Poly.linear([a, b]) ** d
            if suspension_components(h, d).e != 1:
                bad += 1
    sus = suspension_components(x ** 4 + y ** 4 + (x + y) ** 4, 4)
    square = sus.e == 2 and sus.h1 == x ** 2 + x * y + y ** 2
    roots = [r for r in np.roots([1, 0, 0, 0, 0, 0, -11, 0, 0, 0, 0, 0, -1])]
    sextic = []
    for r in roots:
        n = common_root_count(6, complex(r), 1)
        e = suspension_components(x ** 6 + y ** 6 + Poly.linear([complex(r), 1]) ** 6, 6).e
        sextic.append((n, e))
    ok6 = all(t == (2, 1) for t in sextic)
    return bad == 0 and square and ok6, (f"{bad} of 100 odd-degree samples with e != 1; quartic e=2 with "
                                         f"h1 = x^2+xy+y^2: {square}; d=6 (N, e) at 12 roots all (2, 1): {ok6}")


def c13_batch(ctx: Context):
    from .batch import Axis, BatchGrid, run_batch

    axis = lambda n: Axis(n, Fraction(-2), Fraction(2), Fraction(1, 25))  # noqa: E731
    grid = BatchGrid(4, 2, (axis("a"), axis("b")), ring="c64")
    t = time.perf_counter()
    one = run_batch(grid, jobs=1)
    elapsed = time.perf_counter() - t
    two = run_batch(grid, jobs=2)
    same = one == two
    n = one["summary"]["points"]
    return n >= 10_000 and elapsed < 5 and same, (f"{n} points in {elapsed:.2f}s (jobs=1); "
                                                  f"identical with jobs=2: {same}")


CRITERIA = (
    Criterion(1, "Sylvester determinant d=3 equals the closed-form R2", c1_sylvester_d3,
              expected_failure="this matrix has determinant b^2 * R2, not R2; "
                               "the literal identity cannot hold"),
    Criterion(2, "R2 for d=4 and d=6 match the closed forms", c2_r2_d4_d6),
    Criterion(3, "R3(a,b,0) = R2(a,b)^2", c3_r3_c0),
    Criterion(4, "Delta(a,b,c,-1) = R3(a,b,c) and deg Delta = 12", c4_delta),
    Criterion(5, "family factorization and N(S) at its roots", c5_family),
    Criterion(6, "Cayley curves d=3,5,7", c6_cayley),
    Criterion(7, "quartic with two A3 points and two conics", c7_quartic),
    Criterion(8, "Hessian of the Cayley cubic", c8_hessian),
    Criterion(9, "rank-5 cubic with an A3 point", c9_rank5_cubic),
    Criterion(10, "R2 = 0 <=> N(S) > 0 <=> common roots on the 41x41 grid", c10_cross_oracle),
    Criterion(11, "Fermat hyperplane sections are nodal", c11_sections),
    Criterion(12, "component counts of suspensions", c12_suspensions),
    Criterion(13, "batch classification of 10^4 points", c13_batch),
)


def run_criterion(c: Criterion, ctx: Context | None = None) -> Outcome:
    ctx = ctx or Context()
    t = time.perf_counter()
    try:
        passed, detail = c.run(ctx)
    except Exception as exc:  # a crash is a failure of that criterion
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - t
    if c.expected_failure:
        status = XPASS if passed else XFAIL
        if not passed:
            detail = f"{detail} [known: {c.expected_failure}]"
    else:
        status = PASS if passed else FAIL
    return Outcome(c.number, c.title, status, detail, elapsed)


def run_all(ctx: Context | None = None, numbers=None) -> list[Outcome]:
    ctx = ctx or Context()
    return [run_criterion(c, ctx) for c in CRITERIA if numbers is None or c.number in numbers]
