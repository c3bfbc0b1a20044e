import cmath
import random
from fractions import Fraction

import pytest
import sympy as sp

from oracle import to_sympy
from waringsing.errors import PreconditionError
from waringsing.families import (
    CayleySpec,
    Rank5Shape,
    cayley_expected_nodes,
    cayley_form,
    ex_t3_shape,
    contains_one,
    rank5_form,
    suspension_components,
    t3_conditions,
    unit_circle_check,
    verify_cayley_curve,
    verify_cayley_hypersurface,
)
from waringsing.poly import Poly
from waringsing.singular import (
    classify_plane_singularity,
    corank_at,
    local_milnor,
    plane_singular_points,
    projective_close,
)
from waringsing.waring import arrangement_combinatorics

x, y, z = (Poly.var(3, i) for i in range(3))
u, v = Poly.var(2, 0), Poly.var(2, 1)


def rq(rng):
    return Fraction(rng.choice([-1, 1]) * rng.randint(1, 12), rng.randint(1, 5))


# Cayley ---------------------------------------------------------------------

def test_cayley_cubic_form():
    assert cayley_form(CayleySpec(3, 3)) == ((x + y) * (x + z) * (y + z)).scale(-3)


def test_cayley_surface_sympy():
    expr, X = to_sympy(cayley_form(CayleySpec(4, 3)))
    ref = 4 * sum(t ** 3 for t in X) - sum(X) ** 3
    assert sp.expand(expr - ref) == 0


@pytest.mark.parametrize("d, count", [(3, 3), (5, 9), (7, 15)])
def test_cayley_curves(d, count):
    assert len(cayley_expected_nodes(CayleySpec(3, d))) == count
    rep = verify_cayley_curve(d)
    assert rep.ok and len(rep.nodes) == count
    assert rep.quotient.degree() == d - 3


def test_cayley_quartic_quotient_meets_lines_off_vertices():
    g = verify_cayley_curve(7).quotient
    for line in ((1, 1, 0), (1, 0, 1), (0, 1, 1)):
        # parametrize the line and count roots of g restricted to it
        a, b, c = line
        basis = [(1, -1, 0), (0, 0, 1)] if c == 0 else ([(1, 0, -1), (0, 1, 0)] if b == 0 else [(0, 1, -1), (1, 0, 0)])
        M = [[basis[0][i], basis[1][i]] for i in range(3)]
        r = g.substitute(M)
        expr, (s, t) = to_sympy(r, "s t")
        roots = sp.Poly(expr.subs(t, 1), s).nroots()
        assert len(roots) == 4
        assert all(abs(complex(rt)) > 1e-6 for rt in roots)


def test_cayley_hypersurfaces():
    assert cayley_expected_nodes(CayleySpec(4, 3)) == [(-1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1)]
    assert verify_cayley_hypersurface(CayleySpec(4, 3))
    assert verify_cayley_hypersurface(CayleySpec(5, 5))
    with pytest.raises(PreconditionError):
        CayleySpec(3, 4)


# suspensions ----------------------------------------------------------------

def test_suspension_quartic_two_conics():
    h = u ** 4 + v ** 4 + (u + v) ** 4
    s = suspension_components(h, 4)
    assert s.e == 2 and len(s.intersection_points) == 2
    prod = s.factors[0] * s.factors[1]
    f = x ** 4 + y ** 4 + (x + y) ** 4 + z ** 4
    c = complex(f.leading_term()[1]) / complex(prod.leading_term()[1])
    assert prod.scale(c).allclose(f.to_float(), 1e-12)
    for p in s.intersection_points:
        assert abs(complex(p[2])) < 1e-12
        assert projective_close(p, (1, cmath.exp(2j * cmath.pi / 3), 0)) or \
            projective_close(p, (1, cmath.exp(-2j * cmath.pi / 3), 0))


def test_suspension_odd_degree_irreducible():
    rng = random.Random(1)
    for _ in range(20):
        a, b = rq(rng), rq(rng)
        assert suspension_components(u ** 3 + v ** 3 + (u.scale(a) + v.scale(b)) ** 3, 3).e == 1


def test_suspension_generic_sextic_irreducible():
    assert suspension_components(u ** 6 + v ** 6 + (u.scale(2) + v.scale(3)) ** 6, 6).e == 1


def test_suspension_e2_implies_even_and_half_degree():
    rng = random.Random(2)
    for _ in range(10):
        roots = [rq(rng) for _ in range(3)]
        h1 = Poly.const(2, 1)
        for r in roots:
            h1 = h1 * (u - v.scale(r))
        if len(set(roots)) < 3:
            continue
        s = suspension_components(h1 ** 2, 6)
        assert s.e == 2 and len(s.intersection_points) == 3


def test_suspension_nonreduced_is_rejected():
    with pytest.raises(PreconditionError):
        suspension_components((u - v) ** 4, 4)


# rank 5 shapes ----------------------------------------------------------------

def test_ex_t3_form_and_conditions():
    f = rank5_form(ex_t3_shape())
    target = ((x - y) * (x ** 2 * 7 - x * y * 8 + y ** 2 - x * z * 12 + y * z * 12 + z ** 2 * 12)).scale(Fraction(1, 4))
    assert f.allclose(target.to_float(), 1e-10)
    c = t3_conditions(ex_t3_shape())
    assert c.holds(c.cond1) and c.holds(c.cond3) and c.holds(c.cond2_gradient) and c.singular_at_p
    t = ex_t3_shape().params["a1"]
    assert c.cond2_literal == pytest.approx(2 * t)
    assert not c.holds(c.cond2_literal)


def test_t3_violating_first_condition_is_smooth_at_p():
    rng = random.Random(3)
    for _ in range(10):
        shape = Rank5Shape("T3", 3, {k: rq(rng) for k in ("a1", "b1", "a2", "b2", "c2")})
        c = t3_conditions(shape)
        if not c.holds(c.cond1):
            assert not c.singular_at_p


def test_t2_random_only_nodes():
    rng = random.Random(4)
    for i in range(30):
        d = 3 + i % 2
        shape = Rank5Shape("T2", d, {k: rq(rng) for k in ("a1", "b1", "a2", "b2")})
        assert arrangement_combinatorics(shape.decomposition()).label == "5L-2"
        f = rank5_form(shape)
        for p in plane_singular_points(f):
            assert classify_plane_singularity(f, p).type == "A1"


def test_t4_random_corank_at_most_one():
    rng = random.Random(5)
    for i in range(20):
        try:
            shape = Rank5Shape("T4", 3 + i % 2, {k: rq(rng) for k in ("a1", "b1", "c1", "a2", "b2", "c2")})
            f = rank5_form(shape)
        except PreconditionError:
            continue
        for p in plane_singular_points(f):
            assert corank_at(f, p) <= 1
            if min(abs(complex(c)) for c in p) < 1e-9:
                assert classify_plane_singularity(f, p).type == "A1"


def test_t1_multiplicity_bound():
    # four concurrent lines plus z: singular points have mu <= (r-3)(d-1)
    rng = random.Random(6)
    r = 5
    for d in (3, 4):
        for _ in range(5):
            shape = Rank5Shape("T1", d, {k: rq(rng) for k in ("a3", "b3", "a4", "b4")})
            try:
                f = rank5_form(shape)
            except PreconditionError:
                continue
            for p in plane_singular_points(f):
                assert corank_at(f, p) <= 1
                assert local_milnor(f, p) <= (r - 3) * (d - 1)


def test_shape_preconditions():
    with pytest.raises(PreconditionError):
        Rank5Shape("T3", 3, {"a1": 1, "b1": 1, "a2": 2, "b2": 2, "c2": 1})
    with pytest.raises(PreconditionError):
        Rank5Shape("T4", 3, {"a1": 1, "b1": 2, "c1": 3, "a2": 2, "b2": 4, "c2": 5})
    with pytest.raises(PreconditionError):
        Rank5Shape("T9", 3, {})
    with pytest.raises(PreconditionError):
        Rank5Shape("T2", 3, {"a1": 1, "b1": 0, "a2": 1, "b2": 1})


# unit circle ------------------------------------------------------------------

def test_unit_circle():
    assert contains_one((1, 1j, -1j))
    assert unit_circle_check(10_000, seed=0)
    w = cmath.exp(2j * cmath.pi / 5)
    quad = [-w, -w ** 2, -w ** 3, -w ** 4]
    assert abs(sum(quad) - 1) < 1e-12 and not contains_one(quad)
    with pytest.raises(PreconditionError):
        unit_circle_check(0)
