from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from oracle import from_sympy, to_sympy
from waringsing.linalg import bareiss_det, exact_rank
from waringsing.poly import (
    Poly,
    divides_power,
    euler_check,
    hessian_det,
    monomials,
    random_invertible_integer_matrix,
)
from waringsing.scalars import QQi, parse_rational, scalar_from_json, scalar_to_json

x, y, z = (Poly.var(3, i) for i in range(3))


def cayley3():
    return x ** 3 + y ** 3 + z ** 3 - (x + y + z) ** 3


# scalars and linear algebra ---------------------------------------------------

def test_qqi_normal_form_and_arithmetic():
    q = QQi(Fraction(2, 4), Fraction(-3, 6))
    assert (q.re, q.im) == (Fraction(1, 2), Fraction(-1, 2))
    i = QQi(0, 1)
    assert i * i == -1
    assert (QQi(1, 2) / QQi(3, -1)) * QQi(3, -1) == QQi(1, 2)
    assert complex(QQi(1, 2) ** 3) == pytest.approx((1 + 2j) ** 3)


def test_scalar_json_roundtrip_and_float_rejection():
    for v in (Fraction(-7, 3), QQi(Fraction(1, 2), 5), 4):
        assert scalar_from_json(scalar_to_json(v, "qq_i"), "qq_i") == v
    with pytest.raises(ValueError):
        scalar_from_json(0.5, "qq_i")
    assert parse_rational("-3/6") == Fraction(-1, 2)


small = st.integers(-5, 5)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_sympy(rows):
    assert bareiss_det(rows) == sp.Matrix(rows).det()
    assert exact_rank(rows) == sp.Matrix(rows).rank()


# polynomials ----------------------------------------------------------------

def test_evaluate_examples():
    assert (x ** 3 + y ** 3 + z ** 3)((1, 1, 1)) == 3
    assert cayley3()((1, 1, -1)) == 0
    u, v = Poly.var(2, 0), Poly.var(2, 1)
    assert (u ** 4 + v ** 4 + (u + v) ** 4)((1, 1)) == 18


def test_partial_derivative_examples():
    u, v = Poly.var(2, 0), Poly.var(2, 1)
    assert (u ** 3 + v ** 3).partial(0) == u ** 2 .scale(3) if False else (u ** 3 + v ** 3).partial(0) == (u ** 2).scale(3)
    for d in (3, 4, 5):
        a, b = Fraction(2, 3), Fraction(-5, 7)
        f = u ** d + v ** d + Poly.linear([a, b]) ** d
        lhs = f.partial(0).scale(b) - f.partial(1).scale(a)
        assert lhs == ((u ** (d - 1)).scale(b) - (v ** (d - 1)).scale(a)).scale(d)


def _random_homogeneous(rng, n, d, terms=6):
    mons = monomials(n, d)
    picks = rng.choice(len(mons), size=min(terms, len(mons)), replace=False)
    return Poly(n, {mons[i]: int(rng.integers(-9, 10)) or 1 for i in picks})


def test_euler_identity_random():
    rng = np.random.default_rng(1)
    for _ in range(20):
        n, d = int(rng.integers(2, 5)), int(rng.integers(1, 6))
        f = _random_homogeneous(rng, n, d)
        assert euler_check(f)


def test_arithmetic_matches_sympy():
    rng = np.random.default_rng(2)
    for _ in range(10):
        f = _random_homogeneous(rng, 3, 3)
        g = _random_homogeneous(rng, 3, 2)
        (ef, syms), (eg, _) = to_sympy(f), to_sympy(g)
        assert from_sympy(ef * eg - ef ** 2, syms) == f * g - f ** 2
        q, r = (f * g + g).divmod(g)
        assert q == f + 1 and r.is_zero()


def test_json_roundtrip():
    f = cayley3().scale(QQi(Fraction(1, 3), 2))
    assert Poly.from_json(f.to_json()) == f
    g = cayley3().to_float()
    assert Poly.from_json(g.to_json()).allclose(g)


def test_hessian_examples():
    assert hessian_det(cayley3()) == ((x + y) * (y + z) * (x + z)).scale(-216)
    d = 5
    fermat = x ** d + y ** d + z ** d
    assert hessian_det(fermat) == (x * y * z) ** (d - 2) * (d * (d - 1)) ** 3


def test_hessian_closed_form_k_equals_n():
    # d^n (d-1)^n prod x_j^(d-2) (1 + l^(d-2) sum a_j^2 / x_j^(d-2)), cleared
    n, d = 3, 4
    rng = np.random.default_rng(3)
    for _ in range(5):
        a = [Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 4))) for _ in range(n)]
        ell = Poly.linear(a)
        f = x ** d + y ** d + z ** d + ell ** d
        h = hessian_det(f)
        xs = [x, y, z]
        prod = xs[0] ** (d - 2) * xs[1] ** (d - 2) * xs[2] ** (d - 2)
        corr = Poly.zero(3)
        for j in range(n):
            others = Poly.const(3, 1)
            for i in range(n):
                if i != j:
                    others = others * xs[i] ** (d - 2)
            corr = corr + others.scale(a[j] ** 2)
        closed = (prod + ell ** (d - 2) * corr).scale(d ** n * (d - 1) ** n)
        for _ in range(10):
            pt = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))) for _ in range(n)]
            assert h(pt) == closed(pt)


def test_hessian_chain_rule():
    rng = np.random.default_rng(4)
    for d in (3, 4):
        f = _random_homogeneous(rng, 3, d, terms=5)
        M = random_invertible_integer_matrix(3, rng)
        detM = sp.Matrix(M).det()
        lhs = hessian_det(f.substitute(M))
        rhs = hessian_det(f).substitute(M).scale(int(detM) ** 2)
        assert lhs == rhs


def test_substitute_matches_evaluation():
    rng = np.random.default_rng(5)
    f = _random_homogeneous(rng, 3, 4, terms=8)
    M = random_invertible_integer_matrix(3, rng)
    g = f.substitute(M)
    for _ in range(50):
        v = [int(t) for t in rng.integers(-5, 6, size=3)]
        Mv = [sum(M[i][j] * v[j] for j in range(3)) for i in range(3)]
        assert g(v) == f(Mv)


def test_hessian_sympy_oracle():
    f = x ** 4 + y ** 4 + z ** 4 + (x + 2 * y) ** 4
    expr, syms = to_sympy(f)
    h = sp.expand(sp.hessian(expr, syms).det())
    assert from_sympy(h, syms) == hessian_det(f)


def test_divides_power_examples():
    f = x ** 4 + y ** 4 + z ** 4 + (x + 2 * y) ** 4
    assert divides_power(hessian_det(f), z) == 2
    assert divides_power(x ** 2 * y, x) == 2
    assert divides_power(hessian_det(cayley3()), x + y) == 1


def test_hessian_limit():
    p = Poly.linear([1] * 6) ** 3
    with pytest.raises(ValueError):
        hessian_det(p)
