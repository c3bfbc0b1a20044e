import random

import pytest
import sympy as sp

from oracle import from_sympy, to_sympy
from waringsing import resultants as R
from waringsing.errors import CheckMismatch, PreconditionError
from waringsing.poly import Poly
from waringsing.singular import SystemS, solve_system_S
from waringsing.univariate import UniPoly, resultant_uni

A, B, U = sp.symbols("a b u")


def sym_R2(d):
    g1 = B * U ** (d - 1) - A
    g2 = B * (A * U + B) ** (d - 1) + 1
    return sp.factor(sp.resultant(g1, g2, U))


def test_d3_matrix_layout():
    M = R.sylvester_system_k2(3).matrix
    a, b = Poly.var(2, 0), Poly.var(2, 1)
    z = Poly.zero(2)
    expected = [
        [b, z, -a, z],
        [z, b, z, -a],
        [a ** 2 * b, a * b ** 2 * 2, b ** 3 + 1, z],
        [z, a ** 2 * b, a * b ** 2 * 2, b ** 3 + 1],
    ]
    assert [list(r) for r in M] == expected


def test_d4_and_d6_entries():
    a, b = Poly.var(2, 0), Poly.var(2, 1)
    M4 = R.sylvester_system_k2(4).matrix
    assert len(M4) == 6
    assert M4[3][0] == a ** 3 * b and M4[3][3] == b ** 4 + 1
    M6 = R.sylvester_system_k2(6).matrix
    assert len(M6) == 10
    assert M6[5][:3] == (a ** 5 * b, a ** 4 * b ** 2 * 5, a ** 3 * b ** 3 * 10)


def test_R2_closed_forms():
    a, b = Poly.var(2, 0), Poly.var(2, 1)
    assert R.R2_poly(3) == (a ** 3 - b ** 3) ** 2 + (a ** 3 + b ** 3) * 2 + 1
    r4 = (a ** 4 + b ** 4) ** 3 + (a ** 8 - a ** 4 * b ** 4 * 7 + b ** 8) * 3 + (a ** 4 + b ** 4) * 3 + 1
    assert R.R2_poly(4) == r4


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_det_is_b_power_times_R2_against_sympy(d):
    det = R.sylvester_det_poly(d)
    ref = sp.expand(sym_R2(d))
    assert det == from_sympy(ref, (A, B))
    assert det == R.R2_poly(d) * Poly.var(2, 1) ** (d - 1)


@pytest.mark.parametrize("d", [3, 4, 7])
def test_det_matches_univariate_resultant_at_random_points(d):
    rng = random.Random(d)
    for _ in range(100 if d < 7 else 20):
        a, b = R.random_rational(rng), R.random_rational(rng)
        g = UniPoly(list(reversed(R.g1_coeffs(d, a, b))))
        h = UniPoly(list(reversed(R.g2_coeffs(d, a, b))))
        assert R.sylvester_det(d, a, b) == resultant_uni(g, h)
        assert R.sylvester_det_poly(d)((a, b)) == resultant_uni(g, h)


def test_R2_eval_examples():
    assert R.R2_eval(3, 1, 1) == 5
    assert R.R2_eval(4, 1, 1) == 0
    assert R.R2_eval(3, 1, 2) == 68
    with pytest.raises(PreconditionError):
        R.R2_eval(3, 0, 1)
    with pytest.raises(PreconditionError):
        R.sylvester_system_k2(9)


def test_common_root_count_examples():
    assert R.common_root_count(4, 1, 1) == 2
    assert R.common_root_count(3, 1, 2) == 0
    roots = sp.Poly(A ** 12 - 11 * A ** 6 - 1, A).nroots(n=30)
    for r in roots[:4]:
        assert R.common_root_count(6, complex(r), 1.0, tol=1e-7) == 2


def test_common_root_count_exact_singular():
    # a = b u^(d-1) with u = 1 and b^d 2^(d-1) = -1 has no rational solution,
    # so use the (1, 1) quartic and its scaled copies (a, b) = (w, w) with w^4=1
    for w in (1, -1):
        assert R.common_root_count(4, w, w) == 2
        assert solve_system_S(SystemS(4, (w, w))).NS == 2


def test_stored_data_checksums():
    assert all(R.verify_checksums().values())


def test_R3_restricts_to_R2_squared():
    r3 = R.stored_R3()
    r2 = R.R2_poly(3)
    assert r3.specialize(2, 0) == r2 * r2
    rng = random.Random(4)
    for _ in range(50):
        a, b = R.random_rational(rng), R.random_rational(rng)
        assert R.R3_eval_d3(a, b, 0) == R.R2_eval(3, a, b) ** 2


def test_delta_relations():
    assert R.discriminant_degree_check()
    assert R.delta_symmetry_check()
    rng = random.Random(5)
    delta_m1 = R.delta_at_minus_one()
    for _ in range(30):
        a, b, c = (R.random_rational(rng) for _ in range(3))
        assert delta_m1((a, b, c)) == R.R3_eval_d3(a, b, c)
    assert delta_m1 == R.stored_R3()


def test_R3_zero_iff_system_has_solutions():
    assert R.R3_eval_d3(-1, -1, -1) == 0
    rng = random.Random(6)
    for _ in range(30):
        a, b, c = (R.random_rational(rng) for _ in range(3))
        assert (R.R3_eval_d3(a, b, c) == 0) == (solve_system_S(SystemS(3, (a, b, c))).NS > 0)


def test_family_factorization_against_sympy():
    rep = R.family_factorization_check()
    assert rep.ok
    expr, (a,) = to_sympy(_family_as_poly(), "a")
    q = 25 * a ** 5 + 215 * a ** 4 + 841 * a ** 3 + 1777 * a ** 2 + 2015 * a + 961
    assert sp.expand(expr - (a + 1) ** 3 * (a ** 2 - a + 1) ** 2 * q) == 0


def _family_as_poly():
    u = R.r3_on_family()
    return Poly(1, {(i,): c for i, c in enumerate(u.coeffs) if c != 0})


def test_tampered_data_is_rejected(monkeypatch):
    real = R._data_bytes

    def tampered(name):
        data = real(name)
        return data.replace(b"1", b"2", 1) if name == "r3_d3.json" else data

    R.load_stored.cache_clear()
    monkeypatch.setattr(R, "_data_bytes", tampered)
    try:
        assert R.verify_checksums()["r3_d3.json"] is False
        with pytest.raises(CheckMismatch):
            R.stored_R3()
    finally:
        monkeypatch.undo()
        R.load_stored.cache_clear()
    assert R.stored_R3().degree() == 12
