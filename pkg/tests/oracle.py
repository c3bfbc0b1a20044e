"""Independent references built on sympy (test-only)."""

import sympy as sp

from waringsing.poly import Poly
from waringsing.scalars import QQi


def sym_scalar(c):
    if isinstance(c, QQi):
        return sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator)
    if isinstance(c, complex):
        return sp.Float(c.real) + sp.I * sp.Float(c.imag)
    return sp.nsimplify(c) if isinstance(c, float) else sp.Rational(c)


def to_sympy(p: Poly, names=None):
    syms = sp.symbols(names or " ".join(f"x{i}" for i in range(p.nvars)))
    if p.nvars == 1:
        syms = (syms,) if not isinstance(syms, tuple) else syms
    expr = 0
    for exp, c in p.terms.items():
        term = sym_scalar(c)
        for s, e in zip(syms, exp):
            term *= s ** e
        expr += term
    return sp.expand(expr), syms


def from_sympy(expr, syms) -> Poly:
    sp_poly = sp.Poly(sp.expand(expr), *syms)
    terms = {}
    for exp, c in sp_poly.terms():
        re, im = sp.re(c), sp.im(c)
        terms[tuple(exp)] = QQi(sp_rational(re), sp_rational(im))
    return Poly(len(syms), terms)


def sp_rational(r):
    from fractions import Fraction

    r = sp.Rational(r)
    return Fraction(int(r.p), int(r.q))
