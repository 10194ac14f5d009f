from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given, strategies as st

from toptaut.arith import DomainError
from toptaut.hain import (
    a_name,
    class_restriction_identity,
    d_name,
    forgetful_pullback,
    hain_base,
    hain_class,
    psi_name,
    restriction_identity,
)
from toptaut.poly import MultiPoly

psi1, psi2, psi3 = (MultiPoly.var(psi_name(i)) for i in (1, 2, 3))
D12, D13, D23, D123 = (MultiPoly.var(d_name(J)) for J in ((1, 2), (1, 3), (2, 3), (1, 2, 3)))


def to_sympy(p: MultiPoly):
    out = sympy.Integer(0)
    for mono, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in mono.items():
            term *= sympy.Symbol(v) ** e
        out += term
    return sympy.expand(out)


def sympy_base(n, a):
    base = sum(sympy.Rational(1, 2) * a[i] ** 2 * sympy.Symbol(psi_name(i + 1)) for i in range(n))
    from itertools import combinations

    for size in range(2, n + 1):
        for J in combinations(range(1, n + 1), size):
            c = sum(a[i - 1] * a[j - 1] for i, j in combinations(J, 2))
            base -= c * sympy.Symbol(d_name(J))
    return base


def test_base_examples():
    t = MultiPoly.var("t")
    got = hain_base(1, 2, [t, -t])
    assert got == t * t * (psi1 + psi2) / 2 + t * t * D12
    assert hain_base(1, 2, [0, 0]).is_zero()
    got = hain_base(1, 3, [1, 1, -2])
    # three psi terms and all four divisors, the full set {1,2,3} included
    assert len(got) == 7
    assert got.coeff_of({d_name((1, 2)): 1}, got.vars) == MultiPoly.const(-1)
    assert got.coeff_of({d_name((1, 2, 3)): 1}, got.vars) == MultiPoly.const(3)


def test_class_example():
    got = hain_class(2, 2, [1, -1]).poly
    want = (
        psi1 ** 2 / 8 + psi1 * psi2 / 4 + psi2 ** 2 / 8 + psi1 * D12 / 2 + psi2 * D12 / 2 + D12 ** 2 / 2
    )
    assert got == want
    t = MultiPoly.var("t")
    assert hain_class(1, 2, [t, -t]).poly == t * t * (psi1 + psi2) / 2 + t * t * D12


@pytest.mark.parametrize("g, n", [(g, n) for g in range(1, 4) for n in range(2, 4)] + [(2, 4)])
def test_symbolic_class_matches_sympy(g, n):
    a = [sympy.Symbol(a_name(i)) for i in range(1, n + 1)]
    want = sympy.expand(sympy_base(n, a) ** g / factorial(g))
    assert to_sympy(hain_class(g, n).poly) == want


@pytest.mark.parametrize("g, n", [(g, n) for g in range(1, 5) for n in range(2, 6)])
def test_homogeneous_of_degree_2g(g, n):
    cls = hain_class(g, n)
    assert cls.poly.is_homogeneous([a_name(i) for i in range(1, n + 1)], 2 * g)
    assert cls.generator_degree() == {g}


@given(st.integers(1, 3), st.lists(st.integers(-4, 4), min_size=2, max_size=4), st.integers(-3, 3))
def test_scaling_law(g, head, lam):
    a = head + [-sum(head)]
    n = len(a)
    lhs = hain_class(g, n, [lam * x for x in a]).poly
    rhs = hain_class(g, n, a).poly * Fraction(lam) ** (2 * g)
    assert lhs == rhs


def test_numeric_multiplicities_must_sum_to_zero():
    with pytest.raises(DomainError):
        hain_base(1, 2, [1, 1])
    with pytest.raises(DomainError):
        hain_base(1, 1)
    with pytest.raises(DomainError):
        hain_class(0, 2)


def test_pullback_examples():
    assert forgetful_pullback(psi1, 3) == psi1
    assert forgetful_pullback(D12, 3) == D12 + D123
    assert forgetful_pullback(MultiPoly.const(5), 3) == MultiPoly.const(5)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("g", [1, 2, 5])
def test_restriction_identity(g, n):
    assert restriction_identity(g, n)


@pytest.mark.parametrize("g, n", [(g, n) for g in range(1, 4) for n in range(3, 6)])
def test_class_restriction_identity(g, n):
    assert class_restriction_identity(g, n)


def test_restriction_detects_a_wrong_pullback():
    # dropping the new divisor from the pullback breaks the identity
    lhs = hain_base(1, 3).substitute({a_name(3): 0})
    assert lhs != hain_base(1, 2)
