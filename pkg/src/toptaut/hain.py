"""Hain's polynomial for DR cycles on the rational-tails locus.

The ring is the free commutative polynomial ring in psi-dagger classes
``psi<i>`` and divisor classes ``D_<J>``; no cohomological relations are
imposed. Multiplicities are either numbers or the symbols ``a<i>``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence, Union

from .arith import DomainError
from .poly import MultiPoly

Mult = Union[int, Fraction, MultiPoly, str]


def psi_name(i: int) -> str:
    return f"psi{i}"


def a_name(i: int) -> str:
    return f"a{i}"


def d_name(J: Sequence[int]) -> str:
    return "D_" + "_".join(str(j) for j in sorted(J))


def divisor_subsets(n: int) -> list[tuple[int, ...]]:
    return [J for size in range(2, n + 1) for J in combinations(range(1, n + 1), size)]


def generator_names(n: int) -> list[str]:
    return [psi_name(i) for i in range(1, n + 1)] + [d_name(J) for J in divisor_subsets(n)]


def _mult(x: Mult) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, str):
        return MultiPoly.var(x)
    return MultiPoly.const(Fraction(x))


def symbolic(n: int) -> list[MultiPoly]:
    return [MultiPoly.var(a_name(i)) for i in range(1, n + 1)]


def hain_base(g: int, n: int, a: Sequence[Mult] | None = None) -> MultiPoly:
    """Sum a_i^2 psi_i / 2 - sum_J (sum_{i<j in J} a_i a_j) D_J."""
    if n < 2:
        raise DomainError("need n >= 2")
    mults = symbolic(n) if a is None else [_mult(x) for x in a]
    if len(mults) != n:
        raise DomainError(f"expected {n} multiplicities, got {len(mults)}")
    if all(m.vars == () for m in mults):
        total = sum((m.terms.get(0, Fraction(0)) for m in mults), Fraction(0))
        if total != 0:
            raise DomainError(f"numeric multiplicities must sum to 0, got {total}")
    out = MultiPoly()
    for i, m in enumerate(mults, start=1):
        out = out + m * m * MultiPoly.var(psi_name(i)) * Fraction(1, 2)
    for J in divisor_subsets(n):
        coeff = MultiPoly()
        for i, j in combinations(J, 2):
            coeff = coeff + mults[i - 1] * mults[j - 1]
        if not coeff.is_zero():
            out = out - coeff * MultiPoly.var(d_name(J))
    return out


@dataclass(frozen=True)
class RtClass:
    g: int
    n: int
    poly: MultiPoly

    def generator_degree(self) -> set[int]:
        return set(self.poly._partial_degrees(generator_names(self.n)))


def hain_class(g: int, n: int, a: Sequence[Mult] | None = None) -> RtClass:
    if g < 1:
        raise DomainError("need g >= 1")
    base = hain_base(g, n, a)
    return RtClass(g, n, (base**g) / factorial(g))


def forgetful_pullback(p: MultiPoly, n: int) -> MultiPoly:
    """Pull back along the map forgetting point ``n``: D_J -> D_J + D_{J+{n}}."""
    mapping = {}
    for J in divisor_subsets(n - 1):
        name = d_name(J)
        if name in p.vars:
            mapping[name] = MultiPoly.var(name) + MultiPoly.var(d_name(J + (n,)))
    if any(v.startswith("D_") and str(n) in v.split("_")[1:] for v in p.vars):
        raise DomainError(f"polynomial already mentions point {n}")
    return p.substitute(mapping) if mapping else p


def restriction_identity(g: int, n: int) -> bool:
    """Setting a_n = 0 in the n-point base equals the pulled-back (n-1)-point base."""
    if n < 3:
        raise DomainError("need n >= 3")
    lhs = hain_base(g, n).substitute({a_name(n): 0})
    rhs = forgetful_pullback(hain_base(g, n - 1), n)
    return lhs == rhs


def class_restriction_identity(g: int, n: int) -> bool:
    """The same identity after raising to the g-th power."""
    lhs = hain_class(g, n).poly.substitute({a_name(n): 0})
    rhs = forgetful_pullback(hain_class(g, n - 1).poly, n)
    return lhs == rhs
