"""Exact scalars and the closed-form constants of the top-degree computations.

All values are :class:`fractions.Fraction`; nothing here ever touches a float.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

Rat = Fraction


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


def rat_str(x: Fraction | int) -> str:
    """Serialize as ``"p/q"`` in lowest terms (``"0/1"`` for zero)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Fraction:
    return Fraction(s.replace("−", "-"))


@lru_cache(maxsize=None)
def _double_factorial_int(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def double_factorial(n: int) -> Fraction:
    """n!! with the conventions (-1)!! = 0!! = 1."""
    if n < -1:
        raise DomainError(f"double factorial undefined for {n}")
    return Fraction(_double_factorial_int(n))


@lru_cache(maxsize=None)
def _bernoulli_table(m: int) -> tuple[Fraction, ...]:
    # B_0..B_m with B_1 = -1/2, from sum_{k<=m} binom(m+1, k) B_k = 0
    table = [Fraction(1)]
    for j in range(1, m + 1):
        s = sum(comb(j + 1, k) * table[k] for k in range(j))
        table.append(-s / (j + 1))
    return tuple(table)


def bernoulli(m: int) -> Fraction:
    if m < 0 or m % 2:
        raise DomainError(f"only even non-negative Bernoulli indices are exposed, got {m}")
    return _bernoulli_table(m)[m]


def a_g(g: int) -> Fraction:
    """The lambda_g lambda_{g-1} kappa_{g-2} integral over the genus g moduli space."""
    if g < 2:
        raise DomainError(f"A_g needs g >= 2, got {g}")
    return _a_g(g)


@lru_cache(maxsize=None)
def _a_g(g: int) -> Fraction:
    return (-1) ** (g - 1) * bernoulli(2 * g) * factorial(g - 1) / (2**g * factorial(2 * g))


def c_const(g: int, d: list[int], k: list[int]) -> Fraction:
    if g < 2:
        raise DomainError(f"g must be >= 2, got {g}")
    if any(x < 0 for x in list(d) + list(k)):
        raise DomainError("exponents must be non-negative")
    if sum(d) + sum(k) != g - 1:
        raise DomainError(f"sum(d) + sum(k) must equal g-1 = {g - 1}")
    return _c_const(g, tuple(sorted(d)) + tuple(sorted(k)))


@lru_cache(maxsize=4096)
def _c_const(g: int, exps: tuple[int, ...]) -> Fraction:
    # symmetric in all exponents, so the sorted tuple is a valid cache key
    den = factorial(2 * g - 2)
    for x in exps:
        den *= _double_factorial_int(2 * x + 1)
    return Fraction(factorial(2 * g - 3 + len(exps)) * _double_factorial_int(2 * g - 3), den)
