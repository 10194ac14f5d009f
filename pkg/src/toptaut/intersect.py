"""Top-degree psi/kappa intersection coefficients.

Nothing geometric is materialized: classes are represented by their pairings
with the boundary-vanishing forms alpha_s, which is all the top-degree
computation ever uses.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .arith import DomainError, a_g, c_const, double_factorial
from .exactla import Matrix, determinant


@dataclass(frozen=True)
class TopProfile:
    g: int
    d: tuple[int, ...]
    k: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(self.d))
        object.__setattr__(self, "k", tuple(self.k))
        if self.g < 2:
            raise DomainError("g must be >= 2")
        if not self.d:
            raise DomainError("need at least one marked point")
        if any(x < 0 for x in self.d + self.k):
            raise DomainError("exponents must be non-negative")
        if sum(self.d) + sum(self.k) != self.g - 1:
            raise DomainError(f"sum(d) + sum(k) must equal g-1 = {self.g - 1}")

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def m(self) -> int:
        return len(self.k)


def faber_coeff(g: int, l: list[int]) -> Fraction:
    """Coefficient of kappa_{g-2} in the pushforward of prod psi_i^{l_i+1}.

    At most one entry may be -1 (the string-equation extension).
    """
    l = list(l)
    if g < 2:
        raise DomainError("g must be >= 2")
    if any(x < -1 for x in l) or sum(x == -1 for x in l) > 1:
        raise DomainError("entries must be >= 0 except for at most one -1")
    if sum(l) != g - 2:
        raise DomainError(f"entries must sum to g-2 = {g - 2}")
    n = len(l)
    den = Fraction(factorial(2 * g - 2))
    for x in l:
        den *= double_factorial(2 * x + 1)
    return factorial(2 * g - 3 + n) * double_factorial(2 * g - 3) / den


def string_recursion_rhs(g: int, l: list[int]) -> Fraction:
    """Right side of the string recursion for a profile whose first entry is -1."""
    if not l or l[0] != -1:
        raise DomainError("first entry must be -1")
    rest = list(l[1:])
    total = Fraction(0)
    for i in range(len(rest)):
        lowered = rest[:i] + [rest[i] - 1] + rest[i + 1 :]
        total += faber_coeff(g, lowered)
    return total


def alpha_pairing(p: TopProfile, s: int) -> Fraction:
    """Integral of prod psi^d kappa_k against alpha_s (1-based ``s``)."""
    if not 1 <= s <= p.n:
        raise DomainError(f"index {s} out of range 1..{p.n}")
    return c_const(p.g, list(p.d), list(p.k)) * (2 * p.d[s - 1] + 1) * a_g(p.g)


def gen_top_coeffs(p: TopProfile) -> list[Fraction]:
    """Coefficients of psi_i^{g-1} expressing prod psi^d kappa_k in top degree."""
    g, n = p.g, p.n
    sk = sum(p.k)
    pref = c_const(g, list(p.d), list(p.k)) * factorial(2 * g - 1) / factorial(2 * g - 2 + n)
    return [pref * Fraction((2 * g - 2 + n) * di + sk, g - 1) for di in p.d]


def psi_top_scalar(g: int, n: int) -> Fraction:
    """The common factor c with M = c (U + (2g-2) Id)."""
    return c_const(g, [g - 1] + [0] * (n - 1), []) * a_g(g)


def matrix_m(g: int, n: int) -> tuple[Matrix, bool]:
    """Pairing matrix M_is of psi_i^{g-1} with alpha_s, and non-degeneracy."""
    if g < 2 or n < 1:
        raise DomainError("need g >= 2 and n >= 1")
    rows, nondeg = _matrix_m(g, n)
    return Matrix([list(r) for r in rows], n), nondeg


@lru_cache(maxsize=256)
def _matrix_m(g: int, n: int) -> tuple[tuple[tuple[Fraction, ...], ...], bool]:
    rows = []
    for i in range(n):
        d = tuple((g - 1) if j == i else 0 for j in range(n))
        prof = TopProfile(g, d)
        rows.append(tuple(alpha_pairing(prof, s) for s in range(1, n + 1)))
    return tuple(rows), determinant(Matrix([list(r) for r in rows], n)) != 0


def det_m_formula(g: int, n: int) -> Fraction:
    c = psi_top_scalar(g, n)
    return c**n * Fraction(2 * g - 2) ** (n - 1) * (2 * g - 2 + n)


def verify_pairing_consistency(p: TopProfile) -> bool:
    rows, _ = _matrix_m(p.g, p.n)
    coeffs = gen_top_coeffs(p)
    for s in range(1, p.n + 1):
        lhs = alpha_pairing(p, s)
        rhs = sum((coeffs[i] * rows[i][s - 1] for i in range(p.n)), Fraction(0))
        if lhs != rhs:
            return False
    return True


def profiles(g: int, n: int, m: int):
    """All valid profiles with exactly ``n`` psi exponents and ``m`` kappa indices."""
    from itertools import product

    total = g - 1
    for d in product(range(total + 1), repeat=n):
        rest = total - sum(d)
        if rest < 0:
            continue
        for k in product(range(rest + 1), repeat=m):
            if sum(k) == rest:
                yield TopProfile(g, d, k)
