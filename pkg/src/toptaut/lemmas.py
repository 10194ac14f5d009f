"""Brute-force checks of the three linear systems used by the socle argument."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .arith import DomainError, rat_str
from .exactla import kernel

THIRD = Fraction(1, 3)


@dataclass
class LemmaReport:
    lemma: str
    parameter: int
    found: int
    expected: int
    match: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "parameter": self.parameter,
            "found": self.found,
            "expected": self.expected,
            "match": self.match,
            **self.details,
        }


def _proportional(u: dict, w: dict, keys) -> bool:
    """u and w are non-zero multiples of each other (w may vanish only where u does)."""
    ref = next((k for k in keys if w.get(k, 0)), None)
    if ref is None:
        return not any(u.get(k, 0) for k in keys)
    if not u.get(ref, 0):
        return False
    s = Fraction(u[ref]) / w[ref]
    return all(Fraction(u.get(k, 0)) == s * w.get(k, 0) for k in keys)


def _add(eq: dict, key, c) -> None:
    w = eq.get(key, 0) + c
    if w:
        eq[key] = w
    else:
        eq.pop(key, None)


def _triples(total: int):
    """Unordered triples of positive integers with the given sum."""
    for a in range(1, total):
        for b in range(a, total - a):
            c = total - a - b
            if c >= b:
                yield (a, b, c)


def _pairs(t):
    a, b, c = t
    return ((a, b, c), (a, c, b), (b, c, a))


# ---------------------------------------------------------------------------

def lemma51_system(p: int) -> tuple[list[int], list[dict]]:
    unknowns = list(range(1, p - 1))
    eqs = []
    for t in _triples(p):
        eq: dict = {}
        for x in t:
            _add(eq, x, 1)
        if eq:
            eqs.append(eq)
    return unknowns, eqs


def lemma51_check(p: int) -> LemmaReport:
    """x_l1 + x_l2 + x_l3 = 0 over l1+l2+l3 = p forces x_i proportional to i/p - 1/3."""
    if p < 3:
        raise DomainError("need p >= 3")
    unknowns, eqs = lemma51_system(p)
    basis = kernel(eqs, unknowns)
    family = {i: Fraction(i, p) - THIRD for i in unknowns}
    expected = 0 if p == 3 else 1
    ok = len(basis) == expected and all(_proportional(b, family, unknowns) for b in basis)
    if p == 3:
        ok = ok and not any(family.values())
    return LemmaReport("triple-sum", p, len(basis), expected, ok)


# ---------------------------------------------------------------------------

def lemma52_unknowns(bound: int) -> list[tuple[int, int]]:
    return [(i, s - i) for s in range(2, bound + 1) for i in range(1, s)]


def lemma52_system(bound: int) -> list[dict]:
    """Both families of equations on v_{i,j}, z_{i,j} := -v_{i,j} - v_{j,i}, degree <= bound."""

    def v(eq, i, j, c):
        _add(eq, (i, j), c)

    def z(eq, i, j, c):
        v(eq, i, j, -c)
        v(eq, j, i, -c)

    eqs = []
    for s in range(3, bound + 1):
        for t in _triples(s):
            eq: dict = {}
            for x, y, k in _pairs(t):
                v(eq, k, x + y, 1)
                z(eq, x, y, 1)
            eqs.append(eq)
    for s in range(2, bound + 1):
        for a1, c1 in product(range(1, s), repeat=2):
            a = (a1, s - a1)
            c = (c1, s - c1)
            eq = {}
            z(eq, *a, 1)
            z(eq, *c, -1)
            for ai, cj in product(a, c):
                if ai > cj:
                    v(eq, cj, ai - cj, -1)
                if cj > ai:
                    v(eq, ai, cj - ai, 1)
            if eq:
                eqs.append(eq)
    return eqs


def solution_coeffs(i: int, j: int) -> dict[int, Fraction]:
    """v_{i,j} in terms of alpha_2, alpha_3, ... (alpha_1 = 0)."""
    out: dict[int, Fraction] = {}
    s = i + j
    for k, c in ((s, Fraction(i, s) - THIRD), (i, THIRD - Fraction(s, i)), (j, THIRD)):
        if k >= 2:
            _add(out, k, c)
    return out


def lemma52_symbolic(bound: int) -> bool:
    """Every equation cancels after substituting the solution with formal alphas."""
    for eq in lemma52_system(bound):
        tot: dict = {}
        for (i, j), c in eq.items():
            for k, x in solution_coeffs(i, j).items():
                _add(tot, k, c * x)
        if tot:
            return False
    return True


def reconstruct_alphas(v: dict[tuple[int, int], Fraction], bound: int) -> dict[int, Fraction]:
    """The recursion from the proof: alpha_2 = 6 v_11, then degree by degree."""
    alpha = {1: Fraction(0), 2: 6 * v[(1, 1)]}
    for d in range(3, bound + 1):

        def shifted(i, j):
            return v[(i, j)] - (THIRD - Fraction(d, i)) * alpha[i] - THIRD * alpha[j]

        if d == 3:
            alpha[3] = 3 * shifted(2, 1)
        else:
            alpha[d] = shifted(1, d - 1) / (Fraction(1, d) - THIRD)
    return alpha


def lemma52_check(bound: int, seed: int = 0) -> LemmaReport:
    if bound < 3:
        raise DomainError("need a bound >= 3")
    unknowns = lemma52_unknowns(bound)
    basis = kernel(lemma52_system(bound), unknowns)
    symbolic = lemma52_symbolic(bound)
    rng = random.Random(seed)
    weights = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in basis]
    sol = {u: sum((w * b.get(u, 0) for w, b in zip(weights, basis)), Fraction(0)) for u in unknowns}
    alpha = reconstruct_alphas(sol, bound)
    rebuilt = all(
        sol[(i, j)] == sum((c * alpha[k] for k, c in solution_coeffs(i, j).items()), Fraction(0))
        for i, j in unknowns
    )
    expected = bound - 1
    return LemmaReport(
        "pair-sum",
        bound,
        len(basis),
        expected,
        symbolic and rebuilt and len(basis) == expected,
        {"symbolic": symbolic, "constructive": rebuilt, "seed": seed,
         "alpha": {str(k): rat_str(x) for k, x in sorted(alpha.items()) if k >= 2}},
    )


# ---------------------------------------------------------------------------

def lemma53_unknowns(d: int) -> list[tuple[int, int, int]]:
    return [(i, j, d - i - j) for i in range(1, d - 1) for j in range(1, d - i)]


def lemma53_system(d: int) -> list[dict]:
    eqs = []
    for a in range(1, d - 2):
        for t in _triples(d - a):
            eq: dict = {}
            for x, y, k in _pairs(t):
                _add(eq, (k, x + y, a), 1)
            if eq:
                eqs.append(eq)
    for i, j, k in lemma53_unknowns(d):
        if j < k:
            eqs.append({(i, j, k): k, (i, k, j): j})
        elif j == k:
            eqs.append({(i, j, k): k + j})
    return eqs


def lemma53_family(d: int) -> dict[tuple[int, int, int], Fraction]:
    return {
        (i, j, k): (Fraction(i, d - 1) - THIRD) * ((k == 1) - Fraction(j == 1, k))
        for i, j, k in lemma53_unknowns(d)
    }


def lemma53_check(d: int) -> LemmaReport:
    if d < 3:
        raise DomainError("need d >= 3")
    unknowns = lemma53_unknowns(d)
    basis = kernel(lemma53_system(d), unknowns)
    expected = 0 if d in (3, 4) else 1
    family = lemma53_family(d)
    ok = len(basis) == expected and all(_proportional(b, family, unknowns) for b in basis)
    return LemmaReport("weighted-triple", d, len(basis), expected, ok)
