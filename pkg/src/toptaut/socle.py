"""Finite membership certificates for the reductions behind the socle statement.

A certificate builds an exact span from tagged K-generators inside a
truncated ambient space and tests target vectors for membership. Failure at
a small truncation is reported as inconclusive, never as a refutation.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .arith import DomainError
from .dr import (
    DrSymbol,
    TautVector,
    normalize,
    psi1_running_point,
    running_point,
    swap_vector,
)
from .exactla import Subspace
from .poly import MultiPoly
from .vz import SYMMETRY_KINDS, V, VzVector, main_relation, scaling_generator, symmetry_generators

PASS = "pass"
INCONCLUSIVE = "inconclusive"


@dataclass
class Certificate:
    statement: str
    params: dict
    ambient_dim: int = 0
    generator_count: int = 0
    targets: list[tuple[str, bool]] = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(m for _, m in self.targets) and all(self.checks.values())

    @property
    def status(self) -> str:
        return PASS if self.passed else INCONCLUSIVE

    def to_json(self) -> dict:
        return {
            "statement": self.statement,
            "params": self.params,
            "ambient_dim": self.ambient_dim,
            "generator_count": self.generator_count,
            "targets": [{"target": t, "member": m} for t, m in self.targets],
            "checks": self.checks,
            "notes": self.notes,
            "pass": self.passed,
            "status": self.status,
        }


class _Span:
    """A Subspace that counts its generators and tracks the ambient symbols."""

    def __init__(self):
        self.space = Subspace()
        self.count = 0

    def add(self, v) -> None:
        terms = v.terms if hasattr(v, "terms") else v
        if terms:
            self.count += 1
            self.space.insert(terms)

    def member(self, v) -> bool:
        terms = v.terms if hasattr(v, "terms") else v
        return not terms or self.space.member(terms)

    @property
    def ambient(self) -> int:
        return len(self.space.labels)


def _rp_pair(span: _Span, sym: DrSymbol, seen: set) -> None:
    """Running point through point 1 for a symbol with one forgotten point."""
    if sym.k != 1 or sym.n < 1:
        return
    x, rest = sym.marked[0], list(sym.marked[1:])
    key = (tuple(sorted((x, sym.forgotten[0]))), tuple(rest))
    if key in seen or sym.g < 2:
        return
    seen.add(key)
    span.add(running_point(sym.g, list(key[0]), rest))


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for x in range(1, total - parts + 2):
        for rest in _compositions(total - x, parts - 1):
            yield (x,) + rest


def _triples(total: int):
    for a in range(1, total):
        for b in range(a, total - a):
            c = total - a - b
            if c >= b:
                yield (a, b, c)


# ---------------------------------------------------------------------------
# first step: degree g-1

def first_step_target(g: int, b: int, a: Sequence[int]) -> DrSymbol | None:
    """DR(~m_b prod m_a m_{-d}) with d = b + sum a."""
    d = b + sum(a)
    return normalize(g, list(a) + [-d], [b])


def relation1_vector(g: int, n: int, b: Sequence[int], rest: Sequence[int]) -> TautVector:
    """sum_i (dt + (r-3) b_i)/r DR(~m_{dt - b_i} m_{b_i} rest), r = 2g+n, dt = sum b."""
    r = 2 * g + n
    dt = sum(b)
    out = TautVector()
    for bi in b:
        out.add_raw(g, [bi] + list(rest), [dt - bi], Fraction(dt + (r - 3) * bi, r))
    return out


def _lower_targets(v: TautVector, n: int, d: int, dt: int) -> Iterable[DrSymbol]:
    """Symbols of v having target shape with (d', dt') < (d, dt)."""
    for s, _ in v:
        if s.k != 1 or s.n != n:
            continue
        m = s.marked if s.marked[-1] < 0 else tuple(-x for x in s.marked)
        f = s.forgotten[0] if s.marked[-1] < 0 else -s.forgotten[0]
        if m[-1] >= 0 or f <= 0 or any(x <= 0 for x in m[:-1]):
            continue
        if (-m[-1], m[0] + f) < (d, dt):
            yield s


def relation1_derivation_check(g: int, n: int, b: Sequence[int], a_rest: Sequence[int]) -> bool:
    """psi_1 times the running point through (b1, b2, b3) agrees with relation1 modulo K.

    The marked points are (rotating, *a_rest, -d) with d = sum b + sum a_rest;
    the absorbing span is running points through point 1 plus lower targets.
    The psi_1 expansion equals minus relation1 there, so the sum is tested.
    """
    b, a_rest = [int(x) for x in b], [int(x) for x in a_rest]
    if len(b) != 3 or min(b) < 1 or any(x < 1 for x in a_rest):
        raise DomainError("need three positive b's and positive a's")
    if len(a_rest) != n - 2:
        raise DomainError(f"n = {n} needs {n - 2} extra multiplicities")
    dt = sum(b)
    d = dt + sum(a_rest)
    rest = a_rest + [-d]
    diff = psi1_running_point(g, b, rest) + relation1_vector(g, n, b, rest)
    span = _Span()
    seen: set = set()
    for s, _ in diff:
        _rp_pair(span, s, seen)
    for s in _lower_targets(diff, n, d, dt):
        span.add(TautVector.of(s))
    return span.member(diff)


def first_step_certificate(g: int, n: int, d_max: int) -> Certificate:
    """Every DR(~m_b prod m_a m_{-d}) with d <= d_max lies in pullbacks + psi_1 pullbacks."""
    if g < 2 or n < 1 or d_max < 2:
        raise DomainError("need g >= 2, n >= 1, d_max >= 2")
    cert = Certificate("first-step", {"g": g, "n": n, "d_max": d_max})
    cert.notes.append("n=1 seed fact: (pi_1)_*(psi_1 pi_1^* kappa_{g-2}) = (2g-2) kappa_{g-2} (recorded, not computed)")
    span = _Span()
    seen: set = set()
    gens = []
    if n == 1:
        for b1, b2 in product(range(-d_max, d_max + 1), repeat=2):
            b3 = -b1 - b2
            if 0 in (b1, b2, b3) or max(abs(b1), abs(b2), abs(b3)) > d_max or not b1 <= b2 <= b3:
                continue
            gens.append(psi1_running_point(g, [b1, b2, b3], []))
        targets = [(f"DR(m{-d} ~m{d})", normalize(g, [-d], [d])) for d in range(1, d_max + 1)]
        # one marked point: DR(m_-d ~m_d) is homogeneous of degree 2g in d
        one = normalize(g, [-1], [1])
        for d in range(2, d_max + 1):
            v = TautVector.of(normalize(g, [-d], [d]))
            v.add_term(one, -Fraction(d) ** (2 * g))
            gens.append(v)
        cert.notes.append("n=1 uses the exact homogeneity DR(m_-d ~m_d) = d^(2g) DR(m_-1 ~m_1)")
    else:
        for d in range(3, d_max + 1):
            for dt in range(3, d - (n - 2) + 1):
                for a_rest in _compositions(d - dt, n - 2):
                    rest = list(a_rest) + [-d]
                    for t in _triples(dt):
                        gens.append(psi1_running_point(g, list(t), rest))
        targets = []
        for d in range(2, d_max + 1):
            for comp in _compositions(d, n):
                b, a = comp[0], comp[1:]
                label = f"DR(~m{b} {' '.join(f'm{x}' for x in a)} m{-d})"
                targets.append((label, first_step_target(g, b, a)))
    for v in gens:
        span.add(v)
    for v in gens:
        for s, _ in v:
            _rp_pair(span, s, seen)
    for _, t in targets:
        if t is not None:
            _rp_pair(span, t, seen)
    for label, t in targets:
        cert.targets.append((label, t is None or span.member(TautVector.of(t))))
    cert.ambient_dim = span.ambient
    cert.generator_count = span.count
    return cert


# ---------------------------------------------------------------------------
# second step: V/Z level

def _nonzero_tuples(length: int, budget: int):
    """Tuples of non-zero integers with sum of absolute values <= budget."""
    if length == 0:
        yield ()
        return
    for x in range(1, budget - length + 2):
        for rest in _nonzero_tuples(length - 1, budget - x):
            yield (x,) + rest
            yield (-x,) + rest


def _vz_symbols(g: int, n: int, bound: int) -> list:
    """Entry tuples of V/Z symbols with n+1 non-zero entries, non-zero sum and degree <= bound."""
    out = []
    for f in _nonzero_tuples(n + 1, 2 * bound):
        d = sum(f)
        if d and sum(abs(x) for x in f) + abs(d) <= 2 * bound:
            out.append(f)
    return out


def _main_instances(n: int, bound: int):
    """(b, b4, a) with |b1|+|b2|+|b3|+|b4|+sum|a| <= 2 bound, b unordered."""
    for t in _nonzero_tuples(n + 2, 2 * bound):
        b, a = t[:3], list(t[3:])
        if not b[0] <= b[1] <= b[2]:
            continue
        b4 = -sum(t)
        if b4 and sum(abs(x) for x in t) + abs(b4) <= 2 * bound:
            yield b, b4, a


def _degree_ok(v: VzVector, bound: int) -> bool:
    return all(s.degree <= bound for s, _ in v)


def _add_symmetries(span: _Span, g: int, n: int, bound: int, kinds) -> None:
    for f in _vz_symbols(g, n, bound):
        for gen in symmetry_generators(g, f, kinds):
            if _degree_ok(gen.vector, bound):
                span.add(gen.vector)


def _add_mains(span: _Span, g: int, n: int, bound: int) -> None:
    for b, b4, a in _main_instances(n, bound):
        v = main_relation(g, b, b4, a)
        if v and _degree_ok(v, bound):
            span.add(v)


def recursion_identity(g: int) -> bool:
    """The closed form for alpha_d solves the alpha-recursion, as a polynomial identity in d.

    The recursion is multiplied by 3d(d-1) to clear denominators.
    """
    d = MultiPoly.var("d")
    e = 2 * g + 1
    a_d = d ** 3 - d ** e  # alpha_d * (8 - 2^e) / alpha_2
    a_prev = (d - 1) ** 3 - (d - 1) ** e
    c1 = (2 * d - 3) * (d - 1)  # 3d(d-1) * ((d-1)/d - 1/3)
    c2 = -(2 * d + 1) * d  # 3d(d-1) * (1/3 - d/(d-1))
    c3 = d * (d - 1)  # 3d(d-1) * 1/3
    lhs = c1 * a_d + c2 * a_prev + c1 * d ** e + c2 * (d - 1) ** e + c3
    return lhs.is_zero()


def closed_form_v_identity(g: int) -> bool:
    """Substituting the closed alphas gives v_ij = P(i,j)/(2^(2g+1) - 8) alpha_2,
    P the bracket of the displayed v-formula; checked after clearing 3i(i+j)."""
    i, j = MultiPoly.var("i"), MultiPoly.var("j")
    s = i + j
    e = 2 * g + 1

    def alpha(k):  # times (8 - 2^e)
        return k ** 3 - k ** e

    # 3 i s times each coefficient of the solution formula
    ci, cs, cj = i * (3 * i - s), i * s - 3 * s * s, i * s
    sol = ci * alpha(s) + cs * alpha(i) + cj * alpha(j)
    bracket = ci * s ** e + cs * i ** e + cj * j ** e
    return (sol + bracket).is_zero()


def n1_certificate(g: int, bound: int, shape: bool = True) -> Certificate:
    """Every v_{i,j} with i, j >= 1 and i+j <= bound lies in K (one marked point)."""
    if g < 2:
        raise DomainError("need g >= 2")
    cert = Certificate("second-step-n1", {"g": g, "bound": bound, "shape": shape})
    cert.checks["recursion_identity"] = recursion_identity(g)
    cert.checks["closed_form_v"] = closed_form_v_identity(g)
    if bound < 6:
        cert.notes.append("bound below 6: inconclusive by construction")
    span = _Span()
    _add_mains(span, g, 1, bound)
    _add_symmetries(span, g, 1, bound, ("sign", "zsign", "one", "two", "vvz"))
    for i in range(1, bound):
        for j in range(1, bound - i + 1):
            for a in range(2, bound // (i + j) + 1):
                span.add(scaling_generator(g, i, j, a).vector)
    r = 2 * g + 2
    for i in range(1, bound):
        for j in range(1, bound - i + 1):
            w = ("w", min(i, j), max(i, j))
            rel = {w: Fraction((r - 1) * (r - 4), r - 3)}
            vij, vji = V(g, i, j), V(g, j, i)
            for sym, c in (
                (vij, -Fraction(r, r - 3) * Fraction(i, i * j) - Fraction(r, i + j)),
                (vji, -Fraction(r, r - 3) * Fraction(j, i * j) - Fraction(r, i + j)),
            ):
                rel[sym] = rel.get(sym, 0) + c
            span.add({k: x for k, x in rel.items() if x})
            if shape and i <= j:
                rel = {w: Fraction(1)}
                for a in range(1, 2 * g):
                    rel[("c", a)] = -Fraction(i ** a * j ** (2 * g - a))
                span.add(rel)
    for i in range(1, bound):
        for j in range(1, bound - i + 1):
            cert.targets.append((str(V(g, i, j)), span.member(VzVector({V(g, i, j): 1}))))
    cert.ambient_dim = span.ambient
    cert.generator_count = span.count
    return cert


N2_KINDS = ("sign", "zsign", "one", "two", "vvz", "two_i")


def n2_certificate(g: int, bound: int) -> Certificate:
    """v_{i,j,k} (positive) and v_{i,j,-k} (k < i+j) lie in K for two marked points."""
    if g < 2 or bound < 3:
        raise DomainError("need g >= 2 and bound >= 3")
    cert = Certificate("second-step-n2", {"g": g, "bound": bound})

    def v(*f):
        return VzVector({V(g, *f): 1})

    # forced values from the symmetry relations alone
    low = _Span()
    _add_symmetries(low, g, 2, 3, N2_KINDS)
    cert.checks["v(1,1,-1) forced by symmetries"] = low.member(v(1, 1, -1))
    cert.checks["v(1,2,-2) = v(2,1,-1) = 0"] = low.member(v(1, 2, -2)) and low.member(v(2, 1, -1))
    cert.checks["v(2,1,-2) = -1/2 v(1,2,-1)"] = low.member(v(2, 1, -2) + v(1, 2, -1) * Fraction(1, 2))
    cert.checks["v(1,2,-1) needs the main relation"] = not low.member(v(1, 2, -1))
    _add_mains(low, g, 2, 3)
    cert.checks["v(1,2,-1) = 0 at degree 3"] = low.member(v(1, 2, -1))

    span = _Span()
    _add_mains(span, g, 2, bound)
    _add_symmetries(span, g, 2, bound, N2_KINDS)
    for s in range(3, bound + 1):
        for i, j, k in _compositions(s, 3):
            cert.targets.append((str(V(g, i, j, k)), span.member(v(i, j, k))))
    for s in range(2, bound + 1):
        for i, j in _compositions(s, 2):
            for k in range(1, s):
                cert.targets.append((str(V(g, i, j, -k)), span.member(v(i, j, -k))))
    cert.ambient_dim = span.ambient
    cert.generator_count = span.count
    return cert


def n3_certificate(g: int, n: int, bound: int) -> Certificate:
    """V(prod m_a) lies in K for all positive a with sum a <= bound, n >= 3 marked points."""
    if g < 2 or n < 3 or bound < n + 1:
        raise DomainError("need g >= 2, n >= 3 and bound >= n+1")
    cert = Certificate("second-step-nk", {"g": g, "n": n, "bound": bound})
    ones = VzVector({V(g, *([1] * (n + 1))): 1})
    base = _Span()
    for gen in symmetry_generators(g, [1] * (n + 1), ["two_i"]):
        base.add(gen.vector)
    cert.checks["all-ones via (2,i) alone"] = base.member(ones)
    span = _Span()
    _add_mains(span, g, n, bound)
    _add_symmetries(span, g, n, bound, SYMMETRY_KINDS)
    for s in range(n + 1, bound + 1):
        for f in _compositions(s, n + 1):
            cert.targets.append((str(V(g, *f)), span.member(VzVector({V(g, *f): 1}))))
    cert.ambient_dim = span.ambient
    cert.generator_count = span.count
    return cert


# ---------------------------------------------------------------------------
# symmetric parts in degree g-1

def symmetry_rows(g: int, a: Sequence[int], b: int) -> list[TautVector]:
    """The three running-point vectors whose combination row1 + row3 - row2 symmetrizes
    DR(m_a1 m_a2 ... ~m_b) under the swap of the first two points."""
    a = [int(x) for x in a]
    a1, a2, tail = a[0], a[1], a[2:]
    row1 = running_point(g, [a1, b], [a2] + tail, 0) * Fraction(1, a1)
    row2 = running_point(g, [a1, a2], [b] + tail, 1) * Fraction(b, a1 * a2)
    row3 = running_point(g, [a2, b], [a1] + tail, 0) * Fraction(1, a2)
    return [row1, row2, row3]


def symmetrized(g: int, a: Sequence[int], b: int) -> TautVector:
    alpha = TautVector.of(normalize(g, list(a), [b]))
    return alpha + swap_vector(alpha, 0, 1)


def symmetry_sample_check(g: int, a: Sequence[int], b: int) -> bool:
    a = [int(x) for x in a]
    if len(a) < 2 or 0 in a or b == 0 or sum(a) + b != 0:
        raise DomainError("need n >= 2 non-zero a's and b = -sum a")
    rows = symmetry_rows(g, a, b)
    target = symmetrized(g, a, b)
    if rows[0] + rows[2] - rows[1] != target:
        return False
    span = _Span()
    for r in rows:
        span.add(r)
    return span.member(target)


def symmetry_samples(n: int, samples: int, seed: int, spread: int = 4) -> list[tuple[list[int], int]]:
    rng = random.Random(seed)
    out = []
    while len(out) < samples:
        a = [rng.choice([x for x in range(-spread, spread + 1) if x]) for _ in range(n)]
        if sum(a):
            out.append((a, -sum(a)))
    return out


def symmetry_reduction_check(g: int, n: int, samples: int, seed: int = 0) -> bool:
    """alpha + swap_12(alpha) lies in the span of the three running-point rows, for random alpha."""
    if n < 2:
        raise DomainError("need n >= 2")
    return all(symmetry_sample_check(g, a, b) for a, b in symmetry_samples(n, samples, seed))
