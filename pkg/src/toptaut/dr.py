"""Formal double ramification cycles on the open moduli space.

A :class:`DrSymbol` is an opaque normalized symbol DR_g(prod m_a prod ~m_b);
:class:`TautVector` is a finite Q-linear combination of symbols. The rewrite
rules (sign change, psi_1 multiplication, running point, top evaluation) are
the only operations the calculus knows.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Iterator, Mapping, Sequence

from .arith import DomainError, rat_str

log = logging.getLogger(__name__)

# rewrites that produced a forgotten multiplicity 0 (audited, see normalize)
ZERO_FORGOTTEN_EVENTS: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = []
_AUDIT_LIMIT = 10_000


@dataclass(frozen=True, order=True)
class DrSymbol:
    g: int
    marked: tuple[int, ...]
    forgotten: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.marked)

    @property
    def k(self) -> int:
        return len(self.forgotten)

    @property
    def degree(self) -> int:
        return self.g - self.k

    def negated(self) -> "DrSymbol":
        return DrSymbol(self.g, tuple(-a for a in self.marked), tuple(sorted(-b for b in self.forgotten)))

    def to_json(self) -> dict:
        return {"g": self.g, "m": list(self.marked), "t": list(self.forgotten)}

    @classmethod
    def from_json(cls, d: Mapping) -> "DrSymbol":
        s = normalize(d["g"], d["m"], d["t"])
        if s is None:
            raise DomainError(f"{d} normalizes to zero")
        return s

    def __str__(self) -> str:
        parts = [f"m{a}" for a in self.marked] + [f"~m{b}" for b in self.forgotten]
        return f"DR{self.g}({' '.join(parts)})"


def normalize(g: int, marked: Sequence[int], forgotten: Sequence[int] = ()) -> DrSymbol | None:
    """Canonical symbol, or ``None`` when the class vanishes.

    Zero when k > g or k = 0 (degree >= g on the open part), or when a
    forgotten entry is 0. The last rule is an axiom of this calculus: a
    forgotten point of multiplicity 0 is a free point and the pushforward of a
    pullback vanishes in fixed degree.
    """
    marked = tuple(int(a) for a in marked)
    forgotten = tuple(sorted(int(b) for b in forgotten))
    if sum(marked) + sum(forgotten) != 0:
        raise DomainError(f"multiplicities {marked} / {forgotten} do not sum to zero")
    k = len(forgotten)
    if k == 0 or k > g:
        return None
    if 0 in forgotten:
        if len(ZERO_FORGOTTEN_EVENTS) < _AUDIT_LIMIT:
            ZERO_FORGOTTEN_EVENTS.append((g, marked, forgotten))
        log.debug("zero forgotten multiplicity: g=%d %s %s", g, marked, forgotten)
        return None
    neg = (tuple(-a for a in marked), tuple(sorted(-b for b in forgotten)))
    if marked + forgotten < neg[0] + neg[1]:
        marked, forgotten = neg
    return DrSymbol(g, marked, forgotten)


class TautVector:
    """Finite formal combination of DR symbols; zero coefficients never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[DrSymbol, Fraction] | None = None):
        self.terms: dict[DrSymbol, Fraction] = {}
        for s, c in (terms or {}).items():
            if c:
                self.terms[s] = Fraction(c)

    @classmethod
    def of(cls, sym: DrSymbol | None, coeff=1) -> "TautVector":
        v = cls()
        if sym is not None and coeff:
            v.terms[sym] = Fraction(coeff)
        return v

    def add_term(self, sym: DrSymbol | None, coeff) -> None:
        """In-place accumulate; ``None`` symbols (zero classes) are ignored."""
        if sym is None or not coeff:
            return
        w = self.terms.get(sym, 0) + coeff
        if w:
            self.terms[sym] = Fraction(w)
        else:
            del self.terms[sym]

    def add_raw(self, g: int, marked, forgotten, coeff) -> None:
        if coeff:
            self.add_term(normalize(g, marked, forgotten), coeff)

    def __add__(self, other: "TautVector") -> "TautVector":
        out = TautVector(self.terms)
        for s, c in other.terms.items():
            out.add_term(s, c)
        return out

    def __sub__(self, other: "TautVector") -> "TautVector":
        return self + other * -1

    def __mul__(self, c) -> "TautVector":
        c = Fraction(c)
        return TautVector({s: x * c for s, x in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "TautVector":
        return self * -1

    def __eq__(self, other) -> bool:
        return isinstance(other, TautVector) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[DrSymbol, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def symbols(self) -> set[DrSymbol]:
        return set(self.terms)

    def to_json(self) -> list[dict]:
        return [{"sym": s.to_json(), "coeff": rat_str(c)} for s, c in sorted(self.terms.items())]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{s}" for s, c in sorted(self.terms.items()))


def combination(pairs: Iterable[tuple[Fraction, TautVector]]) -> TautVector:
    out = TautVector()
    for c, v in pairs:
        for s, x in v.terms.items():
            out.add_term(s, c * x)
    return out


def top_value(s: DrSymbol) -> Fraction:
    """Degree-0 value g! prod b_j^2 of a symbol with exactly g forgotten points."""
    if s.k != s.g:
        raise DomainError(f"top value needs k = g, got k={s.k}, g={s.g}")
    return Fraction(factorial(s.g) * prod(b * b for b in s.forgotten))


def psi1_rhs(g: int, a: Sequence[int], b: Sequence[int]) -> TautVector:
    """Formal right-hand side of the psi_1 multiplication rule, with r = 2g-2+n+k."""
    a, b = list(a), list(b)
    n, k = len(a), len(b)
    if n < 1:
        raise DomainError("need at least one marked point")
    if not 1 <= k <= g + 1:
        raise DomainError(f"need 1 <= k <= g+1, got k={k}")
    if 0 in a or 0 in b:
        raise DomainError("psi_1 rule needs non-zero multiplicities")
    if sum(a) + sum(b) != 0:
        raise DomainError("multiplicities must sum to zero")
    r = 2 * g - 2 + n + k
    ra1 = r * a[0]
    out = TautVector()
    for i in range(k):
        for j in range(i + 1, k):
            rest = [b[l] for l in range(k) if l != i and l != j]
            out.add_raw(g, a, rest + [b[i] + b[j]], Fraction(-(b[i] + b[j]), ra1))
    for i in range(1, n):
        for j in range(k):
            m = list(a)
            m[i] += b[j]
            rest = b[:j] + b[j + 1 :]
            out.add_raw(g, m, rest, Fraction(-(a[i] + b[j]), ra1))
    for j in range(k):
        m = list(a)
        m[0] += b[j]
        rest = b[:j] + b[j + 1 :]
        out.add_raw(g, m, rest, Fraction(-a[0] + (r - 1) * b[j], ra1))
    return out


def psi1_mul(s: DrSymbol | None) -> TautVector:
    """psi_1 times a normalized symbol (zero symbols give the zero vector)."""
    if s is None:
        return TautVector()
    if s.k == 0:
        raise DomainError("k = 0 symbols are zero on the open part")
    return psi1_rhs(s.g, s.marked, s.forgotten)


def psi1_mul_vector(v: TautVector) -> TautVector:
    out = TautVector()
    for s, c in v:
        for t, x in psi1_mul(s):
            out.add_term(t, c * x)
    return out


def running_point(g: int, b: Sequence[int], a: Sequence[int], at: int = 0) -> TautVector:
    """sum_i b_i DR(m_{b_i} prod_{j != i} ~m_{b_j} prod m_a), the rotating entry at position ``at``.

    Lies in the pullback along the map forgetting the point ``at``.
    """
    b, a = list(b), list(a)
    if not 1 <= len(b) <= g:
        raise DomainError(f"need 1 <= k <= g, got k={len(b)}")
    if 0 in a or 0 in b:
        raise DomainError("running point rule needs non-zero multiplicities")
    if sum(a) + sum(b) != 0:
        raise DomainError("multiplicities must sum to zero")
    if not 0 <= at <= len(a):
        raise DomainError("position out of range")
    out = TautVector()
    for i, bi in enumerate(b):
        marked = a[:at] + [bi] + a[at:]
        out.add_raw(g, marked, b[:i] + b[i + 1 :], bi)
    return out


def psi1_running_point(g: int, b: Sequence[int], a: Sequence[int]) -> TautVector:
    """psi_1 times the running-point vector with the rotating entry first.

    Expanded term by term with the psi_1 rule, so k = g+1 is allowed: there the
    running-point class has degree 0 and is trivially a pullback.
    """
    b, a = list(b), list(a)
    if not 2 <= len(b) <= g + 1:
        raise DomainError(f"need 2 <= k <= g+1, got k={len(b)}")
    out = TautVector()
    for i, bi in enumerate(b):
        for t, x in psi1_rhs(g, [bi] + a, b[:i] + b[i + 1 :]):
            out.add_term(t, bi * x)
    return out


def running_point_through(s: DrSymbol, at: int = 0) -> TautVector:
    """Running-point vector whose rotating triple is (marked[at], *forgotten) of ``s``."""
    rest = list(s.marked[:at] + s.marked[at + 1 :])
    return running_point(s.g, [s.marked[at], *s.forgotten], rest, at)


def intpsi_top_vanishing(g: int, a: Sequence[int], b: Sequence[int]) -> bool:
    """With k = g+1, the psi_1 right-hand side evaluates to exactly 0."""
    if len(b) != g + 1:
        raise DomainError("need k = g+1")
    rhs = psi1_rhs(g, a, b)
    return sum((c * top_value(s) for s, c in rhs), Fraction(0)) == 0


def swap_points(s: DrSymbol, i: int, j: int) -> DrSymbol:
    m = list(s.marked)
    m[i], m[j] = m[j], m[i]
    out = normalize(s.g, m, s.forgotten)
    assert out is not None
    return out


def swap_vector(v: TautVector, i: int, j: int) -> TautVector:
    out = TautVector()
    for s, c in v:
        out.add_term(swap_points(s, i, j), c)
    return out
