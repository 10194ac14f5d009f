"""Sparse multivariate polynomials over Q in named variables.

Exponent vectors are packed into one Python integer (``BITS`` bits per
variable, variable ``i`` in the ``i``-th slot), so multiplying monomials is an
integer addition and the product kernel is a tight double loop.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

from . import kernels
from .arith import DomainError, rat_str

BITS = 16
_MASK = (1 << BITS) - 1


def _unpack(key: int, n: int) -> tuple[int, ...]:
    return tuple((key >> (BITS * i)) & _MASK for i in range(n))


def _pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise DomainError(f"exponent {e} out of range")
        key |= e << (BITS * i)
    return key


class MultiPoly:
    """Immutable polynomial over Q.

    Coefficients are stored as integer numerators over one shared positive
    denominator; ``vars`` is the tuple of variable names giving slot order.
    """

    __slots__ = ("vars", "num", "den")

    def __init__(self, vars: Iterable[str] = (), terms: Mapping[int, Fraction] | None = None):
        self.vars = tuple(vars)
        terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}
        den = lcm(*(c.denominator for c in terms.values())) if terms else 1
        self.num = {k: c.numerator * (den // c.denominator) for k, c in terms.items()}
        self.den = den

    @classmethod
    def _raw(cls, vars: tuple[str, ...], num: dict[int, int], den: int) -> "MultiPoly":
        self = cls.__new__(cls)
        self.vars = vars
        self.num = num
        self.den = den
        return self

    @property
    def terms(self) -> dict[int, Fraction]:
        return {k: Fraction(c, self.den) for k, c in self.num.items()}

    # -- construction -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls((), {0: Fraction(c)})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls._raw((name,), {1: 1}, 1)

    @classmethod
    def from_dict(cls, d: Mapping[tuple[tuple[str, int], ...], Fraction]) -> "MultiPoly":
        names = sorted({v for mono in d for v, e in mono if e})
        pos = {v: i for i, v in enumerate(names)}
        terms: dict[int, Fraction] = {}
        for mono, c in d.items():
            e = [0] * len(names)
            for v, k in mono:
                if k:
                    e[pos[v]] += k
            key = _pack(e)
            terms[key] = terms.get(key, Fraction(0)) + Fraction(c)
        return cls(names, terms)

    # -- context handling ---------------------------------------------------
    def _lift(self, names: tuple[str, ...]) -> dict[int, int]:
        if names == self.vars:
            return self.num
        pos = [names.index(v) for v in self.vars]
        out = {}
        n = len(self.vars)
        for k, c in self.num.items():
            key = 0
            for i, x in enumerate(_unpack(k, n)):
                key |= x << (BITS * pos[i])
            out[key] = c
        return out

    def _common(self, other: "MultiPoly") -> tuple[str, ...]:
        if self.vars == other.vars:
            return self.vars
        return tuple(sorted(set(self.vars) | set(other.vars)))

    def compact(self) -> "MultiPoly":
        """Drop variables that no longer occur."""
        n = len(self.vars)
        used = 0
        for k in self.num:
            used |= k
        keep = [i for i in range(n) if (used >> (BITS * i)) & _MASK]
        if len(keep) == n:
            return self
        out = {}
        for k, c in self.num.items():
            key = 0
            for j, i in enumerate(keep):
                key |= ((k >> (BITS * i)) & _MASK) << (BITS * j)
            out[key] = c
        return MultiPoly._raw(tuple(self.vars[i] for i in keep), out, self.den)

    def _slots(self, subset: Iterable[str]) -> list[int]:
        sub = set(subset)
        return [i for i, v in enumerate(self.vars) if v in sub]

    # -- ring operations ----------------------------------------------------
    def __add__(self, other) -> "MultiPoly":
        other = _coerce(other)
        names = self._common(other)
        den = lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        out = {k: c * fa for k, c in self._lift(names).items()}
        for k, c in other._lift(names).items():
            w = out.get(k, 0) + c * fb
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return MultiPoly._raw(names, out, den)._reduced()

    __radd__ = __add__

    def _reduced(self) -> "MultiPoly":
        if self.den == 1:
            return self
        g = self.den
        for c in self.num.values():
            g = gcd(g, c)
            if g == 1:
                return self
        return MultiPoly._raw(self.vars, {k: c // g for k, c in self.num.items()}, self.den // g)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.vars, {k: -c for k, c in self.num.items()}, self.den)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return MultiPoly()
            num = {k: c * other.numerator for k, c in self.num.items()}
            return MultiPoly._raw(self.vars, num, self.den * other.denominator)._reduced()
        other = _coerce(other)
        names = self._common(other)
        prod = kernels.poly_mul(self._lift(names), other._lift(names))
        return MultiPoly._raw(names, prod, self.den * other.den)._reduced()

    __rmul__ = __mul__

    def __truediv__(self, c) -> "MultiPoly":
        return self * (1 / Fraction(c))

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise DomainError("negative power")
        out = MultiPoly.const(1)
        # iterative multiplication with term merge; repeated squaring buys
        # nothing at the small exponents used here
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(sorted(self.to_dict().items())))

    def is_zero(self) -> bool:
        return not self.num

    # -- inspection ---------------------------------------------------------
    def items(self):
        """Yield ``(exponent dict, coeff)`` pairs with zero exponents omitted."""
        n = len(self.vars)
        for k, c in self.num.items():
            yield {v: e for v, e in zip(self.vars, _unpack(k, n)) if e}, Fraction(c, self.den)

    def to_dict(self) -> dict[tuple[tuple[str, int], ...], Fraction]:
        return {tuple(sorted(m.items())): c for m, c in self.items()}

    def __len__(self) -> int:
        return len(self.num)

    def _partial_degrees(self, subset: Iterable[str] | None):
        slots = self._slots(self.vars if subset is None else subset)
        shifts = [BITS * i for i in slots]
        for k in self.num:
            yield sum((k >> s) & _MASK for s in shifts)

    def degree(self, subset: Iterable[str] | None = None) -> int:
        return max(self._partial_degrees(subset), default=-1)

    def substitute(self, mapping: Mapping[str, "MultiPoly | int | Fraction"]) -> "MultiPoly":
        """Ring substitution; terms are grouped by their exponents in the replaced variables."""
        slots = [(i, v) for i, v in enumerate(self.vars) if v in mapping]
        if not slots:
            return self
        images = {v: _coerce(mapping[v]) for _, v in slots}
        clear = ~sum(_MASK << (BITS * i) for i, _ in slots)
        groups: dict[tuple[int, ...], dict[int, int]] = {}
        for k, c in self.num.items():
            pat = tuple((k >> (BITS * i)) & _MASK for i, _ in slots)
            groups.setdefault(pat, {})[k & clear] = c
        powers: dict[tuple[str, int], MultiPoly] = {}
        out = MultiPoly()
        for pat, rest in sorted(groups.items()):
            img = MultiPoly.const(1)
            for (_, v), e in zip(slots, pat):
                if e:
                    if (v, e) not in powers:
                        powers[(v, e)] = images[v] ** e
                    img = img * powers[(v, e)]
            if img.is_zero():
                continue
            out = out + img * MultiPoly._raw(self.vars, rest, self.den)
        return out.compact()

    def coeff_of(self, mono: Mapping[str, int], within: Iterable[str] | None = None) -> "MultiPoly":
        """Coefficient of ``mono`` viewed as a polynomial in ``within`` only.

        ``within`` defaults to the variables named in ``mono``; the result is a
        polynomial in the remaining variables.
        """
        sub = set(mono) if within is None else set(within)
        for v in sub:
            if v not in self.vars and mono.get(v, 0):
                return MultiPoly()
        out: dict[tuple[tuple[str, int], ...], Fraction] = {}
        for m, c in self.items():
            if all(m.get(v, 0) == mono.get(v, 0) for v in sub):
                key = tuple(sorted((v, e) for v, e in m.items() if v not in sub))
                out[key] = out.get(key, Fraction(0)) + c
        return MultiPoly.from_dict(out)

    def leading_coeff_in(self, var: str) -> tuple[int, "MultiPoly"]:
        d = self.degree([var])
        if d < 0:
            return -1, MultiPoly()
        return d, self.coeff_of({var: d})

    def is_homogeneous(self, vars: Iterable[str], degree: int) -> bool:
        return all(d == degree for d in self._partial_degrees(vars))

    def divisible_by(self, var: str) -> bool:
        if var not in self.vars:
            return self.is_zero()
        shift = BITS * self.vars.index(var)
        return all((k >> shift) & _MASK for k in self.num)

    def evaluate(self, values: Mapping[str, Fraction | int]) -> Fraction:
        missing = set(self.vars) - set(values)
        if missing:
            raise DomainError(f"no value for {sorted(missing)}")
        total = Fraction(0)
        for m, c in self.items():
            t = c
            for v, e in m.items():
                t *= Fraction(values[v]) ** e
            total += t
        return total

    # -- serialization ------------------------------------------------------
    def to_json(self) -> list[dict]:
        rows = [(tuple(sorted(m.items())), c) for m, c in self.items()]
        rows.sort()
        return [{"monomial": dict(m), "coeff": rat_str(c)} for m, c in rows]

    @classmethod
    def from_json(cls, data: list[dict]) -> "MultiPoly":
        return cls.from_dict({tuple(sorted(d["monomial"].items())): Fraction(d["coeff"]) for d in data})

    def __repr__(self) -> str:
        if not self.num:
            return "0"
        parts = []
        for m, c in sorted(self.to_dict().items()):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _coerce(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MultiPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def variables(*names: str) -> list[MultiPoly]:
    return [MultiPoly.var(n) for n in names]


# flat functional surface
def add(p, q):
    return _coerce(p) + q


def mul(p, q):
    return _coerce(p) * q


def pow(p, e: int):
    return _coerce(p) ** e


def substitute(p: MultiPoly, mapping):
    unknown = set(mapping) - set(p.vars)
    if unknown:
        raise DomainError(f"unknown variables {sorted(unknown)}")
    return p.substitute(mapping)


def is_homogeneous(p: MultiPoly, vars: Iterable[str], degree: int) -> bool:
    return p.is_homogeneous(vars, degree)


def divisible_by(p: MultiPoly, var: str) -> bool:
    return p.divisible_by(var)
