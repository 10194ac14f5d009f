"""Exact linear algebra over the rationals.

Two layers: a small dense :class:`Matrix` with canonical ``rref``/``nullspace``,
and :class:`Subspace`, an incremental sparse span over arbitrary hashable labels
used for every "is this vector in K?" question.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Mapping, Sequence

from . import kernels


def _height(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


@dataclass
class Matrix:
    rows: list[list[Fraction]]
    ncols: int = -1

    def __post_init__(self):
        self.rows = [[Fraction(x) for x in r] for r in self.rows]
        if self.ncols < 0:
            self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, n: int, m: int) -> "Matrix":
        return cls([[Fraction(0)] * m for _ in range(n)], m)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return Matrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows],
            other.ncols,
        )

    def apply(self, v: list[Fraction]) -> list[Fraction]:
        return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.ncols == other.ncols and self.rows == other.rows


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for c in range(ncols):
        cand = [i for i in range(top, len(m)) if m[i][c] != 0]
        if not cand:
            continue
        # smallest-height pivot keeps intermediate fractions short
        best = min(cand, key=lambda i: (_height(m[i][c]), i))
        m[top], m[best] = m[best], m[top]
        p = m[top][c]
        m[top] = [x / p for x in m[top]]
        for i in range(len(m)):
            if i != top and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[top])]
        pivots.append(c)
        top += 1
        if top == len(m):
            break
    return m, pivots


def rref(m: Matrix) -> Matrix:
    out, _ = _rref_rows(m.rows, m.ncols)
    return Matrix(out, m.ncols)


def rank(m: Matrix) -> int:
    return len(_rref_rows(m.rows, m.ncols)[1])


def nullspace(m: Matrix) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column (free entry = 1)."""
    red, pivots = _rref_rows(m.rows, m.ncols)
    pivset = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def determinant(m: Matrix) -> Fraction:
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m.rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        cand = [i for i in range(c, n) if a[i][c] != 0]
        if not cand:
            return Fraction(0)
        best = min(cand, key=lambda i: (_height(a[i][c]), i))
        if best != c:
            a[c], a[best] = a[best], a[c]
            det = -det
        p = a[c][c]
        det *= p
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def _to_int_row(v: Mapping[int, Fraction]) -> dict[int, int]:
    den = lcm(*(Fraction(x).denominator for x in v.values())) if v else 1
    row = {c: int(Fraction(x) * den) for c, x in v.items() if x}
    return kernels.primitive(row)


@dataclass
class Subspace:
    """Exact span of sparse vectors over an auto-extending label index.

    Rows are kept fully reduced (every pivot column occurs in exactly one row)
    and stored as primitive integer vectors, so reduction never builds
    Fraction objects.
    """

    labels: list[Hashable] = field(default_factory=list)
    index: dict[Hashable, int] = field(default_factory=dict)
    rows: dict[int, dict[int, int]] = field(default_factory=dict)
    # column -> pivots of the rows having a non-pivot entry there
    occurs: dict[int, set[int]] = field(default_factory=dict)

    def _col(self, label: Hashable) -> int:
        c = self.index.get(label)
        if c is None:
            c = len(self.labels)
            self.labels.append(label)
            self.index[label] = c
        return c

    def _encode(self, v: Mapping[Hashable, Fraction], extend: bool) -> dict[int, int] | None:
        enc = {}
        for lab, x in v.items():
            if not x:
                continue
            c = self.index.get(lab)
            if c is None:
                if not extend:
                    return None
                c = self._col(lab)
            enc[c] = x
        return _to_int_row(enc)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping[Hashable, Fraction]) -> dict[Hashable, Fraction]:
        """Residual of ``v`` modulo the span, up to a non-zero scalar."""
        enc = {}
        extra = {}
        for lab, x in v.items():
            if not x:
                continue
            c = self.index.get(lab)
            if c is None:
                extra[lab] = Fraction(x)
            else:
                enc[c] = x
        res = kernels.reduce_row(_to_int_row(enc), self.rows, self.rows)
        out = {self.labels[c]: Fraction(x) for c, x in res.items()}
        out.update(extra)
        return out

    def member(self, v: Mapping[Hashable, Fraction]) -> bool:
        enc = self._encode(v, extend=False)
        if enc is None:
            return False
        return not kernels.reduce_row(enc, self.rows, self.rows)

    def insert(self, v: Mapping[Hashable, Fraction]) -> bool:
        """Add ``v``; returns True iff the rank grew."""
        enc = self._encode(v, extend=True)
        res = kernels.reduce_row(enc, self.rows, self.rows)
        if not res:
            return False
        p = min(res, key=lambda c: (abs(res[c]).bit_length(), len(self.occurs.get(c, ())), c))
        if res[p] < 0:
            res = {c: -x for c, x in res.items()}
        # clear column p from the other rows
        for q in sorted(self.occurs.pop(p, ())):
            row = self.rows[q]
            x = row[p]
            old = set(row)
            new = kernels.primitive(kernels.combine(row, res[p], res, -x))
            self.rows[q] = new
            for c in old - set(new):
                if c != q and c != p:
                    self.occurs[c].discard(q)
            for c in set(new) - old:
                self.occurs.setdefault(c, set()).add(q)
        self.rows[p] = res
        for c in res:
            if c != p:
                self.occurs.setdefault(c, set()).add(p)
        return True

    def extend(self, vs: Iterable[Mapping[Hashable, Fraction]]) -> int:
        return sum(self.insert(v) for v in vs)

    def basis(self) -> list[dict[Hashable, Fraction]]:
        out = []
        for p in sorted(self.rows):
            row = self.rows[p]
            s = Fraction(1, row[p])
            out.append({self.labels[c]: x * s for c, x in sorted(row.items())})
        return out


def span_insert(s: Subspace, v: Mapping[Hashable, Fraction]) -> Subspace:
    s.insert(v)
    return s


def span_member(s: Subspace, v: Mapping[Hashable, Fraction]) -> bool:
    return s.member(v)


def quotient_dim(ambient_dim: int, s: Subspace) -> int:
    return ambient_dim - s.rank


def as_labeled(v: Iterable[Fraction]) -> dict[int, Fraction]:
    return {i: Fraction(x) for i, x in enumerate(v) if x}


def kernel(equations: Iterable[Mapping[Hashable, Fraction]], unknowns: Sequence[Hashable]) -> list[dict[Hashable, Fraction]]:
    """Basis of the solutions of sparse homogeneous equations, one per free unknown.

    Unknowns are visited in the given order; a solution vector sets its free
    unknown to 1, the other free unknowns to 0.
    """
    s = Subspace()
    for u in unknowns:
        s._col(u)
    for eq in equations:
        if any(u not in s.index for u in eq):
            raise KeyError("equation mentions an undeclared unknown")
        s.insert(eq)
    out = []
    for f, u in enumerate(s.labels):
        if f in s.rows:
            continue
        v = {u: Fraction(1)}
        for q in s.occurs.get(f, ()):
            row = s.rows[q]
            v[s.labels[q]] = Fraction(-row[f], row[q])
        out.append(v)
    return out
