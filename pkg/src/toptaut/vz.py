"""The V/Z cycle algebra in degree g-2.

V and Z are fixed Q-combinations of DR symbols with two forgotten points;
they turn the basic relation (psi_1 times a running-point vector) into the
short main relation. Everything here is an exact vector identity unless a
generator is explicitly tagged as a K-membership.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .arith import DomainError, rat_str
from .dr import TautVector, combination, running_point, swap_vector
from .exactla import Matrix, Subspace, determinant

EXACT = "exact"
K_MEMBER = "K"


@dataclass(frozen=True, order=True)
class VzSymbol:
    kind: str
    g: int
    f: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("V", "Z"):
            raise DomainError(f"kind must be V or Z, got {self.kind!r}")
        object.__setattr__(self, "f", tuple(int(x) for x in self.f))
        if len(self.f) < 2:
            raise DomainError("need at least two entries")
        if not any(self.f):
            raise DomainError("entries must not all vanish")

    @property
    def n(self) -> int:
        return len(self.f) - 1

    @property
    def d(self) -> int:
        return sum(self.f)

    @property
    def r(self) -> int:
        return 2 * self.g + self.n + 1

    @property
    def degree(self) -> int:
        # half the total absolute multiplicity of the underlying DR cycles
        return (sum(abs(x) for x in self.f) + abs(self.d)) // 2

    def is_zero(self) -> bool:
        if self.kind == "V":
            return self.f[1] == 0
        return self.d == 0

    def to_json(self) -> dict:
        return {"kind": self.kind, "g": self.g, "f": list(self.f)}

    def __str__(self) -> str:
        return f"{self.kind}{self.g}({','.join(map(str, self.f))})"


def V(g: int, *f: int) -> VzSymbol:
    return VzSymbol("V", g, f)


def Z(g: int, *f: int) -> VzSymbol:
    return VzSymbol("Z", g, f)


def expand(s: VzSymbol) -> TautVector:
    """The defining combination of DR symbols, r = 2g+n+1, d = sum f."""
    g, f, n, r, d = s.g, list(s.f), s.n, s.r, s.d
    out = TautVector()
    if s.kind == "V":
        if d == 0:
            raise DomainError("V needs a non-zero total multiplicity")
        if f[1] == 0:
            return out
        f1, f2 = f[0], f[1]
        marked = f[1:]
        out.add_raw(g, marked, [-d, f1], Fraction(f2, r) * (r - n - 2 + Fraction(f1, d)))
        c = -Fraction(f2, r) * (1 + Fraction(f1, d))
        for l in range(n):
            m = list(marked)
            fl = m[l]
            m[l] = f1
            out.add_raw(g, m, [-d, fl], c)
        return out
    f1, f2 = f[0], f[1]
    tail = f[2:]
    out.add_raw(g, [f2] + tail, [-d, f1], Fraction(f1 - (r - n - 2) * f2, r))
    out.add_raw(g, [f1] + tail, [-d, f2], Fraction(f2 - (r - n - 2) * f1, r))
    for l in range(len(tail)):
        m = list(tail)
        fl = m[l]
        m[l] = f1
        out.add_raw(g, [f2] + m, [-d, fl], Fraction(f2 - f1, r))
    return out


class VzVector:
    """Formal combination of V/Z symbols (zero symbols dropped on entry)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[VzSymbol, Fraction] | None = None):
        self.terms: dict[VzSymbol, Fraction] = {}
        for s, c in (terms or {}).items():
            self.add(s, c)

    def add(self, s: VzSymbol, c) -> None:
        if not c or s.is_zero():
            return
        w = self.terms.get(s, 0) + c
        if w:
            self.terms[s] = Fraction(w)
        else:
            del self.terms[s]

    def __add__(self, other: "VzVector") -> "VzVector":
        out = VzVector(self.terms)
        for s, c in other.terms.items():
            out.add(s, c)
        return out

    def __sub__(self, other: "VzVector") -> "VzVector":
        return self + other * -1

    def __mul__(self, c) -> "VzVector":
        return VzVector({s: x * Fraction(c) for s, x in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, VzVector) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def expand(self) -> TautVector:
        return combination((c, expand(s)) for s, c in self.terms.items())

    def to_json(self) -> list[dict]:
        return [{"sym": s.to_json(), "coeff": rat_str(c)} for s, c in sorted(self.terms.items())]

    def __repr__(self) -> str:
        return " + ".join(f"({c})*{s}" for s, c in sorted(self.terms.items())) or "0"


@dataclass(frozen=True)
class Generator:
    """A relation vector and how it may be used: exact identity or K-membership."""

    name: str
    tag: str
    vector: VzVector

    def expanded(self) -> TautVector:
        return self.vector.expand()


# ---------------------------------------------------------------------------
# basic relation and its rearrangements

def _check_relation_input(b: Sequence[int], b4: int, a: Sequence[int]) -> None:
    if len(b) != 3:
        raise DomainError("need an unordered triple b")
    if 0 in b or b4 == 0 or 0 in a:
        raise DomainError("all multiplicities must be non-zero")
    if sum(b) + b4 + sum(a) != 0:
        raise DomainError("multiplicities must sum to zero")


def _pairs3():
    # ({i, j} with i < j, k)
    return ((0, 1, 2), (0, 2, 1), (1, 2, 0))


def basic_relation(g: int, b: Sequence[int], b4: int, a: Sequence[int]) -> TautVector:
    """psi_1 times the four-point running-point relation, rewritten; a K-member."""
    b, a = list(b), list(a)
    _check_relation_input(b, b4, a)
    n = len(a) + 1
    r = 2 * g + n + 1
    B4 = Fraction(b4)
    out = TautVector()
    for i, j, k in _pairs3():
        s = b[i] + b[j]
        out.add_raw(g, [s] + a, [b4, b[k]], Fraction(s, r) * (r - 2 + s / B4))
        out.add_raw(g, [b[k]] + a, [b4, s], -Fraction(s, r) * (1 - b[k] / B4))
    for l in range(n - 1):
        for i, j, k in permutations(range(3)):
            m = list(a)
            m[l] += b[i]
            out.add_raw(g, [b[j]] + m, [b4, b[k]], -Fraction(b[i] + a[l], r) * (1 - b[j] / B4))
        for i, j, k in _pairs3():
            m = list(a)
            m[l] = b[j]
            out.add_raw(g, [b[i]] + m, [b4 + a[l], b[k]], Fraction(b[j] - b[i], r))
    for i, j, k in permutations(range(3)):
        out.add_raw(g, [b[i]] + a, [b4 + b[k], b[j]], -Fraction(b4 + b[k] + (r - 2) * b[i], r))
    return out


def auxiliary_triples(b: Sequence[int], b4: int, a: Sequence[int], p: int):
    """The four (coefficient, b, a) inputs combined at position ``p`` of ``a``."""
    b, a = list(b), list(a)
    B4 = Fraction(b4)

    def put(x):
        m = list(a)
        m[p] = x
        return m

    return [
        (1 - a[p] / B4, [b[0], b[1], b[2]], list(a)),
        (1 - b[2] / B4, [b[0], b[1], a[p]], put(b[2])),
        (1 - b[1] / B4, [b[0], a[p], b[2]], put(b[1])),
        (1 - b[0] / B4, [a[p], b[1], b[2]], put(b[0])),
    ]


def combined_basic(g: int, b: Sequence[int], b4: int, a: Sequence[int], p: int) -> TautVector:
    return combination((c, basic_relation(g, bb, b4, aa)) for c, bb, aa in auxiliary_triples(b, b4, a, p))


def newrelation2(g: int, b: Sequence[int], b4: int, a: Sequence[int], p: int) -> TautVector:
    """Closed form of :func:`combined_basic` (a sum over splittings of four entries)."""
    b, a = list(b), list(a)
    c = [b[0], b[1], b[2], a[p]]
    B4 = Fraction(b4)
    out = TautVector()

    def put(x):
        m = list(a)
        m[p] = x
        return m

    for i, j, k, l in permutations(range(4)):
        if i > j:
            continue
        out.add_raw(g, [c[i] + c[j]] + put(c[k]), [b4, c[l]], (c[i] + c[j]) * (1 - c[k] / B4))
        out.add_raw(g, [c[i]] + put(c[j]), [b4 + c[l], c[k]], c[j] - c[i])
    return out


def main_relation(g: int, b: Sequence[int], b4: int, a: Sequence[int]) -> VzVector:
    """Sum over splittings of V(m_bk m_{bi+bj} prod m_a) + Z(m_bi m_bj prod m_a); a K-member."""
    b, a = list(b), list(a)
    _check_relation_input(b, b4, a)
    out = VzVector()
    for i, j, k in _pairs3():
        out.add(VzSymbol("V", g, (b[k], b[i] + b[j], *a)), 1)
        out.add(VzSymbol("Z", g, (b[i], b[j], *a)), 1)
    return out


# ---------------------------------------------------------------------------
# derivation of the main relation

EXACT_MATCH = "exact"
MODULO_SPAN = "modulo running-point and transposition span"
MISMATCH = "fail"


def absorbing_span(g: int, v: TautVector, rounds: int = 1) -> Subspace:
    """K-generators built around the symbols of ``v``.

    Running-point vectors through every point of every symbol with two
    forgotten points, plus alpha + swap_ij(alpha) for every symbol and every
    pair of points. Each further round adds the same generators for the
    symbols the previous round introduced.
    """
    s = Subspace()
    seen = set()
    frontier = set(v.symbols())
    done = set()
    for _ in range(rounds):
        new = set()
        for sym in sorted(frontier - done):
            done.add(sym)
            gens = []
            if sym.k == 2 and sym.k + 1 <= g:
                for at in range(sym.n):
                    rest = list(sym.marked)
                    x = rest.pop(at)
                    key = (tuple(sorted((x, *sym.forgotten))), tuple(rest), at)
                    if x and key not in seen:
                        seen.add(key)
                        gens.append(running_point(g, list(key[0]), list(key[1]), at))
            one = TautVector.of(sym)
            for i in range(sym.n):
                for j in range(i + 1, sym.n):
                    gens.append(one + swap_vector(one, i, j))
            for w in gens:
                s.insert(w.terms)
                new |= w.symbols()
        frontier = new
    return s


def _status(v: TautVector, g: int) -> str:
    if not v:
        return EXACT_MATCH
    return MODULO_SPAN if absorbing_span(g, v).member(v.terms) else MISMATCH


def derivation_difference(g: int, b: Sequence[int], b4: int, a: Sequence[int]) -> TautVector:
    """expand(main) - [basic - (1/r) sum_p (four-basic combination at p)]."""
    b, a = list(b), list(a)
    _check_relation_input(b, b4, a)
    r = 2 * g + len(a) + 2
    rhs = basic_relation(g, b, b4, a)
    for p in range(len(a)):
        rhs = rhs - combined_basic(g, b, b4, a, p) * Fraction(1, r)
    return main_relation(g, b, b4, a).expand() - rhs


def derivation_status(g: int, b: Sequence[int], b4: int, a: Sequence[int]) -> str:
    return _status(derivation_difference(g, b, b4, a), g)


def derivation_check(g: int, b: Sequence[int], b4: int, a: Sequence[int]) -> bool:
    """The main relation follows from the basic ones, exactly or modulo the absorbing span."""
    return derivation_status(g, b, b4, a) != MISMATCH


def intermediate_status(g: int, b: Sequence[int], b4: int, a: Sequence[int], p: int) -> str:
    return _status(combined_basic(g, b, b4, a, p) - newrelation2(g, b, b4, a, p), g)


# ---------------------------------------------------------------------------
# symmetry relations between V and Z

SYMMETRY_KINDS = ("sign", "zsign", "one", "two", "vvz", "two_i", "ij")


def _vec(*pairs) -> VzVector:
    out = VzVector()
    for c, s in pairs:
        out.add(s, c)
    return out


def symmetry_generators(g: int, f: Sequence[int], kinds: Iterable[str] = SYMMETRY_KINDS) -> list[Generator]:
    """All symmetry relations anchored at V(f) (or Z(f) for ``zsign``)."""
    f = tuple(int(x) for x in f)
    kinds = set(kinds)
    unknown = kinds - set(SYMMETRY_KINDS)
    if unknown:
        raise DomainError(f"unknown relation kinds {sorted(unknown)}")
    n = len(f) - 1
    if n < 1 or not any(f):
        raise DomainError("need at least two entries, not all zero")
    d = sum(f)
    out: list[Generator] = []
    neg = tuple(-x for x in f)
    if "zsign" in kinds:
        out.append(Generator("zsign", EXACT, _vec((1, Z(g, *f)), (1, Z(g, *neg)))))
    if d == 0:
        return out
    v = V(g, *f)
    if "sign" in kinds:
        out.append(Generator("sign", EXACT, _vec((1, v), (1, V(g, *neg)))))
    if "one" in kinds and f[0] != 0:
        out.append(Generator("one", K_MEMBER, _vec((1, v), (-1, V(g, -d, *f[1:])))))
    if "two" in kinds:
        out.append(Generator("two", K_MEMBER, _vec((1, v), (-1, Z(g, f[0], -d, *f[2:])))))
    if "vvz" in kinds:
        out.append(Generator("vvz", K_MEMBER, _vec((1, v), (1, V(g, f[1], f[0], *f[2:])), (1, Z(g, *f)))))
    if "two_i" in kinds:
        for i in range(2, n + 1):
            w = list(f)
            w[1], w[i] = w[i], w[1]
            out.append(Generator(f"two_i:{i + 1}", K_MEMBER, _vec((f[i], v), (f[1], V(g, *w)))))
    if "ij" in kinds:
        for i in range(2, n + 1):
            for j in range(i + 1, n + 1):
                w = list(f)
                w[i], w[j] = w[j], w[i]
                out.append(Generator(f"ij:{i + 1},{j + 1}", K_MEMBER, _vec((1, v), (1, V(g, *w)))))
    return out


def scaling_generator(g: int, i: int, j: int, a: int) -> Generator:
    """v_{ai,aj} - a^(2g+1) v_{i,j} (two-entry V symbols)."""
    if a < 1 or i == 0 or j == 0 or i + j == 0:
        raise DomainError("scaling needs a >= 1 and non-zero i, j, i+j")
    return Generator("scaling", EXACT, _vec((1, V(g, a * i, a * j)), (-(a ** (2 * g + 1)), V(g, i, j))))


def relation_generators(g: int, n: int, kind: str, params: Sequence[int]) -> list[Generator]:
    """Dispatcher: ``params`` is f (n+1 entries), (i, j, a) for ``scaling``,
    or (b1, b2, b3, b4, a...) for ``main``."""
    params = [int(x) for x in params]
    if kind == "scaling":
        if n != 1 or len(params) != 3:
            raise DomainError("scaling takes n = 1 and params (i, j, a)")
        return [scaling_generator(g, *params)]
    if kind == "main":
        if len(params) != n + 3:
            raise DomainError("main takes b1, b2, b3, b4, a1..a_{n-1}")
        return [main_generator(g, params[:3], params[3], params[4:])]
    if len(params) != n + 1:
        raise DomainError(f"expected {n + 1} entries, got {len(params)}")
    return symmetry_generators(g, params, [kind])


def main_generator(g: int, b: Sequence[int], b4: int, a: Sequence[int]) -> Generator:
    return Generator("main", K_MEMBER, main_relation(g, b, b4, a))


# ---------------------------------------------------------------------------
# the matrices from the spanning argument

def g_matrices(g: int, n: int, f: Sequence[int]) -> tuple[Matrix, Matrix, Fraction]:
    """(G, G~, det G~) for the V-to-DR change of basis; checks G = D G~ diag(-1,1,...,1)."""
    f = [int(x) for x in f]
    if len(f) != n + 1:
        raise DomainError(f"expected {n + 1} entries, got {len(f)}")
    if 0 in f:
        raise DomainError("entries must be non-zero")
    d = sum(f)
    if d == 0:
        raise DomainError("need a non-zero total multiplicity")
    r = 2 * g + n + 1
    m = n + 1
    tilde = [[(r - n - 2 if i == j else 1) + Fraction(f[i], d) for j in range(m)] for i in range(m)]
    big = []
    for i in range(m):
        nxt = f[(i + 1) % m]
        row = []
        for j in range(m):
            sign = -1 if (i * n + 1 + (j == 0)) % 2 else 1
            row.append(sign * Fraction(nxt, r) * tilde[i][j])
        big.append(row)
    G, Gt = Matrix(big, m), Matrix(tilde, m)
    diag = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        diag[i][i] = Fraction((-1) ** (i * n + 1) * f[(i + 1) % m], r)
    flip = Matrix.identity(m)
    flip.rows[0][0] = Fraction(-1)
    if Matrix(diag, m) @ Gt @ flip != G:
        raise AssertionError("G does not factor through G~")
    return G, Gt, determinant(Gt)


def det_g_tilde_formula(g: int, n: int) -> int:
    r = 2 * g + n + 1
    return (r - n - 3) ** n * (r - 1)
