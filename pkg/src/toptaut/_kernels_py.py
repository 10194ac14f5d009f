"""Pure-Python reference kernels.

Rows are ``dict[int, int]`` (column -> integer entry, zeros never stored).
Polynomials are ``dict[int, coeff]`` keyed by packed exponent vectors, so a
monomial product is a single integer addition.
"""
from math import gcd

BACKEND = "python"


def combine(t, a, s, b):
    """Return ``a*t + b*s`` as a new row; ``a`` must be non-zero."""
    out = {c: a * v for c, v in t.items()}
    for c, v in s.items():
        w = out.get(c, 0) + b * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


def primitive(row):
    """Divide a row by the gcd of its entries (in place); returns the row."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for c in row:
            row[c] //= g
    return row


def reduce_row(v, rows, pivots):
    """Eliminate every pivot column of ``v`` using fully reduced ``rows``.

    ``rows[c]`` is the row whose pivot column is ``c``; the result is primitive.
    """
    hits = [c for c in v if c in pivots]
    for c in hits:
        x = v.get(c)
        if not x:
            continue
        r = rows[c]
        p = r[c]
        g = gcd(p, x)
        v = combine(v, p // g, r, -(x // g))
    return primitive(v)


def poly_mul(a, b):
    out = {}
    get = out.get
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            w = get(k, 0) + va * vb
            if w:
                out[k] = w
            else:
                del out[k]
    return out
