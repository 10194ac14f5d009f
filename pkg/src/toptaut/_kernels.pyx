# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as :mod:`toptaut._kernels_py`."""
from math import gcd

BACKEND = "cython"


cpdef dict combine(dict t, object a, dict s, object b):
    cdef dict out = {}
    cdef object c, v, w
    for c, v in t.items():
        out[c] = a * v
    for c, v in s.items():
        w = out.get(c)
        if w is None:
            w = b * v
        else:
            w = w + b * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


cpdef dict primitive(dict row):
    cdef object g = 0
    cdef object v, c
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for c in row:
            row[c] = row[c] // g
    return row


cpdef dict reduce_row(dict v, dict rows, object pivots):
    cdef list hits = [c for c in v if c in pivots]
    cdef object c, x, p, g
    cdef dict r
    for c in hits:
        x = v.get(c)
        if x is None or not x:
            continue
        r = rows[c]
        p = r[c]
        g = gcd(p, x)
        v = combine(v, p // g, r, -(x // g))
    return primitive(v)


cpdef dict poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef list bk = list(b.keys())
    cdef list bv = list(b.values())
    cdef Py_ssize_t j, nb = len(bk)
    cdef object ka, va, k, w
    for ka, va in a.items():
        for j in range(nb):
            k = ka + bk[j]
            w = out.get(k)
            if w is None:
                out[k] = va * bv[j]
            else:
                w = w + va * bv[j]
                if w:
                    out[k] = w
                else:
                    del out[k]
    return out
