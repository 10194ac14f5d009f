"""Both kernel backends must agree bit for bit."""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toptaut import _kernels_py, kernels

try:
    from toptaut import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

needs_ext = pytest.mark.skipif(_kernels_c is None, reason="compiled extension not built")

rows = st.dictionaries(st.integers(0, 30), st.integers(-40, 40).filter(bool), max_size=10)
polys = st.dictionaries(
    st.integers(0, 1 << 30), st.fractions(min_value=-9, max_value=9, max_denominator=6).filter(bool), max_size=12
)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


nonzero = st.integers(-9, 9).filter(bool)


@given(rows, nonzero, rows, st.integers(-9, 9))
def test_combine_pure(t, a, s, b):
    out = _kernels_py.combine(t, a, s, b)
    for c in set(t) | set(s):
        assert out.get(c, 0) == a * t.get(c, 0) + b * s.get(c, 0)
    assert 0 not in out.values()


@needs_ext
@given(rows, nonzero, rows, st.integers(-9, 9))
def test_combine_parity(t, a, s, b):
    assert _kernels_c.combine(t, a, s, b) == _kernels_py.combine(t, a, s, b)


@needs_ext
@given(rows)
def test_primitive_parity(r):
    assert _kernels_c.primitive(dict(r)) == _kernels_py.primitive(dict(r))


@needs_ext
@given(polys, polys)
def test_poly_mul_parity(a, b):
    assert _kernels_c.poly_mul(a, b) == _kernels_py.poly_mul(a, b)


@given(polys, polys)
def test_poly_mul_pure_is_convolution(a, b):
    want = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            want[ka + kb] = want.get(ka + kb, Fraction(0)) + va * vb
    assert _kernels_py.poly_mul(a, b) == {k: v for k, v in want.items() if v}


@needs_ext
@given(st.lists(rows.filter(bool), max_size=8), rows)
def test_reduce_row_parity(gens, v):
    # build a fully reduced basis with the pure kernels, then reduce with both
    basis, pivots = {}, set()
    for g in gens:
        r = _kernels_py.reduce_row(dict(g), basis, pivots)
        if not r:
            continue
        p = min(r)
        for q in list(basis):
            if p in basis[q]:
                x = basis[q][p]
                basis[q] = _kernels_py.primitive(_kernels_py.combine(basis[q], r[p], r, -x))
        basis[p] = r
        pivots.add(p)
    assert _kernels_c.reduce_row(dict(v), basis, pivots) == _kernels_py.reduce_row(dict(v), basis, pivots)
