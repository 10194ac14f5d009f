from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from toptaut.arith import DomainError
from toptaut.dr import (
    DrSymbol,
    TautVector,
    intpsi_top_vanishing,
    normalize,
    psi1_mul,
    psi1_rhs,
    psi1_running_point,
    running_point,
    swap_vector,
    top_value,
)

F = Fraction
nonzero = st.integers(-6, 6).filter(bool)


def sym(g, m, t):
    s = normalize(g, m, t)
    assert s is not None
    return s


def test_normalize_sign_change():
    assert normalize(2, [-5], [2, 3]) == normalize(2, [5], [-2, -3])


@pytest.mark.parametrize("t", [[], [1, 1, -2]])
def test_normalize_zero_ranges(t):
    assert normalize(2, [-sum(t)] if t else [0], t) is None


def test_normalize_zero_forgotten_multiplicity():
    assert normalize(2, [1, -1], [0]) is None


def test_normalize_checks_conservation():
    with pytest.raises(DomainError):
        normalize(2, [1], [1])


@given(st.integers(1, 4), st.lists(nonzero, min_size=1, max_size=3), st.lists(nonzero, min_size=1, max_size=3))
def test_normalize_is_sign_invariant_and_idempotent(g, m, t):
    last = -(sum(m) + sum(t))
    assume(last)
    m = m + [last]
    s = normalize(g, m, t)
    assert s == normalize(g, [-x for x in m], [-x for x in t])
    if s is not None:
        assert normalize(s.g, s.marked, s.forgotten) == s
        assert DrSymbol.from_json(s.to_json()) == s


@pytest.mark.parametrize("g, b, value", [(2, (2, 3), 72), (2, (1, 1), 2), (3, (1, 1, 1), 6)])
def test_top_value(g, b, value):
    assert top_value(sym(g, [-sum(b)], b)) == value


def test_top_value_needs_k_equal_g():
    with pytest.raises(DomainError):
        top_value(sym(3, [-2], [1, 1]))


def test_psi1_example():
    got = psi1_mul(sym(2, [-5], [2, 3]))
    want = TautVector()
    want.add_raw(2, [-5], [5], F(1, 5))
    want.add_raw(2, [-3], [3], F(-13, 25))
    want.add_raw(2, [-2], [2], F(-17, 25))
    assert got == want


def test_psi1_of_a_vanishing_class_is_zero():
    assert not psi1_mul(normalize(2, [-6], [1, 2, 3]))


def test_psi1_drops_cancelling_pairs():
    # b_1 + b_2 = 0 would create a forgotten 0
    out = psi1_rhs(2, [-1], [2, -2, 1])
    assert all(0 not in s.forgotten for s, _ in out)


@st.composite
def psi_inputs(draw, kmax_offset=1):
    g = draw(st.integers(1, 4))
    k = draw(st.integers(1, g + kmax_offset))
    n = draw(st.integers(1, 3))
    a = draw(st.lists(nonzero, min_size=n, max_size=n))
    b = draw(st.lists(nonzero, min_size=k - 1, max_size=k - 1))
    last = -(sum(a) + sum(b))
    assume(last)
    return g, a, b + [last]


@given(psi_inputs())
def test_psi1_is_sign_invariant(args):
    g, a, b = args
    assert psi1_rhs(g, a, b) == psi1_rhs(g, [-x for x in a], [-x for x in b])


@given(psi_inputs())
def test_psi1_lowers_degree_by_one(args):
    g, a, b = args
    for s, _ in psi1_rhs(g, a, b):
        assert s.k == len(b) - 1 and s.n == len(a)


def test_intpsi_examples():
    assert intpsi_top_vanishing(2, [-7], [1, 2, 4])
    assert intpsi_top_vanishing(3, [-3, -4], [1, 1, 2, 3])


@given(psi_inputs(kmax_offset=1).filter(lambda t: len(t[2]) == t[0] + 1))
def test_intpsi_vanishing_random(args):
    assert intpsi_top_vanishing(*args)


def test_intpsi_needs_k_equal_g_plus_one():
    with pytest.raises(DomainError):
        intpsi_top_vanishing(2, [-2], [1, 1])


def test_intpsi_negative_control():
    # perturbing one coefficient of the rule breaks the vanishing
    rhs = psi1_rhs(2, [-7], [1, 2, 4])
    s, c = next(iter(rhs))
    total = sum((x * top_value(t) for t, x in rhs), F(0)) + top_value(s)
    assert total != 0


def test_running_point_examples():
    assert not running_point(2, [3], [-3])
    assert running_point(2, [1, 1], [-2]) == TautVector.of(sym(2, [1, -2], [1]), 2)
    want = TautVector.of(sym(2, [2, -5], [3]), 2) + TautVector.of(sym(2, [3, -5], [2]), 3)
    assert running_point(2, [2, 3], [-5]) == want


def test_running_point_position():
    v = running_point(3, [1, 2], [4, -7], at=1)
    assert all(s.marked[1] in (1, 2) or s.marked[1] in (-1, -2) for s, _ in v)


@pytest.mark.parametrize("b", [[], [1, 1, 1]])
def test_running_point_domain(b):
    with pytest.raises(DomainError):
        running_point(2, b, [-sum(b) or 1])


def test_psi1_running_point_allows_k_up_to_g_plus_one():
    assert psi1_running_point(2, [1, 1, 1], [-3])
    with pytest.raises(DomainError):
        psi1_running_point(2, [1, 1, 1, 1], [-4])


def test_psi1_running_point_is_termwise():
    b, a = [1, 2], [4, -7]
    want = TautVector()
    for i, bi in enumerate(b):
        for s, c in psi1_rhs(3, [bi] + a, b[:i] + b[i + 1 :]):
            want.add_term(s, bi * c)
    assert psi1_running_point(3, b, a) == want


def test_swap_is_an_involution():
    v = TautVector.of(sym(3, [1, 2, -5], [2]), F(3, 7))
    assert swap_vector(swap_vector(v, 0, 1), 0, 1) == v
    assert swap_vector(v, 0, 1) != v


def test_vector_arithmetic():
    s, t = sym(2, [-2], [2]), sym(2, [-3], [3])
    v = TautVector.of(s, 2) + TautVector.of(t, -1)
    assert v - v == TautVector()
    assert (v * 3).terms[s] == 6
    assert len(v) == 2 and v.symbols() == {s, t}
    assert [d["coeff"] for d in v.to_json()] == ["2/1", "-1/1"]
