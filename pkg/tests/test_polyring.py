from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mindeg.polyring import (
    GrevlexOrder,
    Ideal,
    Polynomial,
    buchberger,
    degree_intersection,
    degree_span,
    format_polynomial,
    hilbert_function,
    initial_ideal,
    monomials_of_degree,
    reduce,
    s_polynomial,
)


def poly(nvars, *terms):
    """terms are (coeff, exponent-tuple) pairs."""
    return Polynomial(nvars, {tuple(m): Fraction(c) for c, m in terms})


def var(nvars, i):
    return Polynomial.variable(nvars, i)


# S(2,1) minor ideal in Q[x10,x11,x12,x20,x21], variables indexed 0..4.
def s21_minors():
    m_a = poly(5, (1, (1, 0, 1, 0, 0)), (-1, (0, 2, 0, 0, 0)))  # x10*x12 - x11^2
    m_b = poly(5, (1, (1, 0, 0, 0, 1)), (-1, (0, 1, 0, 1, 0)))  # x10*x21 - x11*x20
    m_c = poly(5, (1, (0, 1, 0, 0, 1)), (-1, (0, 0, 1, 1, 0)))  # x11*x21 - x12*x20
    return [m_a, m_b, m_c]


def test_reduce_self_is_zero():
    g = poly(2, (1, (1, 1)), (2, (0, 2)))
    assert reduce(g, [g], GrevlexOrder(2)).is_zero()


def test_reduce_power_by_variable():
    x = var(2, 0)
    assert reduce(x * x, [x], GrevlexOrder(2)).is_zero()


def test_reduce_single_division_step():
    x, y = var(2, 0), var(2, 1)
    f = x * y + y * y
    assert reduce(f, [x], GrevlexOrder(2)) == y * y


def test_grevlex_leading_terms():
    # for a product of four distinct variables vs the middle square,
    # grevlex picks the middle product regardless of precedence direction
    f = poly(4, (1, (1, 0, 0, 1)), (-1, (0, 1, 1, 0)))  # x0*x3 - x1*x2
    order = GrevlexOrder(4)
    assert f.leading_monomial(order) == (0, 1, 1, 0)


def test_buchberger_principal_ideal_is_monic():
    g = poly(2, (2, (1, 1)), (4, (0, 2)))  # lead is y^2 under grevlex
    gb = buchberger(Ideal([g], 2))
    assert gb.generators == (g.scale(Fraction(1, 4)),)


def test_buchberger_quadric_single_minor():
    f = poly(4, (1, (1, 0, 0, 1)), (-1, (0, 1, 1, 0)))
    gb = buchberger(Ideal([f], 4))
    assert len(gb.generators) == 1


def test_buchberger_s21_adds_no_generators():
    gens = s21_minors()
    order = GrevlexOrder(5)
    gb = buchberger(Ideal(gens, 5), order)
    assert len(gb.generators) == 3
    # every S-polynomial of the raw minors reduces to zero against them
    for i in range(3):
        for j in range(i + 1, 3):
            assert reduce(s_polynomial(gens[i], gens[j], order), gens, order).is_zero()


def test_buchberger_idempotent():
    order = GrevlexOrder(5)
    gb = buchberger(Ideal(s21_minors(), 5), order)
    assert buchberger(gb, order) == gb


def test_initial_ideal_of_quadric():
    # honest grevlex: the middle product leads
    f = poly(4, (1, (1, 0, 0, 1)), (-1, (0, 1, 1, 0)))
    init = initial_ideal(Ideal([f], 4))
    assert [g.terms for g in init.generators] == [{(0, 1, 1, 0): Fraction(1)}]


def test_initial_ideal_of_monomial_ideal_is_itself():
    g = poly(3, (1, (1, 2, 0)))
    init = initial_ideal(Ideal([g], 3))
    assert init.generators == (g,)


def test_initial_ideal_s21():
    # leads are the anti-diagonal products x11^2, x11*x20, x12*x20
    init = initial_ideal(Ideal(s21_minors(), 5))
    leads = {next(iter(g.terms)) for g in init.generators}
    assert leads == {(0, 2, 0, 0, 0), (0, 1, 0, 1, 0), (0, 0, 1, 1, 0)}


def test_hilbert_zero_ideal():
    # all degree-3 monomials in 2 variables survive
    assert hilbert_function(Ideal([], 2), 3) == 4


def test_hilbert_quadric_surface():
    f = poly(4, (1, (1, 0, 0, 1)), (-1, (0, 1, 1, 0)))
    assert hilbert_function(Ideal([f], 4), 1) == 4


def test_hilbert_s21():
    ideal = Ideal(s21_minors(), 5)
    assert hilbert_function(ideal, 2) == 12


def test_twisted_cubic_hilbert_and_leads():
    # Hankel minors of the rational normal cubic
    m1 = poly(4, (1, (1, 0, 1, 0)), (-1, (0, 2, 0, 0)))
    m2 = poly(4, (1, (1, 0, 0, 1)), (-1, (0, 1, 1, 0)))
    m3 = poly(4, (1, (0, 1, 0, 1)), (-1, (0, 0, 2, 0)))
    ideal = Ideal([m1, m2, m3], 4)
    init = initial_ideal(ideal)
    leads = {next(iter(g.terms)) for g in init.generators}
    assert leads == {(0, 2, 0, 0), (0, 1, 1, 0), (0, 0, 2, 0)}
    for m in range(5):
        assert hilbert_function(ideal, m) == 3 * m + 1


def test_degree_span_empty():
    assert degree_span([], 2).nrows == 0


def test_degree_span_single_variable():
    x = var(2, 0)
    span = degree_span([x], 2)
    assert span.nrows == 2  # x^2 and x*y


def test_degree_span_s21_quadrics_independent():
    span = degree_span(s21_minors(), 2)
    assert span.nrows == 3
    assert span.ncols == len(monomials_of_degree(5, 2))


def test_degree_intersection_identical_lists():
    gens = s21_minors()
    inter = degree_intersection(gens, gens, 2)
    assert inter.nrows == degree_span(gens, 2).nrows


def test_degree_intersection_x_and_y():
    x, y = var(2, 0), var(2, 1)
    inter = degree_intersection([x], [y], 2)
    assert inter.nrows == 1  # spanned by x*y


def test_degree_intersection_disjoint_linear():
    x, y = var(2, 0), var(2, 1)
    assert degree_intersection([x], [y], 1).nrows == 0


def test_hilbert_matches_bruteforce_span():
    # standard-monomial count == monomial count minus span rank
    for m in range(5):
        ideal = Ideal(s21_minors(), 5)
        total = len(monomials_of_degree(5, m))
        assert hilbert_function(ideal, m) == total - degree_span(s21_minors(), m).nrows


def test_format_polynomial():
    f = poly(3, (-1, (1, 0, 1)), (1, (0, 2, 0)))
    assert format_polynomial(f, ["a", "b", "c"]) == "b^2 - a*c"


small_polys = st.builds(
    lambda coeffs: Polynomial(
        2,
        {
            m: Fraction(c)
            for m, c in zip([(2, 0), (1, 1), (0, 2), (1, 0), (0, 1)], coeffs)
            if c
        },
    ),
    st.lists(st.integers(min_value=-3, max_value=3), min_size=5, max_size=5),
)


@settings(max_examples=30, deadline=None)
@given(small_polys, small_polys)
def test_buchberger_idempotence_random(f, g):
    gens = [p for p in (f, g) if not p.is_zero()]
    if not gens:
        return
    gb = buchberger(Ideal(gens, 2))
    assert buchberger(gb) == gb


@settings(max_examples=30, deadline=None)
@given(small_polys, small_polys)
def test_reduce_remainder_irreducible(f, g):
    if g.is_zero() or f.is_zero():
        return
    order = GrevlexOrder(2)
    r = reduce(f, [g], order)
    lead = g.leading_monomial(order)
    assert all(
        any(m[i] < lead[i] for i in range(2)) for m in r.terms
    )
