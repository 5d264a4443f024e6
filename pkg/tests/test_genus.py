from fractions import Fraction
from math import factorial, lcm

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from hirzebruch.cpn import binomial_chern, chern_to_pontrjagin, infer_hodge, HodgeTable
from hirzebruch.genus import (
    CHERN,
    PONTRJAGIN,
    ClassValueError,
    Genus,
    GradedClassPoly,
    ahat_genus,
    c1cn1_constraint,
    c1cn1_relation,
    chi_y_genus,
    chi_y_series_genus,
    evaluate,
    k_polynomials,
    k_polynomials_pontrjagin,
    l_genus,
    todd_genus,
)
from hirzebruch.series import ParamPolynomial, SeriesError, TruncatedSeries

from oracles import Y, root_product_part, substitute_classes


def chern_poly(terms):
    return GradedClassPoly(CHERN, terms)


def pont_poly(terms):
    return GradedClassPoly(PONTRJAGIN, terms)


TODD4 = chern_poly(
    {
        (0, 0, 0, 1): Fraction(-1, 720),
        (1, 0, 1): Fraction(1, 720),
        (0, 2): Fraction(3, 720),
        (2, 1): Fraction(4, 720),
        (4,): Fraction(-1, 720),
    }
)


def test_trivial_genus_has_trivial_sequence():
    one = Genus("one", TruncatedSeries.constant(1, 6))
    ks = k_polynomials(one, 6)
    assert ks[0] == 1
    assert all(k == 0 for k in ks[1:])
    kp = k_polynomials_pontrjagin(one, 3)
    assert kp[0] == 1 and all(k == 0 for k in kp[1:])


def test_todd_degree_four():
    assert k_polynomials(todd_genus(), 4)[4] == TODD4


def test_todd_degree_two_against_two_root_expansion():
    # frozen from the two-root oracle: Q(x1)Q(x2) degree-2 part rewritten in e1, e2
    expected = chern_poly({(2,): Fraction(1, 12), (0, 1): Fraction(1, 12)})
    assert k_polynomials(todd_genus(), 2)[2] == expected
    part, xs = root_product_part("todd", 2, 2)
    assert sp.expand(part - substitute_classes(expected, xs)) == 0


def test_ahat_and_l_low_degrees():
    assert k_polynomials_pontrjagin(ahat_genus(), 1)[1] == pont_poly({(1,): Fraction(-1, 24)})
    assert k_polynomials_pontrjagin(l_genus(), 2)[2] == pont_poly(
        {(0, 1): Fraction(7, 45), (2,): Fraction(-1, 45)}
    )


def test_pontrjagin_form_rejects_odd_series():
    with pytest.raises(SeriesError, match="not even"):
        k_polynomials_pontrjagin(todd_genus(), 2)


def test_series_order_limits_degree():
    with pytest.raises(SeriesError):
        k_polynomials(todd_genus(order=3), 4)


def test_genus_requires_normalized_series():
    with pytest.raises(SeriesError):
        Genus("bad", TruncatedSeries([2, 1], 3))


@pytest.mark.parametrize("name,factory", [("todd", todd_genus), ("chi_y", chi_y_series_genus)])
@pytest.mark.parametrize("degree", [1, 2, 3, 4])
def test_newton_identities_match_root_expansion_chern(name, factory, degree):
    poly = k_polynomials(factory(), degree)[degree]
    part, xs = root_product_part(name, degree, 4)
    assert sp.expand(part - substitute_classes(poly, xs)) == 0


@pytest.mark.parametrize("name,factory", [("ahat", ahat_genus), ("L", l_genus)])
@pytest.mark.parametrize("degree", [1, 2, 3, 4])
def test_newton_identities_match_root_expansion_pontrjagin(name, factory, degree):
    poly = k_polynomials_pontrjagin(factory(), degree)[degree]
    part, xs = root_product_part(name, degree, 4, squared=True)
    assert sp.expand(part - substitute_classes(poly, xs, squared=True)) == 0


def test_k_polynomials_are_homogeneous():
    for name, ks in [
        ("todd", k_polynomials(todd_genus(), 8)),
        ("ahat", k_polynomials_pontrjagin(ahat_genus(), 6)),
        ("chi_y", k_polynomials(chi_y_series_genus(), 6)),
    ]:
        for j, k in enumerate(ks):
            assert k.is_homogeneous(j), (name, j)


def test_todd_denominators():
    ks = k_polynomials(todd_genus(), 4)
    for j, bound in [(1, 2), (2, 12), (3, 24), (4, 720)]:
        den = lcm(*(c.denominator for c in ks[j].terms.values()))
        assert bound % den == 0


def _elementary(roots, m):
    # e_1..e_m of a list of rationals
    e = [Fraction(1)] + [Fraction(0)] * m
    for r in roots:
        for i in range(m, 0, -1):
            e[i] += e[i - 1] * r
    return e[1:]


roots_strategy = st.lists(
    st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=1, max_size=4
)


@settings(max_examples=25, deadline=None)
@given(roots_strategy, roots_strategy)
def test_whitney_multiplicativity(r1, r2):
    m = 6
    ks = k_polynomials(todd_genus(), m)
    c, cp, cc = _elementary(r1, m), _elementary(r2, m), _elementary(r1 + r2, m)
    for j in range(m + 1):
        lhs = evaluate(ks[j], cc)
        rhs = sum(evaluate(ks[a], c) * evaluate(ks[j - a], cp) for a in range(j + 1))
        assert lhs == rhs


def test_evaluate_examples():
    assert evaluate(TODD4, (5, 10, 10, 5)) == 1
    assert evaluate(TODD4, {"c1": 0, "c2": 0, "c3": 0, "c4": 0}) == 0
    l1 = k_polynomials_pontrjagin(l_genus(), 1)[1]
    assert evaluate(l1, {1: 3}) == 1


def test_evaluate_missing_variable():
    with pytest.raises(ClassValueError, match="c3"):
        evaluate(TODD4, {"c1": 1, "c2": 1, "c4": 1})
    with pytest.raises(ClassValueError):
        evaluate(TODD4, (1, 2))


def test_chi_y_specializes_to_todd():
    todd = k_polynomials(todd_genus(), 6)
    chi = k_polynomials(chi_y_series_genus(), 6)
    for j in range(7):
        assert chi[j].map_coefficients(lambda c: c(0)) == todd[j]


def test_chi_y_at_minus_one_is_top_chern_class():
    for n in range(1, 7):
        top = chi_y_genus(n).map_coefficients(lambda c: c(-1))
        assert top == GradedClassPoly.variable(CHERN, n)


def test_chi_y_at_one_is_l_genus():
    ls = k_polynomials_pontrjagin(l_genus(), 3)
    cs = [GradedClassPoly.variable(CHERN, i) for i in range(1, 7)]
    for n in range(1, 7):
        at_one = chi_y_genus(n).map_coefficients(lambda c: c(1))
        if n % 2:
            assert at_one == 0
            continue
        p = chern_to_pontrjagin(cs[:n], n)
        rewritten = evaluate_poly_in(ls[n // 2], p)
        assert at_one == rewritten


def evaluate_poly_in(poly, values):
    total = GradedClassPoly(CHERN)
    for exps, coef in poly.terms.items():
        term = GradedClassPoly.constant(CHERN, coef)
        for i, e in enumerate(exps):
            term = term * values[i] ** e
        total = total + term
    return total


@pytest.mark.parametrize("n", range(1, 7))
def test_chi_y_on_cpn(n):
    value = evaluate(chi_y_genus(n), binomial_chern(n))
    assert value == ParamPolynomial([(-1) ** p for p in range(n + 1)])
    assert value(-1) == n + 1
    # y = 1 gives the signature of CP^n
    assert value(1) == (1 if n % 2 == 0 else 0)


def test_c1cn1_constraint_cp4():
    assert c1cn1_constraint(4, infer_hodge(4)) == 50
    rel = c1cn1_relation(4)
    assert rel(50, 5) == 20
    assert infer_hodge(4).chi_y_second_derivative_at_minus_one() == sum(
        p * (p - 1) for p in range(5)
    )


def test_c1cn1_constraint_cp1():
    assert c1cn1_constraint(1, infer_hodge(1)) == 2


@pytest.mark.parametrize("n", range(2, 8))
def test_c1cn1_constraint_reproduces_cpn_chern_number(n):
    c = binomial_chern(n)
    assert c1cn1_constraint(n, infer_hodge(n)) == c[0] * c[n - 2]


def test_c1cn1_constraint_other_hodge_data():
    # a Hodge table that is not of CP^n type still gives a consistent answer:
    # a product of two elliptic curves has all Chern numbers zero
    torus2 = HodgeTable.from_rows([[1, 2, 1], [2, 4, 2], [1, 2, 1]])
    assert c1cn1_constraint(2, torus2) == 0


def test_graded_poly_rendering_order():
    assert TODD4.to_str() == "(1/720)*(-c4 + c1*c3 + 3*c2^2 + 4*c1^2*c2 - c1^4)"
    assert k_polynomials(todd_genus(), 0)[0].to_str() == "1"


def test_graded_poly_kind_mismatch():
    with pytest.raises(ValueError):
        GradedClassPoly.variable(CHERN, 1) + GradedClassPoly.variable(PONTRJAGIN, 1)


def test_chi_y_coefficients_are_y_polynomials():
    k1 = chi_y_genus(1)
    assert k1.coefficient((1,)) == ParamPolynomial([Fraction(1, 2), Fraction(-1, 2)])
    assert sp.expand(
        sum(
            sp.Rational(c.numerator, c.denominator) * Y**i
            for i, c in enumerate(k1.coefficient((1,)).coeffs)
        )
        - (1 - Y) / 2
    ) == 0


def test_todd_coefficients_match_bernoulli():
    from oracles import bernoulli_minus

    b = bernoulli_minus(10)
    q = todd_genus(10).char_series
    # x / (1 - e^{-x}) has coefficients (-1)^i B_i / i!
    assert list(q.coeffs) == [(-1) ** i * b[i] / factorial(i) for i in range(11)]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.integers(-9, 9), min_size=n, max_size=n)))
def test_todd_equals_twisted_ahat(c):
    # td_n(c) = sum_{i + 2j = n} (c1/2)^i / i! * Ahat_j(p(c))
    n = len(c)
    td = evaluate(k_polynomials(todd_genus(), n)[n], c)
    ahat = k_polynomials_pontrjagin(ahat_genus(), n // 2)
    p = chern_to_pontrjagin(c, n)
    twisted = sum(
        Fraction(c[0], 2) ** (n - 2 * j) / factorial(n - 2 * j) * evaluate(ahat[j], p)
        for j in range(n // 2 + 1)
    )
    assert td == twisted
