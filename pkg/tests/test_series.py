"""Series and shifted-composition group tests."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncps.coefficients import CoefficientRing, t_power
from ncps.errors import DomainError, InputError
from ncps.series import (
    SeriesClass,
    TruncatedSeries,
    bch,
    cauchy_inv,
    cauchy_mul,
    classify,
    compose_univariate,
    exp_g,
    flow,
    left_action,
    lie_bracket,
    log_g,
    mu_compose_check,
    mu_embed,
    pre_lie,
    right_action,
    shifted_compose,
    shifted_inverse,
    shifted_substitute,
)
from tests.strategies import coefficients, g0, g1

u = TruncatedSeries.univariate


def x_power(n: int, truncation: int, coeff=1) -> TruncatedSeries:
    return TruncatedSeries.monomial(1, truncation, (1,) * n, coeff)


def test_construction() -> None:
    """Test validation and zero stripping."""
    f = TruncatedSeries(2, 2, {(1,): 0, (2, 1): Fraction(1, 2)}, constant=1)
    assert len(f) == 2
    assert f.coefficient((2, 1)) == Fraction(1, 2)
    assert f.coefficient(()) == 1
    assert f.items() == [((), 1), ((2, 1), Fraction(1, 2))]
    with pytest.raises(InputError):
        TruncatedSeries(2, 2, {(1, 1, 1): 1})
    with pytest.raises(InputError):
        TruncatedSeries(2, 2, {(3,): 1})
    with pytest.raises(InputError):
        TruncatedSeries(2, 2, {(): 1})
    with pytest.raises(InputError):
        TruncatedSeries(0, 2)


def test_classify() -> None:
    """Test series classes."""
    assert classify(u([1, 1], 2)) == SeriesClass.G1
    assert classify(TruncatedSeries(2, 2, {(1,): 1, (2,): 1})) == SeriesClass.GC
    assert classify(TruncatedSeries(2, 2, {(1,): 1})) == SeriesClass.G0
    assert classify(u([2, 1], 2)) == SeriesClass.GENERAL


def test_cauchy() -> None:
    """Test the Cauchy product and inverse."""
    assert cauchy_inv(u([1, 1], 3)) == u([1, -1, 1, -1], 3)
    x1 = TruncatedSeries.monomial(2, 2, (1,))
    x2 = TruncatedSeries.monomial(2, 2, (2,))
    assert cauchy_mul(x1, x2) == TruncatedSeries.monomial(2, 2, (1, 2))
    assert cauchy_mul(x1, x2) != cauchy_mul(x2, x1)
    with pytest.raises(DomainError):
        cauchy_inv(x1)


def test_shifted_substitute(x1, x2) -> None:
    """Test x_i ↦ x_i g."""
    g = TruncatedSeries(2, 3, {(2,): 1}, constant=1)
    assert shifted_substitute(x1, g) == TruncatedSeries(2, 3, {(1,): 1, (1, 2): 1})
    f = TruncatedSeries(2, 3, {(1, 1): 1})
    assert shifted_substitute(f, g) == TruncatedSeries(
        2, 3, {(1, 1): 1, (1, 2, 1): 1, (1, 1, 2): 1}
    )
    with pytest.raises(DomainError):
        shifted_substitute(x1, x2)


def test_group_examples() -> None:
    """Test univariate group law witnesses."""
    f = u([1, 1], 3)
    assert shifted_compose(f, f) == u([1, 2, 2, 1], 3)
    assert shifted_inverse(f) == u([1, -1, 2, -5], 3)
    one = TruncatedSeries.one(1, 3)
    assert shifted_compose(one, f) == f
    with pytest.raises(DomainError):
        shifted_compose(f, x_power(1, 3))


def test_mismatch() -> None:
    """Test operands must share alphabet and truncation."""
    with pytest.raises(InputError):
        cauchy_mul(u([1, 1], 3), u([1, 1], 2))
    with pytest.raises(InputError):
        cauchy_mul(u([1, 1], 2), TruncatedSeries.one(2, 2))


def test_pre_lie_examples(x1, x2) -> None:
    """Test insertion in every gap."""
    for n in range(1, 5):
        for m in range(1, 5):
            assert pre_lie(x_power(n, 8), x_power(m, 8)) == x_power(n + m, 8, n + 1)
    assert pre_lie(x1, x2) == TruncatedSeries(2, 3, {(1, 2): 1, (2, 1): 1})
    assert lie_bracket(x1, x1) == TruncatedSeries.zero(2, 3)
    with pytest.raises(DomainError):
        pre_lie(TruncatedSeries.one(2, 3), x1)


def test_exponential_examples() -> None:
    """Test exp_G(x) is geometric and log_G inverts it."""
    x = x_power(1, 5)
    geometric = u([1] * 6, 5)
    assert exp_g(x) == geometric
    assert log_g(geometric) == x
    assert exp_g(TruncatedSeries.zero(1, 5)) == TruncatedSeries.one(1, 5)


def test_monotone_table() -> None:
    """Test M_t against m₁..m₄ for independent h₁..h₄ values."""
    points = [
        (1, 2, 3, 4),
        (Fraction(1, 2), -1, 2, 0),
        (3, 0, -2, 5),
        (-1, -1, 1, 1),
        (2, Fraction(1, 3), 0, -1),
    ]
    for h1, h2, h3, h4 in points:
        h1, h2, h3, h4 = map(Fraction, (h1, h2, h3, h4))
        moments = flow(u([0, h1, h2, h3, h4], 4))
        assert moments.ring == CoefficientRing.RATIONAL_POLY_T
        expected = [
            t_power(1, h1),
            t_power(1, h2) + t_power(2, h1**2),
            t_power(1, h3) + t_power(2, Fraction(5, 2) * h1 * h2) + t_power(3, h1**3),
            t_power(1, h4)
            + t_power(2, 3 * h1 * h3 + Fraction(3, 2) * h2**2)
            + t_power(3, Fraction(13, 3) * h1**2 * h2)
            + t_power(4, h1**4),
        ]
        for n, value in enumerate(expected, start=1):
            assert moments.coefficient((1,) * n) == value
        assert moments.constant == t_power(0, 1)


def test_flow_specialisation() -> None:
    """Test M_1 = exp_G(h) and the t-derivative at t = 0 is h."""
    h = TruncatedSeries(2, 3, {(1,): 1, (1, 2): Fraction(-1, 2), (2,): 3})
    moments = flow(h)
    assert moments.evaluate_t(1) == exp_g(h)
    assert moments.evaluate_t(0) == TruncatedSeries.one(2, 3)
    assert moments.derivative_t().evaluate_t(0) == h
    with pytest.raises(DomainError):
        h.evaluate_t(1)


@settings(max_examples=15, deadline=None)
@given(g0())
def test_flow_derivative(h) -> None:
    """Test d/dt M_t = h + (M_t − 1)◁h over ℚ[t]."""
    poly = CoefficientRing.RATIONAL_POLY_T
    moments = flow(h)
    lifted = h.lift(poly)
    one = TruncatedSeries.one(h.alphabet, h.truncation, poly)
    assert moments.derivative_t() == lifted + pre_lie(moments - one, lifted)


def test_mu_embedding() -> None:
    """Test μ(f) = x f and the Faà di Bruno witness."""
    f = u([1, 1], 3)
    assert mu_embed(f) == u([0, 1, 1], 4)
    assert mu_embed(shifted_compose(f, f)) == u([0, 1, 2, 2, 1], 4)
    assert mu_compose_check(f, f)
    with pytest.raises(DomainError):
        mu_embed(TruncatedSeries.one(2, 3))
    q = u([0, 1, 1], 3)
    assert compose_univariate(u([0, 1, 1, 1], 3), q) == u([0, 1, 2, 3], 3)


def test_truncation_helpers() -> None:
    """Test grading helpers."""
    f = TruncatedSeries(2, 3, {(1,): 1, (1, 2): 2, (2, 2, 1): 3}, constant=1)
    assert f.truncate(2) == TruncatedSeries(2, 2, {(1,): 1, (1, 2): 2}, constant=1)
    assert f.homogeneous(2) == TruncatedSeries(2, 3, {(1, 2): 2})
    assert f.homogeneous(0) == TruncatedSeries.one(2, 3)
    assert f.min_degree() == 0
    assert f.first_difference(f) is None
    assert f.first_difference(f.with_constant(2)) == ()
    assert f.first_difference(f - f.homogeneous(3)) == (2, 2, 1)
    with pytest.raises(InputError):
        f.truncate(4)


@settings(max_examples=25, deadline=None)
@given(g1(), g1(), g1())
def test_group_associativity(f, g, h) -> None:
    """Test • is associative."""
    assert shifted_compose(shifted_compose(f, g), h) == shifted_compose(f, shifted_compose(g, h))


@settings(max_examples=25, deadline=None)
@given(g1())
def test_group_inverse(f) -> None:
    """Test the shifted inverse is two-sided."""
    one = TruncatedSeries.one(f.alphabet, f.truncation)
    inverse = shifted_inverse(f)
    assert shifted_compose(f, inverse) == one
    assert shifted_compose(inverse, f) == one


@settings(max_examples=25, deadline=None)
@given(g1(), g1())
def test_action_decomposition(f, g) -> None:
    """Test f•g = g + left(g, f−1) + right(g, f−1)."""
    shifted = f - TruncatedSeries.one(f.alphabet, f.truncation)
    assert shifted_compose(f, g) == g + left_action(g, shifted) + right_action(g, shifted)


@settings(max_examples=25, deadline=None)
@given(g0(), g0(), g0())
def test_pre_lie_identity(f, g, h) -> None:
    """Test the associator is symmetric in its last two arguments."""

    def associator(a, b, c):
        return pre_lie(pre_lie(a, b), c) - pre_lie(a, pre_lie(b, c))

    assert associator(f, g, h) == associator(f, h, g)


@settings(max_examples=25, deadline=None)
@given(g0(), g0(), g0())
def test_lie_bracket(f, g, h) -> None:
    """Test antisymmetry and Jacobi."""
    assert lie_bracket(f, g) == -lie_bracket(g, f)
    jacobi = (
        lie_bracket(f, lie_bracket(g, h))
        + lie_bracket(g, lie_bracket(h, f))
        + lie_bracket(h, lie_bracket(f, g))
    )
    assert jacobi == TruncatedSeries.zero(f.alphabet, f.truncation)


@settings(max_examples=25, deadline=None)
@given(g0(), g1())
def test_exp_log_roundtrip(h, f) -> None:
    """Test exp_G and log_G are inverse."""
    assert log_g(exp_g(h)) == h
    assert exp_g(log_g(f)) == f


@settings(max_examples=15, deadline=None)
@given(g0(), coefficients, coefficients)
def test_flow_semigroup(h, s, t) -> None:
    """Test M_s • M_t = M_{s+t}."""
    moments = flow(h)
    composed = shifted_compose(moments.evaluate_t(s), moments.evaluate_t(t))
    assert composed == moments.evaluate_t(s + t)


@settings(max_examples=15, deadline=None)
@given(g0())
def test_bch(a) -> None:
    """Test bch(a, −a) = 0 and bch(a, 0) = a."""
    zero = TruncatedSeries.zero(a.alphabet, a.truncation)
    assert bch(a, -a) == zero
    assert bch(a, zero) == a


@settings(max_examples=25, deadline=None)
@given(g1(alphabet=1, truncation=6), g1(alphabet=1, truncation=6))
def test_faa_di_bruno(f, g) -> None:
    """Test μ(f•g) = μ(f)∘μ(g)."""
    assert mu_compose_check(f, g)


@given(st.lists(coefficients, min_size=1, max_size=4))
def test_cauchy_inverse_univariate(tail) -> None:
    """Test f · f⁻¹ = 1."""
    f = u([1, *tail], 4)
    assert cauchy_mul(f, cauchy_inv(f)) == TruncatedSeries.one(1, 4)


def test_bch_examples() -> None:
    """Test the degree-two witness and the left unit."""
    a = TruncatedSeries.monomial(2, 2, (1,))
    b = TruncatedSeries.monomial(2, 2, (2,))
    assert bch(a, b) == a + b
    g = TruncatedSeries(2, 3, {(1,): 1, (2, 1): Fraction(1, 2), (1, 1, 2): -3})
    assert bch(TruncatedSeries.zero(2, 3), g) == g


@settings(max_examples=15, deadline=None)
@given(g0(), coefficients, coefficients)
def test_bch_along_a_ray(h, a, b) -> None:
    """Test bch(ah, bh) = (a+b)h and exp_G(ah) = M_a."""
    moments = flow(h)
    assert exp_g(h.scale(a)) == moments.evaluate_t(a)
    assert bch(h.scale(a), h.scale(b)) == h.scale(a + b)
    assert exp_g(bch(h.scale(a), h.scale(b))) == shifted_compose(
        moments.evaluate_t(a), moments.evaluate_t(b)
    )


@settings(max_examples=25, deadline=None)
@given(g0(), g0(), g1(), coefficients, coefficients)
def test_left_linearity(p, q, g, a, b) -> None:
    """Test ((1+ap+bq)•g) − g = a((1+p)•g − g) + b((1+q)•g − g)."""
    one = TruncatedSeries.one(g.alphabet, g.truncation)

    def shifted_by(w):
        return shifted_compose(one + w, g) - g

    assert shifted_by(p.scale(a) + q.scale(b)) == shifted_by(p).scale(a) + shifted_by(q).scale(b)


@settings(max_examples=20, deadline=None)
@given(g1(truncation=4), g1(truncation=4), g0(truncation=4), st.integers(1, 3))
def test_truncation_coherence(f, g, h, cut) -> None:
    """Test cutting the inputs then operating equals operating then cutting."""
    assert shifted_compose(f.truncate(cut), g.truncate(cut)) == shifted_compose(f, g).truncate(cut)
    assert log_g(f.truncate(cut)) == log_g(f).truncate(cut)
    assert exp_g(h.truncate(cut)) == exp_g(h).truncate(cut)
