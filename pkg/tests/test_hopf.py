"""Word Hopf algebra and linear form tests."""
from fractions import Fraction

import pytest
from hypothesis import given, settings

from ncps.combinatorics import all_words
from ncps.errors import DomainError, InputError
from ncps.hopf import (
    Character,
    InfinitesimalCharacter,
    LinearForm,
    _merged,
    character_from_series,
    character_inverse,
    coassociativity_legs,
    conv_exp,
    conv_log,
    convolve,
    coproduct,
    coproduct_tensor,
    counit,
    deconcatenation,
    form_bracket,
    half_coproduct_left,
    half_coproduct_right,
    half_shuffle_left,
    half_shuffle_right,
    infchar_from_series,
    lambda_gr,
    lambda_lie,
    lambda_series,
    term_multiset,
)
from ncps.series import (
    TruncatedSeries,
    cauchy_mul,
    exp_g,
    lie_bracket,
    right_action,
    shifted_compose,
    shifted_substitute,
)
from tests.strategies import characters, infinitesimals, linear_forms


def test_coproduct_examples() -> None:
    """Test Δ on short words."""
    assert term_multiset(coproduct((1, 2))) == {
        ((), ((1, 2),)): 1,
        (((1,),), ((2,),)): 1,
        (((2,),), ((1,),)): 1,
        (((1, 2),), ()): 1,
    }
    assert term_multiset(coproduct((1, 1))) == {
        ((), ((1, 1),)): 1,
        (((1,),), ((1,),)): 2,
        (((1, 1),), ()): 1,
    }
    # the middle letter leaves two blocks behind
    assert term_multiset(coproduct((1, 2, 3)))[(((2,),), ((1,), (3,)))] == 1
    assert len(coproduct((1, 2, 3, 1))) == 16
    assert term_multiset(coproduct(())) == {((), ()): 1}


def test_half_coproducts() -> None:
    """Test Δ = Δ_≺ + Δ_≻ and the split on the first letter."""
    assert term_multiset(half_coproduct_left((1, 2))) == {
        (((1,),), ((2,),)): 1,
        (((1, 2),), ()): 1,
    }
    assert term_multiset(half_coproduct_right((1, 2))) == {
        ((), ((1, 2),)): 1,
        (((2,),), ((1,),)): 1,
    }
    for word in all_words(2, 4):
        left, right = half_coproduct_left(word), half_coproduct_right(word)
        halves = term_multiset(left) + term_multiset(right)
        assert halves == term_multiset(coproduct(word))
    with pytest.raises(DomainError):
        half_coproduct_left(())
    with pytest.raises(DomainError):
        half_coproduct_right(())


def test_coproduct_tensor() -> None:
    """Test multiplicativity on tensor words."""
    terms = term_multiset(coproduct_tensor(((1,), (2,))))
    assert terms == {
        ((), ((1,), (2,))): 1,
        (((1,),), ((2,),)): 1,
        (((2,),), ((1,),)): 1,
        (((1,), (2,)), ()): 1,
    }
    assert deconcatenation((1, 2)) == [((), (1, 2)), ((1,), (2,)), ((1, 2), ())]


def test_coassociativity() -> None:
    """Test (Δ ⊗ id)Δ = (id ⊗ Δ)Δ on every word up to length 4."""
    for word in all_words(2, 4):
        left_first, right_first = coassociativity_legs(word)
        assert left_first == right_first


def test_coproduct_cache_is_bounded() -> None:
    """Test merged expansions are memoized in a bounded cache."""
    coproduct_tensor(((1,), (2,)))
    assert _merged.cache_info().maxsize is not None


def test_forms() -> None:
    """Test form construction and evaluation."""
    phi = Character(1, 3, {(1,): 2, (1, 1): 3})
    assert phi.value(((1,), (1, 1))) == 6
    assert phi.value(()) == 1
    assert phi.word_value(()) == 1
    assert phi.value(((1, 1, 1),)) == 0
    with pytest.raises(InputError):
        phi.value(((1, 1), (1, 1)))
    with pytest.raises(InputError):
        phi.value(((1,), ()))
    with pytest.raises(InputError):
        phi.value(((2,),))
    rho = InfinitesimalCharacter(1, 3, {(1,): 2})
    assert rho.value(((1,), (1,))) == 0
    assert rho.unit_value == 0
    with pytest.raises(InputError):
        LinearForm(1, 2, {((1,), (1,), (1,)): 1})
    with pytest.raises(InputError):
        Character(2, 2, {(3,): 1})


def test_counit() -> None:
    """Test ε is the convolution unit."""
    phi = LinearForm(2, 3, {((1,),): 2, ((1,), (2,)): Fraction(1, 2), ((2, 1),): -1}, unit_value=3)
    epsilon = counit(2, 3)
    assert convolve(epsilon, phi) == phi
    assert convolve(phi, epsilon) == phi


def test_convolution_examples() -> None:
    """Test ρ∗ρ on small words."""
    rho = InfinitesimalCharacter(1, 3, {(1,): 1})
    square = convolve(rho, rho)
    assert square.value(((1, 1),)) == 2
    assert square.value(((1,),)) == 0
    assert square.unit_value == 0


def test_half_shuffle_units() -> None:
    """Test φ ≺ ε = φ, ε ≻ φ = φ and the vanishing sides."""
    phi = LinearForm(2, 3, {((1,),): 2, ((1,), (2,)): 1, ((2, 1, 2),): -1})
    epsilon = counit(2, 3)
    zero = LinearForm(2, 3)
    assert half_shuffle_left(phi, epsilon) == phi
    assert half_shuffle_right(epsilon, phi) == phi
    assert half_shuffle_left(epsilon, phi) == zero
    assert half_shuffle_right(phi, epsilon) == zero
    with pytest.raises(DomainError):
        half_shuffle_left(epsilon, epsilon)
    with pytest.raises(InputError):
        convolve(phi, counit(2, 2))


def test_exponential_examples() -> None:
    """Test exp* on zero and on the letter form."""
    assert conv_exp(InfinitesimalCharacter(2, 3)) == Character(2, 3)
    rho = InfinitesimalCharacter(1, 4, {(1,): 1})
    geometric = Character(1, 4, {(1,) * n: 1 for n in range(1, 5)})
    assert conv_exp(rho) == geometric
    assert conv_log(geometric) == rho
    with pytest.raises(DomainError):
        conv_exp(LinearForm(1, 2, unit_value=1))


def test_lambda() -> None:
    """Test Λ reads single words only and checks the form type."""
    phi = LinearForm(2, 2, {((1,),): 3, ((1,), (2,)): 5}, unit_value=1)
    assert lambda_series(phi) == TruncatedSeries(2, 2, {(1,): 3}, constant=1)
    rho = InfinitesimalCharacter(2, 2, {(2,): 1})
    with pytest.raises(DomainError):
        lambda_gr(rho)
    with pytest.raises(DomainError):
        lambda_lie(Character(2, 2))
    with pytest.raises(DomainError):
        character_from_series(TruncatedSeries.monomial(2, 2, (1,)))
    with pytest.raises(DomainError):
        infchar_from_series(TruncatedSeries.one(2, 2))
    f = TruncatedSeries(2, 2, {(1,): 1, (2, 1): -2}, constant=1)
    assert lambda_gr(character_from_series(f)) == f


@settings(max_examples=15, deadline=None)
@given(linear_forms(truncation=2), linear_forms(truncation=2), linear_forms(truncation=2))
def test_convolution_associativity(phi, psi, rho) -> None:
    """Test ∗ is associative."""
    assert convolve(convolve(phi, psi), rho) == convolve(phi, convolve(psi, rho))


@settings(max_examples=15, deadline=None)
@given(
    linear_forms(truncation=2, unit_value=0),
    linear_forms(truncation=2, unit_value=0),
    linear_forms(truncation=2, unit_value=0),
)
def test_shuffle_identities(phi, psi, rho) -> None:
    """Test the three half-shuffle relations and ≺ + ≻ = ∗."""
    assert half_shuffle_left(half_shuffle_left(phi, psi), rho) == half_shuffle_left(
        phi, convolve(psi, rho)
    )
    assert half_shuffle_left(half_shuffle_right(phi, psi), rho) == half_shuffle_right(
        phi, half_shuffle_left(psi, rho)
    )
    assert half_shuffle_right(phi, half_shuffle_right(psi, rho)) == half_shuffle_right(
        convolve(phi, psi), rho
    )
    assert half_shuffle_left(phi, psi) + half_shuffle_right(phi, psi) == convolve(phi, psi)


@settings(max_examples=15, deadline=None)
@given(characters(), characters())
def test_group_isomorphism(phi, psi) -> None:
    """Test Λ(Φ∗Ψ) = Λ(Φ)•Λ(Ψ)."""
    assert lambda_series(convolve(phi, psi)) == shifted_compose(lambda_gr(phi), lambda_gr(psi))


@settings(max_examples=15, deadline=None)
@given(infinitesimals(), infinitesimals())
def test_lie_isomorphism(rho, sigma) -> None:
    """Test Λ([ρ,σ]) = [Λρ, Λσ]."""
    expected = lie_bracket(lambda_lie(rho), lambda_lie(sigma))
    assert lambda_series(form_bracket(rho, sigma)) == expected


@settings(max_examples=15, deadline=None)
@given(linear_forms(unit_value=0), characters(), infinitesimals())
def test_half_shuffles_under_lambda(phi, gamma, sigma) -> None:
    """Test half-shuffles against a character or an infinitesimal character."""
    f, g, h = lambda_series(phi), lambda_gr(gamma), lambda_lie(sigma)
    assert lambda_series(half_shuffle_left(phi, gamma)) == shifted_substitute(f, g)
    assert lambda_series(half_shuffle_right(phi, gamma)) == right_action(g, f)
    assert lambda_series(half_shuffle_right(phi, sigma)) == cauchy_mul(h, f)


@settings(max_examples=10, deadline=None)
@given(infinitesimals())
def test_exponential_coherence(rho) -> None:
    """Test exp* matches exp_G and log* inverts exp*."""
    character = conv_exp(rho)
    assert lambda_gr(character) == exp_g(lambda_lie(rho))
    assert conv_log(character) == rho


@settings(max_examples=10, deadline=None)
@given(characters())
def test_character_inverse(phi) -> None:
    """Test Φ∗Φ⁻¹ = Φ⁻¹∗Φ = ε on every tensor word."""
    inverse = character_inverse(phi)
    assert convolve(phi, inverse) == counit(2, 3)
    assert convolve(inverse, phi) == counit(2, 3)
