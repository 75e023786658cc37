"""Seeded random series and forms with small rational coefficients."""
from fractions import Fraction

import numpy as np

from ncps.combinatorics import all_words, tensor_words
from ncps.hopf import Character, InfinitesimalCharacter, LinearForm
from ncps.series import TruncatedSeries

DENSITY = 0.6


def random_coefficient(rng: np.random.Generator, bound: int = 3) -> Fraction:
    """Non-zero p/q with |p| ≤ bound and q ∈ {1, 2}."""
    numerator = 0
    while numerator == 0:
        numerator = int(rng.integers(-bound, bound + 1))
    return Fraction(numerator, int(rng.integers(1, 3)))


def random_word_values(
    rng: np.random.Generator, alphabet: int, truncation: int, density: float = DENSITY
) -> dict[tuple[int, ...], Fraction]:
    """Sparse random values on words of length 1..N."""
    return {
        word: random_coefficient(rng)
        for word in all_words(alphabet, truncation)
        if rng.random() < density
    }


def random_series(
    rng: np.random.Generator,
    alphabet: int,
    truncation: int,
    constant: int | Fraction = 0,
    density: float = DENSITY,
) -> TruncatedSeries:
    """Random series with a fixed constant term."""
    return TruncatedSeries(
        alphabet, truncation, random_word_values(rng, alphabet, truncation, density), constant
    )


def random_g1(rng: np.random.Generator, alphabet: int, truncation: int) -> TruncatedSeries:
    """Random element of G1."""
    return random_series(rng, alphabet, truncation, constant=1)


def random_g0(rng: np.random.Generator, alphabet: int, truncation: int) -> TruncatedSeries:
    """Random element of G0."""
    return random_series(rng, alphabet, truncation)


def random_linear_form(
    rng: np.random.Generator,
    alphabet: int,
    truncation: int,
    unit_value: int | Fraction = 0,
    density: float = DENSITY,
) -> LinearForm:
    """Random form on tensor words of total degree 1..N."""
    values = {
        tensor: random_coefficient(rng)
        for tensor in tensor_words(alphabet, truncation)
        if rng.random() < density
    }
    return LinearForm(alphabet, truncation, values, unit_value)


def random_character(rng: np.random.Generator, alphabet: int, truncation: int) -> Character:
    """Random character."""
    return Character(alphabet, truncation, random_word_values(rng, alphabet, truncation))


def random_infinitesimal(
    rng: np.random.Generator, alphabet: int, truncation: int
) -> InfinitesimalCharacter:
    """Random infinitesimal character."""
    return InfinitesimalCharacter(
        alphabet, truncation, random_word_values(rng, alphabet, truncation)
    )
