"""The word Hopf algebra H = T(V) and linear forms on it.

Words are the letters' tuples of ``ncps.combinatorics``; a tensor word
w₁|⋯|w_k is a tuple of non-empty words. The coproduct sends a word to
Σ_S w_S ⊗ w_{J₁}|⋯|w_{J_m} over all index subsets S, and is extended
multiplicatively to tensor words. Forms are evaluated on tensor words of
total degree ≤ N; convolution, the half-shuffles and the exponential and
logarithm are computed exactly on that range.
"""
import math
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Mapping

import structlog

from ncps.coefficients import Coefficient, CoefficientRing
from ncps.combinatorics import (
    TensorWord,
    Word,
    check_tensor,
    check_word,
    enumerate_subsets,
    subset_split,
    tensor_degree,
    tensor_words,
)
from ncps.errors import DomainError, InputError, PostconditionError
from ncps.series import (
    TruncatedSeries,
    require_g0,
    require_g1,
    shifted_inverse,
)

logger = structlog.get_logger()


@dataclass(frozen=True)
class CoproductTerm:
    """One summand left ⊗ right with its multiplicity."""

    left: TensorWord
    right: TensorWord
    multiplicity: int = 1


def _word_terms(word: Word, subsets: Iterable[tuple[int, ...]]) -> list[CoproductTerm]:
    terms = []
    for subset in subsets:
        split = subset_split(word, subset)
        left = (split.extracted,) if split.extracted else ()
        terms.append(CoproductTerm(left, split.blocks))
    return terms


def coproduct(word: Word) -> list[CoproductTerm]:
    """Δ(w) = Σ_{S ⊆ [n]} w_S ⊗ w_{J₁}|⋯|w_{J_m}, one term per subset."""
    word = check_word(word)
    if not word:
        return [CoproductTerm((), ())]
    return _word_terms(word, enumerate_subsets(len(word)))


def half_coproduct_left(word: Word) -> list[CoproductTerm]:
    """Δ_≺(w): the subsets containing the first index."""
    word = check_word(word)
    if not word:
        raise DomainError("Half-coproducts are only defined on non-unit words")
    return _word_terms(word, [s for s in enumerate_subsets(len(word)) if 1 in s])


def half_coproduct_right(word: Word) -> list[CoproductTerm]:
    """Δ_≻(w): the subsets avoiding the first index."""
    word = check_word(word)
    if not word:
        raise DomainError("Half-coproducts are only defined on non-unit words")
    return _word_terms(word, [s for s in enumerate_subsets(len(word)) if 1 not in s])


def _multiply(
    terms: list[CoproductTerm], factor_terms: list[CoproductTerm]
) -> list[CoproductTerm]:
    """Product in T(V) ⊗ T(V): legs concatenate bar-wise."""
    return [
        CoproductTerm(
            a.left + b.left, a.right + b.right, a.multiplicity * b.multiplicity
        )
        for a in terms
        for b in factor_terms
    ]


def coproduct_tensor(tensor: TensorWord) -> list[CoproductTerm]:
    """Δ(w₁|⋯|w_n) = Δ(w₁)⋯Δ(w_n)."""
    tensor = check_tensor(tensor)
    terms = [CoproductTerm((), ())]
    for factor in tensor:
        terms = _multiply(terms, coproduct(factor))
    return terms


def half_coproduct_left_tensor(tensor: TensorWord) -> list[CoproductTerm]:
    """Δ_≺(w₁|w₂|⋯|w_n) = Δ_≺(w₁) Δ(w₂|⋯|w_n)."""
    tensor = check_tensor(tensor)
    if not tensor:
        raise DomainError("Half-coproducts are only defined on T₊(V)")
    return _multiply(half_coproduct_left(tensor[0]), coproduct_tensor(tensor[1:]))


def half_coproduct_right_tensor(tensor: TensorWord) -> list[CoproductTerm]:
    """Δ_≻(w₁|w₂|⋯|w_n) = Δ_≻(w₁) Δ(w₂|⋯|w_n)."""
    tensor = check_tensor(tensor)
    if not tensor:
        raise DomainError("Half-coproducts are only defined on T₊(V)")
    return _multiply(half_coproduct_right(tensor[0]), coproduct_tensor(tensor[1:]))


def deconcatenation(word: Word) -> list[tuple[Word, Word]]:
    """δ(w) = Σ_{u·v = w} u ⊗ v, the coproduct dual to the Cauchy product."""
    word = check_word(word)
    return [(word[:k], word[k:]) for k in range(len(word) + 1)]


def merge_terms(terms: Iterable[CoproductTerm]) -> list[CoproductTerm]:
    """Collect equal legs, adding multiplicities."""
    counts: Counter[tuple[TensorWord, TensorWord]] = Counter()
    for term in terms:
        counts[(term.left, term.right)] += term.multiplicity
    return [CoproductTerm(left, right, m) for (left, right), m in counts.items()]


@lru_cache(maxsize=4096)
def _merged(kind: str, tensor: TensorWord) -> tuple[CoproductTerm, ...]:
    expand = {
        "full": coproduct_tensor,
        "left": half_coproduct_left_tensor,
        "right": half_coproduct_right_tensor,
    }[kind]
    return tuple(merge_terms(expand(tensor)))


class Form(ABC):
    """A-valued linear form on T(V) known up to total degree N."""

    alphabet: int
    truncation: int
    ring: CoefficientRing

    @property
    @abstractmethod
    def unit_value(self) -> Coefficient:
        """Value on the empty tensor word."""

    @abstractmethod
    def value(self, tensor: TensorWord) -> Coefficient:
        """Value on a tensor word of total degree ≤ N."""

    def word_value(self, word: Word) -> Coefficient:
        """Value on a single word (𝟙 gives the unit value)."""
        word = tuple(word)
        return self.value((word,)) if word else self.unit_value

    def word_values(self) -> dict[Word, Coefficient]:
        """Non-zero values on single words."""
        values = {}
        for tensor in tensor_words(self.alphabet, self.truncation):
            if len(tensor) == 1:
                value = self.value(tensor)
                if value:
                    values[tensor[0]] = value
        return values

    def as_linear_form(self) -> "LinearForm":
        """Materialise as a LinearForm."""
        values = {}
        for tensor in tensor_words(self.alphabet, self.truncation):
            value = self.value(tensor)
            if value:
                values[tensor] = value
        return LinearForm(self.alphabet, self.truncation, values, self.unit_value, self.ring)

    def _check_tensor(self, tensor: TensorWord) -> TensorWord:
        tensor = check_tensor(tensor, self.alphabet)
        if tensor_degree(tensor) > self.truncation:
            raise InputError(
                f"Tensor {tensor} exceeds total degree {self.truncation}"
            )
        return tensor


def _clean_words(
    alphabet: int, truncation: int, values: Mapping[Word, Any], ring: CoefficientRing
) -> dict[Word, Coefficient]:
    clean = {}
    for word, value in values.items():
        word = check_word(word, alphabet)
        if not word or len(word) > truncation:
            raise InputError(f"Word values must be on words of length 1..{truncation}: {word}")
        value = ring.coerce(value)
        if value:
            clean[word] = value
    return clean


class LinearForm(Form):
    """General form: explicit values on tensor words of total degree 1..N."""

    def __init__(
        self,
        alphabet: int,
        truncation: int,
        values: Mapping[TensorWord, Any] | None = None,
        unit_value: Any = 0,
        ring: CoefficientRing = CoefficientRing.RATIONAL,
    ) -> None:
        self.alphabet = alphabet
        self.truncation = truncation
        self.ring = ring
        self._unit = ring.coerce(unit_value)
        self._values: dict[TensorWord, Coefficient] = {}
        for tensor, value in (values or {}).items():
            tensor = check_tensor(tensor, alphabet)
            if not tensor or tensor_degree(tensor) > truncation:
                raise InputError(f"Tensor {tensor} outside total degree 1..{truncation}")
            value = ring.coerce(value)
            if value:
                self._values[tensor] = value

    @classmethod
    def _trusted(
        cls, template: Form, values: dict[TensorWord, Coefficient], unit_value: Coefficient
    ) -> "LinearForm":
        form = cls.__new__(cls)
        form.alphabet = template.alphabet
        form.truncation = template.truncation
        form.ring = template.ring
        form._unit = unit_value
        form._values = {t: v for t, v in values.items() if v}
        return form

    @property
    def unit_value(self) -> Coefficient:
        return self._unit

    @property
    def values(self) -> Mapping[TensorWord, Coefficient]:
        """Non-zero values on non-empty tensor words."""
        return dict(self._values)

    def value(self, tensor: TensorWord) -> Coefficient:
        tensor = self._check_tensor(tensor)
        if not tensor:
            return self._unit
        return self._values.get(tensor, self.ring.zero)

    def as_linear_form(self) -> "LinearForm":
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearForm):
            return NotImplemented
        return (
            (self.alphabet, self.truncation, self.ring, self._unit)
            == (other.alphabet, other.truncation, other.ring, other._unit)
            and self._values == other._values
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LinearForm(d={self.alphabet}, N={self.truncation}, unit={self._unit}, support={len(self._values)})"

    def __add__(self, other: Form) -> "LinearForm":
        check_forms(self, other)
        other = other.as_linear_form()
        values = dict(self._values)
        for tensor, value in other._values.items():
            values[tensor] = values.get(tensor, self.ring.zero) + value
        return LinearForm._trusted(self, values, self._unit + other._unit)

    def scale(self, factor: Fraction | int) -> "LinearForm":
        """Multiply every value by a rational."""
        values = {t: self.ring.scale(v, factor) for t, v in self._values.items()}
        return LinearForm._trusted(self, values, self.ring.scale(self._unit, factor))

    def __neg__(self) -> "LinearForm":
        return self.scale(-1)

    def __sub__(self, other: Form) -> "LinearForm":
        return self + (-other.as_linear_form())

    def restricted_difference(self, other: Form, max_factors: int | None = None) -> TensorWord | None:
        """First tensor word (with at most max_factors factors) where the forms differ."""
        check_forms(self, other)
        if self.unit_value != other.unit_value:
            return ()
        for tensor in tensor_words(self.alphabet, self.truncation):
            if max_factors is not None and len(tensor) > max_factors:
                continue
            if self.value(tensor) != other.value(tensor):
                return tensor
        return None


class Character(Form):
    """Unital multiplicative form: Φ(w₁|⋯|w_p) = φ(w₁)⋯φ(w_p)."""

    def __init__(
        self,
        alphabet: int,
        truncation: int,
        word_values: Mapping[Word, Any] | None = None,
        ring: CoefficientRing = CoefficientRing.RATIONAL,
    ) -> None:
        self.alphabet = alphabet
        self.truncation = truncation
        self.ring = ring
        self._words = _clean_words(alphabet, truncation, word_values or {}, ring)

    @property
    def unit_value(self) -> Coefficient:
        return self.ring.one

    def value(self, tensor: TensorWord) -> Coefficient:
        tensor = self._check_tensor(tensor)
        result = self.ring.one
        for factor in tensor:
            result = result * self._words.get(factor, self.ring.zero)
            if not result:
                break
        return result

    def word_values(self) -> dict[Word, Coefficient]:
        return dict(self._words)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return (self.alphabet, self.truncation, self.ring, self._words) == (
            other.alphabet,
            other.truncation,
            other.ring,
            other._words,
        )

    __hash__ = None  # type: ignore[assignment]


class InfinitesimalCharacter(Form):
    """Form vanishing on 1 and on every tensor word with two or more factors."""

    def __init__(
        self,
        alphabet: int,
        truncation: int,
        word_values: Mapping[Word, Any] | None = None,
        ring: CoefficientRing = CoefficientRing.RATIONAL,
    ) -> None:
        self.alphabet = alphabet
        self.truncation = truncation
        self.ring = ring
        self._words = _clean_words(alphabet, truncation, word_values or {}, ring)

    @property
    def unit_value(self) -> Coefficient:
        return self.ring.zero

    def value(self, tensor: TensorWord) -> Coefficient:
        tensor = self._check_tensor(tensor)
        if len(tensor) != 1:
            return self.ring.zero
        return self._words.get(tensor[0], self.ring.zero)

    def word_values(self) -> dict[Word, Coefficient]:
        return dict(self._words)

    def scale(self, factor: Fraction | int) -> "InfinitesimalCharacter":
        """Multiply by a rational; stays infinitesimal."""
        return InfinitesimalCharacter(
            self.alphabet,
            self.truncation,
            {w: self.ring.scale(v, factor) for w, v in self._words.items()},
            self.ring,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InfinitesimalCharacter):
            return NotImplemented
        return (self.alphabet, self.truncation, self.ring, self._words) == (
            other.alphabet,
            other.truncation,
            other.ring,
            other._words,
        )

    __hash__ = None  # type: ignore[assignment]


def check_forms(*forms: Form) -> None:
    """All forms share alphabet, truncation and ring."""
    first = forms[0]
    for other in forms[1:]:
        if (first.alphabet, first.truncation, first.ring) != (
            other.alphabet,
            other.truncation,
            other.ring,
        ):
            raise InputError(
                "Mismatched forms: "
                f"(d={first.alphabet}, N={first.truncation}, {first.ring.value}) vs "
                f"(d={other.alphabet}, N={other.truncation}, {other.ring.value})"
            )


def counit(
    alphabet: int, truncation: int, ring: CoefficientRing = CoefficientRing.RATIONAL
) -> LinearForm:
    """ε_A: 1 on the empty tensor word, 0 elsewhere."""
    return LinearForm(alphabet, truncation, unit_value=1, ring=ring)


def _pair(kind: str, phi: Form, psi: Form) -> dict[TensorWord, Coefficient]:
    """Σ over the (half-)coproduct of each tensor word of φ(left)·ψ(right)."""
    zero = phi.ring.zero
    values: dict[TensorWord, Coefficient] = {}
    for tensor in tensor_words(phi.alphabet, phi.truncation):
        total = zero
        for term in _merged(kind, tensor):
            left = phi.value(term.left)
            if not left:
                continue
            right = psi.value(term.right)
            if right:
                total += term.multiplicity * left * right
        if total:
            values[tensor] = total
    return values


def convolve(phi: Form, psi: Form) -> LinearForm:
    """φ ∗ ψ = m_A(φ ⊗ ψ)Δ."""
    check_forms(phi, psi)
    values = _pair("full", phi, psi)
    return LinearForm._trusted(phi, values, phi.unit_value * psi.unit_value)


def _check_half_units(phi: Form, psi: Form) -> None:
    if phi.unit_value and psi.unit_value:
        raise DomainError("Half-shuffle products of two forms with unit part are undefined")


def half_shuffle_left(phi: Form, psi: Form) -> LinearForm:
    """φ ≺ ψ = m_A(φ ⊗ ψ)Δ_≺, with φ ≺ ε = φ and ε ≺ φ = 0."""
    check_forms(phi, psi)
    _check_half_units(phi, psi)
    return LinearForm._trusted(phi, _pair("left", phi, psi), phi.ring.zero)


def half_shuffle_right(phi: Form, psi: Form) -> LinearForm:
    """φ ≻ ψ = m_A(φ ⊗ ψ)Δ_≻, with ε ≻ φ = φ and φ ≻ ε = 0."""
    check_forms(phi, psi)
    _check_half_units(phi, psi)
    return LinearForm._trusted(phi, _pair("right", phi, psi), phi.ring.zero)


def form_bracket(phi: Form, psi: Form) -> LinearForm:
    """[φ, ψ] = φ∗ψ − ψ∗φ."""
    return convolve(phi, psi) - convolve(psi, phi)


def conv_exp(rho: InfinitesimalCharacter) -> Character:
    """exp*(ρ) = ε + Σ ρ^{∗n}/n!, packaged from its word values."""
    if rho.unit_value:
        raise DomainError("conv_exp needs a form vanishing on the unit")
    power: LinearForm = counit(rho.alphabet, rho.truncation, rho.ring)
    result = power
    for n in range(1, rho.truncation + 1):
        power = convolve(power, rho)
        result = result + power.scale(Fraction(1, math.factorial(n)))
    words = {t[0]: v for t, v in result.values.items() if len(t) == 1}
    return Character(rho.alphabet, rho.truncation, words, rho.ring)


def conv_log(phi: Character) -> InfinitesimalCharacter:
    """log*(Φ) = Σ (−1)^{n+1}(Φ − ε)^{∗n}/n, checked to be infinitesimal."""
    shifted = phi.as_linear_form() - counit(phi.alphabet, phi.truncation, phi.ring)
    power: LinearForm = counit(phi.alphabet, phi.truncation, phi.ring)
    result = LinearForm(phi.alphabet, phi.truncation, ring=phi.ring)
    for n in range(1, phi.truncation + 1):
        power = convolve(power, shifted)
        result = result + power.scale(Fraction((-1) ** (n + 1), n))
    stray = [t for t in result.values if len(t) > 1]
    if stray or result.unit_value:
        raise PostconditionError(
            f"Convolution logarithm does not vanish on products, e.g. at {stray[:1]}"
        )
    logger.debug("convolution logarithm", degree=phi.truncation, support=len(result.values))
    words = {t[0]: v for t, v in result.values.items()}
    return InfinitesimalCharacter(phi.alphabet, phi.truncation, words, phi.ring)


def character_inverse(phi: Character) -> Character:
    """Convolution inverse, computed as the shifted inverse of Λ_gr(Φ)."""
    return character_from_series(shifted_inverse(lambda_gr(phi)))


def lambda_series(phi: Form) -> TruncatedSeries:
    """Λ(φ) = φ(1) + Σ_w φ(w) x_w; tensor values are not taken into account."""
    return TruncatedSeries(
        phi.alphabet, phi.truncation, phi.word_values(), phi.unit_value, phi.ring
    )


def lambda_gr(phi: Character) -> TruncatedSeries:
    """Λ_gr: characters → G1."""
    if not isinstance(phi, Character):
        raise DomainError("lambda_gr takes a character")
    return lambda_series(phi)


def lambda_lie(rho: InfinitesimalCharacter) -> TruncatedSeries:
    """Λ_Lie: infinitesimal characters → G0."""
    if not isinstance(rho, InfinitesimalCharacter):
        raise DomainError("lambda_lie takes an infinitesimal character")
    return lambda_series(rho)


def character_from_series(f: TruncatedSeries) -> Character:
    """Inverse of Λ_gr, extended multiplicatively."""
    require_g1(f, "character_from_series")
    return Character(f.alphabet, f.truncation, dict(f.terms), f.ring)


def infchar_from_series(f: TruncatedSeries) -> InfinitesimalCharacter:
    """Inverse of Λ_Lie, extended by zero on products."""
    require_g0(f, "infchar_from_series")
    return InfinitesimalCharacter(f.alphabet, f.truncation, dict(f.terms), f.ring)


def coassociativity_legs(word: Word) -> tuple[Counter, Counter]:
    """Three-leg multisets of (Δ ⊗ id)Δ and (id ⊗ Δ)Δ on a word."""
    left_first: Counter = Counter()
    right_first: Counter = Counter()
    for term in coproduct(word):
        inner = coproduct(term.left[0]) if term.left else coproduct(())
        for sub in inner:
            left_first[(sub.left, sub.right, term.right)] += term.multiplicity * sub.multiplicity
        for sub in coproduct_tensor(term.right):
            right_first[(term.left, sub.left, sub.right)] += term.multiplicity * sub.multiplicity
    return left_first, right_first


def term_multiset(terms: Iterable[CoproductTerm]) -> Counter:
    """Multiset of legs with multiplicities."""
    counts: Counter = Counter()
    for term in terms:
        counts[(term.left, term.right)] += term.multiplicity
    return +counts

