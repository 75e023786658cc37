"""Truncated non-commutative power series and the shifted-composition group.

A series over the alphabet {1..d} is stored sparsely as a map from words to
coefficients, cut at word length N. Every operation truncates its output at
N, so all identities below hold exactly degree by degree.
"""
import enum
import math
from collections import defaultdict
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Iterable, Iterator, Mapping

import structlog

from ncps.coefficients import (
    T,
    Coefficient,
    CoefficientRing,
    derivative_t,
    evaluate_t,
)
from ncps.combinatorics import Word, check_word
from ncps.errors import DomainError, InputError

logger = structlog.get_logger()


class SeriesClass(str, enum.Enum):
    """Classes of series the group and Lie operations are defined on."""

    G1 = "G1"
    G0 = "G0"
    GC = "Gc"
    GENERAL = "general"


class TruncatedSeries:
    """Sparse series Σ f_w x_w over words of length ≤ truncation."""

    __slots__ = ("alphabet", "truncation", "ring", "constant", "_terms")

    def __init__(
        self,
        alphabet: int,
        truncation: int,
        terms: Mapping[Word, Any] | None = None,
        constant: Any = 0,
        ring: CoefficientRing = CoefficientRing.RATIONAL,
    ) -> None:
        if alphabet < 1 or truncation < 1:
            raise InputError(
                f"Alphabet and truncation must be positive, got d={alphabet}, N={truncation}"
            )
        clean: dict[Word, Coefficient] = {}
        for word, coeff in (terms or {}).items():
            word = check_word(word, alphabet)
            if not word:
                raise InputError("Use the constant for the coefficient of the unit word")
            if len(word) > truncation:
                raise InputError(f"Word {word} longer than truncation {truncation}")
            coeff = ring.coerce(coeff)
            if not ring.is_zero(coeff):
                clean[word] = coeff
        self.alphabet = alphabet
        self.truncation = truncation
        self.ring = ring
        self.constant = ring.coerce(constant)
        self._terms = clean

    @classmethod
    def _trusted(
        cls,
        template: "TruncatedSeries",
        terms: dict[Word, Coefficient],
        constant: Coefficient,
        truncation: int | None = None,
    ) -> "TruncatedSeries":
        """Build from already validated data, dropping zeros."""
        series = cls.__new__(cls)
        series.alphabet = template.alphabet
        series.truncation = truncation or template.truncation
        series.ring = template.ring
        series.constant = constant
        series._terms = {w: c for w, c in terms.items() if c}
        return series

    @classmethod
    def zero(
        cls, alphabet: int, truncation: int, ring: CoefficientRing = CoefficientRing.RATIONAL
    ) -> "TruncatedSeries":
        """The zero series."""
        return cls(alphabet, truncation, ring=ring)

    @classmethod
    def one(
        cls, alphabet: int, truncation: int, ring: CoefficientRing = CoefficientRing.RATIONAL
    ) -> "TruncatedSeries":
        """The unit series 1."""
        return cls(alphabet, truncation, constant=1, ring=ring)

    @classmethod
    def monomial(
        cls,
        alphabet: int,
        truncation: int,
        word: Word,
        coeff: Any = 1,
        ring: CoefficientRing = CoefficientRing.RATIONAL,
    ) -> "TruncatedSeries":
        """coeff · x_word."""
        if not word:
            return cls(alphabet, truncation, constant=coeff, ring=ring)
        return cls(alphabet, truncation, {tuple(word): coeff}, ring=ring)

    @classmethod
    def univariate(
        cls, coefficients: Iterable[Any], truncation: int | None = None
    ) -> "TruncatedSeries":
        """Series in x = x₁ from [c₀, c₁, c₂, ...]."""
        coefficients = list(coefficients)
        truncation = truncation or max(len(coefficients) - 1, 1)
        terms = {(1,) * n: c for n, c in enumerate(coefficients) if 0 < n <= truncation}
        return cls(1, truncation, terms, constant=coefficients[0] if coefficients else 0)

    @property
    def terms(self) -> Mapping[Word, Coefficient]:
        """Read-only view of the non-zero word coefficients."""
        return MappingProxyType(self._terms)

    def coefficient(self, word: Word) -> Coefficient:
        """Coefficient of x_word (the constant for the unit word)."""
        word = tuple(word)
        if not word:
            return self.constant
        return self._terms.get(word, self.ring.zero)

    def items(self) -> list[tuple[Word, Coefficient]]:
        """Non-zero terms in canonical order, unit word first."""
        head = [((), self.constant)] if self.constant else []
        return head + sorted(self._terms.items(), key=lambda item: (len(item[0]), item[0]))

    def __iter__(self) -> Iterator[tuple[Word, Coefficient]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms) + (1 if self.constant else 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.truncation == other.truncation
            and self.ring == other.ring
            and self.constant == other.constant
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash(
            (self.alphabet, self.truncation, self.ring, self.constant, frozenset(self._terms.items()))
        )

    def __repr__(self) -> str:
        return f"TruncatedSeries(d={self.alphabet}, N={self.truncation}, {self.render()})"

    def render(self) -> str:
        """Human readable sum of monomials."""
        parts = []
        for word, coeff in self.items():
            monomial = "".join(f"x{letter}" for letter in word) or "1"
            parts.append(f"({self.ring.render(coeff)})·{monomial}" if word else f"({self.ring.render(coeff)})")
        return " + ".join(parts) if parts else "0"

    def _check(self, other: "TruncatedSeries") -> None:
        check_compatible(self, other)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        terms = dict(self._terms)
        for word, coeff in other._terms.items():
            terms[word] = terms.get(word, self.ring.zero) + coeff
        return TruncatedSeries._trusted(self, terms, self.constant + other.constant)

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(-1)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, factor: Fraction | int) -> "TruncatedSeries":
        """Multiply every coefficient by a rational."""
        ring = self.ring
        terms = {w: ring.scale(c, factor) for w, c in self._terms.items()}
        return TruncatedSeries._trusted(self, terms, ring.scale(self.constant, factor))

    def times_coefficient(self, factor: Coefficient) -> "TruncatedSeries":
        """Multiply every coefficient by a ring element."""
        factor = self.ring.coerce(factor)
        terms = {w: c * factor for w, c in self._terms.items()}
        return TruncatedSeries._trusted(self, terms, self.constant * factor)

    def with_constant(self, constant: Any) -> "TruncatedSeries":
        """Same terms, different constant."""
        return TruncatedSeries._trusted(self, dict(self._terms), self.ring.coerce(constant))

    def truncate(self, truncation: int) -> "TruncatedSeries":
        """Drop every word longer than the new truncation (≤ current)."""
        if not 1 <= truncation <= self.truncation:
            raise InputError(f"Cannot truncate N={self.truncation} series at {truncation}")
        terms = {w: c for w, c in self._terms.items() if len(w) <= truncation}
        return TruncatedSeries._trusted(self, terms, self.constant, truncation)

    def homogeneous(self, degree: int) -> "TruncatedSeries":
        """Degree-n part (constant for n = 0)."""
        if degree == 0:
            return TruncatedSeries._trusted(self, {}, self.constant)
        terms = {w: c for w, c in self._terms.items() if len(w) == degree}
        return TruncatedSeries._trusted(self, terms, self.ring.zero)

    def min_degree(self) -> int | None:
        """Smallest degree with a non-zero coefficient."""
        if self.constant:
            return 0
        return min((len(w) for w in self._terms), default=None)

    def lift(self, ring: CoefficientRing) -> "TruncatedSeries":
        """Re-coerce the coefficients into another ring."""
        return TruncatedSeries(
            self.alphabet, self.truncation, dict(self._terms), self.constant, ring
        )

    def evaluate_t(self, point: Fraction | int) -> "TruncatedSeries":
        """Specialise a ℚ[t] series at t = point."""
        if self.ring != CoefficientRing.RATIONAL_POLY_T:
            raise DomainError("Only ℚ[t] series can be specialised in t")
        return TruncatedSeries(
            self.alphabet,
            self.truncation,
            {w: evaluate_t(c, point) for w, c in self._terms.items()},
            evaluate_t(self.constant, point),
        )

    def derivative_t(self) -> "TruncatedSeries":
        """Coefficient-wise formal derivative in t."""
        if self.ring != CoefficientRing.RATIONAL_POLY_T:
            raise DomainError("Only ℚ[t] series can be differentiated in t")
        terms = {w: derivative_t(c) for w, c in self._terms.items()}
        return TruncatedSeries._trusted(self, terms, derivative_t(self.constant))

    def first_difference(self, other: "TruncatedSeries") -> Word | None:
        """First word (canonical order) where the two series differ."""
        self._check(other)
        if self.constant != other.constant:
            return ()
        words = sorted(set(self._terms) | set(other._terms), key=lambda w: (len(w), w))
        for word in words:
            if self.coefficient(word) != other.coefficient(word):
                return word
        return None


def check_compatible(*series: TruncatedSeries) -> None:
    """All operands share alphabet, truncation and ring."""
    first = series[0]
    for other in series[1:]:
        if (first.alphabet, first.truncation, first.ring) != (
            other.alphabet,
            other.truncation,
            other.ring,
        ):
            raise InputError(
                "Mismatched series: "
                f"(d={first.alphabet}, N={first.truncation}, {first.ring.value}) vs "
                f"(d={other.alphabet}, N={other.truncation}, {other.ring.value})"
            )


def classify(f: TruncatedSeries) -> SeriesClass:
    """Most specific class of a series."""
    if f.constant == f.ring.one:
        return SeriesClass.G1
    if f.constant:
        return SeriesClass.GENERAL
    one = f.ring.one
    if all(f.coefficient((i,)) == one for i in range(1, f.alphabet + 1)):
        return SeriesClass.GC
    return SeriesClass.G0


def require_g1(f: TruncatedSeries, name: str) -> None:
    """Fail fast unless f₀ = 1."""
    if classify(f) != SeriesClass.G1:
        raise DomainError(f"{name} needs a series in G1 (constant 1), got constant {f.constant}")


def require_g0(f: TruncatedSeries, name: str) -> None:
    """Fail fast unless f₀ = 0."""
    if classify(f) not in (SeriesClass.G0, SeriesClass.GC):
        raise DomainError(f"{name} needs a series in G0 (constant 0), got constant {f.constant}")


def require_univariate(f: TruncatedSeries, name: str) -> None:
    """Fail fast unless d = 1."""
    if f.alphabet != 1:
        raise DomainError(f"{name} is univariate only, got alphabet size {f.alphabet}")


def _by_length(f: TruncatedSeries, with_constant: bool = False) -> list[tuple[Word, Coefficient]]:
    items = sorted(f.terms.items(), key=lambda item: len(item[0]))
    if with_constant and f.constant:
        items.insert(0, ((), f.constant))
    return items


def cauchy_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product: (fg)_w = Σ over deconcatenations u·v = w of f_u g_v."""
    check_compatible(f, g)
    n = f.truncation
    right = _by_length(g, with_constant=True)
    acc: dict[Word, Coefficient] = defaultdict(lambda: f.ring.zero)
    for u, a in _by_length(f, with_constant=True):
        for v, b in right:
            if len(u) + len(v) > n:
                break
            acc[u + v] += a * b
    constant = acc.pop((), f.ring.zero)
    return TruncatedSeries._trusted(f, acc, constant)


def cauchy_inv(f: TruncatedSeries) -> TruncatedSeries:
    """Inverse in (G1, ·) as the graded geometric series Σ (1 − f)^k."""
    require_g1(f, "cauchy_inv")
    step = TruncatedSeries._trusted(f, {}, f.ring.one) - f
    power = TruncatedSeries.one(f.alphabet, f.truncation, f.ring)
    result = power
    for _ in range(f.truncation):
        power = cauchy_mul(power, step)
        if not len(power):
            break
        result = result + power
    return result


def _spread(
    word: Word, g_items: list[tuple[Word, Coefficient]], budget: int, one: Coefficient
) -> dict[Word, Coefficient]:
    """Expand (xg)_word = x_{i₁}g ⋯ x_{i_k}g up to the degree budget."""
    partial: dict[Word, Coefficient] = {(): one}
    remaining = len(word)
    for letter in word:
        remaining -= 1
        grown: dict[Word, Coefficient] = defaultdict(lambda: one * 0)
        for prefix, coeff in partial.items():
            room = budget - remaining - len(prefix) - 1
            for u, gu in g_items:
                if len(u) > room:
                    break
                grown[prefix + (letter,) + u] += coeff * gu
        partial = grown
    return partial


def shifted_substitute(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f(xg(x)): substitute x_i ↦ x_i g(x) in every monomial of f."""
    check_compatible(f, g)
    require_g1(g, "shifted_substitute")
    g_items = _by_length(g, with_constant=True)
    one = f.ring.one
    acc: dict[Word, Coefficient] = defaultdict(lambda: f.ring.zero)
    for v, coeff in f.terms.items():
        for word, weight in _spread(v, g_items, f.truncation, one).items():
            acc[word] += coeff * weight
    return TruncatedSeries._trusted(f, acc, f.constant)


def left_action(g: TruncatedSeries, f: TruncatedSeries) -> TruncatedSeries:
    """g ↷ f = f(xg(x)) for g ∈ G1, f ∈ G0."""
    require_g0(f, "left_action")
    return shifted_substitute(f, g)


def right_action(g: TruncatedSeries, f: TruncatedSeries) -> TruncatedSeries:
    """g ↶ f = (g(x) − 1) f(xg(x)) for g ∈ G1, f ∈ G0."""
    require_g0(f, "right_action")
    return cauchy_mul(g - TruncatedSeries._trusted(g, {}, g.ring.one), shifted_substitute(f, g))


def shifted_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Group law f • g = g(x) f(xg(x)) on G1."""
    require_g1(f, "shifted_compose")
    require_g1(g, "shifted_compose")
    return cauchy_mul(g, shifted_substitute(f, g))


def shifted_inverse(f: TruncatedSeries) -> TruncatedSeries:
    """Inverse for •, solving f^{•−1}(x f(x)) = 1/f(x) degree by degree."""
    require_g1(f, "shifted_inverse")
    target = cauchy_inv(f)
    result = TruncatedSeries.one(f.alphabet, f.truncation, f.ring)
    for degree in range(1, f.truncation + 1):
        # (x f)_v = x_v + higher terms, so the degree-n residual is linear in result_n
        residual = shifted_substitute(result, f) - target
        result = result - residual.homogeneous(degree)
    logger.debug("shifted inverse solved", degree=f.truncation, support=len(result))
    return result


def pre_lie(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Insertion product: every monomial of g into every gap of every monomial of f."""
    check_compatible(f, g)
    require_g0(f, "pre_lie")
    require_g0(g, "pre_lie")
    n = f.truncation
    right = _by_length(g)
    acc: dict[Word, Coefficient] = defaultdict(lambda: f.ring.zero)
    for v, a in _by_length(f):
        for u, b in right:
            if len(u) + len(v) > n:
                break
            product = a * b
            for k in range(len(v) + 1):
                acc[v[:k] + u + v[k:]] += product
    return TruncatedSeries._trusted(f, acc, f.ring.zero)


def lie_bracket(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """[f, g] = f ◁ g − g ◁ f."""
    return pre_lie(f, g) - pre_lie(g, f)


def _pre_lie_iterates(h: TruncatedSeries) -> Iterator[tuple[int, TruncatedSeries]]:
    """Yield (n, R^{(n−1)}(h)) with R^{(0)} = h and R^{(n)} = R^{(n−1)} ◁ h."""
    current = h
    for n in range(1, h.truncation + 1):
        if not len(current):
            return
        yield n, current
        current = pre_lie(current, h)


def exp_g(h: TruncatedSeries) -> TruncatedSeries:
    """Pre-Lie exponential 1 + Σ R^{(n−1)}(h)/n! from G0 to G1."""
    require_g0(h, "exp_g")
    result = TruncatedSeries.one(h.alphabet, h.truncation, h.ring)
    for n, iterate in _pre_lie_iterates(h):
        result = result + iterate.scale(Fraction(1, math.factorial(n)))
    return result


def log_g(f: TruncatedSeries) -> TruncatedSeries:
    """Inverse of exp_g, by ascending-degree triangular solve."""
    require_g1(f, "log_g")
    result = TruncatedSeries.zero(f.alphabet, f.truncation, f.ring)
    for degree in range(1, f.truncation + 1):
        residual = f - exp_g(result)
        result = result + residual.homogeneous(degree)
    logger.debug("pre-Lie logarithm solved", degree=f.truncation, support=len(result))
    return result


def flow(h: TruncatedSeries) -> TruncatedSeries:
    """M_t = 1 + Σ R^{(n−1)}(h) tⁿ/n! as a series over ℚ[t]."""
    require_g0(h, "flow")
    if h.ring != CoefficientRing.RATIONAL:
        raise DomainError("flow takes a rational generator")
    poly = CoefficientRing.RATIONAL_POLY_T
    result = TruncatedSeries.one(h.alphabet, h.truncation, poly)
    for n, iterate in _pre_lie_iterates(h):
        result = result + iterate.lift(poly).times_coefficient(
            T**n * poly.coerce(Fraction(1, math.factorial(n)))
        )
    return result


def bch(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """BCH group law on G0 transported from •."""
    return log_g(shifted_compose(exp_g(f), exp_g(g)))


def mu_embed(f: TruncatedSeries) -> TruncatedSeries:
    """μ(f) = x f(x), a tangent-to-identity series truncated at N + 1."""
    require_univariate(f, "mu_embed")
    require_g1(f, "mu_embed")
    terms = {(1,) * (len(w) + 1): c for w, c in f.terms.items()}
    terms[(1,)] = f.constant
    return TruncatedSeries(1, f.truncation + 1, terms, ring=f.ring)


def compose_univariate(p: TruncatedSeries, q: TruncatedSeries) -> TruncatedSeries:
    """Ordinary composition p(q(x)) of univariate series, q₀ = 0."""
    check_compatible(p, q)
    require_univariate(p, "compose_univariate")
    require_g0(q, "compose_univariate")
    result = TruncatedSeries._trusted(p, {}, p.constant)
    power = TruncatedSeries.one(1, p.truncation, p.ring)
    for n in range(1, p.truncation + 1):
        power = cauchy_mul(power, q)
        coeff = p.coefficient((1,) * n)
        if coeff:
            result = result + power.times_coefficient(coeff)
    return result


def mu_compose_check(f: TruncatedSeries, g: TruncatedSeries) -> bool:
    """μ(f • g) = μ(f) ∘ μ(g) up to degree N + 1."""
    lhs = mu_embed(shifted_compose(f, g))
    rhs = compose_univariate(mu_embed(f), mu_embed(g))
    return lhs == rhs
