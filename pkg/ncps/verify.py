"""Seeded property suites over every module.

Each suite draws its inputs from its own generator seeded with
``[seed, index]``, where ``index`` is the suite's registry position, so a
report only depends on (seed, trials, alphabet, degree) and running a subset
of suites reproduces the same inputs.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from numpy.random import Generator
import structlog
from tqdm import tqdm

from ncps.coefficients import CoefficientRing, evaluate_t
from ncps.combinatorics import (
    all_words,
    catalan,
    non_crossing_partitions,
    set_partitions_filtered,
    trees_brute_force,
    trees_up_to,
)
from ncps.constants import FORM_DEGREE_CAP
from ncps.cumulants import (
    boolean_fixed_point_check,
    boolean_from_moments,
    boolean_oracle_recursion,
    dictionary_check,
    free_fixed_point_check,
    free_from_moments,
    free_oracle_series,
    moments_from_boolean,
    moments_from_free,
    moments_from_monotone,
    monotone_from_moments,
    monotone_oracle_formula,
    monotone_oracle_trees,
)
from ncps.errors import InputError, NCPSError
from ncps.generators import (
    random_character,
    random_coefficient,
    random_g0,
    random_g1,
    random_infinitesimal,
    random_linear_form,
)
from ncps.hopf import (
    Form,
    character_from_series,
    character_inverse,
    coassociativity_legs,
    conv_exp,
    conv_log,
    convolve,
    coproduct,
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
from ncps.loaders import SeriesLoader
from ncps.schema import Counterexample, IdentityResult, SuiteResult, VerifyConfig, VerifyReport
from ncps.series import (
    TruncatedSeries,
    bch,
    cauchy_inv,
    cauchy_mul,
    compose_univariate,
    exp_g,
    flow,
    left_action,
    lie_bracket,
    log_g,
    mu_embed,
    pre_lie,
    right_action,
    shifted_compose,
    shifted_inverse,
    shifted_substitute,
)

logger = structlog.get_logger()

Check = Callable[[Generator, VerifyConfig], Counterexample | None]


@dataclass(frozen=True)
class Suite:
    """A named property check; deterministic suites run once."""

    name: str
    check: Check
    randomized: bool = True


SUITES: dict[str, Suite] = {}


def suite(name: str, randomized: bool = True) -> Callable[[Check], Check]:
    """Register a property suite."""

    def register(check: Check) -> Check:
        SUITES[name] = Suite(name, check, randomized)
        return check

    return register


def series_mismatch(
    detail: str, lhs: TruncatedSeries, rhs: TruncatedSeries, *inputs: TruncatedSeries
) -> Counterexample | None:
    """Counterexample at the first differing word, if any."""
    word = lhs.first_difference(rhs)
    if word is None:
        return None
    return Counterexample(
        detail=detail,
        trial=0,
        word=list(word),
        inputs=[SeriesLoader.to_document(series) for series in inputs],
    )


def form_mismatch(
    detail: str, lhs: Form, rhs: Form, *inputs: Form, max_factors: int | None = None
) -> Counterexample | None:
    """Counterexample at the first differing tensor word, if any."""
    tensor = lhs.as_linear_form().restricted_difference(rhs, max_factors)
    if tensor is None:
        return None
    return Counterexample(
        detail=detail,
        trial=0,
        tensor=[list(factor) for factor in tensor],
        inputs=[SeriesLoader.to_document(lambda_series(form)) for form in inputs],
    )


def identity_mismatch(result: IdentityResult, *inputs: TruncatedSeries) -> Counterexample | None:
    """Counterexample from a failed identity check."""
    if result.passed:
        return None
    return Counterexample(
        detail=result.name,
        trial=0,
        word=result.word,
        inputs=[SeriesLoader.to_document(series) for series in inputs],
    )


def first(*found: Counterexample | None) -> Counterexample | None:
    """First counterexample among several checks."""
    return next((c for c in found if c is not None), None)


def form_degree(config: VerifyConfig) -> int:
    """Degree for suites over linear forms."""
    return min(config.degree, FORM_DEGREE_CAP)


def random_scalar(rng: Generator) -> Fraction:
    """Small non-zero rational for scalings and flow times."""
    return random_coefficient(rng, bound=2)


def one(alphabet: int, truncation: int) -> TruncatedSeries:
    """The unit series."""
    return TruncatedSeries.one(alphabet, truncation)


@suite("group_associativity")
def check_group_associativity(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """The group law • is associative."""
    f, g, h = (random_g1(rng, config.alphabet, config.degree) for _ in range(3))
    return series_mismatch(
        "(f•g)•h = f•(g•h)",
        shifted_compose(shifted_compose(f, g), h),
        shifted_compose(f, shifted_compose(g, h)),
        f,
        g,
        h,
    )


@suite("group_unit")
def check_group_unit(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """1 is a two-sided unit for •."""
    f = random_g1(rng, config.alphabet, config.degree)
    unit = one(config.alphabet, config.degree)
    return first(
        series_mismatch("1•f = f", shifted_compose(unit, f), f, f),
        series_mismatch("f•1 = f", shifted_compose(f, unit), f, f),
    )


@suite("group_inverse")
def check_group_inverse(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """The shifted inverse is two-sided."""
    f = random_g1(rng, config.alphabet, config.degree)
    inverse = shifted_inverse(f)
    unit = one(config.alphabet, config.degree)
    return first(
        series_mismatch("f•f⁻¹ = 1", shifted_compose(f, inverse), unit, f),
        series_mismatch("f⁻¹•f = 1", shifted_compose(inverse, f), unit, f),
    )


@suite("action_decomposition")
def check_action_decomposition(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """f•g splits into g and the two actions of f − 1."""
    f, g = (random_g1(rng, config.alphabet, config.degree) for _ in range(2))
    shifted = f - one(config.alphabet, config.degree)
    return series_mismatch(
        "f•g = g + left(g, f−1) + right(g, f−1)",
        shifted_compose(f, g),
        g + left_action(g, shifted) + right_action(g, shifted),
        f,
        g,
    )


@suite("left_linearity")
def check_left_linearity(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """f•g − g is linear in f − 1."""
    d, n = config.alphabet, config.degree
    u, v = random_g0(rng, d, n), random_g0(rng, d, n)
    g = random_g1(rng, d, n)
    a, b = random_scalar(rng), random_scalar(rng)
    unit = one(d, n)

    def shifted_by(w: TruncatedSeries) -> TruncatedSeries:
        return shifted_compose(unit + w, g) - g

    return series_mismatch(
        f"((1+{a}u+{b}v)•g) − g = {a}((1+u)•g − g) + {b}((1+v)•g − g)",
        shifted_by(u.scale(a) + v.scale(b)),
        shifted_by(u).scale(a) + shifted_by(v).scale(b),
        u,
        v,
        g,
    )


@suite("cauchy_product")
def check_cauchy_product(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """The Cauchy product is dual to deconcatenation and has inverses in G¹."""
    d, n = config.alphabet, config.degree
    f = random_g1(rng, d, n)
    g = random_g1(rng, d, n)
    product = cauchy_mul(f, g)
    terms = {
        word: sum(
            (f.coefficient(u) * g.coefficient(v) for u, v in deconcatenation(word)),
            start=Fraction(0),
        )
        for word in all_words(d, n)
    }
    dual = TruncatedSeries(d, n, terms, constant=1)
    unit = one(d, n)
    return first(
        series_mismatch("fg by deconcatenation", product, dual, f, g),
        series_mismatch("f·f⁻¹ = 1", cauchy_mul(f, cauchy_inv(f)), unit, f),
        series_mismatch("f⁻¹·f = 1", cauchy_mul(cauchy_inv(f), f), unit, f),
    )


def associator(f: TruncatedSeries, g: TruncatedSeries, h: TruncatedSeries) -> TruncatedSeries:
    """(f◁g)◁h − f◁(g◁h)."""
    return pre_lie(pre_lie(f, g), h) - pre_lie(f, pre_lie(g, h))


@suite("pre_lie_identity")
def check_pre_lie_identity(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """The ◁ associator is symmetric in its last two arguments."""
    f, g, h = (random_g0(rng, config.alphabet, config.degree) for _ in range(3))
    return series_mismatch(
        "(f,g,h) = (f,h,g) for the ◁ associator",
        associator(f, g, h),
        associator(f, h, g),
        f,
        g,
        h,
    )


@suite("lie_bracket")
def check_lie_bracket(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """The commutator of ◁ is antisymmetric and satisfies Jacobi."""
    f, g, h = (random_g0(rng, config.alphabet, config.degree) for _ in range(3))
    jacobi = (
        lie_bracket(f, lie_bracket(g, h))
        + lie_bracket(g, lie_bracket(h, f))
        + lie_bracket(h, lie_bracket(f, g))
    )
    return first(
        series_mismatch("[f,g] = −[g,f]", lie_bracket(f, g), -lie_bracket(g, f), f, g),
        series_mismatch("Jacobi", jacobi, TruncatedSeries.zero(f.alphabet, f.truncation), f, g, h),
    )


@suite("pre_lie_monomials", randomized=False)
def check_pre_lie_monomials(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """xⁿ◁xᵐ = (n+1)xⁿ⁺ᵐ."""
    for n in range(1, 5):
        for m in range(1, 5):
            xn = TruncatedSeries.monomial(1, 8, (1,) * n)
            xm = TruncatedSeries.monomial(1, 8, (1,) * m)
            expected = TruncatedSeries.monomial(1, 8, (1,) * (n + m), n + 1)
            found = series_mismatch(f"x^{n}◁x^{m}", pre_lie(xn, xm), expected, xn, xm)
            if found:
                return found
    return None


@suite("univariate_exponential", randomized=False)
def check_univariate_exponential(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """exp_G of a single letter is the geometric series."""
    x = TruncatedSeries.monomial(1, config.degree, (1,))
    geometric = TruncatedSeries.univariate([1] * (config.degree + 1), config.degree)
    return series_mismatch("exp_G(x) = Σ xⁿ", exp_g(x), geometric, x)


@suite("exp_log")
def check_exp_log(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """exp_G and log_G are mutually inverse."""
    h = random_g0(rng, config.alphabet, config.degree)
    f = random_g1(rng, config.alphabet, config.degree)
    return first(
        series_mismatch("log_G(exp_G(h)) = h", log_g(exp_g(h)), h, h),
        series_mismatch("exp_G(log_G(f)) = f", exp_g(log_g(f)), f, f),
    )


@suite("bch")
def check_bch(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """bch has 0 as unit and −a as inverse."""
    a = random_g0(rng, config.alphabet, config.degree)
    zero = TruncatedSeries.zero(a.alphabet, a.truncation)
    return first(
        series_mismatch("bch(a, 0) = a", bch(a, zero), a, a),
        series_mismatch("bch(a, −a) = 0", bch(a, -a), zero, a),
    )


@suite("flow_semigroup")
def check_flow_semigroup(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """M_t is a one-parameter subgroup solving its evolution equation."""
    h = random_g0(rng, config.alphabet, config.degree)
    s, t = random_scalar(rng), random_scalar(rng)
    moments = flow(h)
    lifted = h.lift(CoefficientRing.RATIONAL_POLY_T)
    one_t = TruncatedSeries.one(h.alphabet, h.truncation, CoefficientRing.RATIONAL_POLY_T)
    return first(
        series_mismatch(
            f"M_{s}•M_{t} = M_{s + t}",
            shifted_compose(moments.evaluate_t(s), moments.evaluate_t(t)),
            moments.evaluate_t(s + t),
            h,
        ),
        series_mismatch("M_1 = exp_G(h)", moments.evaluate_t(1), exp_g(h), h),
        series_mismatch(
            "d/dt M_t = h + (M_t − 1)◁h",
            moments.derivative_t(),
            lifted + pre_lie(moments - one_t, lifted),
            h,
        ),
    )


@suite("univariate_faa_di_bruno")
def check_univariate_faa_di_bruno(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """μ turns • into ordinary composition."""
    f, g = (random_g1(rng, 1, config.degree) for _ in range(2))
    return series_mismatch(
        "μ(f•g) = μ(f)∘μ(g)",
        mu_embed(shifted_compose(f, g)),
        compose_univariate(mu_embed(f), mu_embed(g)),
        f,
        g,
    )


@suite("coproduct_split", randomized=False)
def check_coproduct_split(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """The half-coproducts sum to the coproduct."""
    for word in all_words(config.alphabet, form_degree(config)):
        halves = term_multiset(half_coproduct_left(word) + half_coproduct_right(word))
        if halves != term_multiset(coproduct(word)):
            return Counterexample(detail="Δ≺ + Δ≻ = Δ", trial=0, word=list(word))
    return None


@suite("coassociativity", randomized=False)
def check_coassociativity(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """The coproduct is coassociative."""
    for word in all_words(config.alphabet, form_degree(config)):
        left_first, right_first = coassociativity_legs(word)
        if left_first != right_first:
            return Counterexample(detail="(Δ⊗id)Δ = (id⊗Δ)Δ", trial=0, word=list(word))
    return None


@suite("convolution_associativity")
def check_convolution_associativity(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Convolution is associative."""
    d, n = config.alphabet, form_degree(config)
    phi, psi, rho = (random_linear_form(rng, d, n, random_scalar(rng)) for _ in range(3))
    return form_mismatch(
        "(φ∗ψ)∗ρ = φ∗(ψ∗ρ)",
        convolve(convolve(phi, psi), rho),
        convolve(phi, convolve(psi, rho)),
        phi,
        psi,
        rho,
    )


@suite("shuffle_identities")
def check_shuffle_identities(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """The half-shuffles satisfy the three shuffle relations."""
    d, n = config.alphabet, form_degree(config)
    phi, psi, rho = (random_linear_form(rng, d, n) for _ in range(3))
    return first(
        form_mismatch(
            "(φ≺ψ)≺ρ = φ≺(ψ∗ρ)",
            half_shuffle_left(half_shuffle_left(phi, psi), rho),
            half_shuffle_left(phi, convolve(psi, rho)),
            phi,
            psi,
            rho,
        ),
        form_mismatch(
            "(φ≻ψ)≺ρ = φ≻(ψ≺ρ)",
            half_shuffle_left(half_shuffle_right(phi, psi), rho),
            half_shuffle_right(phi, half_shuffle_left(psi, rho)),
            phi,
            psi,
            rho,
        ),
        form_mismatch(
            "φ≻(ψ≻ρ) = (φ∗ψ)≻ρ",
            half_shuffle_right(phi, half_shuffle_right(psi, rho)),
            half_shuffle_right(convolve(phi, psi), rho),
            phi,
            psi,
            rho,
        ),
    )


@suite("group_isomorphism")
def check_group_isomorphism(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Λ carries convolution of characters to •."""
    d, n = config.alphabet, form_degree(config)
    phi, psi = random_character(rng, d, n), random_character(rng, d, n)
    return series_mismatch(
        "Λ(Φ∗Ψ) = Λ(Φ)•Λ(Ψ)",
        lambda_series(convolve(phi, psi)),
        shifted_compose(lambda_gr(phi), lambda_gr(psi)),
        lambda_gr(phi),
        lambda_gr(psi),
    )


@suite("lie_isomorphism")
def check_lie_isomorphism(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Λ carries the convolution bracket to the ◁ bracket."""
    d, n = config.alphabet, form_degree(config)
    rho, sigma = random_infinitesimal(rng, d, n), random_infinitesimal(rng, d, n)
    return series_mismatch(
        "Λ([ρ,σ]) = [Λρ,Λσ]",
        lambda_series(form_bracket(rho, sigma)),
        lie_bracket(lambda_lie(rho), lambda_lie(sigma)),
        lambda_lie(rho),
        lambda_lie(sigma),
    )


@suite("half_shuffle_character")
def check_half_shuffle_character(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Half-shuffles against a character under Λ."""
    d, n = config.alphabet, form_degree(config)
    phi, gamma = random_linear_form(rng, d, n), random_character(rng, d, n)
    f, g = lambda_series(phi), lambda_gr(gamma)
    return first(
        series_mismatch(
            "Λ(φ≺γ) = f(xg)",
            lambda_series(half_shuffle_left(phi, gamma)),
            shifted_substitute(f, g),
            f,
            g,
        ),
        series_mismatch(
            "Λ(φ≻γ) = (g−1)f(xg)",
            lambda_series(half_shuffle_right(phi, gamma)),
            right_action(g, f),
            f,
            g,
        ),
    )


@suite("half_shuffle_infinitesimal")
def check_half_shuffle_infinitesimal(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Half-shuffles against an infinitesimal character under Λ."""
    d, n = config.alphabet, form_degree(config)
    phi, gamma = random_linear_form(rng, d, n), random_infinitesimal(rng, d, n)
    f, g = lambda_series(phi), lambda_lie(gamma)
    return first(
        series_mismatch(
            "Λ(φ≻γ) = g·f",
            lambda_series(half_shuffle_right(phi, gamma)),
            cauchy_mul(g, f),
            f,
            g,
        ),
        series_mismatch(
            "Λ(φ∗γ) = f◁g",
            lambda_series(convolve(phi, gamma)),
            pre_lie(f, g),
            f,
            g,
        ),
    )


@suite("exponential_coherence")
def check_exponential_coherence(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """exp*, exp_G and the tree expansion agree."""
    n = min(form_degree(config), config.tree_cap)
    h = random_g0(rng, config.alphabet, n)
    rho = infchar_from_series(h)
    exponential = exp_g(h)
    character = conv_exp(rho)
    return first(
        series_mismatch("exp_G(h) = Λ(exp*(ρ))", exponential, lambda_gr(character), h),
        series_mismatch(
            "exp_G(h) = tree expansion",
            exponential,
            monotone_oracle_trees(h, config.tree_cap),
            h,
        ),
        series_mismatch("log*(exp*(ρ)) = ρ", lambda_lie(conv_log(character)), h, h),
    )


@suite("convolution_semigroup")
def check_convolution_semigroup(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """exp* of a ray is a one-parameter subgroup."""
    d, n = config.alphabet, form_degree(config)
    rho = random_infinitesimal(rng, d, n)
    s, t = random_scalar(rng), random_scalar(rng)
    return series_mismatch(
        "exp*(sρ)∗exp*(tρ) = exp*((s+t)ρ)",
        lambda_series(convolve(conv_exp(rho.scale(s)), conv_exp(rho.scale(t)))),
        lambda_gr(conv_exp(rho.scale(s + t))),
        lambda_lie(rho),
    )


@suite("character_inverse")
def check_character_inverse(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """The character inverse is two-sided."""
    d, n = config.alphabet, form_degree(config)
    phi = random_character(rng, d, n)
    inverse = character_inverse(phi)
    unit = one(d, n)
    return first(
        series_mismatch(
            "Φ∗Φ⁻¹ = ε",
            lambda_series(convolve(phi, inverse)),
            unit,
            lambda_gr(phi),
        ),
        series_mismatch(
            "Φ⁻¹∗Φ = ε",
            lambda_series(convolve(inverse, phi)),
            unit,
            lambda_gr(phi),
        ),
    )


@suite("free_oracle")
def check_free_oracle(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Free moments against non-crossing partition sums."""
    kappa = random_g0(rng, config.alphabet, min(config.degree, config.nc_cap))
    return series_mismatch(
        "M = 1 + κ̂(xM) against non-crossing sums",
        moments_from_free(kappa),
        free_oracle_series(kappa, config.nc_cap),
        kappa,
    )


@suite("free_roundtrip")
def check_free_roundtrip(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """The free transforms are mutually inverse."""
    kappa = random_g0(rng, config.alphabet, config.degree)
    moments = random_g1(rng, config.alphabet, config.degree)
    return first(
        series_mismatch(
            "free_from_moments ∘ moments_from_free",
            free_from_moments(moments_from_free(kappa)),
            kappa,
            kappa,
        ),
        series_mismatch(
            "moments_from_free ∘ free_from_moments",
            moments_from_free(free_from_moments(moments)),
            moments,
            moments,
        ),
    )


@suite("boolean")
def check_boolean(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Boolean moments against the prefix recursion, and round-trips."""
    beta = random_g0(rng, config.alphabet, config.degree)
    moments = random_g1(rng, config.alphabet, config.degree)
    return first(
        series_mismatch(
            "1/(1−β̂) against the prefix recursion",
            moments_from_boolean(beta),
            boolean_oracle_recursion(beta),
            beta,
        ),
        series_mismatch(
            "boolean_from_moments ∘ moments_from_boolean",
            boolean_from_moments(moments_from_boolean(beta)),
            beta,
            beta,
        ),
        series_mismatch(
            "moments_from_boolean ∘ boolean_from_moments",
            moments_from_boolean(boolean_from_moments(moments)),
            moments,
            moments,
        ),
    )


@suite("monotone")
def check_monotone(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Monotone round-trip and agreement with log*."""
    h = random_g0(rng, config.alphabet, config.degree)
    moments = random_g1(rng, config.alphabet, form_degree(config))
    return first(
        series_mismatch(
            "monotone_from_moments ∘ moments_from_monotone",
            monotone_from_moments(moments_from_monotone(h)),
            h,
            h,
        ),
        series_mismatch(
            "log*(Φ) = log_G(M)",
            lambda_lie(conv_log(character_from_series(moments))),
            monotone_from_moments(moments),
            moments,
        ),
    )


@suite("monotone_formula")
def check_monotone_formula(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Univariate flow coefficients against the composition formula."""
    h = random_g0(rng, 1, config.degree)
    moments = flow(h)
    at_one = exp_g(h)
    for n in range(1, config.degree + 1):
        word = (1,) * n
        expected = monotone_oracle_formula(h, n)
        specialised = evaluate_t(expected, 1)
        if moments.coefficient(word) != expected or at_one.coefficient(word) != specialised:
            return Counterexample(
                detail="m_n(t) composition formula",
                trial=0,
                word=list(word),
                inputs=[SeriesLoader.to_document(h)],
            )
    return None


@suite("dictionary")
def check_dictionary(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Cross-transform identities hold."""
    moments = random_g1(rng, config.alphabet, config.degree)
    return first(*(identity_mismatch(result, moments) for result in dictionary_check(moments)))


@suite("fixed_points")
def check_fixed_points(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Free and Boolean cumulants solve their fixed-point equations."""
    moments = random_g1(rng, config.alphabet, form_degree(config))
    return first(
        identity_mismatch(free_fixed_point_check(moments), moments),
        identity_mismatch(boolean_fixed_point_check(moments), moments),
    )


@suite("truncation_coherence")
def check_truncation_coherence(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Operations commute with cutting the truncation."""
    d, n = config.alphabet, config.degree
    cut = int(rng.integers(1, n + 1))
    f, g = random_g1(rng, d, n), random_g1(rng, d, n)
    h = random_g0(rng, d, n)
    operations = [
        ("compose", shifted_compose, (f, g)),
        ("log_G", log_g, (f,)),
        ("exp_G", exp_g, (h,)),
        ("free_from_moments", free_from_moments, (f,)),
        ("boolean_from_moments", boolean_from_moments, (f,)),
        ("monotone_from_moments", monotone_from_moments, (f,)),
        ("moments_from_free", moments_from_free, (h,)),
        ("moments_from_boolean", moments_from_boolean, (h,)),
        ("moments_from_monotone", moments_from_monotone, (h,)),
    ]
    return first(
        *(
            series_mismatch(
                f"{name} commutes with truncation at {cut}",
                apply(*(s.truncate(cut) for s in operands)),
                apply(*operands).truncate(cut),
                *operands,
            )
            for name, apply, operands in operations
        )
    )


@suite("combinatorial_oracles", randomized=False)
def check_combinatorial_oracles(rng: Generator, config: VerifyConfig) -> Counterexample | None:
    """Enumerators agree with their brute-force counterparts."""
    for n in range(1, min(config.degree + 2, config.nc_cap) + 1):
        partitions = non_crossing_partitions(n, config.nc_cap)
        if partitions != set_partitions_filtered(n) or len(partitions) != catalan(n):
            return Counterexample(detail=f"non-crossing partitions of {n}", trial=0)
    for n in range(1, min(config.degree + 2, config.tree_cap) + 1):
        if trees_up_to(n) != trees_brute_force(n):
            return Counterexample(detail=f"rooted trees up to {n} nodes", trial=0)
    return None


def run_verify(config: VerifyConfig, progress: bool = True) -> VerifyReport:
    """Run the selected suites (all by default) in registry order."""
    order = list(SUITES)
    names = config.suites or order
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise InputError(f"Unknown suites {unknown}")
    names = [name for name in order if name in names]
    results = []
    for name in tqdm(names, desc="suites", disable=not progress):
        index = order.index(name)
        rng = np.random.default_rng([config.seed, index])
        current = SUITES[name]
        trials = config.trials if current.randomized else 1
        counterexample = None
        run = 0
        for trial in range(trials):
            run += 1
            try:
                found = current.check(rng, config)
            except NCPSError as e:
                found = Counterexample(detail=f"{type(e).__name__}: {e}", trial=trial)
            if found is not None:
                counterexample = found.model_copy(update={"trial": trial})
                logger.warning("suite failed", suite=name, trial=trial, detail=found.detail)
                break
        logger.debug("suite finished", suite=name, trials=run, passed=counterexample is None)
        results.append(
            SuiteResult(
                name=name,
                trials=run,
                passed=counterexample is None,
                counterexample=counterexample,
            )
        )
    return VerifyReport(
        seed=config.seed,
        trials=config.trials,
        alphabet=config.alphabet,
        degree=config.degree,
        suites=results,
    )
