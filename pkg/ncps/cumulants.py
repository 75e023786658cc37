"""Moment-cumulant transforms: free, Boolean and monotone.

Moments are a series M ∈ G1 with m(w) the coefficient of x_w; cumulants are
a series in G0. Each transform has an independent brute-force oracle used by
the verification harness.
"""
import enum
import math
from collections import Counter
from fractions import Fraction
from typing import Callable

import structlog
from sympy.polys.rings import PolyElement

from ncps.coefficients import POLY_T, Coefficient, t_power
from ncps.combinatorics import (
    NC_CAP,
    TREE_CAP,
    RootedTree,
    Word,
    all_words,
    check_word,
    compositions,
    graft,
    non_crossing_partitions,
    prefix_splits,
    symmetry_factor,
    tree_factorial,
    trees_up_to,
)
from ncps.errors import InputError
from ncps.hopf import (
    Form,
    LinearForm,
    character_from_series,
    counit,
    half_shuffle_left,
    half_shuffle_right,
    infchar_from_series,
)
from ncps.schema import IdentityResult
from ncps.series import (
    TruncatedSeries,
    cauchy_inv,
    exp_g,
    log_g,
    pre_lie,
    require_g0,
    require_g1,
    require_univariate,
    shifted_inverse,
    shifted_substitute,
)

logger = structlog.get_logger()


class CumulantKind(str, enum.Enum):
    """Families of non-commutative cumulants."""

    FREE = "free"
    BOOLEAN = "boolean"
    MONOTONE = "monotone"

    @property
    def to_cumulants(self) -> Callable[[TruncatedSeries], TruncatedSeries]:
        """Moments → cumulants transform."""
        if self == CumulantKind.FREE:
            return free_from_moments
        elif self == CumulantKind.BOOLEAN:
            return boolean_from_moments
        return monotone_from_moments

    @property
    def to_moments(self) -> Callable[[TruncatedSeries], TruncatedSeries]:
        """Cumulants → moments transform."""
        if self == CumulantKind.FREE:
            return moments_from_free
        elif self == CumulantKind.BOOLEAN:
            return moments_from_boolean
        return moments_from_monotone


class Direction(str, enum.Enum):
    """Conversion direction."""

    M2C = "m2c"
    C2M = "c2m"


def _one(template: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries.one(template.alphabet, template.truncation, template.ring)


def moments_from_free(kappa: TruncatedSeries) -> TruncatedSeries:
    """Fixed point M = 1 + κ̂(xM), iterated from M = 1."""
    require_g0(kappa, "moments_from_free")
    one = _one(kappa)
    moments = one
    # degree-n coefficients are final after n rounds
    for _ in range(kappa.truncation):
        moments = one + shifted_substitute(kappa, moments)
    return moments


def free_from_moments(moments: TruncatedSeries) -> TruncatedSeries:
    """Free cumulants κ̂ with moments_from_free(κ̂) = M, solved degree by degree."""
    require_g1(moments, "free_from_moments")
    kappa = TruncatedSeries.zero(moments.alphabet, moments.truncation, moments.ring)
    for degree in range(1, moments.truncation + 1):
        residual = moments - moments_from_free(kappa)
        kappa = kappa + residual.homogeneous(degree)
    logger.debug("free cumulants solved", degree=moments.truncation, support=len(kappa))
    return kappa


def free_oracle_nc(kappa: TruncatedSeries, word: Word, cap: int = NC_CAP) -> Coefficient:
    """m(w) as a sum over non-crossing partitions of products of block cumulants."""
    require_g0(kappa, "free_oracle_nc")
    word = check_word(word, kappa.alphabet)
    if not word:
        return kappa.ring.one
    total = kappa.ring.zero
    for partition in non_crossing_partitions(len(word), cap):
        product = kappa.ring.one
        for block in partition.blocks:
            product = product * kappa.coefficient(tuple(word[i - 1] for i in block))
            if not product:
                break
        total += product
    return total


def free_oracle_series(kappa: TruncatedSeries, cap: int = NC_CAP) -> TruncatedSeries:
    """Every moment up to degree N from the non-crossing oracle."""
    if kappa.truncation > cap:
        raise InputError(f"Non-crossing enumeration capped at {cap}, got N={kappa.truncation}")
    terms = {
        word: free_oracle_nc(kappa, word, cap)
        for word in all_words(kappa.alphabet, kappa.truncation)
    }
    return TruncatedSeries(kappa.alphabet, kappa.truncation, terms, 1, kappa.ring)


def boolean_from_moments(moments: TruncatedSeries) -> TruncatedSeries:
    """β̂ = 1 − 1/M."""
    require_g1(moments, "boolean_from_moments")
    return _one(moments) - cauchy_inv(moments)


def moments_from_boolean(beta: TruncatedSeries) -> TruncatedSeries:
    """M = 1/(1 − β̂), the solution of M = 1 + β̂M."""
    require_g0(beta, "moments_from_boolean")
    return cauchy_inv(_one(beta) - beta)


def boolean_oracle_recursion(beta: TruncatedSeries) -> TruncatedSeries:
    """Moments from m(w) = Σ over w = uv, v ≠ 𝟙 of m(u)β(v)."""
    require_g0(beta, "boolean_oracle_recursion")
    moments: dict[Word, Coefficient] = {(): beta.ring.one}
    for word in all_words(beta.alphabet, beta.truncation):
        total = beta.ring.zero
        for u, v in prefix_splits(word):
            total += moments[u] * beta.coefficient(v)
        moments[word] = total
    constant = moments.pop(())
    return TruncatedSeries(beta.alphabet, beta.truncation, moments, constant, beta.ring)


def monotone_from_moments(moments: TruncatedSeries) -> TruncatedSeries:
    """Monotone cumulants h = log_G(M)."""
    return log_g(moments)


def moments_from_monotone(h: TruncatedSeries) -> TruncatedSeries:
    """Moments M = exp_G(h)."""
    return exp_g(h)


def monotone_formula_terms(n: int) -> dict[tuple[int, tuple[int, ...]], Fraction]:
    """Coefficients of h_{i₁}⋯h_{i_k} t^k in m_n(t), keyed by (k, sorted indices)."""
    terms: Counter = Counter()
    for parts in compositions(n):
        k = len(parts)
        weight = math.prod(sum(parts[: j + 1]) + 1 for j in range(k - 1))
        terms[(k, tuple(sorted(parts)))] += Fraction(weight, math.factorial(k))
    return dict(terms)


def monotone_oracle_formula(h: TruncatedSeries, n: int) -> PolyElement:
    """Univariate m_n(t) from the explicit composition sum."""
    require_univariate(h, "monotone_oracle_formula")
    require_g0(h, "monotone_oracle_formula")
    if not 1 <= n <= h.truncation:
        raise InputError(f"Degree {n} outside 1..{h.truncation}")
    value = POLY_T.zero
    for (k, parts), coeff in monotone_formula_terms(n).items():
        scale = coeff * math.prod(h.coefficient((1,) * i) for i in parts)
        if scale:
            value += t_power(k, scale)
    return value


def monotone_oracle_symbolic(n: int) -> str:
    """m_n(t) with formal h₁..h_n, e.g. "h3*t + 5/2*h1*h2*t^2 + h1^3*t^3"."""
    if n < 1:
        raise InputError(f"Degree must be positive, got {n}")
    parts = []
    for (k, indices), coeff in sorted(monotone_formula_terms(n).items()):
        factors = []
        for index, power in sorted(Counter(indices).items()):
            factors.append(f"h{index}" if power == 1 else f"h{index}^{power}")
        if coeff != 1:
            factors.insert(0, str(coeff))
        factors.append("t" if k == 1 else f"t^{k}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def prelie_tree_image(
    tree: RootedTree,
    h: TruncatedSeries,
    cache: dict[RootedTree, TruncatedSeries] | None = None,
) -> TruncatedSeries:
    """P_h(τ): the pre-Lie morphism from rooted trees sending • to h."""
    require_g0(h, "prelie_tree_image")
    cache = {} if cache is None else cache
    return _tree_image(tree, h, cache)


def _tree_image(
    tree: RootedTree, h: TruncatedSeries, cache: dict[RootedTree, TruncatedSeries]
) -> TruncatedSeries:
    if tree in cache:
        return cache[tree]
    children = tree.children
    if not children:
        image = h
    elif len(children) == 1:
        image = pre_lie(h, _tree_image(children[0], h, cache))
    else:
        # τ' ◁ τ_k grafts τ_k on every node of τ'; the root graft gives τ
        trunk, branch = RootedTree(children[:-1]), children[-1]
        image = pre_lie(_tree_image(trunk, h, cache), _tree_image(branch, h, cache))
        for other in graft(trunk, branch, include_root=False):
            image = image - _tree_image(other, h, cache)
    cache[tree] = image
    return image


def monotone_oracle_trees(h: TruncatedSeries, cap: int = TREE_CAP) -> TruncatedSeries:
    """exp_G(h) as 1 + Σ over trees of P_h(τ)/(τ!σ(τ))."""
    require_g0(h, "monotone_oracle_trees")
    if h.truncation > cap:
        raise InputError(f"Tree enumeration capped at {cap}, got N={h.truncation}")
    cache: dict[RootedTree, TruncatedSeries] = {}
    result = _one(h)
    for tree in trees_up_to(h.truncation):
        weight = Fraction(1, tree_factorial(tree) * symmetry_factor(tree))
        result = result + _tree_image(tree, h, cache).scale(weight)
    return result


def _identity(name: str, lhs: TruncatedSeries, rhs: TruncatedSeries) -> IdentityResult:
    word = lhs.first_difference(rhs)
    return IdentityResult(
        name=name, passed=word is None, word=list(word) if word is not None else None
    )


def dictionary_check(moments: TruncatedSeries) -> list[IdentityResult]:
    """Check the moment/free/Boolean dictionary identities on M exactly."""
    require_g1(moments, "dictionary_check")
    one = _one(moments)
    inverse = shifted_inverse(moments)
    substituted = shifted_substitute(inverse, moments)
    kappa = free_from_moments(moments)
    return [
        _identity("inverse_from_free", inverse, cauchy_inv(one + kappa)),
        _identity("boolean_from_inverse", boolean_from_moments(moments), one - substituted),
        _identity("substituted_inverse", substituted, cauchy_inv(moments)),
    ]


def free_fixed_point_check(moments: TruncatedSeries) -> IdentityResult:
    """Φ = ε + κ ≺ Φ on words, with κ the free cumulant character of M."""
    phi = character_from_series(moments)
    kappa = infchar_from_series(free_from_moments(moments))
    rhs = counit(moments.alphabet, moments.truncation, moments.ring) + half_shuffle_left(kappa, phi)
    return _form_identity("free_fixed_point", phi, rhs)


def boolean_fixed_point_check(moments: TruncatedSeries) -> IdentityResult:
    """Φ = ε + Φ ≻ β on words, with β the Boolean cumulant character of M."""
    phi = character_from_series(moments)
    beta = infchar_from_series(boolean_from_moments(moments))
    rhs = counit(moments.alphabet, moments.truncation, moments.ring) + half_shuffle_right(phi, beta)
    return _form_identity("boolean_fixed_point", phi, rhs)


def _form_identity(name: str, phi: Form, rhs: LinearForm) -> IdentityResult:
    """Compare two forms on single words only."""
    tensor = rhs.restricted_difference(phi, max_factors=1)
    if tensor is None:
        return IdentityResult(name=name, passed=True)
    word = list(tensor[0]) if tensor else []
    return IdentityResult(name=name, passed=False, word=word)


def convert(kind: CumulantKind, direction: Direction, series: TruncatedSeries) -> TruncatedSeries:
    """Dispatch a moment/cumulant conversion."""
    kind, direction = CumulantKind(kind), Direction(direction)
    transform = kind.to_cumulants if direction == Direction.M2C else kind.to_moments
    logger.debug("convert", kind=kind.value, direction=direction.value)
    return transform(series)
