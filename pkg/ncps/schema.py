"""Document and report schemas."""
from typing import Annotated, Any

from pydantic import BaseModel, Field, PositiveInt, StrictInt, model_validator

from ncps.coefficients import CoefficientRing
from ncps.combinatorics import NC_CAP, TREE_CAP, check_word

# Rational string, or [[rational, exponent], ...] for ℚ[t].
CoefficientJSON = str | list[tuple[str, StrictInt]]
# Document integers are never coerced from strings or floats.
StrictPositiveInt = Annotated[StrictInt, Field(gt=0)]


def raw_coefficient(value: CoefficientJSON) -> Any:
    """Plain JSON shape of a coefficient, as the rings parse it."""
    if isinstance(value, list):
        return [list(pair) for pair in value]
    return value


class SeriesTerm(BaseModel):
    """One non-zero term of a series."""

    word: list[StrictInt]
    coeff: CoefficientJSON


class SeriesDocument(BaseModel):
    """Serialized truncated series.

    Terms are sorted by (length, lexicographic) with no repeats and no zero
    coefficients, so printing a parsed document reproduces it exactly.
    """

    alphabet: StrictPositiveInt
    truncation: StrictPositiveInt
    ring: CoefficientRing = CoefficientRing.RATIONAL
    constant: CoefficientJSON = "0"
    terms: list[SeriesTerm] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_canonical(self) -> "SeriesDocument":
        """Reject non-canonical documents."""
        self.ring.from_json(raw_coefficient(self.constant))
        previous: tuple[int, tuple[int, ...]] | None = None
        for term in self.terms:
            word = check_word(term.word, self.alphabet)
            if not word or len(word) > self.truncation:
                raise ValueError(f"Term word {term.word} outside lengths 1..{self.truncation}")
            key = (len(word), word)
            if previous is not None and key <= previous:
                raise ValueError(f"Terms not in canonical order at {term.word}")
            previous = key
            if not self.ring.from_json(raw_coefficient(term.coeff)):
                raise ValueError(f"Zero coefficient stored for {term.word}")
        return self


class IdentityResult(BaseModel):
    """Outcome of one exact identity check."""

    name: str
    passed: bool
    # First differing word on failure
    word: list[int] | None = None


class VerifyConfig(BaseModel):
    """Verification harness parameters."""

    alphabet: PositiveInt = 2
    degree: PositiveInt = 4
    trials: PositiveInt = 50
    seed: int = Field(default=42, ge=0)
    suites: list[str] | None = None
    nc_cap: PositiveInt = NC_CAP
    tree_cap: PositiveInt = TREE_CAP


class Counterexample(BaseModel):
    """Inputs and location of a failed property."""

    detail: str
    trial: int
    word: list[int] | None = None
    tensor: list[list[int]] | None = None
    inputs: list[SeriesDocument] = Field(default_factory=list)


class SuiteResult(BaseModel):
    """Result of one property suite."""

    name: str
    trials: int
    passed: bool
    counterexample: Counterexample | None = None


class VerifyReport(BaseModel):
    """Deterministic report of a verification run."""

    seed: int
    trials: int
    alphabet: int
    degree: int
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        """All suites passed."""
        return all(result.passed for result in self.suites)

    @property
    def failures(self) -> list[SuiteResult]:
        """Failed suites in run order."""
        return [result for result in self.suites if not result.passed]
