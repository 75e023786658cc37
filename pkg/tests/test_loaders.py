"""Document and report loader tests."""
import json
from fractions import Fraction

import jsonlines
import pytest
from pydantic import ValidationError

from ncps.coefficients import CoefficientRing, t_power
from ncps.loaders import ReportLoader, SeriesLoader
from ncps.schema import Counterexample, SuiteResult, VerifyReport
from ncps.series import TruncatedSeries, flow


def document(**overrides) -> str:
    base = {
        "alphabet": 2,
        "truncation": 2,
        "ring": "rational",
        "constant": "1",
        "terms": [{"word": [1], "coeff": "1/2"}, {"word": [2, 1], "coeff": "-3"}],
    }
    base.update(overrides)
    return json.dumps(base)


def test_series_roundtrip() -> None:
    """Test parse and print are canonical."""
    series = SeriesLoader.loads(document())
    assert series == TruncatedSeries(2, 2, {(1,): Fraction(1, 2), (2, 1): -3}, constant=1)
    text = SeriesLoader.dumps(series)
    assert text.endswith("}\n")
    assert json.loads(text) == json.loads(document())
    assert SeriesLoader.dumps(SeriesLoader.loads(text)) == text


def test_zero_series() -> None:
    """Test the empty document."""
    zero = TruncatedSeries.zero(1, 3)
    assert json.loads(SeriesLoader.dumps(zero)) == {
        "alphabet": 1,
        "truncation": 3,
        "ring": "rational",
        "constant": "0",
        "terms": [],
    }


@pytest.mark.parametrize(
    "overrides",
    [
        {"alphabet": 0},
        {"truncation": 1},
        {"constant": "2/4"},
        {"constant": "0.5"},
        {"terms": [{"word": [2, 1], "coeff": "1"}, {"word": [1], "coeff": "1"}]},
        {"terms": [{"word": [1], "coeff": "1"}, {"word": [1], "coeff": "2"}]},
        {"terms": [{"word": [1], "coeff": "0"}]},
        {"terms": [{"word": [3], "coeff": "1"}]},
        {"terms": [{"word": [], "coeff": "1"}]},
        {"terms": [{"word": [1], "coeff": "1/0"}]},
        {"ring": "integer"},
        {"alphabet": "2"},
        {"truncation": 2.0},
        {"terms": [{"word": ["1"], "coeff": "1"}]},
        {"ring": "rational_poly_t", "constant": [["1", "0"]], "terms": []},
    ],
)
def test_rejects(overrides) -> None:
    """Test malformed or non-canonical documents are rejected."""
    with pytest.raises(ValidationError):
        SeriesLoader.loads(document(**overrides))


def test_poly_document(tmp_path) -> None:
    """Test ℚ[t] documents round-trip through files."""
    moments = flow(TruncatedSeries(1, 2, {(1,): 1, (1, 1): 2}))
    path = tmp_path / "flow.json"
    SeriesLoader.dump(moments, path)
    raw = json.loads(path.read_text(encoding="utf-8"))
    assert raw["ring"] == CoefficientRing.RATIONAL_POLY_T.value
    assert raw["constant"] == [["1", 0]]
    assert raw["terms"] == [
        {"word": [1], "coeff": [["1", 1]]},
        {"word": [1, 1], "coeff": [["2", 1], ["1", 2]]},
    ]
    loaded = SeriesLoader.load(path)
    assert loaded == moments
    assert loaded.coefficient((1, 1)) == t_power(1, 2) + t_power(2, 1)


def test_poly_rejects() -> None:
    """Test polynomial coefficients must be increasing non-zero pairs."""
    for coeff in ([["1", 1], ["1", 1]], [["0", 1]], "1", [["1", -1]]):
        with pytest.raises(ValidationError):
            SeriesLoader.loads(
                document(ring="rational_poly_t", constant=[], terms=[{"word": [1], "coeff": coeff}])
            )


def test_report_files(tmp_path) -> None:
    """Test the JSON report and the per-suite dump."""
    failure = Counterexample(detail="x ≠ y", trial=2, word=[1, 2])
    report = VerifyReport(
        seed=7,
        trials=3,
        alphabet=2,
        degree=3,
        suites=[
            SuiteResult(name="exp_log", trials=3, passed=True),
            SuiteResult(name="bch", trials=3, passed=False, counterexample=failure),
        ],
    )
    ReportLoader.dump(report, tmp_path / "out")
    report_path, suites_path = ReportLoader.paths(tmp_path / "out", 7)
    assert report_path.name == "verify_7.json"
    loaded = ReportLoader.load(report_path)
    assert loaded == report
    assert not loaded.passed
    assert [r.name for r in loaded.failures] == ["bch"]
    with jsonlines.open(suites_path) as reader:
        rows = list(reader)
    assert [row["name"] for row in rows] == ["exp_log", "bch"]
    assert rows[1]["counterexample"]["word"] == [1, 2]
