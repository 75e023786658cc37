"""Series and report loaders."""
import json
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any

import jsonlines
from pydantic import BaseModel

from ncps.errors import InputError
from ncps.schema import SeriesDocument, SeriesTerm, VerifyReport, raw_coefficient
from ncps.series import TruncatedSeries


def dump_json(model: BaseModel) -> str:
    """Canonical JSON text: two-space indent, trailing newline."""
    return json.dumps(model.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n"


class Loader(ABC):
    """Loader abstract class."""

    @classmethod
    @abstractmethod
    def load(cls, path: str | Path) -> Any:
        """Load from path."""

    @classmethod
    @abstractmethod
    def dump(cls, obj: Any, path: str | Path) -> None:
        """Write to path."""


class SeriesLoader(Loader):
    """SeriesDocument JSON ⇄ TruncatedSeries."""

    @classmethod
    def to_document(cls, series: TruncatedSeries) -> SeriesDocument:
        """Series to its canonical document."""
        ring = series.ring
        return SeriesDocument(
            alphabet=series.alphabet,
            truncation=series.truncation,
            ring=ring,
            constant=ring.to_json(series.constant),
            terms=[
                SeriesTerm(word=list(word), coeff=ring.to_json(coeff))
                for word, coeff in series.items()
                if word
            ],
        )

    @classmethod
    def from_document(cls, document: SeriesDocument) -> TruncatedSeries:
        """Document to series."""
        ring = document.ring
        terms = {
            tuple(term.word): ring.from_json(raw_coefficient(term.coeff))
            for term in document.terms
        }
        constant = ring.from_json(raw_coefficient(document.constant))
        return TruncatedSeries(document.alphabet, document.truncation, terms, constant, ring)

    @classmethod
    def loads(cls, text: str) -> TruncatedSeries:
        """Parse JSON text."""
        return cls.from_document(SeriesDocument.model_validate_json(text))

    @classmethod
    def dumps(cls, series: TruncatedSeries) -> str:
        """Canonical JSON text."""
        return dump_json(cls.to_document(series))

    @classmethod
    def load(cls, path: str | Path) -> TruncatedSeries:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise InputError(f"{path} is not UTF-8 text: {e.reason} at byte {e.start}") from e
        return cls.loads(text)

    @classmethod
    def dump(cls, series: TruncatedSeries, path: str | Path) -> None:
        Path(path).write_text(cls.dumps(series), encoding="utf-8", newline="\n")


class ReportLoader(Loader):
    """Verify report as JSON plus a per-suite JSON-lines dump."""

    @classmethod
    def paths(cls, output_dir: str | Path, seed: int) -> tuple[Path, Path]:
        """Report and suite dump paths for a seed."""
        output_dir = Path(output_dir)
        return output_dir / f"verify_{seed}.json", output_dir / f"verify_{seed}_suites.jsonl"

    @classmethod
    def load(cls, path: str | Path) -> VerifyReport:
        return VerifyReport.model_validate_json(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def dump(cls, report: VerifyReport, path: str | Path) -> None:
        """Write the report into the directory `path`."""
        Path(path).mkdir(parents=True, exist_ok=True)
        report_path, suites_path = cls.paths(path, report.seed)
        report_path.write_text(dump_json(report), encoding="utf-8", newline="\n")
        with jsonlines.open(suites_path, mode="w") as writer:
            for result in report.suites:
                writer.write(result.model_dump(mode="json"))
