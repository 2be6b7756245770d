"""
Stream Files - line-delimited JSON streams and verdict files

Stream records: ``{"id": str, "ts": int, "text": str, "label": str?}``, unknown
fields ignored. Verdict records: ``{"id", "prediction", "is_novel",
"novelty_score", "nearest_id", "is_empty"}`` where ``prediction`` is ``"0"`` for
a new event and otherwise the id of the nearest earlier document.
"""

from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from firststory.core.exceptions import StreamOrderError, StreamParseError
from firststory.core.logging import get_logger
from firststory.models.detection import Verdict
from firststory.models.document import Document

logger = get_logger(__name__)

PathLike = Union[str, Path]


class VerdictRecord(BaseModel):
    """On-disk form of a :class:`Verdict`."""

    model_config = ConfigDict(extra="ignore")

    id: str
    prediction: str
    is_novel: bool
    novelty_score: float
    nearest_id: Optional[str] = None
    is_empty: bool = False

    @classmethod
    def from_verdict(cls, verdict: Verdict) -> "VerdictRecord":
        return cls(
            id=verdict.doc_id,
            prediction=verdict.prediction,
            is_novel=verdict.is_novel,
            novelty_score=verdict.novelty_score,
            nearest_id=verdict.nearest_id,
            is_empty=verdict.is_empty,
        )

    def to_verdict(self) -> Verdict:
        return Verdict(
            doc_id=self.id,
            is_novel=self.is_novel,
            nearest_id=self.nearest_id,
            novelty_score=self.novelty_score,
            is_empty=self.is_empty,
        )


def _first_error(exc: ValidationError) -> str:
    error = exc.errors()[0]
    location = ".".join(str(part) for part in error.get("loc", ())) or "record"
    return f"{location}: {error.get('msg', 'invalid')}"


def _numbered_lines(path: PathLike) -> Iterator[Tuple[int, str]]:
    """Yield non-blank lines with their 1-based numbers, decoded as UTF-8."""
    with open(path, "rb") as handle:
        for line_number, raw in enumerate(handle, start=1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise StreamParseError(path, line_number, f"invalid UTF-8 at byte {exc.start}") from exc
            if line.strip():
                yield line_number, line


def read_stream(path: PathLike) -> List[Document]:
    """Read a stream file, validating records, id uniqueness and timestamp order."""
    docs: List[Document] = []
    seen: set[str] = set()
    previous_ts: Optional[int] = None

    for line_number, line in _numbered_lines(path):
        try:
            doc = Document.model_validate_json(line)
        except ValidationError as exc:
            raise StreamParseError(path, line_number, _first_error(exc)) from exc
        if doc.id in seen:
            raise StreamParseError(path, line_number, f"duplicate document id {doc.id!r}")
        if previous_ts is not None and doc.ts < previous_ts:
            raise StreamOrderError(path, line_number, doc.ts, previous_ts)
        seen.add(doc.id)
        previous_ts = doc.ts
        docs.append(doc)

    logger.info("Stream loaded", path=str(path), documents=len(docs))
    return docs


def write_stream(path: PathLike, docs: Iterable[Document]) -> int:
    """Write documents one JSON object per line; returns the record count."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for doc in docs:
            handle.write(doc.model_dump_json(exclude_none=True))
            handle.write("\n")
            count += 1
    return count


def write_verdicts(path: PathLike, verdicts: Iterable[Verdict]) -> int:
    """Write verdicts one JSON object per line, in stream order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for verdict in verdicts:
            handle.write(VerdictRecord.from_verdict(verdict).model_dump_json())
            handle.write("\n")
            count += 1
    logger.info("Verdicts written", path=str(path), verdicts=count)
    return count


def read_verdicts(path: PathLike) -> List[Verdict]:
    """Read a verdict file written by :func:`write_verdicts`."""
    verdicts: List[Verdict] = []
    for line_number, line in _numbered_lines(path):
        try:
            verdicts.append(VerdictRecord.model_validate_json(line).to_verdict())
        except ValidationError as exc:
            raise StreamParseError(path, line_number, _first_error(exc)) from exc
    return verdicts
