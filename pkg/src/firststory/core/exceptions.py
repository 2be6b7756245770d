"""Error types raised by the FirstStory engines and file readers."""

from pathlib import Path
from typing import Optional, Union


class FirstStoryError(Exception):
    """Base class for every data-level error; the CLI maps it to exit code 2."""


class UnknownTermError(FirstStoryError, KeyError):
    """A term was weighted before any document containing it was absorbed."""

    def __init__(self, term: Union[int, str]):
        super().__init__(term)
        self.term = term

    def __str__(self) -> str:
        return f"term {self.term!r} has document frequency 0; absorb before weighting"


class DegenerateParamsError(FirstStoryError, ValueError):
    """An LSH parameter combination cannot produce a usable table count."""


class DuplicateDocumentError(FirstStoryError, ValueError):
    """A document id was seen twice in one stream or index."""

    def __init__(self, doc_id: str):
        super().__init__(f"duplicate document id: {doc_id!r}")
        self.doc_id = doc_id


class DegenerateTruthError(FirstStoryError, ValueError):
    """Miss or false-alarm rate is undefined because a truth class is empty."""


class StreamParseError(FirstStoryError, ValueError):
    """A stream or verdict file record could not be parsed."""

    def __init__(self, path: Union[str, Path], line: int, reason: str):
        super().__init__(f"{path}:{line}: {reason}")
        self.path = Path(path)
        self.line = line
        self.reason = reason


class StreamOrderError(StreamParseError):
    """Timestamps decreased between consecutive stream records."""

    def __init__(self, path: Union[str, Path], line: int, ts: int, previous_ts: Optional[int]):
        super().__init__(path, line, f"timestamp {ts} is earlier than previous {previous_ts}")
        self.ts = ts
        self.previous_ts = previous_ts
