"""Stream documents and their token bags."""

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

# Prediction and label marker meaning "first story of a new event".
NEW_STORY_MARKER = "0"


class Document(BaseModel):
    """A raw stream item."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    id: str = Field(min_length=1)
    ts: int
    text: str
    label: Optional[str] = None

    @field_validator("id")
    @classmethod
    def validate_id(cls, v: str) -> str:
        """Reserve the new-story marker so predictions stay unambiguous."""
        if v == NEW_STORY_MARKER:
            raise ValueError(f"document id {NEW_STORY_MARKER!r} is reserved")
        return v

    @property
    def is_labeled(self) -> bool:
        return self.label is not None

    @property
    def is_first_story(self) -> bool:
        """Ground truth: the label names the document itself or the new-story marker."""
        return self.label == self.id or self.label == NEW_STORY_MARKER


@dataclass(frozen=True)
class TokenBag:
    """Stemmed, stopword-free token counts of one document."""

    counts: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "TokenBag":
        return cls(dict(Counter(tokens)))

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self) -> Iterator[str]:
        return iter(self.counts)

    def __contains__(self, term: object) -> bool:
        return term in self.counts

    def __getitem__(self, term: str) -> int:
        return self.counts[term]

    def items(self) -> Iterable[tuple[str, int]]:
        return self.counts.items()
