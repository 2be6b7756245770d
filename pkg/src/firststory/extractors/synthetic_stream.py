"""
Synthetic Stream Extractor - labelled document streams with planted events

Stands in for an annotated news corpus. The stream holds ``n_events`` first
stories; every other document is a noisy copy of an earlier document of an
already reported event and is labelled with that event's first-story id.

Words are pronounceable consonant-vowel strings ending in "n" (``"baban"``
style), which the tokenizer keeps whole and the Porter stemmer leaves alone,
so every generated word is exactly one vocabulary term.

Token model:
- base vocabulary of ``vocab_size`` words split into categories of
  ``category_size`` consecutive words
- each event picks a category and ``event_terms`` fresh words
- a first-story token is a category word (Zipf), an event word (uniform) or
  a background word (Zipf over the base vocabulary)
- a redundant document copies an earlier document of its event and re-draws
  each token from the event mixture with probability ``duplicate_noise``
- every token of every document is swapped for a brand-new word with
  probability ``drift_rate``
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np

from firststory.core.logging import LoggerMixin
from firststory.models.document import Document
from firststory.models.synthetic import SynthConfig

_CONSONANTS = "bdfgklmnprstvz"
_VOWELS = "aeiou"
_SYLLABLES = [c + v for c in _CONSONANTS for v in _VOWELS]

# Token source mixture for event text: category, event, background.
_MIXTURE = np.array([0.40, 0.35, 0.25])


def word_for(index: int) -> str:
    """Injective index -> word mapping; at least two syllables plus a final "n"."""
    if index < 0:
        raise ValueError(f"word index must be non-negative, got {index}")
    base = len(_SYLLABLES)
    digits = []
    while index:
        index, digit = divmod(index, base)
        digits.append(digit)
    while len(digits) < 2:
        digits.append(0)
    return "".join(_SYLLABLES[d] for d in reversed(digits)) + "n"


def _zipf(n: int) -> np.ndarray:
    weights = 1.0 / np.arange(1, n + 1, dtype=np.float64)
    return weights / weights.sum()


@dataclass
class _Event:
    category: int
    words: List[int]
    first_story_id: str
    docs: List[List[int]] = field(default_factory=list)


class SyntheticStreamGenerator(LoggerMixin):
    """Deterministic (per seed) generator of labelled streams."""

    def __init__(self, config: SynthConfig):
        self.config = config
        self.rng = np.random.default_rng(config.seed)
        self.n_categories = config.vocab_size // config.category_size
        self._category_p = _zipf(config.category_size)
        self._background_p = _zipf(config.vocab_size)
        self._next_fresh = config.vocab_size

    def _fresh(self) -> int:
        word = self._next_fresh
        self._next_fresh += 1
        return word

    def _first_story_positions(self) -> set[int]:
        cfg = self.config
        if cfg.n_events == 1:
            return {0}
        rest = self.rng.choice(np.arange(1, cfg.n_docs), size=cfg.n_events - 1, replace=False)
        return {0, *(int(p) for p in rest)}

    def _event_token(self, event: _Event) -> int:
        source = self.rng.choice(3, p=_MIXTURE)
        if source == 0:
            offset = int(self.rng.choice(self.config.category_size, p=self._category_p))
            return event.category * self.config.category_size + offset
        if source == 1:
            return event.words[int(self.rng.integers(len(event.words)))]
        return int(self.rng.choice(self.config.vocab_size, p=self._background_p))

    def _drift(self, tokens: List[int]) -> List[int]:
        if self.config.drift_rate == 0.0:
            return tokens
        swap = self.rng.random(len(tokens)) < self.config.drift_rate
        return [self._fresh() if s else t for t, s in zip(tokens, swap)]

    def _new_event(self, doc_id: str) -> _Event:
        event = _Event(
            category=int(self.rng.integers(self.n_categories)),
            words=[self._fresh() for _ in range(self.config.event_terms)],
            first_story_id=doc_id,
        )
        tokens = [self._event_token(event) for _ in range(self.config.doc_length)]
        event.docs.append(self._drift(tokens))
        return event

    def _follow_up(self, event: _Event) -> List[int]:
        source = event.docs[int(self.rng.integers(len(event.docs)))]
        redraw = self.rng.random(len(source)) < self.config.duplicate_noise
        tokens = [self._event_token(event) if r else t for t, r in zip(source, redraw)]
        tokens = self._drift(tokens)
        event.docs.append(tokens)
        return tokens

    def generate(self) -> List[Document]:
        cfg = self.config
        first_stories = self._first_story_positions()
        events: List[_Event] = []
        docs: List[Document] = []

        for position in range(cfg.n_docs):
            doc_id = f"doc-{position + 1:06d}"
            if position in first_stories:
                event = self._new_event(doc_id)
                events.append(event)
                tokens = event.docs[-1]
            else:
                event = events[int(self.rng.integers(len(events)))]
                tokens = self._follow_up(event)

            docs.append(
                Document(
                    id=doc_id,
                    ts=cfg.start_ts + position * cfg.ts_step,
                    text=" ".join(word_for(t) for t in tokens),
                    label=event.first_story_id,
                )
            )

        self.logger.info(
            "Synthetic stream generated",
            documents=len(docs),
            events=len(events),
            vocabulary_used=self._next_fresh,
            seed=cfg.seed,
        )
        return docs


def generate_synthetic(config: SynthConfig) -> List[Document]:
    """Generate a labelled stream; identical configs give identical streams."""
    return SyntheticStreamGenerator(config).generate()
