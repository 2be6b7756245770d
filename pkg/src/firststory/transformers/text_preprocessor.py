"""
Text Preprocessor - turns raw document text into stemmed token bags

Tokenizes into lowercase alphanumeric runs, removes stopwords and replaces
the remaining tokens by their Porter stems. All functions are pure and safe
to call from any number of threads.
"""

import re
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import AbstractSet, Iterable, List, Optional, Sequence, Union

from nltk.stem.porter import PorterStemmer

from firststory.models.document import TokenBag

_TOKEN_PATTERN = re.compile(r"[^\W_]+")
_MIN_TOKEN_LENGTH = 2

# Original 1980 rules, without the NLTK or Martin extensions.
_stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


def tokenize(text: str) -> List[str]:
    """Split text into lowercase alphanumeric runs.

    Runs shorter than two characters and purely numeric runs are dropped.
    """
    tokens = []
    for match in _TOKEN_PATTERN.finditer(text):
        token = match.group().lower()
        if len(token) < _MIN_TOKEN_LENGTH or token.isnumeric():
            continue
        tokens.append(token)
    return tokens


def remove_stopwords(tokens: Sequence[str], stoplist: AbstractSet[str]) -> List[str]:
    """Drop stoplist members, preserving order."""
    return [token for token in tokens if token not in stoplist]


@lru_cache(maxsize=1 << 16)
def stem(token: str) -> str:
    """Porter stem of a lowercase ASCII word; other tokens pass through unchanged."""
    if not (token.isascii() and token.isalpha()):
        return token
    return _stemmer.stem(token, to_lowercase=False)


def preprocess(text: str, stoplist: AbstractSet[str]) -> TokenBag:
    """Tokenize, remove stopwords and stem ``text`` into a bag of counts."""
    return TokenBag.from_tokens(stem(token) for token in remove_stopwords(tokenize(text), stoplist))


def parse_stopwords(lines: Iterable[str]) -> frozenset[str]:
    """Parse stopword file lines: one word per line, ``#`` comments and blanks ignored."""
    words = set()
    for line in lines:
        word = line.strip()
        if not word or word.startswith("#"):
            continue
        words.add(word.lower())
    return frozenset(words)


@lru_cache(maxsize=1)
def _default_stopwords() -> frozenset[str]:
    text = resources.files("firststory.transformers").joinpath("stopwords.txt").read_text(encoding="utf-8")
    return parse_stopwords(text.splitlines())


def load_stopwords(path: Optional[Union[str, Path]] = None) -> frozenset[str]:
    """Load a stopword list from ``path``, or the packaged English list."""
    if path is None:
        return _default_stopwords()
    with open(path, encoding="utf-8") as handle:
        return parse_stopwords(handle)


class TextPreprocessor:
    """Preprocessing pipeline bound to one stoplist."""

    def __init__(self, stoplist: Optional[AbstractSet[str]] = None):
        self.stoplist: AbstractSet[str] = load_stopwords() if stoplist is None else stoplist

    def __call__(self, text: str) -> TokenBag:
        return preprocess(text, self.stoplist)

    @classmethod
    def from_file(cls, path: Optional[Union[str, Path]]) -> "TextPreprocessor":
        return cls(load_stopwords(path))
