"""Text transformers for FirstStory."""

from firststory.transformers.text_preprocessor import (
    TextPreprocessor,
    load_stopwords,
    preprocess,
    remove_stopwords,
    stem,
    tokenize,
)

__all__ = [
    "TextPreprocessor",
    "load_stopwords",
    "preprocess",
    "remove_stopwords",
    "stem",
    "tokenize",
]
