"""Shared fixtures for the FirstStory test suite."""

import json
import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional

import pytest
import structlog

from firststory.models.detection import DetectorConfig, LshParams, WeightingMode
from firststory.models.document import Document
from firststory.transformers.text_preprocessor import load_stopwords

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def reset_logging():
    """CLI tests reconfigure logging against a temporary stderr; undo that after each test."""
    yield
    structlog.reset_defaults()
    for handler in logging.root.handlers[:]:
        logging.root.removeHandler(handler)


@pytest.fixture(scope="session")
def stoplist() -> frozenset[str]:
    return load_stopwords()


@pytest.fixture
def make_doc() -> Callable[..., Document]:
    counter = {"ts": 1_000}

    def _make(doc_id: str, text: str, label: Optional[str] = None) -> Document:
        counter["ts"] += 1
        return Document(id=doc_id, ts=counter["ts"], text=text, label=label)

    return _make


@pytest.fixture
def news_docs(make_doc) -> List[Document]:
    """Two events, each reported once and followed up."""
    return [
        make_doc("d1", "Earthquake strikes the coastal city of Valparaiso overnight", "d1"),
        make_doc("d2", "Central bank raises interest rates by half a point", "d2"),
        make_doc("d3", "Strong earthquake strikes coastal Valparaiso, buildings damaged", "d1"),
        make_doc("d4", "Interest rates raised by the central bank again", "d2"),
        make_doc("d5", "Volcano erupts near remote island village", "d5"),
    ]


@pytest.fixture
def news_config() -> DetectorConfig:
    """Incremental detector seeded with the first two news documents.

    Single-bit signatures in 64 tables make every earlier document with a
    positive cosine a candidate for all practical purposes.
    """
    return DetectorConfig(
        threshold=0.8,
        lsh=LshParams(bits=1, tables=64, seed=7),
        weighting_mode=WeightingMode.INCREMENTAL,
        train_prefix=2,
    )


def write_jsonl(path: Path, records: List[Dict]) -> Path:
    path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
    return path


@pytest.fixture
def stream_file(tmp_path, news_docs) -> Path:
    return write_jsonl(
        tmp_path / "stream.jsonl",
        [doc.model_dump(exclude_none=True) for doc in news_docs],
    )
