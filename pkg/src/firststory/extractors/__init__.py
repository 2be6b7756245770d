"""Document stream sources."""

from firststory.extractors.synthetic_stream import SyntheticStreamGenerator, generate_synthetic, word_for

__all__ = ["SyntheticStreamGenerator", "generate_synthetic", "word_for"]
