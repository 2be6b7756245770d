"""
FirstStory - streaming first story detection over document streams.

This package provides:
1. Text preprocessing (tokenize, stop, stem) into term-frequency bags
2. An incrementally updated TF-IDF vector space model
3. A random-hyperplane LSH index for candidate retrieval
4. The streaming novelty detector and an exhaustive-scan oracle
5. Detection-cost evaluation and DET curves
6. A synthetic labelled stream generator and a command-line front end
"""

__version__ = "0.1.0"

from firststory.core.config import Settings
from firststory.core.logging import get_logger

__all__ = [
    "Settings",
    "get_logger",
    "__version__",
]
