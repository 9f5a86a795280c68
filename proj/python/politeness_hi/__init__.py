"""Hindi politeness classification toolkit.

Four-way politeness labeling (Neutral / Appropriate / Polite / Impolite)
built on Devanagari-aware text processing, rule-based detectors for eight
conventionalized politeness structures, and a sparse linear SVM. The heavy
lifting lives in the compiled ``_core`` extension; this package just
re-exports its surface.
"""

from politeness_hi._core import (
    DEFAULT_SEED,
    LABELS,
    STRUCTURE_CODES,
    Classifier,
    DataError,
    UsageError,
    agreement,
    ngrams,
    normalize,
    split_assign,
    stable_hash,
    structure_counts,
    structure_matches,
    tokenize,
)

__version__ = "1.0.0"

__all__ = [
    "DEFAULT_SEED",
    "LABELS",
    "STRUCTURE_CODES",
    "Classifier",
    "DataError",
    "UsageError",
    "agreement",
    "ngrams",
    "normalize",
    "split_assign",
    "stable_hash",
    "structure_counts",
    "structure_matches",
    "tokenize",
    "__version__",
]
