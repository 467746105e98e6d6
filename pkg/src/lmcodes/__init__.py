"""Codes for asymmetric and unidirectional errors of limited magnitude."""

from .core import (
    Codebook,
    CodeParams,
    DecodeFailure,
    Mode,
    OutOfAlphabet,
    ResourceCapExceeded,
    Word,
    comparable,
    dmax,
    du,
    is_aec,
    is_ued,
    is_uec,
)

__version__ = "0.1.0"

__all__ = [
    "Codebook",
    "CodeParams",
    "DecodeFailure",
    "Mode",
    "OutOfAlphabet",
    "ResourceCapExceeded",
    "Word",
    "comparable",
    "dmax",
    "du",
    "is_aec",
    "is_ued",
    "is_uec",
]
