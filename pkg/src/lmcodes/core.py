"""Domain types, the two distances, and pairwise code-validity criteria.

Words are plain tuples of ints. A :class:`Codebook` stores its words sorted
lexicographically so that two codebooks with the same content compare equal
and serialize identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

Word = tuple[int, ...]

MAX_Q = 2**16


class DecodeFailure(ValueError):
    """The received word is not explained by any error inside the channel model."""


class OutOfAlphabet(ValueError):
    """An error pattern pushed a symbol outside [0, q-1]."""


class ResourceCapExceeded(RuntimeError):
    """A computation was refused because it exceeds a configured size cap."""


class Mode(str, Enum):
    AEC = "aec"
    UEC = "uec"
    UED = "ued"


@dataclass(frozen=True)
class CodeParams:
    """Alphabet size ``q``, error level ``ell`` and code length ``n``."""

    q: int
    ell: int
    n: int

    def __post_init__(self) -> None:
        if not 2 <= self.q <= MAX_Q:
            raise ValueError(f"q must lie in [2, {MAX_Q}], got {self.q}")
        if not 1 <= self.ell <= self.q - 2:
            raise ValueError(f"ell must lie in [1, q-2] = [1, {self.q - 2}], got {self.ell}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")

    @property
    def b(self) -> int:
        """Number of multiples of ell+1 in [0, q-1], i.e. ceil(q / (ell+1))."""
        return -(-self.q // (self.ell + 1))

    def with_length(self, n: int) -> CodeParams:
        return CodeParams(self.q, self.ell, n)


def check_word(word: Sequence[int], params: CodeParams) -> Word:
    """Return ``word`` as a tuple, raising ``ValueError`` if it is malformed."""
    w = tuple(int(s) for s in word)
    if len(w) != params.n:
        raise ValueError(f"word {w} has length {len(w)}, expected {params.n}")
    for s in w:
        if not 0 <= s < params.q:
            raise ValueError(f"symbol {s} of {w} outside [0, {params.q - 1}]")
    return w


def _same_length(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")


def dmax(x: Sequence[int], y: Sequence[int]) -> int:
    """Largest absolute coordinate difference."""
    _same_length(x, y)
    return max((abs(a - b) for a, b in zip(x, y)), default=0)


def comparable(x: Sequence[int], y: Sequence[int]) -> bool:
    """True iff one word dominates the other in every coordinate."""
    _same_length(x, y)
    return all(a >= b for a, b in zip(x, y)) or all(a <= b for a, b in zip(x, y))


def du(x: Sequence[int], y: Sequence[int]) -> int:
    """Unidirectional distance: dmax for comparable pairs, twice dmax otherwise.

    Not a metric; the triangle inequality fails, e.g. for (0,2), (1,0), (1,2).
    """
    d = dmax(x, y)
    return d if comparable(x, y) else 2 * d


@dataclass(frozen=True)
class Codebook:
    params: CodeParams
    words: tuple[Word, ...]
    mode: Mode = Mode.UEC
    _index: frozenset = field(init=False, repr=False, compare=False)

    def __init__(self, params: CodeParams, words: Iterable[Sequence[int]], mode: Mode | str = Mode.UEC):
        checked = [check_word(w, params) for w in words]
        unique = sorted(set(checked))
        if len(unique) != len(checked):
            raise ValueError("codebook words must be distinct")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "words", tuple(unique))
        object.__setattr__(self, "mode", Mode(mode))
        object.__setattr__(self, "_index", frozenset(unique))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, word) -> bool:
        return tuple(word) in self._index

    def is_valid(self) -> bool:
        """Check the pairwise criterion belonging to the declared mode."""
        return {Mode.AEC: is_aec, Mode.UEC: is_uec, Mode.UED: is_ued}[self.mode](self)


def is_aec(c: Codebook) -> bool:
    need = c.params.ell + 1
    return all(dmax(x, y) >= need for x, y in combinations(c.words, 2))


def is_uec(c: Codebook) -> bool:
    need = 2 * c.params.ell + 1
    return all(du(x, y) >= need for x, y in combinations(c.words, 2))


def is_ued(c: Codebook) -> bool:
    need = c.params.ell + 1
    return all(
        not comparable(x, y) or dmax(x, y) >= need for x, y in combinations(c.words, 2)
    )
