"""Optimal codes against all asymmetric errors of level ell.

The code is the full grid of multiples of ell+1; it has ceil(q/(ell+1))^n
words, which is the largest possible, and decodes by rounding each received
symbol down to a multiple of ell+1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .core import Codebook, CodeParams, Mode, Word, check_word


def capacity(params: CodeParams) -> int:
    return params.b**params.n


def encode(message: Sequence[int], params: CodeParams) -> Word:
    if len(message) != params.n:
        raise ValueError(f"message length {len(message)} != n={params.n}")
    for d in message:
        if not 0 <= d < params.b:
            raise ValueError(f"digit {d} outside [0, {params.b - 1}]")
    return tuple(int(d) * (params.ell + 1) for d in message)


def decode(y: Sequence[int], params: CodeParams) -> Word:
    y = check_word(y, params)
    step = params.ell + 1
    return tuple(s - s % step for s in y)


@dataclass(frozen=True)
class AecCode:
    params: CodeParams

    @property
    def b(self) -> int:
        return self.params.b

    def __len__(self) -> int:
        return capacity(self.params)

    def words(self) -> Iterator[Word]:
        """Codewords in lexicographic order, generated lazily."""
        symbols = range(0, self.params.q, self.params.ell + 1)
        return product(symbols, repeat=self.params.n)

    def encode(self, message: Sequence[int]) -> Word:
        return encode(message, self.params)

    def decode(self, y: Sequence[int]) -> Word:
        return decode(y, self.params)

    def codebook(self) -> Codebook:
        return Codebook(self.params, self.words(), Mode.AEC)


def build(params: CodeParams) -> Codebook:
    return AecCode(params).codebook()
