"""Generic constructions of codes correcting all unidirectional level-ell errors.

All three start from the grid of multiples of ell+1 (minimum dmax ell+1) and
then make every pair of codewords incomparable:

* ``ConstantSumCode``: keep the words whose scaled coordinate sum is ``j``.
* ``TailCode``: keep the words whose sum lies in a window around its mean and
  append a tail that reverses the order of the sum.
* ``TwoLevelCode``: {0, 2ell+1}^n, optimal for q = 2ell+2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Iterator, Sequence

from .channel import ChannelMode, reachable
from .core import Codebook, CodeParams, DecodeFailure, Mode, Word, check_word


def jstar(params: CodeParams) -> int:
    return params.n * (params.b - 1) // 2


def constant_sum_counts(params: CodeParams) -> list[int]:
    """Coefficients of (1 + x + ... + x^(b-1))^n, indexed by the sum."""
    b = params.b
    counts = [1]
    for _ in range(params.n):
        nxt = [0] * (len(counts) + b - 1)
        # running window sum of width b
        window = 0
        for k in range(len(nxt)):
            if k < len(counts):
                window += counts[k]
            if k - b >= 0:
                window -= counts[k - b]
            nxt[k] = window
        counts = nxt
    return counts


def count_constant_sum(params: CodeParams, j: int) -> int:
    counts = constant_sum_counts(params)
    return counts[j] if 0 <= j < len(counts) else 0


def _compositions(total: int, parts: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Tuples of ``parts`` integers in [0, cap] summing to ``total``, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    lo = max(0, total - cap * (parts - 1))
    for first in range(lo, min(cap, total) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def _round_down(y: Word, step: int) -> Word:
    return tuple(s - s % step for s in y)


def _round_up(y: Word, step: int) -> Word:
    return tuple(s + (-s) % step for s in y)


@dataclass(frozen=True)
class ConstantSumCode:
    params: CodeParams
    j: int

    def words(self) -> Iterator[Word]:
        step = self.params.ell + 1
        for comp in _compositions(self.j, self.params.n, self.params.b - 1):
            yield tuple(c * step for c in comp)

    def codebook(self) -> Codebook:
        return Codebook(self.params, self.words(), Mode.UEC)

    def _member(self, x: Word) -> bool:
        step = self.params.ell + 1
        return all(s < self.params.q for s in x) and sum(x) == self.j * step

    def decode(self, y: Sequence[int]) -> Word:
        y = check_word(y, self.params)
        step = self.params.ell + 1
        for cand in (_round_down(y, step), _round_up(y, step)):
            if self._member(cand):
                return cand
        raise DecodeFailure(f"{y} is not within one level-{self.params.ell} error of C({self.j})")


@dataclass(frozen=True)
class TwoLevelCode:
    params: CodeParams

    def __post_init__(self) -> None:
        if self.params.q < 2 * self.params.ell + 2:
            raise ValueError(f"two-level code needs q >= 2*ell+2, got q={self.params.q}")

    @property
    def top(self) -> int:
        return 2 * self.params.ell + 1

    def words(self) -> Iterator[Word]:
        return product((0, self.top), repeat=self.params.n)

    def codebook(self) -> Codebook:
        return Codebook(self.params, self.words(), Mode.UEC)

    def decode(self, y: Sequence[int]) -> Word:
        y = check_word(y, self.params)
        ell, top = self.params.ell, self.top
        # UP: each symbol came from the largest level at or below it.
        up = tuple(top if s >= top else 0 for s in y)
        if all(0 <= s - x <= ell for s, x in zip(y, up)):
            return up
        down = tuple(0 if s == 0 else top for s in y)
        if all(0 <= x - s <= ell for s, x in zip(y, down)):
            return down
        raise DecodeFailure(f"{y} is not within one level-{ell} error of {{0,{top}}}^{self.params.n}")


def _floor_add_sqrt(center: Fraction, radicand: Fraction) -> int:
    """floor(center + sqrt(radicand)) computed exactly."""
    s = int(center + Fraction(isqrt(int(radicand)))) - 2
    while True:
        d = s + 1 - center
        if d <= 0 or d * d <= radicand:
            s += 1
        else:
            return s


def _ceil_sub_sqrt(center: Fraction, radicand: Fraction) -> int:
    """ceil(center - sqrt(radicand)) computed exactly."""
    return -_floor_add_sqrt(-center, radicand)


@dataclass(frozen=True)
class TailCode:
    """Sum-window code with an order-reversing q-ary tail.

    ``params`` describes the data part of length n; codewords have length
    n + m where m is the tail length.
    """

    params: CodeParams

    @property
    def mean(self) -> Fraction:
        p = self.params
        return Fraction((p.ell + 1) * (p.b - 1), 2)

    @property
    def variance(self) -> Fraction:
        p = self.params
        return Fraction((p.ell + 1) ** 2 * (p.b**2 - 1), 12)

    @property
    def window(self) -> tuple[int, int]:
        """[ceil(n*mu - 2*sigma*sqrt(n)), floor(n*mu + 2*sigma*sqrt(n))]."""
        n = self.params.n
        center = n * self.mean
        radicand = 4 * n * self.variance
        return _ceil_sub_sqrt(center, radicand), _floor_add_sqrt(center, radicand)

    @property
    def m(self) -> int:
        s1, s2 = self.window
        span, m, cap = s2 - s1 + 1, 0, 1
        while cap < span:
            m, cap = m + 1, cap * self.params.q
        return m

    @property
    def out_params(self) -> CodeParams:
        return self.params.with_length(self.params.n + self.m)

    def tail(self, s: int) -> Word:
        """Fixed-width big-endian base-q digits of s2 - s."""
        s1, s2 = self.window
        if not s1 <= s <= s2:
            raise ValueError(f"sum {s} outside window [{s1}, {s2}]")
        v, digits = s2 - s, []
        for _ in range(self.m):
            v, r = divmod(v, self.params.q)
            digits.append(r)
        return tuple(reversed(digits))

    def data_words(self) -> Iterator[Word]:
        s1, s2 = self.window
        symbols = range(0, self.params.q, self.params.ell + 1)
        for x in product(symbols, repeat=self.params.n):
            if s1 <= sum(x) <= s2:
                yield x

    def words(self) -> Iterator[Word]:
        for x in self.data_words():
            yield x + self.tail(sum(x))

    def codebook(self) -> Codebook:
        return Codebook(self.out_params, self.words(), Mode.UEC)

    def decode(self, y: Sequence[int]) -> Word:
        y = check_word(y, self.out_params)
        p, n = self.params, self.params.n
        s1, s2 = self.window
        step = p.ell + 1
        data, tail = y[:n], y[n:]
        for cand, sign in ((_round_down(data, step), 1), (_round_up(data, step), -1)):
            if any(s >= p.q for s in cand) or not s1 <= sum(cand) <= s2:
                continue
            t = self.tail(sum(cand))
            if all(0 <= sign * (r - c) <= p.ell for r, c in zip(tail, t)):
                return cand + t
        raise DecodeFailure(f"{y} is not within one level-{p.ell} error of the tail code")


def build_constant_sum(params: CodeParams, j: int) -> Codebook:
    return ConstantSumCode(params, j).codebook()


def build_two_level(params: CodeParams) -> Codebook:
    return TwoLevelCode(params).codebook()


def build_tail_code(params: CodeParams) -> Codebook:
    return TailCode(params).codebook()


def decode_uec(code, y: Sequence[int]) -> Word:
    """Decode ``y`` against one of the constructions or an explicit codebook.

    For a plain :class:`Codebook` the decoder searches for the unique codeword
    whose unidirectional reachable set contains ``y``.
    """
    if isinstance(code, (ConstantSumCode, TwoLevelCode, TailCode)):
        return code.decode(y)
    if isinstance(code, Codebook):
        y = check_word(y, code.params)
        hits = [x for x in code if y in reachable(x, code.params, ChannelMode.UNIDIRECTIONAL)]
        if len(hits) == 1:
            return hits[0]
        raise DecodeFailure(f"{y} matches {len(hits)} codewords")
    raise TypeError(f"cannot decode with {type(code).__name__}")
