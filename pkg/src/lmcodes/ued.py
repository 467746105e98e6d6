"""Codes detecting all unidirectional errors of level ell.

P_i is the layer of words with coordinate sum i; C_a is the union of the
layers whose index is congruent to a modulo ell*n + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .channel import Direction, ErrorVector, apply
from .core import Codebook, CodeParams, Mode, OutOfAlphabet, Word


def pi_counts(params: CodeParams) -> list[int]:
    """(|P_0|, ..., |P_{n(q-1)}|): coefficients of (1 + x + ... + x^(q-1))^n."""
    counts = [1]
    for _ in range(params.n):
        nxt = [0] * (len(counts) + params.q - 1)
        for k, c in enumerate(counts):
            for s in range(params.q):
                nxt[k + s] += c
        counts = nxt
    return counts


def count_pi(params: CodeParams, i: int) -> int:
    counts = pi_counts(params)
    return counts[i] if 0 <= i < len(counts) else 0


def _layer(params: CodeParams, i: int) -> Iterator[Word]:
    def rec(pos: int, left: int) -> Iterator[tuple[int, ...]]:
        if pos == params.n - 1:
            if 0 <= left < params.q:
                yield (left,)
            return
        room = (params.n - 1 - pos) * (params.q - 1)
        for s in range(max(0, left - room), min(params.q - 1, left) + 1):
            for rest in rec(pos + 1, left - s):
                yield (s,) + rest

    if 0 <= i <= params.n * (params.q - 1):
        yield from rec(0, i)


def build_pi(params: CodeParams, i: int) -> Codebook:
    return Codebook(params, _layer(params, i), Mode.UED)


def ca_layers(params: CodeParams, a: int) -> list[int]:
    if not 0 <= a <= params.ell * params.n:
        raise ValueError(f"a={a} outside [0, {params.ell * params.n}]")
    return list(range(a, params.n * (params.q - 1) + 1, params.ell * params.n + 1))


def build_ca(params: CodeParams, a: int) -> Codebook:
    words = [w for i in ca_layers(params, a) for w in _layer(params, i)]
    return Codebook(params, words, Mode.UED)


@dataclass(frozen=True)
class LayerUnionCode:
    """C_a as an implicit description."""

    params: CodeParams
    a: int

    def __post_init__(self) -> None:
        ca_layers(self.params, self.a)

    def codebook(self) -> Codebook:
        return build_ca(self.params, self.a)

    def __len__(self) -> int:
        return ca_size(self.params, self.a)


def ca_size(params: CodeParams, a: int) -> int:
    counts = pi_counts(params)
    return sum(counts[i] for i in ca_layers(params, a))


def best_ca(params: CodeParams) -> tuple[int, int]:
    """(a, |C_a|) with the largest size, smallest a on ties."""
    sizes = [ca_size(params, a) for a in range(params.ell * params.n + 1)]
    best = max(sizes)
    return sizes.index(best), best


def detects_all(c: Codebook) -> bool:
    """True iff no nonzero level-ell unidirectional error turns a codeword into another."""
    p = c.params
    patterns = [e for e in product(range(p.ell + 1), repeat=p.n) if any(e)]
    for x in c:
        for mags in patterns:
            for d in Direction:
                try:
                    y = apply(x, ErrorVector(mags, d), p)
                except OutOfAlphabet:
                    continue
                if y in c:
                    return False
    return True
