"""Operational model of the level-ell asymmetric and unidirectional channels.

Confusability here is decided from the channel definition by building the
explicit error pairs that make two inputs collide, never from the distance
criteria in :mod:`lmcodes.core`. That keeps the two routes independent so
tests can check one against the other.

Random sampling uses numpy's PCG64 bit generator
(``numpy.random.Generator(numpy.random.PCG64(seed))``), whose output stream
is fixed across platforms for a given seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Sequence

import numpy as np

from .core import CodeParams, OutOfAlphabet, Word, check_word


class Direction(str, Enum):
    UP = "up"
    DOWN = "down"


class ChannelMode(str, Enum):
    ASYMMETRIC = "asymmetric"
    UNIDIRECTIONAL = "unidirectional"


@dataclass(frozen=True)
class ErrorVector:
    magnitudes: tuple[int, ...]
    direction: Direction = Direction.UP

    def __post_init__(self) -> None:
        object.__setattr__(self, "magnitudes", tuple(int(m) for m in self.magnitudes))
        object.__setattr__(self, "direction", Direction(self.direction))
        if any(m < 0 for m in self.magnitudes):
            raise ValueError(f"negative magnitude in {self.magnitudes}")

    @property
    def is_zero(self) -> bool:
        return not any(self.magnitudes)

    def check(self, params: CodeParams) -> None:
        if len(self.magnitudes) != params.n:
            raise ValueError(f"error length {len(self.magnitudes)} != n={params.n}")
        if any(m > params.ell for m in self.magnitudes):
            raise ValueError(f"magnitude above ell={params.ell} in {self.magnitudes}")


def apply(x: Sequence[int], e: ErrorVector, params: CodeParams) -> Word:
    """Return x+e (UP) or x-e (DOWN); raise OutOfAlphabet if that leaves Q^n."""
    x = check_word(x, params)
    e.check(params)
    sign = 1 if e.direction is Direction.UP else -1
    out = tuple(a + sign * m for a, m in zip(x, e.magnitudes))
    if any(not 0 <= s < params.q for s in out):
        raise OutOfAlphabet(f"{x} {'+' if sign > 0 else '-'} {e.magnitudes} leaves [0, {params.q - 1}]")
    return out


def _shifted(x: Word, params: CodeParams, sign: int) -> set[Word]:
    ranges = []
    for a in x:
        if sign > 0:
            ranges.append(range(a, min(a + params.ell, params.q - 1) + 1))
        else:
            ranges.append(range(max(a - params.ell, 0), a + 1))
    return set(product(*ranges))


def reachable(x: Sequence[int], params: CodeParams, mode: ChannelMode | str) -> set[Word]:
    """Every output the channel can produce when ``x`` is sent."""
    x = check_word(x, params)
    mode = ChannelMode(mode)
    out = _shifted(x, params, +1)
    if mode is ChannelMode.UNIDIRECTIONAL:
        out |= _shifted(x, params, -1)
    return out


def _in_box(v: Sequence[int], lo: int, hi: int) -> bool:
    return all(lo <= a <= hi for a in v)


def _meet_same_direction(x: Word, y: Word, params: CodeParams, sign: int) -> Word | None:
    # x+e = y+f with e_i = max(0, y_i-x_i), f_i = max(0, x_i-y_i); mirrored for DOWN.
    e = [max(0, sign * (b - a)) for a, b in zip(x, y)]
    f = [max(0, sign * (a - b)) for a, b in zip(x, y)]
    if not (_in_box(e, 0, params.ell) and _in_box(f, 0, params.ell)):
        return None
    z = tuple(a + sign * m for a, m in zip(x, e))
    assert z == tuple(b + sign * m for b, m in zip(y, f))
    return z if _in_box(z, 0, params.q - 1) else None


def _meet_opposite(x: Word, y: Word, params: CodeParams) -> Word | None:
    # x+e = y-f with e_i = ceil((y_i-x_i)/2), f_i = floor((y_i-x_i)/2).
    e = [-((a - b) // 2) for a, b in zip(x, y)]
    f = [(b - a) // 2 for a, b in zip(x, y)]
    if not (_in_box(e, 0, params.ell) and _in_box(f, 0, params.ell)):
        return None
    z = tuple(a + m for a, m in zip(x, e))
    assert z == tuple(b - m for b, m in zip(y, f))
    return z if _in_box(z, 0, params.q - 1) else None


def common_output(
    x: Sequence[int], y: Sequence[int], params: CodeParams, mode: ChannelMode | str
) -> Word | None:
    """A word both ``x`` and ``y`` can be received as, or None if none exists."""
    x, y = check_word(x, params), check_word(y, params)
    mode = ChannelMode(mode)
    z = _meet_same_direction(x, y, params, +1)
    if z is not None or mode is ChannelMode.ASYMMETRIC:
        return z
    return (
        _meet_same_direction(x, y, params, -1)
        or _meet_opposite(x, y, params)
        or _meet_opposite(y, x, params)
    )


def confusable(
    x: Sequence[int], y: Sequence[int], params: CodeParams, mode: ChannelMode | str
) -> bool:
    return common_output(x, y, params, mode) is not None


def make_rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def sample_error(
    params: CodeParams,
    direction: Direction | str,
    weight_profile: Sequence[float] | None = None,
    seed: int | np.random.Generator | None = None,
) -> ErrorVector:
    """Draw an error vector with i.i.d. magnitudes.

    ``weight_profile[k]`` is the relative weight of magnitude ``k``; it may be
    shorter than ell+1 (missing entries mean weight zero) but not longer. The
    default is uniform on [0, ell]. Passing a Generator as ``seed`` advances
    that generator; passing an int gives a fresh, reproducible draw.
    """
    rng = make_rng(seed)
    if weight_profile is None:
        weight_profile = [1.0] * (params.ell + 1)
    w = np.asarray(weight_profile, dtype=float)
    if w.ndim != 1 or not 1 <= len(w) <= params.ell + 1 or (w < 0).any() or w.sum() <= 0:
        raise ValueError(f"bad weight profile {list(weight_profile)} for ell={params.ell}")
    mags = rng.choice(len(w), size=params.n, p=w / w.sum())
    return ErrorVector(tuple(int(m) for m in mags), Direction(direction))
