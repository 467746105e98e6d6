"""Codes defined by a single linear equation sum(a_i * x_i) = a over the integers.

With power coefficients a_i = (ell+1)^i the code corrects every unidirectional
level-ell error and decodes by reading the error off the (ell+1)-ary digits of
the syndrome. The family C_n(r) centres the constant at alpha*S_n + r, and
``gamma(params, r)`` is its size, read from the coefficient table of
prod_i f(x^((ell+1)^i)) with f(x) = 1 + x + ... + x^(q-1).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from .channel import Direction, ErrorVector
from .core import (
    Codebook,
    CodeParams,
    DecodeFailure,
    Mode,
    ResourceCapExceeded,
    Word,
    check_word,
)

DEFAULT_DEGREE_CAP = 10**7


def degree_cap() -> int:
    return int(os.environ.get("LMCODES_DEGREE_CAP", DEFAULT_DEGREE_CAP))


@dataclass(frozen=True)
class LinearCode:
    params: CodeParams
    coeffs: tuple[int, ...]
    constant: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if len(self.coeffs) != self.params.n:
            raise ValueError(f"{len(self.coeffs)} coefficients for length n={self.params.n}")
        if any(a == 0 for a in self.coeffs):
            raise ValueError(f"coefficients must be nonzero: {self.coeffs}")

    def value(self, x: Sequence[int]) -> int:
        return sum(a * s for a, s in zip(self.coeffs, x))

    def value_range(self) -> tuple[int, int]:
        top = self.params.q - 1
        lo = sum(min(0, a * top) for a in self.coeffs)
        hi = sum(max(0, a * top) for a in self.coeffs)
        return lo, hi

    def __contains__(self, x) -> bool:
        x = tuple(x)
        return (
            len(x) == self.params.n
            and all(0 <= s < self.params.q for s in x)
            and self.value(x) == self.constant
        )


def solve_box(
    coeffs: Sequence[int], target: int, lows: Sequence[int], highs: Sequence[int]
) -> Iterator[Word]:
    """Integer solutions of sum(c_i v_i) = target with lows[i] <= v_i <= highs[i].

    Depth-first over coordinates left to right with values ascending, so the
    output is lexicographic. A branch is cut as soon as the remaining
    coordinates cannot reach the target; the last coordinate is solved
    directly.
    """
    n = len(coeffs)
    if n == 0:
        if target == 0:
            yield ()
        return
    # rest_lo[i], rest_hi[i]: achievable range of sum over coordinates i..n-1
    rest_lo = [0] * (n + 1)
    rest_hi = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        a, lo, hi = coeffs[i], lows[i], highs[i]
        rest_lo[i] = rest_lo[i + 1] + min(a * lo, a * hi)
        rest_hi[i] = rest_hi[i + 1] + max(a * lo, a * hi)

    prefix = [0] * n

    def rec(i: int, remaining: int) -> Iterator[Word]:
        a = coeffs[i]
        if i == n - 1:
            v, r = divmod(remaining, a)
            if r == 0 and lows[i] <= v <= highs[i]:
                prefix[i] = v
                yield tuple(prefix)
            return
        lo_next, hi_next = rest_lo[i + 1], rest_hi[i + 1]
        for v in range(lows[i], highs[i] + 1):
            rem = remaining - a * v
            if lo_next <= rem <= hi_next:
                prefix[i] = v
                yield from rec(i + 1, rem)

    if rest_lo[0] <= target <= rest_hi[0]:
        yield from rec(0, target)


def solutions(code: LinearCode) -> Iterator[Word]:
    n, top = code.params.n, code.params.q - 1
    return solve_box(code.coeffs, code.constant, [0] * n, [top] * n)


def enumerate_code(code: LinearCode, mode: Mode | str = Mode.UEC) -> Codebook:
    """All solutions in Q^n, as a codebook."""
    return Codebook(code.params, solutions(code), mode)


def is_nonempty(code: LinearCode) -> bool:
    return next(iter(solutions(code)), None) is not None


def is_uec_hyperplane(coeffs: Sequence[int], ell: int) -> bool:
    """True iff sum(a_i v_i) = 0 has no nonzero v in [-ell,ell]^n or [0,2ell]^n.

    This makes sum(a_i x_i) = a an ell-UEC code for every constant a.
    """
    n = len(coeffs)
    for lo, hi in ((-ell, ell), (0, 2 * ell)):
        for v in solve_box(coeffs, 0, [lo] * n, [hi] * n):
            if any(v):
                return False
    return True


@dataclass(frozen=True)
class PowerCodeSpec:
    """The code sum((ell+1)^i x_i) = alpha*S_n + r."""

    params: CodeParams
    r: int = 0

    @classmethod
    def from_constant(cls, params: CodeParams, constant: int) -> PowerCodeSpec:
        return cls(params, constant - alpha(params) * power_sum(params))

    @property
    def S_n(self) -> int:
        return power_sum(self.params)

    @property
    def alpha(self) -> int:
        return alpha(self.params)

    @property
    def constant(self) -> int:
        return self.alpha * self.S_n + self.r

    def linear_code(self) -> LinearCode:
        return LinearCode(self.params, power_coeffs(self.params), self.constant)


def power_coeffs(params: CodeParams) -> tuple[int, ...]:
    return tuple((params.ell + 1) ** i for i in range(params.n))


def power_sum(params: CodeParams) -> int:
    """S_n = 1 + (ell+1) + ... + (ell+1)^(n-1)."""
    return ((params.ell + 1) ** params.n - 1) // params.ell


def alpha(params: CodeParams) -> int:
    return (params.q - 1) // 2


def _digits(v: int, base: int, width: int) -> tuple[int, ...]:
    """Little-endian base-``base`` digits of v (digit i has weight base^i)."""
    out = []
    for _ in range(width):
        v, d = divmod(v, base)
        out.append(d)
    return tuple(out)


def decode_power(y: Sequence[int], spec: PowerCodeSpec) -> tuple[Word, ErrorVector]:
    """Recover the sent codeword and the error from a received word."""
    p = spec.params
    y = check_word(y, p)
    base = p.ell + 1
    syndrome = sum(base**i * s for i, s in enumerate(y)) - spec.constant
    if abs(syndrome) >= base**p.n:
        raise DecodeFailure(f"syndrome {syndrome} of {y} exceeds any level-{p.ell} error")
    e = _digits(abs(syndrome), base, p.n)
    if syndrome >= 0:
        x, direction = tuple(s - m for s, m in zip(y, e)), Direction.UP
    else:
        x, direction = tuple(s + m for s, m in zip(y, e)), Direction.DOWN
    if any(not 0 <= s < p.q for s in x):
        raise DecodeFailure(f"{y} decodes outside the alphabet")
    return x, ErrorVector(e, direction)


def aec_to_uec(code: LinearCode) -> LinearCode:
    """Complement the coordinates carrying negative coefficients.

    x -> x' with x'_i = q-1-x_i where a_i < 0 is a bijection onto the new
    code, whose coefficients are |a_i| and constant a - s(q-1), s being the
    sum of the negative coefficients. An AEC input gives a UEC output.
    """
    s = sum(a for a in code.coeffs if a < 0)
    return LinearCode(
        code.params,
        tuple(abs(a) for a in code.coeffs),
        code.constant - s * (code.params.q - 1),
    )


def complement_negative(x: Sequence[int], code: LinearCode) -> Word:
    """The bijection used by :func:`aec_to_uec`, applied to one word."""
    top = code.params.q - 1
    return tuple(top - s if a < 0 else s for a, s in zip(code.coeffs, x))


@dataclass(frozen=True)
class CongruenceCode:
    """{z in Q^n : sum(a_i z_i) = a (mod modulus)}."""

    params: CodeParams
    coeffs: tuple[int, ...]
    residue: int
    modulus: int

    def words(self) -> Iterator[Word]:
        lo, hi = 0, sum(self.coeffs) * (self.params.q - 1)
        first = lo + (self.residue - lo) % self.modulus
        found: list[Word] = []
        for v in range(first, hi + 1, self.modulus):
            found.extend(solutions(LinearCode(self.params, self.coeffs, v)))
        return iter(sorted(found))

    def codebook(self) -> Codebook:
        return Codebook(self.params, self.words(), Mode.UEC)


def congruence_variant(code: LinearCode) -> CongruenceCode:
    if any(a <= 0 for a in code.coeffs):
        raise ValueError(f"congruence variant needs positive coefficients: {code.coeffs}")
    if not is_uec_hyperplane(code.coeffs, code.params.ell):
        raise ValueError(f"coefficients {code.coeffs} do not give a UEC code for every constant")
    modulus = 2 * code.params.ell * sum(code.coeffs) + 1
    return CongruenceCode(code.params, code.coeffs, code.constant % modulus, modulus)


def direct_product(A: LinearCode, B: LinearCode) -> LinearCode:
    """Single-equation code equal to the cartesian product A x B."""
    if (A.params.q, A.params.ell) != (B.params.q, B.params.ell):
        raise ValueError("direct product needs codes over the same (q, ell)")
    if not (is_nonempty(A) and is_nonempty(B)):
        raise ValueError("direct product needs nonempty codes")
    M = sum(abs(a) for a in A.coeffs) * (A.params.q - 1) + 1
    return LinearCode(
        A.params.with_length(A.params.n + B.params.n),
        A.coeffs + tuple(M * b for b in B.coeffs),
        A.constant + M * B.constant,
    )


@dataclass(frozen=True)
class CountTable:
    """Coefficient vector of a generating-function product, from exponent ``offset``."""

    counts: tuple[int, ...]
    offset: int = 0

    def __getitem__(self, exponent: int) -> int:
        k = exponent - self.offset
        return self.counts[k] if 0 <= k < len(self.counts) else 0

    def __len__(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def max(self) -> int:
        return max(self.counts)

    def argmax(self) -> list[int]:
        best = self.max()
        return [k + self.offset for k, c in enumerate(self.counts) if c == best]


def _product_table(steps: Sequence[int], q: int) -> list[int]:
    """Coefficients of prod_s (1 + x^s + ... + x^((q-1)s)) as Python ints."""
    degree = (q - 1) * sum(steps)
    if degree > degree_cap():
        raise ResourceCapExceeded(f"degree {degree} above cap {degree_cap()}")
    # int64 is exact while the total mass q^len(steps) fits.
    dtype = np.int64 if q ** len(steps) < 2**62 else object
    acc = np.zeros(degree + 1, dtype=dtype)
    acc[0] = 1
    length = 1
    for s in steps:
        new = np.zeros_like(acc)
        for j in range(q):
            new[j * s : j * s + length] += acc[:length]
        acc, length = new, length + (q - 1) * s
    return [int(c) for c in acc]


@lru_cache(maxsize=256)
def gamma_table(params: CodeParams) -> CountTable:
    """Counts of every value of sum((ell+1)^i x_i) over Q^n."""
    return CountTable(tuple(_product_table(power_coeffs(params), params.q)))


def gamma(params: CodeParams, r: int) -> int:
    """|C_n(r)|, the number of x in Q^n with sum((ell+1)^i x_i) = alpha*S_n + r."""
    return gamma_table(params)[alpha(params) * power_sum(params) + r]


def gamma_max(params: CodeParams) -> tuple[list[int], int]:
    """Offsets r attaining the largest gamma, ascending, and that largest value."""
    table = gamma_table(params)
    centre = alpha(params) * power_sum(params)
    return [e - centre for e in table.argmax()], table.max()


def gamma_sequence(q: int, ell: int, r: int, n_max: int, with_zero: bool = False) -> list[int]:
    """gamma for n = 1..n_max, prefixed by the empty-product term when ``with_zero``.

    The length-0 term counts solutions of 0 = r, so it is 1 for r = 0.
    """
    seq = [gamma(CodeParams(q, ell, n), r) for n in range(1, n_max + 1)]
    return ([int(r == 0)] + seq) if with_zero else seq


def verify_recurrence(seq: Sequence[int], rec: Sequence[int]) -> bool:
    """True iff seq[k] == sum(rec[i] * seq[k-1-i]) for every k >= len(rec)."""
    order = len(rec)
    if len(seq) <= order:
        raise ValueError(f"sequence of length {len(seq)} too short for order {order}")
    return all(
        seq[k] == sum(c * seq[k - 1 - i] for i, c in enumerate(rec))
        for k in range(order, len(seq))
    )


def optimal_window(params: CodeParams) -> tuple[int, int] | None:
    """Offsets r for which C_n(r) provably has ceil(q/(ell+1))^(n-1) words.

    Returns None when neither the divisible case nor any admissible
    decomposition q = 2m(ell+1) + 2c + 1 + delta applies.
    """
    q, ell, n = params.q, params.ell, params.n
    L = ell + 1
    a = alpha(params)
    if q % L == 0:
        u, v = -a, a
        for _ in range(n - 1):
            u, v = L * u + a, L * v - a
        return u, v
    for delta in (0, 1):
        for c in range(ell, -1, -1):
            if 2 * c + delta == ell:
                continue
            rest = q - 2 * c - 1 - delta
            if rest < 0 or rest % (2 * L):
                continue
            m = rest // (2 * L)
            eta = 0 if 2 * c + delta <= ell - 1 else -(-(ell - delta) // 2)
            ok = m <= c - 1 - (-(-(ell - delta) // 2)) or (2 * c + delta <= ell and m <= c)
            if not ok:
                continue
            lam = 0
            for _ in range(n - 1):
                lam = L * lam - eta
            u = -c + lam * L
            return u, u + q % L - 1
    return None


def la_u_bounds(params: CodeParams) -> tuple[Fraction, int]:
    """Exact lower and upper bounds on the largest single-equation UEC code."""
    q, ell, n = params.q, params.ell, params.n
    if q <= ell + 1:
        raise ValueError(f"bounds need q > ell+1, got q={q}, ell={ell}")
    lower = Fraction(ell, q - 1) * Fraction(q, ell + 1) ** n
    return lower, params.b ** (n - 1)


def normalized_coeffs(coeffs: Sequence[int]) -> tuple[int, ...]:
    g = reduce(gcd, coeffs)
    return tuple(a // g for a in coeffs)


def value_counts(coeffs: Sequence[int], q: int) -> CountTable:
    """Counts of every value of sum(a_i x_i) over Q^n, for arbitrary nonzero a_i."""
    lo = sum(min(0, a * (q - 1)) for a in coeffs)
    pos_steps = [abs(a) for a in coeffs]
    # x -> q-1-x on negative coordinates turns a_i x_i into |a_i| x'_i + a_i (q-1)
    return CountTable(tuple(_product_table(pos_steps, q)), offset=lo)


def best_constant_scan(params: CodeParams, coeffs: Sequence[int] | None = None) -> tuple[int, int]:
    """Constant a maximizing |{x in Q^n : sum(a_i x_i) = a}| and that size.

    Ties go to the constant nearest the centre of the value range, then to the
    smaller constant, so power coefficients report the alpha*S_n side.
    """
    if coeffs is None or tuple(coeffs) == power_coeffs(params):
        table = gamma_table(params)
    else:
        if len(coeffs) != params.n:
            raise ValueError(f"{len(coeffs)} coefficients for length n={params.n}")
        table = value_counts(coeffs, params.q)
    best = table.max()
    lo, hi = table.offset, table.offset + len(table) - 1
    winners = [e for e in table.argmax()]
    a_star = min(winners, key=lambda e: (abs(2 * e - lo - hi), e))
    return a_star, best
