from itertools import product

import pytest

from lmcodes.core import CodeParams


def all_words(q, n):
    return list(product(range(q), repeat=n))


def brute_linear(coeffs, constant, q):
    """Every x in Q^n with sum(a_i x_i) == constant, by full enumeration."""
    return sorted(
        x for x in product(range(q), repeat=len(coeffs))
        if sum(a * s for a, s in zip(coeffs, x)) == constant
    )


def small_params(q_max, ell_max, n_max):
    return [
        CodeParams(q, ell, n)
        for q in range(3, q_max + 1)
        for ell in range(1, min(ell_max, q - 2) + 1)
        for n in range(1, n_max + 1)
    ]


# an 8-word UED code for q=3, ell=1, n=3: (0,0,0), (2,2,2) and the permutations of (0,1,2)
EIGHT_WORD_UED = [(0, 0, 0), (2, 2, 2), (0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]

# five-word UEC code for q = ell + 2 = 3, coefficients 1, 2, 4, 8, constant ell+1 + (ell+1)^3
FIVE_WORDS = [(2, 2, 1, 0), (2, 0, 2, 0), (2, 0, 0, 1), (0, 1, 2, 0), (0, 1, 0, 1)]


@pytest.fixture
def eight_word_ued():
    return list(EIGHT_WORD_UED)
