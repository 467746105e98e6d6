import random
from functools import lru_cache

import pytest

from lmcodes import oracle
from lmcodes.core import Codebook, CodeParams, Mode, ResourceCapExceeded, is_aec, is_ued, is_uec
from lmcodes.ued import detects_all

from conftest import EIGHT_WORD_UED, all_words

PAIR_OK = {Mode.AEC: is_aec, Mode.UEC: is_uec, Mode.UED: is_ued}


def reference_mis(params, mode):
    """Largest independent set by plain include/exclude recursion on vertex bitmasks."""
    words = all_words(params.q, params.n)
    ok = PAIR_OK[Mode(mode)]
    nbrs = [0] * len(words)
    for i, x in enumerate(words):
        for j in range(i + 1, len(words)):
            if not ok(Codebook(params, [x, words[j]])):
                nbrs[i] |= 1 << j
                nbrs[j] |= 1 << i

    @lru_cache(maxsize=None)
    def best(mask):
        if not mask:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        without = best(rest)
        if not nbrs[v] & mask:
            return 1 + without
        return max(without, 1 + best(rest & ~nbrs[v]))

    return best((1 << len(words)) - 1)


class TestGraph:
    @pytest.mark.parametrize("mode", list(Mode))
    def test_adjacency_matches_pairwise(self, mode):
        p = CodeParams(4, 1, 2)
        g = oracle.ConflictGraph.build(p, mode)
        words = g.words
        assert len(g) == 16
        for i, x in enumerate(words):
            assert not g.adjacency[i] >> i & 1
            for j, y in enumerate(words):
                if i != j:
                    conflict = bool(g.adjacency[i] >> j & 1)
                    assert conflict == bool(g.adjacency[j] >> i & 1)
                    assert conflict == (not PAIR_OK[mode](Codebook(p, [x, y])))

    def test_cap(self, monkeypatch):
        with pytest.raises(ResourceCapExceeded):
            oracle.max_code_exact(CodeParams(5, 1, 3), "aec", cap=100)
        monkeypatch.setenv("LMCODES_ORACLE_CAP", "50")
        with pytest.raises(ResourceCapExceeded):
            oracle.max_code_exact(CodeParams(4, 1, 3), "uec")


class TestExact:
    def test_examples(self):
        assert oracle.max_code_exact(CodeParams(3, 1, 2), "aec")[0] == 4
        assert oracle.max_code_exact(CodeParams(4, 1, 3), "uec")[0] == 8
        size, witness = oracle.max_code_exact(CodeParams(3, 1, 3), "ued")
        assert size == 8
        assert detects_all(witness)

    @pytest.mark.parametrize(
        "q,ell,n", [(3, 1, 2), (3, 1, 3), (4, 1, 2), (4, 2, 2), (5, 1, 2), (4, 1, 1), (5, 3, 2)]
    )
    @pytest.mark.parametrize("mode", list(Mode))
    def test_matches_reference(self, q, ell, n, mode):
        p = CodeParams(q, ell, n)
        assert oracle.max_code_exact(p, mode)[0] == reference_mis(p, mode)

    def test_small_grid(self):
        grid = [CodeParams(q, ell, n) for q in range(3, 6) for ell in range(1, min(3, q - 2) + 1) for n in (1, 2)]
        grid += [CodeParams(q, ell, 3) for q in (3, 4) for ell in range(1, q - 1)]
        for p in grid:
            size, witness = oracle.max_code_exact(p, "aec")
            assert size == p.b**p.n, p
            assert is_aec(witness)

    def test_uec_below_aec(self):
        for p in [CodeParams(3, 1, 2), CodeParams(3, 1, 3), CodeParams(5, 1, 2), CodeParams(5, 2, 2), CodeParams(6, 1, 2)]:
            assert oracle.max_code_exact(p, "uec")[0] <= oracle.max_code_exact(p, "aec")[0]

    @pytest.mark.parametrize("mode", [Mode.AEC, Mode.UEC])
    def test_witnesses_verify(self, mode):
        for p in [CodeParams(3, 1, 3), CodeParams(4, 1, 3), CodeParams(5, 2, 2), CodeParams(7, 2, 2)]:
            _, witness = oracle.max_code_exact(p, mode)
            assert witness.is_valid()
            assert oracle.verify_correction(witness)

    def test_witness_is_lex_least(self):
        # the lexicographically least maximum code for (3,1,2) AEC starts at the zero word
        size, witness = oracle.max_code_exact(CodeParams(3, 1, 2), "aec")
        assert witness.words == ((0, 0), (0, 2), (2, 0), (2, 2))
        size, witness = oracle.max_code_exact(CodeParams(4, 1, 2), "uec")
        assert size == 4 and witness.words[0] == (0, 0)

    def test_deterministic(self):
        p = CodeParams(4, 1, 3)
        runs = {oracle.max_code_exact(p, "ued") for _ in range(3)}
        assert len(runs) == 1


class TestVerifyCorrection:
    def test_examples(self):
        _, opt = oracle.max_code_exact(CodeParams(5, 1, 2), "aec")
        assert oracle.verify_correction(opt)
        assert not oracle.verify_correction(Codebook(CodeParams(3, 1, 2), [(0, 0), (1, 1)]), "aec")
        with pytest.raises(ValueError):
            oracle.verify_correction(Codebook(CodeParams(3, 1, 3), EIGHT_WORD_UED, Mode.UED))

    def test_agrees_with_pairwise(self):
        rng = random.Random(1000)
        for _ in range(1000):
            q = rng.randint(3, 4)
            ell = rng.randint(1, q - 2)
            n = rng.randint(1, 3)
            words = all_words(q, n)
            p = CodeParams(q, ell, n)
            mode = rng.choice([Mode.AEC, Mode.UEC])
            c = Codebook(p, rng.sample(words, rng.randint(1, min(6, len(words)))), mode)
            assert oracle.verify_correction(c) == c.is_valid()
            assert oracle.pairwise_agreement(c)


class TestReport:
    def test_q4_n2(self):
        r = oracle.bound_report(CodeParams(4, 1, 2))
        assert r["bounds"]["aec_capacity"] == 4
        assert r["sizes"]["exact_uec"] == 4 == r["sizes"]["two_level"]
        assert all(c["pass"] for c in r["checks"])

    def test_q3_n2(self):
        r = oracle.bound_report(CodeParams(3, 1, 2))
        assert r["bounds"]["aec_capacity"] == 4
        assert r["sizes"]["exact_uec"] <= 4
        assert "two_level" not in r["sizes"]

    def test_all_rows_pass(self):
        for q in range(3, 7):
            for ell in range(1, q - 1):
                for n in (1, 2):
                    r = oracle.bound_report(CodeParams(q, ell, n))
                    assert all(c["pass"] for c in r["checks"]), r
                    assert "exact_uec" in r["sizes"]

    def test_without_exact(self):
        r = oracle.bound_report(CodeParams(7, 2, 6), exact=False)
        assert "exact_uec" not in r["sizes"]
        assert all(c["pass"] for c in r["checks"])
        r = oracle.bound_report(CodeParams(5, 1, 3), cap=10)
        assert "exact_aec" not in r["sizes"]
