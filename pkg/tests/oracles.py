"""Reference implementations used only by the tests."""

from functools import lru_cache


def levenshtein_oracle(hyp, ref) -> int:
    """Recursive edit distance straight from the definition (no shared code with the DP)."""
    hyp, ref = tuple(hyp), tuple(ref)

    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (hyp[i - 1] != ref[j - 1]))

    return d(len(hyp), len(ref))


def wer_oracle(hyp, ref) -> float:
    return levenshtein_oracle(hyp, ref) / max(1, len(ref))
