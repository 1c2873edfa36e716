"""Word error rate against parallel gendered/neutral benchmarks, plus a
heuristic diff classifier that mirrors a manual error taxonomy."""

from __future__ import annotations

import difflib
import enum
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .rewrite import pluralize_verb
from .text import Sentence, normalize_apostrophes, tokenize

NEUTRAL_PRONOUNS = frozenset({"they", "them", "their", "theirs", "themselves", "themself"})
BINARY_PRONOUNS = frozenset({"he", "she", "her", "hers", "his", "him", "himself", "herself"})
_BE_SIDE = frozenset({"are", "'re", "is", "'s"})
_HAVE_SIDE = frozenset({"have", "'ve", "has"})


class ErrorCategory(enum.Enum):
    SVA = "SVA"
    CORRECTION = "CORRECTION"
    CLITIC_S = "CLITIC_S"
    SPACE = "SPACE"
    POS = "POS"
    CAPITALIZATION = "CAPITALIZATION"
    RULE = "RULE"
    UNK = "UNK"
    OTHER = "OTHER"


class AlignmentError(ValueError):
    pass


def edit_distance(hyp: Sequence, ref: Sequence) -> int:
    """Word-level Levenshtein distance with unit costs."""
    prev = list(range(len(ref) + 1))
    for i, h in enumerate(hyp, 1):
        cur = [i] + [0] * len(ref)
        for j, r in enumerate(ref, 1):
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (h != r))
        prev = cur
    return prev[-1]


def wer(hyp: Sequence, ref: Sequence) -> float:
    """Edit distance over reference length (an empty reference counts as length 1)."""
    return edit_distance(hyp, ref) / max(1, len(ref))


@dataclass
class SentenceStats:
    edit_distance: int
    ref_length: int
    base_distance: int = 0


@dataclass
class EvalReport:
    base_wer: float           # percentages, micro-averaged
    system_wer: float
    sentence_count: int
    per_sentence: list[SentenceStats] = field(default_factory=list)
    error_counts: dict[str, int] = field(default_factory=dict)
    base_wer_macro: float = 0.0
    system_wer_macro: float = 0.0
    mode: str = "tokenized"
    case_sensitive: bool = True

    def to_json(self, per_sentence: bool = False) -> dict:
        d = {
            "base_wer": self.base_wer, "system_wer": self.system_wer, "n": self.sentence_count,
            "base_wer_macro": self.base_wer_macro, "system_wer_macro": self.system_wer_macro,
            "mode": self.mode, "case_sensitive": self.case_sensitive,
            "error_counts": dict(self.error_counts),
        }
        if per_sentence:
            d["per_sentence"] = [{"edit_distance": s.edit_distance, "ref_length": s.ref_length,
                                  "base_distance": s.base_distance} for s in self.per_sentence]
        return d

    def table(self) -> str:
        rows = [("metric", "micro", "macro"),
                ("BASE WER (%)", f"{self.base_wer:.2f}", f"{self.base_wer_macro:.2f}"),
                ("SYSTEM WER (%)", f"{self.system_wer:.2f}", f"{self.system_wer_macro:.2f}")]
        out = [f"{a:<16}{b:>10}{c:>10}" for a, b, c in rows]
        out.append(f"sentences: {self.sentence_count}  (mode={self.mode}, "
                   f"case_sensitive={self.case_sensitive})")
        for cat, n in sorted(self.error_counts.items()):
            out.append(f"  {cat:<16}{n:>6}")
        return "\n".join(out)


def words(line: str, mode: str = "tokenized", case_sensitive: bool = True) -> list[str]:
    if mode == "tokenized":
        toks = tokenize(line).surfaces
    elif mode == "raw":
        toks = line.split()
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return toks if case_sensitive else [t.lower() for t in toks]


def _read_lines(path: Path) -> list[str]:
    with open(path, encoding="utf-8", newline="") as f:
        return [line.rstrip("\n").rstrip("\r") for line in f]


def evaluate(source_file, hypothesis_file, reference_file, mode: str = "tokenized",
             case_sensitive: bool = True, classify: bool = True) -> EvalReport:
    paths = [Path(source_file), Path(hypothesis_file), Path(reference_file)]
    src, hyp, ref = (_read_lines(p) for p in paths)
    if not len(src) == len(hyp) == len(ref):
        raise AlignmentError(
            "line counts differ: " + ", ".join(f"{p} has {n}" for p, n in zip(paths, map(len, (src, hyp, ref)))))
    return evaluate_lines(src, hyp, ref, mode, case_sensitive, classify)


def evaluate_lines(src: Sequence[str], hyp: Sequence[str], ref: Sequence[str], mode: str = "tokenized",
                   case_sensitive: bool = True, classify: bool = True) -> EvalReport:
    if not len(src) == len(hyp) == len(ref):
        raise AlignmentError(f"line counts differ: {len(src)}, {len(hyp)}, {len(ref)}")
    stats, errors = [], Counter()
    for s, h, r in zip(src, hyp, ref):
        rw = words(r, mode, case_sensitive)
        stats.append(SentenceStats(edit_distance(words(h, mode, case_sensitive), rw), len(rw),
                                   edit_distance(words(s, mode, case_sensitive), rw)))
        if classify:
            errors.update(cat.value for cat, _ in classify_diffs(tokenize(h), tokenize(r)))
    n = len(stats)
    total_ref = sum(st.ref_length for st in stats)

    def micro(attr):
        return 100.0 * sum(getattr(st, attr) for st in stats) / max(1, total_ref)

    def macro(attr):
        return 100.0 * sum(getattr(st, attr) / max(1, st.ref_length) for st in stats) / max(1, n)

    return EvalReport(micro("base_distance"), micro("edit_distance"), n, stats, dict(errors),
                      macro("base_distance"), macro("edit_distance"), mode, case_sensitive)


# -- diff classification ----------------------------------------------------------

def _norm(w: str) -> str:
    return normalize_apostrophes(w).lower()


def _classify_region(h: list[str], r: list[str], before: str | None) -> ErrorCategory:
    if "".join(h) == "".join(r):
        return ErrorCategory.SPACE
    if "".join(h).lower() == "".join(r).lower():
        return ErrorCategory.CAPITALIZATION
    if "<unk>" in "".join(h).lower():
        return ErrorCategory.UNK
    if len(h) == len(r) == 1:
        a, b = _norm(h[0]), _norm(r[0])
        if before == "they" and ((a in _BE_SIDE and b in _HAVE_SIDE) or (a in _HAVE_SIDE and b in _BE_SIDE)):
            return ErrorCategory.CLITIC_S
        if _norm(pluralize_verb(a)) == b or _norm(pluralize_verb(b)) == a:
            return ErrorCategory.SVA
        if a in NEUTRAL_PRONOUNS and b in NEUTRAL_PRONOUNS:
            return ErrorCategory.POS
    if any(_norm(w) in BINARY_PRONOUNS for w in h):
        return ErrorCategory.RULE
    touched = {_norm(w) for w in h + r}
    if not touched & (NEUTRAL_PRONOUNS | BINARY_PRONOUNS | _BE_SIDE | _HAVE_SIDE):
        return ErrorCategory.CORRECTION
    return ErrorCategory.OTHER


def classify_diffs(hyp: Sentence, ref: Sentence) -> list[tuple[ErrorCategory, tuple[int, int]]]:
    """Label each differing region between `hyp` and `ref`; spans index hyp tokens."""
    hs, rs = hyp.surfaces, ref.surfaces
    out = []
    matcher = difflib.SequenceMatcher(None, hs, rs, autojunk=False)
    for tag, i1, i2, j1, j2 in matcher.get_opcodes():
        if tag == "equal":
            for k in range(i2 - i1):
                # first token of a line may differ only in leading spaces
                if hyp.tokens[i1 + k].leading_whitespace != ref.tokens[j1 + k].leading_whitespace:
                    out.append((ErrorCategory.SPACE, (i1 + k, i1 + k + 1)))
            continue
        if tag == "replace" and i2 - i1 == j2 - j1 and i2 - i1 > 1 and "<unk>" not in "".join(hs[i1:i2]).lower():
            pairs = [([hs[i]], [rs[j]], i) for i, j in zip(range(i1, i2), range(j1, j2)) if hs[i] != rs[j]]
            for h, r, i in pairs:
                before = _norm(hs[i - 1]) if i > 0 else None
                out.append((_classify_region(h, r, before), (i, i + 1)))
            continue
        before = _norm(hs[i1 - 1]) if i1 > 0 else None
        out.append((_classify_region(hs[i1:i2], rs[j1:j2], before), (i1, i2)))
    if hyp.trailing_whitespace != ref.trailing_whitespace:
        out.append((ErrorCategory.SPACE, (len(hs), len(hs))))
    return out
