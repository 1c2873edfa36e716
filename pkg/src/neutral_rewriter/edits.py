from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .text import Sentence, replace_span


class EditCategory(enum.Enum):
    PRONOUN = "PRONOUN"
    DETERMINER = "DETERMINER"
    REFLEXIVE = "REFLEXIVE"
    CLITIC = "CLITIC"
    VERB_AGREEMENT = "VERB_AGREEMENT"
    NOUN = "NOUN"
    TITLE = "TITLE"


@dataclass(frozen=True)
class Edit:
    start: int
    end: int
    original: str
    replacement: str
    category: EditCategory
    detail: str | None = None   # lexicon category for NOUN edits

    @property
    def token_span(self) -> tuple[int, int]:
        return (self.start, self.end)

    def to_json(self) -> dict:
        d = {"span": [self.start, self.end], "original": self.original,
             "replacement": self.replacement, "category": self.category.value}
        if self.detail:
            d["detail"] = self.detail
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Edit":
        return cls(d["span"][0], d["span"][1], d["original"], d["replacement"],
                   EditCategory(d["category"]), d.get("detail"))


def match_case(original: str, replacement: str) -> str:
    """Copy the casing pattern of `original` onto `replacement`."""
    letters = [c for c in original if c.isalpha()]
    if not letters:
        return replacement.lower()
    # "'S" counts as all-caps, a lone "I" or "A" as title case
    if all(c.isupper() for c in letters) and (len(letters) > 1 or not original[0].isalpha()):
        return replacement.upper()
    if letters[0].isupper() and all(c.islower() for c in letters[1:]):
        low = replacement.lower()
        for k, c in enumerate(low):
            if c.isalpha():
                return low[:k] + c.upper() + low[k + 1:]
        return low
    return replacement.lower()


def make_edit(s: Sentence, start: int, end: int, replacement: str,
              category: EditCategory, detail: str | None = None) -> Edit:
    original = " ".join(t.surface for t in s.tokens[start:end])
    return Edit(start, end, original, replacement, category, detail)


def apply_edits(s: Sentence, edits: Iterable[Edit]) -> Sentence:
    """Apply non-overlapping edits whose spans index into `s`."""
    ordered = sorted(edits, key=lambda e: e.start)
    for a, b in zip(ordered, ordered[1:]):
        if b.start < a.end:
            raise ValueError(f"overlapping edits {a.token_span} and {b.token_span}")
    for e in reversed(ordered):
        got = " ".join(t.surface for t in s.tokens[e.start:e.end])
        if got != e.original:
            raise ValueError(f"edit expects {e.original!r} at {e.token_span}, found {got!r}")
        s = replace_span(s, e.start, e.end, e.replacement)
    return s
