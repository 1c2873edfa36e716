"""Lexicon-driven replacement of gender-marked nouns.

Matching is longest-first over whole tokens; a hyphenated token is also
searched part by part so "chairman-elect" becomes "chairperson-elect".
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from .edits import Edit, EditCategory, make_edit, match_case
from .text import Sentence, tokenize

CATEGORIES = ("JOB_TITLE", "FEMININE_FORM", "GENERIC_MAN")
MAX_PHRASE = 5
LEXICON_ENV = "NEUTRAL_REWRITER_LEXICON"


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class LexiconEntry:
    source: tuple[str, ...]   # tokenized, lowercase
    target: str
    category: str


@dataclass(frozen=True)
class NounLexicon:
    entries: tuple[LexiconEntry, ...]

    def __post_init__(self):
        index = {}
        for e in self.entries:
            index.setdefault(e.source, e)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_max_len", max((len(e.source) for e in self.entries), default=0))

    def __len__(self):
        return len(self.entries)

    def get(self, source: tuple[str, ...]) -> LexiconEntry | None:
        return self._index.get(source)

    @property
    def max_len(self) -> int:
        return self._max_len


def parse_lexicon(lines: Iterable[str], name: str = "<lexicon>") -> NounLexicon:
    entries, seen = [], {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3 or not cols[0].strip() or not cols[1].strip():
            raise LexiconError(f"{name}:{lineno}: expected 'source<TAB>target<TAB>category'")
        src, tgt, cat = cols[0].strip().lower(), cols[1].strip(), cols[2].strip()
        if cat not in CATEGORIES:
            raise LexiconError(f"{name}:{lineno}: unknown category {cat!r}")
        key = tuple(t.lower() for t in tokenize(src).surfaces)
        if not 1 <= len(key) <= MAX_PHRASE:
            raise LexiconError(f"{name}:{lineno}: source must be 1-{MAX_PHRASE} tokens")
        if key in seen:
            raise LexiconError(f"{name}:{lineno}: duplicate source {src!r} (first at line {seen[key]})")
        seen[key] = lineno
        entries.append(LexiconEntry(key, tgt, cat))
    entries.sort(key=lambda e: (-len(e.source), e.source))
    return NounLexicon(tuple(entries))


def load_lexicon(path: str | Path) -> NounLexicon:
    path = Path(path)
    with path.open(encoding="utf-8") as f:
        return parse_lexicon(f, str(path))


@lru_cache(maxsize=None)
def builtin_lexicon(verbatim: bool = False) -> NounLexicon:
    name = "nouns_verbatim.tsv" if verbatim else "nouns.tsv"
    text = (resources.files("neutral_rewriter") / "data" / name).read_text("utf-8")
    return parse_lexicon(text.splitlines(), name)


def default_lexicon() -> NounLexicon:
    """The shipped lexicon, unless NEUTRAL_REWRITER_LEXICON points elsewhere."""
    override = os.environ.get(LEXICON_ENV)
    return load_lexicon(override) if override else builtin_lexicon()


def _match_parts(surface: str, lex: NounLexicon) -> tuple[str, str] | None:
    parts = surface.split("-")
    if len(parts) < 2:
        return None
    out, changed, i = [], None, 0
    while i < len(parts):
        for n in range(min(len(parts) - i, MAX_PHRASE), 0, -1):
            entry = lex.get(("-".join(parts[i:i + n]).lower(),))
            if entry is not None and " " not in entry.target:
                out.append(match_case("-".join(parts[i:i + n]), entry.target))
                changed = changed or entry.category
                i += n
                break
        else:
            out.append(parts[i])
            i += 1
    return ("-".join(out), changed) if changed else None


def neutralize_nouns(s: Sentence, lex: NounLexicon | None = None,
                     skip: Iterable[int] = ()) -> list[Edit]:
    """Return NOUN edits for lexicon phrases in `s`; tokens in `skip` are never touched."""
    lex = lex if lex is not None else default_lexicon()
    skip = set(skip)
    lows = [t.surface.lower() for t in s.tokens]
    edits, i = [], 0
    while i < len(lows):
        for n in range(min(lex.max_len, len(lows) - i), 0, -1):
            if skip.intersection(range(i, i + n)):
                continue
            entry = lex.get(tuple(lows[i:i + n]))
            if entry is not None:
                repl = match_case(s.tokens[i].surface, entry.target)
                edits.append(make_edit(s, i, i + n, repl, EditCategory.NOUN, entry.category))
                i += n
                break
        else:
            if i not in skip and "-" in lows[i]:
                hit = _match_parts(s.tokens[i].surface, lex)
                if hit is not None:
                    edits.append(make_edit(s, i, i + 1, hit[0], EditCategory.NOUN, hit[1]))
            i += 1
    return edits
