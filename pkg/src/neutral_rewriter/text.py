"""Lossless Moses-style tokenization.

Tokens remember the exact whitespace that preceded them, so an unedited
sentence detokenizes back to its source byte for byte.
"""

from __future__ import annotations

import string
import unicodedata
from dataclasses import dataclass, replace

APOSTROPHES = ("'", "’")
CLITICS = ("'s", "n't", "'re", "'ve", "'ll", "'d", "'m")
# Stand-alone forms found in already-tokenized text ("does n't", "doesn 't").
_STANDALONE_CLITICS = {"s", "re", "ve", "ll", "d", "m", "t"}
_ASCII_PUNCT = frozenset(string.punctuation)


@dataclass(frozen=True)
class Token:
    surface: str
    leading_whitespace: str = ""
    index: int = 0


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    source_text: str
    trailing_whitespace: str = ""

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, i: int) -> Token:
        return self.tokens[i]

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]


def normalize_apostrophes(s: str) -> str:
    return s.replace("’", "'")


def is_clitic(surface: str) -> bool:
    low = normalize_apostrophes(surface).lower()
    return low in CLITICS or low == "'t"


def _is_word_char(c: str) -> bool:
    return c.isalnum() or c == "_" or unicodedata.category(c).startswith("M")


def _split_chunk(chunk: str) -> list[str]:
    """Split a whitespace-free chunk into token surfaces."""
    out = []
    i, n = 0, len(chunk)
    while i < n:
        c = chunk[i]
        if _is_word_char(c):
            j = i + 1
            while j < n:
                d = chunk[j]
                if _is_word_char(d):
                    j += 1
                elif (d in APOSTROPHES or d == "-") and j + 1 < n and _is_word_char(chunk[j + 1]):
                    j += 2
                elif d in ".," and chunk[j - 1].isdigit() and j + 1 < n and chunk[j + 1].isdigit():
                    j += 2
                else:
                    break
            out.extend(_split_clitic(chunk[i:j]))
            i = j
        elif c in APOSTROPHES:
            # bare clitic in pre-tokenized text: "He 's", "does n't"
            j = i + 1
            while j < n and chunk[j].isalpha():
                j += 1
            word = chunk[i + 1:j].lower()
            if word in _STANDALONE_CLITICS and (j == n or not _is_word_char(chunk[j])):
                out.append(chunk[i:j])
                i = j
            else:
                out.append(c)
                i += 1
        elif c == "." and chunk.startswith("...", i):
            j = i
            while j < n and chunk[j] == ".":
                j += 1
            out.append(chunk[i:j])
            i = j
        elif c in _ASCII_PUNCT:
            out.append(c)
            i += 1
        else:
            # emoji and other symbols: one token per run
            j = i + 1
            while j < n and not _is_word_char(chunk[j]) and chunk[j] not in _ASCII_PUNCT \
                    and chunk[j] not in APOSTROPHES:
                j += 1
            out.append(chunk[i:j])
            i = j
    return out


def _split_clitic(word: str) -> list[str]:
    norm = normalize_apostrophes(word).lower()
    if norm.endswith("n't") and len(norm) > 3:
        return _split_clitic(word[:-3]) + [word[-3:]]
    for clitic in CLITICS:
        if clitic != "n't" and norm.endswith(clitic) and len(norm) > len(clitic):
            k = len(clitic)
            return _split_clitic(word[:-k]) + [word[-k:]]
    return [word]


def tokenize(text: str) -> Sentence:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        j = i
        while j < n and text[j].isspace():
            j += 1
        if j == n:
            break
        k = j
        while k < n and not text[k].isspace():
            k += 1
        ws = text[i:j]
        for surface in _split_chunk(text[j:k]):
            tokens.append(Token(surface, ws, len(tokens)))
            ws = ""
        i = k
    trailing = text[i:] if i < n else ""
    return Sentence(tuple(tokens), text, trailing)


def detokenize(s: Sentence) -> str:
    return "".join(t.leading_whitespace + t.surface for t in s.tokens) + s.trailing_whitespace


def replace_span(s: Sentence, start: int, end: int, replacement: str) -> Sentence:
    """Replace tokens[start:end] with the space-separated words of `replacement`.

    The first new token inherits the leading whitespace of tokens[start].
    A bare clitic that turns into a full word gets a separating space.
    """
    if not 0 <= start < end <= len(s.tokens):
        raise IndexError(f"bad span [{start}, {end}) for {len(s.tokens)} tokens")
    words = replacement.split(" ")
    first = s.tokens[start]
    ws = first.leading_whitespace
    if not ws and start > 0 and is_clitic(first.surface) and not words[0].startswith(APOSTROPHES):
        ws = " "
    new = [Token(words[0], ws)] + [Token(w, " ") for w in words[1:]]
    tokens = list(s.tokens[:start]) + new + list(s.tokens[end:])
    tokens = tuple(replace(t, index=i) for i, t in enumerate(tokens))
    out = Sentence(tokens, s.source_text, s.trailing_whitespace)
    return replace(out, source_text=detokenize(out))
