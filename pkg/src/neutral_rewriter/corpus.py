"""Balanced extraction of gendered sentences and parallel-corpus generation."""

from __future__ import annotations

import logging
import math
import random
from collections import Counter
from contextlib import ExitStack
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

from .rewrite import TARGET_FORMS, RewriteOptions, rewrite_lines
from .text import Sentence, tokenize

log = logging.getLogger(__name__)


class CorpusIOError(OSError):
    pass


@dataclass(frozen=True)
class FormCensus:
    counts: dict[str, int]

    def __post_init__(self):
        if set(self.counts) != set(TARGET_FORMS):
            raise ValueError(f"census keys must be exactly {TARGET_FORMS}")

    def __getitem__(self, form: str) -> int:
        return self.counts[form]

    def present(self) -> set[str]:
        return {f for f, n in self.counts.items() if n}


def count_forms(s: Sentence | str) -> FormCensus:
    if isinstance(s, str):
        s = tokenize(s)
    c = Counter(t.surface.lower() for t in s.tokens)
    return FormCensus({f: c[f] for f in TARGET_FORMS})


@dataclass
class SampleResult:
    lines: list[str]
    quota: int
    form_lines: dict[str, int]          # selected lines containing each form
    shortfall: dict[str, int] = field(default_factory=dict)   # form -> lines still missing

    @property
    def satisfied(self) -> bool:
        return not self.shortfall


def balanced_sample(corpus: Iterable[str], n: int, seed: int = 0) -> SampleResult:
    """Pick at most `n` distinct lines so each target form appears in ceil(n/8) of them.

    Lines are visited in a seeded shuffle; a line is taken when it contains
    a form whose quota is still open. Stops once every quota is met or `n`
    lines are taken.
    """
    if n < len(TARGET_FORMS):
        raise ValueError(f"n must be at least {len(TARGET_FORMS)}, got {n}")
    quota = math.ceil(n / len(TARGET_FORMS))
    pool = list(dict.fromkeys(line.rstrip("\n") for line in corpus))
    random.Random(seed).shuffle(pool)
    have = dict.fromkeys(TARGET_FORMS, 0)
    chosen: list[str] = []
    for line in pool:
        if len(chosen) >= n or all(v >= quota for v in have.values()):
            break
        present = count_forms(line).present()
        if any(have[f] < quota for f in present):
            chosen.append(line)
            for f in present:
                have[f] += 1
    shortfall = {f: quota - v for f, v in have.items() if v < quota}
    if shortfall:
        log.warning("sample short of quota %d for: %s", quota,
                    ", ".join(f"{f} (-{k})" for f, k in shortfall.items()))
    return SampleResult(chosen, quota, have, shortfall)


@dataclass
class ParallelStats:
    lines: int = 0
    changed: int = 0
    categories: Counter = field(default_factory=Counter)

    def to_json(self) -> dict:
        return {"lines": self.lines, "changed": self.changed, "unchanged": self.lines - self.changed,
                "categories": dict(sorted(self.categories.items()))}


def _open_out(stack: ExitStack, target) -> tuple[IO[str], str]:
    if isinstance(target, (str, Path)):
        try:
            return stack.enter_context(open(target, "w", encoding="utf-8", newline="")), str(target)
        except OSError as e:
            raise CorpusIOError(f"cannot open {target}: {e}") from e
    return target, getattr(target, "name", "<stream>")


def generate_parallel(corpus: Iterable[str], opts: RewriteOptions | None, out_src, out_tgt,
                      workers: int = 1) -> ParallelStats:
    """Write each input line to `out_src` and its rewrite to `out_tgt`."""
    stats = ParallelStats()
    with ExitStack() as stack:
        src_f, src_name = _open_out(stack, out_src)
        tgt_f, tgt_name = _open_out(stack, out_tgt)
        for result in rewrite_lines(corpus, opts, workers=workers):
            try:
                src_f.write(result.source_text + "\n")
            except OSError as e:
                raise CorpusIOError(f"writing {src_name}: {e}") from e
            try:
                tgt_f.write(result.text + "\n")
            except OSError as e:
                raise CorpusIOError(f"writing {tgt_name}: {e}") from e
            stats.lines += 1
            stats.changed += result.changed
            stats.categories.update(e.category.value for e in result.edits)
    return stats
