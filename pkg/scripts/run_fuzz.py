"""Fuzz the rewriter with template sentences and report invariant violations.

    python scripts/run_fuzz.py --n 10000 --seed 0 --expand --nouns
"""

import argparse
import time
from collections import Counter

from neutral_rewriter.rewrite import TARGET_FORMS, ContractionStyle, RewriteOptions, rewrite
from neutral_rewriter.synth import fuzz_sentences
from neutral_rewriter.text import tokenize


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--expand", action="store_true", help="expand 's into are/have")
    ap.add_argument("--nouns", action="store_true")
    ap.add_argument("--show", type=int, default=5, help="failures to print per kind")
    args = ap.parse_args()

    opts = RewriteOptions(neutralize_nouns=args.nouns,
                          contraction_style=ContractionStyle.EXPAND if args.expand else ContractionStyle.PRESERVE)
    failures = {"not idempotent": [], "binary form left": []}
    edits = Counter()
    t0 = time.perf_counter()
    for src in fuzz_sentences(args.n, args.seed):
        res = rewrite(src, opts)
        edits.update(e.category.value for e in res.edits)
        if rewrite(res.text, opts).text != res.text:
            failures["not idempotent"].append((src, res.text))
        if {t.lower() for t in tokenize(res.text).surfaces} & set(TARGET_FORMS):
            failures["binary form left"].append((src, res.text))
    elapsed = time.perf_counter() - t0

    print(f"{args.n} sentences in {elapsed:.2f}s ({args.n / elapsed:.0f}/s)")
    for cat, k in sorted(edits.items()):
        print(f"  {cat:<16}{k:>8}")
    for kind, cases in failures.items():
        print(f"{kind}: {len(cases)}")
        for src, out in cases[:args.show]:
            print(f"    {src!r} -> {out!r}")


if __name__ == "__main__":
    main()
