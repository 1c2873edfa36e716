"""Build a balanced gendered subset of a corpus and its singular-they targets.

    python scripts/make_training_data.py corpus.txt out/ --n 80000 --seed 1 --workers 4

Writes out/sample.txt, out/train.src and out/train.tgt, and prints stats as JSON.
"""

import argparse
import json
from pathlib import Path

from neutral_rewriter.corpus import balanced_sample, generate_parallel
from neutral_rewriter.rewrite import RewriteOptions


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus", type=Path)
    ap.add_argument("out_dir", type=Path)
    ap.add_argument("--n", type=int, required=True, help="sample size (quota is ceil(n/8) lines per form)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--nouns", action="store_true")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    with args.corpus.open(encoding="utf-8") as f:
        sample = balanced_sample((line.rstrip("\n") for line in f if line.strip()), args.n, args.seed)
    (args.out_dir / "sample.txt").write_text("".join(line + "\n" for line in sample.lines), encoding="utf-8")

    stats = generate_parallel(sample.lines, RewriteOptions(neutralize_nouns=args.nouns),
                              args.out_dir / "train.src", args.out_dir / "train.tgt", workers=args.workers)
    print(json.dumps({"sampled": len(sample.lines), "quota": sample.quota, "form_lines": sample.form_lines,
                      "shortfall": sample.shortfall, "parallel": stats.to_json()}, indent=2))


if __name__ == "__main__":
    main()
