"""WER of the rewriter on parallel gendered/neutral benchmarks.

Each benchmark is a pair NAME.src / NAME.ref (one sentence per line) in
--data-dir. BASE is the source scored against the reference; SYSTEM is the
rewriter output scored against the reference.

    python scripts/reproduce_wer.py --data-dir benchmarks/ [--conllu-dir parses/]
"""

import argparse
import sys
from pathlib import Path

from neutral_rewriter.annotate import load_external_annotations
from neutral_rewriter.evaluation import evaluate_lines
from neutral_rewriter.rewrite import rewrite_lines


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data-dir", type=Path, required=True)
    ap.add_argument("--conllu-dir", type=Path, help="optional NAME.conllu parses of the sources")
    ap.add_argument("--mode", choices=["tokenized", "raw"], default="tokenized")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    pairs = sorted(p.with_suffix("") for p in args.data_dir.glob("*.src") if p.with_suffix(".ref").exists())
    if not pairs:
        sys.exit(f"no NAME.src/NAME.ref pairs in {args.data_dir}")

    print(f"{'benchmark':<20}{'n':>7}{'BASE':>9}{'SYSTEM':>9}")
    for stem in pairs:
        src = stem.with_suffix(".src").read_text("utf-8").splitlines()
        ref = stem.with_suffix(".ref").read_text("utf-8").splitlines()
        ann = None
        if args.conllu_dir and (args.conllu_dir / f"{stem.name}.conllu").exists():
            ann = load_external_annotations(args.conllu_dir / f"{stem.name}.conllu", src)
        hyp = [r.text for r in rewrite_lines(src, annotations=ann, workers=args.workers)]
        rep = evaluate_lines(src, hyp, ref, mode=args.mode)
        print(f"{stem.name:<20}{rep.sentence_count:>7}{rep.base_wer:>9.2f}{rep.system_wer:>9.2f}")
        for cat, k in sorted(rep.error_counts.items()):
            print(f"    {cat:<16}{k:>6}")


if __name__ == "__main__":
    main()
