"""Command-line entry point: rewrite, eval, sample, parallel.

Exit status: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import ExitStack
from pathlib import Path

from . import nouns
from .annotate import ConlluError, annotated_from_block, iter_conllu_blocks
from .corpus import CorpusIOError, balanced_sample, generate_parallel
from .evaluation import AlignmentError, evaluate
from .rewrite import ContractionStyle, RewriteOptions, rewrite_lines

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

log = logging.getLogger("neutral_rewriter")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _add_rewrite_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nouns", action="store_true", help="also rewrite gendered nouns")
    p.add_argument("--lexicon", type=Path, help="noun lexicon TSV (implies --nouns)")
    p.add_argument("--verbatim-lexicon", action="store_true",
                   help="use the unnormalized noun lexicon (implies --nouns)")
    p.add_argument("--contractions", choices=["preserve", "expand"], default="preserve")
    p.add_argument("--titles", type=Path, help="TSV of title<TAB>replacement, e.g. Mrs<TAB>Mx")
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="neutral-rewriter", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("rewrite", help="rewrite lines into singular they")
    p.add_argument("input", nargs="?", type=Path, help="input file (default: stdin)")
    p.add_argument("-o", "--output", type=Path, help="output file (default: stdout)")
    p.add_argument("--conllu", type=Path, help="external annotations, one block per input line")
    p.add_argument("--json", action="store_true", help="emit one JSON object per line with its edits")
    _add_rewrite_flags(p)

    p = sub.add_parser("eval", help="WER of a hypothesis file against references")
    p.add_argument("source", type=Path)
    p.add_argument("hypothesis", type=Path)
    p.add_argument("reference", type=Path)
    p.add_argument("--mode", choices=["tokenized", "raw"], default="tokenized")
    p.add_argument("--case-insensitive", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--per-sentence", action="store_true")

    p = sub.add_parser("sample", help="balanced sample over the eight target forms")
    p.add_argument("input", type=Path)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", type=Path)
    p.add_argument("--json", action="store_true", help="print sampling statistics as JSON to stderr")

    p = sub.add_parser("parallel", help="write source/target files for seq2seq training")
    p.add_argument("input", type=Path)
    p.add_argument("--src", type=Path, required=True)
    p.add_argument("--tgt", type=Path, required=True)
    _add_rewrite_flags(p)
    return parser


def _read_titles(path: Path) -> dict[str, str]:
    titles = {}
    with path.open(encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.rstrip("\r\n").split("\t")
            if len(cols) != 2:
                raise DataError(f"{path}:{lineno}: expected 'title<TAB>replacement'")
            titles[cols[0].strip().lower()] = cols[1].strip()
    return titles


def _options(args) -> RewriteOptions:
    use_nouns = args.nouns or args.lexicon is not None or args.verbatim_lexicon
    lexicon = None
    if args.lexicon is not None:
        lexicon = nouns.load_lexicon(args.lexicon)
    elif args.verbatim_lexicon:
        lexicon = nouns.builtin_lexicon(verbatim=True)
    elif use_nouns:
        lexicon = nouns.default_lexicon()
    return RewriteOptions(
        neutralize_nouns=use_nouns,
        contraction_style=ContractionStyle(args.contractions),
        title_map=_read_titles(args.titles) if args.titles else None,
        lexicon=lexicon,
    )


def _open_in(stack: ExitStack, path: Path | None):
    if path is None:
        return sys.stdin
    return stack.enter_context(path.open(encoding="utf-8", newline=""))


def _cmd_rewrite(args) -> int:
    opts = _options(args)
    with ExitStack() as stack:
        src = _open_in(stack, args.input)
        out = stack.enter_context(args.output.open("w", encoding="utf-8", newline="")) if args.output else sys.stdout
        lines = (line[:-1] if line.endswith("\n") else line for line in src)
        annotations = None
        if args.conllu:
            lines = list(lines)
            blocks = list(iter_conllu_blocks(stack.enter_context(args.conllu.open(encoding="utf-8")),
                                             str(args.conllu)))
            if len(blocks) != len(lines):
                raise DataError(f"{args.conllu} has {len(blocks)} sentences, input has {len(lines)} lines")
            annotations = (annotated_from_block(b, line, str(args.conllu)) for b, line in zip(blocks, lines))
        for result in rewrite_lines(lines, opts, annotations=annotations, workers=args.workers):
            for w in result.warnings:
                print(f"warning: {w}", file=sys.stderr)
            if args.json:
                out.write(json.dumps({"output": result.text, "edits": [e.to_json() for e in result.edits]},
                                     ensure_ascii=False) + "\n")
            else:
                out.write(result.text + "\n")
    return EXIT_OK


def _cmd_eval(args) -> int:
    report = evaluate(args.source, args.hypothesis, args.reference, mode=args.mode,
                      case_sensitive=not args.case_insensitive)
    if args.json:
        print(json.dumps(report.to_json(per_sentence=args.per_sentence), indent=2))
    else:
        print(report.table())
    return EXIT_OK


def _cmd_sample(args) -> int:
    if args.n < 8:
        raise UsageError("--n must be at least 8")
    with args.input.open(encoding="utf-8", newline="") as f:
        result = balanced_sample((line.rstrip("\n") for line in f if line.strip()), args.n, args.seed)
    with ExitStack() as stack:
        out = stack.enter_context(args.output.open("w", encoding="utf-8", newline="")) if args.output else sys.stdout
        for line in result.lines:
            out.write(line + "\n")
    if result.shortfall:
        print("warning: quota of %d lines not met for: %s" % (
            result.quota, ", ".join(f"{f} (short {k})" for f, k in result.shortfall.items())), file=sys.stderr)
    if args.json:
        print(json.dumps({"selected": len(result.lines), "quota": result.quota,
                          "form_lines": result.form_lines, "shortfall": result.shortfall}), file=sys.stderr)
    return EXIT_OK


def _cmd_parallel(args) -> int:
    opts = _options(args)
    with args.input.open(encoding="utf-8", newline="") as f:
        stats = generate_parallel(f, opts, args.src, args.tgt, workers=args.workers)
    print(json.dumps(stats.to_json()))
    return EXIT_OK


COMMANDS = {"rewrite": _cmd_rewrite, "eval": _cmd_eval, "sample": _cmd_sample, "parallel": _cmd_parallel}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s: %(message)s", stream=sys.stderr)
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(e, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except (AlignmentError, ConlluError, nouns.LexiconError, DataError, CorpusIOError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as e:
        print(f"error: {e.filename}: no such file", file=sys.stderr)
        return EXIT_DATA
    except BrokenPipeError:
        return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
