"""Rule-based gender-neutral rewriting for English (singular they)."""

from .annotate import AnnotatedSentence, CliticRole, HerRole, HisRole, annotate, load_external_annotations
from .corpus import balanced_sample, count_forms, generate_parallel
from .edits import Edit, EditCategory, match_case
from .evaluation import EvalReport, ErrorCategory, classify_diffs, evaluate, wer
from .nouns import NounLexicon, load_lexicon, neutralize_nouns
from .rewrite import (
    ContractionStyle, RewriteOptions, RewriteResult, fix_agreement, map_clitic, map_pronoun,
    pluralize_verb, rewrite, rewrite_lines,
)
from .text import Sentence, Token, detokenize, tokenize

__version__ = "0.1.0"
