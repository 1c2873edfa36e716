"""Rule-based rewriting of binary pronouns into singular they.

The pipeline per sentence: tokenize, annotate, map every he/she/her/hers/
his/him/himself/herself by grammatical role, rewrite 's after he/she,
pluralize verbs that agreed with a rewritten subject, then (optionally)
nouns and titles.
"""

from __future__ import annotations

import enum
import hashlib
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .annotate import default_lexicon as default_tag_lexicon
from .annotate import (
    AnnotatedSentence, CliticRole, HerRole, HisRole, NOMINATIVE, Source,
    annotate, classify_clitic_s, classify_her, classify_his, third_singular_base,
)
from .edits import Edit, EditCategory, apply_edits, make_edit, match_case
from .nouns import NounLexicon, default_lexicon, neutralize_nouns
from .text import APOSTROPHES, Sentence, detokenize, is_clitic, tokenize

log = logging.getLogger(__name__)

TARGET_FORMS = ("he", "she", "her", "hers", "his", "him", "himself", "herself")


class ContractionStyle(enum.Enum):
    PRESERVE = "preserve"
    EXPAND = "expand"


# (form, role) -> neutral form
PRONOUN_MAP: dict[tuple[str, str], str] = {
    ("he", "nominative"): "they",
    ("she", "nominative"): "they",
    ("him", "objective"): "them",
    ("her", "objective"): "them",
    ("her", "possessive_det"): "their",
    ("his", "possessive_det"): "their",
    ("his", "independent_possessive"): "theirs",
    ("hers", "independent_possessive"): "theirs",
    ("himself", "reflexive"): "themselves",
    ("herself", "reflexive"): "themselves",
}
_ROLE_CATEGORY = {
    "nominative": EditCategory.PRONOUN,
    "objective": EditCategory.PRONOUN,
    "independent_possessive": EditCategory.PRONOUN,
    "possessive_det": EditCategory.DETERMINER,
    "reflexive": EditCategory.REFLEXIVE,
}

_IRREGULAR_PLURAL = {
    "is": "are", "was": "were", "has": "have", "does": "do", "goes": "go",
    "isn't": "aren't", "wasn't": "weren't", "hasn't": "haven't", "doesn't": "don't",
    # halves of Moses-style "doesn 't"
    "isn": "aren", "wasn": "weren", "hasn": "haven", "doesn": "don",
}
_SUBORDINATORS = frozenset("""because that which who whom whose when while if although though since
    unless whereas so as before after until where whether than""".split())
_CHAIN_LIMIT = 15


@dataclass(frozen=True)
class RewriteOptions:
    neutralize_nouns: bool = False
    contraction_style: ContractionStyle = ContractionStyle.PRESERVE
    title_map: Mapping[str, str] | None = None
    lexicon: NounLexicon | None = None   # None: the shipped lexicon


@dataclass(frozen=True)
class RewriteResult:
    output: Sentence
    edits: tuple[Edit, ...]
    input_hash: str
    warnings: tuple[str, ...] = field(default=())
    source_text: str = ""

    @property
    def text(self) -> str:
        return detokenize(self.output)

    @property
    def changed(self) -> bool:
        return bool(self.edits)


def map_pronoun(surface: str, role: str | None = None) -> str:
    """Neutral form of a binary pronoun; `role` may be omitted for unambiguous forms."""
    low = surface.lower()
    roles = [r for (f, r) in PRONOUN_MAP if f == low]
    if not roles:
        raise ValueError(f"{surface!r} is not a binary target form")
    if role is None:
        if len(roles) > 1:
            raise ValueError(f"{surface!r} is ambiguous; give one of {roles}")
        role = roles[0]
    try:
        return PRONOUN_MAP[(low, role)]
    except KeyError:
        raise ValueError(f"{surface!r} cannot have role {role!r}") from None


def map_clitic(host: str, role: CliticRole, style: ContractionStyle = ContractionStyle.PRESERVE,
               surface: str = "'s") -> str:
    """Replacement for the 's that followed a rewritten he/she."""
    if host.lower() not in ("they", "he", "she"):
        raise ValueError(f"clitic host must be a rewritten he/she, got {host!r}")
    if role is CliticRole.POSSESSIVE:
        raise ValueError("possessive 's is never rewritten")
    apostrophe = surface[0] if surface[:1] in APOSTROPHES else "'"
    if style is ContractionStyle.EXPAND:
        word = "are" if role is CliticRole.IS else "have"
    else:
        word = apostrophe + ("re" if role is CliticRole.IS else "ve")
    return match_case(surface, word)


def pluralize_verb(form: str) -> str:
    """Plural present form of a 3rd-person-singular verb; anything else is returned as is."""
    low = form.lower().replace("’", "'")
    if low in _IRREGULAR_PLURAL:
        out = _IRREGULAR_PLURAL[low]
        if "’" in form:
            out = out.replace("'", "’")
        return match_case(form, out)
    if not low.isalpha() or not low.endswith("s") or low.endswith(("ss", "us", "is")) or len(low) < 3:
        return form
    known = default_tag_lexicon().lookup(low)
    if known and not any(t.startswith("VERB") for t in known):
        return form
    base = third_singular_base(low)
    if base is None:
        if low.endswith("ies") and len(low) > 4:
            base = low[:-3] + "y"
        elif low.endswith(("sses", "zzes", "xes", "ches", "shes", "oes")):
            base = low[:-2]
        else:
            base = low[:-1]
    return match_case(form, base)


def _is_agreeing_verb(a: AnnotatedSentence, j: int) -> bool:
    return a.pos(j) == "VERB_FIN_3SG" and not is_clitic(a.sentence.tokens[j].surface)


def _verb_edit(a: AnnotatedSentence, j: int) -> Edit:
    surface = a.sentence.tokens[j].surface
    return make_edit(a.sentence, j, j + 1, pluralize_verb(surface), EditCategory.VERB_AGREEMENT)


def _external_agreement(a: AnnotatedSentence, subject: int) -> list[int]:
    head = a.annotations[subject].head
    verbs = {head}
    verbs.update(j for j in range(subject + 1, len(a)) if a.annotations[j].head == head
                 and a.pos(j) == "VERB_FIN_3SG" and a.annotations[j].relation != "conj")
    has_own_subject = {a.annotations[j].head for j in range(len(a))
                       if a.annotations[j].relation == "nsubj" and j != subject}
    for j in range(len(a)):
        if a.annotations[j].relation == "conj" and a.annotations[j].head in verbs and j not in has_own_subject:
            verbs.add(j)
    return sorted(j for j in verbs if j > subject and _is_agreeing_verb(a, j))


def _inverted_aux(a: AnnotatedSentence, subject: int) -> int | None:
    j = subject - 1
    if j < 0 or not _is_agreeing_verb(a, j) or a.lower(j) not in _IRREGULAR_PLURAL:
        return None
    if j == 0 or a.pos(j - 1) in ("PUNCT", "ADV") or a.lower(j - 1) in ("what", "who", "which"):
        return j
    return None


def _find_governed_verb(a: AnnotatedSentence, subject: int) -> int | None:
    n, j = len(a), subject + 1
    while j < n:
        low, pos = a.lower(j), a.pos(j)
        if pos == "ADV":
            j += 1
        elif low == ",":
            # parenthetical or relative clause: jump past the closing comma
            close = next((k for k in range(j + 1, min(n, j + _CHAIN_LIMIT)) if a.lower(k) == ","), None)
            if close is None:
                return None
            j = close + 1
        elif pos in ("VERB_FIN_3SG", "VERB_FIN_PL", "VERB_PAST", "VERB_PART", "VERB_GER", "MODAL"):
            return j
        else:
            return None
    return None


def _conjoined_verbs(a: AnnotatedSentence, verb: int) -> list[int]:
    out, n, k = [], len(a), verb + 1
    while k < n and k <= verb + _CHAIN_LIMIT:
        low, pos = a.lower(k), a.pos(k)
        if (pos == "PUNCT" and low != ",") or low in _SUBORDINATORS or (pos == "PRON" and low in NOMINATIVE):
            break
        if pos == "CONJ" or low == ",":
            m = k + 1
            while m < n and a.pos(m) == "ADV":
                m += 1
            if m < n and _is_agreeing_verb(a, m):
                out.append(m)
                k = m + 1
                continue
        k += 1
    return out


def fix_agreement(a: AnnotatedSentence, subject_index: int) -> list[Edit]:
    """VERB_AGREEMENT edits for verbs governed by the (former) he/she at `subject_index`."""
    if a.source is Source.EXTERNAL and a.annotations[subject_index].head is not None:
        targets = _external_agreement(a, subject_index)
    else:
        targets = []
        verb = _find_governed_verb(a, subject_index)
        if verb is not None:
            if _is_agreeing_verb(a, verb):
                targets.append(verb)
            targets.extend(_conjoined_verbs(a, verb))
    inv = _inverted_aux(a, subject_index)
    if inv is not None:
        targets.insert(0, inv)
    return [_verb_edit(a, j) for j in targets]


def _usable_annotations(s: Sentence, given: AnnotatedSentence | None, warnings: list[str]) -> AnnotatedSentence:
    if given is None:
        return annotate(s)
    if given.sentence.surfaces != s.surfaces:
        msg = (f"external annotation has {len(given)} tokens, sentence has {len(s)}; "
               "using built-in annotation")
        log.warning(msg)
        warnings.append(msg)
        return annotate(s)
    return AnnotatedSentence(s, given.annotations, given.source)


def rewrite(text: str, opts: RewriteOptions | None = None,
            annotations: AnnotatedSentence | None = None) -> RewriteResult:
    opts = opts or RewriteOptions()
    warnings: list[str] = []
    s = tokenize(text)
    a = _usable_annotations(s, annotations, warnings)
    edits: dict[int, Edit] = {}
    subjects = []

    for i, tok in enumerate(s.tokens):
        low = a.lower(i)
        if low in ("he", "she"):
            role = "nominative"
            subjects.append(i)
        elif low == "him":
            role = "objective"
        elif low == "her":
            role = "objective" if classify_her(a, i) is HerRole.OBJECTIVE else "possessive_det"
        elif low == "his":
            role = "possessive_det" if classify_his(a, i) is HisRole.POSSESSIVE_DET else "independent_possessive"
        elif low == "hers":
            role = "independent_possessive"
        elif low in ("himself", "herself"):
            role = "reflexive"
        elif low == "'s":
            crole = classify_clitic_s(a, i)
            if crole is not CliticRole.POSSESSIVE:
                repl = map_clitic("they", crole, opts.contraction_style, tok.surface)
                edits[i] = make_edit(s, i, i + 1, repl, EditCategory.CLITIC)
            continue
        else:
            continue
        repl = match_case(tok.surface, map_pronoun(low, role))
        edits[i] = make_edit(s, i, i + 1, repl, _ROLE_CATEGORY[role])

    for subj in subjects:
        for e in fix_agreement(a, subj):
            edits.setdefault(e.start, e)

    if opts.title_map:
        titles = {k.lower(): v for k, v in opts.title_map.items()}
        for i, tok in enumerate(s.tokens):
            if i not in edits and tok.surface.lower() in titles:
                edits[i] = make_edit(s, i, i + 1, match_case(tok.surface, titles[tok.surface.lower()]),
                                     EditCategory.TITLE)

    if opts.neutralize_nouns:
        lex = opts.lexicon if opts.lexicon is not None else default_lexicon()
        for e in neutralize_nouns(s, lex, skip=edits.keys()):
            edits[e.start] = e

    ordered = tuple(sorted(edits.values(), key=lambda e: e.start))
    return RewriteResult(apply_edits(s, ordered), ordered,
                         hashlib.sha256(text.encode("utf-8")).hexdigest(), tuple(warnings), text)


def _rewrite_chunk(args):
    lines, opts = args
    return [rewrite(line, opts) for line in lines]


def rewrite_lines(lines: Iterable[str], opts: RewriteOptions | None = None,
                  annotations: Iterable[AnnotatedSentence | None] | None = None,
                  workers: int = 1, chunk_size: int = 512) -> Iterator[RewriteResult]:
    """Rewrite a stream of lines (trailing newlines stripped), preserving order.

    With workers > 1 the lines are processed in bounded chunks by a process
    pool; external annotations force sequential processing.
    """
    opts = opts or RewriteOptions()
    stripped = (line[:-1] if line.endswith("\n") else line for line in lines)
    if annotations is not None:
        for line, ann in itertools.zip_longest(stripped, annotations):
            if line is None:
                raise ValueError("more annotation blocks than input lines")
            yield rewrite(line, opts, ann)
        return
    if workers <= 1:
        for line in stripped:
            yield rewrite(line, opts)
        return
    with ProcessPoolExecutor(workers) as pool:
        while True:
            batch = list(itertools.islice(stripped, chunk_size * workers))
            if not batch:
                break
            chunks = [batch[k:k + chunk_size] for k in range(0, len(batch), chunk_size)]
            for results in pool.map(_rewrite_chunk, [(c, opts) for c in chunks]):
                yield from results
