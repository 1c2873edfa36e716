"""POS and shallow-dependency evidence for her/his/'s disambiguation.

Two backends: a built-in heuristic tagger driven by the lexicon files in
``data/``, and CoNLL-U files produced by an external tagger/parser.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .text import Sentence, is_clitic, normalize_apostrophes, tokenize

log = logging.getLogger(__name__)

POS_TAGS = (
    "NOUN", "PROPN", "ADJ", "VERB_FIN_3SG", "VERB_FIN_PL", "VERB_PAST", "VERB_PART",
    "VERB_GER", "MODAL", "PRON", "DET", "ADP", "ADV", "CONJ", "PUNCT", "NUM", "OTHER",
)
RELATIONS = ("nsubj", "obj", "poss", "conj", "other")

NOMINATIVE = frozenset({"he", "she", "it", "i", "you", "we", "they", "who", "someone", "somebody",
                        "everyone", "everybody", "nobody", "anyone", "anybody", "one"})
HAVE_FORMS = frozenset({"have", "has", "had", "having", "'ve", "'d", "haven", "hasn", "hadn"})
BE_FORMS = frozenset({"be", "is", "are", "was", "were", "am", "been", "being", "'re", "'m",
                      "isn", "aren", "wasn", "weren"})
_ING_EXCEPTIONS = frozenset("""thing things king kings ring rings spring string strings sing bring
    wing wings sling swing sting morning mornings evening evenings ceiling nothing something anything
    everything during pudding wedding weddings darling building buildings meeting meetings""".split())
# verbs taking "OBJ + bare infinitive": "saw her leave", "made him cry"
_BARE_INF_GOVERNORS = frozenset("""see sees saw seen seeing watch watches watched watching hear hears
    heard hearing feel feels felt feeling make makes made making let lets letting help helps helped
    helping have has had having notice notices noticed""".split())
_OBJECT_PRONOUNS = frozenset({"her", "him", "them", "me", "us"})
# verb bases that are far more often nouns after a possessive
_NOUNISH_BASES = frozenset("""face hand hands head book books dress name work place house home back
    eye eyes mind heart voice smile look hair phone car table room bed coat shirt ring letter letters
    note notes paper papers plan plans point report reports address answer call drink time water
    shoe shoes ticket tickets bag bags key keys dog cat picture photo record sign step walk talk
    way cup lunch dinner break rest change need""".split())
_LY_EXCEPTIONS = frozenset("""family reply supply apply rely fly july italy ugly holy early daily
    silly lonely lovely friendly ally belly bully jelly lily rally""".split())
_EN_EXCEPTIONS = frozenset("""happen happens listen open often seven eleven garden kitchen children
    women citizen heaven sudden golden wooden chicken dozen oxygen token even then when than
    linen omen semen kitten mitten button cotton lemon""".split())
_ADJ_SUFFIXES = ("ful", "ous", "less", "ive", "able", "ible", "ish")


class Source(enum.Enum):
    BUILTIN = "BUILTIN"
    EXTERNAL = "EXTERNAL"


class HerRole(enum.Enum):
    OBJECTIVE = "OBJECTIVE"
    POSSESSIVE_DET = "POSSESSIVE_DET"


class HisRole(enum.Enum):
    POSSESSIVE_DET = "POSSESSIVE_DET"
    INDEPENDENT_POSSESSIVE = "INDEPENDENT_POSSESSIVE"


class CliticRole(enum.Enum):
    IS = "IS"
    HAS = "HAS"
    POSSESSIVE = "POSSESSIVE"


class ConlluError(ValueError):
    pass


@dataclass(frozen=True)
class TokenAnnotation:
    pos: str
    head: int | None = None
    relation: str | None = None


@dataclass(frozen=True)
class AnnotatedSentence:
    sentence: Sentence
    annotations: tuple[TokenAnnotation, ...]
    source: Source = Source.BUILTIN

    def __post_init__(self):
        if len(self.annotations) != len(self.sentence.tokens):
            raise ValueError(f"{len(self.annotations)} annotations for {len(self.sentence.tokens)} tokens")
        for i, ann in enumerate(self.annotations):
            if ann.pos not in POS_TAGS:
                raise ValueError(f"unknown tag {ann.pos!r} at token {i}")
            if ann.head is not None and not (0 <= ann.head < len(self.annotations) and ann.head != i):
                raise ValueError(f"bad head {ann.head} at token {i}")

    def __len__(self):
        return len(self.annotations)

    def pos(self, i: int) -> str:
        return self.annotations[i].pos

    def lower(self, i: int) -> str:
        return normalize_apostrophes(self.sentence.tokens[i].surface).lower()


# -- lexicons ---------------------------------------------------------------

@dataclass(frozen=True)
class Lexicon:
    tags: dict            # form -> tuple of tags, first is the default
    verb_bases: frozenset
    adjectives: frozenset
    participles: frozenset

    def lookup(self, form: str) -> tuple[str, ...]:
        return self.tags.get(form, ())


def read_tag_tsv(lines: Iterable[str], name: str = "<lexicon>") -> dict[str, tuple[str, ...]]:
    tags: dict[str, list[str]] = {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or parts[1] not in POS_TAGS:
            raise ValueError(f"{name}:{lineno}: expected 'form<TAB>tag', got {line!r}")
        form = parts[0].lower()
        if parts[1] not in tags.setdefault(form, []):
            tags[form].append(parts[1])
    return {k: tuple(v) for k, v in tags.items()}


def _word_list(text: str) -> frozenset:
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip() and not w.startswith("#"))


@lru_cache(maxsize=None)
def default_lexicon() -> Lexicon:
    data = resources.files("neutral_rewriter") / "data"
    tags = read_tag_tsv((data / "closed_class.tsv").read_text("utf-8").splitlines(), "closed_class.tsv")
    verbs = read_tag_tsv((data / "verbs.tsv").read_text("utf-8").splitlines(), "verbs.tsv")
    for form, vt in verbs.items():
        tags[form] = tags.get(form, ()) + vt
    participles = frozenset(f for f, vt in verbs.items() if "VERB_PART" in vt)
    return Lexicon(
        tags=tags,
        verb_bases=_word_list((data / "verb_bases.txt").read_text("utf-8")),
        adjectives=_word_list((data / "adjectives.txt").read_text("utf-8")),
        participles=participles,
    )


def third_singular_base(form: str, lex: Lexicon | None = None) -> str | None:
    """Return the verb base if `form` looks like its -s form, else None."""
    lex = lex or default_lexicon()
    cands = []
    if form.endswith("ies") and len(form) > 4:
        cands.append(form[:-3] + "y")
    if form.endswith("es"):
        cands.append(form[:-2])
    if form.endswith("s") and not form.endswith("ss"):
        cands.append(form[:-1])
    for c in cands:
        if c in lex.verb_bases:
            return c
    return None


# -- built-in tagger ----------------------------------------------------------

def _prev(tags: list[str], low: list[str], i: int) -> int:
    """Index of the nearest preceding non-adverb token, or -1."""
    j = i - 1
    while j >= 0 and tags[j] == "ADV":
        j -= 1
    return j


def _clause_has_3sg(tags: list[str], low: list[str], i: int) -> bool:
    j = i - 1
    while j >= 0:
        if tags[j] == "VERB_FIN_3SG":
            return True
        if tags[j] == "PUNCT" and low[j] != ",":
            return False
        if tags[j] == "PRON" and low[j] in NOMINATIVE:
            return False
        j -= 1
    return False


def _tag_s_form(low: str, tags: list[str], lows: list[str], i: int, lex: Lexicon) -> str:
    if third_singular_base(low, lex) is None:
        return "NOUN"
    p = _prev(tags, lows, i)
    if p < 0:
        return "NOUN"
    pt, pw = tags[p], lows[p]
    if pt == "PRON":
        return "VERB_FIN_3SG" if pw in NOMINATIVE else "NOUN"
    if pt in ("NOUN", "PROPN"):
        return "VERB_FIN_3SG"
    if pt == "CONJ" or pw == ",":
        if _clause_has_3sg(tags, lows, p):
            return "VERB_FIN_3SG"
        # "He hurt himself and laughs": a pronoun object closes the first conjunct
        if pt == "CONJ" and p >= 2 and tags[p - 1] == "PRON" and lows[p - 1] not in NOMINATIVE \
                and tags[p - 2] in ("VERB_PAST", "VERB_FIN_3SG"):
            return "VERB_FIN_3SG"
        if pw == ",":
            # "He, however, laughs": subject sits before the opening comma
            k = p - 1
            while k >= 0 and lows[k] != "," and tags[k] != "PUNCT":
                k -= 1
            if k > 0 and lows[k] == ",":
                if (tags[k - 1] == "PRON" and lows[k - 1] in NOMINATIVE) or tags[k - 1] in ("NOUN", "PROPN"):
                    return "VERB_FIN_3SG"
    return "NOUN"


def _tag_token(surface: str, i: int, tags: list[str], lows: list[str], lex: Lexicon) -> str:
    low = lows[i]
    if not any(c.isalnum() for c in surface):
        return "PUNCT"
    if is_clitic(surface):
        if low == "'s":
            host = lows[i - 1] if i else ""
            return "VERB_FIN_3SG" if host in NOMINATIVE or host in ("that", "there", "what", "where", "how", "here") \
                else "OTHER"
        if low in ("n't", "'t"):
            return "ADV"
        return lex.lookup(low)[0] if lex.lookup(low) else "OTHER"
    if low.replace(",", "").replace(".", "").isdigit():
        return "NUM"
    known = lex.lookup(low)
    p = _prev(tags, lows, i)
    after_aux = p >= 0 and (lows[p] in HAVE_FORMS or lows[p] in BE_FORMS or
                            (lows[p] == "'s" and tags[p] == "VERB_FIN_3SG"))
    if (low in lex.verb_bases and i >= 2 and lows[i - 1] in _OBJECT_PRONOUNS
            and lows[i - 2] in _BARE_INF_GOVERNORS and low not in _NOUNISH_BASES):
        return "OTHER"
    if known:
        if len(known) > 1 and "VERB_PART" in known and after_aux:
            return "VERB_PART"
        return known[0]
    if low in lex.adjectives:
        return "ADJ"
    if i > 0 and surface[0].isupper():
        return "PROPN"
    if low.endswith("ing") and len(low) >= 5 and low not in _ING_EXCEPTIONS:
        return "VERB_GER"
    if low.endswith("ed") and len(low) >= 4:
        if after_aux:
            return "VERB_PART"
        if p >= 0 and tags[p] in ("DET", "ADP"):
            return "ADJ"
        return "VERB_PAST"
    if low.endswith("ly") and len(low) >= 4 and low not in _LY_EXCEPTIONS:
        return "ADV"
    if low.endswith(_ADJ_SUFFIXES) and len(low) >= 6:
        return "ADJ"
    if low.endswith("s"):
        return _tag_s_form(low, tags, lows, i, lex)
    return "NOUN"


def annotate(s: Sentence, lex: Lexicon | None = None) -> AnnotatedSentence:
    lex = lex or default_lexicon()
    lows = [normalize_apostrophes(t.surface).lower() for t in s.tokens]
    tags: list[str] = []
    for i, tok in enumerate(s.tokens):
        tags.append(_tag_token(tok.surface, i, tags, lows, lex))
    return AnnotatedSentence(s, tuple(TokenAnnotation(t) for t in tags), Source.BUILTIN)


# -- disambiguation -------------------------------------------------------------

_NOMINAL = ("NOUN", "PROPN", "NUM")
SCAN_LIMIT = 3


def _nominal_follows(a: AnnotatedSentence, i: int) -> bool:
    for j in range(i + 1, min(i + 1 + SCAN_LIMIT, len(a))):
        pos = a.pos(j)
        if pos in _NOMINAL:
            return True
        if pos not in ("ADV", "ADJ"):
            return False
    return False


def _external_poss(a: AnnotatedSentence, i: int) -> bool:
    return a.source is Source.EXTERNAL and a.annotations[i].relation == "poss"


def classify_her(a: AnnotatedSentence, i: int) -> HerRole:
    if a.lower(i) != "her":
        raise ValueError(f"token {i} is {a.sentence.tokens[i].surface!r}, not 'her'")
    if _external_poss(a, i) or _nominal_follows(a, i):
        return HerRole.POSSESSIVE_DET
    return HerRole.OBJECTIVE


def classify_his(a: AnnotatedSentence, i: int) -> HisRole:
    if a.lower(i) != "his":
        raise ValueError(f"token {i} is {a.sentence.tokens[i].surface!r}, not 'his'")
    if _external_poss(a, i) or _nominal_follows(a, i):
        return HisRole.POSSESSIVE_DET
    return HisRole.INDEPENDENT_POSSESSIVE


def is_participle(form: str, lex: Lexicon | None = None) -> bool:
    lex = lex or default_lexicon()
    if form in lex.adjectives:
        return False
    if form in lex.participles:
        return True
    if lex.lookup(form):
        return False
    if form.endswith("ed") and len(form) >= 4:
        return True
    return form.endswith("en") and len(form) >= 5 and not form.endswith("een") and form not in _EN_EXCEPTIONS


def classify_clitic_s(a: AnnotatedSentence, i: int, lex: Lexicon | None = None) -> CliticRole:
    """Read 's as a form of be or have after he/she; anything else is possessive."""
    if a.lower(i) != "'s":
        raise ValueError(f"token {i} is {a.sentence.tokens[i].surface!r}, not \"'s\"")
    if i == 0 or a.lower(i - 1) not in ("he", "she"):
        return CliticRole.POSSESSIVE
    j = i + 1
    while j < len(a) and j <= i + SCAN_LIMIT and a.pos(j) == "ADV":
        j += 1
    if j < len(a) and (a.pos(j) == "VERB_PART" or is_participle(a.lower(j), lex)):
        lex = lex or default_lexicon()
        # "He's hurt." reads as a predicate adjective, "He's hurt her." as a perfect
        ends = j + 1 == len(a) or a.pos(j + 1) in ("PUNCT", "CONJ")
        if a.lower(j) in lex.adjectives and ends:
            return CliticRole.IS
        return CliticRole.HAS
    return CliticRole.IS


# -- CoNLL-U ----------------------------------------------------------------------

_UPOS = {
    "NOUN": "NOUN", "PROPN": "PROPN", "ADJ": "ADJ", "PRON": "PRON", "DET": "DET", "ADP": "ADP",
    "ADV": "ADV", "CCONJ": "CONJ", "SCONJ": "CONJ", "PUNCT": "PUNCT", "NUM": "NUM", "PART": "ADV",
}
_XPOS_VERB = {
    "VBZ": "VERB_FIN_3SG", "VBP": "VERB_FIN_PL", "VBD": "VERB_PAST", "VBN": "VERB_PART",
    "VBG": "VERB_GER", "MD": "MODAL",
}
_DEPREL = {"nsubj": "nsubj", "obj": "obj", "iobj": "obj", "poss": "poss", "conj": "conj"}


def _map_pos(upos: str, xpos: str) -> str:
    if xpos in _XPOS_VERB:
        return _XPOS_VERB[xpos]
    if upos in ("VERB", "AUX"):
        return "OTHER"
    return _UPOS.get(upos, "OTHER")


def _map_relation(deprel: str) -> str | None:
    if deprel == "_":
        return None
    base, _, sub = deprel.partition(":")
    if sub == "poss":
        return "poss"
    return _DEPREL.get(base, "other")


@dataclass
class _Block:
    lineno: int
    text: str | None
    rows: list


def iter_conllu_blocks(lines: Iterable[str], name: str = "<conllu>") -> Iterator[_Block]:
    block = None
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip():
            if block is not None and block.rows:
                yield block
            block = None
            continue
        if block is None:
            block = _Block(lineno, None, [])
        if line.startswith("#"):
            key, sep, value = line[1:].partition("=")
            if sep and key.strip() == "text":
                block.text = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluError(f"malformed CoNLL-U at line {lineno} of {name}: {len(cols)} columns")
        tid = cols[0]
        if "-" in tid or "." in tid:
            continue  # multiword ranges and empty nodes
        if not tid.isdigit() or not (cols[6] == "_" or cols[6].isdigit()):
            raise ConlluError(f"malformed CoNLL-U at line {lineno} of {name}: bad ID or HEAD")
        block.rows.append((lineno, cols))
    if block is not None and block.rows:
        yield block


def _block_text(block: _Block) -> str:
    parts = []
    for _, cols in block.rows:
        parts.append(cols[1])
        if "SpaceAfter=No" not in cols[9].split("|"):
            parts.append(" ")
    return "".join(parts).rstrip(" ")


def annotated_from_block(block: _Block, text: str | None = None, name: str = "<conllu>") -> AnnotatedSentence:
    text = text if text is not None else (block.text if block.text is not None else _block_text(block))
    s = tokenize(text)
    if len(s.tokens) != len(block.rows):
        log.warning("%s:%d: %d CoNLL-U tokens vs %d tokens in %r; using built-in annotation",
                    name, block.lineno, len(block.rows), len(s.tokens), text)
        return annotate(s)
    anns = []
    for i, (lineno, cols) in enumerate(block.rows):
        head = None
        if cols[6] not in ("_", "0"):
            head = int(cols[6]) - 1
            if not 0 <= head < len(block.rows) or head == i:
                raise ConlluError(f"malformed CoNLL-U at line {lineno} of {name}: HEAD out of range")
        anns.append(TokenAnnotation(_map_pos(cols[3], cols[4]), head, _map_relation(cols[7])))
    return AnnotatedSentence(s, tuple(anns), Source.EXTERNAL)


def load_external_annotations(path: str | Path, lines: Sequence[str] | None = None) -> list[AnnotatedSentence]:
    """Read a CoNLL-U file into annotated sentences.

    If `lines` is given, block k is matched against lines[k]; otherwise the
    ``# text =`` comment (or the FORM column) supplies the sentence text.
    """
    path = Path(path)
    with path.open(encoding="utf-8") as f:
        blocks = list(iter_conllu_blocks(f, str(path)))
    if lines is not None and len(lines) != len(blocks):
        raise ConlluError(f"{path}: {len(blocks)} sentences but {len(lines)} input lines")
    return [annotated_from_block(b, None if lines is None else lines[k], str(path))
            for k, b in enumerate(blocks)]
