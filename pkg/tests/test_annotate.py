import logging

import pytest

from neutral_rewriter.annotate import (
    AnnotatedSentence, CliticRole, ConlluError, HerRole, HisRole, Source, TokenAnnotation,
    annotate, classify_clitic_s, classify_her, classify_his, load_external_annotations, read_tag_tsv,
)
from neutral_rewriter.text import tokenize


def tags(text):
    return [a.pos for a in annotate(tokenize(text)).annotations]


def ann(text):
    return annotate(tokenize(text))


def idx(text, word, nth=0):
    hits = [i for i, t in enumerate(tokenize(text).tokens) if t.surface.lower() == word]
    return hits[nth]


@pytest.mark.parametrize("text, expected", [
    ("He works .", ["PRON", "VERB_FIN_3SG", "PUNCT"]),
    ("the book", ["DET", "NOUN"]),
    ("His car broke .", ["PRON", "NOUN", "VERB_PAST", "PUNCT"]),
    ("She is happy", ["PRON", "VERB_FIN_3SG", "ADJ"]),
    ("He has worked", ["PRON", "VERB_FIN_3SG", "VERB_PART"]),
    ("He likes books", ["PRON", "VERB_FIN_3SG", "NOUN"]),
    ("the dog runs", ["DET", "NOUN", "VERB_FIN_3SG"]),
    ("He works and plays", ["PRON", "VERB_FIN_3SG", "CONJ", "VERB_FIN_3SG"]),
    ("He , however , laughs", ["PRON", "PUNCT", "ADV", "PUNCT", "VERB_FIN_3SG"]),
    ("She was singing loudly", ["PRON", "VERB_FIN_3SG", "VERB_GER", "ADV"]),
    ("He can go", ["PRON", "MODAL", "NOUN"]),
    ("I saw her leave", ["PRON", "VERB_PAST", "PRON", "OTHER"]),
])
def test_builtin_tags(text, expected):
    assert tags(text) == expected


def test_every_token_tagged_and_deterministic():
    s = tokenize("Whatever 😀 she said , it 's 42 and x-ray !")
    a, b = annotate(s), annotate(s)
    assert a == b
    assert len(a.annotations) == len(s.tokens)
    assert a.source is Source.BUILTIN


@pytest.mark.parametrize("text, role", [
    ("I gave it to her .", HerRole.OBJECTIVE),
    ("It is her book .", HerRole.POSSESSIVE_DET),
    ("I saw her yesterday .", HerRole.OBJECTIVE),
    ("It is her very old book .", HerRole.POSSESSIVE_DET),
    ("I told her that it rained .", HerRole.OBJECTIVE),
    ("Her", HerRole.OBJECTIVE),
    ("Her 2 cats", HerRole.POSSESSIVE_DET),
    ("It made her really very happy .", HerRole.OBJECTIVE),
])
def test_classify_her(text, role):
    assert classify_her(ann(text), idx(text, "her")) is role


@pytest.mark.parametrize("text, role", [
    ("It is his book .", HisRole.POSSESSIVE_DET),
    ("The book is his .", HisRole.INDEPENDENT_POSSESSIVE),
    ("His car broke .", HisRole.POSSESSIVE_DET),
    ("a friend of his", HisRole.INDEPENDENT_POSSESSIVE),
    ("his own car", HisRole.POSSESSIVE_DET),
])
def test_classify_his(text, role):
    assert classify_his(ann(text), idx(text, "his")) is role


@pytest.mark.parametrize("text, role", [
    ("He 's worked hard .", CliticRole.HAS),
    ("She 's happy .", CliticRole.IS),
    ("The dog 's bone", CliticRole.POSSESSIVE),
    ("He's gone home", CliticRole.HAS),
    ("She's been there", CliticRole.HAS),
    ("He's going home", CliticRole.IS),
    ("She's a doctor", CliticRole.IS),
    ("He's tired", CliticRole.IS),
    ("She's married", CliticRole.IS),
    ("He's hurt .", CliticRole.IS),
    ("He's hurt her .", CliticRole.HAS),
    ("He's already finished", CliticRole.HAS),
    ("it's late", CliticRole.POSSESSIVE),
    ("I know she's .", CliticRole.IS),
])
def test_classify_clitic_s(text, role):
    assert classify_clitic_s(ann(text), idx(text, "'s")) is role


def test_classify_preconditions():
    a = ann("the cat sat")
    for fn in (classify_her, classify_his, classify_clitic_s):
        with pytest.raises(ValueError):
            fn(a, 1)


def test_annotated_sentence_invariants():
    s = tokenize("a b")
    with pytest.raises(ValueError):
        AnnotatedSentence(s, (TokenAnnotation("NOUN"),))
    with pytest.raises(ValueError):
        AnnotatedSentence(s, (TokenAnnotation("NOUN", head=0), TokenAnnotation("NOUN")))
    with pytest.raises(ValueError):
        AnnotatedSentence(s, (TokenAnnotation("BOGUS"), TokenAnnotation("NOUN")))


def test_tag_tsv_format():
    assert read_tag_tsv(["# c", "he\tPRON", "made\tVERB_PAST", "made\tVERB_PART"]) == {
        "he": ("PRON",), "made": ("VERB_PAST", "VERB_PART")}
    with pytest.raises(ValueError, match=":2:"):
        read_tag_tsv(["he\tPRON", "she"])


CONLLU = """# sent_id = 1
# text = It is her book .
1\tIt\tit\tPRON\tPRP\t_\t4\tnsubj\t_\t_
2\tis\tbe\tAUX\tVBZ\t_\t4\tcop\t_\t_
3\ther\ther\tPRON\tPRP$\t_\t4\tnmod:poss\t_\t_
4\tbook\tbook\tNOUN\tNN\t_\t0\troot\t_\tSpaceAfter=No
5\t.\t.\tPUNCT\t.\t_\t4\tpunct\t_\t_

# text = He works .
1\tHe\the\tPRON\tPRP\t_\t2\tnsubj\t_\t_
2\tworks\twork\tVERB\tVBZ\t_\t0\troot\t_\t_
3\t.\t.\tPUNCT\t.\t_\t2\tpunct\t_\t_
"""


def test_load_conllu(tmp_path):
    p = tmp_path / "a.conllu"
    p.write_text(CONLLU)
    got = load_external_annotations(p)
    assert len(got) == 2
    a = got[0]
    assert a.source is Source.EXTERNAL
    assert [x.pos for x in a.annotations] == ["PRON", "VERB_FIN_3SG", "PRON", "NOUN", "PUNCT"]
    assert a.annotations[2] == TokenAnnotation("PRON", 3, "poss")
    assert a.annotations[3].head is None
    assert got[1].annotations[0].relation == "nsubj"


def test_external_poss_overrides_heuristic(tmp_path):
    # "leave" reads as a bare infinitive to the heuristics
    block = "1\tsaw\tsee\tVERB\tVBD\t_\t0\troot\t_\t_\n2\ther\ther\tPRON\tPRP$\t_\t3\tnmod:poss\t_\t_\n" \
            "3\tleave\tleave\tNOUN\tNN\t_\t1\tobj\t_\t_\n"
    p = tmp_path / "b.conllu"
    p.write_text(block)
    [a] = load_external_annotations(p, ["saw her leave"])
    assert classify_her(a, 1) is HerRole.POSSESSIVE_DET
    builtin = annotate(a.sentence)
    assert classify_her(builtin, 1) is HerRole.OBJECTIVE


def test_conllu_nine_columns_is_error(tmp_path):
    p = tmp_path / "bad.conllu"
    p.write_text("# text = x y\n1\tx\tx\tNOUN\tNN\t_\t0\troot\t_\t_\n2\ty\ty\tNOUN\tNN\t_\t1\tdep\t_\n")
    with pytest.raises(ConlluError, match="malformed CoNLL-U at line 3"):
        load_external_annotations(p)


def test_conllu_token_mismatch_falls_back(tmp_path, caplog):
    p = tmp_path / "c.conllu"
    p.write_text("1\tHe's\the\tPRON\tPRP\t_\t0\troot\t_\t_\n")
    with caplog.at_level(logging.WARNING):
        [a] = load_external_annotations(p, ["He's"])
    assert a.source is Source.BUILTIN
    assert len(a.annotations) == 2
    assert "built-in" in caplog.text


def test_conllu_skips_multiword_ranges(tmp_path):
    p = tmp_path / "d.conllu"
    p.write_text("1-2\tHe's\t_\t_\t_\t_\t_\t_\t_\t_\n1\tHe\the\tPRON\tPRP\t_\t3\tnsubj\t_\tSpaceAfter=No\n"
                 "2\t's\tbe\tAUX\tVBZ\t_\t3\tcop\t_\t_\n3\there\there\tADV\tRB\t_\t0\troot\t_\t_\n")
    [a] = load_external_annotations(p)
    assert a.sentence.source_text == "He's here"
    assert a.source is Source.EXTERNAL


def test_conllu_block_count_must_match_lines(tmp_path):
    p = tmp_path / "e.conllu"
    p.write_text(CONLLU)
    with pytest.raises(ConlluError):
        load_external_annotations(p, ["only one line"])
