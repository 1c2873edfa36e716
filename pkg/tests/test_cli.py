import io
import json

import pytest

from neutral_rewriter.cli import run


def call(argv, monkeypatch, capsys, stdin=""):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_rewrite_stdin(monkeypatch, capsys):
    code, out, _ = call(["rewrite"], monkeypatch, capsys, "He works.\nIt is her book.\n")
    assert code == 0 and out == "They work.\nIt is their book.\n"


def test_rewrite_options(monkeypatch, capsys, tmp_path):
    titles = tmp_path / "titles.tsv"
    titles.write_text("Mr\tMx\n")
    code, out, _ = call(["rewrite", "--contractions", "expand", "--nouns", "--titles", str(titles)],
                        monkeypatch, capsys, "Mr Lee's the chairman and he's worked hard.\n")
    assert code == 0
    assert out == "Mx Lee's the chairperson and they have worked hard.\n"


def test_rewrite_json(monkeypatch, capsys):
    code, out, _ = call(["rewrite", "--json"], monkeypatch, capsys, "She runs.\n")
    rec = json.loads(out)
    assert rec["output"] == "They run."
    assert [e["category"] for e in rec["edits"]] == ["PRONOUN", "VERB_AGREEMENT"]


def test_rewrite_files_and_conllu(monkeypatch, capsys, tmp_path):
    inp, outp, ann = tmp_path / "in.txt", tmp_path / "out.txt", tmp_path / "a.conllu"
    inp.write_text("saw her leave\n")
    ann.write_text("1\tsaw\tsee\tVERB\tVBD\t_\t0\troot\t_\t_\n2\ther\ther\tPRON\tPRP$\t_\t3\tnmod:poss\t_\t_\n"
                   "3\tleave\tleave\tNOUN\tNN\t_\t1\tobj\t_\t_\n")
    assert call(["rewrite", str(inp), "-o", str(outp), "--conllu", str(ann)], monkeypatch, capsys)[0] == 0
    assert outp.read_text() == "saw their leave\n"
    ann.write_text("1\tsaw\tsee\tVERB\tVBD\t_\t0\troot\t_\n")
    code, _, err = call(["rewrite", str(inp), "--conllu", str(ann)], monkeypatch, capsys)
    assert code == 2 and "malformed CoNLL-U at line 1" in err


def test_usage_errors(monkeypatch, capsys):
    assert call([], monkeypatch, capsys)[0] == 1
    assert call(["rewrite", "--bogus"], monkeypatch, capsys)[0] == 1
    assert call(["sample", "x.txt"], monkeypatch, capsys)[0] == 1


def test_missing_file_is_data_error(monkeypatch, capsys, tmp_path):
    code, _, err = call(["rewrite", str(tmp_path / "nope.txt")], monkeypatch, capsys)
    assert code == 2 and "no such file" in err


def test_bad_lexicon_is_data_error(monkeypatch, capsys, tmp_path):
    lex = tmp_path / "l.tsv"
    lex.write_text("a\tb\n")
    code, _, err = call(["rewrite", "--lexicon", str(lex)], monkeypatch, capsys, "x\n")
    assert code == 2 and "l.tsv:1" in err


def test_eval(monkeypatch, capsys, tmp_path):
    for name, body in [("s", "He works .\n"), ("h", "They work .\n"), ("r", "They work .\n")]:
        (tmp_path / name).write_text(body)
    files = [str(tmp_path / n) for n in "shr"]
    code, out, _ = call(["eval", *files, "--json"], monkeypatch, capsys)
    rep = json.loads(out)
    assert code == 0 and rep["system_wer"] == 0.0 and rep["base_wer"] == pytest.approx(200 / 3)
    code, out, _ = call(["eval", *files], monkeypatch, capsys)
    assert "BASE WER" in out
    (tmp_path / "r").write_text("a\nb\n")
    code, _, err = call(["eval", *files], monkeypatch, capsys)
    assert code == 2 and "line counts differ" in err


def test_sample(monkeypatch, capsys, tmp_path):
    from neutral_rewriter.synth import sampler_corpus
    inp = tmp_path / "c.txt"
    inp.write_text("\n".join(sampler_corpus(1000, seed=0)) + "\n")
    code, out1, err = call(["sample", str(inp), "--n", "16", "--seed", "3", "--json"], monkeypatch, capsys)
    assert code == 0 and json.loads(err)["shortfall"] == {}
    _, out2, _ = call(["sample", str(inp), "--n", "16", "--seed", "3"], monkeypatch, capsys)
    assert out1 == out2 and 0 < len(out1.splitlines()) <= 16
    assert call(["sample", str(inp), "--n", "4"], monkeypatch, capsys)[0] == 1


def test_parallel(monkeypatch, capsys, tmp_path):
    inp = tmp_path / "c.txt"
    inp.write_text("He works.\nThey left.\n")
    code, out, _ = call(["parallel", str(inp), "--src", str(tmp_path / "s"), "--tgt", str(tmp_path / "t")],
                        monkeypatch, capsys)
    assert code == 0 and json.loads(out)["changed"] == 1
    assert (tmp_path / "t").read_text() == "They work.\nThey left.\n"
    assert (tmp_path / "s").read_text() == "He works.\nThey left.\n"


def test_lexicon_choice(monkeypatch, capsys):
    text = "the cleaning lady left\n"
    assert call(["rewrite", "--nouns"], monkeypatch, capsys, text)[1] == "the cleaner left\n"
    assert call(["rewrite", "--verbatim-lexicon"], monkeypatch, capsys, text)[1] == "the cleaners left\n"
    assert call(["rewrite"], monkeypatch, capsys, text)[1] == text
