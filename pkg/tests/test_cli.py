import io
import subprocess
import sys
from pathlib import Path

import pytest

from lexgram.cli import main
from lexgram.lexicon import demo_grammar_path

HERE = Path(__file__).parent
DEMO = str(demo_grammar_path())


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_success():
    code, out, _ = run("parse", "--grammar", DEMO, "--target", "s", "john loves mary")
    assert code == 0
    assert out.splitlines()[-1] == "derivations: 1"


def test_parse_failure_exit_one():
    code, out, _ = run("parse", "--grammar", DEMO, "--target", "s", "john loves")
    assert code == 1 and out.strip() == "derivations: 0"


def test_parse_demo_alias_and_split_words():
    code, out, _ = run("parse", "--grammar", "DEMO-EN", "--target", "np", "the", "big", "book")
    assert code == 0 and "derivations: 1" in out


def test_missing_grammar_file(tmp_path):
    code, out, err = run("parse", "--grammar", str(tmp_path / "nope.lg"), "--target", "s", "x")
    assert code == 2 and out == "" and "cannot read grammar" in err


def test_bad_target():
    code, _, err = run("parse", "--grammar", DEMO, "--target", "s|np", "john")
    assert code == 2 and "bad target" in err


def test_missing_required_flag():
    assert run("parse", "--grammar", DEMO, "john")[0] == 2
    assert run()[0] == 2


def test_limit_exceeded_exit_two():
    code, out, err = run("parse", "--grammar", DEMO, "--target", "s", "--max-derivations", "1",
                         "the big book that the big book loves loves the big book")
    assert code == 2 and "derivations: 1" in out and "max_derivations" in err


def test_golden_output_is_deterministic():
    argv = ("parse", "--grammar", DEMO, "--target", "s", "--output", "golden",
            "the big book that the big book loves loves the big book")
    first, second = run(*argv), run(*argv)
    assert first == second
    assert first[1] == (HERE / "golden" / "twelve_tokens.txt").read_text()


def test_check_ok():
    code, out, _ = run("check", "--grammar", DEMO)
    assert code == 0 and out.startswith("ok: 3 atoms")


def test_check_cycle(tmp_path):
    g = tmp_path / "cyc.lg"
    g.write_text("atom s .\nclass a := b .\nclass b := a .\n")
    code, _, err = run("check", "--grammar", str(g))
    assert code == 2 and "cyclic class graph: a -> b -> a" in err


def test_check_undeclared_atom_line(tmp_path):
    g = tmp_path / "bad.lg"
    g.write_text("atom s .\n\n\nentry x : tree(vp, []) .\n")
    code, _, err = run("check", "--grammar", str(g))
    assert code == 2 and "line 4:" in err and "'vp'" in err


def test_dump_word():
    code, out, _ = run("dump", "--grammar", DEMO, "--word", "loves")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1 and lines[0].endswith("(s\\np)/np")


def test_dump_unknown_and_all():
    assert run("dump", "--grammar", DEMO, "--word", "zzz")[1] == "no entries\n"
    out = run("dump", "--grammar", DEMO)[1].splitlines()
    assert len({line.split("\t")[0] for line in out}) == 8


def test_dump_provenance():
    out = run("dump", "--grammar", DEMO, "--word", "that", "--provenance")[1]
    assert "relativizer#1" in out.rstrip().split("\t")[-1].split()


def test_oracle_canonical(tmp_path):
    corpus = tmp_path / "c.tsv"
    corpus.write_text("john loves mary\ts\nthe book that john loves\tnp\n"
                      "john loves\ts\nthe book that john loves mary\tnp\n")
    code, out, _ = run("oracle", "--grammar", DEMO, "--corpus", str(corpus))
    assert code == 0
    assert out.splitlines()[-1] == "AGREE: 4 checks, 0 disagreements"


def test_oracle_bundled_corpus():
    corpus = demo_grammar_path().with_suffix(".corpus")
    code, out, _ = run("oracle", "--grammar", DEMO, "--corpus", str(corpus))
    assert code == 0 and out.splitlines()[-1].startswith("AGREE")


def test_oracle_empty_corpus(tmp_path):
    corpus = tmp_path / "empty.tsv"
    corpus.write_text("")
    code, out, _ = run("oracle", "--grammar", DEMO, "--corpus", str(corpus))
    assert code == 0 and out.strip() == "AGREE: 0 checks, 0 disagreements"


def test_oracle_malformed_line(tmp_path):
    corpus = tmp_path / "bad.tsv"
    corpus.write_text("john loves mary\ts\njohn loves mary\n")
    code, _, err = run("oracle", "--grammar", DEMO, "--corpus", str(corpus))
    assert code == 2 and ":2:" in err


@pytest.mark.parametrize("argv,code", [
    (["check", "--grammar", DEMO], 0),
    (["parse", "--grammar", DEMO, "--target", "s", "john loves"], 1),
])
def test_module_entry_point(argv, code):
    proc = subprocess.run([sys.executable, "-m", "lexgram", *argv], capture_output=True, text=True)
    assert proc.returncode == code
