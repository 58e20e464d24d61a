"""The job-file language."""

import pytest

from stdres import corpus
from stdres.dsl import ParseError, parse, parse_polynomial
from stdres.ring import PolyRing


def test_point_ideal_job():
    j = parse("ring R = QQ[x,y,z] order grevlex; module I twists (-1,-1) relations { y, -x; };")
    assert j.ring.names == ("x", "y", "z")
    assert j.module.target.twists == (-1, -1)
    assert [[str(p) for p in c] for c in j.module.columns] == [["y", "-x"]]
    assert j.command == "resolve"


def test_empty_input():
    with pytest.raises(ParseError, match="no ring declaration") as e:
        parse("")
    assert (e.value.line, e.value.col) == (1, 1)


def test_undeclared_variable_is_named():
    with pytest.raises(ParseError, match="w") as e:
        parse("ring R = QQ[x,y,z] order grevlex;\nmodule I twists (0) relations { x + w; };")
    assert e.value.line == 2


def test_inhomogeneous_relation():
    with pytest.raises(ParseError, match="inhomogeneous"):
        parse("ring R = QQ[x,y,z] order grevlex; module I twists (0) relations { x + y^2; };")
    with pytest.raises(ParseError, match="inhomogeneous"):
        parse("ring R = QQ[x,y,z] order grevlex; module I twists (0,0) relations { x, y^2; };")


def test_syntax_error_location():
    with pytest.raises(ParseError) as e:
        parse("ring R = QQ[x,y,z] order grevlex;\nmodule I twists (0) relations { x y; };")
    assert e.value.line == 2 and e.value.col is not None


def test_wrong_entry_count():
    with pytest.raises(ParseError, match="entries"):
        parse("ring R = QQ[x,y] order grevlex; module I twists (0,0) relations { x; };")


def test_commands_and_options():
    j = parse(corpus.JOBS["p2_point"] + "command certify lemma2;\noption attested = yes;\noption m = 2;\n")
    assert j.command == "certify" and j.args == ("lemma2",)
    assert j.options == {"attested": "yes", "m": 2}


@pytest.mark.parametrize("name", sorted(corpus.JOBS))
def test_round_trip(name):
    j = parse(corpus.JOBS[name] + "option m = 3;\n")
    text = j.to_text()
    assert parse(text).to_text() == text


def test_polynomial_literals():
    R = PolyRing("xy")
    p = parse_polynomial("1/2*x^2 - (x + y)*(x - y) + 3", R)
    assert str(p) == "-1/2*x^2 + y^2 + 3"


def test_corpus_files_match_library(tmp_path):
    import pathlib
    root = pathlib.Path(__file__).resolve().parent.parent / "corpus"
    for f in root.glob("*.txt"):
        j = parse(f.read_text())
        assert j.module.rank0 >= 1
    assert parse((root / "p2_point.txt").read_text()).to_text() == corpus.job("p2_point").to_text()
    assert parse((root / "p3_point.txt").read_text()).to_text() == corpus.job("p3_point").to_text()
