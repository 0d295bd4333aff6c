import json

import pytest

from ordcover.cli import main
from ordcover.errors import ParseError
from ordcover.ordinals import enumerate_ordinals, tower
from ordcover.parsing import format_ordinal, parse_ordinal


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_and_cmp(capsys):
    code, out, _ = run(capsys, "eval", "w + w^2")
    assert code == 0 and out.strip() == "w^2"
    code, out, _ = run(capsys, "cmp", "w^2", "w^2+w")
    assert code == 0 and out.strip() == "LT"
    code, out, _ = run(capsys, "cmp", "w^2", "w + w^2")
    assert out.strip() == "EQ"
    code, out, _ = run(capsys, "cmp", "w^w", "w^2*5+3")
    assert out.strip() == "GT"


def test_parse_errors_exit_one(capsys):
    code, out, err = run(capsys, "eval", "w^")
    assert code == 1
    assert "error" in err


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["graph", "w"])  # missing --depth
    assert exc.value.code == 2


def test_fund_and_covers(capsys):
    code, out, _ = run(capsys, "fund", "w^w", "--count", "3")
    assert out.splitlines() == ["w", "w^2", "w^3"]
    _, out, _ = run(capsys, "covers", "w*2", "w^2")
    assert out.strip() == "f 1"
    _, out, _ = run(capsys, "covers", "w", "w+1")
    assert out.strip() == "s"
    _, out, _ = run(capsys, "covers", "w", "w^2+w")
    assert out.strip() == "none"


def test_upset_and_chain(capsys):
    _, out, _ = run(capsys, "upset", "w", "--bound", "w^w")
    assert out.splitlines() == ["w + 1", "w^2"]
    code, out, _ = run(capsys, "chain", "0", "w^2")
    lines = out.splitlines()
    assert lines[0] == "0" and lines[-1] == "w^2"


def test_word_command(capsys):
    _, out, _ = run(capsys, "word", "w^w")
    assert out.strip() == "1(2)^w"
    _, out, _ = run(capsys, "word", "w^3+w^2", "--compact")
    assert out.strip() == "122(21)^w"
    _, out, _ = run(capsys, "word", "4")
    assert out.strip() == "1,1,1,0"


def test_graph_json_deterministic(capsys):
    _, first, _ = run(capsys, "graph", "w^w", "--depth", "3", "--format", "json")
    _, second, _ = run(capsys, "graph", "w^w", "--depth", "3", "--format", "json")
    assert first == second
    payload = json.loads(first)
    assert payload["bound"] == "w^w"
    vertices = [parse_ordinal(v) for v in payload["vertices"]]
    assert vertices == sorted(vertices)


def test_graph_dot_annotate(capsys):
    _, out, _ = run(capsys, "graph", "3", "--depth", "5", "--format", "dot", "--annotate")
    assert '"0" -> "1" [label="s"];' in out


def test_restrict_command(capsys):
    code, out, _ = run(capsys, "restrict", "w^2", "--to", "w+2", "--depth", "6")
    assert code == 0
    payload = json.loads(out)
    assert ["w", "w + 1"] in payload["edges"]


def test_stack_commands(capsys):
    _, out, _ = run(capsys, "stack", "encode", "w^2+w+1", "--level", "2")
    assert out.strip() == "[2,1,0]"
    _, out, _ = run(capsys, "stack", "encode", "3", "--level", "2")
    assert out.strip() == "[0,0,0,0]"
    _, out, _ = run(capsys, "stack", "decode", "[2,1,0]", "--raw")
    assert out.strip() == "w^2 + w + 1"
    _, out, _ = run(capsys, "stack", "decode", "[0]")
    assert out.strip() == "0"
    _, out, _ = run(capsys, "stack", "rel", "[0]", "[0,0]", "--expr", "inc", "--level", "2")
    assert out.strip() == "yes"
    _, out, _ = run(
        capsys, "stack", "rel", "[1]", "[0]", "--expr", "inc", "--level", "2", "--prune"
    )
    assert out.strip() == "no"
    _, out, _ = run(capsys, "stack", "domain", "--level", "2", "--limit", "6")
    assert len(out.splitlines()) == 6


def test_cset_and_salpha(capsys):
    _, out, _ = run(capsys, "cset", "1", "3")
    assert len(out.splitlines()) == 8
    assert out.splitlines()[0] == "0"
    _, out, _ = run(capsys, "salpha", "w^3", "--ambient", "w^4")
    assert len(out.splitlines()) == 8


def test_tree_command(capsys):
    _, out, _ = run(capsys, "tree", "1", "--spine", "2")
    assert '[label="a"]' in out and '[label="b"]' in out


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "degree", "--n", "1")
    assert code == 0 and out.startswith("PASS degree")
    code, out, _ = run(capsys, "verify", "tail-sequence", "--n", "1", "--K", "3")
    assert code == 0


def test_roundtrip_over_enumeration(capsys):
    for a in enumerate_ordinals(2, 2, tower(3))[::97]:
        text = format_ordinal(a)
        assert parse_ordinal(text) == a
        code, out, _ = run(capsys, "eval", text)
        assert out.strip() == text
