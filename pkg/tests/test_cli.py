"""Tests for the command-line interface."""

import io
import logging

import pytest

from cli import escape_byte, main, unescape_byte
from src.fingerprint import FpConfig, fp_of_bytes
from src.grammar import LinearSlp, Slp, expand
from src.loader import GrammarLoader
from tests.conftest import EXAMPLE_TEXT


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.txt"
    path.write_bytes(EXAMPLE_TEXT)
    return path


@pytest.fixture
def example_grammar(tmp_path, example_file):
    out = tmp_path / "example.slp"
    assert main(["compress", str(example_file), "-o", str(out)]) == 0
    return out


def run_query(grammar, lines, capsys, monkeypatch, *extra):
    monkeypatch.setattr("sys.stdin", io.StringIO("\n".join(lines) + "\n"))
    code = main(["query", str(grammar), "--seed", "7", *extra])
    return code, capsys.readouterr()


def test_compress_lz78(example_grammar):
    """The running example becomes a six-phrase Linear SLP."""
    g = GrammarLoader().load_file(example_grammar)
    assert isinstance(g, LinearSlp)
    assert len(g.root_children) == 6
    assert expand(g) == EXAMPLE_TEXT


def test_compress_reports_sizes(example_file, capsys):
    """Without -o the grammar goes to stdout and the sizes to stderr."""
    assert main(["compress", str(example_file), "--mode", "balanced"]) == 0
    captured = capsys.readouterr()
    g = GrammarLoader().load(captured.out)
    assert isinstance(g, Slp)
    assert expand(g) == EXAMPLE_TEXT
    assert "N=12" in captured.err


def test_compress_one_byte(tmp_path, capsys):
    path = tmp_path / "one"
    path.write_bytes(b"z")
    assert main(["compress", str(path)]) == 0
    assert capsys.readouterr().out == "leaf 0 122\nlroot 1 0\n"


def test_compress_errors(tmp_path, capsys):
    """Missing files are IO errors; empty files are usage errors."""
    missing = tmp_path / "nope.txt"
    assert main(["compress", str(missing)]) == 3
    assert str(missing) in capsys.readouterr().err
    empty = tmp_path / "empty"
    empty.write_bytes(b"")
    assert main(["compress", str(empty)]) == 2


def test_query_answers(example_grammar, capsys, monkeypatch):
    """access, fp and lce lines are answered in order."""
    code, captured = run_query(
        example_grammar, ["lce 1 5", "access 5", "# comment", "fp 2 3"], capsys, monkeypatch
    )
    assert code == 0
    cfg = FpConfig.from_seed(7, max_len=12)
    expected_fp = fp_of_bytes(cfg, b"bb")
    assert captured.out.splitlines() == ["6", "a", f"{expected_fp.value} 2"]


def test_query_single_op(example_grammar, capsys):
    assert main(["query", str(example_grammar), "--seed", "1", "--op", "lce", "1", "5"]) == 0
    assert capsys.readouterr().out == "6\n"


def test_query_from_file(tmp_path, example_grammar, capsys):
    queries = tmp_path / "queries"
    queries.write_text("access 1\naccess 12\n")
    assert main(["query", str(example_grammar), "--queries", str(queries)]) == 0
    assert capsys.readouterr().out == "a\nb\n"


def test_query_inverted_range(example_grammar, capsys, monkeypatch):
    """fp 1 0 is a usage error."""
    code, captured = run_query(example_grammar, ["fp 1 0"], capsys, monkeypatch)
    assert code == 2
    assert "inverted" in captured.err


def test_query_malformed_line(example_grammar, capsys, monkeypatch):
    """The offending line number is reported."""
    code, captured = run_query(example_grammar, ["access 1", "lce 1"], capsys, monkeypatch)
    assert code == 2
    assert "line 2" in captured.err


def test_query_out_of_bounds_continues(example_grammar, capsys, monkeypatch):
    """A bad position yields an error line and the batch goes on."""
    code, captured = run_query(example_grammar, ["access 99", "access 2"], capsys, monkeypatch)
    assert code == 0
    lines = captured.out.splitlines()
    assert lines[0].startswith("error:")
    assert lines[1] == "b"


def test_finger_and_workers_agree(example_grammar, capsys, monkeypatch):
    """Finger queries and a worker pool give the same answers."""
    lines = [f"lce {i} {j}" for i in range(1, 13) for j in range(1, 13)]
    lines += [f"fp {i} 12" for i in range(1, 13)]
    _, plain = run_query(example_grammar, lines, capsys, monkeypatch)
    _, finger = run_query(example_grammar, lines, capsys, monkeypatch, "--finger")
    _, pooled = run_query(example_grammar, lines, capsys, monkeypatch, "--workers", "4")
    assert plain.out == finger.out == pooled.out


def test_round_trip_with_unprintable_bytes(tmp_path, capsys, monkeypatch):
    """compress then access at every position reconstructs the input."""
    data = bytes(range(256)) + b"\\ \n\x00abcabc" * 3
    src_file = tmp_path / "data.bin"
    src_file.write_bytes(data)
    grammar = tmp_path / "data.slp"
    assert main(["compress", str(src_file), "-o", str(grammar)]) == 0
    capsys.readouterr()
    lines = [f"access {i}" for i in range(1, len(data) + 1)]
    code, captured = run_query(grammar, lines, capsys, monkeypatch)
    assert code == 0
    assert bytes(unescape_byte(t) for t in captured.out.splitlines()) == data


def test_escape():
    assert escape_byte(ord("a")) == "a"
    assert escape_byte(ord("\\")) == "\\x5c"
    assert escape_byte(0) == "\\x00"
    assert escape_byte(ord(" ")) == "\\x20"


def test_seed_from_environment(example_grammar, capsys, monkeypatch):
    """GCFP_SEED stands in for --seed and runs are deterministic."""
    monkeypatch.setattr("sys.stdin", io.StringIO("fp 1 12\n"))
    assert main(["query", str(example_grammar), "--seed", "42"]) == 0
    with_flag = capsys.readouterr().out
    monkeypatch.setenv("GCFP_SEED", "42")
    monkeypatch.setattr("sys.stdin", io.StringIO("fp 1 12\n"))
    assert main(["query", str(example_grammar)]) == 0
    assert capsys.readouterr().out == with_flag


def test_verify_good(example_grammar, capsys):
    assert main(["verify", str(example_grammar), "--seed", "3"]) == 0
    assert capsys.readouterr().out == "GOOD\n"
    assert main(["verify", str(example_grammar), "--alg", "linear", "--seed", "3"]) == 0
    assert capsys.readouterr().out == "GOOD\n"


def test_verify_collision_with_tiny_prime(tmp_path, capsys):
    """A planted tiny modulus produces a collision line and exit code 1."""
    data = tmp_path / "ad"
    data.write_bytes(bytes([0, 3]))
    grammar = tmp_path / "ad.slp"
    assert main(["compress", str(data), "-o", str(grammar), "--mode", "balanced"]) == 0
    capsys.readouterr()
    assert main(["verify", str(grammar), "--prime", "3", "--seed", "1"]) == 1
    assert capsys.readouterr().out == "COLLISION at 1 2 len 1\n"
    assert main(["query", str(grammar), "--prime", "3", "--verify", "slp", "--op", "access", "1"]) == 1


def test_verify_linear_falls_back(tmp_path, capsys, caplog):
    """--alg linear on an SLP or a deep Linear SLP warns and runs the SLP verifier."""
    balanced = tmp_path / "balanced.slp"
    balanced.write_text("leaf 0 97\nleaf 1 98\nrule 2 0 1\nroot 2\n")
    deep = tmp_path / "deep.slp"
    deep.write_text("leaf 0 97\nrule 1 0 0\nrule 2 1 0\nlroot 3 2\n")
    with caplog.at_level(logging.WARNING, logger="gcfp"):
        assert main(["verify", str(balanced), "--alg", "linear", "--seed", "2"]) == 0
        assert main(["verify", str(deep), "--alg", "linear", "--seed", "2"]) == 0
    assert caplog.text.count("falling back") == 2
    assert capsys.readouterr().out == "GOOD\nGOOD\n"


def test_bad_grammar_files(tmp_path, capsys):
    """Syntax errors are usage errors; missing grammars are IO errors."""
    bad = tmp_path / "bad.slp"
    bad.write_text("leaf 0 97\nbranch 1 0 0\n")
    assert main(["verify", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["verify", str(tmp_path / "missing.slp")]) == 3


def test_bench(example_grammar, capsys):
    """Q = 0 prints the header; local distances are accepted; junk is refused."""
    assert main(["bench", str(example_grammar), "--queries", "0", "--seed", "1"]) == 0
    assert capsys.readouterr().out == "op,n,N,param,mean_ns,comparisons\n"
    assert main(["bench", str(example_grammar), "--queries", "5", "--dist", "local", "3"]) == 0
    assert "local:3" in capsys.readouterr().out
    assert main(["bench", str(example_grammar), "--dist", "sideways"]) == 2
