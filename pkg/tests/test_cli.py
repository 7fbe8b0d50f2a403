import json

import pytest

from src.grammar.text_format import load_grammar
from src.main import (
    EXIT_BOUND_VIOLATION,
    EXIT_COUNTEREXAMPLE,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    main,
)

from tests.helpers import EMPTY_GRAMMAR, EXAMPLE_GRAMMAR


@pytest.fixture
def cli(config_file):
    def invoke(*args):
        return main(["--config", str(config_file), *map(str, args)])
    return invoke


def test_enum(cli, grammar_file, capsys):
    path = grammar_file(EXAMPLE_GRAMMAR)
    assert cli("enum", "--grammar", path, "--ell", 2) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["s(a)", "s(b)", "s(s(a),b)"]
    assert cli("enum", "--grammar", path, "--ell", 1) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["s(a)", "s(b)"]


def test_enum_of_an_empty_grammar(cli, grammar_file, capsys):
    assert cli("enum", "--grammar", grammar_file(EMPTY_GRAMMAR), "--ell", 3) == EXIT_OK
    assert capsys.readouterr().out == ""


def test_check_cover(cli, grammar_file, capsys):
    target = grammar_file(EXAMPLE_GRAMMAR)
    trivial = grammar_file("start: S\nterminals: a b\n", name="trivial.cfg")
    assert cli("check-cover", "--grammar", target, "--hypothesis", target, "--ell", 2) == EXIT_OK
    assert capsys.readouterr().out.strip() == "equal"
    assert cli("check-cover", "--grammar", target, "--hypothesis", trivial, "--ell", 2) == EXIT_COUNTEREXAMPLE
    assert capsys.readouterr().out.strip() == "s(a)"


def test_learn_writes_every_artifact(cli, grammar_file, tmp_path, capsys):
    target = grammar_file(EXAMPLE_GRAMMAR, name="ab.cfg")
    out = tmp_path / "out"
    assert cli("learn", "--grammar", target, "--ell", 2, "--trace", "--output-dir", out) == EXIT_OK
    for suffix in (".cfg", ".json", ".dot", ".stats.json", ".trace.json"):
        assert (out / f"ab-ell2{suffix}").exists()

    record = json.loads((out / "ab-ell2.stats.json").read_text(encoding='utf-8'))
    assert record['final_states'] == 3
    assert record['bounds_ok'] is True
    assert record['policy'] == "minimal"

    trace = json.loads((out / "ab-ell2.trace.json").read_text(encoding='utf-8'))
    assert trace[-1]['event'] == "final"
    assert len(trace[-1]['values']) == len(trace[-1]['rows'])
    assert trace[-1]['values'][0][0] == 1

    capsys.readouterr()
    learned = out / "ab-ell2.cfg"
    assert cli("check-cover", "--grammar", target, "--hypothesis", learned, "--ell", 2) == EXIT_OK
    assert capsys.readouterr().out.strip() == "equal"


def test_learn_uses_the_configured_directories(cli, grammar_file, tmp_path):
    target = grammar_file(EXAMPLE_GRAMMAR, name="ab.cfg")
    assert cli("learn", "--grammar", target) == EXIT_OK
    assert (tmp_path / "runs" / "learned" / "ab-ell2.cfg").exists()
    assert (tmp_path / "runs" / "stats" / "ab-ell2.stats.json").exists()


def test_learn_an_empty_grammar(cli, grammar_file, tmp_path):
    target = grammar_file(EMPTY_GRAMMAR, name="empty.cfg")
    assert cli("learn", "--grammar", target, "--ell", 3, "--output-dir", tmp_path) == EXIT_OK
    assert load_grammar(tmp_path / "empty-ell3.cfg").productions == ()
    record = json.loads((tmp_path / "empty-ell3.stats.json").read_text(encoding='utf-8'))
    assert record['equivalence_queries'] == 1


def test_learn_exact(cli, grammar_file, tmp_path):
    target = grammar_file(EXAMPLE_GRAMMAR, name="ab.cfg")
    assert cli("learn-exact", "--grammar", target, "--output-dir", tmp_path) == EXIT_OK
    record = json.loads((tmp_path / "ab-exact.stats.json").read_text(encoding='utf-8'))
    assert record['mode'] == "exact"
    assert record['ell'] is None


def test_random_is_reproducible(cli, tmp_path, capsys):
    assert cli("random", "--seed", 4) == EXIT_OK
    first = capsys.readouterr().out
    assert cli("random", "--seed", 4) == EXIT_OK
    assert capsys.readouterr().out == first
    output = tmp_path / "g" / "r4.cfg"
    assert cli("random", "--seed", 4, "--output", output) == EXIT_OK
    assert output.read_text(encoding='utf-8') == first


def test_stats_summary(cli, grammar_file, tmp_path, capsys):
    target = grammar_file(EXAMPLE_GRAMMAR, name="ab.cfg")
    cli("learn", "--grammar", target, "--ell", 2)
    capsys.readouterr()
    summary = tmp_path / "summary.csv"
    assert cli("stats", "--output", summary) == EXIT_OK
    assert "cover" in capsys.readouterr().out
    assert summary.exists()


def test_input_errors(cli, grammar_file, tmp_path):
    broken = grammar_file("start: S\nS -> a\n", name="broken.cfg")
    assert cli("learn", "--grammar", broken) == EXIT_INPUT_ERROR
    assert cli("enum", "--grammar", tmp_path / "missing.cfg", "--ell", 2) == EXIT_INPUT_ERROR
    assert main(["--config", str(tmp_path / "missing.yaml"), "random", "--seed", "1"]) == EXIT_INPUT_ERROR


def test_invalid_settings_exit_as_input_errors(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("learning:\n  default_ell: 0\n")
    assert main(["--config", str(path), "random", "--seed", "1"]) == EXIT_INPUT_ERROR


def test_bad_arguments_exit_through_argparse(cli):
    with pytest.raises(SystemExit):
        cli("enum", "--grammar", "g.cfg", "--ell", 0)


def test_corpus(cli, tmp_path, capsys):
    out = tmp_path / "corpus"
    code = cli("corpus", "--size", 2, "--ells", 2, "--workers", 2, "--output-dir", out)
    manifest = json.loads((out / "manifest.json").read_text(encoding='utf-8'))
    failed = manifest['incorrect'] or manifest['bound_violations'] or manifest['table_disagreements']
    assert code == (EXIT_BOUND_VIOLATION if failed else EXIT_OK)
    assert manifest['sessions'] == 4
    assert manifest['incorrect'] == 0
    assert (out / "target-000.cfg").exists()
    assert (out / "target-001-exact.stats.json").exists()
