import json

from mwrgames.cli import main
from mwrgames.textio import fixture_path, parse_game

RUNNING = fixture_path("running.game")
RESTRICTED = fixture_path("restricted.game")
PENALTY = fixture_path("penalty.qgame")
PENALTY_MS = fixture_path("penalty.ms.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_and_frontier(capsys):
    code, out, _ = run(capsys, "solve", RUNNING, "--order", "lex")
    assert code == 0 and "v4      {(3,5)}" in out
    code, out, _ = run(capsys, "frontier", RUNNING, "--vertex", "v0", "--format", "json")
    assert out == '{"v0": [[8, 8]]}\n'
    code, out, _ = run(capsys, "frontier", RUNNING, "--vertex", "v4", "--format", "tsv")
    assert out.splitlines()[1:] == ["v4\t3,5", "v4\t5,3"]


def test_unknown_vertex_is_a_usage_error(capsys):
    code, _, err = run(capsys, "frontier", RUNNING, "--vertex", "nope")
    assert code == 2 and "unknown vertex" in err


def test_check_exit_codes(capsys):
    assert run(capsys, "check", RUNNING, "--profile", "8,8")[0] == 0
    assert run(capsys, "check", RUNNING, "--profile", "10,6")[0] == 1
    assert run(capsys, "check", RUNNING, "--profile", "8,8", "--method", "search")[0] == 0
    assert run(capsys, "check", RUNNING, "--profile", "8,7", "--order", "lex")[0] == 1
    assert run(capsys, "check", RUNNING, "--profile", "8")[0] == 2
    assert run(capsys, "check", RUNNING, "--profile", "8,8", "--order", "lex", "--method", "search")[0] == 2


def test_synth_and_verify(capsys, tmp_path):
    out = tmp_path / "s.json"
    assert run(capsys, "synth", RESTRICTED, "--profile", "8,8", "--out", str(out))[0] == 0
    code, text, _ = run(capsys, "verify", RESTRICTED, "--strategy", str(out), "--profile", "8,8")
    assert code == 0 and "worst observed cost: (8,8)" in text
    code, _, _ = run(capsys, "verify", RESTRICTED, "--strategy", str(out), "--profile", "8,7")
    assert code == 1
    lex = tmp_path / "lex.json"
    assert run(capsys, "synth", RUNNING, "--order", "lex", "--out", str(lex))[0] == 0
    code, _, _ = run(capsys, "verify", RUNNING, "--strategy", str(lex), "--profile", "8,8", "--order", "lex", "--vertex", "v0")
    assert code == 0
    assert run(capsys, "synth", RUNNING)[0] == 2


def test_enumerate_positional(capsys):
    code, out, _ = run(capsys, "enumerate-positional", RESTRICTED, "--profile", "8,8")
    assert code == 0 and "positional strategies ensuring (8,8): 0" in out
    code, out, _ = run(capsys, "enumerate-positional", RESTRICTED, "--format", "json")
    assert sorted(row["ensures"] for row in json.loads(out)) == [[8, 10], [10, 8]]


def test_permissive_verbs(capsys, tmp_path):
    assert run(capsys, "mev1", PENALTY)[1] == "{(6,12),(16,2)}\n"
    assert run(capsys, "mev2", PENALTY, "--cross-check")[1] == "(6,12)\n"
    assert run(capsys, "mev3", PENALTY, "--cross-check", "--format", "json")[1] == '{"penalty_cost": [2, 16]}\n'
    assert run(capsys, "mce1", PENALTY, "--cost", "6", "--penalty", "12")[0] == 0
    assert run(capsys, "mce1", PENALTY, "--cost", "6", "--penalty", "11")[0] == 1
    assert run(capsys, "mce2", PENALTY, "--cost", "6", "--penalty", "11")[0] == 1
    assert run(capsys, "mce3", PENALTY, "--cost", "16", "--penalty", "2")[0] == 0
    assert run(capsys, "eval-multistrategy", PENALTY, "--multistrategy", PENALTY_MS)[1] == "(6,12)\n"
    assert run(capsys, "eval-multistrategy", PENALTY)[1] == "(inf,0) (not winning)\n"
    assert run(capsys, "eval-multistrategy", PENALTY, "--pair", "16,2")[1] == "(16,2)\n"
    ms = tmp_path / "ms.json"
    assert run(capsys, "extract-multistrategy", PENALTY, "--pair", "16,2", "--out", str(ms))[0] == 0
    assert run(capsys, "eval-multistrategy", PENALTY, "--multistrategy", str(ms))[1] == "(16,2)\n"
    assert run(capsys, "mev1", RUNNING)[0] == 2


def test_extend_and_dot(capsys):
    code, out, _ = run(capsys, "extend", PENALTY, "--mode", "pc")
    ext = parse_game(out)
    assert ext.dim == 2 and "v0:{v1,v8}" in {v.name for v in ext.vertices}
    assert run(capsys, "extend", PENALTY, "--format", "dot")[1].startswith("digraph")
    assert run(capsys, "export-dot", RUNNING)[1].startswith("digraph")


def test_generators(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "qss", "--values", "1,2", "--threshold", "3")
    assert code == 0 and out.startswith("# qss 1 2 3")
    path = tmp_path / "q.game"
    path.write_text(out)
    assert run(capsys, "check", str(path), "--profile", "3,0", "--vertex", "x1")[0] == 1
    a = run(capsys, "gen", "random", "--seed", "7")[1]
    b = run(capsys, "gen", "random", "--seed", "7")[1]
    assert a == b and parse_game(a).dim >= 1
    assert run(capsys, "gen", "qss", "--seed", "3")[0] == 0
    assert run(capsys, "gen", "qss", "--values", "1")[0] == 2


def test_missing_file(capsys):
    code, _, err = run(capsys, "solve", "/nonexistent.game")
    assert code == 2 and "nonexistent" in err


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "mwrgames", "frontier", RUNNING, "--format", "json"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"v0": [[8, 8]]}
