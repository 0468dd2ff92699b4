import io
import json
import subprocess
import sys

import pytest

from haarwell.cli import EXIT_CAP, EXIT_FAIL, EXIT_POLE, EXIT_USAGE, Config, main
from haarwell.weingarten import clear_memo


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv,expected", [
    (["wg", "unitary", "2", "(1 2)", "--symbolic"], "-1/(n^3-n)"),
    (["wg", "unitary", "2", "e", "--n", "5"], "1/24"),
    (["wg", "free", "4", "{1,2}{3,4}|{1,4}{2,3}", "--n", "3"], "-1/24"),
    (["wg", "orthogonal", "4", "{1,2}{3,4}|{1,2}{3,4}", "--symbolic"], "(n+1)/(n^3+n^2-2n)"),
    (["integrate", "unitary", "u[1,1] ~u[1,1]", "--symbolic"], "1/n"),
    (["integrate", "orthogonal", "u[1,1] u[1,1] u[1,1] u[1,1]", "--symbolic"], "3/(n^2+2n)"),
    (["integrate", "unitary", "u[1,1]", "--n", "7"], "0"),
    (["integrate", "free", "u[1,1] u[1,1] u[1,1] u[1,1]", "--n", "5/2"], "8/35"),
])
def test_spec_examples(argv, expected):
    code, out = run(*argv)
    assert code == 0
    assert out.strip() == expected


def test_global_options_after_subcommand():
    code, out = run("integrate", "unitary", "u[1,1] ~u[1,1]", "--n", "4", "--json", "--no-cache")
    assert json.loads(out)["value"] == "1/4"


def test_default_is_symbolic():
    assert run("wg", "unitary", "2", "(1 2)")[1].strip() == "-1/(n^3-n)"


def test_methods_cross_check():
    code, out = run("wg", "unitary", "3", "(1 2 3)", "--n", "10", "--method", "gram",
                    "--method", "character", "--method", "series:3")
    assert code == 0
    assert "(1 2 3) diff: 0" in out
    assert "truncation ok" in out
    code, out = run("wg", "unitary", "3", "(1 2)", "--symbolic", "--method", "character")
    assert out.strip() == str(run("wg", "unitary", "3", "(1 2)")[1].strip())


def test_all_classes_json():
    code, out = run("--json", "wg", "unitary", "3", "--all-classes")
    assert code == 0
    rows = json.loads(out)
    assert [r["key"] for r in rows] == ["(1 2 3)", "(1 2)", "e"]
    assert rows[0]["value"] == "2/(n^5-5n^3+4n)"


def test_csv_format():
    code, out = run("--format", "csv", "integrate", "unitary", "u[1,1] ~u[1,1]", "--n", "4")
    lines = out.strip().splitlines()
    assert lines[0] == "group,n,query,value"
    assert lines[1] == 'unitary,4,"u[1,1] ~u[1,1]",1/4'


def test_integrate_json():
    code, out = run("--json", "integrate", "unitary", "u[1,1] u[2,2] ~u[1,2] ~u[2,1]", "--n", "10")
    assert json.loads(out) == {"group": "unitary", "n": "10", "query": "u[1,1] u[2,2] ~u[1,2] ~u[2,1]",
                               "value": "-1/990"}


def test_exit_codes(capsys):
    assert run("wg", "unitary", "9", "e", "--n", "5")[0] == EXIT_CAP
    assert run("integrate", "unitary", "u[1,1] ~u[1,1]", "--n", "0")[0] == EXIT_POLE
    assert run("wg", "unitary", "2", "e", "--n", "-1")[0] == EXIT_POLE
    assert run("bogus")[0] == EXIT_USAGE
    assert run("wg", "unitary", "2", "(1 5)")[0] == EXIT_USAGE
    assert run("integrate", "unitary", "u[1,x]")[0] == EXIT_USAGE
    assert run("wg", "unitary", "2", "e", "--n", "3", "--symbolic")[0] == EXIT_USAGE
    assert run("wg", "orthogonal", "4", "{1,2}|{1,2}")[0] == EXIT_USAGE
    assert run("wg", "free", "4", "{1,2}{3,4}|{1,4}{2,3}", "--method", "character")[0] == EXIT_USAGE
    assert run("verify", "mc:100", "--k", "1", "--n", "3")[0] == EXIT_USAGE  # no seed
    err = capsys.readouterr().err
    assert "cap" in err and "pole" in err


def test_verify_suites():
    code, out = run("verify", "three-path", "--k", "4", "--symbolic")
    assert code == 0 and out.strip().endswith("PASS")
    code, out = run("verify", "bounds", "--k", "3", "--n", "25")
    assert code == 0 and out.strip().endswith("PASS")
    code, out = run("verify", "recursion", "--k", "4")
    assert code == 0 and "0 violations" in out
    code, out = run("verify", "three-path", "--k", "3", "--n", "12")
    assert code == 0


def test_verify_mc_deterministic():
    code, out = run("verify", "mc:20000", "--k", "2", "--n", "10", "--seed", "42")
    assert code == 0 and "z=" in out and out.strip().endswith("PASS")
    assert run("verify", "mc:20000", "--k", "2", "--n", "10", "--seed", "42")[1] == out
    code, js = run("--json", "verify", "mc:2000", "--k", "1", "--n", "3", "--seed", "1")
    rows = json.loads(js)
    assert {"query", "n", "samples", "seed", "estimate", "se", "exact", "z"} <= set(rows[0])


def test_failed_check_exit_code(monkeypatch):
    import haarwell.cli as cli

    class Bad:
        ok = False
        checked = 1
        mode = "symbolic"
        violations = [("e", "1")]

    monkeypatch.setattr(cli, "wg_unitary_recursion_check", lambda k, n: Bad())
    assert run("verify", "recursion", "--k", "2")[0] == EXIT_FAIL


def test_channel():
    code, out = run("channel", "--n", "30", "--k", "2", "--t", "1/2", "--seed", "3")
    assert code == 0 and "lambda_4" in out
    assert run("channel", "--n", "30", "--k", "2", "--t", "1/2", "--seed", "3")[1] == out
    assert run("channel", "--n", "100", "--k", "2", "--seed", "1")[0] == EXIT_CAP


def test_cache_round_trip_is_byte_identical(tmp_path):
    args = ["--cache-dir", str(tmp_path), "--json", "wg", "free", "6", "--all-classes", "--n", "5/2"]
    clear_memo()
    first = run(*args)[1]
    assert list(tmp_path.glob("free-k6-*.wgt"))
    clear_memo()
    second = run(*args)[1]
    assert first == second


def test_no_cache_writes_nothing(tmp_path, monkeypatch):
    monkeypatch.setenv("HAARWELL_CACHE", str(tmp_path))
    clear_memo()
    run("--no-cache", "wg", "unitary", "3", "e")
    assert not list(tmp_path.iterdir())
    clear_memo()
    run("wg", "unitary", "3", "e")
    assert list(tmp_path.glob("unitary-k3-*.wgt"))


def test_config_caps_never_loosen():
    cfg = Config(None, max_unitary_k=20, max_free_k=4)
    assert cfg.max_unitary_k == 7 and cfg.max_free_k == 4


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "haarwell.cli", "wg", "unitary", "2", "e", "--n", "5",
                           "--no-cache"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1/24"
