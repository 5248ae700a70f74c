"""Command-line contract: report shapes, exit codes, formats, cache files."""

import json
import os
import re
import subprocess
import sys

import pytest

import gamelab.cli as cli
import gamelab.verify
from gamelab.heaps import is_euclid_p
from gamelab.periodicity import HorizonExceeded


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def strip_timing(text: str) -> str:
    return re.sub(r'"timing_ms":[0-9.]+', '"timing_ms":T', text)


# -- report shape ---------------------------------------------------------------


def test_solve_report_shape_and_fragment(capsys):
    code, out, err = run_cli(capsys, "solve", "--ruleset", "nim", "--pos", "3,3")
    assert code == 0 and err == ""
    assert '"result":{"outcome":"P"}' in out
    assert out.startswith(
        '{"command":"solve","params":{"ruleset":"nim","compound":null,'
        '"pos":[3,3],"phase":null,"convention":"normal"},'
        '"result":{"outcome":"P"},"timing_ms":'
    )
    report = json.loads(out)
    assert list(report) == ["command", "params", "result", "timing_ms", "cache"]
    assert report["cache"]["entries"] > 0


def test_output_is_deterministic_modulo_timing(capsys):
    _, first, _ = run_cli(capsys, "solve", "--ruleset", "wythoff", "--pos", "4,7")
    _, second, _ = run_cli(capsys, "solve", "--ruleset", "wythoff", "--pos", "4,7")
    assert strip_timing(first) == strip_timing(second)


def test_solve_misere_and_compound(capsys):
    code, out, _ = run_cli(
        capsys, "solve", "--ruleset", "nim", "--pos", "1,1", "--convention", "misere"
    )
    assert code == 0 and '"outcome":"N"' in out
    code, out, _ = run_cli(
        capsys, "solve", "--compound", "nim-euclid", "--pos", "7,12"
    )
    assert code == 0 and '"outcome":"P"' in out
    assert '"phase":"before"' in out
    code, out, _ = run_cli(
        capsys, "solve", "--compound", "nim-euclid", "--pos", "7,12", "--phase", "after"
    )
    assert code == 0 and '"outcome":"N"' in out and '"phase":"after"' in out


def test_solve_subtraction_ruleset_string(capsys):
    code, out, _ = run_cli(
        capsys, "solve", "--ruleset", "subtraction:1,2", "--pos", "6"
    )
    assert code == 0 and '"outcome":"P"' in out


def test_grundy_report(capsys):
    code, out, _ = run_cli(capsys, "grundy", "--ruleset", "nim", "--pos", "2,3")
    assert code == 0 and '"result":{"grundy":1}' in out
    code, out, _ = run_cli(
        capsys, "grundy", "--compound", "nim-euclid", "--pos", "2,4"
    )
    assert code == 0 and '"result":{"grundy":0}' in out


def test_period_interval_fragment(capsys):
    code, out, _ = run_cli(capsys, "period", "--k1", "2", "--k2", "3")
    assert code == 0
    assert '"predicted":4,"certified":{"preperiod":0,"period":4}' in out
    assert json.loads(out)["cache"] is None


def test_period_set_form_key_order(capsys):
    code, out, _ = run_cli(capsys, "period", "--s1", "1,2", "--r2", "1,2,3")
    assert code == 0
    result = json.loads(out)["result"]
    assert list(result) == ["r2", "r2_values", "outcome", "values"]
    assert result["outcome"] == {"preperiod": 0, "period": 4}
    code, out, _ = run_cli(
        capsys, "period", "--s1", "1,2", "--r2", "1,2,3", "--convention", "misere"
    )
    assert code == 0
    assert list(json.loads(out)["result"]) == ["r2", "outcome"]


def test_cram_reports(capsys):
    code, out, _ = run_cli(capsys, "cram", "--rows", "3", "--cols", "4")
    assert code == 0 and '"result":{"outcome":"P"}' in out
    code, out, _ = run_cli(capsys, "cram", "--rows", "3", "--cols", "5", "--bluff")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["outcome"] == "N"
    assert result["bluff"] == {
        "holds": True,
        "phase1_value": 1,
        "total_phase1_moves": 10,
        "losing_phase1_moves": 0,
    }


def test_heatmap_json(capsys):
    code, out, _ = run_cli(capsys, "heatmap", "--max", "2")
    assert code == 0
    assert json.loads(out)["result"]["grid"] == [[1, 0, 2], [0, 1, 3], [2, 3, 1]]


def test_verify_clean_run(capsys):
    code, out, _ = run_cli(capsys, "verify", "push-lemma")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["counterexamples"] == 0
    assert result["reports"][0]["suite"] == "push-lemma"
    assert result["reports"][0]["checks"] > 0


def test_verify_counterexamples_exit_three(capsys, monkeypatch):
    def fake(name):
        return [{"suite": name, "checks": 1, "counterexamples": [{"where": 1}]}]

    monkeypatch.setattr(gamelab.verify, "run_suite", fake)
    code, out, _ = run_cli(capsys, "verify", "push-lemma")
    assert code == 3
    assert json.loads(out)["result"]["counterexamples"] == 1


# -- csv ------------------------------------------------------------------------


def test_ppos_csv_exact(capsys):
    code, out, _ = run_cli(
        capsys, "ppos", "--compound", "nim-euclid", "--max", "10", "--format", "csv"
    )
    assert code == 0
    assert out == "a,b\n0,1\n2,4\n3,5\n6,10\n"


def test_heatmap_csv_exact(capsys):
    code, out, _ = run_cli(capsys, "heatmap", "--max", "3", "--format", "csv")
    assert code == 0
    assert out == (
        "a\\b,0,1,2,3\n"
        "0,1,0,2,3\n"
        "1,0,1,3,2\n"
        "2,2,3,1,4\n"
        "3,3,2,4,1\n"
    )


def test_global_flags_leading_or_trailing(capsys):
    _, trailing, _ = run_cli(
        capsys, "ppos", "--compound", "wythoff", "--max", "8", "--format", "csv"
    )
    _, leading, _ = run_cli(
        capsys, "--format", "csv", "ppos", "--compound", "wythoff", "--max", "8"
    )
    assert trailing == leading
    assert trailing.splitlines()[0] == "a,b"


def test_csv_unavailable_for_scalar_commands(capsys):
    code, _, err = run_cli(
        capsys, "solve", "--ruleset", "nim", "--pos", "3,3", "--format", "csv"
    )
    assert code == 64 and "usage error" in err


# -- ppos oracles -----------------------------------------------------------------


def test_ppos_base_oracle_euclid(capsys):
    code, out, _ = run_cli(
        capsys, "ppos", "--compound", "euclid-normal", "--max", "8"
    )
    assert code == 0
    pairs = {tuple(p) for p in json.loads(out)["result"]["pairs"]}
    want = {
        (a, b)
        for a in range(1, 9)
        for b in range(a, 9)
        if is_euclid_p((a, b))
    }
    assert pairs == want
    assert all(a >= 1 and b >= 1 for a, b in pairs)


def test_ppos_wythoff_pairs(capsys):
    code, out, _ = run_cli(capsys, "ppos", "--compound", "wythoff", "--max", "10")
    assert code == 0
    assert json.loads(out)["result"]["pairs"] == [
        [0, 0], [1, 2], [3, 5], [4, 7], [6, 10]
    ]
    assert json.loads(out)["result"]["count"] == 5


def test_ppos_unknown_oracle(capsys):
    code, _, err = run_cli(capsys, "ppos", "--compound", "frob", "--max", "5")
    assert code == 1 and "unknown oracle" in err


# -- exit codes -------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv,code",
    [
        (["solve", "--ruleset", "nim", "--pos", "3,x"], 1),
        (["solve", "--ruleset", "frob", "--pos", "3,3"], 1),
        (["grundy", "--ruleset", "euclid", "--pos", "3"], 1),
        (["heatmap", "--max", "401"], 1),
        (["cram", "--rows", "0", "--cols", "4"], 1),
        (["cram", "--rows", "9", "--cols", "8"], 1),
        (["period", "--k1", "0", "--k2", "3"], 1),
        (["solve", "--compound", "frob", "--pos", "3,3"], 64),
        (["solve", "--pos", "3,3"], 64),
        (["solve", "--ruleset", "nim", "--compound", "nim-euclid", "--pos", "1"], 64),
        (["solve", "--ruleset", "nim", "--pos", "3,3", "--phase", "before"], 64),
        (["heatmap", "--max", "4", "--jobs", "0"], 64),
        (["period", "--k1", "2"], 64),
        (["period"], 64),
        (["period", "--k1", "2", "--s1", "1,2", "--k2", "3", "--r2", "1"], 64),
        (["verify", "no-such-suite"], 64),
        (["frobnicate"], 64),
        ([], 64),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = run_cli(capsys, *argv)
    assert got == code, (argv, out, err)
    if code != 0:
        assert err != ""


def test_horizon_exceeded_exit_two(capsys, monkeypatch):
    def blow_up(k1, k2, convention=None):
        raise HorizonExceeded("stream too short")

    monkeypatch.setattr(cli, "interval_compound_certificate", blow_up)
    code, _, err = run_cli(capsys, "period", "--k1", "2", "--k2", "3")
    assert code == 2 and "resource limit" in err


def test_memo_cap_env_exit_codes():
    env = dict(os.environ, GAMELAB_MEMO_CAP="10")
    proc = subprocess.run(
        [sys.executable, "-m", "gamelab.cli", "solve", "--ruleset", "nim", "--pos", "30,31"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 2, proc.stderr
    assert "resource limit" in proc.stderr
    env["GAMELAB_MEMO_CAP"] = "frog"
    proc = subprocess.run(
        [sys.executable, "-m", "gamelab.cli", "solve", "--ruleset", "nim", "--pos", "3,3"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 1


def test_installed_script():
    proc = subprocess.run(
        ["gamelab", "solve", "--ruleset", "nim", "--pos", "3,3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert '"result":{"outcome":"P"}' in proc.stdout


# -- cache files ------------------------------------------------------------------


def test_cache_round_trip(capsys, tmp_path):
    path = str(tmp_path / "nim.cache")
    code, out, _ = run_cli(
        capsys, "solve", "--ruleset", "nim", "--pos", "12,13", "--cache", path
    )
    assert code == 0
    stats = json.loads(out)["cache"]
    assert stats["file"] == path
    assert stats["loaded"] == 0
    assert stats["saved"] is True
    assert os.path.getsize(path) > len(b"GLMC")
    code, out, _ = run_cli(
        capsys, "solve", "--ruleset", "nim", "--pos", "12,13", "--cache", path
    )
    assert code == 0
    stats = json.loads(out)["cache"]
    assert stats["loaded"] > 0


def test_cache_tag_mismatch_ignored(capsys, tmp_path):
    path = str(tmp_path / "mix.cache")
    run_cli(capsys, "solve", "--ruleset", "nim", "--pos", "9,10", "--cache", path)
    code, out, _ = run_cli(
        capsys, "solve", "--ruleset", "wythoff", "--pos", "4,7", "--cache", path
    )
    assert code == 0
    assert json.loads(out)["cache"]["loaded"] == 0
    # A solve cache (outcome table) must not feed a grundy run either.
    run_cli(capsys, "solve", "--ruleset", "nim", "--pos", "9,10", "--cache", path)
    code, out, _ = run_cli(
        capsys, "grundy", "--ruleset", "nim", "--pos", "9,10", "--cache", path
    )
    assert code == 0
    assert json.loads(out)["cache"]["loaded"] == 0


def test_corrupt_cache_ignored(capsys, tmp_path):
    path = tmp_path / "bad.cache"
    path.write_bytes(b"GLMC" + b"\xff" * 40)
    code, out, _ = run_cli(
        capsys, "solve", "--ruleset", "nim", "--pos", "5,6", "--cache", str(path)
    )
    assert code == 0
    stats = json.loads(out)["cache"]
    assert stats["loaded"] == 0 and stats["saved"] is True
    # The rewritten file is well-formed now.
    code, out, _ = run_cli(
        capsys, "solve", "--ruleset", "nim", "--pos", "5,6", "--cache", str(path)
    )
    assert code == 0
    assert json.loads(out)["cache"]["loaded"] > 0


def test_cache_on_heatmap(capsys, tmp_path):
    path = str(tmp_path / "heat.cache")
    code, first, _ = run_cli(capsys, "heatmap", "--max", "6", "--cache", path)
    assert code == 0
    code, second, _ = run_cli(capsys, "heatmap", "--max", "6", "--cache", path)
    assert code == 0
    assert json.loads(second)["cache"]["loaded"] > 0
    assert json.loads(first)["result"] == json.loads(second)["result"]


def test_heatmap_jobs_flag(capsys):
    _, solo, _ = run_cli(capsys, "heatmap", "--max", "5")
    _, multi, _ = run_cli(capsys, "heatmap", "--max", "5", "--jobs", "3")
    assert json.loads(solo)["result"] == json.loads(multi)["result"]


def test_exit_code_constants():
    assert (cli.EX_OK, cli.EX_DOMAIN, cli.EX_RESOURCE) == (0, 1, 2)
    assert (cli.EX_COUNTEREXAMPLES, cli.EX_USAGE) == (3, 64)
