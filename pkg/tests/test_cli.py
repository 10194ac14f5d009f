import io
import json
import subprocess
import sys

import pytest

from toptaut.cli import SUITES, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def lines(text):
    return [json.loads(x) for x in text.splitlines()]


def test_ag():
    code, out, _ = call("ag", "--g", "2")
    assert code == 0 and out == '{"schema":"tt/1","A_g":"1/2880"}\n'


def test_faber():
    code, out, _ = call("faber", "--g", "3", "--l", "1,0")
    assert code == 0 and lines(out) == [{"schema": "tt/1", "coeff": "5/1"}]


def test_gentop():
    code, out, _ = call("gentop", "--g", "2", "--d", "1")
    assert code == 0 and lines(out)[0]["coeffs"] == ["1/1"]


def test_hain_numeric_and_symbolic():
    code, out, _ = call("hain", "--g", "1", "--n", "2", "--a", "1,-1")
    assert code == 0
    poly = lines(out)[0]["poly"]
    assert {"monomial": {"D_1_2": 1}, "coeff": "1/1"} in poly
    code, out, _ = call("hain", "--g", "1", "--n", "2", "--symbolic")
    assert code == 0 and lines(out)[0]["symbolic"] is True


def test_dr_psi():
    code, out, _ = call("dr-psi", "--g", "2", "--m", "-5", "--t", "2,3")
    coeffs = sorted(t["coeff"] for t in lines(out)[0]["psi1"])
    assert code == 0 and coeffs == ["-13/25", "-17/25", "1/5"]


def test_vz_expand():
    code, out, _ = call("vz-expand", "--kind", "V", "--g", "2", "--f", "1,1")
    (term,) = lines(out)[0]["expansion"]
    assert code == 0 and term["coeff"] == "1/3"


@pytest.mark.parametrize("argv", [["bogus"], ["ag", "--g", "2", "--zzz"], ["ag"], ["faber", "--g", "3", "--l", "x"]])
def test_usage_errors_exit_two(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == ""
    assert err.startswith("tt: ") and err.count("\n") == 1


def test_domain_error_exits_two():
    code, _, err = call("faber", "--g", "3", "--l", "5,0")
    assert code == 2 and "domain error" in err


def test_verify_streams_items_then_summary():
    code, out, _ = call("verify", "lemma53", "--max-d", "8")
    rows = lines(out)
    assert code == 0
    assert [r["index"] for r in rows[:-1]] == list(range(6))
    assert rows[-1] == {"schema": "tt/1", "suite": "lemma53", "seed": 0, "items": 6, "failed": 0, "pass": True}


def test_verify_failure_exits_one(monkeypatch):
    import toptaut.cli as cli

    monkeypatch.setattr(cli, "item_intpsi", lambda g, a, b: ({"g": g}, False))
    code, out, _ = call("verify", "intpsi", "--trials", "2")
    assert code == 1 and lines(out)[-1]["failed"] == 2


SMALL = {
    "lemma51": ["--max-p", "8"],
    "lemma52": ["--bound", "5"],
    "lemma53": ["--max-d", "7"],
    "derivation": ["--g", "2", "--n", "2", "--trials", "4"],
    "gmatrix": ["--trials", "5"],
    "socle-first": ["--dmax", "4"],
    "socle-n1": ["--bound", "6"],
    "socle-n2": ["--bound", "4"],
    "socle-nk": ["--bound", "5"],
    "symmetry": ["--trials", "5"],
    "faber": ["--max-g", "4"],
    "pairing": ["--max-g", "3", "--max-n", "2", "--max-m", "1"],
    "hain": ["--max-g", "2", "--max-n", "3"],
    "intpsi": ["--trials", "5"],
}


def test_every_suite_has_a_small_case():
    assert set(SMALL) == set(SUITES)


@pytest.mark.parametrize("suite", SUITES)
def test_suites_are_reproducible(suite):
    argv = ["--seed", "7", "verify", suite, *SMALL[suite]]
    first, second = call(*argv), call(*argv)
    assert first == second and first[0] == 0


@pytest.mark.parametrize("suite", ["derivation", "symmetry", "lemma51"])
def test_parallel_output_matches_serial(suite):
    serial = call("verify", suite, *SMALL[suite], "--seed", "3")
    parallel = call("verify", suite, *SMALL[suite], "--seed", "3", "--max-threads", "2")
    assert serial == parallel


def test_seed_changes_random_suites():
    a = call("verify", "derivation", "--trials", "3", "--seed", "1")[1]
    b = call("verify", "derivation", "--trials", "3", "--seed", "2")[1]
    assert a != b


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"max_d": 6, "seed": 5}))
    code, out, _ = call("--config", str(cfg), "verify", "lemma53")
    assert code == 0 and lines(out)[-1]["items"] == 4 and lines(out)[-1]["seed"] == 5
    code, out, _ = call("--config", str(cfg), "verify", "lemma53", "--max-d", "5")
    assert lines(out)[-1]["items"] == 3


def test_bad_config(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"nope": 1}))
    assert call("--config", str(cfg), "ag", "--g", "2")[0] == 2
    assert call("--config", str(tmp_path / "missing.json"), "ag", "--g", "2")[0] == 2


def test_installed_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "toptaut.cli", "ag", "--g", "3"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["A_g"] == "1/120960"
    proc = subprocess.run([sys.executable, "-m", "toptaut.cli", "--nope"], capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stderr.startswith("tt: ")
