import json
import subprocess
import sys

import pytest

from bigcell.cli import main, run
from bigcell.serialize import matrix_from_obj


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def mat(family, entries, p=3, e=1):
    return {"family": family, "n": len(entries), "p": p, "e": e, "entries": entries}


def test_f_eval_identity(tmp_path):
    f = write(tmp_path, "id.json", mat("SL", [["1", "0"], ["0", "1"]]))
    out, code = run(["f-eval", f])
    assert code == 0 and out == {"value": "1", "valuation": "0"}


def test_f_eval_siegel(tmp_path):
    f = write(tmp_path, "g.json", mat("Sp", [["1/2", "0", "0", "0"], ["0", "1", "0", "0"],
                                             ["0", "0", "2", "0"], ["0", "0", "0", "1"]]))
    out, code = run(["f-eval", f, "--group", "sp4-siegel"])
    assert out == {"value": "8", "valuation": "0"}


def test_factorize_round_trip(tmp_path):
    f = write(tmp_path, "g.json", mat("SL", [["1", "2"], ["1", "3"]]))
    out, code = run(["factorize", f, "--group", "sl2-borel"])
    assert code == 0
    parts = [matrix_from_obj(out[k]) for k in ("u_minus", "levi", "u_plus")]
    assert parts[0] @ parts[1] @ parts[2] == matrix_from_obj(json.loads(open(f).read()))
    assert out["u_minus"]["entries"] == [["1", "2/3"], ["0", "1"]]


def test_factorize_off_cell(tmp_path):
    f = write(tmp_path, "w.json", mat("SL", [["0", "-1"], ["1", "0"]]))
    out, code = run(["factorize", f])
    assert code == 2 and "big cell" in out["error"]


def test_lemma_suite_pass_and_determinism():
    a = subprocess.run([sys.executable, "-m", "bigcell.cli", "lemma-suite", "--group", "sl2-borel", "--seed", "7"],
                       capture_output=True, check=False)
    b = subprocess.run([sys.executable, "-m", "bigcell.cli", "lemma-suite", "--group", "sl2-borel", "--seed", "7"],
                       capture_output=True, check=False)
    assert a.returncode == 0 and a.stdout == b.stdout
    assert json.loads(a.stdout)["ok"] is True


def test_omega_check_rational_point(tmp_path):
    u = write(tmp_path, "u.json", mat("SL", [["1", "1"], ["0", "1"]]))
    reps = write(tmp_path, "reps.json", [mat("SL", [["1", "0"], ["0", "1"]]), mat("SL", [["0", "-1"], ["1", "-1"]])])
    out, code = run(["omega-check", u, "--m", "0", "--reps", reps])
    assert code == 0 and out["member"] is False
    assert out["violations"][0]["valuation"] == "inf"


def test_omega_check_enumerated(tmp_path):
    u = write(tmp_path, "u.json", mat("SL", [["1", "t"], ["0", "1"]], e=2))
    out, _ = run(["omega-check", u, "--m", "1"])
    assert out["member"] is True and out["reps"] == 324


def test_star_and_jfactor(tmp_path):
    g = write(tmp_path, "w.json", mat("SL", [["0", "-1"], ["1", "0"]], e=2))
    u = write(tmp_path, "u.json", mat("SL", [["1", "t"], ["0", "1"]], e=2))
    out, code = run(["star", g, u])
    assert code == 0 and out["star"]["entries"][0][1] == "-1/3*t"
    out, code = run(["jfactor", g, u])
    assert out["j"]["entries"] == [["1/3*t", "0"], ["1", "t"]]


def test_star_point_outside_u_minus(tmp_path):
    g = write(tmp_path, "w.json", mat("SL", [["0", "-1"], ["1", "0"]]))
    out, code = run(["star", g, g])
    assert code == 2


def test_cocycle_and_duality_suites():
    out, code = run(["cocycle-test", "--group", "sp4-siegel", "--samples", "5", "--e", "2"])
    assert code == 0 and out["ok"]
    out, code = run(["duality-suite", "--group", "sl2-borel", "--sigma", "sigma_s:2", "--samples", "4", "--e", "2"])
    assert code == 0 and out["ok"]
    out, code = run(["duality-suite", "--group", "sp4-siegel", "--sigma", '{"type": "sym", "k": 1, "block": 1}',
                     "--samples", "2"])
    assert code == 0 and out["ok"]


def test_violation_exit_code(monkeypatch):
    import bigcell.cell as cell

    monkeypatch.setattr(cell, "f_minor", lambda g, d: g.entries[0][0] * 0 + 2)
    out, code = run(["lemma-suite", "--group", "sl2-borel", "--samples", "2"])
    assert code == 1 and out["counterexample"]["check"] == "character"


def test_malformed_json_reports_position(tmp_path):
    f = write(tmp_path, "bad.json", '{"family": "SL",\n "n": 2 "p": 3}')
    out, code = run(["f-eval", f])
    assert code == 2 and "bad.json" in out["error"] and "line 2 column" in out["error"]


@pytest.mark.parametrize("obj,needle", [
    (mat("SL", [["2", "0"], ["0", "1"]]), "not an element"),
    ({"family": "SO", "n": 2, "p": 3, "entries": [["1", "0"], ["0", "1"]]}, "family"),
    ({"family": "SL", "n": 2, "p": 3, "entries": [["1", "0"]]}, "2x2"),
    ({"family": "SL", "n": 2, "p": 4, "entries": [["1", "0"], ["0", "1"]]}, "prime"),
    (mat("SL", [["1", "y"], ["0", "1"]]), "unsupported"),
])
def test_input_errors(tmp_path, obj, needle):
    f = write(tmp_path, "m.json", obj)
    out, code = run(["f-eval", f])
    assert code == 2 and needle in out["error"]


@pytest.mark.parametrize("argv", [["f-eval"], ["nope"], ["lemma-suite"], ["lemma-suite", "--group", "so3"],
                                  ["lemma-suite", "--group", "gl4", "--partition", "2,1"],
                                  ["duality-suite", "--group", "sl2", "--sigma", "weird"]])
def test_usage_errors(argv):
    assert run(argv)[1] == 2


def test_guard_flag_and_env(monkeypatch):
    out, code = run(["cocycle-test", "--group", "sl2-borel", "--samples", "5", "--guard-bits", "8"])
    assert code == 3
    monkeypatch.setenv("BIGCELL_GUARD_BITS", "8")
    assert run(["cocycle-test", "--group", "sl2-borel", "--samples", "5"])[1] == 3
    assert run(["cocycle-test", "--group", "sl2-borel", "--samples", "5", "--guard-bits", "100000"])[1] == 0


def test_main_writes_json(tmp_path, capsys):
    f = write(tmp_path, "id.json", mat("GL", [["1", "0"], ["0", "1"]]))
    assert main(["f-eval", f]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "1"
