import io
import json
import subprocess
import sys

from oremodel.cli import main
from support import PROBLEMS


def run(argv):
    out = io.StringIO()
    return main(argv, stdout=out), out.getvalue()


def test_minimize_prints_three_rows():
    code, out = run([str(PROBLEMS / "cusp_weyl.txt"), "--minimize"])
    assert code == 0
    assert "rows:    3" in out
    assert "verified: true" in out


def test_oracle_agreement_reported():
    code, out = run([str(PROBLEMS / "exkerp.txt"), "--oracle", "--output", "json"])
    data = json.loads(out)
    assert code == 0 and data["oracle_agrees"] is True and data["verified"] is True
    assert data["rows"] == [["1", "-t1^2"], ["0", "D1^2"], ["0", "t1*D1 - 1"]]


def test_oracle_not_available(tmp_path):
    f = tmp_path / "q.txt"
    f.write_text("algebra qdiff\nnvars 1\nsignal [t^2]\n")
    code, out = run([str(f), "--oracle", "--output", "json"])
    assert code == 0 and json.loads(out)["oracle_agrees"] is None


def test_flags_override_file(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("algebra weyl\nnvars 2\nsignal [t1^2 + t2]\norder degrevlex\n")
    _, out = run([str(f), "--order", "deglex", "--output", "json", "--no-verify"])
    data = json.loads(out)
    assert data["order"] == "deglex" and data["verified"] is None


def test_sw_opvars_flag(tmp_path):
    f = tmp_path / "sw.txt"
    f.write_text("algebra sw\nnvars 1\nsignal [t^2]\n")
    a = run([str(f), "--output", "json"])[1]
    b = run([str(f), "--output", "json", "--opvars-first", "false"])[1]
    assert json.loads(a)["verified"] and json.loads(b)["verified"]
    assert a != b


def test_probe_flag():
    code, out = run([str(PROBLEMS / "motivating.txt"), "--probe", "20", "--seed", "3", "--output", "json"])
    data = json.loads(out)
    assert code == 0 and data["probe"] == {"seed": 3, "trials": 20, "falsified": 20, "passed": True}


def test_probe_needs_scalar_signal():
    assert run([str(PROBLEMS / "exkerp.txt"), "--probe", "5"])[0] == 1


def test_exponential_problem(tmp_path):
    f = tmp_path / "e.txt"
    f.write_text("algebra difference\nnvars 1\nsignal [t*exp(2*t)]\n")
    code, out = run([str(f), "--output", "json"])
    assert code == 0 and json.loads(out)["verified"] is True


def test_stdin_and_determinism():
    text = (PROBLEMS / "cusp_weyl.txt").read_text()
    cmd = [sys.executable, "-m", "oremodel.cli", "-", "--output", "json"]
    a = subprocess.run(cmd, input=text, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, input=text, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["format_version"] == 1


def test_input_error_message(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("algebra weyl\nnvars 2\nsignal [t3]\n")
    assert run([str(f)])[0] == 1
    assert "unknown variable" in capsys.readouterr().err
