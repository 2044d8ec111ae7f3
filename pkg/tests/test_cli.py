import json
import subprocess
import sys

import pytest

from sl2charvar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cheb_text(capsys):
    code, out, _ = run(capsys, "cheb", "3")
    assert code == 0
    assert out.splitlines()[0] == "c_3 = t^2-1, d_3 = -t"
    code, out, _ = run(capsys, "cheb", "0")
    assert out.splitlines()[0] == "c_0 = 0, d_0 = 1"
    code, out, _ = run(capsys, "cheb", "4", "6", "--gcd")
    assert code == 0 and "gcd = c_2 = t" in out.splitlines()


def test_cheb_json(capsys):
    code, out, _ = run(capsys, "cheb", "-3", "--json")
    data = json.loads(out)
    assert data["pairs"][0]["c_coeffs"] == "1,0,-1"
    assert data["passed"] is True


def test_components(capsys):
    code, out, _ = run(capsys, "components", "2", "1", "-2", "-2", "--json")
    data = json.loads(out)
    assert code == 0
    dims = {c["id"]: c["dim"] for c in data["components"]}
    assert dims[9] == "0" and all(dims[i] == "empty" for i in range(1, 9))
    assert data["graph"] == {"nodes": [9], "edges": []}
    code, out, _ = run(capsys, "components", "2", "3", "-2", "-3")
    assert code == 0 and "M1      2" in out
    code, out, _ = run(capsys, "components", "1", "1", "1", "1")
    assert code == 0 and "nodes: none" in out


def test_components_with_oracle(capsys):
    code, out, _ = run(capsys, "components", "2", "3", "-2", "-3", "--oracle")
    assert code == 0 and "oracle: agrees" in out
    code, _, err = run(capsys, "components", "12", "1", "-4", "-2", "--oracle", "--max-order", "8")
    assert code == 3 and "resource limit" in err


def test_integrality(capsys):
    code, out, _ = run(capsys, "integrality", "--gamma", "2", "1")
    assert code == 0 and "failing primes: {2}" in out
    code, out, _ = run(capsys, "integrality", "--gamma", "3", "1", "--json")
    data = json.loads(out)
    assert data["verdict"]["failing_primes"] == [3]
    assert {r["closed_form"] for r in data["valuations"]} == {"-1/3"}
    code, out, _ = run(capsys, "integrality", "2", "3", "-2", "-3")
    assert code == 0 and "failing primes: none" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--cheb", "12", "--oracle", "40", "--seed", "4", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["seed"] == 4
    # the literal square-difference combination is not an identity, so this suite reports a failure
    code, out, _ = run(capsys, "verify", "--ideals", "--json")
    data = json.loads(out)
    assert code == 1
    s = data["suites"]["ideals"]
    assert [f["name"] for f in s["failures"]] == ["c: literal combination equals g_n1^2 - g_n2^2"]
    assert s["corrected_combination"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["components", "0", "1", "1", "1"],
        ["cheb", "3", "--gcd"],
        ["cheb", "0", "0", "--gcd"],
        ["integrality", "--gamma", "4", "1"],
        ["integrality", "1", "2"],
        ["integrality", "2", "1", "-2", "-2", "--gamma", "2", "1"],
        ["verify"],
    ],
)
def test_invalid_input(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["cheb", "three"])
    assert e.value.code == 2


def test_resource_limits(capsys):
    code, _, err = run(capsys, "integrality", "--gamma", "3", "2", "--max-order", "100")
    assert code == 3
    code, _, err = run(capsys, "verify", "--ideals", "--max-gb-steps", "0")
    assert code == 3


def test_json_is_deterministic(capsys):
    for argv in (["components", "2", "3", "-2", "-3"], ["integrality", "--gamma", "2", "2"], ["verify", "--oracle", "30"]):
        a = run(capsys, *argv, "--json")[1]
        b = run(capsys, *argv, "--json")[1]
        assert a == b


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "sl2charvar", "cheb", "3"], capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.splitlines()[0] == "c_3 = t^2-1, d_3 = -t"
