import json
import math

import pytest

from hgauss.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == EXIT_OK
    names = [ln.split()[0] for ln in out.splitlines()]
    assert names == ["plane", "scherk", "rank1", "daniel", "paraboloid", "vertical_plane", "cmc_vertical"]


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--surface", "catalog:plane?a=1&b=2&c=0", "--at", "0,0", "--json")
    vals = json.loads(out)
    assert code == EXIT_OK
    assert (vals["E"], vals["F"], vals["G"], vals["H"]) == (2, 2, 5, 0)
    assert vals["L"] == pytest.approx(2 / math.sqrt(6))


def test_eval_negative_point(capsys):
    code, out, _ = run(capsys, "eval", "--surface", "expr:x*y/2", "--at=-1,0.5")
    assert code == EXIT_OK and "phi_u" in out


def test_eval_vertical(capsys):
    code, out, _ = run(capsys, "eval", "--surface", "vexpr:t^2", "--at", "0", "--json")
    assert code == EXIT_OK and json.loads(out)["H"] == -1.0


def test_grid_to_file(tmp_path, capsys):
    path = tmp_path / "g.csv"
    code, _, _ = run(capsys, "grid", "--surface", "catalog:scherk?k=1", "--nx", "3", "--ny", "4", "--out", str(path))
    lines = path.read_text().splitlines()
    assert code == EXIT_OK and len(lines) == 13 and lines[0].startswith("x,y,f,p,q,w")


def test_grid_json_stdout(capsys):
    code, out, _ = run(capsys, "grid", "--surface", "catalog:plane", "--nx", "2", "--ny", "2",
                       "--domain", "0,1,0,1", "--format", "json")
    assert code == EXIT_OK and len(json.loads(out)) == 4


def test_grid_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        run(capsys, "grid", "--surface", "catalog:daniel", "--nx", "4", "--ny", "4", "--out", str(p))
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_geodesic(capsys):
    code, out, _ = run(capsys, "geodesic", "--from", "0,0", "--dir", "1,0", "--tmax", "1", "--step", "0.01")
    last = out.splitlines()[-1].split(",")
    assert code == EXIT_OK and float(last[1]) == pytest.approx(math.sinh(1), abs=1e-8)


def test_check_pass(capsys):
    code, out, _ = run(capsys, "check", "--suite", "gans", "--seed", "3")
    assert code == EXIT_OK and "seed=3" in out and out.splitlines()[-1].startswith("gans: PASS")


def test_check_fail_exit_1(capsys):
    code, out, _ = run(capsys, "check", "--suite", "heis", "--tol", "0")
    assert code == EXIT_FAIL and "[FAIL]" in out


def test_check_cmc_fails(capsys):
    code, out, _ = run(capsys, "check", "--suite", "cmc")
    assert code == EXIT_FAIL and "[FAIL] C12." in out


@pytest.mark.parametrize("argv", [
    ["check", "--suite", "nosuch"],
    ["eval", "--surface", "catalog:nosuch", "--at", "0,0"],
    ["eval", "--surface", "expr:x+", "--at", "0,0"],
    ["eval", "--surface", "catalog:plane", "--at", "0"],
    ["grid", "--surface", "expr:ln(x)", "--nx", "3", "--ny", "3"],
    ["grid", "--surface", "catalog:plane", "--out", "/nonexistent/dir/x.csv"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err.startswith("hgauss:")


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["grid"])
    assert info.value.code == EXIT_USAGE
