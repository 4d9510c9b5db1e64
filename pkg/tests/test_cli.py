import json
import subprocess
import sys

import pytest

from ramdepth.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_hh_trivial_is_identity(capsys, tmp_path):
    path = tmp_path / "trivial.json"
    path.write_text(json.dumps({"mul": [[0]], "inertia": [0], "depth": {}}))
    for source in (str(path), "trivial"):
        code, rep, _ = run(capsys, "hh", "--datum", source)
        assert code == 0
        assert rep["phi"] == {"breaks": [], "slopes": [1]}


def test_verify_conductor_on_cubic(capsys):
    code, rep, _ = run(capsys, "verify", "--suite", "c-equals-u-minus-ell", "--tower", "AS3", "--seed", "7")
    assert code == 0 and rep["ok"] and rep["seed"] == 7
    assert rep["items"][0]["detail"] == {"c": "2/3", "ell": "1/3", "u": "1/1"}


def test_counterexample_command(capsys):
    code, rep, _ = run(capsys, "cft", "counterexample", "--p", "3")
    assert code == 0
    assert rep["quotient_invariants"] == [3, 3] and rep["d"] == 2


def test_quotient_command(capsys):
    code, rep, _ = run(capsys, "cft", "quotient", "--p", "2", "--S", "2,4..")
    assert code == 0 and rep["quotient"]["invariants"] == [2, 2]


def test_dlparam_command(capsys):
    code, rep, _ = run(capsys, "dlparam", "--group", "SL2", "--x", "1/4", "--r", "1/2", "--X", "[1,1]", "--field", "9")
    assert code == 0 and rep["nondegenerate"] is True
    assert rep["class"].startswith("r=1/2;")
    code, rep, _ = run(capsys, "dlparam", "--group", "SL2", "--x", "1/4", "--r", "1/2", "--X", "[[1,0],[0,0]]", "--field", "9")
    assert code == 0 and rep["nondegenerate"] is False


def test_depth0_command(capsys):
    code, rep, _ = run(capsys, "depth0", "--group", "SL2", "--q", "3")
    assert code == 0 and rep["count"] == 3 and rep["cross_check"]["agrees"]


def test_input_file_supplies_options(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"group": "GL1", "q": 3}))
    code, rep, _ = run(capsys, "depth0", "--input", str(cfg))
    assert code == 0 and rep["count"] == 2


def test_plot_data(capsys):
    code, rep, _ = run(capsys, "plot-data", "--tower", "AS3")
    assert code == 0
    assert [(s["x"], s["slope"]) for s in rep["segments"]] == [("0/1", "3/1"), ("1/3", "1/1")]


@pytest.mark.parametrize("argv", [
    ["hh", "--datum", "{not json"],
    ["verify", "--suite", "no-such-suite"],
    ["dlparam", "--group", "Sp4", "--x", "0", "--r", "1", "--X", "[]"],
    ["depth0", "--group", "SL2"],
    ["depth0", "--input", "[1, 2]"],
    ["tower", "--tower", "F4:as1"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cft", "bogus"])
    assert exc.value.code == 2


def test_failing_suite_exits_one(capsys):
    code, rep, err = run(capsys, "tower", "--tower", "S3", "--suite", "tfae")
    assert code == 1 and rep["failing"] == ["tfae"]
    assert "tfae" in err


def test_reports_are_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        subprocess.run([sys.executable, "-m", "ramdepth", "verify", "--suite", "stable-association",
                        "--seed", "3", "--json-out", str(path)], check=True, capture_output=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
