import json
import subprocess
import sys

import pytest

from kwising.cli import run


def _run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def maps(tmp_path, capsys):
    paths = {}
    for name, argv in {
        "sq1": ["gen", "--kind", "square", "--n", "1", "--m", "1"],
        "tri2x2": ["gen", "--kind", "triangular", "--n", "2", "--m", "2"],
        "bouquet": ["gen", "--kind", "bouquet"],
    }.items():
        assert run(argv) == 0
        p = tmp_path / f"{name}.map"
        p.write_text(capsys.readouterr().out)
        paths[name] = str(p)
    return paths


def test_partition_from_stdin(capsys, monkeypatch, maps):
    text = open(maps["sq1"]).read()
    for method in ("kw", "oracle", "spins"):
        code, out, _ = _run(capsys, ["partition", "--weights", "critical", "--method", method], text, monkeypatch)
        rep = json.loads(out)
        assert code == 0 and rep["status"] == "ok"
        assert abs(rep["result"]["Z"] - 2) < 1e-9
        assert len(rep["map_sha256"]) == 64 and rep["hypotheses"]["passed"]


def test_spin_structures_listing(capsys, maps):
    code, out, _ = _run(capsys, ["spin-structures", "--input", maps["bouquet"]])
    rep = json.loads(out)["result"]
    assert code == 0 and rep["count"] == 16
    assert sorted(s["gauss_sum"] for s in rep["structures"]).count(4) == 10


def test_duality_check_reproducible(capsys, maps):
    argv = ["duality-check", "--input", maps["tri2x2"], "--random-characters", "10", "--seed", "7"]
    code, first, _ = _run(capsys, argv)
    assert code == 0
    assert json.loads(first)["result"]["max_residual"] <= 1e-9
    _, second, _ = _run(capsys, argv)
    assert first == second


@pytest.mark.parametrize(
    "argv",
    [
        ["tau", "--all-sign-characters"],
        ["tau", "--character", "exp:1/1,-1+0i"],
        ["laplacian", "--character", "0.6+0.8i,1", "--matrix"],
        ["delta-check", "--all-sign-characters"],
        ["validate"],
    ],
)
def test_map_commands(capsys, maps, argv):
    code, out, _ = _run(capsys, argv + ["--input", maps["sq1"]])
    assert code == 0, out
    assert json.loads(out)["status"] == "ok"


def test_dual_and_output_file(capsys, maps, tmp_path):
    target = tmp_path / "dual.map"
    assert run(["dual", "--input", maps["tri2x2"], "--output", str(target)]) == 0
    code, out, _ = _run(capsys, ["validate", "--input", str(target)])
    assert json.loads(out)["result"]["vertices"] == 8


def test_exit_codes(capsys, maps, tmp_path):
    code, _, err = _run(capsys, ["tau", "--input", maps["sq1"], "--character", "2,1"])
    assert code == 2 and "unimodular" in err
    code, out, _ = _run(capsys, ["delta-check", "--input", maps["bouquet"]])
    assert code == 1 and json.loads(out)["status"] == "error"
    bad = tmp_path / "k3.map"
    bad.write_text(
        '{"darts":6,"reversal":[1,0,3,2,5,4],"rotation":[5,2,1,4,3,0],'
        '"theta":[{"num":1,"den":3},{"num":1,"den":3},{"num":1,"den":3}]}'
    )
    code, out, _ = _run(capsys, ["partition", "--input", str(bad)])
    assert code == 3 and json.loads(out)["status"] == "hypothesis_violation"
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 2
    code, _, _ = _run(capsys, ["duality-check", "--input", maps["sq1"], "--random-characters", "3"])
    assert code == 2


def test_nonprop_and_sweeps(capsys, maps):
    code, out, _ = _run(capsys, ["nonprop-probe", "--input", maps["bouquet"], "--seed", "1"])
    assert code == 0 and json.loads(out)["result"]["spread"] > 1.01
    code, out, _ = _run(capsys, ["coupling-check", "--sweep", "1000", "--seed", "3"])
    assert code == 0 and json.loads(out)["result"]["max_residual"] <= 1e-12
    code, out, _ = _run(capsys, ["coupling-check", "--theta", "1/4"])
    assert code == 0
    code, out, _ = _run(capsys, ["free-energy", "--n-max", "4"])
    assert code == 0 and json.loads(out)["result"]["gap_monotone_from_2"]


def test_console_pipeline():
    gen = subprocess.run(
        [sys.executable, "-m", "kwising", "gen", "--kind", "square", "--n", "1", "--m", "1"],
        capture_output=True, text=True, check=True,
    )
    part = subprocess.run(
        [sys.executable, "-m", "kwising", "partition", "--weights", "critical"],
        input=gen.stdout, capture_output=True, text=True,
    )
    assert part.returncode == 0
    assert abs(json.loads(part.stdout)["result"]["Z"] - 2) < 1e-9
