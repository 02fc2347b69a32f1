import io
import json
import math
import subprocess
import sys

import pytest

from greedylab.cli import SUBCOMMANDS, dumps, run

F321 = '{"1": 3, "2": 2, "3": 1}'


def _run(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def _json(*argv):
    code, out = _run(*argv)
    assert code == 0, out
    return json.loads(out)


def test_norm():
    doc = _json("norm", "--space", "lp:2", "--vector", '{"1": 3, "2": 4}')
    assert doc["result"]["norm"] == 5.0
    assert doc["config"]["command"] == "norm" and doc["config"]["space"] == "lp:2"


def test_errors_csv():
    code, out = _run("errors", "--vector", F321, "--N", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("n,")
    sig = [float(line.split(",")[1]) for line in lines[1:]]
    assert sig == pytest.approx([math.sqrt(14), math.sqrt(5), 1.0, 0.0], rel=1e-15)


def test_classnorm():
    doc = _json("classnorm", "--vector", F321, "--w", "power:0.5", "--q", "inf")
    assert doc["result"]["A"] == pytest.approx(math.sqrt(14) + math.sqrt(5), rel=1e-15)


def test_democracy_interleaved():
    doc = _json("democracy", "--space", "interleaved:1:2", "--N", "4")
    row = doc["result"]["rows"][3]
    assert (row["h_l"], row["h_r"]) == (2.0, 4.0)


@pytest.mark.parametrize(
    "argv",
    [
        ["tga", "--vector", F321],
        ["sweep", "--sizes", "2,4", "--trials", "5"],
        ["lorentz", "--vector", F321],
        ["weight", "--w", "power:0.5", "--N", "64"],
        ["constants", "--space", "summing_c0", "--kind", "succ,quasi_greedy", "--N", "6", "--budget", "8"],
        ["verify", "--theorem", "ap", "--space", "lp:0.5", "--trials", "200"],
        ["witness", "--space", "interleaved:1:2", "--k", "2"],
    ],
)
def test_subcommands_run(argv):
    assert set(_json(*argv)) == {"config", "result"}


def test_every_subcommand_covered():
    assert len(SUBCOMMANDS) == 11


def test_verify_witness_trend():
    doc = _json("verify", "--theorem", "witness", "--space", "interleaved:1:2", "--ks", "2,3")
    assert doc["result"]["pass"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["norm", "--space", "hilbert", "--vector", F321],
        ["norm", "--vector", '{"1": oops}'],
        ["witness", "--space", "lp:2", "--k", "2"],
        ["norm", "--trials", "0", "--vector", F321],
        ["nosuch"],
    ],
)
def test_errors_exit_two(argv):
    assert _run(*argv)[0] == 2


def test_malformed_json_location(capsys):
    assert _run("norm", "--vector", '{"1": oops}')[0] == 2
    err = capsys.readouterr().err
    assert "line 1" in err and "column 7" in err


def test_tie_overflow_falls_back_to_sampling():
    vec = json.dumps({str(i): 1 for i in range(1, 21)})
    row = _json("errors", "--space", "summing_c0", "--vector", vec, "--N", "10", "--cap", "100")["result"]["rows"][10]
    assert row["gamma_status"] == "sampled" and row["gamma"] == 10


def test_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"space": "lp:1", "vector": F321}))
    assert _json("norm", "--config", str(cfg))["result"]["norm"] == 6.0
    # explicit flags win over the file
    assert _json("norm", "--config", str(cfg), "--space", "lp:inf")["result"]["norm"] == 3.0
    cfg.write_text(json.dumps({"colour": "red"}))
    assert _run("norm", "--config", str(cfg))[0] == 2


def test_vector_from_csv(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("index,value\n1,3\n2,4\n")
    assert _json("norm", "--vector", str(path))["result"]["norm"] == 5.0


def test_output_file(tmp_path):
    out = tmp_path / "r.json"
    code, text = _run("norm", "--vector", F321, "--output", str(out))
    assert code == 0 and text == ""
    assert json.loads(out.read_text())["result"]["norm"] == pytest.approx(math.sqrt(14))


def test_threads_env(monkeypatch):
    monkeypatch.setenv("GREEDYLAB_THREADS", "4")
    a = _run("norm", "--vector", F321)[1]
    monkeypatch.setenv("GREEDYLAB_THREADS", "1")
    assert _run("norm", "--vector", F321)[1] == a
    monkeypatch.setenv("GREEDYLAB_THREADS", "zero")
    assert _run("norm", "--vector", F321)[0] == 2


def test_byte_identical_reruns():
    argv = ["sweep", "--space", "interleaved:1:2", "--sizes", "4,8", "--trials", "20", "--seed", "7"]
    assert _run(*argv)[1] == _run(*argv)[1]


def test_dumps_round_trips_floats():
    x = 0.1 + 0.2
    assert json.loads(dumps({"x": x}))["x"] == x


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "greedylab", "norm", "--vector", '{"1": 3, "2": 4}'],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(res.stdout)["result"]["norm"] == 5.0
