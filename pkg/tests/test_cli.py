import json
import subprocess
import sys

import numpy as np
import pytest

from multcode import cli
from multcode import code as K
from multcode import container as CT


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_params(capsys):
    code, out, _ = run(capsys, "params", "--q", "2", "--n", "1", "--s", "2", "--d", "2")
    assert code == 0
    info = json.loads(out)
    assert info["k"] == 3 and info["rate"] == 0.75 and info["sigma"] == 2


def test_params_violation(capsys):
    code, _, err = run(capsys, "params", "--q", "2", "--n", "1", "--s", "1", "--d", "2")
    assert code == 3 and "d < s*q" in err


@pytest.mark.parametrize("algo", ["low", "high", "auto"])
def test_encode_extract_files(algo, tmp_path, capsys, rng):
    p = K.code_params(9, 2, 2, 10)
    msg = tmp_path / "m.mlt"
    cw = tmp_path / "c.mlt"
    back = tmp_path / "m2.mlt"
    CT.write(msg, CT.for_params(p, CT.MESSAGE, rng.integers(0, 9, p.k)))
    assert run(capsys, "encode", "--algo", algo, "--in", str(msg), "--out", str(cw))[0] == 0
    box = CT.read(cw)
    assert box.kind == CT.CODEWORD and box.payload.size == p.N
    assert run(capsys, "extract", "--in", str(cw), "--out", str(back))[0] == 0
    assert back.read_bytes() == msg.read_bytes()


def test_pad_mode(tmp_path, capsys, rng):
    raw = tmp_path / "raw.bin"
    data = rng.integers(0, 256, 50, dtype=np.uint8).tobytes()
    raw.write_bytes(data)
    cw, out = tmp_path / "c.mlt", tmp_path / "out.bin"
    args = ["--q", "16", "--n", "2", "--s", "2", "--d", "20"]
    assert run(capsys, "encode", *args, "--pad", "--in", str(raw), "--out", str(cw))[0] == 0
    assert run(capsys, "extract", "--raw", "--in", str(cw), "--out", str(out))[0] == 0
    got = out.read_bytes()
    assert got[:50] == data and not any(got[50:])
    big = tmp_path / "big.bin"
    big.write_bytes(bytes(1000))
    assert run(capsys, "encode", *args, "--pad", "--in", str(big), "--out", str(cw))[0] == 2


def test_bad_inputs(tmp_path, capsys):
    junk = tmp_path / "junk"
    junk.write_bytes(b"not a container")
    assert run(capsys, "extract", "--in", str(junk), "--out", str(tmp_path / "x"))[0] == 2
    assert run(capsys, "extract", "--in", str(tmp_path / "missing"), "--out", str(tmp_path / "x"))[0] == 2
    p = K.code_params(3, 1, 2, 3)
    msg = tmp_path / "m.mlt"
    CT.write(msg, CT.for_params(p, CT.MESSAGE, [0, 1, 2, 0]))
    assert run(capsys, "extract", "--in", str(msg), "--out", str(tmp_path / "x"))[0] == 2
    assert run(capsys, "encode", "--d", "1", "--in", str(msg), "--out", str(tmp_path / "c"))[0] == 2
    assert run(capsys, "encode", "--s", "1", "--in", str(msg), "--out", str(tmp_path / "c"))[0] == 3


def test_bench_output(capsys):
    code, out, _ = run(capsys, "bench", "--q", "4", "--n", "2", "--sweep", "1..3", "--format", "csv", "--repeats", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "q,n,s,d,N,algo,wall_ns,mult_count"
    assert len([l for l in lines if not l.startswith("#")]) == 7
    code, out, _ = run(capsys, "bench", "--q", "4", "--n", "2", "--sweep", "1..3", "--format", "json", "--repeats", "1")
    doc = json.loads(out)
    assert {r["algo"] for r in doc["rows"]} == {"low", "high"}
    assert set(doc["slopes"]) == {"low", "high"}


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--max-size", "60")
    assert code == 0 and "all checks passed" in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    from multcode import verify

    monkeypatch.setattr(verify, "run_all", lambda *a, **k: [verify.CheckResult("forced", False, 1, ["x"])])
    code, out, _ = run(capsys, "verify", "--max-size", "10")
    assert code == 1 and "FAIL" in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "multcode.cli", "params", "--q", "16", "--n", "2", "--s", "1", "--d", "15"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["k"] == 136
