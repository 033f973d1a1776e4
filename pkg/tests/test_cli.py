import json
import subprocess
import sys

import numpy as np
import pytest

from gsscodes import cli, gss, reference
from gsscodes.fields import FieldTower
from gsscodes.formats import CodeFile, load_code


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def rs_file(tmp_path, capsys):
    path = tmp_path / "rs.json"
    assert run(capsys, "construct", "rs", "--q", 8, "--n", 7, "--k", 5, "--out", path)[0] == 0
    return path


@pytest.fixture
def w_file(tmp_path):
    T = FieldTower(2, 1, 3)
    a = T.top.exp
    W = gss.SubspaceFamily.from_elements(T, [[a(i) for i in p] for p in reference.SUBSPACE_EXAMPLE_FAMILY_LOGS])
    path = tmp_path / "w.txt"
    path.write_text(W.to_text())
    return path


def test_field(capsys):
    code, out, _ = run(capsys, "field", "--q", 16, "--base", 4, "--element", 3, "--json")
    info = json.loads(out)
    assert code == 0 and (info["q"], info["m"], info["order"]) == (4, 2, 16)
    assert len(info["element"]["coordinates"]) == 2


@pytest.mark.parametrize("as_json", [False, True])
def test_construct_matches_library(capsys, tmp_path, rs_file, w_file, as_json):
    cases = [
        ["construct", "image", "--parent", rs_file],
        ["construct", "sfsc", "--parent", rs_file],
        ["construct", "gss", "--parent", rs_file, "--u", "2,3,3,2,2,3,3"],
        ["construct", "gss", "--parent", rs_file, "--y", "1,2,3,4,5,6,7", "--perm", "2,1,3,4,5,7,6"],
        ["construct", "ssc", "--parent", rs_file, "--V", "1,2"],
        ["construct", "gssw", "--parent", rs_file, "--W", w_file, "--perm", "7,6,5,4,3,2,1"],
    ]
    for argv in cases:
        argv = argv + (["--json"] if as_json else [])
        code, out, _ = run(capsys, *argv)
        args = cli.build_parser().parse_args([str(a) for a in argv])
        assert code == 0
        assert out == cli.build_construct(args).dumps(as_json)
        target = tmp_path / ("c.json" if as_json else "c.txt")
        run(capsys, *argv, "--out", target)
        assert target.read_text() == out


def test_analyze_worked_codes(capsys, tmp_path, rs_file, w_file):
    rs76 = tmp_path / "rs76.txt"
    run(capsys, "construct", "rs", "--q", 8, "--n", 7, "--k", 6, "--out", rs76)
    expected = {
        (rs76, "gss", "--u", "2,3,3,2,2,3,3"): "[7,4,2",
        (rs_file, "gssw", "--W", w_file): "[7;4;3",
    }
    for (parent, kind, *extra), label in expected.items():
        path = tmp_path / "c.txt"
        run(capsys, "construct", kind, "--parent", parent, *extra, "--out", path)
        code, out, _ = run(capsys, "analyze", path)
        assert code == 0 and out.startswith(label)
        assert "exact" in out
    assert run(capsys, "analyze", rs_file)[1].startswith("[7,5,3")
    code, out, _ = run(capsys, "analyze", rs_file, "--json")
    info = json.loads(out)
    assert (info["k"], info["d_exact"]) == (5, 3)


def test_decode_and_failure_codes(capsys, rs_file, w_file):
    cf = load_code(rs_file)
    T = cf.tower
    B = gss.gss_w(cf.code(), gss.SubspaceFamily.from_text(T, w_file.read_text()))
    c = B.encode(np.ones(B.k_q, dtype=np.int64))
    y = c.copy()
    y[4] ^= 1
    code, out, _ = run(capsys, "decode", "--parent", rs_file, "--W", w_file, "--word", ",".join(map(str, y)))
    assert code == 0 and out.split() == [str(x) for x in c]
    y[0] ^= 1
    y[13] ^= 1
    y[7] ^= 1
    code, _, err = run(capsys, "decode", "--parent", rs_file, "--W", w_file, "--word", ",".join(map(str, y)))
    assert code in (0, 1)
    if code == 1:
        assert "decoding failed" in err


def test_usage_errors_exit_2(capsys, tmp_path, rs_file):
    assert run(capsys, "construct", "rs", "--q", 6, "--n", 3, "--k", 2)[0] == 2
    assert run(capsys, "construct", "gss", "--parent", rs_file)[0] == 2
    assert run(capsys, "construct", "gss", "--parent", rs_file, "--y", "1,1,1,1,1,1,1", "--perm", "1,1,2,3,4,5,6")[0] == 2
    assert run(capsys, "analyze", tmp_path / "missing.txt")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("LEVEL q\n")
    assert run(capsys, "analyze", bad)[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["construct", "nonsense"])
    assert exc.value.code == 2


def test_crypto_cli_roundtrip(capsys, tmp_path, rs_file):
    key = tmp_path / "key.json"
    assert run(capsys, "crypto", "keygen", "--parent", rs_file, "--r", 2, "--seed", 4, "--out", key)[0] == 0
    k_q = len(json.loads(key.read_text())["public"]["G"])
    msg = ",".join(["1", "0"] * (k_q // 2) + ["1"] * (k_q % 2))
    code, ct, _ = run(capsys, "crypto", "encrypt", "--key", key, "--message", msg, "--seed", 9)
    assert code == 0
    code, out, _ = run(capsys, "crypto", "decrypt", "--key", key, "--ciphertext", ",".join(ct.split()))
    assert code == 0 and out.split() == msg.split(",")
    code, out, _ = run(capsys, "crypto", "estimate", "--n", 512, "--k", 350, "--d", 163, "--m", 9, "--r", 8, "--json")
    assert json.loads(out)["k_q"] == 2638
    assert run(capsys, "crypto", "estimate", "--n", 512)[0] == 2


def test_code_file_text_roundtrip(rs_file):
    cf = load_code(rs_file)
    again = CodeFile.from_text(cf.to_text())
    assert np.array_equal(again.G, cf.G) and again.grs.to_dict() == cf.grs.to_dict()


def test_reproduce_quick_is_deterministic(capsys):
    code, first, _ = run(capsys, "reproduce-paper", "--quick", "--json")
    _, second, _ = run(capsys, "reproduce-paper", "--quick", "--json", "--threads", 4)
    assert code == 0 and first == second
    report = json.loads(first)
    statuses = {c["status"] for c in report["claims"]}
    assert "failed" not in statuses and "typo-noted" in statuses


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "gsscodes", "field", "--q", "4"], capture_output=True, text=True)
    assert out.returncode == 0 and "order: 4" in out.stdout
