import csv
import io
import json

import pytest

from pbmoduli import ModuliConfig, chordal, f_embed, locate, OnCurve
from pbmoduli.cli import main
from pbmoduli.serialize import proj_from_csv, proj_from_json, triple_from_json
from pbmoduli.verify import DEFAULT_POINTS

BAD_BUNDLE = {"bundle": {"kind": "split_generic", "lambda": [0.2, 0.3]},
              "marks": [{"coord": [1, 0]}, {"coord": [2, 1]}, {"coord": {"inf": True}}]}
GOOD_BUNDLE = {"bundle": {"kind": "split_generic", "lambda": [0.2, 0.3]},
               "marks": [{"coord": [1, 0]}, {"coord": [2, 1]}, {"coord": [0.5, -0.25]}]}


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pi_bad_locus_matches_curve(capsys):
    code, out, _ = run(capsys, "pi", "--bundle", json.dumps(BAD_BUNDLE))
    assert code == 0
    t = triple_from_json(json.loads(out))
    cfg = ModuliConfig.from_values(0.3 + 1.1j, DEFAULT_POINTS)
    assert t.distance(f_embed(cfg, cfg.lat.point(0.2 + 0.3j))) < 1e-9


def test_pi_from_stdin(capsys, monkeypatch):
    code, out, _ = run(capsys, "pi", stdin=json.dumps(GOOD_BUNDLE), monkeypatch=monkeypatch)
    assert code == 0 and len(json.loads(out)) == 3


def test_pi_unstable_exit_2(capsys):
    bundle = dict(BAD_BUNDLE, marks=[{"coord": "inf"}, {"coord": "inf"}, {"coord": [5, 0]}])
    code, out, err = run(capsys, "pi", "--bundle", json.dumps(bundle))
    assert code == 2 and out == ""
    assert "NotStable" in err


def test_pi_parse_errors_exit_2(capsys):
    assert run(capsys, "pi", "--bundle", "{not json")[0] == 2
    assert run(capsys, "pi", "--bundle", '{"bundle": {"kind": "x"}, "marks": []}')[0] == 2


def test_good_round_trip_through_invert(capsys, tmp_path):
    code, out, _ = run(capsys, "pi", "--bundle", json.dumps(GOOD_BUNDLE))
    path = tmp_path / "t.json"
    path.write_text(out)
    code, out, _ = run(capsys, "invert", "--triple", str(path))
    assert code == 0
    rep = json.loads(out)
    assert rep["locus"] == "good"
    code, out2, _ = run(capsys, "pi", "--bundle", json.dumps(rep["bundle"]))
    a, b = triple_from_json(json.loads(out2)), triple_from_json(json.loads(path.read_text()))
    assert a.distance(b) < 1e-6


def test_invert_curve_point(capsys, tmp_path):
    code, out, _ = run(capsys, "pi", "--bundle", json.dumps(BAD_BUNDLE))
    code, out, _ = run(capsys, "invert", "--triple", out)
    rep = json.loads(out)
    assert rep["locus"] == "curve" and "fiber" in rep and "bundle" not in rep
    lam = complex(*rep["lambda"])
    assert min(abs(lam - (0.2 + 0.3j)), abs(lam - (1.3 + 1.1j - 0.2 - 0.3j))) < 1e-7
    code, out2, _ = run(capsys, "pi", "--bundle", json.dumps(BAD_BUNDLE))
    code, out3, _ = run(capsys, "invert", "--triple", out2, "--m", '{"re": 0.5, "im": 0.1}')
    rep = json.loads(out3)
    assert rep["bundle"]["marks"][2]["coord"] == {"inf": True}


def test_invert_off_curve_forward_residual(capsys):
    code, out, _ = run(capsys, "pi", "--bundle", json.dumps(BAD_BUNDLE))
    t = json.loads(out)
    t[0] = {"re": t[0]["re"] + 0.5, "im": t[0]["im"]}
    code, out, _ = run(capsys, "invert", "--triple", json.dumps(t))
    rep = json.loads(out)
    assert rep["locus"] == "good"
    code, out, _ = run(capsys, "pi", "--bundle", json.dumps(rep["bundle"]))
    assert triple_from_json(json.loads(out)).distance(triple_from_json(t)) < 1e-6


def test_curve_csv(capsys):
    code, out, _ = run(capsys, "curve", "--resolution", "4", "--tau", "1i")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["lambda_re", "lambda_im", "c1", "c2", "c3"]
    assert len(rows) - 1 == 4 * 4 + 4
    cfg = ModuliConfig.from_values(1j, DEFAULT_POINTS)
    from pbmoduli.weierstrass import branch_values
    for row, b in zip(rows[-4:], branch_values(cfg.ctx)):
        assert chordal(proj_from_csv(row[2]), b) < 1e-12
    assert rows[-4][2] == "inf"
    for row in rows[1:]:
        from pbmoduli import ModuliTriple
        t = ModuliTriple(*(proj_from_csv(c) for c in row[2:]))
        assert isinstance(locate(cfg, t), OnCurve)


def test_curve_resolution_too_small(capsys):
    assert run(capsys, "curve", "--resolution", "3")[0] == 2


def test_config_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "curve", "--tau", "0.3-1i")[0] == 2
    assert run(capsys, "curve", "--points", "0.1,0.2")[0] == 2
    assert run(capsys, "curve", "--points", "0.1,1.1,0.5i")[0] == 2
    assert run(capsys, "curve", "--config", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"colour": 1}')
    assert run(capsys, "curve", "--config", str(bad))[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2


def test_flags_override_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"tau": [0, 1], "samples": 3, "trunc_eps": 1e-4}))
    code, out, _ = run(capsys, "verify", "--suite", "weierstrass", "--config", str(cfg))
    assert code == 1
    assert any(c["name"] == "legendre_relation" and not c["pass"] for c in json.loads(out)["checks"])
    code, out, _ = run(capsys, "verify", "--suite", "weierstrass", "--config", str(cfg), "--trunc-eps", "1e-14")
    assert code == 0


def test_verify_poincare(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "poincare")
    rep = json.loads(out)
    assert code == 0 and rep["suite"] == "poincare" and rep["seed"] == 42
    assert all(c["pass"] and c["max_residual"] == 0 for c in rep["checks"])
    assert set(rep["checks"][0]) == {"name", "pass", "max_residual"}


def test_verify_hecke_default_seed(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "hecke", "--samples", "40")
    rep = json.loads(out)
    assert code == 0
    assert all(c["pass"] and c["max_residual"] < 1e-6 for c in rep["checks"])


def test_verify_loose_truncation_fails(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "weierstrass", "--trunc-eps", "1e-4", "--samples", "5")
    assert code == 1
    legendre = next(c for c in json.loads(out)["checks"] if c["name"] == "legendre_relation")
    assert not legendre["pass"]


def test_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(capsys, "verify", "--suite", "moduli", "--samples", "8", "--seed", "7", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    c1 = run(capsys, "curve", "--resolution", "5")[1]
    c2 = run(capsys, "curve", "--resolution", "5")[1]
    assert c1 == c2


def test_out_flag_writes_file(capsys, tmp_path):
    path = tmp_path / "curve.csv"
    code, out, _ = run(capsys, "curve", "--resolution", "4", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("lambda_re,")
    assert proj_from_json({"inf": True}).inf
