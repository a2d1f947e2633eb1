import csv
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from horokit.cli import main, parse_cartan, parse_grid
from horokit.enveloping import verify_certificate_json
from horokit.lie import build_split_sl


def run(*args):
    return main([str(a) for a in args])


def test_parse_helpers():
    assert parse_grid("-4:-12:1") == [-4, -5, -6, -7, -8, -9, -10, -11, -12]
    assert parse_grid("0,-1.5") == [0, -1.5]
    alg = build_split_sl(2)
    assert list(parse_cartan(alg, "h/2")) == [Fraction(1, 2), Fraction(-1, 2)]
    alg3 = build_split_sl(3)
    assert list(parse_cartan(alg3, "2*H1+H2")) == [2, -1, -1]
    assert list(parse_cartan(alg3, "2,-1,-1")) == [2, -1, -1]


def test_lie_ident_sl2(tmp_path):
    out = tmp_path / "cert.json"
    assert run("lie-ident", "--algebra", "sl2", "--H", "h/2", "--out", out) == 0
    obj = json.loads(out.read_text())
    assert obj["W_H"] == 2 and obj["verified"]
    # Z_1 = -1 and Z_0 = -C/2 with C = h^2/2 + 2ef - h
    assert obj["Z"][1] == [[[0, 0, 0], "-1/1"]]
    assert sorted(map(tuple, [(tuple(m), c) for m, c in obj["Z"][0]])) == sorted([
        ((0, 1, 0), "1/2"), ((0, 2, 0), "-1/4"), ((1, 0, 1), "-1/1")])
    man = json.loads((tmp_path / "cert.json.manifest.json").read_text())
    assert man["exit_code"] == 0 and man["artifacts"] == [str(out)]
    assert len(man["config_sha256"]) == 64


def test_verify_round_trip_and_bit_flips(tmp_path):
    out = tmp_path / "cert.json"
    assert run("lie-ident", "--algebra", "sl2", "--H", "h/2", "--out", out) == 0
    obj = json.loads(out.read_text())
    assert run("verify", "--certificate", out, "--out", tmp_path / "v.json") == 0
    sites = []
    for part in ("Z", "P"):
        rows = obj[part] if part == "P" else [r for z in obj["Z"] for r in z]
        for r in rows:
            sites.append(r)
    for r in obj["U"]["components"].values():
        sites.extend(r)
    n_checked = 0
    for row in sites:
        original = row[1]
        for i, ch in enumerate(original):
            for bit in range(7):
                flipped = chr(ord(ch) ^ (1 << bit))
                row[1] = original[:i] + flipped + original[i + 1:]
                ok, _ = verify_certificate_json(json.loads(json.dumps(obj)))
                if ok:
                    # only a representation change of the same number may pass
                    assert Fraction(row[1]) == Fraction(original)
                n_checked += 1
        row[1] = original
    assert n_checked > 50
    row = obj["P"][0]
    row[1] = str(Fraction(row[1]) * 2)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    assert run("verify", "--certificate", bad, "--out", tmp_path / "v2.json") == 1
    bad.write_text("{not json")
    assert run("verify", "--certificate", bad, "--out", tmp_path / "v3.json") == 1


def test_exit_codes(tmp_path):
    assert run("horocycle", "--closed", "--t", "", "--psi", "1.2,3.0") == 2
    assert run("horocycle", "--closed", "--t", "1:2:1", "--psi", "1.2,3.0") == 2
    assert run("horocycle", "--t", "-1", "--psi", "1.0,3.0") == 2
    assert run("lie-ident", "--algebra", "sl4", "--H", "3,1,-1,-3") == 3
    assert run("lie-ident", "--algebra", "sl3", "--H", "-1,0,1") == 2
    assert run("lie-ident", "--algebra", "sl9", "--H", "h") == 2
    assert run("count", "--n", "3", "--H", "0,1,-1") == 2
    assert run("count", "--n", "3", "--H", "6,0,-6") == 3
    assert run("kernels", "--lambda", "1", "--beta", "0.5", "--grid", "-20:0:5000") == 3
    assert run("nonsense") == 2
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n": 2, "H": [0, 0], "colour": "red"}))
    assert run("count", "--config", cfg) == 2


def test_config_file_overrides(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n": 2, "H": [0, 0]}))
    out = tmp_path / "count.json"
    assert run("count", "--n", "3", "--H", "1,0,-1", "--config", cfg, "--out", out) == 0
    assert json.loads(out.read_text())["count_entry"] == 3


def test_kernels_deterministic(tmp_path):
    paths = []
    for k in range(2):
        out = tmp_path / f"k{k}.csv"
        kern = tmp_path / f"k{k}.json"
        assert run("kernels", "--lambda", "1+2j,1-2j,-0.5", "--beta", "0.6", "--alpha", "0.8",
                   "--eta", "1", "--grid", "-10:0:12", "--kernels-out", kern, "--out", out) == 0
        paths.append((out, kern))
    assert paths[0][0].read_bytes() == paths[1][0].read_bytes()
    assert paths[0][1].read_bytes() == paths[1][1].read_bytes()
    rows = list(csv.DictReader(paths[0][0].open()))
    assert set(rows[0]) == {"kernel", "t", "s", "value", "envelope", "ratio"}
    man = json.loads((tmp_path / "k0.csv.manifest.json").read_text())
    assert man["summary"]["flagged"] == [] and man["summary"]["burger2_flagged"] == []


def test_horocycle_and_fit(tmp_path):
    out = tmp_path / "h.csv"
    assert run("horocycle", "--closed", "--t", "-1:-5:1", "--psi", "1.2,3.0", "--n-factor", "40",
               "--out", out) == 0
    text = out.read_text()
    assert text.splitlines()[0] == "t,average,mean_target,error,quad_err,N"
    again = tmp_path / "h2.csv"
    assert run("horocycle", "--closed", "--t", "-1:-5:1", "--psi", "1.2,3.0", "--n-factor", "40",
               "--out", again) == 0
    assert again.read_text() == text
    fit = tmp_path / "fit.json"
    assert run("fit", "--input", out, "--out", fit) == 0
    assert set(json.loads(fit.read_text())) == {"q0", "q1", "free"}
    assert run("horocycle", "--closed", "--t", "-8", "--psi", "1.2,3.0", "--max-n", "1000") == 3


def test_height_command(tmp_path):
    out = tmp_path / "ht.csv"
    assert run("height", "--x0", "0,1", "--x0", "0,10", "--t", "0,-1", "--out", out) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 4


def test_console_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "horokit", "count", "--n", "2", "--H", "0,0"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["count_entry"] == 3
