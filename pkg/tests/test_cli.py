import json
import subprocess
import sys

import pytest

from nilcarnot.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_exit_codes(capsys, tmp_path):
    assert run(capsys, "validate", "preset:h3")[0] == 0
    bad = tmp_path / "bad.nilg"
    bad.write_text(json.dumps({"dimension": 2, "brackets": [{"i": 1, "j": 2, "c": [{"k": 2, "q": "1"}]}]}))
    code, out, _ = run(capsys, "validate", str(bad), "--json")
    assert code == 1 and json.loads(out)["nilpotent"] is False
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.nilg"))
    assert code == 1 and "error" in err


def test_series_json(capsys):
    code, out, _ = run(capsys, "series", "free32", "--json")
    assert code == 0
    assert json.loads(out)["layer_ranks"] == [2, 1, 2]


def test_growth_csv(capsys, tmp_path):
    csv = tmp_path / "b.csv"
    code, out, _ = run(capsys, "growth", "preset:ab2", "--radius", "3", "--csv", str(csv))
    assert code == 0 and "d = 2" in out
    assert csv.read_text() == "radius,count\n0,1\n1,5\n2,13\n3,25\n"


def test_growth_truncation_exit(capsys):
    code, out, _ = run(capsys, "growth", "preset:h3", "--radius", "20", "--max-elements", "50")
    assert code == 3


def test_carnot_export_roundtrip(capsys, tmp_path):
    out_file = tmp_path / "gr.nilg"
    assert run(capsys, "carnot", "preset:h3_scrambled", "--export", str(out_file))[0] == 0
    data = json.loads(out_file.read_text())
    assert data["layers"] == [2, 1]
    assert run(capsys, "validate", str(out_file))[0] == 0


def test_iso_and_obstruct(capsys):
    code, out, _ = run(capsys, "iso", "preset:h3", "preset:h3_scrambled", "--json")
    assert code == 0 and json.loads(out)["kind"] == "Isomorphic"
    code, out, _ = run(capsys, "obstruct", "preset:h5", "preset:h3_plus_ab2", "--json")
    assert code == 0 and json.loads(out)["conclusion"] == "ObstructedBothDirections"
    code, out, _ = run(capsys, "obstruct", "preset:h3", "preset:ab3")
    assert code == 0 and "NotApplicable_GrowthDiffers" in out


def test_pansu_and_pack_from_files(capsys, tmp_path):
    (tmp_path / "h3.nilg").write_text(
        json.dumps({
            "name": "h3", "dimension": 3,
            "brackets": [{"i": 1, "j": 2, "c": [{"k": 3, "q": "1"}]}],
            "hom": {"target": "h3.nilg", "matrix": [["2", "0", "0"], ["1", "1", "0"], ["0", "0", "2"]]},
            "packing": {
                "ell": ["0", "1", "0"], "h": ["0", "1", "0"], "x": ["0", "0", "0"],
                "eps": "1", "mu": "1/4", "samples": [["0", "0", "0"], ["3", "1/20", "1"]],
            },
        })
    )
    code, out, _ = run(capsys, "pansu", str(tmp_path / "h3.nilg"), "--x", "1,2,3", "--g", "1/2,0,5", "--json")
    data = json.loads(out)
    assert code == 0 and all(r["equals_F(x)"] for r in data["quotients"]) and len(data["quotients"]) == 4
    code, out, _ = run(capsys, "pack", str(tmp_path / "h3.nilg"), "--json")
    data = json.loads(out)
    assert code == 0 and data["count"] == data["expected_count"] == 9 and data["pairwise_disjoint"]


def test_catalog_write(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "--write", str(tmp_path))
    assert code == 0 and "free32" in out.split()
    assert (tmp_path / "h5.nilg").exists()


def test_module_entry_point_is_byte_stable():
    cmd = [sys.executable, "-m", "nilcarnot", "obstruct", "preset:h3", "preset:h3_scrambled", "--json", "--seed", "3"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and b"Isomorphic" in first


@pytest.mark.parametrize("argv", [["growth", "preset:h3", "--radius", "-1"], ["pack", "preset:h3"]])
def test_bad_requests_exit_one(capsys, argv):
    assert run(capsys, *argv)[0] == 1
