import json
import math
import os
from pathlib import Path

import pytest

import xibergman as xb

CONFIGS = Path(os.environ.get("XIB_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))

DISC = {"radii": [1.0]}


def load(name):
    return json.loads((CONFIGS / name).read_text())


def test_commands():
    assert {"kernel", "scan-psh", "annihilate", "lambda", "extend"} <= set(xb.command_names())


def test_kernel_dirac():
    k = xb.kernel(DISC, {"kind": "zero"}, {"kind": "dirac"}, [[0.0], [0.5]], degree=40)
    assert k[0] == pytest.approx(1 / math.pi, rel=1e-12)
    assert k[1] == pytest.approx(16 / (9 * math.pi), rel=1e-10)


def test_gram_diagonal():
    labels, g, rank, closed = xb.gram(DISC, {"kind": "zero"}, 2)
    assert closed and rank == 3
    assert [l[0] for l in labels] == [0, 1, 2]
    for k in range(3):
        assert g[k, k].real == pytest.approx(math.pi / (k + 1), rel=1e-12)


def test_run_extend():
    res = xb.run("extend", load("extend_quadratic.json"))
    assert res.ok
    assert res.summary["ratio"] == pytest.approx(1 - math.exp(-1), abs=1e-8)
    assert "extension.json" in res.files


def test_run_kernel_matches_direct():
    res = xb.run("kernel", load("kernel_disc_dirac.json"), threads=2)
    assert res.ok
    assert res.files


def test_scan_control_fails():
    assert xb.run("scan-psh", load("scan_control.json")).exit_code == 1
    assert xb.run("scan-psh", load("scan_twin.json")).exit_code == 0


def test_bad_config():
    res = xb.run("scan-psh", load("scan_bad_radius.json"))
    assert res.exit_code == 2 and res.error and not res.files
    with pytest.raises(ValueError):
        xb.kernel({"radii": [-1.0]}, {"kind": "zero"}, {"kind": "dirac"}, [[0.0]])


def test_membership():
    cfg = load("annihilate_z1_minus_wz2.json")
    f = [{"exp": [1, 0], "c": 1}, {"exp": [0, 1], "c": -0.3}]
    assert xb.membership(cfg["ideal"], cfg["grid"], [0.3], f) == (True, True)
    assert xb.membership(cfg["ideal"], cfg["grid"], [0.3], [{"exp": [0, 0], "c": 1}]) == (False, False)
