import json

import numpy as np
import pytest

from hardysplit import io
from hardysplit.cli import main
from hardysplit.exceptions import CurveMismatchError
from hardysplit.geometry import CurveSpec, build_curve


def _curve_file(tmp_path, name="curve.json", **d):
    p = tmp_path / name
    p.write_text(json.dumps(d))
    return str(p)


@pytest.fixture
def disc_file(tmp_path):
    return _curve_file(tmp_path, kind="disc", radius=1.0, n=128)


@pytest.fixture
def ellipse_file(tmp_path):
    return _curve_file(tmp_path, "ellipse.json", kind="ellipse", a=2.0, b=1.0, n=128)


def _diag(path):
    return json.loads(open(path).read())


def test_csv_round_trip(tmp_path):
    c = build_curve(CurveSpec.disc(n=32))
    u = np.exp(2j * c.t) + 0.1
    p = tmp_path / "u.csv"
    io.write_boundary_csv(p, c, u=u)
    back = io.read_boundary_csv(p, c)
    assert np.array_equal(back.values, u)
    with pytest.raises(CurveMismatchError):
        io.read_boundary_csv(p, build_curve(CurveSpec.disc(n=64)))


def test_grid_parsing():
    pts = io.grid_points({"kind": "polar", "nr": 4, "ntheta": 8, "rmax": 0.8}, 1 + 1j, 2.0)
    assert pts.size == 32
    assert np.isclose(np.abs(pts - (1 + 1j)).max(), 1.6)
    pts = io.grid_points({"kind": "points", "points": [[0.1, 0.2], [0.0, -0.3]]})
    assert np.allclose(pts, [0.1 + 0.2j, -0.3j])
    for bad in ({"kind": "polar", "nr": 4}, {"kind": "polar", "nr": 4, "ntheta": 8, "rmax": 1.2},
                {"kind": "hex"}):
        with pytest.raises(io.ConfigError):
            io.grid_points(bad)


def test_decompose_cli(disc_file, tmp_path):
    out = tmp_path / "dec.csv"
    assert main(["decompose", "--curve", disc_file, "--data", "fourier:8", "--out", str(out)]) == 0
    header, body = io.read_csv(out)
    assert header == ["t", "re_u", "im_u", "re_h", "im_h", "re_H", "im_H"]
    assert body.shape == (128, 7)
    d = _diag(tmp_path / "dec.json")
    assert d["passed"] and d["oracle_error"] < 1e-12 and d["failures"] == []


def test_decompose_csv_data(disc_file, tmp_path):
    c = build_curve(CurveSpec.disc(n=128))
    data = tmp_path / "u.csv"
    io.write_boundary_csv(data, c, u=1 / (c.z - 2) + 1 / (c.z - 0.3))
    out = tmp_path / "dec.csv"
    assert main(["decompose", "--curve", disc_file, "--data", str(data), "--out", str(out)]) == 0


def test_decompose_deterministic(disc_file, tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}.csv"
        main(["decompose", "--curve", disc_file, "--data", "fourier:5", "--seed", "3",
              "--out", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_missing_curve_is_config_error(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    code = main(["decompose", "--curve", missing, "--data", "fourier:4",
                 "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "nope.json" in capsys.readouterr().err


def test_bad_curve_and_pole_on_curve(tmp_path, disc_file):
    bad = _curve_file(tmp_path, "bad.json", kind="disc", radius=-1.0, n=64)
    assert main(["decompose", "--curve", bad, "--data", "fourier:2",
                 "--out", str(tmp_path / "x.csv")]) == 2
    assert main(["decompose", "--curve", disc_file, "--data", "rational:1.0",
                 "--out", str(tmp_path / "x.csv")]) == 2


def test_tolerance_failure_status(disc_file, tmp_path, capsys):
    code = main(["decompose", "--curve", disc_file, "--data", "indicator:0.5,2.0",
                 "--tol", "1e-30", "--out", str(tmp_path / "x.csv")])
    assert code == 1
    assert "checks failed" in capsys.readouterr().err
    assert not _diag(tmp_path / "x.json")["passed"]


def test_convergence_cli(ellipse_file, tmp_path):
    out = tmp_path / "conv.csv"
    code = main(["convergence", "--curve", ellipse_file, "--data", "rational:0.3,3.0",
                 "--Ns", "32,64,128", "--out", str(out)])
    assert code == 0
    _, body = io.read_csv(out)
    assert np.all(np.diff(body[:, 1]) < 0)


def test_dirichlet_cli(tmp_path):
    curve = _curve_file(tmp_path, kind="disc", radius=1.0, n=1024)
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps({"kind": "polar", "nr": 5, "ntheta": 16, "rmax": 0.9}))
    out = tmp_path / "dir.csv"
    assert main(["dirichlet", "--curve", curve, "--data", "fourier:6", "--grid", str(grid),
                 "--out", str(out)]) == 0
    header, body = io.read_csv(out)
    assert header == ["re_z", "im_z", "value_method1", "value_method2", "abs_diff"]
    assert body.shape == (80, 5)
    assert _diag(tmp_path / "dir.json")["two_re_cauchy_diff"] < 1e-9


def test_dirichlet_needs_disc(ellipse_file, tmp_path):
    assert main(["dirichlet", "--curve", ellipse_file, "--data", "fourier:3",
                 "--out", str(tmp_path / "d.csv")]) == 2


def test_jump_cli(tmp_path):
    star = _curve_file(tmp_path, kind="star", r0=1.0, amp=0.3, k=5, n=512)
    out = tmp_path / "jump.csv"
    assert main(["jump", "--curve", star, "--data", "rational:0.1j,3.0",
                 "--out", str(out)]) == 0
    _, body = io.read_csv(out)
    assert body.shape == (24, 5)


def test_szego_cli(disc_file, tmp_path):
    out = tmp_path / "sz.csv"
    assert main(["szego", "--curve", disc_file, "--data", "fourier:8", "--out", str(out)]) == 0
    d = _diag(tmp_path / "sz.json")
    assert d["idempotence"] < 1e-8 and d["solver"] == "dense"
    rep = tmp_path / "pl.json"
    assert main(["szego", "--curve", disc_file, "--pseudolocal", "0.5", "2.5",
                 "--out", str(rep)]) == 0
    d = _diag(rep)
    assert d["certified"] and d["resolutions"] == [128, 256]


def test_antiderivative_cli(disc_file, tmp_path):
    out = tmp_path / "anti.csv"
    assert main(["antiderivative", "--curve", disc_file, "--data", "rational:3.0",
                 "--out", str(out)]) == 0
    # interior pole: not Hardy unless projected
    assert main(["antiderivative", "--curve", disc_file, "--data", "rational:0.2j",
                 "--out", str(out)]) == 1
    assert main(["antiderivative", "--curve", disc_file, "--data", "fourier:4", "--project",
                 "--out", str(out)]) == 0
