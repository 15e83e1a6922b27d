"""Command-line front end: CSV contracts, manifests, determinism, exit codes."""

import json

import numpy as np
import pytest

from levywalk.cli import main, parse_t_grid
from levywalk.errors import ParameterError


def _read_csv(path):
    return np.genfromtxt(path, delimiter=",", names=True)


class TestTimeGrid:
    def test_linear(self):
        np.testing.assert_allclose(parse_t_grid("0:4:5"), [0, 1, 2, 3, 4])

    def test_log(self):
        g = parse_t_grid("1:100:3:log")
        np.testing.assert_allclose(g, [1, 10, 100])

    def test_invalid(self):
        for bad in ("1:2", "0:10:5:lin", "5:1:3", "0:10:5:log"):
            with pytest.raises(ParameterError):
                parse_t_grid(bad)


class TestCommands:
    def test_eigenenergy_nn_closed_form(self, tmp_path):
        out = tmp_path / "eig.csv"
        assert main(["eigenenergy", "--b", "1", "--A", "2", "--r", "1",
                     "--quad-points", "257", "--out", str(out)]) == 0
        d = _read_csv(out)
        np.testing.assert_allclose(d["E"], 1 - np.cos(d["k"]), atol=1e-10, rtol=0)
        manifest = json.loads((tmp_path / "eig.csv.manifest.json").read_text())
        assert manifest["resolved"]["b"] == 1
        assert manifest["version"]

    def test_dos_regime_in_manifest(self, tmp_path):
        out = tmp_path / "dos.csv"
        assert main(["dos", "--b", "4", "--A", "2", "--dos-samples", "20000",
                     "--dos-bins", "40", "--out", str(out)]) == 0
        manifest = json.loads((out.with_suffix(".csv.manifest.json")).read_text())
        assert manifest["resolved"]["regime"] == "critical"
        d = _read_csv(out)
        assert d["density"].size == 40

    def test_profile_columns(self, tmp_path):
        out = tmp_path / "prof.csv"
        assert main(["profile", "--b", "1", "--r", "1", "--t-grid", "0:2:2",
                     "--l-window", "32", "--out", str(out)]) == 0
        d = _read_csv(out)
        assert set(d.dtype.names) == {"l", "t", "P"}
        sel = d["t"] == 0.0
        assert d["P"][sel & (d["l"] == 0)][0] == pytest.approx(1.0, abs=1e-10)

    def test_chi_columns_consistent(self, tmp_path):
        out = tmp_path / "chi.csv"
        assert main(["chi", "--b", "1", "--r", "1", "--t-grid", "0.1:5:6:log",
                     "--out", str(out)]) == 0
        d = _read_csv(out)
        np.testing.assert_allclose(d["chi0"] - d["chi"], 1 / (2 * np.pi), rtol=0,
                                   atol=1e-15)

    def test_purity_fit_sidecar(self, tmp_path):
        out = tmp_path / "pur.csv"
        assert main(["purity", "--b", "1", "--r", "1", "--t-grid", "1:100:20:log",
                     "--fit", "--out", str(out)]) == 0
        fit = json.loads((tmp_path / "pur.csv.fit.json").read_text())
        assert fit["exponent"] == pytest.approx(0.5, abs=0.05)

    def test_moments_columns(self, tmp_path):
        out = tmp_path / "mom.csv"
        assert main(["moments", "--b", "1", "--r", "1", "--t-grid", "0.25:1:2",
                     "--l-window", "64", "--out", str(out)]) == 0
        d = _read_csv(out)
        assert set(d.dtype.names) == {"t", "q2_closed", "q2_quadrature",
                                      "mean_position"}
        np.testing.assert_allclose(d["q2_closed"], d["q2_quadrature"], rtol=1e-4)

    def test_classical(self, tmp_path):
        out = tmp_path / "cl.csv"
        assert main(["classical", "--t-grid", "0:10:11", "--out", str(out)]) == 0
        d = _read_csv(out)
        assert d["P0"][0] == pytest.approx(1.0)
        assert np.all(np.diff(d["P0"]) <= 0)

    def test_boxdim(self, tmp_path):
        out = tmp_path / "box.csv"
        assert main(["boxdim", "--b", "4", "--A", "2", "--k-samples", "65536",
                     "--out", str(out)]) == 0
        d = _read_csv(out)
        assert abs(d["D_est"] - 1.5) <= 0.15
        assert d["mu"] == pytest.approx(0.5)
        assert d["predicted"] == pytest.approx(1.5)


class TestDeterminismAndErrors:
    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["dos", "--b", "2", "--A", "3", "--dos-samples", "30000",
                "--dos-bins", "30", "--seed", "11"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_parameter_error_exit_2(self, tmp_path, capsys):
        code = main(["purity", "--A", "1.0", "--out", str(tmp_path / "x.csv")])
        assert code == 2
        assert "error: parameter" in capsys.readouterr().err

    def test_divergence_error_exit_3(self, tmp_path, capsys):
        code = main(["moments", "--b", "3", "--A", "2", "--t-grid", "0:1:2",
                     "--out", str(tmp_path / "x.csv")])
        assert code == 3
        assert "DivergenceError" in capsys.readouterr().err

    def test_resolution_error_exit_3(self, tmp_path):
        code = main(["moments", "--b", "1", "--t-grid", "0:1:2", "--l-window",
                     "600", "--quad-points", "256", "--out", str(tmp_path / "x.csv")])
        assert code == 3
