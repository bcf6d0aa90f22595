import numpy as np
import pytest

from diasil import io as dio
from diasil.fdtd.monitors import MonitorKind, PlaneMonitorResult


class TestFloatFormat:
    def test_nine_significant_digits(self):
        assert dio.format_float(0.2971234567891234) == "0.297123457"
        assert dio.format_float(1.0) == "1"
        assert dio.format_float(345.678901234) == "345.678901"

    def test_round_trips_within_precision(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            x = float(rng.uniform(-1e6, 1e6)) * 10.0 ** rng.integers(-9, 9)
            y = float(dio.format_float(x))
            assert y == pytest.approx(x, rel=1e-8)


class TestCsv:
    def test_write_read_round_trip(self, tmp_path):
        path = tmp_path / "table.csv"
        rows = [("a", 1.5, 0.25), ("b", 2.0, 0.5)]
        dio.write_csv(path, ["name", "x", "y"], rows, "deadbeef")
        text = path.read_text()
        assert text.startswith("# diasil v")
        assert "config=deadbeef" in text
        cols = dio.read_csv_columns(path, ["x", "y"])
        assert np.allclose(cols["x"], [1.5, 2.0])

    def test_byte_identical_rewrites(self, tmp_path):
        rows = [("s", 0.123456789123, 9.87654321e-5)]
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        dio.write_csv(p1, ["n", "x", "y"], rows, "h")
        dio.write_csv(p2, ["n", "x", "y"], rows, "h")
        assert p1.read_bytes() == p2.read_bytes()

    def test_missing_column_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("foo,bar\n1,2\n")
        with pytest.raises(dio.IOFormatError):
            dio.read_csv_columns(path, ["tau_ns"])

    def test_bad_value_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("tau_ns,c_norm\n1,2\n3,oops\n")
        with pytest.raises(dio.IOFormatError):
            dio.read_csv_columns(path, ["tau_ns", "c_norm"])


class TestPgm:
    def test_round_trip_8bit(self, tmp_path):
        rng = np.random.default_rng(5)
        arr = rng.uniform(0, 1, size=(7, 9))
        arr[3, 4] = 1.0
        path = tmp_path / "map.pgm"
        dio.write_pgm(path, arr, 255, comment="test")
        back, maxval = dio.read_pgm(path)
        assert maxval == 255
        assert back.shape == arr.shape
        assert np.abs(back - arr).max() <= 0.5 / 255

    def test_round_trip_16bit(self, tmp_path):
        arr = np.linspace(0, 1, 12).reshape(3, 4)
        path = tmp_path / "map16.pgm"
        dio.write_pgm(path, arr, 65535)
        back, maxval = dio.read_pgm(path)
        assert maxval == 65535
        assert np.abs(back - arr).max() <= 0.5 / 65535

    def test_rounding_rule(self, tmp_path):
        # value = round(intensity * maxval)
        arr = np.array([[0.0, 0.4 / 255, 0.6 / 255, 1.0]])
        path = tmp_path / "r.pgm"
        dio.write_pgm(path, arr, 255)
        tokens = path.read_text().split()
        assert tokens[-4:] == ["0", "0", "1", "255"]

    def test_out_of_range_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            dio.write_pgm(tmp_path / "x.pgm", np.array([[1.5]]), 255)

    def test_bad_maxval_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            dio.write_pgm(tmp_path / "x.pgm", np.array([[0.5]]), 1000)


class TestMonitorSerialisation:
    def _plane(self):
        rng = np.random.default_rng(11)
        shape = (1, 5, 4, 1)
        fields = {
            name: rng.normal(size=shape) + 1j * rng.normal(size=shape)
            for name in ("Ex", "Ey", "Hx_lo", "Hx_hi", "Hy_lo", "Hy_hi")
        }
        return PlaneMonitorResult(
            monitor_kind=MonitorKind.PLANE_ABOVE,
            label="plane_above",
            wavelengths_nm=np.array([700.0]),
            fields=fields,
            cell_um=0.05,
            meta={"spacing_um": 0.05, "z_um": 1.0},
        )

    def test_round_trip(self, tmp_path):
        res = self._plane()
        path = tmp_path / "monitor.csv"
        dio.write_monitor_csv(path, res, 700.0, "hash")
        meta, fields = dio.read_monitor_csv(path)
        assert meta["monitor_kind"] == "PlaneAbove"
        assert float(meta["wavelength_nm"]) == 700.0
        for name, arr in fields.items():
            orig = res.field_at(name, 700.0)
            assert np.allclose(arr, orig, rtol=1e-8, atol=1e-10)

    def test_header_has_dims(self, tmp_path):
        res = self._plane()
        path = tmp_path / "monitor.csv"
        dio.write_monitor_csv(path, res, 700.0, "hash")
        text = path.read_text()
        assert "# dims,5,4,1" in text
        assert "# monitor_kind,PlaneAbove" in text


class TestArtifactRoot:
    def test_env_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv("DIASIL_ARTIFACT_ROOT", str(tmp_path / "root"))
        out = dio.resolve_out_dir("runs/x")
        assert out == tmp_path / "root" / "runs" / "x"
        assert out.is_dir()

    def test_absolute_path_unaffected(self, tmp_path, monkeypatch):
        monkeypatch.setenv("DIASIL_ARTIFACT_ROOT", str(tmp_path / "root"))
        out = dio.resolve_out_dir(tmp_path / "abs")
        assert out == tmp_path / "abs"
