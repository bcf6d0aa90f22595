import numpy as np
import pytest

from diasil import io as dio
from diasil.cli import main
from diasil.confocal import FWHM_SIGMA_RATIO

TINY_CONFIG = """
[scene]
geometry = planar
dipole_depth = 0.8
name = tinyplanar

[grid]
resolution_nm = 100
pml_cells = 8

[band]
min_nm = 650
max_nm = 750
samples = 2

[objective]
na = 0.9

[outputs]
directory = {out}
map_wavelength_nm = 700
"""


def _write_config(tmp_path, out_dir, extra=""):
    cfg = tmp_path / "run.ini"
    cfg.write_text(TINY_CONFIG.format(out=out_dir) + extra)
    return cfg


@pytest.fixture(scope="module")
def tiny_run(tmp_path_factory):
    """One full CLI simulate on a small planar scene (shared by tests)."""
    tmp = tmp_path_factory.mktemp("cli")
    out = tmp / "run1"
    cfg = _write_config(tmp, out)
    code = main(["simulate", "--config", str(cfg)])
    assert code == 0
    return tmp, cfg, out


class TestSimulate:
    def test_artifacts_exist(self, tiny_run):
        _, _, out = tiny_run
        for name in ("eta.csv", "fieldmap_700nm.pgm", "fieldmap_700nm_16bit.pgm",
                     "fieldmap_700nm.csv", "summary.txt"):
            assert (out / name).exists(), name

    def test_eta_csv_schema(self, tiny_run):
        _, _, out = tiny_run
        lines = [l for l in (out / "eta.csv").read_text().splitlines()
                 if not l.startswith("#")]
        assert lines[0] == "scenario,wavelength_nm,eta"
        assert lines[-1].startswith("tinyplanar,band_average,")
        data = [l.split(",") for l in lines[1:-1]]
        assert [d[1] for d in data] == ["650", "750"]
        for d in data:
            assert 0.0 <= float(d[2]) <= 1.0

    def test_summary_mentions_oracle(self, tiny_run):
        _, _, out = tiny_run
        text = (out / "summary.txt").read_text()
        assert "analytic oracle" in text
        assert "fdtd / analytic ratio" in text

    def test_fieldmap_is_valid_pgm(self, tiny_run):
        _, _, out = tiny_run
        arr, maxval = dio.read_pgm(out / "fieldmap_700nm.pgm")
        assert maxval == 255
        assert arr.max() == 1.0

    def test_byte_identical_rerun(self, tiny_run):
        # identical config + inputs -> byte-identical artifacts
        tmp, cfg, out = tiny_run
        snapshots = {
            name: (out / name).read_bytes()
            for name in ("eta.csv", "fieldmap_700nm.pgm", "summary.txt")
        }
        assert main(["simulate", "--config", str(cfg)]) == 0
        for name, before in snapshots.items():
            assert (out / name).read_bytes() == before, name


class TestConfigValidation:
    def test_negative_radius_is_config_error(self, tmp_path, capsys):
        cfg = tmp_path / "bad.ini"
        cfg.write_text("[scene]\ngeometry = sil\nsil_radius = -1\n")
        code = main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "o")])
        assert code == 2
        assert "category=config" in capsys.readouterr().err

    def test_unknown_key_fails_closed(self, tmp_path, capsys):
        cfg = tmp_path / "bad.ini"
        cfg.write_text("[scene]\ngeometry = sil\nsill_radius = 2.5\n")
        code = main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "o")])
        assert code == 2
        assert "category=config" in capsys.readouterr().err

    def test_unknown_section_fails_closed(self, tmp_path, capsys):
        cfg = tmp_path / "bad.ini"
        cfg.write_text("[scene]\ngeometry = sil\n\n[laser]\npower = 1\n")
        assert main(["simulate", "--config", str(cfg),
                     "--out", str(tmp_path / "o")]) == 2

    def test_band_sanity(self, tmp_path, capsys):
        cfg = tmp_path / "bad.ini"
        cfg.write_text("[scene]\ngeometry = sil\n\n[band]\nmin_nm = 100\nmax_nm = 800\n")
        assert main(["simulate", "--config", str(cfg),
                     "--out", str(tmp_path / "o")]) == 2

    def test_missing_input_is_io_error(self, tmp_path, capsys):
        code = main(["analyze", "g2", str(tmp_path / "nope.csv"), "--rho", "0.8",
                     "--out", str(tmp_path / "o")])
        assert code == 4
        assert "category=io" in capsys.readouterr().err


class TestAnalyzeG2:
    def test_correction_and_verdict(self, tmp_path, capsys):
        tau = np.arange(-10, 11, 1.0)
        c = 1.0 - 0.9 * np.exp(-np.abs(tau) / 3.0)
        rho = 0.8
        measured = rho**2 * c + (1 - rho**2)
        src = tmp_path / "g2.csv"
        dio.write_csv(src, ["tau_ns", "c_norm"], list(zip(tau, measured)), "x")
        out = tmp_path / "g2out"
        assert main(["analyze", "g2", str(src), "--rho", "0.8",
                     "--out", str(out)]) == 0
        cols = dio.read_csv_columns(out / "g2_corrected.csv",
                                    ["tau_ns", "c_corrected"])
        assert np.allclose(cols["c_corrected"], c, atol=1e-9)
        text = (out / "g2_summary.txt").read_text()
        assert "single emitter (dip < 0.5): yes" in text


class TestAnalyzeSaturation:
    def _write_series(self, path, i_sat, p_sat, b):
        p = np.linspace(0.05, 6.0, 12)
        total = i_sat * p / (p + p_sat) + b * p
        dio.write_csv(path, ["power_mw", "total_kcps", "background_kcps"],
                      list(zip(p, total, b * p)), "x")

    def test_compare_reports_enhancement_ten(self, tmp_path):
        sil, planar = tmp_path / "sil.csv", tmp_path / "planar.csv"
        self._write_series(sil, 345.0, 1.0, 2.0)
        self._write_series(planar, 34.5, 1.0, 6.0)
        out = tmp_path / "satout"
        assert main(["analyze", "saturation", str(sil), "--compare", str(planar),
                     "--bg-power", "2.0", "--out", str(out)]) == 0
        text = (out / "saturation_summary.txt").read_text()
        assert "enhancement factor (I_sat ratio): 10" in text
        assert "background ratio reference/primary at 2 mW: 3" in text

    def test_fit_csv_written(self, tmp_path):
        src = tmp_path / "s.csv"
        self._write_series(src, 120.0, 0.9, 4.0)
        out = tmp_path / "o"
        assert main(["analyze", "saturation", str(src), "--out", str(out)]) == 0
        cols = dio.read_csv_columns(out / "saturation_fit.csv",
                                    ["i_sat_kcps", "p_sat_mw"])
        assert cols["i_sat_kcps"][0] == pytest.approx(120.0, rel=1e-3)


class TestAnalyzeLinescan:
    def test_sil_fit_reports_real_fwhm(self, tmp_path):
        x = np.linspace(-1.0, 1.0, 101)
        sigma = 0.289 / FWHM_SIGMA_RATIO
        y = 100.0 * np.exp(-(x**2) / (2 * sigma**2)) + 2.0
        src = tmp_path / "scan.csv"
        dio.write_csv(src, ["position_um", "counts"], list(zip(x, y)), "x")
        out = tmp_path / "lsout"
        assert main(["analyze", "linescan", str(src), "--sil",
                     "--out", str(out)]) == 0
        cols = dio.read_csv_columns(out / "linescan_fit.csv", ["value"])
        text = (out / "linescan_summary.txt").read_text()
        assert "fitted FWHM: 289" in text
        assert "real) FWHM: 119.4" in text


class TestAnalyzeSpectrum:
    def test_uniform_band_fraction(self, tmp_path):
        w = np.linspace(600, 800, 201)
        src = tmp_path / "spec.csv"
        dio.write_csv(src, ["wavelength_nm", "intensity"],
                      list(zip(w, np.ones_like(w))), "x")
        out = tmp_path / "spout"
        assert main(["analyze", "spectrum", str(src), "--band", "630,700",
                     "--rate", "345", "--out", str(out)]) == 0
        text = (out / "spectrum_summary.txt").read_text()
        assert "fraction: 0.35" in text
        assert "projected 985.7" in text  # 345 / 0.35


class TestAnalyticCli:
    def test_hemisphere_value(self, capsys):
        assert main(["analytic-efficiency", "--surface", "hemisphere",
                     "--orientation", "isotropic"]) == 0
        out = capsys.readouterr().out
        assert "eta = 0.2334" in out


class TestPresetList:
    def test_lists_three_presets(self, capsys):
        assert main(["preset", "--list"]) == 0
        out = capsys.readouterr().out
        for name in ("fig1a", "fig1b", "fig1c"):
            assert name in out
