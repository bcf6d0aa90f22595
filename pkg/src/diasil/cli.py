"""Command-line entry point.

Subcommands: simulate, sweep, analytic-efficiency, analyze
{g2,saturation,linescan,spectrum}, preset, bench.  Failures exit nonzero
with a machine-readable category on stderr: `error category=<config|
stability|io>: message`.

The config file is INI-style text with sections mirroring the module
types ([scene], [grid], [band], [objective], [outputs]); unknown sections
or keys are errors.  Identical config + inputs give byte-identical output
files.  The DIASIL_ARTIFACT_ROOT environment variable prefixes relative
output directories.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from pathlib import Path

import numpy as np

from . import __version__, analytic, confocal, photonstats
from . import io as dio
from .farfield import displacement_sweep
from .fdtd import InstabilityError, SimulationError, StopCriterion, field_map
from .fdtd.monitors import MonitorKind
from .pipeline import efficiency_from_results, run_setup
from .presets import (
    DEFAULT_NA,
    RESOLUTION_PRESETS,
    band_wavelengths,
    scenario_setup,
)
from .scene import PRESETS, SceneConfig, SceneError, build_scene, preset_scene


class ConfigError(ValueError):
    pass


class CliFailure(Exception):
    def __init__(self, category: str, message: str, code: int):
        super().__init__(message)
        self.category = category
        self.code = code


_EXIT = {"config": 2, "stability": 3, "io": 4}


def _fail(category: str, message: str):
    raise CliFailure(category, message, _EXIT.get(category, 1))


# -- config file ---------------------------------------------------------------

_SCHEMA = {
    "scene": {
        "preset", "geometry", "sil_radius", "trench_width", "trench_depth",
        "dipole_depth", "dipole_position", "dipole_orientation",
        "refractive_index", "name",
    },
    "grid": {"resolution_nm", "pml_cells", "courant_factor"},
    "band": {"min_nm", "max_nm", "samples"},
    "objective": {"na"},
    "outputs": {"directory", "formats", "map_wavelength_nm"},
}


def _parse_vector(text: str):
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 3:
        raise ConfigError(f"expected three components, got {text!r}")
    return tuple(float(p) for p in parts)


def load_config(path: str) -> dict:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        read = parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    if not read:
        raise ConfigError(f"config file not found: {path}")

    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        for key in parser[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")

    cfg = {s: dict(parser[s]) for s in parser.sections()}
    cfg["_text"] = Path(path).read_text()
    return cfg


def scene_from_config(cfg: dict):
    sc = cfg.get("scene", {})
    if "preset" in sc:
        extra = set(sc) - {"preset"}
        if extra:
            raise ConfigError(
                f"scene preset cannot be combined with explicit keys {sorted(extra)}"
            )
        name = sc["preset"]
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}; available: {sorted(PRESETS)}")
        return preset_scene(name)
    kwargs = {}
    if "geometry" in sc:
        kwargs["geometry"] = sc["geometry"]
    for key in ("sil_radius", "trench_width", "trench_depth", "dipole_depth",
                "refractive_index"):
        if key in sc:
            kwargs[key] = float(sc[key])
    if "dipole_position" in sc:
        kwargs["dipole_position"] = _parse_vector(sc["dipole_position"])
    if "dipole_orientation" in sc:
        kwargs["dipole_orientation"] = _parse_vector(sc["dipole_orientation"])
    if "name" in sc:
        kwargs["name"] = sc["name"]
    return build_scene(SceneConfig(**kwargs))


def band_from_config(cfg: dict):
    band = cfg.get("band", {})
    min_nm = float(band.get("min_nm", 600.0))
    max_nm = float(band.get("max_nm", 800.0))
    samples = int(band.get("samples", 9))
    if not (400.0 <= min_nm < max_nm <= 1000.0):
        raise ConfigError(
            f"band [{min_nm}, {max_nm}] nm outside the sane range [400, 1000]"
        )
    if samples < 1:
        raise ConfigError("band needs at least one wavelength sample")
    return band_wavelengths(min_nm, max_nm, samples)


# -- simulate ------------------------------------------------------------------


def _setup_from_args(args):
    if args.config:
        cfg = load_config(args.config)
        scene = scene_from_config(cfg)
        wavelengths = band_from_config(cfg)
        grid_cfg = cfg.get("grid", {})
        cell = float(grid_cfg.get("resolution_nm", args.resolution_nm))
        pml = int(grid_cfg.get("pml_cells", 10))
        courant = float(grid_cfg.get("courant_factor", 0.5))
        na = float(cfg.get("objective", {}).get("na", DEFAULT_NA))
        out_cfg = cfg.get("outputs", {})
        out_dir = args.out or out_cfg.get("directory")
        map_wl = float(out_cfg.get("map_wavelength_nm", args.map_wavelength_nm))
        cfg_hash = dio.config_hash(cfg["_text"])
    else:
        if not args.preset:
            _fail("config", "either --config or --preset is required")
        try:
            scene = preset_scene(args.preset)
        except SceneError as exc:
            _fail("config", str(exc))
        wavelengths = band_wavelengths(samples=args.wavelength_samples)
        cell = args.resolution_nm
        pml, courant = 10, 0.5
        na = args.na
        out_dir = args.out
        map_wl = args.map_wavelength_nm
        cfg_hash = dio.config_hash(
            f"preset={args.preset} cell={cell} samples={len(wavelengths)} na={na}"
        )
    if not out_dir:
        _fail("config", "no output directory (use --out or [outputs] directory)")
    setup = scenario_setup(
        scene,
        cell_size_nm=cell,
        wavelengths_nm=wavelengths,
        pml_cells=pml,
        courant_factor=courant,
        na=na,
        map_wavelength_nm=map_wl,
    )
    return setup, out_dir, cfg_hash


def cmd_simulate(args) -> int:
    setup, out_dir, cfg_hash = _setup_from_args(args)
    out = dio.resolve_out_dir(out_dir)
    results, sim = run_setup(setup, stop=_stop_from_args(args))
    report = efficiency_from_results(
        results, setup.na, setup.scene.name,
        meta={"cell_size_nm": setup.grid.cell_size_nm, "steps": sim.steps_run},
    )

    rows = [(report.scenario, float(w), e)
            for w, e in zip(report.wavelengths_nm, report.etas)]
    rows.append((report.scenario, "band_average", report.band_average))
    dio.write_csv(out / "eta.csv", ["scenario", "wavelength_nm", "eta"], rows,
                  cfg_hash)

    by_kind = {r.monitor_kind: r for r in results}
    wl_map = setup.map_wavelength_nm
    intensity = field_map(by_kind[MonitorKind.MAP_PLANE], wl_map)
    tag = f"fieldmap_{wl_map:.0f}nm"
    dio.write_pgm(out / f"{tag}.pgm", intensity, 255, comment=f"config={cfg_hash}")
    dio.write_pgm(out / f"{tag}_16bit.pgm", intensity, 65535,
                  comment=f"config={cfg_hash}")
    map_meta = by_kind[MonitorKind.MAP_PLANE].meta
    dio.write_csv(
        out / f"{tag}.csv",
        ["iy", "iz", "intensity"],
        [(i, j, float(intensity[i, j]))
         for i in range(intensity.shape[0]) for j in range(intensity.shape[1])],
        cfg_hash,
        extra_header={
            "y0_um": dio.format_float(map_meta["y0_um"]),
            "z0_um": dio.format_float(map_meta["z0_um"]),
            "cell_um": dio.format_float(setup.grid.cell_um),
        },
    )
    if args.dump_monitors:
        for r in results:
            for w in r.wavelengths_nm:
                dio.write_monitor_csv(
                    out / f"monitor_{r.label}_{w:.0f}nm.csv", r, w, cfg_hash
                )

    scene = setup.scene
    if scene.geometry_kind.value == "planar":
        oracle = analytic.planar_collection_efficiency(
            scene.dipole_orientation, setup.na, scene.substrate.refractive_index
        )
        oracle_name = "planar incoherent Fresnel-cone"
    else:
        oracle = analytic.hemisphere_collection_efficiency(
            scene.dipole_orientation, setup.na, scene.substrate.refractive_index
        )
        oracle_name = "hemisphere normal-incidence cone"
    lines = dio.header_lines(cfg_hash)
    lines += [
        f"scenario: {report.scenario}",
        f"grid: {sim.shape[0]}x{sim.shape[1]}x{sim.shape[2]} cells at "
        f"{dio.format_float(setup.grid.cell_size_nm)} nm, {sim.steps_run} steps",
        f"objective NA: {dio.format_float(setup.na)}",
        "wavelength_nm eta",
    ]
    lines += [
        f"  {dio.format_float(w):>6} {dio.format_float(e)}"
        for w, e in zip(report.wavelengths_nm, report.etas)
    ]
    lines += [
        f"band-averaged eta: {dio.format_float(report.band_average)}",
        f"analytic oracle ({oracle_name}): {dio.format_float(oracle)}",
        f"fdtd / analytic ratio: {dio.format_float(report.band_average / oracle)}",
    ]
    (out / "summary.txt").write_text("\n".join(lines) + "\n")
    print(f"wrote {out}/eta.csv, {tag}.pgm, summary.txt "
          f"(eta_band={dio.format_float(report.band_average)})")
    return 0


def _stop_from_args(args) -> StopCriterion:
    if getattr(args, "steps", 0):
        return StopCriterion(kind="steps", steps=args.steps)
    return StopCriterion(
        kind="energy",
        energy_threshold=getattr(args, "stop_threshold", 1e-5),
        max_steps=getattr(args, "max_steps", 50000),
    )


def cmd_sweep(args) -> int:
    try:
        scene = preset_scene(args.preset) if args.preset else None
    except SceneError as exc:
        _fail("config", str(exc))
    if scene is None:
        _fail("config", "sweep requires --preset")
    offsets = [float(o) for o in args.offsets.split(",") if o]
    if not offsets:
        _fail("config", "no offsets given")
    out = dio.resolve_out_dir(args.out)
    cfg_hash = dio.config_hash(
        f"sweep preset={args.preset} axis={args.axis} offsets={offsets} "
        f"cell={args.resolution_nm}"
    )
    table = displacement_sweep(
        scene, args.axis, offsets, workers=args.workers,
        cell_size_nm=args.resolution_nm,
    )
    rows = [(scene.name, args.axis, off, eta) for off, eta in table]
    dio.write_csv(out / "sweep.csv", ["scenario", "axis", "offset_um", "eta_band"],
                  rows, cfg_hash)
    print(f"wrote {out}/sweep.csv")
    return 0


def cmd_analytic(args) -> int:
    orientation = {
        "x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0),
        "isotropic": "isotropic",
    }[args.orientation]
    if args.surface == "planar":
        eta = analytic.planar_collection_efficiency(
            orientation, args.na, args.index, args.samples
        )
    else:
        eta = analytic.hemisphere_collection_efficiency(
            orientation, args.na, args.index, args.samples
        )
    print(f"{args.surface} surface, orientation {args.orientation}, "
          f"NA {dio.format_float(args.na)}, n {dio.format_float(args.index)}: "
          f"eta = {dio.format_float(eta)}")
    if args.out:
        out = dio.resolve_out_dir(args.out)
        cfg_hash = dio.config_hash(
            f"analytic {args.surface} {args.orientation} {args.na} {args.index}"
        )
        dio.write_csv(out / "eta_analytic.csv",
                      ["surface", "orientation", "na", "n", "eta"],
                      [(args.surface, args.orientation, args.na, args.index, eta)],
                      cfg_hash)
    return 0


# -- analyze -------------------------------------------------------------------


def cmd_analyze_g2(args) -> int:
    cols = dio.read_csv_columns(args.input, ["tau_ns", "c_norm"])
    rho = args.rho
    if rho is None:
        if args.signal is None or args.background is None:
            _fail("config", "g2 needs --rho or both --signal and --background")
        rho = photonstats.signal_fraction(args.signal, args.background)
    hist = photonstats.G2Histogram(cols["tau_ns"], cols["c_norm"], rho)
    corrected = photonstats.background_correct_g2(hist)
    is_single, dip = photonstats.classify_single_emitter(
        hist.delays_ns, corrected, window_bins=args.window_bins
    )
    out = dio.resolve_out_dir(args.out)
    cfg_hash = dio.config_hash(f"g2 rho={rho} window={args.window_bins}")
    dio.write_csv(
        out / "g2_corrected.csv",
        ["tau_ns", "c_norm", "c_corrected"],
        list(zip(cols["tau_ns"], cols["c_norm"], corrected)),
        cfg_hash,
        extra_header={"signal_fraction": dio.format_float(rho)},
    )
    lines = dio.header_lines(cfg_hash) + [
        f"signal fraction rho: {dio.format_float(rho)}",
        f"zero-delay dip (corrected): {dio.format_float(dip)}",
        f"single emitter (dip < 0.5): {'yes' if is_single else 'no'}",
    ]
    (out / "g2_summary.txt").write_text("\n".join(lines) + "\n")
    print(f"dip={dio.format_float(dip)} single={'yes' if is_single else 'no'}; "
          f"wrote {out}/g2_corrected.csv")
    return 0


def _load_saturation(path):
    cols = dio.read_csv_columns(
        path, ["power_mw", "total_kcps"], optional=["background_kcps"]
    )
    return photonstats.SaturationSeries(
        cols["power_mw"], cols["total_kcps"], cols.get("background_kcps")
    )


def _fit_lines(tag, fit):
    return [
        f"{tag} I_sat: {dio.format_float(fit.i_sat_kcps)} "
        f"+- {dio.format_float(fit.i_sat_err)} kcps",
        f"{tag} P_sat: {dio.format_float(fit.p_sat_mw)} "
        f"+- {dio.format_float(fit.p_sat_err)} mW",
        f"{tag} background slope: {dio.format_float(fit.background_slope)} "
        f"+- {dio.format_float(fit.background_slope_err)} kcps/mW",
    ]


def cmd_analyze_saturation(args) -> int:
    series = _load_saturation(args.input)
    fit = photonstats.fit_saturation(series)
    out = dio.resolve_out_dir(args.out)
    cfg_hash = dio.config_hash(f"saturation {Path(args.input).name}")
    rows = [("primary", fit.i_sat_kcps, fit.i_sat_err, fit.p_sat_mw,
             fit.p_sat_err, fit.background_slope, fit.background_slope_err)]
    lines = dio.header_lines(cfg_hash) + _fit_lines("primary", fit)
    if not fit.p_max_exceeds_p_sat:
        lines.append("warning: measured powers do not exceed the fitted P_sat")
    if args.compare:
        ref = _load_saturation(args.compare)
        ref_fit = photonstats.fit_saturation(ref)
        rows.append(("reference", ref_fit.i_sat_kcps, ref_fit.i_sat_err,
                     ref_fit.p_sat_mw, ref_fit.p_sat_err,
                     ref_fit.background_slope, ref_fit.background_slope_err))
        enh, enh_err = photonstats.enhancement_factor(fit, ref_fit)
        lines += _fit_lines("reference", ref_fit)
        lines.append(
            f"enhancement factor (I_sat ratio): {dio.format_float(enh)} "
            f"+- {dio.format_float(enh_err)}"
        )
        if (series.background_kcps is not None
                and ref.background_kcps is not None):
            power = args.bg_power
            if power is None:
                power = min(float(series.powers_mw[-1]), float(ref.powers_mw[-1]))
            ratio = photonstats.background_ratio(ref, series, power)
            lines.append(
                f"background ratio reference/primary at "
                f"{dio.format_float(power)} mW: {dio.format_float(ratio)}"
            )
    dio.write_csv(
        out / "saturation_fit.csv",
        ["series", "i_sat_kcps", "i_sat_err", "p_sat_mw", "p_sat_err",
         "background_slope", "background_slope_err"],
        rows, cfg_hash,
    )
    (out / "saturation_summary.txt").write_text("\n".join(lines) + "\n")
    print("\n".join(lines[1:]))
    return 0


def cmd_analyze_linescan(args) -> int:
    cols = dio.read_csv_columns(args.input, ["position_um", "counts"])
    scan = confocal.LineScan(cols["position_um"], cols["counts"])
    fit = confocal.fit_gaussian_linescan(scan)
    ctx = confocal.ImagingContext(medium_index=args.index, sil_present=args.sil)
    out = dio.resolve_out_dir(args.out)
    cfg_hash = dio.config_hash(f"linescan sil={args.sil} n={args.index}")
    fwhm_nm = fit.fwhm * 1e3
    fwhm_err_nm = fit.fwhm_err * 1e3
    rows = [("amplitude", fit.amplitude, fit.amplitude_err),
            ("center_um", fit.center, fit.center_err),
            ("sigma_um", fit.sigma, fit.sigma_err),
            ("offset", fit.offset, fit.offset_err),
            ("fwhm_nm", fwhm_nm, fwhm_err_nm)]
    lines = dio.header_lines(cfg_hash) + [
        f"fitted FWHM: {dio.format_float(fwhm_nm)} "
        f"+- {dio.format_float(fwhm_err_nm)} nm",
    ]
    if args.sil:
        real, real_err = confocal.real_fwhm(ctx, fit)
        rows.append(("real_fwhm_nm", real * 1e3, real_err * 1e3))
        lines.append(
            f"magnification-corrected (real) FWHM: "
            f"{dio.format_float(real * 1e3)} +- {dio.format_float(real_err * 1e3)} nm"
        )
    dio.write_csv(out / "linescan_fit.csv", ["parameter", "value", "uncertainty"],
                  rows, cfg_hash)
    (out / "linescan_summary.txt").write_text("\n".join(lines) + "\n")
    print("\n".join(lines[1:]))
    return 0


def cmd_analyze_spectrum(args) -> int:
    cols = dio.read_csv_columns(args.input, ["wavelength_nm", "intensity"])
    spec = photonstats.Spectrum(cols["wavelength_nm"], cols["intensity"])
    lo, hi = (float(v) for v in args.band.split(","))
    frac = photonstats.band_fraction(spec, (lo, hi))
    out = dio.resolve_out_dir(args.out)
    cfg_hash = dio.config_hash(f"spectrum band={lo},{hi} rate={args.rate}")
    rows = [("band_lo_nm", lo), ("band_hi_nm", hi), ("fraction", frac)]
    lines = dio.header_lines(cfg_hash) + [
        f"band [{dio.format_float(lo)}, {dio.format_float(hi)}] nm fraction: "
        f"{dio.format_float(frac)}",
    ]
    if args.rate is not None:
        projected = photonstats.project_rate(args.rate, frac)
        rows.append(("projected_kcps", projected))
        lines.append(
            f"measured {dio.format_float(args.rate)} kcps -> projected "
            f"{dio.format_float(projected)} kcps at full spectrum"
        )
    dio.write_csv(out / "spectrum_fractions.csv", ["quantity", "value"], rows,
                  cfg_hash)
    (out / "spectrum_summary.txt").write_text("\n".join(lines) + "\n")
    print("\n".join(lines[1:]))
    return 0


def cmd_preset(args) -> int:
    if args.list:
        for name in sorted(PRESETS):
            cfg = PRESETS[name]
            scene = preset_scene(name)
            print(f"{name}: {cfg.geometry} "
                  f"(dipole at {scene.dipole_position}, "
                  f"surface top {dio.format_float(scene.surface_top)} um)")
        return 0
    _fail("config", "preset: nothing to do (use --list)")


def cmd_bench(args) -> int:
    from .benchmark import run_benchmark

    table = run_benchmark(cells_per_side=args.cells, steps=args.steps)
    for name, ms in table.items():
        print(f"{name:7s}: {ms:8.2f} ms/step")
    if "python" in table and "cython" in table:
        print(f"speedup: {table['python'] / table['cython']:.1f}x")
    return 0


# -- parser --------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="diasil",
        description="Photon-collection simulation for emitters under "
                    "engineered diamond surfaces",
    )
    p.add_argument("--version", action="version", version=f"diasil {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one scenario end to end")
    sim.add_argument("--config", help="INI config file")
    sim.add_argument("--preset", choices=sorted(PRESETS), help="scenario preset")
    sim.add_argument("--out", help="output directory")
    sim.add_argument("--workers", type=int, default=1,
                     help="worker budget (sweep concurrency; single runs are serial)")
    sim.add_argument("--resolution-nm", type=float, default=50.0,
                     help="grid cell size in nm (presets: "
                          + ", ".join(f"{k}={v:g}" for k, v in RESOLUTION_PRESETS.items())
                          + ")")
    sim.add_argument("--wavelength-samples", type=int, default=9)
    sim.add_argument("--na", type=float, default=DEFAULT_NA)
    sim.add_argument("--map-wavelength-nm", type=float, default=700.0)
    sim.add_argument("--steps", type=int, default=0,
                     help="fixed step count (0 = energy-decay stop)")
    sim.add_argument("--stop-threshold", type=float, default=1e-5)
    sim.add_argument("--max-steps", type=int, default=50000)
    sim.add_argument("--dump-monitors", action="store_true",
                     help="also serialise raw monitor fields to CSV")
    sim.set_defaults(func=cmd_simulate)

    sw = sub.add_parser("sweep", help="dipole displacement sweep")
    sw.add_argument("--preset", choices=sorted(PRESETS), required=True)
    sw.add_argument("--axis", choices=["x", "y", "z"], required=True)
    sw.add_argument("--offsets", required=True, help="comma-separated um offsets")
    sw.add_argument("--out", required=True)
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("--resolution-nm", type=float, default=50.0)
    sw.set_defaults(func=cmd_sweep)

    an = sub.add_parser("analytic-efficiency", help="closed-form oracle")
    an.add_argument("--surface", choices=["planar", "hemisphere"], required=True)
    an.add_argument("--orientation", choices=["x", "y", "z", "isotropic"],
                    default="x")
    an.add_argument("--na", type=float, default=DEFAULT_NA)
    an.add_argument("--index", type=float, default=2.42)
    an.add_argument("--samples", type=int, default=256)
    an.add_argument("--out")
    an.set_defaults(func=cmd_analytic)

    ana = sub.add_parser("analyze", help="photon-statistics / confocal analysis")
    asub = ana.add_subparsers(dest="analysis", required=True)

    g2 = asub.add_parser("g2", help="background-correct a g2 histogram")
    g2.add_argument("input", help="CSV with columns tau_ns,c_norm")
    g2.add_argument("--rho", type=float, help="signal fraction S/(S+B)")
    g2.add_argument("--signal", type=float)
    g2.add_argument("--background", type=float)
    g2.add_argument("--window-bins", type=int, default=2)
    g2.add_argument("--out", required=True)
    g2.set_defaults(func=cmd_analyze_g2)

    sat = asub.add_parser("saturation", help="fit a saturation curve")
    sat.add_argument("input", help="CSV with power_mw,total_kcps[,background_kcps]")
    sat.add_argument("--compare", help="reference series CSV (enhancement factor)")
    sat.add_argument("--bg-power", type=float,
                     help="pump power (mW) for the background ratio")
    sat.add_argument("--out", required=True)
    sat.set_defaults(func=cmd_analyze_saturation)

    ls = asub.add_parser("linescan", help="Gaussian line-scan fit")
    ls.add_argument("input", help="CSV with position_um,counts")
    ls.add_argument("--sil", action="store_true",
                    help="apply the lateral magnification correction")
    ls.add_argument("--index", type=float, default=2.42)
    ls.add_argument("--out", required=True)
    ls.set_defaults(func=cmd_analyze_linescan)

    sp = asub.add_parser("spectrum", help="band fraction of a spectrum")
    sp.add_argument("input", help="CSV with wavelength_nm,intensity")
    sp.add_argument("--band", default="630,700", help="lo,hi band edges in nm")
    sp.add_argument("--rate", type=float,
                    help="measured rate (kcps) to project to the full spectrum")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_analyze_spectrum)

    pr = sub.add_parser("preset", help="preset info")
    pr.add_argument("--list", action="store_true")
    pr.set_defaults(func=cmd_preset)

    be = sub.add_parser("bench", help="compare kernel backends")
    be.add_argument("--cells", type=int, default=60, help="cells per side")
    be.add_argument("--steps", type=int, default=60)
    be.set_defaults(func=cmd_bench)

    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliFailure as exc:
        print(f"error category={exc.category}: {exc}", file=sys.stderr)
        return exc.code
    except (ConfigError, SceneError, SimulationError, ValueError) as exc:
        print(f"error category=config: {exc}", file=sys.stderr)
        return _EXIT["config"]
    except InstabilityError as exc:
        print(f"error category=stability: {exc}", file=sys.stderr)
        return _EXIT["stability"]
    except (OSError, dio.IOFormatError) as exc:
        print(f"error category=io: {exc}", file=sys.stderr)
        return _EXIT["io"]


if __name__ == "__main__":
    sys.exit(main())
