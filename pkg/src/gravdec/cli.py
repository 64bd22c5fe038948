"""Command-line report generator.

``gravdec <command> --scenarios <path> --out <dir> [--seed N] [--c-factor X]
[--measured <path>]`` dispatches to the library modules and writes one CSV
per command plus a JSON sidecar recording the inputs, seed and version.
Outputs carry no timestamps, so identical inputs give byte-identical files.
"""

import argparse
import csv
import json
import math
import sys
from importlib import resources

import numpy as np

from . import __version__
from . import composite, dp, gaussian, interferometry, torsion
from .constants import EARTH_MASS, EARTH_RADIUS
from .errors import GravdecError
from .scenarios import load_scenarios

_FLOAT_FMT = "{:.12g}"


def _packaged(name: str) -> str:
    return str(resources.files("gravdec.data").joinpath(name))


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return _FLOAT_FMT.format(value)
    return str(value)


def _write_outputs(out_dir, command, header, rows, meta, verbose=False,
                   provenance=None):
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{command}.csv"
    if verbose and provenance:
        header = list(header) + ["provenance"]
        rows = [list(r) + [provenance] for r in rows]
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    meta_path = out_dir / f"{command}.meta.json"
    with open(meta_path, "w", encoding="utf-8") as fh:
        json.dump({"command": command, "version": __version__, **meta},
                  fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path


def _cmd_rates(args, out_dir):
    scenarios = load_scenarios(args.scenarios)
    rows = []
    for s in scenarios:
        coeff = s.ktm_coefficient()
        gamma_ktm = coeff * s.dx**2
        gamma_dp = dp.dp_rate(s.dp_params()).gamma
        rows.append([s.name, coeff, gamma_ktm,
                     1.0 / gamma_ktm if gamma_ktm else math.inf,
                     gamma_dp, 1.0 / gamma_dp if gamma_dp else math.inf])
    header = ["scenario", "ktm_coefficient_m-2s-1", "gamma_ktm_s-1",
              "inv_gamma_ktm_s", "gamma_dp_s-1", "inv_gamma_dp_s"]
    prov = ("ktm_coefficient=scenarios.ktm_coefficient;"
            "gamma_ktm=composite.composite_min_rate;gamma_dp=dp.dp_rate")
    return _write_outputs(out_dir, "rates", header, rows,
                          {"scenarios": str(args.scenarios)},
                          args.verbose, prov)


def _cmd_table1(args, out_dir):
    scenarios = load_scenarios(args.scenarios)
    rows = []
    for s in scenarios:
        inv_dp, inv_ktm = dp.comparison_row(s)
        rows.append([s.name, inv_dp, inv_ktm])
    header = ["scenario", "inv_gamma_dp_s", "inv_gamma_ktm_s"]
    prov = "inv_gamma_dp=dp.dp_rate;inv_gamma_ktm=composite.d_min*dx^2"
    return _write_outputs(out_dir, "table1", header, rows,
                          {"scenarios": str(args.scenarios)},
                          args.verbose, prov)


def _cmd_fig1(args, out_dir):
    measured = args.measured or _packaged("fig1_measured.txt")
    c_values = [float(c) for c in args.c_factor.split(",")]
    rows = []
    for name in sorted(interferometry.EXPERIMENTS):
        params = interferometry.EXPERIMENTS[name]
        for r in interferometry.fig1_dataset(params, c_values, measured=measured):
            rows.append([r.experiment, r.order, r.c_factor,
                         r.log10_v_pred, r.log10_v_meas])
    header = ["experiment", "order", "c_factor", "log10_v_pred", "log10_v_meas"]
    prov = "log10_v_pred=interferometry.visibility_exponent;log10_v_meas=measured-file"
    return _write_outputs(out_dir, "fig1", header, rows,
                          {"measured": str(measured), "c_factors": c_values},
                          args.verbose, prov)


def _cmd_entangle_scan(args, out_dir):
    # rescaled units: hbar = 1, unit masses, unit coupling
    spec = gaussian.DynamicsSpec(m1=1.0, m2=1.0, K=args.coupling, hbar=1.0)
    values = [float(v) for v in args.dephasing.split(",")]
    rng = np.random.default_rng(args.seed)
    initial = gaussian.GaussianState(
        means=np.zeros(4),
        cov=np.block([
            [gaussian.single_mode_cov(r=args.squeeze, theta=0.0, hbar=1.0),
             np.zeros((2, 2))],
            [np.zeros((2, 2)),
             gaussian.single_mode_cov(r=args.squeeze, theta=0.0, hbar=1.0)],
        ]),
    )
    del rng  # reserved for future randomised initial states
    rows = gaussian.entanglement_threshold_scan(
        spec, values, horizon=args.horizon, initial=initial)
    header = ["dephasing", "max_log_negativity"]
    prov = "max_log_negativity=gaussian.entanglement_threshold_scan"
    meta = {"coupling": args.coupling, "horizon": args.horizon,
            "squeeze": args.squeeze, "seed": args.seed, "units": "rescaled hbar=1"}
    return _write_outputs(out_dir, "entangle-scan", header, rows, meta,
                          args.verbose, prov)


def _cmd_torsion(args, out_dir):
    chain = torsion.constraint_chain(
        t_experiment=args.duration, dg_over_g=args.dg_over_g)
    rows = [[chain.variance_coefficient, chain.t_eps_bound, chain.eps_bound,
             chain.rate_bound, chain.i_eff_quoted, chain.i_eff_formula,
             chain.i_eff_ratio, chain.c_quad_quoted, chain.c_quad_formula,
             chain.c_quad_ratio]]
    header = ["variance_coefficient", "t_eps_bound", "eps_bound", "rate_bound",
              "i_eff_quoted_kgm2", "i_eff_formula_kgm2", "i_eff_formula_over_quoted",
              "c_quad_quoted_J", "c_quad_formula_J", "c_quad_formula_over_quoted"]
    prov = ("variance_coefficient=torsion.angle_variance;"
            "rate_bound=torsion.constraint_chain;"
            "i_eff_formula=torsion.effective_inertia;"
            "c_quad_formula=torsion.quadratic_coeffs")
    meta = {"duration_s": args.duration, "dg_over_g": args.dg_over_g,
            "note": "quoted and formula reduction values disagree; both reported"}
    return _write_outputs(out_dir, "torsion", header, rows, meta,
                          args.verbose, prov)


def _cmd_thresholds(args, out_dir):
    thermal, freq_sq = torsion.optomech_thresholds()
    # representative laboratory estimate: 1 and 10 kg bodies, decimetre
    # separation, arm-scale superposition
    lab_rate = torsion.ktm_torsion_estimate(1.0, 0.108, 0.0772, second_mass=10.0)
    state_of_art_thermal = 4.0 * 2.0 * math.pi * 1.0 / 2e7  # 4 K, 1 Hz, Q=2e7
    state_of_art_freq_sq = 1e6
    rows = [[thermal, freq_sq, lab_rate,
             state_of_art_thermal / thermal, state_of_art_freq_sq / freq_sq]]
    header = ["thermal_threshold_K_per_s", "freq_sq_threshold_s-2",
              "lab_channel_rate_s-1", "thermal_excess_factor",
              "freq_sq_excess_factor"]
    prov = ("thermal/freq_sq=torsion.optomech_thresholds;"
            "lab_channel_rate=torsion.ktm_torsion_estimate")
    return _write_outputs(out_dir, "thresholds", header, rows, {},
                          args.verbose, prov)


def _cmd_gradiometer(args, out_dir):
    rows = []
    for i in range(args.steps):
        if args.steps == 1:
            d_h = args.dh_min
        else:
            d_h = args.dh_min + (args.dh_max - args.dh_min) * i / (args.steps - 1)
        cfg = interferometry.GradiometerConfig(
            source_mass=args.source_mass, horizontal_distance=d_h,
            vertical_separation=args.vertical_separation,
            earth_c_factor=args.earth_c_factor)
        lower, upper = interferometry.gradiometer_contrast(cfg)
        rows.append([d_h, lower, upper])
    header = ["d_h_m", "contrast_lower", "contrast_upper"]
    prov = "contrast_lower/upper=interferometry.gradiometer_contrast"
    meta = {"source_mass": args.source_mass,
            "vertical_separation": args.vertical_separation,
            "earth_c_factor": args.earth_c_factor}
    return _write_outputs(out_dir, "gradiometer", header, rows, meta,
                          args.verbose, prov)


_COMMANDS = {
    "rates": _cmd_rates,
    "table1": _cmd_table1,
    "fig1": _cmd_fig1,
    "entangle-scan": _cmd_entangle_scan,
    "torsion": _cmd_torsion,
    "thresholds": _cmd_thresholds,
    "gradiometer": _cmd_gradiometer,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gravdec",
        description="Gravitational-decoherence reports: rates, comparison "
                    "tables, visibility curves, entanglement scans and "
                    "laboratory constraints.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default="gravdec_out",
                       help="output directory (default: %(default)s)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for stochastic paths (default: %(default)s)")
        p.add_argument("--verbose", action="store_true",
                       help="append a provenance column to the CSV")

    for name in ("rates", "table1"):
        p = sub.add_parser(name, help=f"emit the {name} report")
        p.add_argument("--scenarios", default=_packaged("table1.scn"),
                       help="scenario file (default: packaged table1.scn)")
        common(p)

    p = sub.add_parser("fig1", help="visibility curves vs measured data")
    p.add_argument("--measured", default=None,
                   help="measured-data file (default: packaged)")
    p.add_argument("--c-factor", default="1,0.47,0.1",
                   help="comma-separated geometric factors (default: %(default)s)")
    common(p)

    p = sub.add_parser("entangle-scan",
                       help="max log-negativity vs dephasing (rescaled units)")
    p.add_argument("--dephasing", default="0,0.05,0.25,0.5,1.0",
                   help="comma-separated coefficients (default: %(default)s)")
    p.add_argument("--coupling", type=float, default=1.0)
    p.add_argument("--horizon", type=float, default=3.0)
    p.add_argument("--squeeze", type=float, default=1.0)
    common(p)

    p = sub.add_parser("torsion", help="torsion-balance constraint chain")
    p.add_argument("--duration", type=float, default=86400.0,
                   help="experiment duration in seconds (default: 1 day)")
    p.add_argument("--dg-over-g", type=float, default=1e-6)
    common(p)

    p = sub.add_parser("thresholds", help="optomechanics feasibility thresholds")
    common(p)

    p = sub.add_parser("gradiometer", help="two-fountain contrast vs source distance")
    p.add_argument("--dh-min", type=float, default=0.25)
    p.add_argument("--dh-max", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=6)
    p.add_argument("--source-mass", type=float, default=252.0)
    p.add_argument("--vertical-separation", type=float, default=1.0)
    p.add_argument("--earth-c-factor", type=float, default=1.0)
    common(p)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    from pathlib import Path
    out_dir = Path(args.out)
    try:
        csv_path = _COMMANDS[args.command](args, out_dir)
    except (GravdecError, OSError, ValueError) as exc:
        print(f"gravdec {args.command}: error: {exc}", file=sys.stderr)
        return 1
    print(csv_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
