"""Command-line front door.

Subcommands:

* ``run``     one scenario, CSV trajectory + summary block (+ figure/JSON).
* ``sweep``   several frequencies, one summary row each, area monotonicity.
* ``compose`` Mach-Zehnder composition identity for given angles.
* ``verify``  the full acceptance suite, pass/fail table.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
3 numerical abort.  CSV output is byte-deterministic for a fixed
configuration (17 significant digits, '.' decimal separator).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .hysteresis import loop_report
from .memristor import DriveSignal, FeedbackLaw, attach_entropy, run_scenario
from .optics_core import MZConfig, mz_effective
from .verification import run_all

__all__ = ["main"]

SCENARIOS = {
    "coherent": ("coherent_x", "linear"),
    "squeezed": ("squeezed_var", "sqrt_sign"),
    "fock": ("fock_angle", "fock_linear"),
}

CSV_HEADER = "t,drive,theta,n_out_b1,n_out_b2,input_obs,entropy"


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _build(args):
    dkind, lkind = SCENARIOS[args.scenario]
    drive = DriveSignal(kind=dkind, amplitude=args.amplitude, omega=args.omega)
    law = FeedbackLaw(
        kind=lkind, omega0=args.omega0, x0=args.x0, theta0=args.theta0
    )
    return drive, law


def _write_csv(path: str, traj) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        ent = traj.entropy
        for i in range(len(traj.t)):
            row = [
                _fmt(traj.t[i]),
                _fmt(traj.drive_value[i]),
                _fmt(traj.theta[i]),
                _fmt(traj.n_out_b1[i]),
                _fmt(traj.n_out_b2[i]),
                _fmt(traj.input_obs[i]),
                _fmt(ent[i]) if ent is not None else "",
            ]
            fh.write(",".join(row) + "\n")


def _summary_dict(traj, report) -> dict:
    out = {
        "scenario": traj.drive.kind,
        "omega": traj.drive.omega,
        "amplitude": traj.drive.amplitude,
        "theta0": traj.law.theta0,
        "area_geometric": report.area_geometric,
        "area_integral": report.area_integral,
        "sub_loop_count": report.sub_loop_count,
        "crossing_count": report.crossing_count,
        "pinched": report.pinched,
    }
    if report.analytic_area is not None:
        out["analytic_area"] = report.analytic_area
        out["analytic_validity"] = report.analytic_validity
        out["ratio_numeric_to_analytic"] = report.ratio_numeric_to_analytic
        out["ratio_variant"] = report.ratio_variant
    if traj.entropy is not None:
        out["entropy_min"] = float(np.min(traj.entropy))
        out["entropy_max"] = float(np.max(traj.entropy))
    return out


def _print_summary(d: dict) -> None:
    for k, v in d.items():
        print(f"{k} = {v}")


def cmd_run(args) -> int:
    try:
        drive, law = _build(args)
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2
    try:
        traj = run_scenario(
            drive, law, periods=args.periods, steps_per_period=args.steps_per_period
        )
        if args.with_entropy and args.scenario != "coherent":
            traj = attach_entropy(traj, cutoff=args.cutoff)
        report = loop_report(traj)
    except ValueError as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return 3
    if args.output:
        _write_csv(args.output, traj)
    summary = _summary_dict(traj, report)
    _print_summary(summary)
    if args.json and args.output:
        with open(args.output + ".json", "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.plot and args.output:
        from .plots import render_loop_figure

        render_loop_figure(traj, report, args.output + ".png")
    return 0


def cmd_sweep(args) -> int:
    if len(args.omegas) < 2:
        print("invalid configuration: need at least 2 frequencies", file=sys.stderr)
        return 2
    rows = []
    for omega in sorted(args.omegas):
        args.omega = omega
        try:
            drive, law = _build(args)
        except ValueError as exc:
            print(f"invalid configuration: {exc}", file=sys.stderr)
            return 2
        try:
            traj = run_scenario(
                drive,
                law,
                periods=args.periods,
                steps_per_period=args.steps_per_period,
            )
            report = loop_report(traj)
        except ValueError as exc:
            print(f"numerical abort: {exc}", file=sys.stderr)
            return 3
        rows.append((omega, report))
        if args.dump_prefix:
            _write_csv(f"{args.dump_prefix}_omega{omega:g}.csv", traj)
    print("omega,area_geometric,area_integral,crossing_count,pinched")
    for omega, report in rows:
        print(
            f"{_fmt(omega)},{_fmt(report.area_geometric)},"
            f"{_fmt(report.area_integral)},{report.crossing_count},"
            f"{report.pinched}"
        )
    areas = [r.area_geometric for _, r in rows]
    monotone = all(a > b for a, b in zip(areas, areas[1:]))
    print(f"area_monotone_decreasing = {monotone}")
    if args.plot and args.dump_prefix:
        from .plots import render_sweep_figure

        render_sweep_figure(
            [o for o, _ in rows], areas, args.scenario, args.dump_prefix + "_sweep.png"
        )
    return 0


def cmd_compose(args) -> int:
    try:
        res = mz_effective(
            MZConfig.balanced(args.theta, phi_t=args.phi_t, phi_r=args.phi_r)
        )
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2
    print(f"effective_theta = {_fmt(res.effective.theta)}")
    print(f"effective_phi_t = {_fmt(res.effective.phi_t)}")
    print(f"effective_phi_r = {_fmt(res.effective.phi_r)}")
    print(f"global_phase = {_fmt(res.global_phase)}")
    for i in range(2):
        row = "  ".join(
            f"{res.matrix[i, j].real:+.12f}{res.matrix[i, j].imag:+.12f}j"
            for j in range(2)
        )
        print(f"matrix[{i}] = {row}")
    print(f"identity_defect = {_fmt(res.defect)}")
    return 0


def cmd_verify(_args) -> int:
    results = run_all()
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.criterion:2d}. {r.name:<{width}}  {r.detail}")
        failed += 0 if r.passed else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def _add_run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scenario", required=True, choices=sorted(SCENARIOS))
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--omega0", type=float, default=1.0)
    p.add_argument("--x0", type=float, default=1.0)
    p.add_argument("--amplitude", type=float, default=1.0,
                   help="x_max (coherent) or alpha in (0,1) (squeezed)")
    p.add_argument("--theta0", type=float, default=math.pi / 2.0)
    p.add_argument("--periods", type=int, default=1)
    p.add_argument("--steps-per-period", type=int, default=4096)
    p.add_argument("--cutoff", type=int, default=2,
                   help="Fock backend cutoff for entropy evaluation")
    p.add_argument("--with-entropy", action="store_true")
    p.add_argument("--plot", action="store_true",
                   help="render a figure next to the CSV output")
    p.add_argument("--json", action="store_true",
                   help="mirror the summary as JSON next to the CSV output")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qmemristor",
        description="Photonic quantum memristor simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario, write CSV + summary")
    _add_run_args(p_run)
    p_run.add_argument("--output", default=None, help="CSV output path")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="area vs frequency sweep")
    _add_run_args(p_sweep)
    p_sweep.add_argument("--omegas", type=float, nargs="+", required=True)
    p_sweep.add_argument("--dump-prefix", default=None,
                         help="write per-frequency trajectory CSVs")
    p_sweep.set_defaults(func=cmd_sweep)

    p_comp = sub.add_parser("compose", help="Mach-Zehnder composition identity")
    p_comp.add_argument("--theta", type=float, required=True)
    p_comp.add_argument("--phi-t", type=float, default=0.0)
    p_comp.add_argument("--phi-r", type=float, default=0.0)
    p_comp.set_defaults(func=cmd_compose)

    p_ver = sub.add_parser("verify", help="run the acceptance suite")
    p_ver.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
