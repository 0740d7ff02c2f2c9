"""Command-line frontend: compute, verify, sweep, and gain subcommands.

All numbers come from the library modules; this layer only parses
arguments, formats output, and writes CSV/JSON/figure files.
"""

from __future__ import annotations

import argparse
import csv
import enum
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import dof_core, plotting, scheme, transceiver
from .model import AntennaConfig, CaseLabel, RisConfig, canonicalize
from .scheme import RESIDUAL_TOL

SWEEP_CSV_HEADER = ["m1", "m2", "n1", "n2", "r", "case", "achievable", "baseline", "gain", "ris_helps"]
GAIN_CSV_HEADER = ["m", "n", "r", "gain_closed_form", "gain_cross_check", "match"]
_CASE_CHOICES = {label.value: label for label in CaseLabel}


class SweepVariable(enum.Enum):
    M_SYMMETRIC = "m"
    R = "r"


@dataclass(frozen=True)
class SweepSpec:
    """One sweep request: the variable, its grid, and the fixed antennas."""

    variable: SweepVariable
    r_values: tuple[int, ...]
    out: Path
    # M sweep: m ranges over [m_min, m_max] with m1=m2=m, n1=n2=n
    m_min: int = 1
    m_max: int = 1
    n: int = 1
    # R sweep: fixed antenna counts
    m1: int = 1
    m2: int = 1
    n1: int = 1
    n2: int = 1
    seeds: tuple[int, ...] = ()
    plot: bool = True

    def grid(self) -> list[tuple[int, int, int, int, int]]:
        """(m1, m2, n1, n2, r) rows in lexicographic sweep order."""
        if self.variable is SweepVariable.M_SYMMETRIC:
            return [
                (m, m, self.n, self.n, r)
                for m in range(self.m_min, self.m_max + 1)
                for r in sorted(self.r_values)
            ]
        return [(self.m1, self.m2, self.n1, self.n2, r) for r in sorted(self.r_values)]


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from err


def _add_antenna_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m1", type=int, help="Tx1 antennas")
    parser.add_argument("--m2", type=int, help="Tx2 antennas")
    parser.add_argument("--n1", type=int, help="Rx1 antennas")
    parser.add_argument("--n2", type=int, help="Rx2 antennas")


def _merge_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    """Fill unset flags from the optional JSON config file."""
    if not getattr(args, "config", None):
        return
    try:
        loaded = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as err:
        parser.error(f"cannot read config file {args.config}: {err}")
    if not isinstance(loaded, dict):
        parser.error(f"config file {args.config} must hold a JSON object")
    for key, value in loaded.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, value)


def _require_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> AntennaConfig:
    values = [getattr(args, name) for name in ("m1", "m2", "n1", "n2")]
    if any(v is None for v in values):
        parser.error("all of --m1 --m2 --n1 --n2 are required")
    try:
        return canonicalize(*(int(v) for v in values))
    except ValueError as err:
        parser.error(str(err))


def _require_ris(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RisConfig:
    r = args.r if args.r is not None else 0
    try:
        return RisConfig(int(r))
    except ValueError as err:
        parser.error(str(err))


def _report_lines(report: dof_core.DofReport) -> list[str]:
    cfg = report.config
    lines = [
        f"configuration: M1={cfg.m1} M2={cfg.m2} N1={cfg.n1} N2={cfg.n2}"
        f" (canonical, users swapped: {'yes' if cfg.swapped else 'no'})",
        f"RIS elements: {report.ris.r}",
    ]
    for entry in report.per_case:
        plan = entry.plan
        lines.append(
            f"{entry.case}: f1={plan.f1} f2={plan.f2}"
            f" ({plan.mode1.value}/{plan.mode2.value}, cost {plan.cost})"
            f" -> sum-DoF {entry.sumdof}"
        )
    lines += [
        f"achievable sum-DoF: {report.achievable}",
        f"baseline (no RIS): {report.baseline}",
        f"RIS gain: {report.gain}",
        f"RIS helps (sufficient condition): {'yes' if report.ris_helps else 'no'}",
    ]
    return lines


def _report_json(report: dof_core.DofReport) -> dict:
    cfg = report.config
    return {
        "m1": cfg.m1, "m2": cfg.m2, "n1": cfg.n1, "n2": cfg.n2,
        "swapped": cfg.swapped,
        "r": report.ris.r,
        "cases": [
            {
                "case": entry.case.value,
                "f1": entry.plan.f1, "f2": entry.plan.f2,
                "mode1": entry.plan.mode1.value, "mode2": entry.plan.mode2.value,
                "cost": entry.plan.cost, "sumdof": entry.sumdof,
            }
            for entry in report.per_case
        ],
        "achievable": report.achievable,
        "baseline": report.baseline,
        "gain": report.gain,
        "ris_helps": report.ris_helps,
    }


def cmd_compute(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    cfg = _require_config(args, parser)
    ris = _require_ris(args, parser)
    report = dof_core.achievable_sumdof(cfg, ris)
    if args.json:
        print(json.dumps(_report_json(report), indent=2))
    else:
        print("\n".join(_report_lines(report)))
    return 0


def cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    cfg = _require_config(args, parser)
    ris = _require_ris(args, parser)
    seed = int(args.seed if args.seed is not None else 0)
    tol = float(args.tol) if args.tol is not None else scheme.ZERO_BLOCK_TOL
    report = dof_core.achievable_sumdof(cfg, ris)
    case = _CASE_CHOICES[args.case] if args.case else report.best_case
    try:
        predicted = dof_core.case_sumdof(cfg, ris, case)
    except ValueError as err:
        parser.error(str(err))
    failures: list[str] = []

    try:
        ch, psi, eff = scheme.synthesize(cfg, ris, case, seed)
    except (scheme.IllConditioned, scheme.ZeroBlockViolation, scheme.InfeasibleBudget) as err:
        print(f"synthesis failed: {err}")
        print("FAIL")
        return 1
    plan = eff.plan
    print(f"{case}: f1={plan.f1} f2={plan.f2} ({plan.mode1.value}/{plan.mode2.value}),"
          f" cost {plan.cost} of {ris.r} elements, seed {seed}")

    sys_ = scheme.build_gamma(ch, plan, case)
    residual = scheme.system_residual(sys_, psi)
    residual_limit = tol * (1.0 + float(np.linalg.norm(sys_.rhs)))
    print(f"solver residual: {residual:.3e} (limit {residual_limit:.3e})")
    if residual > residual_limit:
        failures.append("solver residual exceeds tolerance")

    for name, hbar, h, f, mode in (
        ("hbar21", eff.hbar21, ch.h21, plan.f1, plan.mode1),
        ("hbar12", eff.hbar12, ch.h12, plan.f2, plan.mode2),
    ):
        block = scheme.zero_block(hbar, f, mode)
        worst = float(np.abs(block).max()) if block.size else 0.0
        limit = tol * (1.0 + float(np.linalg.norm(h)))
        print(f"zero block {name}: max |entry| {worst:.3e} (limit {limit:.3e})")
        if worst > limit:
            failures.append(f"zero block of {name} exceeds tolerance")

    rank21, rank12 = scheme.cross_rank_expected(plan, ch.h21.shape, ch.h12.shape)
    for name, hbar, h, expected in (
        ("hbar21", eff.hbar21, ch.h21, rank21),
        ("hbar12", eff.hbar12, ch.h12, rank12),
        ("hbar11", eff.hbar11, ch.h11, min(cfg.n1, cfg.m1)),
        ("hbar22", eff.hbar22, ch.h22, min(cfg.n2, cfg.m2)),
    ):
        got = scheme.matrix_rank(hbar, scale=1.0 + float(np.linalg.norm(h)))
        print(f"rank {name}: {got} (expected {expected})")
        if got != expected:
            failures.append(f"rank of {name} is {got}, expected {expected}")

    print(f"max |psi|: {psi.max_magnitude:.4f}")

    alloc = transceiver.allocate_streams(cfg, plan, case)
    try:
        alloc, pre = transceiver.build_verified(eff, alloc, seed)
        decodable = True
    except transceiver.AllocationInfeasible as err:
        decodable = False
        failures.append(f"decodability: {err}")
        pre = None
    print(f"streams: d1_zf={alloc.d1_zf} d2_zf={alloc.d2_zf} d_id={alloc.d_id}"
          f" owner={alloc.id_owner.value} total={alloc.total}")
    print(f"decodable: {'yes' if decodable else 'no'}")

    if pre is not None:
        slope = transceiver.estimate_slope(cfg, ris, case, seed, snr_lo_db=80.0, snr_hi_db=120.0)
        print(f"slope 80->120 dB: {slope:.4f}"
              f" (predicted {predicted}, tolerance {transceiver.SLOPE_TOL})")
        if abs(slope - predicted) > transceiver.SLOPE_TOL:
            failures.append("sum-rate slope misses the predicted sum-DoF")

    if args.dump:
        scheme.dump_instance(args.dump, scheme.instance_record(cfg, ris, case, seed, ch, psi, eff))
        print(f"instance written to {args.dump}")

    if failures:
        for failure in failures:
            print(f"failed: {failure}")
        print("FAIL")
        return 1
    print("PASS")
    return 0


def _sweep_rows(spec: SweepSpec) -> list[dict]:
    rows = []
    for m1, m2, n1, n2, r in spec.grid():
        report = dof_core.achievable_sumdof(canonicalize(m1, m2, n1, n2), RisConfig(r))
        rows.append({
            "m1": m1, "m2": m2, "n1": n1, "n2": n2, "r": r,
            "case": report.best_case.value,
            "achievable": report.achievable,
            "baseline": report.baseline,
            "gain": report.gain,
            "ris_helps": report.ris_helps,
        })
    return rows


def _write_csv(path: Path, header: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_value(row[key]) for key in header])


def _csv_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _spot_check_rows(spec: SweepSpec, rows: list[dict]) -> None:
    """Numerically synthesize each grid point for every requested seed."""
    for row in rows:
        cfg = canonicalize(row["m1"], row["m2"], row["n1"], row["n2"])
        ris = RisConfig(row["r"])
        case = _CASE_CHOICES[row["case"]]
        for seed in spec.seeds:
            scheme.synthesize(cfg, ris, case, seed)


def cmd_sweep(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    spec = _build_sweep_spec(args, parser)
    rows = _sweep_rows(spec)
    try:
        _write_csv(spec.out, SWEEP_CSV_HEADER, rows)
    except OSError as err:
        print(f"cannot write {spec.out}: {err}", file=sys.stderr)
        return 1
    print(f"{len(rows)} rows written to {spec.out}")
    if spec.seeds:
        try:
            _spot_check_rows(spec, rows)
        except (scheme.IllConditioned, scheme.ZeroBlockViolation) as err:
            print(f"numerical spot check failed: {err}", file=sys.stderr)
            return 1
        print(f"numerical spot check passed for seeds {list(spec.seeds)}")
    if spec.plot:
        figure_path = spec.out.with_suffix(".png")
        if spec.variable is SweepVariable.M_SYMMETRIC:
            plotting.save_m_sweep_figure(rows, figure_path)
        else:
            plotting.save_r_sweep_figure(rows, figure_path)
        print(f"figure written to {figure_path}")
    return 0


def _build_sweep_spec(args: argparse.Namespace, parser: argparse.ArgumentParser) -> SweepSpec:
    variable = SweepVariable(args.variable)
    if args.r_list is not None:
        r_values = tuple(sorted(set(args.r_list)))
    elif args.r_max is not None:
        r_min = args.r_min if args.r_min is not None else 0
        step = args.r_step if args.r_step is not None else 1
        if step < 1:
            parser.error("--r-step must be >= 1")
        r_values = tuple(range(int(r_min), int(args.r_max) + 1, int(step)))
    else:
        parser.error("provide --r-list or --r-max (with optional --r-min/--r-step)")
    if not r_values:
        parser.error("the r grid is empty")
    if any(r < 0 for r in r_values):
        parser.error("r values must be non-negative")

    seeds = tuple(args.seeds) if args.seeds else ()
    out = Path(args.out) if args.out else None
    if out is None:
        parser.error("--out is required")

    if variable is SweepVariable.M_SYMMETRIC:
        m_min = args.m_min if args.m_min is not None else 1
        if args.m_max is None or args.n is None:
            parser.error("an M sweep needs --m-max and --n")
        if m_min < 1 or args.m_max < m_min or args.n < 1:
            parser.error("antenna ranges must be non-empty with values >= 1")
        return SweepSpec(variable=variable, r_values=r_values, out=out,
                         m_min=int(m_min), m_max=int(args.m_max), n=int(args.n),
                         seeds=seeds, plot=not args.no_plot)

    if args.m is not None or args.n is not None:
        if args.m is None or args.n is None:
            parser.error("symmetric shorthand needs both --m and --n")
        m1 = m2 = int(args.m)
        n1 = n2 = int(args.n)
    else:
        if any(getattr(args, name) is None for name in ("m1", "m2", "n1", "n2")):
            parser.error("an R sweep needs --m1 --m2 --n1 --n2 (or --m/--n)")
        m1, m2, n1, n2 = int(args.m1), int(args.m2), int(args.n1), int(args.n2)
    if min(m1, m2, n1, n2) < 1:
        parser.error("antenna counts must be >= 1")
    return SweepSpec(variable=variable, r_values=r_values, out=out,
                     m1=m1, m2=m2, n1=n1, n2=n2,
                     seeds=seeds, plot=not args.no_plot)


def cmd_gain(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.m is None or args.n is None:
        parser.error("--m and --n are required")
    if args.m < 1 or args.n < 1:
        parser.error("antenna counts must be >= 1")
    if args.r_list is not None:
        r_values = sorted(set(args.r_list))
    else:
        r_max = args.r_max if args.r_max is not None else 0
        r_min = args.r_min if args.r_min is not None else 0
        step = args.r_step if args.r_step is not None else 1
        r_values = list(range(int(r_min), int(r_max) + 1, int(step)))
    if not r_values or any(r < 0 for r in r_values):
        parser.error("the r grid must be non-empty and non-negative")

    m, n = int(args.m), int(args.n)
    cfg = canonicalize(m, m, n, n)
    baseline = dof_core.baseline_sumdof(cfg)
    rows = []
    mismatch = False
    print(f"M = {m}, N = {n}")
    print(f"{'r':>6}  {'closed form':>12}  {'cross-check':>12}  match")
    for r in r_values:
        closed = dof_core.ris_gain_symmetric(m, n, r)
        cross = dof_core.achievable_sumdof(cfg, RisConfig(r)).achievable - baseline
        match = closed == cross
        mismatch |= not match
        rows.append({"m": m, "n": n, "r": r, "gain_closed_form": closed,
                     "gain_cross_check": cross, "match": match})
        print(f"{r:>6}  {closed:>12}  {cross:>12}  {'yes' if match else 'MISMATCH'}")
    if args.out:
        out = Path(args.out)
        try:
            _write_csv(out, GAIN_CSV_HEADER, rows)
        except OSError as err:
            print(f"cannot write {out}: {err}", file=sys.stderr)
            return 1
        plotting.save_gain_figure(rows, m, n, out.with_suffix(".png"))
        print(f"table written to {out}, figure to {out.with_suffix('.png')}")
    if mismatch:
        print("FAIL: closed form disagrees with achievable minus baseline")
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="risdof",
        description="Achievable sum-DoF of the active-RIS-assisted two-user MIMO interference channel",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="closed-form sum-DoF for one configuration")
    _add_antenna_flags(p_compute)
    p_compute.add_argument("--r", type=int, help="RIS elements (default 0)")
    p_compute.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p_compute.add_argument("--config", help="JSON file with default flag values")
    p_compute.set_defaults(handler=cmd_compute)

    p_verify = sub.add_parser("verify", help="numerically synthesize and check one instance")
    _add_antenna_flags(p_verify)
    p_verify.add_argument("--r", type=int, help="RIS elements (default 0)")
    p_verify.add_argument("--seed", type=int, help="channel seed (default 0)")
    p_verify.add_argument("--tol", type=float,
                          help=f"zero-block/residual tolerance (default {RESIDUAL_TOL:g})")
    p_verify.add_argument("--case", choices=sorted(_CASE_CHOICES),
                          help="case to synthesize (default: best applicable)")
    p_verify.add_argument("--dump", help="write the synthesized instance as JSON to this path")
    p_verify.add_argument("--config", help="JSON file with default flag values")
    p_verify.set_defaults(handler=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="emit a CSV (and figure) over a parameter grid")
    p_sweep.add_argument("--variable", choices=[v.value for v in SweepVariable], required=True,
                         help="sweep symmetric M (m) or the RIS budget (r)")
    _add_antenna_flags(p_sweep)
    p_sweep.add_argument("--m", type=int, help="symmetric Tx antennas (R sweep shorthand)")
    p_sweep.add_argument("--n", type=int, help="symmetric Rx antennas")
    p_sweep.add_argument("--m-min", type=int, help="M sweep start (default 1)")
    p_sweep.add_argument("--m-max", type=int, help="M sweep end (inclusive)")
    p_sweep.add_argument("--r-list", type=_int_list, help="comma-separated RIS budgets")
    p_sweep.add_argument("--r-min", type=int, help="R range start (default 0)")
    p_sweep.add_argument("--r-max", type=int, help="R range end (inclusive)")
    p_sweep.add_argument("--r-step", type=int, help="R range step (default 1)")
    p_sweep.add_argument("--seeds", type=_int_list,
                         help="optional seeds for a numerical spot check of each grid point")
    p_sweep.add_argument("--out", help="CSV output path (figure lands next to it)")
    p_sweep.add_argument("--no-plot", action="store_true", help="skip the figure")
    p_sweep.add_argument("--config", help="JSON file with default flag values")
    p_sweep.set_defaults(handler=cmd_sweep)

    p_gain = sub.add_parser("gain", help="symmetric-configuration RIS gain table")
    p_gain.add_argument("--m", type=int, help="Tx antennas (both users)")
    p_gain.add_argument("--n", type=int, help="Rx antennas (both users)")
    p_gain.add_argument("--r-list", type=_int_list, help="comma-separated RIS budgets")
    p_gain.add_argument("--r-min", type=int, help="R range start (default 0)")
    p_gain.add_argument("--r-max", type=int, help="R range end (inclusive)")
    p_gain.add_argument("--r-step", type=int, help="R range step (default 1)")
    p_gain.add_argument("--out", help="optional CSV output path (figure lands next to it)")
    p_gain.add_argument("--config", help="JSON file with default flag values")
    p_gain.set_defaults(handler=cmd_gain)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _merge_config(args, parser)
    return args.handler(args, parser)


if __name__ == "__main__":
    raise SystemExit(main())
