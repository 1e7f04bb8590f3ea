"""Command-line front end emitting risk tables and records as CSV/JSON.

Subcommands: ``risk`` (one evaluation point), ``diff-curve`` and ``heatmap``
(segment-minus-triangle risk difference over noise/slope grids), ``envelope``
(limiting-risk envelope over the movable-vertex family), ``statdim``
(statistical dimension, analytic or Monte Carlo), and ``reversal``
(finite-noise worst-case reversal scan).  Output is byte-stable: JSON is a
single line with sorted keys, CSV uses fixed 15-significant-digit decimals,
and every file starts with a ``# {...}`` metadata line from which
``--verify`` can recompute and re-check a sample of rows.

Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .asymptotics import (
    detect_finite_sigma_reversal,
    envelope_curve,
    statistical_dimension_2d,
    statistical_dimension_mc,
)
from .exact_risk import RiskQuery, risk_difference, risk_segment_exact, risk_triangle_exact
from .geometry import ConvexPolytope, ExampleGeometry, ProjectionError, tangent_cone_2d
from .montecarlo import DEFAULT_SEED, MCConfig, mc_risk

DEFAULT_SAMPLES = 1_000_000

# every 100th row is recomputed by --verify
VERIFY_STRIDE = 100
VERIFY_RTOL = 1e-9
VERIFY_STDERR_FACTOR = 4.0

# result column -> its standard error column; such pairs get the
# statistical comparison in --verify instead of the 1e-9 one
_STDERR_COLUMN = {
    "mc_mean": "mc_stderr",
    "sup_small": "stderr_small",
    "sup_large": "stderr_large",
    "delta": "stderr",
}


class _NumericalFailure(RuntimeError):
    """A computation produced a non-finite or otherwise unusable number."""


class SweepScale(Enum):
    LINEAR = "linear"
    LOG = "log"


@dataclass(frozen=True)
class SweepSpec:
    """Grid description ``start:stop:points[:scale]`` used by sweep flags."""

    start: float
    stop: float
    points: int
    scale: SweepScale = SweepScale.LINEAR

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("sweep endpoints must be finite")
        if self.start >= self.stop:
            raise ValueError("sweep requires start < stop")
        if self.points < 2:
            raise ValueError("sweep requires at least 2 points")
        if self.scale is SweepScale.LOG and self.start <= 0.0:
            raise ValueError("log sweep requires start > 0")

    def values(self) -> np.ndarray:
        if self.scale is SweepScale.LOG:
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


def parse_sweep(text: str) -> np.ndarray:
    """Parse ``start:stop:points[:scale]`` or an explicit ``v1,v2,...`` list."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ValueError(f"sweep must be start:stop:points[:scale], got {text!r}")
        scale = SweepScale.LINEAR
        if len(parts) == 4:
            try:
                scale = SweepScale(parts[3].strip())
            except ValueError:
                raise ValueError(f"sweep scale must be 'linear' or 'log', got {parts[3]!r}") from None
        spec = SweepSpec(
            start=float(parts[0]), stop=float(parts[1]), points=int(parts[2]), scale=scale
        )
        return spec.values()
    values = parse_float_list(text)
    if len(values) < 1:
        raise ValueError("sweep list must be nonempty")
    return np.asarray(values)


def parse_float_list(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ValueError(f"expected comma-separated numbers, got {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise ValueError(f"values must be finite, got {text!r}")
    return values


def parse_point(text: str) -> tuple[float, ...]:
    values = parse_float_list(text)
    if len(values) < 1:
        raise ValueError("point must have at least one coordinate")
    return tuple(values)


def load_polytope(path: str) -> ConvexPolytope:
    """Read a polytope file: JSON object with ``dim`` and ``vertices``."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except OSError as err:
        raise ValueError(f"cannot read polytope file {path!r}: {err}") from err
    except json.JSONDecodeError as err:
        raise ValueError(f"polytope file {path!r} is not valid JSON: {err}") from err
    if not isinstance(payload, dict) or "dim" not in payload or "vertices" not in payload:
        raise ValueError(f"polytope file {path!r} must contain 'dim' and 'vertices'")
    polytope = ConvexPolytope(payload["vertices"])
    if int(payload["dim"]) != polytope.dim:
        raise ValueError(
            f"polytope file {path!r}: declared dim {payload['dim']} does not match vertices"
        )
    return polytope


def _fmt(value: float) -> str:
    return f"{value:.15g}"


def _json_line(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _check_finite(record: dict):
    for key, value in record.items():
        scalars = value if isinstance(value, (list, tuple)) else [value]
        for v in scalars:
            if isinstance(v, float) and not math.isfinite(v):
                raise _NumericalFailure(f"non-finite value for {key!r}: {v!r}")


@dataclass
class Output:
    """One command's result: flat record and/or tabular rows plus metadata."""

    metadata: dict
    record: dict | None = None
    header: list | None = None
    rows: list | None = None
    footer: dict | None = None


# ---------------------------------------------------------------------------
# command computations, callable both from the CLI and from --verify


def compute_risk(params: dict) -> dict:
    which = params["set"]
    sigma = float(params["sigma"])
    n_obs = int(params["n_obs"])
    if sigma <= 0 or not math.isfinite(sigma):
        raise ValueError("--sigma must be a positive finite real")
    if n_obs < 1:
        raise ValueError("--n-obs must be at least 1")
    sigma_eff = sigma / math.sqrt(n_obs)
    record = {"sigma_effective": sigma_eff}

    if which in ("segment", "triangle"):
        if params.get("c") is None:
            raise ValueError(f"--c is required for --set {which}")
        geometry = ExampleGeometry(c=float(params["c"]))
        if which == "segment":
            t_star = float(params.get("t_star") or 0.0)
            record["exact"] = risk_segment_exact(geometry, t_star, sigma_eff)
            polytope = geometry.segment()
            theta = tuple(t_star * geometry.v2)
        else:
            if params.get("t_star") is not None:
                raise ValueError("--t-star applies only to --set segment")
            record["exact"] = risk_triangle_exact(geometry, sigma_eff).total
            polytope = geometry.triangle()
            theta = (0.0, 0.0)
        if params.get("theta") is not None:
            raise ValueError("--theta applies only to --set polytope-file")
    elif which == "polytope-file":
        if params.get("file") is None or params.get("theta") is None:
            raise ValueError("--set polytope-file requires --file and --theta")
        if params.get("t_star") is not None:
            raise ValueError("--t-star applies only to --set segment")
        if not params["mc"]:
            raise ValueError("general polytopes have no closed form; pass --mc")
        polytope = load_polytope(params["file"])
        theta = tuple(float(v) for v in params["theta"])
    else:
        raise ValueError(f"unknown set {which!r}")

    if params["mc"]:
        estimate = mc_risk(
            polytope,
            RiskQuery(theta_star=theta, sigma=sigma_eff),
            MCConfig(n=int(params["samples"]), seed=int(params["seed"])),
        )
        record["mc_mean"] = estimate.mean
        record["mc_stderr"] = estimate.stderr
    return record


def compute_diff_curve(params: dict):
    c_list = [float(c) for c in params["c_list"]]
    if not c_list:
        raise ValueError("--c-list must contain at least one value")
    sigmas = parse_sweep(params["sigma_sweep"])
    rows = []
    for c in c_list:
        geometry = ExampleGeometry(c=c)
        for sigma in sigmas:
            risk_s = risk_segment_exact(geometry, 0.0, float(sigma))
            risk_l = risk_triangle_exact(geometry, float(sigma)).total
            rows.append([c, float(sigma), risk_s, risk_l, risk_s - risk_l])
    return ["c", "sigma", "risk_S", "risk_L", "diff"], rows, None


def compute_heatmap(params: dict):
    c_grid = parse_sweep(params["c_sweep"])
    sigmas = parse_sweep(params["sigma_sweep"])
    rows = []
    for c in c_grid:
        geometry = ExampleGeometry(c=float(c))
        for sigma in sigmas:
            rows.append([float(c), float(sigma), risk_difference(geometry, float(sigma))])
    return ["c", "sigma", "diff"], rows, None


def compute_envelope(params: dict):
    c = float(params["c"])
    grid = parse_sweep(params["x_sweep"])
    points = envelope_curve(c, grid)
    rows = [[p.x, p.risk_v1, p.risk_v2, p.risk_vx, p.envelope] for p in points]
    best = min(range(len(points)), key=lambda i: points[i].envelope)
    footer = {"argmin_x": points[best].x, "envelope_min": points[best].envelope}
    return ["x", "risk_v1", "risk_v2", "risk_vx", "envelope"], rows, footer


def compute_statdim(params: dict) -> dict:
    has_polytope = params.get("polytope_file") is not None
    has_generators = params.get("generators") is not None
    if has_polytope == has_generators:
        raise ValueError("pass exactly one of --polytope-file/--theta or --generators")
    if has_polytope:
        if params.get("theta") is None:
            raise ValueError("--polytope-file requires --theta")
        polytope = load_polytope(params["polytope_file"])
        cone = tangent_cone_2d(polytope, np.asarray(params["theta"], dtype=float))
        return {"delta": statistical_dimension_2d(cone), "method": "analytic"}
    generators = [parse_point(part) for part in params["generators"].split(";") if part.strip()]
    estimate = statistical_dimension_mc(
        generators, n=int(params["samples"]), seed=int(params["seed"])
    )
    return {"delta": estimate.mean, "stderr": estimate.stderr, "method": "mc"}


def compute_reversal(params: dict) -> dict:
    x_small = float(params["x_small"])
    x_large = float(params["x_large"])
    if x_small <= x_large:
        raise ValueError(
            "sets are not strictly nested: --x-small must exceed --x-large "
            "(a larger x is a smaller set)"
        )
    c = float(params["c"])
    scan = detect_finite_sigma_reversal(
        ExampleGeometry(c=c, x=x_small),
        ExampleGeometry(c=c, x=x_large),
        parse_sweep(params["sigma_sweep"]),
        n=int(params["samples"]),
        seed=int(params["seed"]),
    )
    return {
        "reversal_sigma": scan.reversal_sigma,
        "sigma_grid": [row.sigma for row in scan.rows],
        "sup_small": [row.sup_small for row in scan.rows],
        "stderr_small": [row.stderr_small for row in scan.rows],
        "sup_large": [row.sup_large for row in scan.rows],
        "stderr_large": [row.stderr_large for row in scan.rows],
        "edge_points": scan.edge_points,
    }


# ---------------------------------------------------------------------------
# argument handling and rendering


def _common_params(args) -> dict:
    return {
        "seed": int(args.seed),
        "samples": int(args.samples),
        "n_obs": int(args.n_obs),
    }


def cmd_risk(args) -> Output:
    params = {
        "command": "risk",
        "set": args.set,
        "c": args.c,
        "sigma": args.sigma,
        "t_star": args.t_star,
        "file": args.file,
        "theta": list(parse_point(args.theta)) if args.theta is not None else None,
        "mc": bool(args.mc),
        **_common_params(args),
    }
    if params["sigma"] is None:
        raise ValueError("--sigma is required")
    return Output(metadata=params, record=compute_risk(params))


def cmd_diff_curve(args) -> Output:
    params = {
        "command": "diff-curve",
        "c_list": parse_float_list(args.c_list),
        "sigma_sweep": args.sigma_sweep,
        **_common_params(args),
    }
    header, rows, footer = compute_diff_curve(params)
    return Output(metadata=params, header=header, rows=rows, footer=footer)


def cmd_heatmap(args) -> Output:
    params = {
        "command": "heatmap",
        "c_sweep": args.c_sweep,
        "sigma_sweep": args.sigma_sweep,
        **_common_params(args),
    }
    header, rows, footer = compute_heatmap(params)
    return Output(metadata=params, header=header, rows=rows, footer=footer)


def cmd_envelope(args) -> Output:
    params = {
        "command": "envelope",
        "c": args.c,
        "x_sweep": args.x_sweep,
        **_common_params(args),
    }
    if params["c"] is None:
        raise ValueError("--c is required")
    header, rows, footer = compute_envelope(params)
    return Output(metadata=params, header=header, rows=rows, footer=footer)


def cmd_statdim(args) -> Output:
    params = {
        "command": "statdim",
        "polytope_file": args.polytope_file,
        "theta": list(parse_point(args.theta)) if args.theta is not None else None,
        "generators": args.generators,
        **_common_params(args),
    }
    return Output(metadata=params, record=compute_statdim(params))


def cmd_reversal(args) -> Output:
    for flag, value in (("--c", args.c), ("--x-small", args.x_small), ("--x-large", args.x_large)):
        if value is None:
            raise ValueError(f"{flag} is required")
    params = {
        "command": "reversal",
        "c": args.c,
        "x_small": args.x_small,
        "x_large": args.x_large,
        "sigma_sweep": args.sigma_sweep,
        **_common_params(args),
    }
    return Output(metadata=params, record=compute_reversal(params))


_COMMANDS = {
    "risk": cmd_risk,
    "diff-curve": cmd_diff_curve,
    "heatmap": cmd_heatmap,
    "envelope": cmd_envelope,
    "statdim": cmd_statdim,
    "reversal": cmd_reversal,
}

_COMPUTE = {
    "risk": compute_risk,
    "diff-curve": compute_diff_curve,
    "heatmap": compute_heatmap,
    "envelope": compute_envelope,
    "statdim": compute_statdim,
    "reversal": compute_reversal,
}


def _record_to_table(record: dict):
    """Split a record into scalar extras and equal-length list columns."""
    lists = {k: v for k, v in record.items() if isinstance(v, (list, tuple))}
    scalars = {k: v for k, v in record.items() if not isinstance(v, (list, tuple))}
    if not lists:
        header = sorted(scalars)
        return {}, header, [[scalars[k] for k in header]]
    lengths = {len(v) for v in lists.values()}
    if len(lengths) != 1:
        raise ValueError("cannot tabulate record with unequal list lengths")
    header = sorted(lists)
    rows = [[lists[k][i] for k in header] for i in range(lengths.pop())]
    return scalars, header, rows


def render_csv(output: Output) -> str:
    metadata = dict(output.metadata)
    if output.rows is not None:
        header, rows, footer = output.header, output.rows, output.footer
    else:
        extras, header, rows = _record_to_table(output.record)
        metadata.update(extras)
        footer = None
    lines = ["# " + _json_line(metadata), ",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    if footer:
        lines.append("# " + _json_line(footer))
    return "\n".join(lines) + "\n"


def render_json(output: Output) -> str:
    if output.record is not None:
        payload = {"metadata": output.metadata, **output.record}
    else:
        payload = {"metadata": output.metadata, "header": output.header, "rows": output.rows}
        if output.footer:
            payload["footer"] = output.footer
    return _json_line(payload) + "\n"


_PLOT_BODIES = {
    "diff-curve": """
for c in sorted(set(rows["c"])):
    part = rows[rows["c"] == c]
    plt.plot(part["sigma"], part["diff"], label=f"c={c:g}")
plt.axhline(0.0, color="black", linewidth=0.8)
plt.xscale("log")
plt.xlabel("sigma")
plt.ylabel("risk difference (segment - triangle)")
plt.legend()
""",
    "heatmap": """
plt.tripcolor(rows["c"], rows["sigma"], rows["diff"], shading="gouraud")
plt.yscale("log")
plt.xlabel("c")
plt.ylabel("sigma")
plt.colorbar(label="risk difference (segment - triangle)")
""",
    "envelope": """
plt.plot(rows["x"], rows["risk_v1"], label="risk at v1")
plt.plot(rows["x"], rows["risk_v2"], label="risk at v2")
plt.plot(rows["x"], rows["risk_vx"], label="risk at vx")
plt.plot(rows["x"], rows["envelope"], "k--", label="envelope")
plt.xlabel("x")
plt.ylabel("limiting risk")
plt.legend()
""",
    "reversal": """
plt.errorbar(rows["sigma_grid"], rows["sup_small"], yerr=rows["stderr_small"],
             label="sup-risk, smaller set")
plt.errorbar(rows["sigma_grid"], rows["sup_large"], yerr=rows["stderr_large"],
             label="sup-risk, larger set")
plt.xscale("log")
plt.xlabel("sigma")
plt.ylabel("estimated sup-risk")
plt.legend()
""",
}


def _plot_script(command: str, csv_path: str) -> str:
    body = _PLOT_BODIES[command]
    return (
        f'"""Companion plot for {csv_path}: run with python."""\n'
        "import numpy as np\n"
        "import matplotlib\n"
        'matplotlib.use("Agg")\n'
        "import matplotlib.pyplot as plt\n\n"
        f'rows = np.genfromtxt("{csv_path}", delimiter=",", names=True, comments="#")\n'
        f"{body}"
        "plt.tight_layout()\n"
        f'plt.savefig("{csv_path}.png", dpi=150)\n'
        f'print("wrote {csv_path}.png")\n'
    )


# ---------------------------------------------------------------------------
# --verify


def _parse_csv_text(text: str):
    lines = [line for line in text.split("\n") if line != ""]
    if not lines or not lines[0].startswith("# "):
        raise ValueError("not a verifiable CSV: missing leading metadata line")
    metadata = json.loads(lines[0][2:])
    if len(lines) < 2:
        raise ValueError("CSV has no header line")
    header = lines[1].split(",")
    rows = []
    footer = None
    for line in lines[2:]:
        if line.startswith("# "):
            footer = json.loads(line[2:])
            continue
        rows.append([float(part) for part in line.split(",")])
    return metadata, header, rows, footer


def _verify_value(name: str, got: float, want: float, stderr: float | None) -> bool:
    if stderr is not None:
        return abs(got - want) <= VERIFY_STDERR_FACTOR * stderr + 1e-12
    return abs(got - want) <= VERIFY_RTOL * (1.0 + abs(want))


def run_verify(path: str) -> int:
    with open(path, "r", encoding="utf-8") as handle:
        metadata, header, rows, footer = _parse_csv_text(handle.read())
    command = metadata.get("command")
    if command not in _COMPUTE:
        raise ValueError(f"metadata names unknown command {command!r}")
    result = _COMPUTE[command](metadata)
    if command in ("diff-curve", "heatmap", "envelope"):
        want_header, want_rows, want_footer = result
    else:
        extras, want_header, want_rows = _record_to_table(result)
        want_footer = None
    if header != want_header:
        raise ValueError(f"header mismatch: file has {header}, recomputation has {want_header}")
    if len(rows) != len(want_rows):
        raise ValueError(f"row count mismatch: file has {len(rows)}, expected {len(want_rows)}")
    checked = 0
    failures = []
    for index in range(0, len(rows), VERIFY_STRIDE):
        for col, name in enumerate(header):
            got = rows[index][col]
            want = want_rows[index][col]
            stderr = None
            stderr_name = _STDERR_COLUMN.get(name)
            if stderr_name in header:
                stderr = want_rows[index][header.index(stderr_name)]
            if not _verify_value(name, got, want, stderr):
                failures.append(f"row {index}, column {name}: file {got!r} vs recomputed {want!r}")
        checked += 1
    if footer is not None and want_footer is not None:
        for key in want_footer:
            if key in footer and not _verify_value(key, footer[key], want_footer[key], None):
                failures.append(f"footer {key}: file {footer[key]!r} vs {want_footer[key]!r}")
    if failures:
        raise _NumericalFailure("verification failed: " + "; ".join(failures))
    print(f"verified {checked} of {len(rows)} rows of {path}: OK")
    return 0


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riskrev",
        description="Exact, asymptotic, and Monte Carlo risks of polytope-constrained "
        "least squares in the planar Gaussian sequence model.",
    )
    parser.add_argument(
        "--verify", metavar="PATH", help="recheck a previously emitted CSV instead of running a command"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--out", metavar="PATH", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=["csv", "json"], default=None)
    common.add_argument("--n-obs", type=int, default=1, dest="n_obs")
    common.add_argument(
        "--emit-plot-script",
        action="store_true",
        help="write a matplotlib companion script next to the CSV named by --out",
    )
    sub = parser.add_subparsers(dest="command")

    p_risk = sub.add_parser("risk", parents=[common], help="risk at one (theta*, sigma) point")
    p_risk.add_argument("--set", required=True, choices=["segment", "triangle", "polytope-file"])
    p_risk.add_argument("--c", type=float)
    p_risk.add_argument("--sigma", type=float)
    p_risk.add_argument("--t-star", type=float, default=None, dest="t_star")
    p_risk.add_argument("--file", help="polytope JSON file with dim and vertices")
    p_risk.add_argument("--theta", help="true parameter, comma-separated coordinates")
    p_risk.add_argument("--mc", action="store_true", help="add a Monte Carlo estimate")

    p_diff = sub.add_parser("diff-curve", parents=[common], help="risk difference along a noise sweep")
    p_diff.add_argument("--c-list", required=True, dest="c_list")
    p_diff.add_argument("--sigma-sweep", required=True, dest="sigma_sweep")

    p_heat = sub.add_parser("heatmap", parents=[common], help="risk difference over a (c, sigma) grid")
    p_heat.add_argument("--c-sweep", required=True, dest="c_sweep")
    p_heat.add_argument("--sigma-sweep", required=True, dest="sigma_sweep")

    p_env = sub.add_parser("envelope", parents=[common], help="limiting-risk envelope over x")
    p_env.add_argument("--c", type=float)
    p_env.add_argument("--x-sweep", required=True, dest="x_sweep")

    p_stat = sub.add_parser("statdim", parents=[common], help="statistical dimension of a tangent cone")
    p_stat.add_argument("--polytope-file", dest="polytope_file")
    p_stat.add_argument("--theta")
    p_stat.add_argument("--generators", help="semicolon-separated cone generators, e.g. '1,0;0,1'")

    p_rev = sub.add_parser("reversal", parents=[common], help="worst-case reversal scan over sigma")
    p_rev.add_argument("--c", type=float)
    p_rev.add_argument("--x-small", type=float, dest="x_small")
    p_rev.add_argument("--x-large", type=float, dest="x_large")
    p_rev.add_argument("--sigma-sweep", required=True, dest="sigma_sweep")

    return parser


def _default_format(command: str) -> str:
    return "csv" if command in ("diff-curve", "heatmap", "envelope") else "json"


def _emit(output: Output, args) -> None:
    fmt = args.format or _default_format(args.command)
    text = render_csv(output) if fmt == "csv" else render_json(output)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    if args.emit_plot_script:
        if not args.out or fmt != "csv":
            raise ValueError("--emit-plot-script requires --out with CSV output")
        if args.command not in _PLOT_BODIES:
            raise ValueError(f"no plot template for command {args.command!r}")
        script_path = args.out + ".plot.py"
        with open(script_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(_plot_script(args.command, args.out))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verify is not None:
            if args.command is not None:
                raise ValueError("--verify replaces a subcommand; pass only one of them")
            return run_verify(args.verify)
        if args.command is None:
            parser.print_usage(sys.stderr)
            print("error: a subcommand or --verify is required", file=sys.stderr)
            return 2
        output = _COMMANDS[args.command](args)
        if output.record is not None:
            _check_finite(output.record)
        if output.rows is not None:
            for row in output.rows:
                _check_finite(dict(zip(output.header, row)))
        _emit(output, args)
        return 0
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ProjectionError, _NumericalFailure, FloatingPointError, OverflowError, ZeroDivisionError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
