"""Command-line front end: matrix inspection, flow runs, CSV and SVG emission.

Exit codes: 0 success, 2 argument error, 3 input parse error, 4 numeric
range error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import circulant, spectral_flow, svg, yau_flow
from .integrate import (
    DivergenceError,
    IntegratorConfig,
    PolyharmonicKind,
    YauKind,
    integrate as run_rk4,
)
from .polygon import (
    Polygon,
    PolygonFormatError,
    centroid,
    energy,
    format_float,
    load_polygon,
)

SAMPLE_STROKE = "#6f6f6f"
INITIAL_STROKE = "#000000"
TARGET_STROKE = "#c02020"


class CliArgumentError(ValueError):
    """Bad flag combination or value; maps to exit code 2."""


@dataclass(frozen=True)
class RunSpec:
    """Everything one subcommand run needs, resolved from the parsed flags."""

    command: str
    m: int = 1
    n: int = 0
    input_path: str | None = None
    target_path: str | None = None
    times: tuple[float, ...] = ()
    strategy: str = "midpoint"
    csv_path: str | None = None
    svg_path: str | None = None
    json_path: str | None = None
    dt: float = 1e-3
    t_final: float = 1.0
    stroke_width: float | None = None
    dash_target: bool = True


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyflow",
        description="Semi-discrete polyharmonic and Yau difference flows on closed polygons.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_matrix = sub.add_parser(
        "matrix",
        help="print the difference-matrix power, flow matrix, and eigenvalues",
        description="Prints three lines: the first row of M^m, the first row "
        "of the flow matrix (-1)^(m+1) M^m, and the flow eigenvalues.",
    )
    p_matrix.add_argument("--n", type=_positive_int, required=True, help="vertex count")
    p_matrix.add_argument("--m", type=_positive_int, required=True, help="flow order")

    def add_schedule(p):
        p.add_argument("--times", help="comma-separated strictly increasing times")
        p.add_argument("--t0", type=_positive_float, default=0.05, help="first geometric time")
        p.add_argument("--ratio", type=_positive_float, default=1.6, help="geometric ratio > 1")
        p.add_argument("--count", type=_positive_int, default=8, help="number of samples")

    def add_render(p):
        p.add_argument("--csv", dest="csv_path", help="write the trajectory table here")
        p.add_argument("--svg", dest="svg_path", help="write the figure here")
        p.add_argument("--stroke-width", type=_positive_float, default=None)

    p_flow = sub.add_parser("flow", help="evolve a polygon by the homogeneous flow")
    p_flow.add_argument("--input", dest="input_path", required=True)
    p_flow.add_argument("--m", type=_positive_int, required=True)
    add_schedule(p_flow)
    add_render(p_flow)

    p_yau = sub.add_parser("yau", help="flow a polygon toward a target polygon")
    p_yau.add_argument("--input", dest="input_path", required=True)
    p_yau.add_argument("--target", dest="target_path", required=True)
    p_yau.add_argument("--m", type=_positive_int, required=True)
    p_yau.add_argument(
        "--strategy", choices=("duplicate", "midpoint"), default="midpoint",
        help="vertex-count reconciliation strategy",
    )
    p_yau.add_argument("--solid-target", action="store_true", help="draw the target undashed")
    add_schedule(p_yau)
    add_render(p_yau)

    p_analyze = sub.add_parser("analyze", help="spectral report for a polygon")
    p_analyze.add_argument("--input", dest="input_path", required=True)
    p_analyze.add_argument("--m", type=_positive_int, required=True)
    p_analyze.add_argument("--json", dest="json_path", help="write the report here instead of stdout")

    p_int = sub.add_parser("integrate", help="RK4 oracle run, reports deviation from the closed form")
    p_int.add_argument("--input", dest="input_path", required=True)
    p_int.add_argument("--m", type=_positive_int, required=True)
    p_int.add_argument("--target", dest="target_path", help="integrate the difference flow toward this polygon")
    p_int.add_argument("--dt", type=_positive_float, default=1e-3)
    p_int.add_argument("--T", dest="t_final", type=_positive_float, default=1.0)
    p_int.add_argument("--csv", dest="csv_path", help="write the RK4 trajectory table here")
    p_int.add_argument(
        "--strategy", choices=("duplicate", "midpoint"), default="midpoint",
        help="vertex-count reconciliation strategy (with --target)",
    )
    return parser


def resolve_schedule(args: argparse.Namespace) -> tuple[float, ...]:
    if getattr(args, "times", None):
        try:
            times = tuple(float(tok) for tok in args.times.split(","))
        except ValueError:
            raise CliArgumentError(f"could not parse --times {args.times!r}") from None
    else:
        times = tuple(args.t0 * args.ratio**j for j in range(args.count))
    if not times:
        raise CliArgumentError("empty time schedule")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise CliArgumentError("time schedule must be strictly increasing")
    return times


def load_flow_polygon(path) -> Polygon:
    poly = load_polygon(path)
    if poly.n < 3:
        raise PolygonFormatError(f"flows need n >= 3 vertices, got {poly.n}")
    return poly


def _write_trajectory_rows(fh, times, polygons) -> None:
    p = polygons[0].p
    fh.write(",".join(["t", "vertex_index"] + [f"x{i + 1}" for i in range(p)]) + "\n")
    for t, poly in zip(times, polygons):
        for j, row in enumerate(poly.vertices):
            cells = [format_float(t), str(j)] + [format_float(c) for c in row]
            fh.write(",".join(cells) + "\n")


def write_trajectory_csv(path, times, polygons) -> None:
    with open(path, "w", newline="\n") as fh:
        _write_trajectory_rows(fh, times, polygons)


def _figure_layers(samples, initial, target=None, stroke_width=None, dash_target=True):
    drawn = list(samples) + [initial] + ([target] if target is not None else [])
    extent = svg.drawing_extent(drawn)
    width = stroke_width if stroke_width is not None else svg.default_stroke_width(extent)
    layers = []
    if target is not None:
        layers.append(svg.Layer(target, TARGET_STROKE, width, dashed=dash_target))
    layers.append(svg.Layer(initial, INITIAL_STROKE, 1.8 * width))
    layers.extend(svg.Layer(p, SAMPLE_STROKE, width) for p in samples)
    return layers


def cmd_matrix(spec: RunSpec) -> int:
    try:
        power = circulant.power_of_m(spec.n, spec.m)
    except (ValueError, OverflowError) as exc:
        raise CliArgumentError(str(exc)) from exc
    sign = 1 if (spec.m + 1) % 2 == 0 else -1
    eigen = circulant.eigen_system(spec.n, spec.m)
    print(" ".join(str(b) for b in power.first_row))
    print(" ".join(str(sign * b) for b in power.first_row))
    print(" ".join(format_float(v) for v in eigen.eigenvalues))
    return 0


def cmd_flow(spec: RunSpec) -> int:
    x0 = load_flow_polygon(spec.input_path)
    solution = spectral_flow.flow_solution(x0, spec.m)
    samples = [solution.polygon_at(t) for t in spec.times]
    if spec.csv_path:
        write_trajectory_csv(spec.csv_path, spec.times, samples)
        print(f"wrote {spec.csv_path}")
    if spec.svg_path:
        layers = _figure_layers(samples, x0, stroke_width=spec.stroke_width)
        svg.write(layers, spec.svg_path)
        print(f"wrote {spec.svg_path}")
    if not spec.csv_path and not spec.svg_path:
        _write_trajectory_rows(sys.stdout, spec.times, samples)
    return 0


def cmd_yau(spec: RunSpec) -> int:
    x0 = load_flow_polygon(spec.input_path)
    target = load_flow_polygon(spec.target_path)
    try:
        problem, solution = yau_flow.yau_flow_between(x0, target, spec.m, spec.strategy)
    except ValueError as exc:
        raise PolygonFormatError(str(exc)) from exc
    samples = [solution.polygon_at(t) for t in spec.times]
    if spec.csv_path:
        write_trajectory_csv(spec.csv_path, spec.times, samples)
        print(f"wrote {spec.csv_path}")
    if spec.svg_path:
        layers = _figure_layers(
            samples,
            problem.initial,
            target=problem.target,
            stroke_width=spec.stroke_width,
            dash_target=spec.dash_target,
        )
        svg.write(layers, spec.svg_path)
        print(f"wrote {spec.svg_path}")
    return 0


def _polygon_doc(poly: Polygon) -> dict:
    return {"dim": poly.p, "vertices": [[float(c) for c in row] for row in poly.vertices]}


def cmd_analyze(spec: RunSpec) -> int:
    x0 = load_flow_polygon(spec.input_path)
    dec = spectral_flow.decompose(x0)
    verdict = spectral_flow.classify_self_similar(x0, spec.m)
    report = {
        "n": x0.n,
        "p": x0.p,
        "m": spec.m,
        "energy": energy(x0, spec.m),
        "centroid": [float(c) for c in centroid(x0)],
        "modes": [
            {
                "k": k,
                "mass": dec.pair_mass(k),
                "rate": circulant.flow_eigenvalue(x0.n, spec.m, k),
                "alpha": [float(a) for a in dec.alpha[k]],
                "beta": [float(b) for b in dec.beta[k]],
            }
            for k in range(dec.half + 1)
        ],
        "self_similar": None
        if verdict is None
        else {"mode": verdict.mode, "rate": verdict.rate, "trivial": verdict.is_trivial},
    }
    try:
        k_fwd, fwd = spectral_flow.rescaled_limit(x0, spec.m, "forward")
        k_anc, anc = spectral_flow.rescaled_limit(x0, spec.m, "ancient")
        report["dominant_mode"] = k_fwd
        report["forward_limit"] = _polygon_doc(fwd)
        report["ancient_mode"] = k_anc
        report["ancient_limit"] = _polygon_doc(anc)
    except spectral_flow.DegenerateModeError:
        report["dominant_mode"] = None
        report["forward_limit"] = None
        report["ancient_mode"] = None
        report["ancient_limit"] = None
    text = json.dumps(report, indent=2)
    if spec.json_path:
        with open(spec.json_path, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {spec.json_path}")
    else:
        print(text)
    return 0


def cmd_integrate(spec: RunSpec) -> int:
    x0 = load_flow_polygon(spec.input_path)
    if spec.target_path:
        target = load_flow_polygon(spec.target_path)
        try:
            problem, exact = yau_flow.yau_flow_between(x0, target, spec.m, spec.strategy)
        except ValueError as exc:
            raise PolygonFormatError(str(exc)) from exc
        x0 = problem.initial
        kind = YauKind(m=spec.m, target=problem.target)
        reference = exact.polygon_at(spec.t_final)
    else:
        kind = PolyharmonicKind(m=spec.m)
        reference = spectral_flow.solve(x0, spec.m, spec.t_final)
    config = IntegratorConfig(dt=spec.dt, t_final=spec.t_final, kind=kind)
    trajectory = run_rk4(x0, config)
    if spec.csv_path:
        write_trajectory_csv(spec.csv_path, trajectory.times, trajectory.polygons)
        print(f"wrote {spec.csv_path}")
    deviation = float(
        abs(trajectory.final().vertices - reference.vertices).max()
    )
    print(f"max |rk4 - exact| at T={format_float(spec.t_final)}: {format_float(deviation)}")
    return 0


def spec_from_args(args: argparse.Namespace) -> RunSpec:
    times = ()
    if args.command in ("flow", "yau"):
        times = resolve_schedule(args)
    return RunSpec(
        command=args.command,
        m=getattr(args, "m", 1),
        n=getattr(args, "n", 0),
        input_path=getattr(args, "input_path", None),
        target_path=getattr(args, "target_path", None),
        times=times,
        strategy=getattr(args, "strategy", "midpoint"),
        csv_path=getattr(args, "csv_path", None),
        svg_path=getattr(args, "svg_path", None),
        json_path=getattr(args, "json_path", None),
        dt=getattr(args, "dt", 1e-3),
        t_final=getattr(args, "t_final", 1.0),
        stroke_width=getattr(args, "stroke_width", None),
        dash_target=not getattr(args, "solid_target", False),
    )


_HANDLERS = {
    "matrix": cmd_matrix,
    "flow": cmd_flow,
    "yau": cmd_yau,
    "analyze": cmd_analyze,
    "integrate": cmd_integrate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = spec_from_args(args)
        return _HANDLERS[args.command](spec)
    except CliArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PolygonFormatError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except (spectral_flow.FlowRangeError, DivergenceError, OverflowError) as exc:
        print(f"numeric range error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
