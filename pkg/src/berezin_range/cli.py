"""Command-line frontend.

Subcommands: predict, transform, sample, classify, verify, figure, table.
Exit codes: 0 success, 1 usage, 2 parse error, 3 invariant violation,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .closed_form import (
    mixed_rank_one_radius,
    predict_range,
    rank_one_max,
)
from .dsl import ParseError, parse_complex, parse_operator_spec, render_operator_spec
from .geometry import (
    DEFAULT_TOLERANCE,
    SampleGrid,
    convexity_classify,
    sample_range,
)
from .operators import (
    DiagonalMonomialSum,
    GeneralFiniteRank,
    GeometricDiagonal,
    Multiplication,
    Polynomial,
    RankOneMonomial,
    ScaledProjection,
    berezin_transform,
    radial_profile,
)
from .presets import PRESETS, get_preset
from .report import classify_report_json, cloud_csv, render_figure_svg
from .series_oracle import DEFAULT_DEPTH, berezin_via_series
from .space import DiskPoint, InvariantError, PowerSeries, SpaceParams

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_VERIFY = 4

TOLERANCE_NOTE = (
    f"convexity verdicts use a relative tolerance (default {DEFAULT_TOLERANCE}); "
    "sampled clouds cannot certify set convexity exactly"
)


class _UsageError(SystemExit):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageError(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bzrange", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, gamma=True, grid=False, tol=False):
        if gamma:
            p.add_argument("--gamma", type=float, required=True, help="space weight, > 0")
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        if grid:
            p.add_argument("--n-radial", type=int, default=SampleGrid().n_radial)
            p.add_argument("--n-angular", type=int, default=SampleGrid().n_angular)
            p.add_argument("--r-max", type=float, default=SampleGrid().r_max)
        if tol:
            p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)

    p = sub.add_parser("predict", help="print the exact range description")
    p.add_argument("--op", required=True, help="operator DSL, e.g. rank1:m=1,n=1")
    p.add_argument("--format", choices=("text", "json"), default="text")
    add_common(p)

    p = sub.add_parser("transform", help="evaluate the Berezin transform at a point")
    p.add_argument("--op", required=True)
    p.add_argument(
        "--lambda",
        dest="lam",
        required=True,
        help="disc point; use the = form for negative values, e.g. --lambda=-0.1+0.5i",
    )
    p.add_argument("--oracle", action="store_true", help="also run the series oracle")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    add_common(p)

    p = sub.add_parser("sample", help="sample the range over a disc grid to CSV")
    p.add_argument("--op", required=True)
    add_common(p, grid=True)

    p = sub.add_parser("classify", help="classify convexity of the sampled range")
    p.add_argument("--op", required=True)
    add_common(p, grid=True, tol=True)

    p = sub.add_parser("verify", help="run the randomized oracle-agreement corpus")
    p.add_argument("--gamma-min", type=float, default=0.1)
    p.add_argument("--gamma-max", type=float, default=10.0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("figure", help="render a named preset figure to SVG (+ cloud CSV)")
    p.add_argument("--name", help="preset name; see --list-presets")
    p.add_argument("--list-presets", action="store_true")
    p.add_argument("-o", "--output", help="SVG path (default: <name>.svg)")

    p = sub.add_parser("table", help="emit a summary table as CSV")
    p.add_argument("--name", required=True, choices=("table1", "table2"))
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--a", default="0.5+0.5i", help="coefficient for the diagonal rows")
    p.add_argument("--A", default="1+1i", help="leading coefficient for table2 rows")
    p.add_argument("--B", default="-0.5+0.25i", help="offset for the Az^n+B row")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    return parser


def _write(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def _space(gamma: float) -> SpaceParams:
    return SpaceParams(gamma)


def _grid(args) -> SampleGrid:
    return SampleGrid(args.n_radial, args.n_angular, args.r_max)


# ---------------------------------------------------------------------------
# Subcommand bodies


def run_predict(args) -> int:
    spec = parse_operator_spec(args.op)
    desc = predict_range(spec, _space(args.gamma))
    if args.format == "json":
        from .report import describe_range

        _write(json.dumps(describe_range(desc), indent=2, sort_keys=True) + "\n", args.output)
    else:
        lines = [desc.describe()]
        if getattr(desc, "note", None):
            lines.append(f"note: {desc.note}")
        _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def run_transform(args) -> int:
    spec = parse_operator_spec(args.op)
    params = _space(args.gamma)
    lam = DiskPoint(parse_complex(args.lam))
    value = berezin_transform(spec, params, lam)
    lines = [f"closed form: {value.real:.12g}{value.imag:+.12g}i"]
    if args.oracle:
        oracle = berezin_via_series(spec, params, lam, args.depth)
        lines.append(f"series oracle (depth {args.depth}): {oracle.real:.12g}{oracle.imag:+.12g}i")
        lines.append(f"difference: {abs(value - oracle):.3e}")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def run_sample(args) -> int:
    spec = parse_operator_spec(args.op)
    cloud = sample_range(spec, _space(args.gamma), _grid(args))
    _write(cloud_csv(cloud), args.output)
    return EXIT_OK


def run_classify(args) -> int:
    spec = parse_operator_spec(args.op)
    params = _space(args.gamma)
    cloud = sample_range(spec, params, _grid(args))
    report = convexity_classify(cloud, args.tol)
    discrepancies = [TOLERANCE_NOTE]
    if isinstance(spec, GeometricDiagonal) and params.gamma < 1.0:
        discrepancies.append(
            "range is an unbounded ray; classification clipped to the sampling "
            f"window r <= {cloud.grid.r_max}"
        )
    _write(classify_report_json(cloud, report, discrepancies), args.output)
    return EXIT_OK


def _verify_corpus(rng: np.random.Generator, count: int, gamma_lo: float, gamma_hi: float):
    """Randomized finite-rank (spec, gamma, lambda) triples."""

    def rand_complex(scale=1.0):
        return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))

    def rand_series(max_deg=4):
        deg = int(rng.integers(0, max_deg + 1))
        return PowerSeries(tuple(rand_complex() for _ in range(deg + 1)))

    for i in range(count):
        kind = i % 6
        if kind == 0:
            spec = RankOneMonomial(int(rng.integers(0, 5)), int(rng.integers(0, 5)))
        elif kind == 1:
            spec = DiagonalMonomialSum(tuple(rand_complex() for _ in range(int(rng.integers(1, 4)))))
        elif kind == 2:
            spec = GeometricDiagonal(rand_complex(0.6))
        elif kind == 3:
            spec = ScaledProjection(int(rng.integers(0, 4)))
        elif kind == 4:
            spec = GeneralFiniteRank(
                tuple((rand_series(), rand_series()) for _ in range(int(rng.integers(1, 3))))
            )
        else:
            spec = Multiplication(Polynomial(tuple(rand_complex() for _ in range(int(rng.integers(1, 6))))))
        gamma = float(rng.uniform(gamma_lo, gamma_hi))
        r = float(rng.uniform(0.0, 0.8))
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        lam = DiskPoint(r * complex(math.cos(theta), math.sin(theta)))
        yield i, spec, SpaceParams(gamma), lam


def run_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    failures = 0
    for i, spec, params, lam in _verify_corpus(rng, args.count, args.gamma_min, args.gamma_max):
        closed = berezin_transform(spec, params, lam)
        oracle = berezin_via_series(spec, params, lam, args.depth)
        err = abs(closed - oracle)
        status = "ok" if err <= args.tol else "FAIL"
        if err > args.tol:
            failures += 1
        print(
            f"[{i:3d}] {status} err={err:.3e} gamma={params.gamma:.4f} "
            f"op={render_operator_spec(spec)}"
        )
    if failures:
        print(f"{failures} of {args.count} triples exceeded tolerance {args.tol}", file=sys.stderr)
        return EXIT_VERIFY
    print(f"all {args.count} triples within tolerance {args.tol}")
    return EXIT_OK


def run_figure(args) -> int:
    if args.list_presets:
        for name in sorted(PRESETS):
            print(f"{name}: {PRESETS[name].title}")
        return EXIT_OK
    if not args.name:
        print("figure: --name (or --list-presets) is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        preset = get_preset(args.name)
    except InvariantError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE
    cloud = sample_range(preset.spec, SpaceParams(preset.gamma), preset.grid)
    svg = render_figure_svg(cloud, preset.title)
    out = Path(args.output) if args.output else Path(f"{preset.name}.svg")
    out.write_bytes(svg)
    csv_path = out.with_suffix(".csv")
    csv_path.write_text(cloud_csv(cloud), encoding="utf-8", newline="")
    print(f"wrote {out} and {csv_path}")
    return EXIT_OK


def _csv_table(rows: list[dict], columns: tuple[str, ...]) -> str:
    import csv as _csv
    import io

    buf = io.StringIO()
    writer = _csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


TABLE_COLUMNS = ("operator", "range_shape", "closed_form_value", "grid_value", "difference", "note")


def _interval_grid_max(spec, params, n=4000) -> float:
    rs = np.linspace(0.0, 0.9999, n)
    return max(radial_profile(spec, params, float(r)) for r in rs)


def run_table(args) -> int:
    gamma = args.gamma
    params = _space(gamma)
    a = parse_complex(args.a)
    rows: list[dict] = []

    def row(op, shape, closed, grid, note=""):
        rows.append(
            {
                "operator": op,
                "range_shape": shape,
                "closed_form_value": f"{closed:.17g}",
                "grid_value": f"{grid:.17g}",
                "difference": f"{abs(closed - grid):.3e}",
                "note": note,
            }
        )

    if args.name == "table1":
        spec1 = RankOneMonomial(1, 1)
        row("rank1:m=1,n=1", "interval-top", rank_one_max(gamma, 1), _interval_grid_max(spec1, params))

        spec2 = RankOneMonomial(args.n, args.n)
        row(
            f"rank1:m={args.n},n={args.n}",
            "interval-top",
            rank_one_max(gamma, args.n),
            _interval_grid_max(spec2, params),
        )

        coeffs = [0j] * args.n
        coeffs[args.n - 1] = a
        spec3 = DiagonalMonomialSum(tuple(coeffs))
        row(
            render_operator_spec(spec3),
            "interval-top",
            abs(a) ** 2 * rank_one_max(gamma, args.n),
            _interval_grid_max(spec3, params),
        )

        spec4 = GeometricDiagonal(a)
        note = ""
        if abs(gamma - 1.0) < 1e-12:
            closed4 = abs(a) ** 2
            shape4 = "half-open-interval-sup"
            note = (
                "summary-table text claims the range is [0, inf) for weights <= 1, "
                "but the case analysis gives [0, |a|^2) at weight exactly 1; "
                "the case analysis is followed here"
            )
            grid4 = _interval_grid_max(spec4, params)
        elif gamma > 1.0:
            closed4 = abs(a) ** 2 * math.exp(
                (gamma - 1.0) * math.log(gamma - 1.0) - gamma * math.log(gamma)
            )
            shape4 = "interval-top"
            grid4 = _interval_grid_max(spec4, params)
        else:
            closed4 = math.inf
            shape4 = "ray"
            grid4 = _interval_grid_max(spec4, params)
            note = "unbounded range; grid value is the sampling-window maximum"
        row(render_operator_spec(spec4), shape4, closed4, grid4, note)

        spec5 = RankOneMonomial(args.m, args.n)
        if args.m == args.n:
            row(
                render_operator_spec(spec5),
                "interval-top",
                rank_one_max(gamma, args.n),
                _interval_grid_max(spec5, params),
            )
        else:
            row(
                render_operator_spec(spec5),
                "disc-radius",
                mixed_rank_one_radius(gamma, args.m, args.n),
                _interval_grid_max(spec5, params),
            )
        _write(_csv_table(rows, TABLE_COLUMNS), args.output)
        return EXIT_OK

    # table2: multiplication operators; gamma-independent
    A = parse_complex(args.A)
    B = parse_complex(args.B)
    grid = SampleGrid(200, 360, 0.9999)
    lams = grid.points()

    def sup_mod(symbol, center=0j):
        from .operators import evaluate_symbol_grid

        return float(np.abs(evaluate_symbol_grid(symbol, lams) - center).max())

    def poly_single(coeff, n, const=0j):
        c = [const] + [0j] * n
        c[n] = coeff
        return Polynomial(tuple(c))

    row(f"mult z^{args.n}", "open-disc-radius", 1.0, sup_mod(poly_single(1.0, args.n)),
        "sup over the sampling window approaches the radius from below")
    row(f"mult A z^{args.n}", "open-disc-radius", abs(A), sup_mod(poly_single(A, args.n)),
        "sup over the sampling window approaches the radius from below")
    row(f"mult A z^{args.n} + B", "open-disc-radius", abs(A), sup_mod(poly_single(A, args.n, B), B),
        "disc centered at B")
    from .operators import BlaschkeFactor, BlaschkeProduct

    blaschke = BlaschkeProduct(1.0, 1, (0.5, -0.3j))
    row("mult blaschke (degree 3)", "open-disc-radius", 1.0, sup_mod(blaschke),
        "sup over the sampling window approaches the radius from below")
    factor = BlaschkeFactor(A, (1 - 2j) / 3)
    row("mult bfactor (zeta=A)", "open-disc-radius", abs(A), sup_mod(factor),
        "sup over the sampling window approaches the radius from below")
    _write(_csv_table(rows, TABLE_COLUMNS), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse --help/--version or usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {
        "predict": run_predict,
        "transform": run_transform,
        "sample": run_sample,
        "classify": run_classify,
        "verify": run_verify,
        "figure": run_figure,
        "table": run_table,
    }
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
