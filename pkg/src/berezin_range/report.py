"""Report emission: delimited cloud output, JSON reports and SVG figures.

Figures are rendered with matplotlib to SVG with a pinned hash salt and no
timestamp metadata, so repeated runs of the same preset are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .closed_form import RangeDescription, predict_range  # noqa: E402
from .dsl import render_operator_spec  # noqa: E402
from .geometry import ConvexityReport, RangeCloud, convex_hull  # noqa: E402

SCHEMA_VERSION = 1
CSV_COLUMNS = ("lambda_re", "lambda_im", "r", "theta", "value_re", "value_im")
SVG_HASHSALT = "berezin-range"


def cloud_csv(cloud: RangeCloud) -> str:
    """Cloud as CSV text (UTF-8, LF, fixed header)."""
    import cmath

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for lam, val in zip(cloud.lambdas, cloud.values):
        r, theta = abs(lam), cmath.phase(lam)
        writer.writerow(
            [
                f"{lam.real:.17g}",
                f"{lam.imag:.17g}",
                f"{r:.17g}",
                f"{theta:.17g}",
                f"{val.real:.17g}",
                f"{val.imag:.17g}",
            ]
        )
    return buf.getvalue()


def describe_range(desc: RangeDescription) -> dict:
    out = {"shape": type(desc).__name__, "description": desc.describe()}
    for attr in ("lo", "hi", "hi_excluded", "radius", "open_side"):
        if hasattr(desc, attr):
            out[attr] = getattr(desc, attr)
    if hasattr(desc, "center"):
        out["center"] = [desc.center.real, desc.center.imag]
    if getattr(desc, "note", None):
        out["note"] = desc.note
    return out


def classify_report_json(
    cloud: RangeCloud,
    report: ConvexityReport,
    discrepancies: Optional[list[str]] = None,
) -> str:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "spec": render_operator_spec(cloud.spec),
        "gamma": cloud.params.gamma,
        "grid": {
            "n_radial": cloud.grid.n_radial,
            "n_angular": cloud.grid.n_angular,
            "r_max": cloud.grid.r_max,
        },
        "prediction": describe_range(predict_range(cloud.spec, cloud.params)),
        "verdict": report.verdict,
        "deficiency": report.deficiency,
        "tolerance": report.tolerance,
        "discrepancies": discrepancies or [],
    }
    if report.witness is not None:
        payload["witness"] = report.to_dict()["witness"]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_figure_svg(cloud: RangeCloud, title: str) -> bytes:
    """Scatter of the sampled range colored by |lambda| with its hull."""
    with plt.rc_context({"svg.hashsalt": SVG_HASHSALT}):
        fig, ax = plt.subplots(figsize=(6.0, 6.0))
        try:
            ax.scatter(
                cloud.values.real,
                cloud.values.imag,
                c=abs(cloud.lambdas),
                cmap="plasma",
                s=1.0,
                linewidths=0,
                rasterized=False,
            )
            hull = convex_hull(cloud.values)
            if len(hull) >= 2:
                closed = list(hull) + [hull[0]]
                ax.plot(
                    [v.real for v in closed],
                    [v.imag for v in closed],
                    color="black",
                    linewidth=0.8,
                )
            ax.set_aspect("equal", adjustable="datalim")
            ax.set_xlabel("Re")
            ax.set_ylabel("Im")
            ax.set_title(title)
            buf = io.BytesIO()
            fig.savefig(buf, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    return buf.getvalue()
