"""Sampled Berezin ranges: disc grids, hulls and convexity verdicts.

The range is sampled on a deterministic polar grid, its convex hull is
built with the monotone-chain construction, and convexity is decided by
rasterizing the hull's interior and measuring how far raster cells lie
from the sampled cloud.  A point cloud can never certify convexity, so the
classifier keeps an inconclusive band between the pass and fail thresholds.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from .operators import (
    BlaschkeProduct,
    OperatorSpec,
    Symbol,
    berezin_transform_grid,
    evaluate_symbol_grid,
)
from .space import InvariantError, SpaceParams

DEFAULT_N_RADIAL = 400
DEFAULT_N_ANGULAR = 720
DEFAULT_R_MAX = 0.999
DEFAULT_TOLERANCE = 5e-3
RASTER_RESOLUTION = 512


@dataclass(frozen=True)
class SampleGrid:
    """Polar grid {r_i e^(i theta_j)} plus the origin, radial-major order."""

    n_radial: int = DEFAULT_N_RADIAL
    n_angular: int = DEFAULT_N_ANGULAR
    r_max: float = DEFAULT_R_MAX

    def __post_init__(self) -> None:
        if self.n_radial < 2:
            raise InvariantError(f"n_radial must be >= 2, got {self.n_radial}")
        if self.n_angular < 4:
            raise InvariantError(f"n_angular must be >= 4, got {self.n_angular}")
        if not (0.0 < self.r_max < 1.0):
            raise InvariantError(f"r_max must lie in (0, 1), got {self.r_max}")

    def points(self) -> np.ndarray:
        """All grid points; origin first, then rings of increasing radius."""
        radii = self.r_max * np.arange(1, self.n_radial) / (self.n_radial - 1)
        thetas = 2.0 * math.pi * np.arange(self.n_angular) / self.n_angular
        rings = (radii[:, None] * np.exp(1j * thetas)[None, :]).ravel()
        return np.concatenate(([0j], rings))

    def conjugate_index(self) -> np.ndarray:
        """Index map sending each grid point to its complex conjugate."""
        idx = np.empty(1 + (self.n_radial - 1) * self.n_angular, dtype=np.intp)
        idx[0] = 0
        j = np.arange(self.n_angular)
        jc = (self.n_angular - j) % self.n_angular
        for i in range(self.n_radial - 1):
            base = 1 + i * self.n_angular
            idx[base + j] = base + jc
        return idx


@dataclass(frozen=True)
class RangeCloud:
    """Sampled Berezin range with its generating spec and grid."""

    spec: OperatorSpec
    params: SpaceParams
    grid: SampleGrid
    lambdas: np.ndarray
    values: np.ndarray

    @property
    def diameter(self) -> float:
        pts = self.values
        return float(
            math.hypot(
                pts.real.max() - pts.real.min(),
                pts.imag.max() - pts.imag.min(),
            )
        )


@dataclass(frozen=True)
class ConvexityReport:
    verdict: str  # Convex | NotConvex | Inconclusive
    deficiency: float
    tolerance: float
    hull: np.ndarray
    hull_area: float
    coverage_area: float
    witness: Optional[dict] = None
    degenerate_line: bool = False

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "deficiency": self.deficiency,
            "tolerance": self.tolerance,
            "hull_area": self.hull_area,
            "coverage_area": self.coverage_area,
            "hull": [[float(v.real), float(v.imag)] for v in self.hull],
            "degenerate_line": self.degenerate_line,
        }
        if self.witness is not None:
            out["witness"] = {
                "p": [self.witness["p"].real, self.witness["p"].imag],
                "q": [self.witness["q"].real, self.witness["q"].imag],
                "midpoint": [self.witness["midpoint"].real, self.witness["midpoint"].imag],
                "distance": self.witness["distance"],
            }
        return out


def _n_workers() -> int:
    raw = os.environ.get("BZ_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)


def sample_range(spec: OperatorSpec, params: SpaceParams, grid: SampleGrid) -> RangeCloud:
    """Evaluate the Berezin transform on every grid point.

    Evaluation chunks can run on several threads (BZ_THREADS); results are
    placed by grid index, so the cloud is deterministic either way.
    """
    lambdas = grid.points()
    workers = _n_workers()
    if workers <= 1 or len(lambdas) < 4096:
        values = berezin_transform_grid(spec, params, lambdas)
    else:
        from concurrent.futures import ThreadPoolExecutor

        chunks = np.array_split(np.arange(len(lambdas)), workers)
        values = np.empty(len(lambdas), dtype=complex)

        def work(idx):
            values[idx] = berezin_transform_grid(spec, params, lambdas[idx])

        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(work, chunks))
    return RangeCloud(spec, params, grid, lambdas, np.asarray(values, dtype=complex))


# ---------------------------------------------------------------------------
# Convex hull (monotone chain)


def convex_hull(points) -> np.ndarray:
    """Counterclockwise hull vertices; collinear interior points dropped.

    Degenerate inputs yield a segment (two vertices) or a single point.
    """
    pts = np.unique(np.asarray(points, dtype=complex))
    if len(pts) == 0:
        raise InvariantError("hull needs at least one point")
    # unique() sorts complex arrays lexicographically by (real, imag)
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all points collinear
        return np.array([pts[0], pts[-1]])
    return np.array(hull)


def polygon_area(vertices: np.ndarray) -> float:
    """Shoelace area of a counterclockwise polygon."""
    if len(vertices) < 3:
        return 0.0
    x, y = vertices.real, vertices.imag
    return 0.5 * float(np.abs(np.dot(x, np.roll(y, 1)) - np.dot(y, np.roll(x, 1))))


def _points_in_polygon(x: np.ndarray, y: np.ndarray, vertices: np.ndarray) -> np.ndarray:
    """Vectorized half-plane test; valid for convex CCW polygons."""
    inside = np.ones(x.shape, dtype=bool)
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        cross = (b.real - a.real) * (y - a.imag) - (b.imag - a.imag) * (x - a.real)
        inside &= cross >= 0.0
    return inside


# ---------------------------------------------------------------------------
# Convexity classification


def convexity_classify(
    cloud: RangeCloud, tolerance: float = DEFAULT_TOLERANCE
) -> ConvexityReport:
    """Three-tier convexity verdict from hull-raster coverage.

    The hull's bounding box is rasterized; cells inside the hull farther
    than 3*tolerance*diameter from every cloud point witness non-convexity,
    while full coverage within tolerance*diameter passes.  Clouds that
    collapse onto a line are judged by gap analysis along the line instead.
    """
    if tolerance <= 0:
        raise InvariantError(f"tolerance must be > 0, got {tolerance}")
    values = cloud.values
    hull = convex_hull(values)
    diameter = cloud.diameter

    if diameter == 0.0:
        return ConvexityReport("Convex", 0.0, tolerance, hull, 0.0, 0.0)

    hull_area = polygon_area(hull)
    # Treat clouds thinner than the tolerance band as one-dimensional.
    if _line_thickness(values) <= tolerance * diameter:
        return _classify_on_line(cloud, hull, tolerance)

    lo_x, hi_x = values.real.min(), values.real.max()
    lo_y, hi_y = values.imag.min(), values.imag.max()
    xs = np.linspace(lo_x, hi_x, RASTER_RESOLUTION)
    ys = np.linspace(lo_y, hi_y, RASTER_RESOLUTION)
    gx, gy = np.meshgrid(xs, ys)
    inside = _points_in_polygon(gx, gy, hull)

    tree = cKDTree(np.column_stack([values.real, values.imag]))
    cells = np.column_stack([gx[inside], gy[inside]])
    dists, _ = tree.query(cells, workers=-1)

    cell_area = (xs[1] - xs[0]) * (ys[1] - ys[0])
    covered = dists <= tolerance * diameter
    coverage_area = float(covered.sum() * cell_area)
    deficiency = (
        max(0.0, (hull_area - coverage_area) / hull_area) if hull_area > 0 else 0.0
    )

    worst = float(dists.max())
    if worst > 3.0 * tolerance * diameter:
        k = int(np.argmax(dists))
        c = complex(cells[k, 0], cells[k, 1])
        witness = _midpoint_witness(values, tree, c)
        return ConvexityReport(
            "NotConvex", deficiency, tolerance, hull, hull_area, coverage_area, witness
        )
    if worst <= tolerance * diameter:
        return ConvexityReport("Convex", deficiency, tolerance, hull, hull_area, coverage_area)
    return ConvexityReport(
        "Inconclusive", deficiency, tolerance, hull, hull_area, coverage_area
    )


def _line_thickness(values: np.ndarray) -> float:
    """Largest deviation of the cloud from its principal line."""
    pts = np.column_stack([values.real, values.imag])
    centered = pts - pts.mean(axis=0)
    # Principal direction from the 2x2 covariance; cheap and exact enough.
    cov = centered.T @ centered
    w, v = np.linalg.eigh(cov)
    normal = v[:, 0]  # eigenvector of the smaller eigenvalue
    return float(np.abs(centered @ normal).max())


def _classify_on_line(
    cloud: RangeCloud, hull: np.ndarray, tolerance: float
) -> ConvexityReport:
    values = cloud.values
    diameter = cloud.diameter
    pts = np.column_stack([values.real, values.imag])
    mean = pts.mean(axis=0)
    centered = pts - mean
    cov = centered.T @ centered
    _, v = np.linalg.eigh(cov)
    direction = v[:, 1]
    proj = np.sort(centered @ direction)
    gaps = np.diff(proj)
    worst = float(gaps.max()) if len(gaps) else 0.0
    deficiency = worst / diameter if diameter > 0 else 0.0
    if worst > 3.0 * tolerance * diameter:
        k = int(np.argmax(gaps))
        p_proj, q_proj = proj[k], proj[k + 1]
        p = complex(*(mean + p_proj * direction))
        q = complex(*(mean + q_proj * direction))
        witness = {"p": p, "q": q, "midpoint": 0.5 * (p + q), "distance": worst / 2.0}
        return ConvexityReport(
            "NotConvex", deficiency, tolerance, hull, 0.0, 0.0, witness, degenerate_line=True
        )
    verdict = "Convex" if worst <= tolerance * diameter else "Inconclusive"
    return ConvexityReport(
        verdict, deficiency, tolerance, hull, 0.0, 0.0, degenerate_line=True
    )


def _midpoint_witness(values: np.ndarray, tree: cKDTree, c: complex) -> dict:
    """Two cloud points whose midpoint lands far from the cloud.

    Anchors p at the cloud point nearest the uncovered cell, then scans all
    partners q for the midpoint with the largest distance back to the cloud.
    """
    _, i = tree.query([c.real, c.imag])
    p = values[i]
    mids = 0.5 * (p + values)
    d, _ = tree.query(np.column_stack([mids.real, mids.imag]), workers=-1)
    j = int(np.argmax(d))
    q = values[j]
    mid = mids[j]
    return {"p": complex(p), "q": complex(q), "midpoint": complex(mid), "distance": float(d[j])}


# ---------------------------------------------------------------------------
# Symmetry and membership checks


def symmetry_check(cloud: RangeCloud, tolerance: float = 1e-12) -> tuple[bool, float]:
    """Conjugation symmetry B(conj lam) = conj(B(lam)) over the grid."""
    idx = cloud.grid.conjugate_index()
    violation = float(np.abs(cloud.values[idx] - np.conj(cloud.values)).max())
    return violation <= tolerance, violation


def real_part_membership(
    spec: OperatorSpec,
    params: SpaceParams,
    probe: complex,
    cloud: RangeCloud,
    tolerance: float = DEFAULT_TOLERANCE,
) -> bool:
    """Whether Re B(probe) lies (approximately) in the sampled range.

    The contrapositive detects non-convexity: for conjugation-symmetric
    ranges, convexity forces every real part back into the range.
    """
    value = berezin_transform_grid(spec, params, np.asarray(probe, dtype=complex))
    target = complex(value).real
    tree = cKDTree(np.column_stack([cloud.values.real, cloud.values.imag]))
    d, _ = tree.query([target, 0.0])
    return bool(d <= tolerance * cloud.diameter)


def boundary_modulus_check(symbol: Symbol, n_samples: int = 1024) -> float:
    """Max deviation of |B| from 1 on unit-circle samples (Blaschke only)."""
    if not isinstance(symbol, BlaschkeProduct):
        raise InvariantError("boundary modulus check applies to finite Blaschke products")
    if n_samples < 8:
        raise InvariantError(f"need at least 8 circle samples, got {n_samples}")
    thetas = 2.0 * math.pi * np.arange(n_samples) / n_samples
    z = np.exp(1j * thetas)
    vals = evaluate_symbol_grid(symbol, z)
    return float(np.abs(np.abs(vals) - 1.0).max())
