"""Independent verification path built on truncated kernel expansions.

Everything here goes back to first principles: the kernel is expanded as a
finite Taylor section, inner products are computed coefficient-wise against
the monomial norms, and the Berezin transform is assembled literally as
<T k_hat, k_hat>.  The closed forms from the operator module are never
consulted, so agreement between the two paths is a genuine cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .operators import (
    DiagonalMonomialSum,
    GeneralFiniteRank,
    GeometricDiagonal,
    Multiplication,
    OperatorSpec,
    Polynomial,
    RankOneMonomial,
    ScaledProjection,
)
from .space import (
    DiskPoint,
    InvariantError,
    PowerSeries,
    SpaceParams,
    kernel_norm_sq,
)

DEFAULT_DEPTH = 200


def _taylor_coeffs(params: SpaceParams, depth: int) -> np.ndarray:
    """Kernel Taylor coefficients c_0..c_depth via the stable recurrence."""
    c = np.empty(depth + 1)
    c[0] = 1.0
    for k in range(depth):
        c[k + 1] = c[k] * (params.gamma + k) / (k + 1)
    return c


def monomial_norms_sq(params: SpaceParams, depth: int) -> np.ndarray:
    """Squared monomial norms ||z^n||^2 for n = 0..depth."""
    return 1.0 / _taylor_coeffs(params, depth)


@dataclass(frozen=True)
class TruncatedKernel:
    """Finite section of the kernel expansion at a disc point."""

    lam: DiskPoint
    series: PowerSeries

    @property
    def depth(self) -> int:
        return self.series.depth


def truncated_kernel(params: SpaceParams, lam: DiskPoint, depth: int) -> TruncatedKernel:
    if depth < 0:
        raise InvariantError(f"depth must be >= 0, got {depth}")
    c = _taylor_coeffs(params, depth)
    lam_conj_pows = np.conj(lam.value) ** np.arange(depth + 1)
    return TruncatedKernel(lam, PowerSeries(tuple(c * lam_conj_pows)))


def inner_product_series(params: SpaceParams, f: PowerSeries, g: PowerSeries) -> complex:
    """<f, g> = sum f_n conj(g_n) ||z^n||^2, over the shared truncation."""
    depth = min(f.depth, g.depth)
    norms = monomial_norms_sq(params, depth)
    fa = np.asarray(f.coeffs[: depth + 1])
    ga = np.asarray(g.coeffs[: depth + 1])
    return complex(np.sum(fa * np.conj(ga) * norms))


def tail_bound(params: SpaceParams, r: float, depth: int) -> float:
    """Ratio-test bound on the dropped kernel-expansion tail at radius r.

    Past index N the term ratio (gamma+n)/(n+1) * r is below some q < 1,
    so the tail is dominated by a geometric series from c_{N+1} r^{N+1}.
    """
    if not (0.0 <= r < 1.0):
        raise InvariantError(f"radius must lie in [0, 1), got {r}")
    if r == 0.0:
        return 0.0
    gamma = params.gamma
    q = max((gamma + depth + 1) / (depth + 2) * r, r)
    if q >= 1.0:
        return math.inf
    # log-space first term; c_{N+1} r^{N+1} underflows harmlessly otherwise
    log_c = 0.0
    for k in range(depth + 1):
        log_c += math.log((gamma + k) / (k + 1))
    first = math.exp(log_c + (depth + 1) * math.log(r))
    return first / (1.0 - q)


def _finite_rank_pairs(spec: OperatorSpec, depth: int):
    """Reduce a finite-rank spec to explicit (g_i, h_i) polynomial pairs."""
    if isinstance(spec, RankOneMonomial):
        g = [0j] * (spec.m + 1)
        g[spec.m] = 1.0
        h = [0j] * (spec.n + 1)
        h[spec.n] = 1.0
        return [(PowerSeries(tuple(g)), PowerSeries(tuple(h)))]
    if isinstance(spec, DiagonalMonomialSum):
        pairs = []
        for i, a in enumerate(spec.coeffs, start=1):
            v = [0j] * (i + 1)
            v[i] = a
            s = PowerSeries(tuple(v))
            pairs.append((s, s))
        return pairs
    if isinstance(spec, ScaledProjection):
        v = [0j] * (spec.k + 1)
        v[spec.k] = 1.0
        g = PowerSeries(tuple(v))
        h = PowerSeries(tuple(c * (spec.k + 1) for c in v))
        return [(g, h)]
    if isinstance(spec, GeometricDiagonal):
        # Infinite diagonal sum truncated at the working depth.
        pairs = []
        for i in range(1, depth + 1):
            v = [0j] * (i + 1)
            v[i] = spec.a
            s = PowerSeries(tuple(v))
            pairs.append((s, s))
        return pairs
    if isinstance(spec, GeneralFiniteRank):
        return list(spec.pairs)
    return None


def berezin_via_series(
    spec: OperatorSpec, params: SpaceParams, lam: DiskPoint, depth: int = DEFAULT_DEPTH
) -> complex:
    """Berezin transform computed literally from the truncated kernel.

    Applies the operator to the kernel section, takes the series inner
    product against the section, and normalizes by the exact kernel norm.
    Blaschke symbols are rejected here (they are not polynomial); the
    geometry module validates their range theorem directly instead.
    """
    pairs = _finite_rank_pairs(spec, depth)
    if pairs is not None:
        max_deg = max(max(g.depth, h.depth) for g, h in pairs)
        if not isinstance(spec, GeometricDiagonal) and depth < max_deg:
            raise InvariantError(
                f"depth {depth} is below the operator's top monomial degree {max_deg}"
            )
        kernel = truncated_kernel(params, lam, depth)
        applied = np.zeros(depth + 1, dtype=complex)
        for g, h in pairs:
            weight = inner_product_series(params, kernel.series, g)
            ha = np.asarray(h.coeffs[: depth + 1])
            applied[: len(ha)] += weight * ha
        num = inner_product_series(params, PowerSeries(tuple(applied)), kernel.series)
        return num / kernel_norm_sq(params, lam)

    if isinstance(spec, Multiplication):
        if not isinstance(spec.symbol, Polynomial):
            raise InvariantError(
                "series oracle covers polynomial symbols only; Blaschke symbols "
                "are validated geometrically"
            )
        coeffs = np.asarray(spec.symbol.coeffs)
        if depth < len(coeffs) - 1:
            raise InvariantError(
                f"depth {depth} is below the symbol degree {len(coeffs) - 1}"
            )
        kernel = truncated_kernel(params, lam, depth)
        ka = np.asarray(kernel.series.coeffs)
        product = np.convolve(coeffs, ka)[: depth + 1]
        num = inner_product_series(params, PowerSeries(tuple(product)), kernel.series)
        return num / kernel_norm_sq(params, lam)

    raise InvariantError(f"unknown operator spec {type(spec).__name__}")
