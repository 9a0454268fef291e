"""Exact range predictions for each operator class.

Every supported operator gets a range description (interval, disc, ray or
generic image set) with an exact membership predicate, plus the critical
radius and extremal value where an interior maximum exists.  These are the
ground truth the geometric sampler is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .operators import (
    BlaschkeFactor,
    BlaschkeProduct,
    DiagonalMonomialSum,
    GeneralFiniteRank,
    GeometricDiagonal,
    Multiplication,
    OperatorSpec,
    Polynomial,
    RankOneMonomial,
    ScaledProjection,
    Symbol,
    berezin_transform_grid,
    radial_profile,
)
from .space import InvariantError, SpaceParams, monomial_norm_sq

import numpy as np

# ---------------------------------------------------------------------------
# Range descriptions


@dataclass(frozen=True)
class ClosedInterval:
    lo: float
    hi: float
    note: Optional[str] = None

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise InvariantError(f"interval needs lo <= hi, got [{self.lo}, {self.hi}]")

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return abs(z.imag) <= slack and self.lo - slack <= z.real <= self.hi + slack

    def describe(self) -> str:
        return f"ClosedInterval [{self.lo:.12g}, {self.hi:.12g}]"


@dataclass(frozen=True)
class HalfOpenInterval:
    """Interval with one excluded endpoint; by default the upper one."""

    lo: float
    hi_excluded: float
    open_side: str = "hi"
    note: Optional[str] = None

    def __post_init__(self) -> None:
        if self.lo > self.hi_excluded:
            raise InvariantError(f"interval needs lo <= hi, got [{self.lo}, {self.hi_excluded})")
        if self.open_side not in ("lo", "hi"):
            raise InvariantError(f"open_side must be 'lo' or 'hi', got {self.open_side!r}")

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        if abs(z.imag) > slack:
            return False
        if self.open_side == "hi":
            return self.lo - slack <= z.real < self.hi_excluded + slack
        return self.lo < z.real + slack and z.real <= self.hi_excluded + slack

    def describe(self) -> str:
        if self.open_side == "hi":
            return f"HalfOpenInterval [{self.lo:.12g}, {self.hi_excluded:.12g})"
        return f"HalfOpenInterval ({self.lo:.12g}, {self.hi_excluded:.12g}]"


@dataclass(frozen=True)
class Ray:
    """Unbounded interval [lo, infinity) on the real axis."""

    lo: float
    note: Optional[str] = None

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return abs(z.imag) <= slack and z.real >= self.lo - slack

    def describe(self) -> str:
        return f"Ray [{self.lo:.12g}, inf)"


@dataclass(frozen=True)
class ClosedDisc:
    center: complex
    radius: float
    note: Optional[str] = None

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise InvariantError(f"radius must be >= 0, got {self.radius}")

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return abs(z - self.center) <= self.radius + slack

    def describe(self) -> str:
        return f"ClosedDisc center {self.center:.12g}, radius {self.radius:.12g}"


@dataclass(frozen=True)
class OpenDisc:
    center: complex
    radius: float
    note: Optional[str] = None

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise InvariantError(f"radius must be >= 0, got {self.radius}")

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return abs(z - self.center) < self.radius + slack

    def describe(self) -> str:
        return f"OpenDisc center {self.center:.12g}, radius {self.radius:.12g}"


@dataclass(frozen=True)
class ImageSet:
    """Range is the image of the disc under the symbol; no simpler form."""

    symbol: Symbol
    note: Optional[str] = None

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        # Membership is only decidable by sampling; the geometry module
        # compares against the sampled cloud instead.
        return True

    def describe(self) -> str:
        return f"ImageSet of {type(self.symbol).__name__} symbol"


RangeDescription = ClosedInterval | HalfOpenInterval | Ray | ClosedDisc | OpenDisc | ImageSet


@dataclass(frozen=True)
class CriticalPoint:
    r_squared: float
    value: float


# ---------------------------------------------------------------------------
# Scalar maximum search

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def scalar_max_search(
    profile: Callable[[float], float],
    lo: float = 0.0,
    hi: float = 1.0,
    n_scan: int = 1024,
    tol: float = 1e-13,
) -> tuple[float, float]:
    """Locate the maximum of a continuous profile on (lo, hi).

    Seeds with a uniform scan (profiles here are smooth but not guaranteed
    unimodal), then refines the best bracket by golden-section search.
    Returns (argmax, max).
    """
    xs = np.linspace(lo, hi, n_scan + 1)[1:-1]
    vals = np.array([profile(x) for x in xs])
    best = int(np.argmax(vals))
    a = xs[best - 1] if best > 0 else lo
    b = xs[best + 1] if best < len(xs) - 1 else hi

    # Golden-section refinement of the bracketing interval.
    h = b - a
    c = b - _INV_PHI * h
    d = a + _INV_PHI * h
    fc, fd = profile(c), profile(d)
    while h > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INV_PHI * h
            fc = profile(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = profile(d)
    x = 0.5 * (a + b)
    return x, profile(x)


# ---------------------------------------------------------------------------
# Predictions


def rank_one_max(gamma: float, n: int) -> float:
    """Top of the range for <f, z^n> z^n: gamma^gamma n^n / (n+gamma)^(n+gamma)."""
    if n == 0:
        return 1.0
    # Log-space form; gamma**gamma overflows for gamma beyond ~143.
    return math.exp(
        gamma * math.log(gamma) + n * math.log(n) - (n + gamma) * math.log(n + gamma)
    )


def mixed_rank_one_radius(gamma: float, m: int, n: int) -> float:
    """Disc radius for <f, z^m> z^n with m != n."""
    s = m + n
    return (2.0 * gamma / (s + 2.0 * gamma)) ** gamma * (s / (s + 2.0 * gamma)) ** (s / 2.0)


def predict_range(spec: OperatorSpec, params: SpaceParams) -> RangeDescription:
    """Exact (or, where necessary, numerically estimated) Berezin range."""
    gamma = params.gamma

    if isinstance(spec, RankOneMonomial):
        if spec.m == spec.n:
            note = None
            if spec.n == 0:
                note = (
                    "m=n=0 extends beyond the rank-one theorem hypotheses; "
                    "the transform is (1-|lambda|^2)^gamma with range (0, 1]"
                )
                return HalfOpenInterval(0.0, 1.0, open_side="lo", note=note)
            return ClosedInterval(0.0, rank_one_max(gamma, spec.n))
        note = None
        if spec.m == 0 or spec.n == 0:
            note = "zero exponent extends beyond the theorem hypotheses (m, n >= 1)"
        return ClosedDisc(0j, mixed_rank_one_radius(gamma, spec.m, spec.n), note=note)

    if isinstance(spec, DiagonalMonomialSum):
        _, top = scalar_max_search(lambda r: radial_profile(spec, params, r))
        return ClosedInterval(0.0, top, note="upper endpoint located numerically")

    if isinstance(spec, GeometricDiagonal):
        a2 = abs(spec.a) ** 2
        if abs(gamma - 1.0) < 1e-12:
            return HalfOpenInterval(0.0, a2)
        if gamma > 1.0:
            top = a2 * math.exp(
                (gamma - 1.0) * math.log(gamma - 1.0) - gamma * math.log(gamma)
            )
            return ClosedInterval(0.0, top)
        return Ray(0.0)

    if isinstance(spec, ScaledProjection):
        if spec.k == 0:
            return HalfOpenInterval(
                0.0,
                1.0,
                open_side="lo",
                note=(
                    "k=0 extends beyond the worked projection example; "
                    "0 is approached but never attained, 1 is attained at the origin"
                ),
            )
        return ClosedInterval(0.0, (spec.k + 1) * rank_one_max(gamma, spec.k))

    if isinstance(spec, GeneralFiniteRank):
        if spec.is_self_adjoint:
            lo, hi = _self_adjoint_interval_estimate(spec, params)
            return ClosedInterval(lo, hi, note="endpoint attainment estimated by sampling")
        return ImageSet(
            Polynomial((0j,)),
            note="no closed range form for mixed finite-rank pairs; verified by sampling",
        )

    if isinstance(spec, Multiplication):
        return _predict_multiplication(spec.symbol)

    raise InvariantError(f"unknown operator spec {type(spec).__name__}")


def _predict_multiplication(symbol: Symbol) -> RangeDescription:
    if isinstance(symbol, BlaschkeProduct):
        return OpenDisc(0j, 1.0)
    if isinstance(symbol, BlaschkeFactor):
        return OpenDisc(0j, abs(symbol.zeta))
    # Polynomial: look for the A z^n + B shape whose image is an open disc.
    coeffs = symbol.coeffs
    nonzero = [k for k, c in enumerate(coeffs) if k >= 1 and c != 0]
    if len(nonzero) == 1:
        n = nonzero[0]
        return OpenDisc(coeffs[0], abs(coeffs[n]))
    if not nonzero:
        # Constant symbol: degenerate disc of radius 0.
        return ClosedDisc(coeffs[0], 0.0, note="constant symbol")
    return ImageSet(symbol)


def _self_adjoint_interval_estimate(
    spec: GeneralFiniteRank, params: SpaceParams, n_radial: int = 256, n_angular: int = 256
) -> tuple[float, float]:
    # The transform is (1-|lam|^2)^gamma * sum |g_i(lam)|^2, real but not
    # radial; estimate its extrema on a polar grid, refining radially.
    rs = np.linspace(0.0, 0.9995, n_radial)
    thetas = np.linspace(0.0, 2.0 * math.pi, n_angular, endpoint=False)
    lam = rs[:, None] * np.exp(1j * thetas)[None, :]
    vals = berezin_transform_grid(spec, params, lam).real
    return float(vals.min()), float(vals.max())


# ---------------------------------------------------------------------------
# Critical radii


def critical_radius(spec: OperatorSpec, params: SpaceParams) -> CriticalPoint:
    """Interior maximizer (r^2, profile value) of the radial profile."""
    gamma = params.gamma
    if isinstance(spec, RankOneMonomial):
        s = spec.m + spec.n
        if s == 0:
            raise InvariantError("m = n = 0 has its maximum at the origin, not an interior radius")
        r2 = s / (s + 2.0 * gamma)
        return CriticalPoint(r2, radial_profile(spec, params, math.sqrt(r2)))
    if isinstance(spec, ScaledProjection):
        if spec.k == 0:
            raise InvariantError("k = 0 has its maximum at the origin, not an interior radius")
        r2 = spec.k / (spec.k + gamma)
        return CriticalPoint(r2, radial_profile(spec, params, math.sqrt(r2)))
    if isinstance(spec, GeometricDiagonal):
        if gamma <= 1.0:
            raise InvariantError(
                "geometric diagonal has an interior maximum only for gamma > 1; "
                "for gamma = 1 the supremum |a|^2 is approached at the boundary, "
                "for gamma < 1 the profile is unbounded"
            )
        r2 = 1.0 / gamma
        return CriticalPoint(r2, radial_profile(spec, params, math.sqrt(r2)))
    if isinstance(spec, DiagonalMonomialSum):
        r, value = scalar_max_search(lambda x: radial_profile(spec, params, x))
        return CriticalPoint(r * r, value)
    raise InvariantError(f"{type(spec).__name__} has no radial critical point")


# ---------------------------------------------------------------------------
# Norm bounds and the gamma-limit curve


def rank_one_norm_bound(spec: OperatorSpec, params: SpaceParams) -> float:
    """Operator-norm upper bound on the Berezin radius for finite-rank specs."""
    if isinstance(spec, RankOneMonomial):
        return math.sqrt(monomial_norm_sq(params, spec.m) * monomial_norm_sq(params, spec.n))
    if isinstance(spec, GeneralFiniteRank):
        total = 0.0
        for g, h in spec.pairs:
            ng = math.sqrt(
                sum(abs(c) ** 2 * monomial_norm_sq(params, k) for k, c in enumerate(g.coeffs))
            )
            nh = math.sqrt(
                sum(abs(c) ** 2 * monomial_norm_sq(params, k) for k, c in enumerate(h.coeffs))
            )
            total += ng * nh
        return total
    raise InvariantError(
        f"norm bound is defined for rank-one and general finite-rank specs, not {type(spec).__name__}"
    )


def gamma_limit_curve(n: int, gammas) -> list[tuple[float, float]]:
    """Extremal value gamma^gamma n^n/(n+gamma)^(n+gamma) along a gamma sweep."""
    if n < 1:
        raise InvariantError(f"monomial degree must be >= 1, got {n}")
    gammas = list(gammas)
    if any(g <= 0 for g in gammas):
        raise InvariantError("gammas must be positive")
    if gammas != sorted(gammas):
        raise InvariantError("gammas must be sorted ascending")
    return [(g, rank_one_max(g, n)) for g in gammas]
