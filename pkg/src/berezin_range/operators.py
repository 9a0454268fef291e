"""Operator classes and their Berezin transforms in closed form.

Each operator class carries the closed-form expression of its Berezin
transform B(lam) = <T k_hat_lam, k_hat_lam>.  Self-adjoint classes are
evaluated through a purely real formula so the imaginary part is exactly
zero.  A vectorized evaluation path over arrays of disc points backs the
range-sampling machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .space import DiskPoint, InvariantError, PowerSeries, SpaceParams, _require_finite

# ---------------------------------------------------------------------------
# Multiplication symbols


@dataclass(frozen=True)
class Polynomial:
    """Polynomial symbol, ascending coefficients (constant term first)."""

    coeffs: tuple

    def __post_init__(self) -> None:
        coeffs = tuple(complex(c) for c in self.coeffs)
        if not coeffs:
            raise InvariantError("polynomial symbol needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class BlaschkeFactor:
    """Scaled disc automorphism zeta*(alpha - z)/(1 - conj(alpha) z).

    zeta may lie anywhere in the plane; the image disc then has radius
    |zeta| instead of 1.
    """

    zeta: complex
    alpha: complex

    def __post_init__(self) -> None:
        zeta, alpha = complex(self.zeta), complex(self.alpha)
        _require_finite(zeta, "zeta")
        _require_finite(alpha, "alpha")
        if abs(alpha) >= 1.0:
            raise InvariantError(f"Blaschke factor zero must lie inside the disc, got |alpha| = {abs(alpha)}")
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product zeta * z^m * prod (|a|/a)(a - z)/(1 - conj(a) z).

    A zero at the origin contributes a plain factor z (folded into the z^m
    prefactor convention), so zeros may contain 0.
    """

    zeta: complex = 1.0 + 0j
    m: int = 0
    zeros: tuple = ()

    def __post_init__(self) -> None:
        zeta = complex(self.zeta)
        _require_finite(zeta, "zeta")
        if abs(abs(zeta) - 1.0) > 1e-12:
            raise InvariantError(f"Blaschke product needs |zeta| = 1, got {abs(zeta)}")
        if self.m < 0:
            raise InvariantError(f"z^m prefactor needs m >= 0, got {self.m}")
        zeros = tuple(complex(a) for a in self.zeros)
        for a in zeros:
            _require_finite(a, "zero")
            if abs(a) >= 1.0:
                raise InvariantError(f"Blaschke zeros must lie inside the disc, got |{a}| = {abs(a)}")
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "zeros", zeros)


Symbol = Polynomial | BlaschkeFactor | BlaschkeProduct


def evaluate_symbol(symbol: Symbol, z: complex) -> complex:
    """Evaluate a multiplication symbol at z, |z| <= 1 (boundary allowed)."""
    z = complex(z)
    _require_finite(z, "z")
    return complex(evaluate_symbol_grid(symbol, np.asarray(z, dtype=complex)))


def evaluate_symbol_grid(symbol: Symbol, z: np.ndarray) -> np.ndarray:
    """Vectorized symbol evaluation over an array of points."""
    z = np.asarray(z, dtype=complex)
    if isinstance(symbol, Polynomial):
        acc = np.zeros_like(z)
        for c in reversed(symbol.coeffs):
            acc = acc * z + c
        return acc
    if isinstance(symbol, BlaschkeFactor):
        return symbol.zeta * (symbol.alpha - z) / (1.0 - symbol.alpha.conjugate() * z)
    if isinstance(symbol, BlaschkeProduct):
        acc = symbol.zeta * z**symbol.m
        for a in symbol.zeros:
            if a == 0:
                acc = acc * z
            else:
                acc = acc * (abs(a) / a) * (a - z) / (1.0 - a.conjugate() * z)
        return acc
    raise InvariantError(f"unknown symbol type {type(symbol).__name__}")


# ---------------------------------------------------------------------------
# Operator specs


@dataclass(frozen=True)
class RankOneMonomial:
    """T f = <f, z^m> z^n."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0:
            raise InvariantError(f"monomial exponents must be >= 0, got m={self.m}, n={self.n}")


@dataclass(frozen=True)
class DiagonalMonomialSum:
    """T f = sum_i <f, a_i z^i> a_i z^i with i running from 1."""

    coeffs: tuple

    def __post_init__(self) -> None:
        coeffs = tuple(complex(c) for c in self.coeffs)
        if not coeffs:
            raise InvariantError("diagonal monomial sum needs at least one coefficient")
        for c in coeffs:
            _require_finite(c, "coefficient")
        object.__setattr__(self, "coeffs", coeffs)


@dataclass(frozen=True)
class GeometricDiagonal:
    """T f = sum_{n>=1} <f, a z^n> a z^n with |a| < 1."""

    a: complex

    def __post_init__(self) -> None:
        a = complex(self.a)
        _require_finite(a, "a")
        if abs(a) >= 1.0:
            raise InvariantError(f"geometric diagonal needs |a| < 1, got {abs(a)}")
        object.__setattr__(self, "a", a)


@dataclass(frozen=True)
class GeneralFiniteRank:
    """T f = sum_i <f, g_i> h_i for truncated series g_i, h_i."""

    pairs: tuple

    def __post_init__(self) -> None:
        pairs = tuple(
            (g if isinstance(g, PowerSeries) else PowerSeries(tuple(g)),
             h if isinstance(h, PowerSeries) else PowerSeries(tuple(h)))
            for g, h in self.pairs
        )
        if not pairs:
            raise InvariantError("general finite-rank operator needs at least one (g, h) pair")
        object.__setattr__(self, "pairs", pairs)

    @property
    def is_self_adjoint(self) -> bool:
        return all(g.coeffs == h.coeffs for g, h in self.pairs)

    @property
    def has_real_coeffs(self) -> bool:
        return all(g.is_real() and h.is_real() for g, h in self.pairs)


@dataclass(frozen=True)
class ScaledProjection:
    """P f = (k+1) <f, z^k> z^k, the projection onto span{z^k}."""

    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise InvariantError(f"projection degree must be >= 0, got {self.k}")


@dataclass(frozen=True)
class Multiplication:
    """M_phi f = phi * f for a multiplier symbol phi."""

    symbol: Symbol

    def __post_init__(self) -> None:
        if not isinstance(self.symbol, (Polynomial, BlaschkeFactor, BlaschkeProduct)):
            raise InvariantError(f"unsupported symbol type {type(self.symbol).__name__}")


OperatorSpec = (
    RankOneMonomial
    | DiagonalMonomialSum
    | GeometricDiagonal
    | GeneralFiniteRank
    | ScaledProjection
    | Multiplication
)


# ---------------------------------------------------------------------------
# Berezin transforms


def berezin_transform(spec: OperatorSpec, params: SpaceParams, lam: DiskPoint) -> complex:
    """Closed-form Berezin transform of the operator at a disc point."""
    return complex(berezin_transform_grid(spec, params, np.asarray(lam.value, dtype=complex)))


def berezin_transform_grid(spec: OperatorSpec, params: SpaceParams, lam: np.ndarray) -> np.ndarray:
    """Vectorized closed-form Berezin transform over an array of disc points."""
    lam = np.asarray(lam, dtype=complex)
    gamma = params.gamma
    r2 = np.abs(lam) ** 2
    weight = (1.0 - r2) ** gamma

    if isinstance(spec, RankOneMonomial):
        if spec.m == spec.n:
            return (weight * r2**spec.n).astype(complex)
        return weight * np.conj(lam) ** spec.m * lam**spec.n
    if isinstance(spec, DiagonalMonomialSum):
        acc = np.zeros_like(r2)
        for i, a in enumerate(spec.coeffs, start=1):
            acc += abs(a) ** 2 * r2**i
        return (weight * acc).astype(complex)
    if isinstance(spec, GeometricDiagonal):
        return (abs(spec.a) ** 2 * r2 * (1.0 - r2) ** (gamma - 1.0)).astype(complex)
    if isinstance(spec, GeneralFiniteRank):
        if spec.is_self_adjoint:
            acc = np.zeros_like(r2)
            for g, _ in spec.pairs:
                acc += np.abs(_polyval(g.coeffs, lam)) ** 2
            return (weight * acc).astype(complex)
        acc = np.zeros_like(lam)
        for g, h in spec.pairs:
            acc += np.conj(_polyval(g.coeffs, lam)) * _polyval(h.coeffs, lam)
        return weight * acc
    if isinstance(spec, ScaledProjection):
        return (spec.k + 1) * berezin_transform_grid(RankOneMonomial(spec.k, spec.k), params, lam)
    if isinstance(spec, Multiplication):
        return evaluate_symbol_grid(spec.symbol, lam)
    raise InvariantError(f"unknown operator spec {type(spec).__name__}")


def _polyval(coeffs, z):
    acc = np.zeros_like(np.asarray(z, dtype=complex))
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


# ---------------------------------------------------------------------------
# Radial profiles

_RADIAL_CLASSES = (RankOneMonomial, DiagonalMonomialSum, GeometricDiagonal, ScaledProjection)


def has_radial_profile(spec: OperatorSpec) -> bool:
    return isinstance(spec, _RADIAL_CLASSES)


def _check_radial(spec: OperatorSpec) -> None:
    if not has_radial_profile(spec):
        raise InvariantError(
            f"{type(spec).__name__} has no radial profile; profiles exist for "
            "RankOneMonomial, DiagonalMonomialSum, GeometricDiagonal and ScaledProjection"
        )


def radial_profile(spec: OperatorSpec, params: SpaceParams, r: float) -> float:
    """Real radial profile at |lambda| = r.

    Equals the transform itself on the radially symmetric classes, and the
    transform's modulus (1-r^2)^gamma r^(m+n) for the mixed-exponent
    rank-one operator.
    """
    _check_radial(spec)
    if not (0.0 <= r < 1.0):
        raise InvariantError(f"radius must lie in [0, 1), got {r}")
    gamma = params.gamma
    if isinstance(spec, RankOneMonomial):
        return (1.0 - r * r) ** gamma * r ** (spec.m + spec.n)
    if isinstance(spec, DiagonalMonomialSum):
        return (1.0 - r * r) ** gamma * sum(
            abs(a) ** 2 * r ** (2 * i) for i, a in enumerate(spec.coeffs, start=1)
        )
    if isinstance(spec, GeometricDiagonal):
        return abs(spec.a) ** 2 * r * r * (1.0 - r * r) ** (gamma - 1.0)
    return (spec.k + 1) * radial_profile(RankOneMonomial(spec.k, spec.k), params, r)


def radial_profile_derivative(spec: OperatorSpec, params: SpaceParams, r: float) -> float:
    """Closed-form d/dr of the radial profile; vanishes at the critical radii."""
    _check_radial(spec)
    if not (0.0 < r < 1.0):
        raise InvariantError(f"radius must lie in (0, 1), got {r}")
    gamma = params.gamma
    if isinstance(spec, RankOneMonomial):
        s = spec.m + spec.n
        return r ** (s - 1) * (1.0 - r * r) ** (gamma - 1.0) * (s - (s + 2.0 * gamma) * r * r)
    if isinstance(spec, DiagonalMonomialSum):
        return sum(
            abs(a) ** 2
            * 2.0
            * r ** (2 * i - 1)
            * (1.0 - r * r) ** (gamma - 1.0)
            * (i - (i + gamma) * r * r)
            for i, a in enumerate(spec.coeffs, start=1)
        )
    if isinstance(spec, GeometricDiagonal):
        return (
            2.0 * abs(spec.a) ** 2 * r * (1.0 - r * r) ** (gamma - 2.0) * (1.0 - gamma * r * r)
        )
    return (spec.k + 1) * radial_profile_derivative(RankOneMonomial(spec.k, spec.k), params, r)


def has_real_coefficients(spec: OperatorSpec) -> bool:
    """True when the defining data are real, forcing conjugation symmetry."""
    if isinstance(spec, (RankOneMonomial, ScaledProjection)):
        return True
    if isinstance(spec, DiagonalMonomialSum):
        return all(c.imag == 0 for c in spec.coeffs)
    if isinstance(spec, GeometricDiagonal):
        return spec.a.imag == 0
    if isinstance(spec, GeneralFiniteRank):
        return spec.has_real_coeffs
    if isinstance(spec, Multiplication):
        return isinstance(spec.symbol, Polynomial) and all(
            c.imag == 0 for c in spec.symbol.coeffs
        )
    return False
