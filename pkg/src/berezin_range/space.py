"""Primitives of the weighted Hardy space on the unit disc.

The space is determined by a single weight gamma > 0; its reproducing
kernel at a point lambda of the open disc is (1 - conj(lambda) z)^(-gamma),
taken with the principal branch of the logarithm.  Everything downstream
(operator transforms, the series oracle) is built on the kernel values,
the kernel Taylor coefficients and the induced monomial norms defined here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field


class InvariantError(ValueError):
    """A domain invariant was violated at construction or call time."""


def _require_finite(value: complex, name: str) -> None:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise InvariantError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class SpaceParams:
    """Weight selecting the space; gamma=1 is Hardy, gamma=2 is Bergman."""

    gamma: float

    def __post_init__(self) -> None:
        if not (isinstance(self.gamma, (int, float)) and math.isfinite(self.gamma)):
            raise InvariantError(f"gamma must be a finite real, got {self.gamma!r}")
        if self.gamma <= 0:
            raise InvariantError(f"gamma must be > 0, got {self.gamma}")


@dataclass(frozen=True)
class DiskPoint:
    """A point strictly inside the unit disc."""

    value: complex

    def __post_init__(self) -> None:
        value = complex(self.value)
        _require_finite(value, "disc point")
        if abs(value) >= 1.0:
            raise InvariantError(f"disc point must satisfy |lambda| < 1, got |{value}| = {abs(value)}")
        object.__setattr__(self, "value", value)

    @property
    def modulus(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series about the origin with complex coefficients.

    coeffs[k] multiplies z^k; evaluation is the finite sum over all stored
    coefficients.
    """

    coeffs: tuple = field(default=(1.0 + 0j,))

    def __post_init__(self) -> None:
        coeffs = tuple(complex(c) for c in self.coeffs)
        if not coeffs:
            raise InvariantError("a power series needs at least one coefficient")
        for k, c in enumerate(coeffs):
            _require_finite(c, f"coefficient {k}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def depth(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: complex) -> complex:
        # Horner evaluation of the truncated sum.
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def conjugate_coeffs(self) -> "PowerSeries":
        return PowerSeries(tuple(c.conjugate() for c in self.coeffs))

    def is_real(self, tol: float = 0.0) -> bool:
        return all(abs(c.imag) <= tol for c in self.coeffs)


def kernel_value(params: SpaceParams, lam: DiskPoint, z: complex) -> complex:
    """Kernel at lam evaluated at z: (1 - conj(lam) z)^(-gamma).

    Computed as exp(gamma * Log(1/(1 - conj(lam) z))) with the principal
    branch; rejects evaluation points outside the open disc.
    """
    z = complex(z)
    _require_finite(z, "z")
    if abs(z) >= 1.0:
        raise InvariantError(f"kernel evaluation needs |z| < 1, got |z| = {abs(z)}")
    w = 1.0 - lam.value.conjugate() * z
    return cmath.exp(params.gamma * cmath.log(1.0 / w))


def kernel_norm_sq(params: SpaceParams, lam: DiskPoint) -> float:
    """Squared norm of the kernel at lam: (1 - |lam|^2)^(-gamma)."""
    return (1.0 - abs(lam.value) ** 2) ** (-params.gamma)


def normalized_kernel_value(params: SpaceParams, lam: DiskPoint, z: complex) -> complex:
    """Unit-norm kernel at lam evaluated at z."""
    return kernel_value(params, lam, z) / math.sqrt(kernel_norm_sq(params, lam))


def kernel_taylor_coeff(params: SpaceParams, n: int) -> float:
    """n-th Taylor coefficient of x -> (1-x)^(-gamma).

    Uses the multiplicative recurrence c_{k+1} = c_k (gamma + k)/(k + 1)
    starting from c_0 = 1; the gamma-function form overflows past n ~ 170.
    """
    if n < 0:
        raise InvariantError(f"coefficient index must be >= 0, got {n}")
    c = 1.0
    for k in range(n):
        c *= (params.gamma + k) / (k + 1)
    return c


def monomial_norm_sq(params: SpaceParams, n: int) -> float:
    """Squared norm of z^n, the reciprocal of the n-th kernel coefficient."""
    return 1.0 / kernel_taylor_coeff(params, n)
