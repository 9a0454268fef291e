"""Named figure presets reproducing the published range plots."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import SampleGrid
from .operators import (
    BlaschkeFactor,
    BlaschkeProduct,
    GeneralFiniteRank,
    GeometricDiagonal,
    DiagonalMonomialSum,
    Multiplication,
    OperatorSpec,
    Polynomial,
    RankOneMonomial,
    ScaledProjection,
)
from .space import InvariantError, PowerSeries


@dataclass(frozen=True)
class FigurePreset:
    name: str
    spec: OperatorSpec
    gamma: float
    title: str
    grid: SampleGrid = SampleGrid()


def _sin_series(depth: int = 21) -> PowerSeries:
    coeffs = [0j] * (depth + 1)
    for k in range(1, depth + 1, 2):
        coeffs[k] = (-1) ** ((k - 1) // 2) / math.factorial(k)
    return PowerSeries(tuple(coeffs))


def _z2() -> PowerSeries:
    return PowerSeries((0j, 0j, 1.0 + 0j))


def _presets() -> dict[str, FigurePreset]:
    out: dict[str, FigurePreset] = {}

    def add(name, spec, gamma, title, grid=SampleGrid()):
        out[name] = FigurePreset(name, spec, gamma, title, grid)

    rank11 = RankOneMonomial(1, 1)
    add("th1-g0.01", rank11, 0.01, "range of f -> <f,z> z, weight 0.01")
    add("th1-hardy", rank11, 1.0, "range of f -> <f,z> z, Hardy space")
    add("th1-bergman", rank11, 2.0, "range of f -> <f,z> z, Bergman space")

    rank33 = RankOneMonomial(3, 3)
    add("th2-hardy", rank33, 1.0, "range of f -> <f,z^3> z^3, Hardy space")
    add("th2-bergman", rank33, 2.0, "range of f -> <f,z^3> z^3, Bergman space")
    add("th2-g10", rank33, 10.0, "range of f -> <f,z^3> z^3, weight 10")

    diag = DiagonalMonomialSum((1 + 1j, 1 - 1j, 1j))
    add("th3-hardy", diag, 1.0, "diagonal monomial sum, Hardy space")
    add("th3-bergman", diag, 2.0, "diagonal monomial sum, Bergman space")
    add("th3-g4", diag, 4.0, "diagonal monomial sum, weight 4")

    geom = GeometricDiagonal(0.5 + 0.5j)
    add("th4-hardy", geom, 1.0, "geometric diagonal |a|^2 = 0.5, Hardy space")
    add("th4-bergman", geom, 2.0, "geometric diagonal |a|^2 = 0.5, Bergman space")
    add("th4-g4", geom, 4.0, "geometric diagonal |a|^2 = 0.5, weight 4")

    sin_pair = GeneralFiniteRank(((_sin_series(), _sin_series()), (_z2(), _z2())))
    add("th5-hardy", sin_pair, 1.0, "sin-z plus z^2 projector sum, Hardy space")
    add("th5-bergman", sin_pair, 2.0, "sin-z plus z^2 projector sum, Bergman space")
    add("th5-g5", sin_pair, 5.0, "sin-z plus z^2 projector sum, weight 5")

    ex31 = GeneralFiniteRank(((PowerSeries((1, -1)), PowerSeries((1, 0, -1))),))
    for g in (0.01, 0.1, 0.3, 0.5, 1.0, 2.0, 10.0):
        add(f"ex31-g{g:g}", ex31, g, f"range of f -> <f,1-z> (1-z^2), weight {g:g}")

    proj = ScaledProjection(2)
    add("ex32-g0.5", proj, 0.5, "scaled projection onto z^2, weight 0.5")
    add("ex32-hardy", proj, 1.0, "scaled projection onto z^2, Hardy space")
    add("ex32-bergman", proj, 2.0, "scaled projection onto z^2, Bergman space")

    rank23 = RankOneMonomial(2, 3)
    add("th7-g0.5", rank23, 0.5, "range of f -> <f,z^2> z^3, weight 0.5")
    add("th7-hardy", rank23, 1.0, "range of f -> <f,z^2> z^3, Hardy space")
    add("th7-bergman", rank23, 2.0, "range of f -> <f,z^2> z^3, Bergman space")
    add("th7-g10", rank23, 10.0, "range of f -> <f,z^2> z^3, weight 10")

    add(
        "mult-poly-cubic",
        Multiplication(Polynomial((0, 0, 0, 1 - 1j))),
        1.0,
        "multiplication by (1-i) z^3",
    )
    add(
        "mult-poly-quartic",
        Multiplication(Polynomial((2 + 1j, 0, 0, 0, 3j))),
        1.0,
        "multiplication by 3i z^4 + 2 + i",
    )
    add(
        "mult-poly-notch",
        Multiplication(Polynomial((-2j, 5, 0, 0, 1))),
        1.0,
        "multiplication by z^4 + 5z - 2i",
    )
    add(
        "mult-poly-z14",
        Multiplication(Polynomial((3, -2, 5) + (0,) * 11 + (1,))),
        1.0,
        "multiplication by z^14 + 5z^2 - 2z + 3",
    )

    alpha = (1 - 2j) / 3
    add(
        "bfactor-zeta1",
        Multiplication(BlaschkeFactor((1 + 1j) / math.sqrt(2), alpha)),
        1.0,
        "Blaschke factor, |zeta| = 1",
    )
    add(
        "bfactor-zeta0.5",
        Multiplication(BlaschkeFactor(0.5j, alpha)),
        1.0,
        "Blaschke factor, |zeta| = 0.5",
    )
    add(
        "bfactor-zeta2",
        Multiplication(BlaschkeFactor(math.sqrt(2) * (1 + 1j), alpha)),
        1.0,
        "Blaschke factor, |zeta| = 2",
    )
    add(
        "blaschke-deg3",
        Multiplication(BlaschkeProduct(1.0, 1, (0.5, -0.3j))),
        1.0,
        "finite Blaschke product of degree 3",
    )
    return out


PRESETS = _presets()


def get_preset(name: str) -> FigurePreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise InvariantError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
