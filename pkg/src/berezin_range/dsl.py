"""Textual operator-spec language used by the CLI.

Grammar (complex literals use `a+bi`, e.g. `1+1i`, `-0.5i`, `2`):

    rank1:m=<int>,n=<int>
    diag:a=[<complex>,...]
    geom:a=<complex>
    pairs:[(g=[c0,c1,...];h=[c0,c1,...]),...]
    proj:k=<int>
    mult:poly=[c0,c1,...]
    mult:bfactor:zeta=<complex>;alpha=<complex>
    mult:blaschke:zeta=<complex>;m=<int>;zeros=[<complex>,...]

Polynomial and series coefficients are ascending (constant term first).
"""

from __future__ import annotations

import re

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
)
from .space import PowerSeries

VALID_TAGS = ("rank1", "diag", "geom", "pairs", "proj", "mult")
VALID_MULT_KINDS = ("poly", "bfactor", "blaschke")

_COMPLEX_RE = re.compile(r"^[0-9eE+.\-i]+$")


class ParseError(ValueError):
    """Malformed operator-spec text; carries the offending position."""

    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        super().__init__(f"at position {pos}: {message} (in {text!r})")


def parse_complex(token: str, text: str = "", pos: int = 0) -> complex:
    """Parse an `a+bi` literal; both parts optional, `i` marks the imaginary."""
    token = token.strip()
    if not token or not _COMPLEX_RE.match(token):
        raise ParseError(f"malformed complex literal {token!r}", text or token, pos)
    try:
        return complex(token.replace("i", "j"))
    except ValueError:
        raise ParseError(f"malformed complex literal {token!r}", text or token, pos) from None


def _parse_int(token: str, text: str, pos: int) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise ParseError(f"malformed integer {token.strip()!r}", text, pos) from None


def _parse_kv(body: str, text: str, pos: int, keys: tuple[str, ...], sep: str = ",") -> dict:
    """Parse `k1=v1<sep>k2=v2...` with the expected key names in order.

    Splits at most len(keys)-1 times so the final value may itself contain
    the separator (bracketed coefficient lists).
    """
    parts = body.split(sep, len(keys) - 1)
    if len(parts) != len(keys):
        raise ParseError(
            f"expected fields {'/'.join(keys)} separated by {sep!r}", text, pos
        )
    out = {}
    offset = pos
    for part, key in zip(parts, keys):
        if "=" not in part:
            raise ParseError(f"expected {key}=<value>", text, offset)
        name, value = part.split("=", 1)
        if name.strip() != key:
            raise ParseError(f"expected field {key!r}, got {name.strip()!r}", text, offset)
        out[key] = (value, offset + part.index("=") + 1)
        offset += len(part) + len(sep)
    return out


def _parse_complex_list(body: str, text: str, pos: int) -> list[complex]:
    body = body.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("expected a bracketed list [..]", text, pos)
    inner = body[1:-1].strip()
    if not inner:
        return []
    values = []
    offset = pos + 1
    for token in inner.split(","):
        values.append(parse_complex(token, text, offset))
        offset += len(token) + 1
    return values


def parse_operator_spec(text: str) -> OperatorSpec:
    """Parse the operator DSL; raises ParseError with a position on failure."""
    stripped = text.strip()
    if ":" not in stripped:
        raise ParseError(
            f"expected <tag>:<body> with tag one of {', '.join(VALID_TAGS)}", text, 0
        )
    tag, body = stripped.split(":", 1)
    body_pos = text.index(":") + 1
    if tag not in VALID_TAGS:
        raise ParseError(
            f"unknown tag {tag!r}; valid tags are {', '.join(VALID_TAGS)}", text, 0
        )

    if tag == "rank1":
        kv = _parse_kv(body, text, body_pos, ("m", "n"))
        return RankOneMonomial(
            _parse_int(*_at(kv, "m", text)), _parse_int(*_at(kv, "n", text))
        )
    if tag == "diag":
        kv = _parse_kv(body, text, body_pos, ("a",))
        value, pos = kv["a"]
        return DiagonalMonomialSum(tuple(_parse_complex_list(value, text, pos)))
    if tag == "geom":
        kv = _parse_kv(body, text, body_pos, ("a",))
        value, pos = kv["a"]
        return GeometricDiagonal(parse_complex(value, text, pos))
    if tag == "proj":
        kv = _parse_kv(body, text, body_pos, ("k",))
        return ScaledProjection(_parse_int(*_at(kv, "k", text)))
    if tag == "pairs":
        return GeneralFiniteRank(tuple(_parse_pairs(body, text, body_pos)))
    # mult
    if body.startswith("poly="):
        coeffs = _parse_complex_list(body[len("poly="):], text, body_pos + len("poly="))
        return Multiplication(Polynomial(tuple(coeffs)))
    if body.startswith("bfactor:"):
        inner = body[len("bfactor:"):]
        kv = _parse_kv(inner, text, body_pos + len("bfactor:"), ("zeta", "alpha"), sep=";")
        return Multiplication(
            BlaschkeFactor(
                parse_complex(*_at(kv, "zeta", text)), parse_complex(*_at(kv, "alpha", text))
            )
        )
    if body.startswith("blaschke:"):
        inner = body[len("blaschke:"):]
        kv = _parse_kv(inner, text, body_pos + len("blaschke:"), ("zeta", "m", "zeros"), sep=";")
        zeros_value, zeros_pos = kv["zeros"]
        return Multiplication(
            BlaschkeProduct(
                parse_complex(*_at(kv, "zeta", text)),
                _parse_int(*_at(kv, "m", text)),
                tuple(_parse_complex_list(zeros_value, text, zeros_pos)),
            )
        )
    raise ParseError(
        f"mult body must start with one of {', '.join(VALID_MULT_KINDS)}", text, body_pos
    )


def _at(kv: dict, key: str, text: str):
    value, pos = kv[key]
    return value, text, pos


def _parse_pairs(body: str, text: str, pos: int) -> list[tuple[PowerSeries, PowerSeries]]:
    body = body.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("expected a bracketed pair list [(..),..]", text, pos)
    inner = body[1:-1]
    pairs = []
    i = 0
    while i < len(inner):
        while i < len(inner) and inner[i] in ", ":
            i += 1
        if i >= len(inner):
            break
        if inner[i] != "(":
            raise ParseError("expected '(' opening a (g=..;h=..) pair", text, pos + 1 + i)
        close = inner.find(")", i)
        if close < 0:
            raise ParseError("unclosed pair: missing ')'", text, pos + 1 + i)
        chunk = inner[i + 1 : close]
        kv = _parse_kv(chunk, text, pos + 2 + i, ("g", "h"), sep=";")
        g_value, g_pos = kv["g"]
        h_value, h_pos = kv["h"]
        pairs.append(
            (
                PowerSeries(tuple(_parse_complex_list(g_value, text, g_pos))),
                PowerSeries(tuple(_parse_complex_list(h_value, text, h_pos))),
            )
        )
        i = close + 1
    if not pairs:
        raise ParseError("pair list must be non-empty", text, pos)
    return pairs


# ---------------------------------------------------------------------------
# Rendering (the inverse pretty-printer)


def format_complex(z: complex) -> str:
    z = complex(z)

    def num(x: float) -> str:
        return repr(int(x)) if float(x).is_integer() and abs(x) < 1e16 else repr(x)

    if z.imag == 0:
        return num(z.real)
    imag = f"{num(z.imag)}i" if z.imag < 0 else f"+{num(z.imag)}i"
    if z.real == 0:
        return imag.lstrip("+")
    return f"{num(z.real)}{imag}"


def _fmt_list(values) -> str:
    return "[" + ",".join(format_complex(v) for v in values) + "]"


def render_operator_spec(spec: OperatorSpec) -> str:
    """Render a spec back to DSL text; parse(render(spec)) == spec."""
    if isinstance(spec, RankOneMonomial):
        return f"rank1:m={spec.m},n={spec.n}"
    if isinstance(spec, DiagonalMonomialSum):
        return f"diag:a={_fmt_list(spec.coeffs)}"
    if isinstance(spec, GeometricDiagonal):
        return f"geom:a={format_complex(spec.a)}"
    if isinstance(spec, ScaledProjection):
        return f"proj:k={spec.k}"
    if isinstance(spec, GeneralFiniteRank):
        inner = ",".join(
            f"(g={_fmt_list(g.coeffs)};h={_fmt_list(h.coeffs)})" for g, h in spec.pairs
        )
        return f"pairs:[{inner}]"
    if isinstance(spec, Multiplication):
        sym = spec.symbol
        if isinstance(sym, Polynomial):
            return f"mult:poly={_fmt_list(sym.coeffs)}"
        if isinstance(sym, BlaschkeFactor):
            return f"mult:bfactor:zeta={format_complex(sym.zeta)};alpha={format_complex(sym.alpha)}"
        return (
            f"mult:blaschke:zeta={format_complex(sym.zeta)};m={sym.m}"
            f";zeros={_fmt_list(sym.zeros)}"
        )
    raise ParseError(f"unknown spec type {type(spec).__name__}", "", 0)
