"""DSL parsing/rendering tests, including the round-trip property."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from berezin_range.dsl import (
    ParseError,
    format_complex,
    parse_complex,
    parse_operator_spec,
    render_operator_spec,
)
from berezin_range.operators import (
    BlaschkeFactor,
    BlaschkeProduct,
    DiagonalMonomialSum,
    GeneralFiniteRank,
    GeometricDiagonal,
    Multiplication,
    Polynomial,
    RankOneMonomial,
    ScaledProjection,
)
from berezin_range.space import PowerSeries


class TestParseComplex:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("2", 2 + 0j),
            ("-0.5", -0.5 + 0j),
            ("1+1i", 1 + 1j),
            ("-0.5i", -0.5j),
            ("1.5e-3", 1.5e-3),
            ("2-0.25i", 2 - 0.25j),
            ("i", 1j),
        ],
    )
    def test_valid_literals(self, text, expected):
        assert parse_complex(text) == expected

    @pytest.mark.parametrize("text", ["", "abc", "1+2j", "(1,2)", "1 + 2 i z"])
    def test_invalid_literals(self, text):
        with pytest.raises(ParseError):
            parse_complex(text)


class TestParseOperatorSpec:
    def test_each_tag(self):
        assert parse_operator_spec("rank1:m=1,n=2") == RankOneMonomial(1, 2)
        assert parse_operator_spec("diag:a=[1+1i,1-1i,i]") == DiagonalMonomialSum(
            (1 + 1j, 1 - 1j, 1j)
        )
        assert parse_operator_spec("geom:a=0.5+0.5i") == GeometricDiagonal(0.5 + 0.5j)
        assert parse_operator_spec("proj:k=2") == ScaledProjection(2)
        assert parse_operator_spec(
            "pairs:[(g=[1,-1];h=[1,0,-1])]"
        ) == GeneralFiniteRank(((PowerSeries((1, -1)), PowerSeries((1, 0, -1))),))
        assert parse_operator_spec("mult:poly=[-2i,5,0,0,1]") == Multiplication(
            Polynomial((-2j, 5, 0, 0, 1))
        )
        assert parse_operator_spec(
            "mult:bfactor:zeta=2i;alpha=0.3"
        ) == Multiplication(BlaschkeFactor(2j, 0.3))
        assert parse_operator_spec(
            "mult:blaschke:zeta=1;m=1;zeros=[0.5,-0.3i]"
        ) == Multiplication(BlaschkeProduct(1.0, 1, (0.5, -0.3j)))

    def test_empty_blaschke_zero_list(self):
        spec = parse_operator_spec("mult:blaschke:zeta=1;m=2;zeros=[]")
        assert spec.symbol.zeros == ()

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "rank1",
            "bogus:m=1,n=1",
            "rank1:m=1",
            "rank1:n=1,m=1",
            "rank1:m=x,n=1",
            "diag:a=1,2",
            "pairs:[]",
            "pairs:[(g=[1];k=[1])]",
            "pairs:[(g=[1];h=[1]",
            "mult:exp=[1]",
            "mult:poly=1,2",
        ],
    )
    def test_malformed_specs_raise_parse_error_with_position(self, text):
        with pytest.raises(ParseError) as exc:
            parse_operator_spec(text)
        assert exc.value.pos >= 0

    def test_invariants_still_enforced_after_parse(self):
        from berezin_range.space import InvariantError

        with pytest.raises(InvariantError):
            parse_operator_spec("geom:a=1.2")
        with pytest.raises(InvariantError):
            parse_operator_spec("mult:blaschke:zeta=2;m=0;zeros=[]")


class TestFormatComplex:
    @pytest.mark.parametrize(
        "z,expected",
        [
            (2 + 0j, "2"),
            (-0.5j, "-0.5i"),
            (1 + 1j, "1+1i"),
            (2 - 0.25j, "2-0.25i"),
            (0j, "0"),
        ],
    )
    def test_rendering(self, z, expected):
        assert format_complex(z) == expected

    def test_format_parse_inverse_on_awkward_floats(self):
        for z in (1.5e-7 - 3j, complex(1 / 3, -2 / 7), complex(-0.0, 0.125)):
            assert parse_complex(format_complex(z)) == z


# ---------------------------------------------------------------------------
# Round-trip property


finite = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)
small_complexes = st.builds(
    complex, st.floats(-0.65, 0.65), st.floats(-0.65, 0.65)
)
series = st.lists(complexes, min_size=1, max_size=4).map(
    lambda cs: PowerSeries(tuple(cs))
)

spec_strategy = st.one_of(
    st.builds(RankOneMonomial, st.integers(0, 6), st.integers(0, 6)),
    st.builds(
        DiagonalMonomialSum, st.lists(complexes, min_size=1, max_size=4).map(tuple)
    ),
    st.builds(GeometricDiagonal, small_complexes),
    st.builds(ScaledProjection, st.integers(0, 6)),
    st.builds(
        GeneralFiniteRank,
        st.lists(st.tuples(series, series), min_size=1, max_size=3).map(tuple),
    ),
    st.builds(
        Multiplication,
        st.builds(Polynomial, st.lists(complexes, min_size=1, max_size=6).map(tuple)),
    ),
    st.builds(
        Multiplication, st.builds(BlaschkeFactor, complexes, small_complexes)
    ),
    st.builds(
        Multiplication,
        st.builds(
            BlaschkeProduct,
            st.floats(0.0, 2 * math.pi).map(lambda t: complex(math.cos(t), math.sin(t))),
            st.integers(0, 3),
            st.lists(small_complexes, min_size=0, max_size=3).map(tuple),
        ),
    ),
)


@settings(max_examples=200, deadline=None)
@given(spec=spec_strategy)
def test_round_trip_property(spec):
    """parse(render(spec)) == spec for every constructible spec."""
    assert parse_operator_spec(render_operator_spec(spec)) == spec
