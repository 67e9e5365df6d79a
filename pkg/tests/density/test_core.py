import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropylab.density import (
    DensityError,
    MassError,
    OverlapError,
    Piece,
    ScaleError,
    WidthError,
    dilate,
    evaluate,
    make_pdf,
    mass,
    uniform,
)
from tests.strategies import family_members, random_pdfs


def gh_pieces(n: int) -> list[Piece]:
    log_delta = -n - math.log(n)
    delta = math.exp(log_delta)
    c_n = (1 - 1 / n) / (1 - delta)
    return [
        Piece(0.0, log_delta, float(n)),
        Piece(delta, math.log1p(-delta), math.log(c_n)),
    ]


def test_single_piece_is_uniform():
    pdf = make_pdf([Piece(0.0, 0.0, 0.0)])
    assert mass(pdf) == 1.0
    assert evaluate(pdf, 0.5) == 1.0


def test_internal_gap_has_density_zero():
    half = math.log(0.5)
    pdf = make_pdf([Piece(2.0, 0.0, half), Piece(0.0, 0.0, half)])
    assert [piece.start for piece in pdf] == [0.0, 2.0]
    assert mass(pdf) == pytest.approx(1.0, abs=1e-15)
    assert evaluate(pdf, 1.5) == 0.0
    assert evaluate(pdf, 2.5) == pytest.approx(0.5)


def test_gh_pieces_have_mass_one():
    pdf = make_pdf(gh_pieces(10))
    assert mass(pdf) == pytest.approx(1.0, abs=1e-15)
    assert evaluate(pdf, 0.5) == pytest.approx(
        (1 - 0.1) / (1 - math.exp(-10) / 10), rel=1e-15
    )


def test_converse_fails_mass():
    pieces = [
        Piece(0.0, 0.0, math.log(0.8)),
        Piece(10.0, -10 - math.log(10), 10.0),
        Piece(20.0, 10 - math.log(10), -10.0),
    ]
    assert mass(make_pdf(pieces)) == pytest.approx(1.0, abs=1e-15)


def test_uniform_on_longer_interval():
    pdf = uniform(0.0, 2.0)
    assert mass(pdf) == 1.0
    assert evaluate(pdf, 1.0) == pytest.approx(0.5)


@pytest.mark.parametrize(
    "x, expected", [(0.0, 1.0), (0.5, 1.0), (1.0, 0.0), (-0.1, 0.0)]
)
def test_evaluate_is_right_open(x, expected):
    assert evaluate(uniform(), x) == expected


def test_mass_error():
    with pytest.raises(MassError) as error:
        make_pdf([Piece(0.0, 0.0, math.log(0.5))])
    assert error.value.total == pytest.approx(0.5)
    assert "0.5" in str(error.value)


def test_overlap_error():
    half = math.log(0.5)
    with pytest.raises(OverlapError):
        make_pdf([Piece(0.0, 0.0, half), Piece(0.5, 0.0, half)])


@pytest.mark.parametrize("log_length", [math.inf, math.nan, -math.inf])
def test_width_error(log_length):
    with pytest.raises(WidthError):
        make_pdf([Piece(0.0, log_length, 0.0)])


def test_empty_pdf_is_rejected():
    with pytest.raises(DensityError):
        make_pdf([])


def test_dilate_uniform():
    pdf = dilate(uniform(), 2.0)
    assert pdf.support == pytest.approx((0.0, 2.0))
    assert evaluate(pdf, 1.5) == pytest.approx(0.5)


def test_dilate_identity():
    pdf = make_pdf(gh_pieces(10))
    assert dilate(pdf, 1.0) == pdf


@pytest.mark.parametrize("a", [0.0, -1.0, math.inf, math.nan])
def test_dilate_rejects_bad_scale(a):
    with pytest.raises(ScaleError):
        dilate(uniform(), a)


@settings(max_examples=100, deadline=None)
@given(random_pdfs())
def test_mass_is_one(pdf):
    assert mass(pdf) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(random_pdfs(), st.lists(st.floats(-10, 20), min_size=1, max_size=50))
def test_make_pdf_round_trip(pdf, points):
    rebuilt = make_pdf(list(pdf.pieces))
    assert mass(rebuilt) == mass(pdf)
    for x in points:
        assert evaluate(rebuilt, x) == evaluate(pdf, x)


@settings(max_examples=50, deadline=None)
@given(
    family_members(("bounded-ratio", "shrinking-uniform")) | random_pdfs(),
    st.sampled_from([0.5, 2.0, 3.0, 10.0]),
    st.lists(st.floats(-10, 10), min_size=1, max_size=50),
)
def test_dilate_inverse(pdf, a, points):
    restored = dilate(dilate(pdf, a), 1.0 / a)
    assert mass(restored) == pytest.approx(1.0, abs=1e-12)
    for x in points:
        if any(
            abs(x - edge) < 1e-9
            for piece in pdf.pieces
            for edge in (piece.start, piece.end)
        ):
            continue
        assert evaluate(restored, x) == pytest.approx(
            evaluate(pdf, x), abs=1e-12
        )
