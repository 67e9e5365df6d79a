import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropylab.density import (
    Piece,
    evaluate,
    make_pdf,
    overlap_mass,
    refine,
    tv_distance,
    uniform,
)
from tests.density.test_core import gh_pieces
from tests.strategies import family_members, random_pdfs

GH_10 = make_pdf(gh_pieces(10))
DELTA_10 = GH_10.pieces[1].start
C_10 = (1 - 0.1) / (1 - DELTA_10)


def test_refine_identical_uniforms():
    f_pieces, g_pieces = refine(uniform(), uniform())
    assert f_pieces == g_pieces == list(uniform().pieces)


def test_refine_shifted_uniforms():
    f_pieces, g_pieces = refine(uniform(), uniform(0.5, 1.5))
    assert [piece.start for piece in f_pieces] == [0.0, 0.5, 1.0]
    assert [piece.value for piece in f_pieces] == [1.0, 1.0, 0.0]
    assert [piece.value for piece in g_pieces] == [0.0, 1.0, 1.0]
    assert [p.log_length for p in f_pieces] == [
        p.log_length for p in g_pieces
    ]


def test_refine_gh_splits_at_delta():
    f_pieces, g_pieces = refine(GH_10, uniform())
    assert [piece.start for piece in f_pieces][:2] == [0.0, DELTA_10]
    assert [piece.value for piece in g_pieces][:2] == [1.0, 1.0]
    # at most a rounding sliver between the background end and 1
    assert sum(piece.width for piece in f_pieces[2:]) < 1e-15


def test_overlap_mass_examples():
    assert overlap_mass(GH_10, GH_10) == pytest.approx(1.0, abs=1e-15)
    assert overlap_mass(uniform(), uniform(2.0, 3.0)) == 0.0
    assert overlap_mass(GH_10, uniform()) == pytest.approx(
        DELTA_10 + C_10 * (1 - DELTA_10), abs=1e-15
    )


def test_tv_distance_examples():
    assert tv_distance(GH_10, GH_10) == 0.0
    assert tv_distance(uniform(), uniform(2.0, 3.0)) == 2.0
    expected = (math.exp(10) - 1) * DELTA_10 + (1 - C_10) * (1 - DELTA_10)
    assert tv_distance(GH_10, uniform()) == pytest.approx(expected, abs=1e-15)


def test_degenerate_spike_is_kept():
    # width e^-1006.9 is below the resolution of the coordinate 0
    n = 1000
    log_delta = -n - math.log(n)
    pdf = make_pdf(
        [
            Piece(0.0, log_delta, float(n)),
            Piece(0.0, 0.0, math.log1p(-1 / n)),
        ]
    )
    assert tv_distance(pdf, uniform()) == pytest.approx(2 / n, abs=1e-15)
    assert overlap_mass(pdf, uniform()) == pytest.approx(1 - 1 / n)


@settings(max_examples=100, deadline=None)
@given(random_pdfs(), random_pdfs())
def test_tv_overlap_identity_random(f, g):
    tv = tv_distance(f, g)
    overlap = overlap_mass(f, g)
    assert 0.0 <= overlap <= 1.0 + 1e-12
    assert 0.0 <= tv <= 2.0 + 1e-12
    assert tv == pytest.approx(2.0 - 2.0 * overlap, abs=1e-12)
    assert tv == pytest.approx(tv_distance(g, f), abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(family_members(), family_members())
def test_tv_overlap_identity_families(f, g):
    tv = tv_distance(f, g)
    assert 0.0 <= tv <= 2.0 + 1e-12
    assert abs(tv - (2.0 - 2.0 * overlap_mass(f, g))) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(family_members(), family_members(), family_members())
def test_tv_triangle_inequality(f, g, h):
    assert tv_distance(f, h) <= tv_distance(f, g) + tv_distance(
        g, h
    ) + 1e-12


@settings(max_examples=30, deadline=None)
@given(
    random_pdfs(),
    random_pdfs(),
    st.integers(0, 2**32 - 1),
)
def test_refine_preserves_values(f, g, seed):
    rng = np.random.default_rng(seed)
    points = rng.uniform(-10.0, 25.0, 1000).tolist()
    f_pieces, g_pieces = refine(f, g)
    for refined, original in ((f_pieces, f), (g_pieces, g)):
        for x in points:
            expected = evaluate(original, x)
            containing = [
                piece
                for piece in refined
                if piece.start <= x < piece.end
            ]
            if containing:
                assert containing[-1].value == expected
            else:
                assert expected == 0.0
