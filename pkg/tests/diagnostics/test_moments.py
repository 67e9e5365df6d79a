import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropylab.density import Piece, make_pdf, uniform
from entropylab.diagnostics import (
    abs_moment,
    alpha_moment,
    entropy_integrand_mass,
    log_threshold_mass,
    orlicz_contributions,
    orlicz_moment,
    ratio_sup,
    sup_density,
)
from entropylab.orlicz import (
    DomainError,
    OrliczFn,
    phi,
    power,
    threshold_t0,
)
from entropylab.sequences import get_family, gh_alpha
from tests.strategies import family_members, random_pdfs

BUILT_INS = [
    power(1.5),
    power(2.0),
    OrliczFn("tlog1p"),
    OrliczFn("tloge"),
    OrliczFn("tlogpow", 2.0),
    OrliczFn("tloglog"),
    OrliczFn("exp", 0.5),
]


@pytest.mark.parametrize("psi", BUILT_INS, ids=str)
def test_uniform_has_zero_moment(psi):
    assert orlicz_moment(uniform(), psi) == 0.0


@pytest.mark.parametrize("n", [10, 100, 1000])
def test_orlicz_spike_tlog1p_component_is_one(n):
    pdf = get_family("orlicz-spike").generate(n)
    spike = orlicz_contributions(pdf, OrliczFn("tlog1p"))[0]
    assert spike == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("n", [3, 10, 100, 1000, 10**4])
def test_gh_moving_alpha_component_is_e(n):
    pdf = get_family("gh-counterexample").generate(n)
    spike = orlicz_contributions(pdf, power(gh_alpha(n)))[0]
    assert spike == pytest.approx(math.e, abs=1e-10)


def test_fixed_alpha_examples():
    assert alpha_moment(uniform(), 2.0) == 0.0
    gh = get_family("gh-counterexample").generate(100)
    spike = orlicz_contributions(gh, power(2.0))[0]
    assert spike == pytest.approx(100.0, rel=1e-12)
    orlicz = get_family("orlicz-spike").generate(10**4)
    spike = orlicz_contributions(orlicz, power(1.5))[0]
    assert spike == pytest.approx(100.0 / math.log1p(10**4), rel=1e-10)
    assert spike == pytest.approx(10.857, abs=1e-3)


@pytest.mark.parametrize("alpha", [1.0, 0.5, math.nan])
def test_alpha_moment_domain(alpha):
    with pytest.raises(DomainError):
        alpha_moment(uniform(), alpha)


def test_sup_density_examples():
    assert sup_density(uniform()) == 1.0
    gh = get_family("gh-counterexample").generate(10)
    assert sup_density(gh) == pytest.approx(math.exp(10))
    ratio = get_family("bounded-ratio").generate(10)
    assert sup_density(ratio) == pytest.approx(1.1)
    assert sup_density(get_family("gh-counterexample").generate(1000)) == (
        math.inf
    )


def test_ratio_sup_examples():
    assert ratio_sup(uniform(), uniform()) == 1.0
    spike = get_family("orlicz-spike").generate(20)
    assert ratio_sup(spike, uniform()) == pytest.approx(math.exp(20))
    ratio = get_family("bounded-ratio").generate(10)
    assert ratio_sup(ratio, uniform()) == pytest.approx(1.1, rel=1e-14)
    converse = get_family("converse-fails").generate(10)
    assert ratio_sup(converse, uniform()) == math.inf


@pytest.mark.parametrize("beta, expected", [(1.0, 0.5), (2.0, 1 / 3)])
def test_abs_moment_uniform(beta, expected):
    assert abs_moment(uniform(), beta) == pytest.approx(expected, rel=1e-14)


def test_abs_moment_symmetric_and_straddling():
    pdf = uniform(-1.0, 1.0)
    assert abs_moment(pdf, 2.0) == pytest.approx(1 / 3, rel=1e-14)
    shifted = uniform(-3.0, -1.0)
    assert abs_moment(shifted, 1.0) == pytest.approx(2.0, rel=1e-14)


def test_abs_moment_converse_fails():
    n = 10
    pdf = get_family("converse-fails").generate(n)
    width = math.exp(n) / n
    expected = (
        (1 - 2 / n) / 2
        + math.exp(n) * ((n + 1 / (n * math.exp(n))) ** 2 - n**2) / 2
        + math.exp(-n) * ((2 * n + width) ** 2 - (2 * n) ** 2) / 2
    )
    assert abs_moment(pdf, 1.0) == pytest.approx(expected, rel=1e-9)


def test_abs_moment_far_from_origin():
    # width much smaller than the start takes the first-order branch
    pdf = make_pdf([Piece(1e20, 0.0, 0.0)])
    assert abs_moment(pdf, 1.0) == pytest.approx(1e20, rel=1e-12)


@pytest.mark.parametrize(
    "name, n, background",
    [
        ("gh-counterexample", 710, 1 - 1 / 710),
        ("gh-counterexample", 735, 1 - 1 / 735),
        ("orlicz-spike", 705, 1 - 1 / (705 * math.log1p(705))),
    ],
)
def test_abs_moment_background_near_origin(name, n, background):
    # the background piece starts at a subnormal δ_n
    pdf = get_family(name).generate(n)
    assert pdf.pieces[1].start > 0
    assert abs_moment(pdf, 2.0) == pytest.approx(background / 3, rel=1e-9)
    assert abs_moment(pdf, 1.0) == pytest.approx(background / 2, rel=1e-9)


@pytest.mark.parametrize("beta", [0.0, -1.0])
def test_abs_moment_domain(beta):
    with pytest.raises(DomainError):
        abs_moment(uniform(), beta)


@settings(max_examples=100, deadline=None)
@given(
    family_members() | random_pdfs(),
    st.sampled_from([1.5, 2.0, 3.0]),
)
def test_power_moment_matches_alpha_moment(pdf, alpha):
    assert orlicz_moment(pdf, power(alpha)) == alpha_moment(pdf, alpha)


@settings(max_examples=200, deadline=None)
@given(
    family_members(),
    st.sampled_from(BUILT_INS),
    st.sampled_from([1.0, 2.0, 5.0, 10.0, 20.0]),
)
def test_orlicz_tail_bound(pdf, psi, T):
    bound = phi(psi, T) * orlicz_moment(pdf, psi)
    assert log_threshold_mass(pdf, T) <= bound * (1 + 1e-12) + 1e-12


@settings(max_examples=200, deadline=None)
@given(family_members() | random_pdfs(), st.sampled_from(BUILT_INS))
def test_integrand_mass_below_t0_plus_moment(pdf, psi):
    assert entropy_integrand_mass(pdf) <= (
        threshold_t0(psi) + orlicz_moment(pdf, psi) + 1e-12
    )
