import math

import numpy as np
import pytest

from quditqkd.realistic import (
    DeadLinkError,
    LinkParams,
    NoSecureDistanceError,
    max_distance,
    max_distance_bisect,
    p_correct,
    p_incorrect,
    qber,
    rate_vs_distance,
    transmittance,
)
from quditqkd.security import coherent_threshold, incoherent_threshold

TYPICAL = LinkParams()  # mu 0.1, eta 0.2, 0.2 dB/km, p_dark 1e-5, N 2, M 3

MAX_DISTANCE_GOLDEN = {2: 124.759652530, 3: 117.773908374, 4: 112.485233696, 8: 99.0073687533}


def test_defaults():
    assert (TYPICAL.mu, TYPICAL.eta_D, TYPICAL.alpha_db_per_km, TYPICAL.p_dark) == (0.1, 0.2, 0.2, 1e-5)
    assert TYPICAL.M == 3
    assert LinkParams(N=4).M == 5


@pytest.mark.parametrize(
    "kw", [dict(mu=-1), dict(eta_D=1.5), dict(N=1), dict(N=2, M=4), dict(p_dark=math.nan)]
)
def test_validation(kw):
    with pytest.raises(ValueError):
        LinkParams(**kw)


def test_p_correct_examples():
    assert p_correct(TYPICAL) == pytest.approx(0.1 * 0.2 / 3, rel=1e-15)
    assert p_correct(LinkParams(mu=0.0)) == 0.0
    assert transmittance(TYPICAL.at(50.0)) == pytest.approx(0.1, rel=1e-15)
    assert p_correct(TYPICAL) / p_correct(TYPICAL.at(50.0)) == pytest.approx(10.0, rel=1e-14)


def test_p_incorrect_examples():
    assert p_incorrect(TYPICAL) == pytest.approx(1e-5 / 3, rel=1e-15)
    assert p_incorrect(LinkParams(N=4, M=3)) / p_incorrect(LinkParams(N=2, M=3)) == pytest.approx(3.0)
    assert p_incorrect(LinkParams(p_dark=0.0)) == 0.0


def test_qber_examples():
    assert abs(qber(TYPICAL) - 5.0e-4) < 1e-12
    assert abs(qber(TYPICAL.at(50.0)) - 5.0e-3) < 1e-12
    q = [qber(LinkParams(L_km=20.0, M=M)) for M in (1, 2, 3)]
    assert q[0] == q[1] == q[2]


def test_qber_exact_form():
    pc, pi = p_correct(TYPICAL), p_incorrect(TYPICAL)
    assert qber(TYPICAL, exact=True) == pytest.approx(pi / (pi + pc), rel=1e-15)
    assert qber(TYPICAL, exact=True) < qber(TYPICAL)


def test_dead_link():
    with pytest.raises(DeadLinkError):
        qber(LinkParams(mu=0.0))


@pytest.mark.parametrize("N", [2, 3, 4, 8])
def test_cancellation(N):
    for L in (0.0, 33.0, 120.0):
        lp = LinkParams(N=N, L_km=L)
        assert abs(qber(lp) * p_correct(lp) - p_incorrect(lp)) < 1e-15


def test_rate_vs_distance():
    grid = np.arange(0.0, 200.0, 2.5)
    rows = rate_vs_distance(TYPICAL, grid)
    R = np.array([r for _, _, r in rows])
    Q = np.array([q for _, q, _ in rows])
    assert R[0] > 0
    assert np.all(np.diff(R) <= 1e-15)
    assert np.all(np.diff(Q) > 0)
    L_star = max_distance(TYPICAL)
    (_, _, r), = rate_vs_distance(TYPICAL, [L_star])
    assert abs(r) < 1e-9
    with pytest.raises(ValueError):
        rate_vs_distance(TYPICAL, [10.0, 5.0])


def test_rate_vs_distance_caps_error_rate():
    (_, q, r), = rate_vs_distance(TYPICAL, [500.0])
    assert q > 0.5
    assert r == pytest.approx(-1 / 3, abs=1e-12)


@pytest.mark.parametrize("N", sorted(MAX_DISTANCE_GOLDEN))
def test_max_distance(N):
    lp = LinkParams(N=N)
    L = max_distance(lp)
    assert L == pytest.approx(MAX_DISTANCE_GOLDEN[N], abs=1e-8)
    assert abs(L - max_distance_bisect(lp)) < 1e-6
    e_max = incoherent_threshold(N).e_max
    assert L == pytest.approx(50 * math.log10(0.1 * 0.2 * e_max / (1e-5 * (N - 1))), abs=1e-12)


@pytest.mark.parametrize("N", [2, 3, 4, 8])
def test_max_distance_coherent_and_exact(N):
    lp = LinkParams(N=N)
    L = max_distance(lp, "coherent")
    assert abs(L - max_distance_bisect(lp, "coherent")) < 1e-6
    assert abs(qber(lp.at(L)) - coherent_threshold(N).e_max) < 1e-12
    assert L < max_distance(lp)
    Le = max_distance(lp, exact=True)
    assert abs(Le - max_distance_bisect(lp, exact=True)) < 1e-6
    assert abs(qber(lp.at(Le), exact=True) - incoherent_threshold(N).e_max) < 1e-12


def test_max_distance_decreases_with_dimension():
    Ls = [max_distance(LinkParams(N=N)) for N in (2, 3, 4, 5, 7, 8, 9, 16)]
    assert np.all(np.diff(Ls) < 0)


def test_max_distance_dark_count_scaling():
    L1 = max_distance(TYPICAL)
    L2 = max_distance(LinkParams(p_dark=2e-5))
    assert L1 - L2 == pytest.approx(50 * math.log10(2), abs=1e-10)


def test_max_distance_unbounded_and_insecure():
    assert max_distance(LinkParams(p_dark=0.0)) == math.inf
    assert max_distance_bisect(LinkParams(p_dark=0.0)) == math.inf
    with pytest.raises(NoSecureDistanceError):
        max_distance(LinkParams(p_dark=1e-2))
    with pytest.raises(NoSecureDistanceError):
        max_distance_bisect(LinkParams(p_dark=1e-2))
