import math

import numpy as np
import pytest

import golden_gaps as gg

PHI = (1 + math.sqrt(5)) / 2


def test_small_radius_slopes():
    assert gg.slopes(2, exact=True) == ["0/1+0/1*phi", "-1/1+1/1*phi", "1/1+0/1*phi"]
    s = gg.slopes(10)
    assert len(s) == 30
    assert s[0] == 0.0 and s[-1] == 1.0


def test_bcz_matches_direct():
    assert gg.gaps_via_bcz(20, mode="exact", exact=True) == gg.gaps_direct(20, exact=True)
    np.testing.assert_allclose(gg.gaps_via_bcz(50, mode="float"), gg.gaps_direct(50), rtol=1e-13)
    with pytest.raises(ValueError):
        gg.gaps_via_bcz(10, mode="bogus")


def test_bcz_examples():
    assert gg.classify("1", "1") == "Zinf"
    assert gg.return_time("1", "1") == "1/1+0/1*phi"
    assert gg.return_time(1.0, -0.5) == 2.0
    rows = gg.orbit("1", "1", 1)
    assert rows == [("1/1+0/1*phi", "1/1+0/1*phi", "Zinf", "1/1+0/1*phi")]


def test_gap_law():
    alpha = np.array([0.5, 1.0, 2.0])
    pdf = gg.gap_pdf(alpha)
    assert pdf[0] == 0.0 and pdf[1] == 0.0
    expected = (2 / PHI) * (0.25 * math.log(2) + 0.5 * math.log(2 / PHI))
    assert pdf[2] == pytest.approx(expected, rel=1e-14)
    assert gg.gap_cdf(1e6) == pytest.approx(1.0, abs=1e-5)
    assert len(gg.breakpoints()) == 8


def test_volumes_and_mean():
    v = gg.volumes()
    assert v.total == pytest.approx(3 * math.pi**2 / 10, abs=1e-10)
    assert v.max_discrepancy() < 1e-6
    gaps = gg.gaps_via_bcz(1000, mode="float")
    assert gaps.min() >= 1.0
    assert gaps.mean() == pytest.approx(3 * math.pi**2 / (5 * PHI), rel=0.01)
    assert gg.ks_distance(gaps) <= 0.02


def test_monte_carlo_is_seeded():
    a = gg.h_spacing_mc([1.5, 2.0], samples=20000, seed=3)
    b = gg.h_spacing_mc([1.5, 2.0], samples=20000, seed=3)
    assert (a.value, a.hits) == (b.value, b.hits)
    assert gg.h_spacing_mc([1.0], samples=5000).value == 1.0
    e = gg.h_spacing_empirical([1.0, 2.0, 3.0, 1.2, 2.5], [1.5, 1.5])
    assert e.hits == 1 and e.samples == 4
