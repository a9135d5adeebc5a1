import math

import numpy as np
import pytest

import sasaki


def test_version():
    assert sasaki.__version__ == "0.1.0"


def test_structural_constants():
    c1, c2 = sasaki.structural_constants(2)
    assert c1.shape == (5, 5)
    assert c1[0, 1] == 1.0 and c1.sum() == 1.0
    assert np.array_equal(c2, np.diag([0.0, 1, 1, 1, 1]))


def test_comparison_functions():
    assert sasaki.frak(1.0, 2.0, 0.0, 0.0) == (4.0, 1.0)
    b1, b2 = sasaki.conjugate_bounds(1.0, 0.0, 4.0, 1.0, 2)
    assert b1 == pytest.approx(math.pi) and b2 == pytest.approx(math.pi)
    assert sasaki.trace_bound(1.0, 0.0, 0.0, 1) == pytest.approx(-5.0)
    assert sasaki.laplace_h(2.0, 0.0, 0.0, 0.0, 2) == pytest.approx(3.5)
    assert sasaki.volume_k(1.0, 0.0, 0.0, 0.0, 1) == pytest.approx(1 / 12)


def test_riccati_matches_oracle():
    times = [0.1, 0.5, 1.0, 2.0]
    states, blow_up = sasaki.riccati(2, 1.0, 0.3, times, tol=1e-12)
    assert blow_up is None
    for t, s in zip(times, states):
        np.testing.assert_allclose(s, sasaki.oracle_S(2, 1.0, 0.3, t), rtol=1e-8, atol=1e-8)
        np.testing.assert_allclose(s, sasaki.expm_S(2, 1.0, 0.3, t), rtol=1e-8, atol=1e-8)


def test_conjugate_time():
    assert sasaki.conjugate_time(2, 1.0, 1.0, 4.0) == pytest.approx(math.pi, rel=1e-7)
    assert sasaki.conjugate_time(1, 0.0, 0.0, 10.0) is None


def test_geodesics_and_distance():
    g = sasaki.heisenberg_geodesic(np.array([1.0, 0.0]), 1.0, math.pi, 50)
    assert g["x"].shape == (50, 3)
    np.testing.assert_allclose(g["x"][-1], [0.0, 2.0, math.pi / 2], atol=1e-14)
    assert sasaki.heisenberg_distance(g["x"][-1]) == pytest.approx(math.pi)
    h = sasaki.hopf_geodesic(np.array([0.6, 0.8]), 0.5, 3.0, 20)
    np.testing.assert_allclose(np.linalg.norm(h["x"], axis=1), 1.0, atol=1e-12)
    assert sasaki.cut_time(sasaki.ModelSpace("hopf", 1), np.array([1.0, 0.0]), 0.0) == pytest.approx(math.pi)


def test_volumes():
    hopf = sasaki.ModelSpace("hopf", 1)
    assert sasaki.ball_volume(hopf, 4.0)[0] == pytest.approx(math.pi**2, rel=1e-8)
    ratios = sasaki.bishop_ratios(hopf, "heisenberg", [0.5, 1.0, 2.0])
    assert all(r <= 1.0 for r in ratios)
    heis = sasaki.ModelSpace("heisenberg", 1)
    v1 = sasaki.ball_volume(heis, 1.0)[0]
    v2 = sasaki.ball_volume(heis, 2.0, method="k-integral")[0]
    assert v2 / v1 == pytest.approx(16.0, rel=1e-7)


def test_laplacian():
    s = sasaki.laplacian_sample(np.array([1.0, 0.0, 0.0]))
    assert s["bound"] == pytest.approx(5.0)
    assert s["lapH"] == pytest.approx(4.0, rel=1e-6)
    margins = sasaki.laplacian_margins(1, 20, 42)
    assert min(margins) >= -1e-4


def test_errors():
    with pytest.raises(ValueError):
        sasaki.ModelSpace("torus", 1)
    with pytest.raises(ValueError):
        sasaki.heisenberg_geodesic(np.array([2.0, 0.0]), 1.0, 1.0, 10)
    with pytest.raises(sasaki.NumericalError):
        sasaki.trace_bound(math.pi, 0.0, 1.0, 2)


def test_acceptance_subset():
    rows = sasaki.run_acceptance("riccati,cut")
    assert [r["id"] for r in rows] == [1, 5]
    assert all(r["passed"] for r in rows)
