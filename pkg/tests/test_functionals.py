from __future__ import annotations

import numpy as np
import pytest

from bivariate_dominance.empirical import Axis, combined_grid
from bivariate_dominance.functionals import (
    Functional,
    IntegralFunctional,
    h_at,
    h_marginal_at,
    h_marginal_line,
    h_surface,
    l_at,
    l_surface,
    sup_delta_functional,
    sup_delta_marginal_functional,
)
from bivariate_dominance.sample_io import BivariateSample


def _sample(points):
    return BivariateSample.from_points(points)


def _brute_h(sample, s, t):
    A = np.maximum(0.0, s[:, None] - sample.x[None, :])
    B = np.maximum(0.0, t[:, None] - sample.y[None, :])
    return A @ B.T / sample.size


def _brute_l(sample, s, t):
    hx = np.maximum(0.0, s[:, None] - sample.x[None, :]).mean(axis=1)
    hy = np.maximum(0.0, t[:, None] - sample.y[None, :]).mean(axis=1)
    return t[None, :] * hx[:, None] + s[:, None] * hy[None, :] - _brute_h(sample, s, t)


def test_h_closed_form_examples():
    assert h_at(_sample([[0.0, 0.0]]), 1.0, 1.0) == 1.0
    assert h_at(_sample([[0.5, 0.5]]), 1.0, 1.0) == 0.25
    assert h_at(_sample([[0.1, 0.3], [0.6, 0.2]]), 0.0, 0.7) == 0.0


def test_h_marginal_examples():
    assert h_marginal_at(_sample([[0.0, 0.0]]), Axis.X, 1.0) == 1.0
    assert h_marginal_at(_sample([[0.5, 0.5]]), Axis.X, 1.0) == 0.5
    assert h_marginal_at(_sample([[0.2, 0.9]]), Axis.Y, 0.0) == 0.0


def test_l_examples():
    assert l_at(_sample([[0.5, 0.5]]), 1.0, 1.0) == 0.75
    assert l_at(_sample([[0.2, 0.4]]), 0.8, 0.0) == 0.0
    assert l_at(_sample([[0.0, 0.0]]), 1.0, 1.0) == 1.0


def test_integral_functional_dispatch():
    s = _sample([[0.5, 0.5]])
    assert IntegralFunctional(s, Functional.H)(1.0, 1.0) == 0.25
    assert IntegralFunctional(s, Functional.HX)(1.0) == 0.5
    assert IntegralFunctional(s, "HY")(0.75) == 0.25
    assert IntegralFunctional(s, Functional.L)(1.0, 1.0) == 0.75
    with pytest.raises(ValueError):
        IntegralFunctional(s, Functional.H)(0.5)


def test_query_outside_unit_square():
    with pytest.raises(ValueError):
        h_at(_sample([[0.5, 0.5]]), 1.5, 0.5)


def test_surfaces_match_pointwise_and_brute_force():
    rng = np.random.default_rng(21)
    for _ in range(25):
        a = _sample(rng.random((int(rng.integers(1, 40)), 2)))
        b = _sample(rng.random((int(rng.integers(1, 40)), 2)))
        g = combined_grid(a, b)
        H = h_surface(a, g)
        L = l_surface(a, g)
        np.testing.assert_allclose(H, _brute_h(a, g.xs, g.ys), atol=1e-12)
        np.testing.assert_allclose(L, _brute_l(a, g.xs, g.ys), atol=1e-12)
        i, j = int(rng.integers(g.shape[0])), int(rng.integers(g.shape[1]))
        assert H[i, j] == pytest.approx(h_at(a, g.xs[i], g.ys[j]), abs=1e-12)
        assert L[i, j] == pytest.approx(l_at(a, g.xs[i], g.ys[j]), abs=1e-12)
        hx = h_marginal_line(a, Axis.X, g.xs)
        assert hx[i] == pytest.approx(h_marginal_at(a, Axis.X, g.xs[i]), abs=1e-12)


def test_h_marginal_edge_is_increasing_and_convex():
    rng = np.random.default_rng(13)
    xs = np.linspace(0.0, 1.0, 101)
    for _ in range(20):
        s = _sample(rng.random((int(rng.integers(1, 40)), 2)))
        h = np.array([h_at(s, x, 1.0) for x in xs])
        assert (np.diff(h) >= -1e-15).all()
        # equal spacing: convexity is nonnegative second differences
        assert (np.diff(h, n=2) >= -1e-12).all()
        assert h[-1] == pytest.approx(h_marginal_at(s, Axis.X, 1.0))


def _cumsum2(arr):
    return arr.cumsum(axis=0).cumsum(axis=1)


def _quadrature_check(rng, P):
    """Midpoint rule of F̂ and K̂ on a P x P partition against Ĥ and L̂.

    Sample and query points sit on the partition lattice, where the midpoint
    rule integrates the step surfaces without error.
    """
    n = int(rng.integers(2, 51))
    k = rng.integers(0, P, size=(n, 2))
    sample = _sample(k / P)
    hist = np.zeros((P, P))
    np.add.at(hist, (k[:, 0], k[:, 1]), 1.0)
    # value of F̂ at the midpoint of cell (i, j)
    f_mid = _cumsum2(hist) / n
    fx_mid = np.bincount(k[:, 0], minlength=P).cumsum() / n
    fy_mid = np.bincount(k[:, 1], minlength=P).cumsum() / n
    k_mid = fx_mid[:, None] + fy_mid[None, :] - f_mid
    h_quad = _cumsum2(f_mid) / P**2
    l_quad = _cumsum2(k_mid) / P**2
    for _ in range(5):
        qi, qj = (int(v) for v in rng.integers(1, P + 1, size=2))
        x, y = qi / P, qj / P
        assert h_at(sample, x, y) == pytest.approx(h_quad[qi - 1, qj - 1], abs=1e-5)
        assert l_at(sample, x, y) == pytest.approx(l_quad[qi - 1, qj - 1], abs=1e-5)


def test_closed_form_matches_quadrature():
    rng = np.random.default_rng(1)
    for _ in range(20):
        _quadrature_check(rng, 200)


@pytest.mark.slow
def test_closed_form_matches_quadrature_full():
    rng = np.random.default_rng(10)
    for _ in range(200):
        _quadrature_check(rng, 2000)


def _continuous_quadrature_check(rng, P):
    """Midpoint rule on [0,x] x [0,y] for continuous samples and queries.

    Per point the 1-D midpoint error is at most x/(2P) (resp. y/(2P)), so the
    rule is off by at most xy/P for Ĥ and 2xy/P for L̂.
    """
    n = int(rng.integers(2, 51))
    sample = _sample(rng.random((n, 2)))
    for _ in range(3):
        x, y = (float(v) for v in rng.random(2))
        ms = (np.arange(P) + 0.5) * x / P
        mt = (np.arange(P) + 0.5) * y / P
        ix = (sample.x[None, :] <= ms[:, None]).astype(float)
        iy = (sample.y[None, :] <= mt[:, None]).astype(float)
        f_mid = ix @ iy.T / n
        k_mid = ix.mean(axis=1)[:, None] + iy.mean(axis=1)[None, :] - f_mid
        cell = x * y / P**2
        assert abs(h_at(sample, x, y) - f_mid.sum() * cell) <= x * y / P + 1e-12
        assert abs(l_at(sample, x, y) - k_mid.sum() * cell) <= 2 * x * y / P + 1e-12


def test_closed_form_matches_quadrature_continuous():
    rng = np.random.default_rng(2)
    for _ in range(20):
        _continuous_quadrature_check(rng, 400)


@pytest.mark.slow
def test_closed_form_matches_quadrature_continuous_full():
    rng = np.random.default_rng(20)
    for _ in range(200):
        _continuous_quadrature_check(rng, 2000)


def test_sup_delta_h_hand_example():
    a = _sample([[0.0, 0.0]])
    b = _sample([[0.5, 0.5]])
    value, where = sup_delta_functional(Functional.H, a, b, combined_grid(a, b))
    assert value == 0.75
    assert where == (1.0, 1.0)


def test_sup_delta_l_single_points():
    a = _sample([[0.0, 0.0]])
    b = _sample([[0.5, 0.5]])
    value, where = sup_delta_functional(Functional.L, a, b, combined_grid(a, b))
    # ΔL = xy below 0.5 and 0.25 on the upper-right block
    assert value == 0.25
    assert where == (0.5, 0.5)


def test_sup_delta_identical_samples_is_exactly_zero():
    rng = np.random.default_rng(4)
    pts = rng.random((30, 2))
    a = _sample(pts)
    b = _sample(pts[::-1])
    g = combined_grid(a, b)
    for kind in (Functional.H, Functional.L):
        value, where = sup_delta_functional(kind, a, b, g)
        assert value == 0.0
        assert where == (0.0, 0.0)


def test_sup_delta_functional_rejects_marginal_kind():
    a = _sample([[0.2, 0.2]])
    with pytest.raises(ValueError):
        sup_delta_functional(Functional.HX, a, a, combined_grid(a, a))


def test_sup_delta_marginal_functional():
    a = _sample([[0.0, 0.9]])
    b = _sample([[0.5, 0.1]])
    g = combined_grid(a, b)
    value, where = sup_delta_marginal_functional(a, b, Axis.X, g.xs)
    assert value == 0.5
    assert where == 0.5
    value, _ = sup_delta_marginal_functional(a, b, Axis.Y, g.ys)
    assert value == 0.0


def _dense_grid_check(kind, brute, rng, steps):
    a = _sample(rng.random((int(rng.integers(2, 40)), 2)))
    b = _sample(rng.random((int(rng.integers(2, 40)), 2)))
    g = combined_grid(a, b)
    value, _ = sup_delta_functional(kind, a, b, g)
    assert value >= 0.0
    assert value == pytest.approx((brute(a, g.xs, g.ys) - brute(b, g.xs, g.ys)).max(), abs=1e-12)
    p = np.linspace(0.0, 1.0, steps)
    assert (brute(a, p, p) - brute(b, p, p)).max() <= value + 1e-12


@pytest.mark.parametrize("kind,brute", [(Functional.H, _brute_h), (Functional.L, _brute_l)])
def test_sup_is_exact_against_dense_grid(kind, brute):
    rng = np.random.default_rng(6)
    for _ in range(20):
        _dense_grid_check(kind, brute, rng, 129)


@pytest.mark.slow
@pytest.mark.parametrize("kind,brute", [(Functional.H, _brute_h), (Functional.L, _brute_l)])
def test_sup_is_exact_against_dense_grid_full(kind, brute):
    rng = np.random.default_rng(60)
    for _ in range(200):
        _dense_grid_check(kind, brute, rng, 513)
