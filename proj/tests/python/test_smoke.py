import numpy as np
import pytest

import nneig


def test_estimate_diagonal():
    r = nneig.estimate_eigenvalue(np.diag([0.2, 0.5]).astype(complex), eps=1e-3)
    assert r["ok"]
    lam = nneig.eigenvalue(r)
    assert min(abs(lam - 0.2), abs(lam - 0.5)) <= 1e-3
    assert r["trace"]["total_oracle_calls"] > 0


def test_sigma0_matches_numpy():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    a /= np.linalg.norm(a, 2)
    mu = 0.1 - 0.2j
    want = np.linalg.svd(a - mu * np.eye(5), compute_uv=False)[-1]
    assert abs(nneig.sigma0(a, mu) - want) <= 1e-12


def test_jordan_matrix_roundtrip():
    a, meta = nneig.jordan_matrix([0.3, -0.4 + 0.2j], [2, 1], kappa=3.0, seed=4)
    assert a.shape == (3, 3)
    assert meta["m_max"] == 2
    r = nneig.estimate_eigenvalue(a, eps=1e-2, kappa=meta["jordan_kappa"], m=2)
    lam = nneig.eigenvalue(r)
    truth = [complex(*z) for z in meta["true_eigenvalues"]]
    assert min(abs(lam - z) for z in truth) <= 1e-2


def test_extreme_and_gap():
    a = np.diag([0.2, 0.5]).astype(complex)
    r = nneig.smallest_modulus_eigenvalue(a, eps=1e-3)
    assert abs(r["modulus"] - 0.2) <= 1e-3
    g = nneig.spectral_gap(a, eps=1e-3)
    assert abs(g["gap"] - 0.3) <= 3e-3


def test_region_classification():
    assert nneig.has_eigenvalue_in_region(np.diag([0.5, -0.5]).astype(complex))["found"]
    assert not nneig.has_eigenvalue_in_region(np.diag([-0.5, -0.2]).astype(complex))["found"]


def test_polynomial():
    p = nneig.sqrt_product(0.1, 1e-2)
    assert p.bounded
    xs = np.linspace(0.1, 1.0, 2001)
    assert np.max(np.abs(np.array(p(list(xs))) - np.sqrt(xs))) <= 1e-2
    rep = nneig.verify_hmu(np.diag([0.5, -0.25]).astype(complex), 0.5, nu=0.1, eps=1e-3)
    assert rep["alpha_mu"] == 1.5
    assert rep["spectral_error"] <= 1e-3


def test_pspec_grid():
    v = nneig.pspec_grid(np.diag([0.5]).astype(complex), [-1.0, 1.0, -1.0, 1.0], 5)
    assert v.shape == (5, 5)
    assert abs(v[2, 3] - 0.0) <= 1e-15  # node 0.5 + 0i


def test_errors_are_raised():
    with pytest.raises(nneig.NneigError):
        nneig.estimate_eigenvalue(2.0 * np.eye(2, dtype=complex))
    with pytest.raises(nneig.NneigError):
        nneig.cheb_sqrt(0.0, 1e-3)
