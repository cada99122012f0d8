import math

import numpy as np
import pytest

import catotoc


def test_operators_are_consistent():
    n = 8
    x = catotoc.position_operator(n)
    p = catotoc.momentum_operator(n)
    f = catotoc.dft_matrix(n)
    assert np.allclose(x, x.conj().T)
    assert np.allclose(f.conj().T @ f, np.eye(n))
    assert np.allclose(f.conj().T @ p @ f, -x)


def test_propagator_is_unitary_and_matches_dense():
    u = catotoc.Propagator(dynamics="hh", n=8)
    d = u.dense()
    assert d.shape == (64, 64)
    assert np.abs(d.conj().T @ d - np.eye(64)).max() < 1e-10
    psi = catotoc.product_state(catotoc.coherent_state(8, 0.3, 0.6), catotoc.coherent_state(8, 0.5, 0.5))
    assert np.allclose(u.apply(psi, 3), np.linalg.matrix_power(d, 3) @ psi)


def test_otoc_split_and_purity_sum():
    n = 8
    psi = catotoc.product_state(catotoc.coherent_state(n, 0.5, 0.5), catotoc.coherent_state(n, 0.5, 0.5))
    s = catotoc.otoc({"dynamics": "he", "n": n}, psi, 4)
    assert abs(s["c"] + 2 * (s["c4_real"] - s["c2"]) / s["norm_factor"]) < 1e-8

    u = catotoc.Propagator(dynamics="he", n=n)
    phi = u.apply(psi, 4)
    rho1 = catotoc.partial_trace(np.outer(phi, phi.conj()), n, n, 1)
    assert catotoc.otoc_re_sum(u, psi, 4) == pytest.approx(np.trace(rho1 @ rho1).real, abs=1e-8)


def test_entropies_and_wse():
    n = 8
    u = catotoc.Propagator(dynamics="hh", n=n)
    psi = u.apply(catotoc.product_state(catotoc.coherent_state(n, 0.3, 0.6), catotoc.coherent_state(n, 0.3, 0.6)), 3)
    e = catotoc.entropies(catotoc.partial_trace(np.outer(psi, psi.conj()), n, n, 1))
    assert math.exp(-e["s_renyi2"]) == pytest.approx(1 - e["s_linear"], abs=1e-12)
    assert catotoc.wse(psi, n) == pytest.approx(2 * e["s_vn"], abs=1e-9)


def test_wigner_is_normalized():
    n = 5
    c = catotoc.coherent_state(n, 0.5, 0.5)
    w = catotoc.wigner(np.outer(c, c.conj()), n)
    assert w.shape == (2 * n, 2 * n)
    assert w.sum() == pytest.approx(1.0, abs=1e-12)


def test_classical_map():
    assert catotoc.step_1d(0.1, 0.2, "hyperbolic", 0.0) == pytest.approx((0.4, 0.7))
    lam = catotoc.lyapunov_1d()
    assert lam[0] == pytest.approx(math.log(2 + math.sqrt(3)), abs=1e-4)


def test_run_scenario():
    out = catotoc.run_scenario(dynamics="hh", n=16, tmax=10, center1=(0.5, 0.5))
    assert out["t"] == list(range(11))
    assert len(out["s_linear"]) == 11
    assert out["s_linear"][-1] > out["s_linear"][0]
    assert "rescale_method" in out["metadata"]


def test_errors_are_translated():
    with pytest.raises(catotoc.ConfigError):
        catotoc.run_scenario(bogus=1)
    with pytest.raises(catotoc.CatotocError):
        catotoc.Propagator(n=1)


def test_verify_fast():
    ok, checks = catotoc.verify("fast")
    assert ok
    assert all(c["passed"] for c in checks)
