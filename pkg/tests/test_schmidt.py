"""Entanglement spectra, Schmidt ceilings, and the entropy bound chain."""

import math

import numpy as np
import pytest

from fermivac import (
    build_kitaev_chain,
    canonical_form,
    entanglement_spectrum,
    ground_state,
    largest_schmidt,
    majorana_coupling,
    renyi_entropy,
    thermal_covariance,
)
from fermivac.oracle import _schmidt_product_multiset, oracle_schmidt

K_SET = (0.0, 0.5, 1.0, 2.0, 5.0)

# Kitaev N=6, mu=t=delta=1, cut = first 3 sites, frozen from the dense SVD path
N6_NUS = [0.7990834335728848, 0.9996010404804119, 0.9999999749153824]
N6_LAMBDA1 = 0.8993622651407738
N6_ENTROPIES = {
    0.0: 2.0794415416798357,
    1.0: 0.3279879871314888,
    2.0: 0.19974402180036377,
    math.inf: 0.10606936111744747,
}


def spectrum_n6():
    g = ground_state(build_kitaev_chain(6, 1.0, 1.0, 1.0))
    return entanglement_spectrum(g, range(3))


def test_product_state_cut_has_unit_correlations():
    g = ground_state(build_kitaev_chain(4, -1.0, 0.0, 0.0))
    s = entanglement_spectrum(g, range(2))
    np.testing.assert_allclose(s.nus, [1.0, 1.0], atol=1e-12)
    assert largest_schmidt(s) == 1.0
    for k in K_SET + (math.inf,):
        assert abs(renyi_entropy(s, k)) < 1e-10


def test_maximally_entangled_mode():
    """Pairing-only two-site ground state: one nu = 0 mode across the cut."""
    g = ground_state(build_kitaev_chain(2, 0.0, 0.0, 1.0))
    s = entanglement_spectrum(g, [0])
    np.testing.assert_allclose(s.nus, [0.0], atol=1e-12)
    assert abs(largest_schmidt(s) - 0.5) < 1e-12
    for k in K_SET + (math.inf,):
        assert abs(renyi_entropy(s, k) - math.log(2.0)) < 1e-10


def test_frozen_spectrum_n6():
    s = spectrum_n6()
    np.testing.assert_allclose(s.nus, N6_NUS, rtol=1e-12)
    np.testing.assert_allclose(s.occupations, (1.0 + np.asarray(N6_NUS)) / 2.0, rtol=1e-12)
    assert s.cut == (0, 1, 2)


def test_schmidt_multiset_matches_dense_svd():
    s = spectrum_n6()
    fast = _schmidt_product_multiset(s.occupations)
    ref = oracle_schmidt(build_kitaev_chain(6, 1.0, 1.0, 1.0), range(3))
    padded = np.zeros_like(fast)
    padded[: ref.shape[0]] = ref
    assert np.abs(fast - padded).max() < 1e-8


def test_largest_schmidt_frozen_and_vs_dense():
    s = spectrum_n6()
    lam = largest_schmidt(s)
    assert abs(lam - N6_LAMBDA1) < 1e-12
    ref = oracle_schmidt(build_kitaev_chain(6, 1.0, 1.0, 1.0), range(3))
    assert abs(lam - ref[0]) < 1e-8


def test_renyi_frozen_values():
    s = spectrum_n6()
    for k, want in N6_ENTROPIES.items():
        assert abs(renyi_entropy(s, k) - want) < 1e-12
    # all three modes count as entangled, so the rank is 2^3
    assert abs(renyi_entropy(s, 0.0) - 3.0 * math.log(2.0)) < 1e-12
    assert renyi_entropy(s, math.inf) == -math.log(largest_schmidt(s))


def test_renyi_matches_direct_distribution():
    """Modewise formula against entropies of the explicit product multiset."""
    s = spectrum_n6()
    values = _schmidt_product_multiset(s.occupations)
    values = values[values > 1e-300]
    assert abs(renyi_entropy(s, 1.0) + float((values * np.log(values)).sum())) < 1e-8
    for k in (0.5, 2.0, 5.0):
        direct = math.log(float((values**k).sum())) / (1.0 - k)
        assert abs(renyi_entropy(s, k) - direct) < 1e-8


def test_bound_chain_random_draws():
    rng = np.random.default_rng(55)
    for _ in range(8):
        mu, t, delta = rng.uniform(-2.0, 2.0, size=3)
        g = ground_state(build_kitaev_chain(6, mu, t, delta))
        cut = range(int(rng.integers(1, 6)))
        s = entanglement_spectrum(g, cut)
        lam = largest_schmidt(s)
        s_inf = renyi_entropy(s, math.inf)
        assert abs(math.exp(-s_inf) - lam) < 1e-10
        entropies = [renyi_entropy(s, k) for k in K_SET]
        for sk in entropies:
            assert math.exp(-entropies[0]) <= math.exp(-sk) + 1e-10
            assert math.exp(-sk) <= lam + 1e-10
        # S_k is nonincreasing in k
        assert all(b <= a + 1e-10 for a, b in zip(entropies, entropies[1:]))
        assert lam >= math.exp(-entropies[0]) - 1e-10


def test_spectrum_input_validation():
    h = build_kitaev_chain(3, 1.0, 1.0, 1.0)
    mixed = thermal_covariance(canonical_form(majorana_coupling(h)), 1.0)
    with pytest.raises(ValueError):
        entanglement_spectrum(mixed, [0])
    g = ground_state(h)
    with pytest.raises(ValueError):
        entanglement_spectrum(g, range(3))  # not a proper subset
    with pytest.raises(ValueError):
        entanglement_spectrum(g, [])


def test_renyi_rejects_negative_order():
    s = spectrum_n6()
    with pytest.raises(ValueError):
        renyi_entropy(s, -0.5)


def test_rank_tolerance_controls_s0():
    s = spectrum_n6()
    # with a loose tolerance the two nearly-converged modes drop out of the rank
    assert abs(renyi_entropy(s, 0.0, rank_tol=1e-3) - math.log(2.0)) < 1e-12
