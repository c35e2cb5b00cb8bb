"""Brute-force dense ground truth for small systems (N <= 8 sites).

The fermion algebra is realized with the Jordan-Wigner encoding
c_j = (prod_{k < j} Z_k) (X_j - i Y_j)/2, site 0 leftmost in the tensor
product, so (X - iY)/2 = [[0, 0], [1, 0]] and every operator matrix is
real.  Basis vector e_0 of a site is the occupied state, e_1 the empty
one.  Everything here is full 2^N dense linear algebra: exact spectra,
ground vectors, partial traces, thermal states, and Schmidt values, used
only as the reference the fast covariance-matrix path is tested against.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .models import QuadraticHamiltonian

SIZE_CAP = 8
DEGENERACY_TOL = 1e-10

_C_SINGLE = np.array([[0.0, 0.0], [1.0, 0.0]])
_Z_SINGLE = np.array([[1.0, 0.0], [0.0, -1.0]])


@dataclass(frozen=True)
class DenseState:
    """Unit vector in the full 2^N space, site 0 = leftmost tensor factor."""

    n_sites: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (2**self.n_sites,):
            raise ValueError("amplitude vector must have length 2^N")
        if abs(np.linalg.norm(amp) - 1.0) > 1e-12:
            raise ValueError("state must be normalized")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)


def _check_cap(n_sites: int) -> None:
    if n_sites > SIZE_CAP:
        raise ValueError(f"dense oracle capped at {SIZE_CAP} sites")


@functools.lru_cache(maxsize=None)
def annihilation_operators(n_sites: int) -> tuple[np.ndarray, ...]:
    """Dense matrices of c_0 .. c_{N-1}; real by construction."""
    _check_cap(n_sites)
    ops = []
    for j in range(n_sites):
        mat = np.array([[1.0]])
        for k in range(n_sites):
            factor = _Z_SINGLE if k < j else (_C_SINGLE if k == j else np.eye(2))
            mat = np.kron(mat, factor)
        mat.setflags(write=False)
        ops.append(mat)
    return tuple(ops)


@functools.lru_cache(maxsize=None)
def majorana_operators(n_sites: int) -> tuple[np.ndarray, ...]:
    """gamma_0..gamma_{N-1}, gamma'_0..gamma'_{N-1} with {g_a, g_b} = delta."""
    cs = annihilation_operators(n_sites)
    xs = [(c + c.T) / math.sqrt(2.0) for c in cs]
    ps = [-1j * (c - c.T) / math.sqrt(2.0) for c in cs]
    ops = tuple(np.asarray(g) for g in xs + ps)
    for g in ops:
        g.setflags(write=False)
    return ops


def jw_hamiltonian(h: QuadraticHamiltonian) -> np.ndarray:
    """Dense matrix of sum A_jk c_j^dag c_k + (1/2) sum B_jk (c_j^dag c_k^dag + c_k c_j)."""
    n = h.n_sites
    _check_cap(n)
    cs = annihilation_operators(n)
    dim = 2**n
    out = np.zeros((dim, dim))
    for j in range(n):
        for k in range(n):
            if h.a[j, k] != 0.0:
                out += h.a[j, k] * (cs[j].T @ cs[k])
            if h.b[j, k] != 0.0:
                out += 0.5 * h.b[j, k] * (cs[j].T @ cs[k].T + cs[k] @ cs[j])
    return (out + out.T) / 2.0


def ground_space(
    hmat: np.ndarray, degeneracy_tol: float = DEGENERACY_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Sorted eigenvalues plus an orthonormal basis of the ground eigenspace."""
    energies, vectors = np.linalg.eigh(hmat)
    d = int(np.count_nonzero(energies - energies[0] < degeneracy_tol))
    return energies, vectors[:, :d]


def dense_ground(h: QuadraticHamiltonian) -> DenseState:
    """Lowest eigenvector (one representative if degenerate)."""
    _, basis = ground_space(jw_hamiltonian(h))
    return DenseState(h.n_sites, basis[:, 0])


def oracle_gap(h: QuadraticHamiltonian) -> float:
    """E_1 - E_0 of the full many-body spectrum."""
    energies = np.linalg.eigvalsh(jw_hamiltonian(h))
    return float(energies[1] - energies[0])


def oracle_overlap(
    h1: QuadraticHamiltonian,
    h2: QuadraticHamiltonian,
    degeneracy_tol: float = DEGENERACY_TOL,
) -> float:
    """|<psi_1|psi_2>|, maximized over ground-space bases when degenerate."""
    if h1.n_sites != h2.n_sites:
        raise ValueError("systems must have equal size")
    _, basis1 = ground_space(jw_hamiltonian(h1), degeneracy_tol)
    _, basis2 = ground_space(jw_hamiltonian(h2), degeneracy_tol)
    svals = np.linalg.svd(basis1.conj().T @ basis2, compute_uv=False)
    return min(1.0, float(svals[0]))


def partial_trace(state: DenseState, keep) -> np.ndarray:
    """Density matrix of the sites in `keep` (any strictly increasing subset)."""
    keep = list(keep)
    comp = [s for s in range(state.n_sites) if s not in keep]
    if len(keep) + len(comp) != state.n_sites or any(
        b <= a for a, b in zip(keep, keep[1:])
    ):
        raise ValueError("keep must be a strictly increasing site subset")
    tensor = state.amplitudes.reshape((2,) * state.n_sites)
    mat = np.transpose(tensor, keep + comp).reshape(2 ** len(keep), 2 ** len(comp))
    return mat @ mat.conj().T


def oracle_reduced_fidelity(
    h_full: QuadraticHamiltonian, h_sub: QuadraticHamiltonian, sites
) -> float:
    """<psi_sub| Tr_complement(|psi><psi|) |psi_sub> for dense ground states."""
    sites = list(sites)
    if h_sub.n_sites != len(sites):
        raise ValueError("subsystem Hamiltonian size must match the site subset")
    rho = partial_trace(dense_ground(h_full), sites)
    psi = dense_ground(h_sub).amplitudes
    return float(np.real(psi.conj() @ rho @ psi))


def oracle_schmidt(h: QuadraticHamiltonian, cut) -> np.ndarray:
    """Schmidt coefficients (squared singular values, descending) across `cut`."""
    cut = list(cut)
    comp = [s for s in range(h.n_sites) if s not in cut]
    state = dense_ground(h)
    tensor = state.amplitudes.reshape((2,) * h.n_sites)
    mat = np.transpose(tensor, cut + comp).reshape(2 ** len(cut), 2 ** len(comp))
    svals = np.linalg.svd(mat, compute_uv=False)
    return svals**2


def thermal_density(h: QuadraticHamiltonian, beta: float) -> np.ndarray:
    """Gibbs state exp(-beta H)/Z, computed from the full eigendecomposition."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    energies, vectors = np.linalg.eigh(jw_hamiltonian(h))
    weights = np.exp(-beta * (energies - energies[0]))
    weights /= weights.sum()
    return (vectors * weights) @ vectors.conj().T


def state_fidelity(psi: DenseState, rho: np.ndarray) -> float:
    """<psi|rho|psi>."""
    amp = psi.amplitudes
    return float(np.real(amp.conj() @ rho @ amp))


def covariance_from_density(rho: np.ndarray, n_sites: int) -> np.ndarray:
    """Gamma[a, b] = i Tr(rho [g_a, g_b]) over the Majorana operator list."""
    ops = majorana_operators(n_sites)
    dim = 2 * n_sites
    g = np.zeros((dim, dim))
    for a in range(dim):
        for b in range(a + 1, dim):
            comm = ops[a] @ ops[b] - ops[b] @ ops[a]
            g[a, b] = np.real(1j * np.trace(rho @ comm))
            g[b, a] = -g[a, b]
    return g


def covariance_from_state(state: DenseState) -> np.ndarray:
    amp = state.amplitudes
    return covariance_from_density(np.outer(amp, amp.conj()), state.n_sites)


SUITE_TOL = 1e-8
# draws whose many-body gap falls below this use bound checks instead of
# equality: dense eigenvectors lose accuracy as ~eps/gap near degeneracy
SUITE_DEGENERACY_TOL = 1e-5


def _schmidt_product_multiset(occupations: np.ndarray) -> np.ndarray:
    """All 2^k products of choosing p or 1-p per mode, descending."""
    values = np.array([1.0])
    for p in occupations:
        values = np.concatenate((values * p, values * (1.0 - p)))
    return np.sort(values)[::-1]


def equivalence_suite(trials: int = 50, max_n: int = 6, seed: int = 7) -> dict:
    """Compare every fast-path quantity against the dense oracle.

    Per family (chain, 2D lattice, global coupling) draws `trials` random
    parameter triples in [-2, 2]^3 with sizes up to max_n (2D uses the
    2x2 and 2x3 lattices) and measures deviations of gap, ground-state
    overlap, reduced-state fidelity, and the Schmidt value multiset.
    Draws where any involved ground space is numerically degenerate check
    the max-over-basis bound for the overlap instead and skip the two
    representative-dependent quantities.

    Returns a dict with per-quantity max deviations, the overall max, and
    the degenerate draw count.
    """
    from .gaussian import (
        canonical_form,
        fidelity_pure_mixed,
        ground_state,
        majorana_coupling,
        overlap_pure,
        reduce,
        spectral_gap,
    )
    from .models import ModelParams, ModelTag, build_model, build_rectangle, prefix_hamiltonian
    from .schmidt import entanglement_spectrum

    rng = np.random.default_rng(seed)
    dev = {"gap": 0.0, "overlap": 0.0, "reduced_fidelity": 0.0, "schmidt": 0.0}
    degenerate_draws = 0

    def draw_hamiltonian(family: str) -> QuadraticHamiltonian:
        mu, t, delta = rng.uniform(-2.0, 2.0, size=3)
        if family == "square2d":
            rows, cols = (2, 2) if rng.integers(2) == 0 else (2, 3)
            return build_rectangle(rows, cols, mu, t, delta)
        n = int(rng.integers(2, max_n + 1))
        tag = ModelTag.KITAEV_CHAIN if family == "kitaev" else ModelTag.GLOBAL_COUPLING
        return build_model(tag, n, ModelParams(mu, t, delta))

    def second_draw_like(h: QuadraticHamiltonian) -> QuadraticHamiltonian:
        mu, t, delta = rng.uniform(-2.0, 2.0, size=3)
        if h.model_tag is ModelTag.SQUARE_LATTICE_2D:
            return build_rectangle(2, h.n_sites // 2, mu, t, delta)
        return build_model(h.model_tag, h.n_sites, ModelParams(mu, t, delta))

    for family in ("kitaev", "square2d", "global"):
        for _ in range(trials):
            h1 = draw_hamiltonian(family)
            h2 = second_draw_like(h1)
            n = h1.n_sites
            cut = list(range(int(rng.integers(1, n))))

            gap1 = oracle_gap(h1)
            gap2 = oracle_gap(h2)
            d1 = canonical_form(majorana_coupling(h1))
            dev["gap"] = max(dev["gap"], abs(gap1 - spectral_gap(d1)))

            h_sub = prefix_hamiltonian(h1, len(cut))
            degenerate = min(gap1, gap2, oracle_gap(h_sub)) < SUITE_DEGENERACY_TOL
            if degenerate:
                degenerate_draws += 1

            g1 = ground_state(h1)
            g2 = ground_state(h2)
            fast_overlap = overlap_pure(g1, g2)
            ref_overlap = oracle_overlap(h1, h2, SUITE_DEGENERACY_TOL)
            if degenerate:
                dev["overlap"] = max(dev["overlap"], fast_overlap - ref_overlap)
            else:
                dev["overlap"] = max(dev["overlap"], abs(fast_overlap - ref_overlap))
                fast_fid = fidelity_pure_mixed(ground_state(h_sub), reduce(g1, cut))
                ref_fid = oracle_reduced_fidelity(h1, h_sub, cut)
                dev["reduced_fidelity"] = max(dev["reduced_fidelity"], abs(fast_fid - ref_fid))
                spectrum = entanglement_spectrum(g1, cut)
                fast_schmidt = _schmidt_product_multiset(spectrum.occupations)
                ref_schmidt = np.zeros_like(fast_schmidt)
                vals = oracle_schmidt(h1, cut)
                ref_schmidt[: vals.shape[0]] = vals
                dev["schmidt"] = max(dev["schmidt"], float(np.abs(fast_schmidt - ref_schmidt).max()))

    return {
        "deviations": dev,
        "max_deviation": max(dev.values()),
        "degenerate_draws": degenerate_draws,
        "trials_per_family": trials,
    }
