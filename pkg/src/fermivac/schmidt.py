"""Entanglement spectra of pure Gaussian states across a site cut.

A pure Gaussian state reduced to a subsystem L has canonical correlation
values nu_j in [0, 1]; each mode is a two-outcome factor with occupation
p_j = (1 + nu_j)/2, and the Schmidt coefficients across the cut are the
product distribution over the modes.  All entropies use natural log.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import CovarianceMatrix, Purity, reduce

NU_CLAMP_TOL = 1e-10
DEFAULT_RANK_TOL = 1e-10


@dataclass(frozen=True)
class EntanglementSpectrum:
    """Canonical correlations nu_j (ascending) of a cut, with occupations."""

    nus: np.ndarray
    occupations: np.ndarray
    cut: tuple[int, ...]

    def __post_init__(self) -> None:
        nus = np.asarray(self.nus, dtype=float)
        occ = np.asarray(self.occupations, dtype=float)
        if nus.shape != (len(self.cut),) or occ.shape != nus.shape:
            raise ValueError("one nu and one occupation per cut site")
        nus.setflags(write=False)
        occ.setflags(write=False)
        object.__setattr__(self, "nus", nus)
        object.__setattr__(self, "occupations", occ)


def entanglement_spectrum(g: CovarianceMatrix, cut) -> EntanglementSpectrum:
    """Spectrum of the reduced state on `cut` (proper nonempty site subset).

    The eigenvalues of i * Gamma_reduced come in pairs +-i nu_j; the
    nonnegative members are returned ascending, clamped into [0, 1].
    """
    if g.purity is not Purity.PURE:
        raise ValueError("entanglement spectrum requires a pure state")
    cut = tuple(cut)
    if len(cut) >= g.n_sites:
        raise ValueError("cut must be a proper subset of the sites")
    sub = reduce(g, cut)
    evals = np.linalg.eigvalsh(1j * sub.g)
    nus = np.sort(np.abs(evals))[::2]
    if nus.size and (nus[-1] > 1.0 + NU_CLAMP_TOL):
        raise ValueError(f"correlation value {nus[-1]} outside [0, 1]")
    nus = np.clip(nus, 0.0, 1.0)
    return EntanglementSpectrum(nus, (1.0 + nus) / 2.0, cut)


def largest_schmidt(s: EntanglementSpectrum) -> float:
    """Largest Schmidt coefficient lambda_1 = prod_j max(p_j, 1 - p_j)."""
    p = s.occupations
    return float(np.prod(np.maximum(p, 1.0 - p)))


def renyi_entropy(s: EntanglementSpectrum, k: float, rank_tol: float = DEFAULT_RANK_TOL) -> float:
    """Renyi entropy S_k of the Schmidt distribution.

    k = 0 gives ln of the Schmidt rank (modes with nu_j >= 1 - rank_tol do
    not contribute), k = 1 the von Neumann entropy, k = inf the min-entropy
    -ln(lambda_1); other k >= 0 use (1/(1-k)) sum ln(p^k + (1-p)^k).
    """
    if not k >= 0:
        raise ValueError("k must be nonnegative")
    p = s.occupations
    if k == 0:
        return float(np.count_nonzero(s.nus < 1.0 - rank_tol)) * math.log(2.0)
    if math.isinf(k):
        return -math.log(largest_schmidt(s))
    if k == 1:
        q = 1.0 - p
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = -np.where(p > 0, p * np.log(np.where(p > 0, p, 1.0)), 0.0) - np.where(
                q > 0, q * np.log(np.where(q > 0, q, 1.0)), 0.0
            )
        return float(terms.sum())
    return float(np.sum(np.log(p**k + (1.0 - p) ** k)) / (1.0 - k))
