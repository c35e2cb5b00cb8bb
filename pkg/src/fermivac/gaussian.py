"""Gaussian-state linear algebra on Majorana covariance matrices.

Conventions: for N sites there are 2N Majorana operators in the order
(gamma_0 .. gamma_{N-1}, gamma'_0 .. gamma'_{N-1}) with
gamma_j = (c_j + c_j^dag)/sqrt(2), gamma'_j = (c_j - c_j^dag)/(sqrt(2) i),
normalized so {gamma_a, gamma_b} = delta_ab.  A state's covariance matrix
is Gamma[a, b] = i <[gamma_a, gamma_b]>, real antisymmetric, pure iff
Gamma^2 = -I.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from .models import QuadraticHamiltonian

ZERO_MODE_TOL = 1e-10
PURITY_TOL = 1e-8
# determinant clamp thresholds for the overlap/fidelity formulas
_NEG_DET_CLAMP = 1e-12
_LOG_UNDERFLOW = -700.0


class Purity(enum.Enum):
    PURE = "pure"
    MIXED = "mixed"


@dataclass(frozen=True)
class MajoranaCoupling:
    """Real antisymmetric coupling M with H = (i/2) sum M[a,b] gamma_a gamma_b + const."""

    dim: int
    m: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.m, dtype=float)
        if m.shape != (self.dim, self.dim) or self.dim % 2:
            raise ValueError("M must be 2N x 2N")
        if not (m == -m.T).all():
            raise ValueError("M must be antisymmetric exactly")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)


@dataclass(frozen=True)
class CanonicalDecomposition:
    """Orthogonal P and mode energies E with M = P^T Omega_E P.

    Omega_E = [[0, diag(E)], [-diag(E), 0]]; E is nonnegative and sorted
    ascending.  zero_mode_flags marks energies below ZERO_MODE_TOL, i.e.
    modes whose filling is numerically degenerate.
    """

    p: np.ndarray
    energies: np.ndarray
    zero_mode_flags: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.energies.shape[0]


@dataclass(frozen=True)
class CovarianceMatrix:
    dim: int
    g: np.ndarray
    purity: Purity

    def __post_init__(self) -> None:
        g = np.asarray(self.g, dtype=float)
        if g.shape != (self.dim, self.dim) or self.dim % 2:
            raise ValueError("Gamma must be 2N x 2N")
        if not (g == -g.T).all():
            raise ValueError("Gamma must be antisymmetric exactly")
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    @property
    def n_sites(self) -> int:
        return self.dim // 2


def _antisymmetrize(m: np.ndarray) -> np.ndarray:
    return (m - m.T) / 2.0


def _omega(n: int) -> np.ndarray:
    omega = np.zeros((2 * n, 2 * n))
    omega[:n, n:] = np.eye(n)
    omega[n:, :n] = -np.eye(n)
    return omega


def majorana_coupling(h: QuadraticHamiltonian) -> MajoranaCoupling:
    """Majorana coupling matrix of a quadratic Hamiltonian.

    For real A, B the result is the block form [[0, C], [-C^T, 0]] with
    C = A - B; antisymmetry is enforced exactly by (M - M^T)/2.
    """
    n = h.n_sites
    c = h.a - h.b
    m = np.zeros((2 * n, 2 * n))
    m[:n, n:] = c
    m[n:, :n] = -c.T
    return MajoranaCoupling(2 * n, _antisymmetrize(m))


def _pfaffian_sign(m: np.ndarray) -> float:
    """Sign of the Pfaffian of a real antisymmetric matrix (0 if singular).

    Uses the identity Pf([[0, C], [-C^T, 0]]) = (-1)^(n(n-1)/2) det(C) when
    the matrix has that exact block structure (always true for
    majorana_coupling output), else a sign-tracked Parlett-Reid elimination.
    """
    dim = m.shape[0]
    if dim % 2:
        return 0.0
    n = dim // 2
    if not m[:n, :n].any() and not m[n:, n:].any():
        sign, _ = np.linalg.slogdet(m[:n, n:])
        parity = -1.0 if (n * (n - 1) // 2) % 2 else 1.0
        return parity * float(sign)
    a = m.copy()
    sign = 1.0
    for k in range(dim - 2):
        piv = k + 1 + int(np.argmax(np.abs(a[k + 1 :, k])))
        if piv != k + 1:
            a[[k + 1, piv]] = a[[piv, k + 1]]
            a[:, [k + 1, piv]] = a[:, [piv, k + 1]]
            sign = -sign
        if a[k + 1, k] == 0.0:
            continue
        f = a[k + 2 :, k] / a[k + 1, k]
        a[k + 2 :, :] -= np.outer(f, a[k + 1, :])
        a[:, k + 2 :] -= np.outer(a[:, k + 1], f)
    for k in range(0, dim, 2):
        s = a[k, k + 1]
        if s == 0.0:
            return 0.0
        sign *= 1.0 if s > 0 else -1.0
    return sign


def canonical_form(m: MajoranaCoupling) -> CanonicalDecomposition:
    """Canonical form M = P^T Omega_E P via the real Schur decomposition.

    The Schur form of an antisymmetric matrix is block diagonal with 2x2
    rotation generators [[0, b], [-b, 0]] and exact 1x1 zeros; each block
    is normalized to b >= 0 (swapping the two basis rows when b < 0) and
    the modes are sorted by energy.  When zero modes are present the
    overall reflection sign of P is aligned with the Pfaffian of M, which
    fixes the degenerate filling choice to the one that continuously
    extends from E_j > 0.

    Raises
    ------
    scipy.linalg.LinAlgError
        If the underlying QR iteration fails to converge.
    """
    dim = m.dim
    n = dim // 2
    t, z = schur(m.m, output="real")
    energies: list[float] = []
    row_pairs: list[tuple[int, int]] = []
    singles: list[int] = []
    i = 0
    while i < dim:
        if i + 1 < dim and t[i + 1, i] != 0.0:
            b = 0.5 * (t[i, i + 1] - t[i + 1, i])
            if b >= 0.0:
                row_pairs.append((i, i + 1))
                energies.append(b)
            else:
                row_pairs.append((i + 1, i))
                energies.append(-b)
            i += 2
        else:
            singles.append(i)
            i += 1
    if len(singles) % 2:
        raise np.linalg.LinAlgError("unpaired real eigenvalue in antisymmetric Schur form")
    # pair the k-th exact-zero column with the (k + half)-th so the zero
    # matrix maps to P = I rather than an interleaving permutation
    half = len(singles) // 2
    for k in range(half):
        row_pairs.append((singles[k], singles[k + half]))
        energies.append(0.0)

    order = np.argsort(np.asarray(energies), kind="stable")
    e = np.asarray([energies[k] for k in order])
    p = np.empty((dim, dim))
    zt = z.T
    for slot, k in enumerate(order):
        r1, r2 = row_pairs[k]
        p[slot] = zt[r1]
        p[slot + n] = zt[r2]

    flags = e < ZERO_MODE_TOL
    if flags.any():
        s_pf = _pfaffian_sign(m.m)
        if s_pf != 0.0:
            parity = -1.0 if (n * (n - 1) // 2) % 2 else 1.0
            target = s_pf * parity
            if float(np.sign(np.linalg.det(p))) != target:
                j = int(np.argmax(flags))
                p[[j, j + n]] = p[[j + n, j]]
    p.setflags(write=False)
    e.setflags(write=False)
    flags.setflags(write=False)
    return CanonicalDecomposition(p, e, flags)


def spectral_gap(d: CanonicalDecomposition) -> float:
    """Lowest mode energy."""
    return float(d.energies.min())


def ground_state_covariance(d: CanonicalDecomposition) -> CovarianceMatrix:
    """Covariance matrix of the state filling every negative-energy mode.

    Gamma = -P^T Omega P with Omega = [[0, I], [-I, 0]]; each canonical
    block then contributes -E_j/2 to the energy.  Unique gapped ground
    state when no zero_mode_flags are set; with flags set the returned
    representative is the deterministic Pfaffian-aligned choice.
    """
    n = d.n_modes
    g = -(d.p.T @ _omega(n) @ d.p)
    return CovarianceMatrix(2 * n, _antisymmetrize(g), Purity.PURE)


def thermal_covariance(d: CanonicalDecomposition, beta: float) -> CovarianceMatrix:
    """Gibbs-state covariance at inverse temperature beta > 0.

    Gamma_beta = -P^T [[0, diag tanh(beta E/2)], [-diag, 0]] P, which
    recovers ground_state_covariance as beta -> infinity and vanishes
    (maximally mixed) as beta -> 0.
    """
    if not (isinstance(beta, (int, float)) and beta > 0):
        raise ValueError("beta must be positive")
    n = d.n_modes
    occ = np.tanh(0.5 * beta * d.energies)
    lam = np.zeros((2 * n, 2 * n))
    lam[:n, n:] = np.diag(occ)
    lam[n:, :n] = -np.diag(occ)
    g = -(d.p.T @ lam @ d.p)
    return CovarianceMatrix(2 * n, _antisymmetrize(g), Purity.MIXED)


def _root_det(g1: np.ndarray, g2: np.ndarray, power: float) -> tuple[float, bool]:
    """det((G1 + G2)/2) ** power with the documented clamping rules.

    Returns (value, clamped) where clamped marks an underflow or a tiny
    negative determinant that was forced to zero.
    """
    s = 0.5 * (g1 + g2)
    sign, logabs = np.linalg.slogdet(s)
    if sign == 0.0:
        return 0.0, False
    if sign < 0.0:
        if logabs <= math.log(_NEG_DET_CLAMP):
            return 0.0, True
        raise ValueError(f"determinant significantly negative (log|det| = {logabs:.3g})")
    if logabs < _LOG_UNDERFLOW:
        return 0.0, True
    return float(math.exp(power * logabs)), False


def _clamp_unit(x: float) -> float:
    return min(1.0, max(0.0, x))


def _overlap_pure_detail(g1: CovarianceMatrix, g2: CovarianceMatrix) -> tuple[float, bool]:
    if g1.dim != g2.dim:
        raise ValueError("dimension mismatch")
    if g1.purity is not Purity.PURE or g2.purity is not Purity.PURE:
        raise ValueError("overlap_pure requires two pure states")
    # opposite fermion parity (sign of Pf(Gamma)) makes the states exactly
    # orthogonal; the determinant formula would turn rounding noise into
    # a spurious value of order eps^(1/4) there
    if _pfaffian_sign(g1.g) * _pfaffian_sign(g2.g) < 0:
        return 0.0, False
    value, clamped = _root_det(g1.g, g2.g, 0.25)
    return _clamp_unit(value), clamped


def overlap_pure(g1: CovarianceMatrix, g2: CovarianceMatrix) -> float:
    """|<psi_1|psi_2>| = det((Gamma_1 + Gamma_2)/2)^(1/4) for pure states.

    Exactly 0 when the states carry opposite fermion parity.
    """
    return _overlap_pure_detail(g1, g2)[0]


def _fidelity_pure_mixed_detail(
    g_pure: CovarianceMatrix, g_mixed: CovarianceMatrix
) -> tuple[float, bool]:
    if g_pure.dim != g_mixed.dim:
        raise ValueError("dimension mismatch")
    if g_pure.purity is not Purity.PURE:
        raise ValueError("first argument must be pure")
    value, clamped = _root_det(g_pure.g, g_mixed.g, 0.5)
    return _clamp_unit(value), clamped


def fidelity_pure_mixed(g_pure: CovarianceMatrix, g_mixed: CovarianceMatrix) -> float:
    """F = <psi|sigma|psi> = det((Gamma_pure + Gamma_mixed)/2)^(1/2).

    Valid when one argument is pure; reduces to overlap_pure**2 when both
    are.
    """
    return _fidelity_pure_mixed_detail(g_pure, g_mixed)[0]


def reduce(g: CovarianceMatrix, sites) -> CovarianceMatrix:
    """Covariance of the reduced state on a strictly increasing site subset."""
    sites = list(sites)
    n = g.n_sites
    if not sites:
        raise ValueError("sites must be nonempty")
    if any(not 0 <= s < n for s in sites):
        raise ValueError("site index out of range")
    if any(b <= a for a, b in zip(sites, sites[1:])):
        raise ValueError("sites must be strictly increasing")
    idx = sites + [s + n for s in sites]
    sub = g.g[np.ix_(idx, idx)]
    k = len(sites)
    purity = Purity.MIXED
    if np.abs(sub @ sub + np.eye(2 * k)).max() < PURITY_TOL:
        purity = Purity.PURE
    return CovarianceMatrix(2 * k, sub, purity)


def product_embed(g_left: CovarianceMatrix, g_right: CovarianceMatrix) -> CovarianceMatrix:
    """Covariance of the tensor product, left sites ordered first."""
    nl, nr = g_left.n_sites, g_right.n_sites
    n = nl + nr
    g = np.zeros((2 * n, 2 * n))
    idx_l = list(range(nl)) + list(range(n, n + nl))
    idx_r = list(range(nl, n)) + list(range(n + nl, 2 * n))
    g[np.ix_(idx_l, idx_l)] = g_left.g
    g[np.ix_(idx_r, idx_r)] = g_right.g
    purity = (
        Purity.PURE
        if g_left.purity is Purity.PURE and g_right.purity is Purity.PURE
        else Purity.MIXED
    )
    return CovarianceMatrix(2 * n, g, purity)


def ground_state(h: QuadraticHamiltonian) -> CovarianceMatrix:
    """Convenience composition: ground-state covariance of a Hamiltonian."""
    return ground_state_covariance(canonical_form(majorana_coupling(h)))
