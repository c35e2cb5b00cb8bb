"""Coupling-matrix builders for the studied quadratic-Hamiltonian families.

Every Hamiltonian here is the bilinear form

    H = sum_jk A[j,k] c_j^dag c_k + (1/2) sum_jk B[j,k] (c_j^dag c_k^dag + c_k c_j)

with A real symmetric and B real antisymmetric, both enforced exactly.
The hermitian-conjugate convention applies to every term including the
on-site one, so a chemical potential mu contributes -2*mu on the diagonal
of A.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class ModelTag(enum.Enum):
    KITAEV_CHAIN = "kitaev"
    SQUARE_LATTICE_2D = "square2d"
    GLOBAL_COUPLING = "global"


@dataclass(frozen=True)
class ModelParams:
    """Couplings (mu, t, delta), dimensionless energy units."""

    mu: float
    t: float
    delta: float

    def __post_init__(self) -> None:
        for name in ("mu", "t", "delta"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValueError(f"parameter {name} must be finite, got {value!r}")


@dataclass(frozen=True)
class QuadraticHamiltonian:
    """Single-particle blocks of a quadratic fermionic Hamiltonian.

    Attributes
    ----------
    n_sites : int
        Number of fermionic modes N.
    a : ndarray
        N x N real symmetric hopping/on-site block.
    b : ndarray
        N x N real antisymmetric pairing block (zero diagonal).
    model_tag : ModelTag
    params : ModelParams
    """

    n_sites: int
    a: np.ndarray
    b: np.ndarray
    model_tag: ModelTag
    params: ModelParams

    def __post_init__(self) -> None:
        if self.n_sites < 1:
            raise ValueError("n_sites must be >= 1")
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        shape = (self.n_sites, self.n_sites)
        if a.shape != shape or b.shape != shape:
            raise ValueError("A and B must be N x N")
        if not (np.isfinite(a).all() and np.isfinite(b).all()):
            raise ValueError("A and B entries must be finite")
        if not (a == a.T).all():
            raise ValueError("A must be symmetric exactly")
        if not (b == -b.T).all():
            raise ValueError("B must be antisymmetric exactly")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


def _empty_blocks(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.zeros((n, n)), np.zeros((n, n))


def _add_bond(a: np.ndarray, b: np.ndarray, p: int, q: int, t: float, delta: float) -> None:
    # p < q required so the pairing sign is fixed by site order
    a[p, q] = a[q, p] = -t
    b[p, q] = -delta
    b[q, p] = delta


def build_kitaev_chain(n_sites: int, mu: float, t: float, delta: float) -> QuadraticHamiltonian:
    """Open chain: on-site -2*mu, nearest-neighbour hopping -t and pairing -delta.

    Parameters
    ----------
    n_sites : int
        Chain length, >= 1.
    mu, t, delta : float
        Chemical potential, hopping, and pairing strengths.
    """
    params = ModelParams(mu, t, delta)
    a, b = _empty_blocks(n_sites)
    np.fill_diagonal(a, -2.0 * mu)
    for j in range(n_sites - 1):
        _add_bond(a, b, j, j + 1, t, delta)
    return QuadraticHamiltonian(n_sites, a, b, ModelTag.KITAEV_CHAIN, params)


def build_rectangle(rows: int, cols: int, mu: float, t: float, delta: float) -> QuadraticHamiltonian:
    """Open rows x cols lattice with row-major site indexing (r, c) -> r*cols + c.

    Bonds carry hopping -t and pairing -delta oriented by index order.
    This is the general form behind ``build_square_lattice`` and also the
    shape of the half blocks used when joining two lattice halves.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    params = ModelParams(mu, t, delta)
    n = rows * cols
    a, b = _empty_blocks(n)
    np.fill_diagonal(a, -2.0 * mu)
    for r in range(rows):
        for c in range(cols):
            p = r * cols + c
            if c + 1 < cols:
                _add_bond(a, b, p, p + 1, t, delta)
            if r + 1 < rows:
                _add_bond(a, b, p, p + cols, t, delta)
    return QuadraticHamiltonian(n, a, b, ModelTag.SQUARE_LATTICE_2D, params)


def build_square_lattice(side: int, mu: float, t: float, delta: float) -> QuadraticHamiltonian:
    """side x side open square lattice; n_sites = side**2."""
    if side < 1:
        raise ValueError("side must be >= 1")
    return build_rectangle(side, side, mu, t, delta)


def build_global(n_sites: int, mu: float, t: float, delta: float) -> QuadraticHamiltonian:
    """All-to-all model: every ordered pair is coupled.

    A has -2*mu on the diagonal and +t off the diagonal; B[i, j] = +delta
    for i < j, the sign set by the fermion ordering.
    """
    params = ModelParams(mu, t, delta)
    n = n_sites
    if n < 1:
        raise ValueError("n_sites must be >= 1")
    a = np.full((n, n), float(t))
    np.fill_diagonal(a, -2.0 * mu)
    b = np.triu(np.full((n, n), float(delta)), k=1)
    b = b - b.T
    return QuadraticHamiltonian(n, a, b, ModelTag.GLOBAL_COUPLING, params)


_BUILDERS = {
    ModelTag.KITAEV_CHAIN: build_kitaev_chain,
    ModelTag.GLOBAL_COUPLING: build_global,
}


def build_model(tag: ModelTag, n_sites: int, params: ModelParams) -> QuadraticHamiltonian:
    """Build any model family at a total site count.

    For the 2D family n_sites must be a perfect square.
    """
    if tag is ModelTag.SQUARE_LATTICE_2D:
        side = math.isqrt(n_sites)
        if side * side != n_sites:
            raise ValueError(f"2D model needs a perfect-square site count, got {n_sites}")
        return build_square_lattice(side, params.mu, params.t, params.delta)
    return _BUILDERS[tag](n_sites, params.mu, params.t, params.delta)


def prefix_hamiltonian(h: QuadraticHamiltonian, n: int) -> QuadraticHamiltonian:
    """Restriction of ``h`` to its first ``n`` sites (leading principal blocks).

    For the chain and global families this equals the same model built at
    size n; for the lattice it is the partially grown shape obtained by
    keeping the first n row-major sites.
    """
    if not 1 <= n <= h.n_sites:
        raise ValueError(f"prefix size {n} out of range [1, {h.n_sites}]")
    return QuadraticHamiltonian(
        n,
        h.a[:n, :n].copy(),
        h.b[:n, :n].copy(),
        h.model_tag,
        h.params,
    )
