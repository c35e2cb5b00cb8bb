"""Growth schemes, overlap series, scaling fits, and gate-cost estimates.

Two preparation schemes are modeled.  Site-by-site growth extends the
ground state one site at a time; the step quality eta_n is the overlap of
the best (n+1)-site extension, i.e. the square root of the pure-mixed
fidelity between the n-site ground state and the reduced (n+1)-site one.
Half-half joining glues two ground-state copies on n/2 sites and measures
their overlap with the n-site ground state.  Costs follow the gate-count
scale prefactor * size / (gap * eta) * ln(1/epsilon) per step.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import svdvals

from .gaussian import (
    CovarianceMatrix,
    Purity,
    canonical_form,
    fidelity_pure_mixed,
    ground_state_covariance,
    majorana_coupling,
    overlap_pure,
    product_embed,
    reduce,
    spectral_gap,
)
from .models import (
    ModelParams,
    ModelTag,
    QuadraticHamiltonian,
    build_model,
    build_rectangle,
    prefix_hamiltonian,
)
from .schmidt import entanglement_spectrum, largest_schmidt

COST_FLOOR = 1e-14
CONSTANT_TAIL_TOL = 0.02
AMBIGUOUS_R2_TOL = 0.01
_PIVMIN = 1e-305
_CHAIN_TOL = 1e-9


class GrowthScheme(enum.Enum):
    SITE_BY_SITE = "site_by_site"
    HALF_HALF = "half_half"


@dataclass(frozen=True)
class GrowthSeries:
    """Aligned per-step records: step i prepares sizes[i] from step_sources[i].

    gaps[i] is the spectral gap of the prepared (target) Hamiltonian,
    overlaps[i] the step overlap eta, lambda1s[i] the largest Schmidt
    coefficient of the target ground state across the step's cut, and
    degenerate_flags[i] marks steps whose source or target canonical form
    contained a zero mode (the prepared state is then one representative
    of a degenerate space).
    """

    model_tag: ModelTag
    params: ModelParams
    scheme: GrowthScheme
    sizes: tuple[int, ...]
    step_sources: tuple[int, ...]
    gaps: np.ndarray
    overlaps: np.ndarray
    lambda1s: np.ndarray
    degenerate_flags: np.ndarray

    def __post_init__(self) -> None:
        k = len(self.sizes)
        arrays = {}
        for name in ("gaps", "overlaps", "lambda1s", "degenerate_flags"):
            arr = np.asarray(getattr(self, name))
            if arr.shape != (k,):
                raise ValueError(f"{name} must align with sizes")
            arr.setflags(write=False)
            arrays[name] = arr
        if len(self.step_sources) != k:
            raise ValueError("step_sources must align with sizes")
        if k and arrays["gaps"].min() < 0:
            raise ValueError("gaps must be nonnegative")
        eta = arrays["overlaps"]
        if k and (eta.min() < 0 or eta.max() > 1):
            raise ValueError("overlaps must lie in [0, 1]")
        if k and (eta**2 > arrays["lambda1s"] + _CHAIN_TOL).any():
            raise ValueError("eta^2 must not exceed the Schmidt ceiling")
        for name, arr in arrays.items():
            object.__setattr__(self, name, arr)

    @property
    def step_targets(self) -> tuple[int, ...]:
        return self.sizes


@dataclass(frozen=True)
class CostEstimate:
    total_cost: float
    per_step_costs: tuple[float, ...]
    depth_cost: float
    epsilon: float
    constant_prefactor: float


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float


@dataclass(frozen=True)
class ScalingStudy:
    """Per-size table plus least-squares fits of ln(gap) and a decay label.

    columns always holds "gap"; other requested quantities may contain NaN
    where undefined (eta_half at odd sizes, eta_site/lambda1 at size 1).
    classification is one of constant/polynomial/exponential/ambiguous.
    """

    model_tag: ModelTag
    params: ModelParams
    sizes: tuple[int, ...]
    columns: dict[str, np.ndarray]
    loglog: FitResult | None
    semilog: FitResult | None
    classification: str


def vacuum_covariance(n_sites: int) -> CovarianceMatrix:
    """Covariance of the all-empty product state (every Gamma block -1)."""
    g = np.zeros((2 * n_sites, 2 * n_sites))
    for j in range(n_sites):
        g[j, n_sites + j] = -1.0
        g[n_sites + j, j] = 1.0
    return CovarianceMatrix(2 * n_sites, g, Purity.PURE)


def _gk_negcount(c: np.ndarray, x: float) -> int:
    """Number of Golub-Kahan tridiagonal eigenvalues below x (Sturm count)."""
    count = 0
    d = -x
    if abs(d) < _PIVMIN:
        d = -_PIVMIN
    if d < 0:
        count += 1
    for ck in c:
        d = -x - (ck * ck) / d
        if abs(d) < _PIVMIN:
            d = -_PIVMIN
        if d < 0:
            count += 1
    return count


def _bidiagonal_min_singular_value(diag: np.ndarray, off: np.ndarray, rel: float = 1e-14) -> float:
    """Smallest singular value of a bidiagonal matrix by Sturm bisection.

    Works at full relative precision even when the value is far below
    eps * sigma_max, where a dense SVD bottoms out.
    """
    n = diag.shape[0]
    c = np.empty(2 * n - 1)
    c[0::2] = np.abs(diag)
    c[1::2] = np.abs(off)
    hi = float(c.max()) * 2.0
    if hi == 0.0:
        return 0.0
    lo = 0.0
    while hi - lo > rel * hi:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if _gk_negcount(c, mid) - n >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def hamiltonian_gap(h: QuadraticHamiltonian) -> float:
    """Lowest mode energy sigma_min(A - B), without a full canonical form.

    Exactly bidiagonal couplings take the Sturm bisection path, which
    resolves exponentially small gaps; anything else falls back to dense
    singular values.
    """
    c = h.a - h.b
    if h.n_sites == 1:
        return abs(float(c[0, 0]))
    main = np.diag(c).copy()
    if not np.triu(c, 1).any() and not np.tril(c, -2).any():
        return _bidiagonal_min_singular_value(main, np.diag(c, -1).copy())
    if not np.tril(c, -1).any() and not np.triu(c, 2).any():
        return _bidiagonal_min_singular_value(main, np.diag(c, 1).copy())
    return float(svdvals(c)[-1])


def _ground_with_flags(h: QuadraticHamiltonian) -> tuple[CovarianceMatrix, float, bool]:
    d = canonical_form(majorana_coupling(h))
    return ground_state_covariance(d), spectral_gap(d), bool(d.zero_mode_flags.any())


def _site_step_plan(
    tag: ModelTag, params: ModelParams, n0: int, n_max: int
) -> list[tuple[QuadraticHamiltonian, QuadraticHamiltonian]]:
    """(source H, target H) per step; 2D steps are square corner completions."""
    if tag is ModelTag.SQUARE_LATTICE_2D:
        steps = []
        side = 2
        while side * side <= n_max:
            if side * side > n0:
                target = build_model(tag, side * side, params)
                steps.append((prefix_hamiltonian(target, side * side - 1), target))
            side += 1
        if not steps:
            raise ValueError("no complete squares in (n0, n_max]")
        return steps
    full = build_model(tag, n_max, params)
    return [
        (prefix_hamiltonian(full, n), prefix_hamiltonian(full, n + 1)) for n in range(n0, n_max)
    ]


def site_by_site_series(
    tag: ModelTag, params: ModelParams, n0: int, n_max: int
) -> GrowthSeries:
    """Grow from n0 to n_max one site at a time, recording each step.

    Step at target size n+1: eta = sqrt(fidelity of the n-site ground
    state against the reduced target state), gap of the target, and the
    target's Schmidt ceiling across the first-n-sites cut.  For the 2D
    lattice only the corner completions of full squares are recorded.
    """
    if not 1 <= n0 < n_max:
        raise ValueError("need 1 <= n0 < n_max")
    sizes, sources, gaps, etas, lams, flags = [], [], [], [], [], []
    cache: dict[int, tuple[CovarianceMatrix, float, bool]] = {}
    for h_src, h_tgt in _site_step_plan(tag, params, n0, n_max):
        if h_src.n_sites not in cache:
            cache[h_src.n_sites] = _ground_with_flags(h_src)
        g_src, _, f_src = cache[h_src.n_sites]
        g_tgt, gap_tgt, f_tgt = _ground_with_flags(h_tgt)
        cache[h_tgt.n_sites] = (g_tgt, gap_tgt, f_tgt)
        cut = range(h_src.n_sites)
        eta = math.sqrt(fidelity_pure_mixed(g_src, reduce(g_tgt, cut)))
        lam = largest_schmidt(entanglement_spectrum(g_tgt, cut))
        sizes.append(h_tgt.n_sites)
        sources.append(h_src.n_sites)
        gaps.append(gap_tgt)
        etas.append(eta)
        lams.append(lam)
        flags.append(f_src or f_tgt)
    return GrowthSeries(
        tag,
        params,
        GrowthScheme.SITE_BY_SITE,
        tuple(sizes),
        tuple(sources),
        np.asarray(gaps),
        np.asarray(etas),
        np.asarray(lams),
        np.asarray(flags, dtype=bool),
    )


def _half_pair(
    tag: ModelTag, params: ModelParams, n: int
) -> tuple[QuadraticHamiltonian, QuadraticHamiltonian]:
    """(half H, target H) for a join at even size n."""
    if tag is ModelTag.SQUARE_LATTICE_2D:
        side = math.isqrt(n)
        return build_rectangle(side // 2, side, params.mu, params.t, params.delta), build_model(
            tag, n, params
        )
    target = build_model(tag, n, params)
    return prefix_hamiltonian(target, n // 2), target


def half_half_series(tag: ModelTag, params: ModelParams, n_max: int) -> GrowthSeries:
    """Join two half-system ground states at every even size up to n_max.

    eta = |<g_half x g_half | g_full>|.  The 1D and global halves are the
    model on the first n/2 sites; the 2D halves are the two (side/2) x side
    row blocks of an even-sided square, which are contiguous in row-major
    indexing so the product embedding preserves site order.
    """
    if n_max < 2 or n_max % 2:
        raise ValueError("n_max must be even and >= 2")
    if tag is ModelTag.SQUARE_LATTICE_2D:
        targets = [s * s for s in range(2, math.isqrt(n_max) + 1, 2)]
        if not targets:
            raise ValueError("no even-sided squares up to n_max")
    else:
        targets = list(range(2, n_max + 1, 2))
    sizes, sources, gaps, etas, lams, flags = [], [], [], [], [], []
    for n in targets:
        h_half, h_tgt = _half_pair(tag, params, n)
        g_half, _, f_half = _ground_with_flags(h_half)
        g_tgt, gap_tgt, f_tgt = _ground_with_flags(h_tgt)
        eta = overlap_pure(product_embed(g_half, g_half), g_tgt)
        lam = largest_schmidt(entanglement_spectrum(g_tgt, range(n // 2)))
        sizes.append(n)
        sources.append(n // 2)
        gaps.append(gap_tgt)
        etas.append(eta)
        lams.append(lam)
        flags.append(f_half or f_tgt)
    return GrowthSeries(
        tag,
        params,
        GrowthScheme.HALF_HALF,
        tuple(sizes),
        tuple(sources),
        np.asarray(gaps),
        np.asarray(etas),
        np.asarray(lams),
        np.asarray(flags, dtype=bool),
    )


def site_probe_eta(tag: ModelTag, params: ModelParams, target_size: int) -> float:
    """Diagnostic: overlap when the added site is a plain vacuum probe.

    Always <= the optimal step overlap recorded by site_by_site_series.
    """
    h_tgt = build_model(tag, target_size, params)
    h_src = prefix_hamiltonian(h_tgt, target_size - 1)
    g_src, _, _ = _ground_with_flags(h_src)
    g_tgt, _, _ = _ground_with_flags(h_tgt)
    return overlap_pure(product_embed(g_src, vacuum_covariance(1)), g_tgt)


def _step_cost(size: int, gap: float, eta: float, lf: float, prefactor: float) -> float:
    if gap < COST_FLOOR or eta < COST_FLOOR:
        return math.inf
    return prefactor * size * lf / (gap * eta)


def complexity_estimate(
    series: GrowthSeries, epsilon: float, prefactor: float = 1.0
) -> CostEstimate:
    """Gate-count scale prefactor * size / (gap * eta) * ln(1/epsilon).

    Sequential scheme: one cost per recorded step, total = depth = sum.
    Recursive scheme: the join tree is rebuilt from the series range
    (even sizes split in half, odd sizes add their last site after the
    even remainder); per_step_costs holds one entry per join size
    (count * cost, ascending), total sums all joins, and depth_cost sums
    one join per level of the critical path.  A gap or eta below 1e-14
    makes the affected costs infinite.

    Raises
    ------
    ValueError
        If epsilon is outside (0, 1], prefactor is negative, or the
        recursion needs a join size the series does not contain.
    """
    if not 0.0 < epsilon <= 1.0:
        raise ValueError("epsilon must be in (0, 1]")
    if not prefactor >= 0.0:
        raise ValueError("prefactor must be nonnegative")
    lf = -math.log(epsilon)
    by_size = {
        s: (float(series.gaps[i]), float(series.overlaps[i])) for i, s in enumerate(series.sizes)
    }

    def cost_at(size: int) -> float:
        if size not in by_size:
            raise ValueError(f"series has no row for join size {size}")
        gap, eta = by_size[size]
        return _step_cost(size, gap, eta, lf, prefactor)

    if series.scheme is GrowthScheme.SITE_BY_SITE:
        per_step = tuple(cost_at(s) for s in series.sizes)
        total = float(sum(per_step))
        return CostEstimate(total, per_step, total, epsilon, prefactor)

    base = min(series.step_sources) if series.step_sources else 1
    top = max(series.sizes)
    counts: dict[int, int] = {}
    stack = [(top, 1)]
    while stack:
        n, mult = stack.pop()
        if n <= base:
            continue
        counts[n] = counts.get(n, 0) + mult
        if n % 2 == 0 and n // 2 >= base:
            stack.append((n // 2, 2 * mult))
        else:
            stack.append((n - 1, mult))
    per_step = tuple(counts[s] * cost_at(s) for s in sorted(counts))
    total = float(sum(per_step))
    depth = 0.0
    n = top
    while n > base:
        depth += cost_at(n)
        n = n // 2 if (n % 2 == 0 and n // 2 >= base) else n - 1
    return CostEstimate(total, per_step, depth, epsilon, prefactor)


def _linear_fit(x: np.ndarray, y: np.ndarray) -> FitResult:
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    ss_res = float(residual @ residual)
    centered = y - y.mean()
    ss_tot = float(centered @ centered)
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(float(slope), float(intercept), r2)


_SCALING_QUANTITIES = ("gap", "eta_site", "eta_half", "lambda1")


def scaling_study(
    tag: ModelTag,
    params: ModelParams,
    sizes,
    quantities=("gap",),
) -> ScalingStudy:
    """Tabulate quantities against size and classify how the gap decays.

    The gap column is always computed.  Classification: constant when the
    gap at the largest size agrees with the one nearest half that size to
    within 2 percent; otherwise ln(gap) is fit against ln(n) (polynomial)
    and against n (exponential) over the positive-gap sizes and the better
    R^2 wins, with "ambiguous" when they differ by less than 0.01.
    """
    sizes = tuple(int(n) for n in sizes)
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be nonempty and strictly ascending")
    for q in quantities:
        if q not in _SCALING_QUANTITIES:
            raise ValueError(f"unknown quantity {q!r}")

    columns: dict[str, np.ndarray] = {}
    gaps = np.array([hamiltonian_gap(build_model(tag, n, params)) for n in sizes])
    columns["gap"] = gaps
    need_state = [q for q in quantities if q != "gap"]
    if need_state:
        cols = {q: np.full(len(sizes), np.nan) for q in need_state}
        for i, n in enumerate(sizes):
            if "eta_site" in cols and n >= 2:
                if tag is not ModelTag.SQUARE_LATTICE_2D or math.isqrt(n) ** 2 == n:
                    h_tgt = build_model(tag, n, params)
                    h_src = prefix_hamiltonian(h_tgt, n - 1)
                    g_src, _, _ = _ground_with_flags(h_src)
                    g_tgt, _, _ = _ground_with_flags(h_tgt)
                    fid = fidelity_pure_mixed(g_src, reduce(g_tgt, range(n - 1)))
                    cols["eta_site"][i] = math.sqrt(fid)
            if "eta_half" in cols and n % 2 == 0:
                if tag is not ModelTag.SQUARE_LATTICE_2D or math.isqrt(n) % 2 == 0:
                    h_half, h_tgt = _half_pair(tag, params, n)
                    g_half, _, _ = _ground_with_flags(h_half)
                    g_tgt, _, _ = _ground_with_flags(h_tgt)
                    cols["eta_half"][i] = overlap_pure(product_embed(g_half, g_half), g_tgt)
            if "lambda1" in cols and n >= 2:
                g_tgt, _, _ = _ground_with_flags(build_model(tag, n, params))
                spectrum = entanglement_spectrum(g_tgt, range(n // 2))
                cols["lambda1"][i] = largest_schmidt(spectrum)
        for q in need_state:
            cols[q].setflags(write=False)
            columns[q] = cols[q]
    gaps.setflags(write=False)

    positive = gaps > 0
    n_arr = np.asarray(sizes, dtype=float)
    loglog = semilog = None
    classification = "ambiguous"
    if positive.sum() >= 3:
        logg = np.log(gaps[positive])
        loglog = _linear_fit(np.log(n_arr[positive]), logg)
        semilog = _linear_fit(n_arr[positive], logg)
        last = len(sizes) - 1
        mid = int(np.argmin(np.abs(n_arr - n_arr[last] / 2.0)))
        if gaps[last] > 0 and gaps[mid] > 0 and (
            abs(gaps[last] - gaps[mid]) / gaps[last] < CONSTANT_TAIL_TOL
        ):
            classification = "constant"
        elif abs(loglog.r_squared - semilog.r_squared) < AMBIGUOUS_R2_TOL:
            classification = "ambiguous"
        elif loglog.r_squared > semilog.r_squared:
            classification = "polynomial"
        else:
            classification = "exponential"
    return ScalingStudy(tag, params, sizes, columns, loglog, semilog, classification)
