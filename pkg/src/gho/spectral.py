"""Grid diagonalization of the position-dependent-mass Hamiltonian.

This is the independent check on the ladder-operator results: the operator
-1/2 d/dx (1/m) d/dx + V_eff is discretized in symmetric flux form (1/m at the
half-points, Dirichlet walls), its lowest eigenvalues are compared with n + 1/2,
and the closed-form states are tested for residuals, orthonormality and ladder
matrix elements.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal
from scipy.optimize import brentq

from .errors import ConvergenceFailure, GridTooCoarse, InadmissibleRange, InvalidParam, OutOfDomain
from .grid import Grid, WaveFunction, trapezoid
from .mass import (
    SAMPLE_WINDOW,
    MassSpec,
    MuMap,
    RangeClass,
    admissible_for_orthonormal_family,
    classify_range,
    mu_map,
)
from .oscillator import (
    OrderingParams,
    apply_lowering,
    apply_raising,
    effective_potential,
    eigenfunctions,
    flux_weights,
    gho_ordering,
    ordering_correction,
)

DEFAULT_GRID_N = 2401
MIN_SPECTRAL_POINTS = 200
MU_EDGE = 8.0
MASS_FLOOR = 1.0e-8
# |ordering correction| allowed at an edge, as a fraction of the local kinetic scale (1/m)/h^2
EDGE_POTENTIAL_RATIO = 0.25


def default_grid_n() -> int:
    raw = os.environ.get("GHO_DEFAULT_GRID_N")
    if not raw:
        return DEFAULT_GRID_N
    try:
        n = int(raw)
    except ValueError:
        raise InvalidParam(f"GHO_DEFAULT_GRID_N={raw!r} is not an integer") from None
    if n < MIN_SPECTRAL_POINTS:
        raise InvalidParam(f"GHO_DEFAULT_GRID_N must be >= {MIN_SPECTRAL_POINTS}")
    return n


@dataclass(frozen=True, eq=False)
class DiscreteHamiltonian:
    """Symmetric tridiagonal matrix; the off-diagonal is stored once."""

    grid: Grid
    diag: np.ndarray
    offdiag: np.ndarray
    mass_ref: MassSpec
    ordering: OrderingParams

    def matvec(self, v) -> np.ndarray:
        v = np.asarray(v)
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def discretize(spec: MassSpec, ordering: OrderingParams, grid: Grid, mumap: Optional[MuMap] = None,
               min_points: int = MIN_SPECTRAL_POINTS) -> DiscreteHamiltonian:
    """Row i: (w[i-1/2] + w[i+1/2]) / (2h^2) + V_eff(x_i) on the diagonal,
    -w[i+1/2] / (2h^2) off it, with w = 1/m at the half-points."""
    if grid.n < min_points:
        raise GridTooCoarse(f"spectral grid needs >= {min_points} points, got {grid.n}")
    if grid.x_lo < spec.domain.lo or grid.x_hi > spec.domain.hi:
        raise OutOfDomain(f"grid [{grid.x_lo}, {grid.x_hi}] leaves the mass domain")
    mumap = mumap or mu_map(spec)
    x = grid.x
    w = flux_weights(spec, grid)
    c = 1.0 / (2.0 * grid.h**2)
    diag = c * (w[:-1] + w[1:]) + effective_potential(spec, ordering, mumap, x)
    offdiag = -c * w[1:-1]
    if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(offdiag))):
        raise InvalidParam("discretized Hamiltonian has non-finite entries; shrink the grid")
    return DiscreteHamiltonian(grid, diag, offdiag, spec, ordering)


def lowest_eigenvalues(H: DiscreteHamiltonian, k: int) -> np.ndarray:
    """The k smallest eigenvalues, ascending (LAPACK bisection on Sturm sequences)."""
    n = H.diag.size
    if not 1 <= k <= n:
        raise InvalidParam(f"k must be in [1, {n}]")
    try:
        vals = eigh_tridiagonal(H.diag, H.offdiag, eigvals_only=True, select="i",
                                select_range=(0, k - 1), lapack_driver="stebz")
    except LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from None
    return np.sort(vals)


def sturm_count(H: DiscreteHamiltonian, sigma: float) -> int:
    """Number of eigenvalues strictly below ``sigma`` (LDL^T inertia)."""
    d = H.diag
    e2 = H.offdiag**2
    tiny = np.finfo(float).tiny
    count = 0
    q = d[0] - sigma
    for i in range(d.size):
        if i:
            q = d[i] - sigma - e2[i - 1] / q
        if q == 0.0:
            q = -tiny
        if q < 0.0:
            count += 1
    return count


# -- grid policy ----------------------------------------------------------------

def _edge_for_mu(mumap: MuMap, lo: float, hi: float, target: float) -> Optional[float]:
    """x in [lo, hi] with mu(x) = target, or None if mu does not cross it there."""
    with np.errstate(all="ignore"):
        f_lo = float(mumap.mu(lo)) - target
        f_hi = float(mumap.mu(hi)) - target
    if not (f_lo < 0.0 <= f_hi or f_lo <= 0.0 < f_hi):
        return None
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    with np.errstate(all="ignore"):
        return brentq(lambda t: float(mumap.mu(t)) - target, lo, hi, xtol=1e-12, rtol=1e-12)


def _heaviest_point(spec: MassSpec, lo: float, hi: float) -> float:
    """Sampled argmax of m on [lo, hi] (clipped to the positivity window)."""
    ts = np.linspace(max(lo, -SAMPLE_WINDOW), min(hi, SAMPLE_WINDOW), 4001)
    with np.errstate(all="ignore"):
        m = np.nan_to_num(spec(ts), nan=-1.0)
    return float(ts[int(np.argmax(m))])


def _floor_edge(spec: MassSpec, inner: float, outer: float, floor: float) -> float:
    """Move ``outer`` toward ``inner`` until m >= floor (m assumed monotone there)."""
    with np.errstate(all="ignore"):
        if float(spec(outer)) >= floor:
            return outer
        if float(spec(inner)) < floor:
            return inner
    ts = np.linspace(inner, outer, 2001)
    with np.errstate(all="ignore"):
        ok = spec(ts) >= floor
    last = int(np.flatnonzero(ok).max())
    a, b = ts[last], ts[min(last + 1, ts.size - 1)]
    if a == b:
        return a
    return brentq(lambda t: math.log(float(spec(t))) - math.log(floor), a, b, xtol=1e-12)


def _edge_potential_guard(spec: MassSpec, ordering: OrderingParams, lo: float, hi: float, n: int,
                          lo_free: bool, hi_free: bool) -> tuple[float, float]:
    """Pull free edges inward while the ordering correction outweighs the kinetic scale.

    Strongly attractive ordering terms (e.g. x**-4 near the origin of a power-law
    mass) otherwise produce spurious bound states in the first grid cells.
    """
    for _ in range(8):
        h = (hi - lo) / (n - 1)

        def excess(t):
            corr = abs(float(ordering_correction(spec, ordering, t)))
            return corr - EDGE_POTENTIAL_RATIO / (float(spec(t)) * h * h)

        moved = False
        mid = 0.5 * (lo + hi)
        for side in ("lo", "hi"):
            edge = lo if side == "lo" else hi
            if not (lo_free if side == "lo" else hi_free) or excess(edge) <= 0.0:
                continue
            if excess(mid) > 0.0:
                continue
            new = brentq(excess, edge, mid, xtol=1e-12)
            if side == "lo":
                lo = new
            else:
                hi = new
            moved = True
        if not moved:
            break
    return lo, hi


def auto_grid(spec: MassSpec, mumap: MuMap, n: Optional[int] = None, ordering: Optional[OrderingParams] = None,
              x_lo: Optional[float] = None, x_hi: Optional[float] = None,
              mu_edge: float = MU_EDGE, mass_floor: float = MASS_FLOOR) -> Grid:
    """Grid reaching |mu| >= mu_edge at both ends, or the domain limit.

    A side where |mu| cannot reach ``mu_edge`` stops where m falls below
    ``mass_floor``; explicit ``x_lo``/``x_hi`` override the search.
    """
    n = default_grid_n() if n is None else int(n)
    ordering = ordering or gho_ordering()
    dom = spec.domain
    lo_free = hi_free = False
    if x_hi is None:
        x_hi = _edge_for_mu(mumap, dom.lo, dom.hi, mu_edge)
        if x_hi is None:
            x_hi = dom.hi
            hi_free = True
    if x_lo is None:
        x_lo = _edge_for_mu(mumap, dom.lo, dom.hi, -mu_edge)
        if x_lo is None:
            x_lo = dom.lo
            lo_free = True
    if lo_free or hi_free:
        ref = _heaviest_point(spec, x_lo, x_hi)
        if hi_free:
            x_hi = _floor_edge(spec, ref, x_hi, mass_floor)
        if lo_free:
            x_lo = _floor_edge(spec, ref, x_lo, mass_floor)
    if not x_lo < x_hi:
        raise InvalidParam(f"empty grid interval [{x_lo}, {x_hi}]")
    x_lo, x_hi = _edge_potential_guard(spec, ordering, x_lo, x_hi, n, lo_free, hi_free)
    return Grid(x_lo, x_hi, n)


# -- state-level checks -------------------------------------------------------------

def _family(spec, n_max, grid, mumap=None):
    mumap = mumap or mu_map(spec)
    rc = classify_range(mumap)
    return mumap, rc, eigenfunctions(spec, mumap, rc, n_max, grid)


def eigen_residual(spec: MassSpec, ordering: OrderingParams, n: int, grid: Grid,
                   H: Optional[DiscreteHamiltonian] = None, mumap: Optional[MuMap] = None) -> float:
    """||(H - (n+1/2)) psi_n|| / ||psi_n|| over rows 1..N-2."""
    mumap, rc, states = _family(spec, n, grid, mumap)
    H = H or discretize(spec, ordering, grid, mumap, min_points=9)
    psi = states[n].values.real
    r = H.matvec(psi) - (n + 0.5) * psi
    return float(np.linalg.norm(r[1:-1]) / np.linalg.norm(psi[1:-1]))


def _overlaps(states: list[WaveFunction], others: list[WaveFunction], h: float) -> np.ndarray:
    a = np.array([s.values for s in states])
    b = np.array([s.values for s in others])
    return np.real(trapezoid(np.conj(a)[:, None, :] * b[None, :, :], h))


def gram_matrix(spec: MassSpec, n_max: int, grid: Grid, mumap: Optional[MuMap] = None) -> np.ndarray:
    """G[n, m] = int psi_n psi_m dx by the trapezoid rule, n, m <= n_max."""
    if n_max > 12:
        raise InvalidParam("gram_matrix supports n_max <= 12")
    _, _, states = _family(spec, n_max, grid, mumap)
    return _overlaps(states, states, grid.h)


def ladder_matrix_elements(spec: MassSpec, n_max: int, grid: Grid,
                           mumap: Optional[MuMap] = None) -> tuple[np.ndarray, np.ndarray]:
    """(<n|A+|n'>, <n|A|n'>) for n, n' <= n_max by quadrature of psi_n (A psi_n')."""
    if n_max > 8:
        raise InvalidParam("ladder_matrix_elements supports n_max <= 8")
    mumap, rc, states = _family(spec, n_max, grid, mumap)
    if not admissible_for_orthonormal_family(rc):
        raise InadmissibleRange(f"ladder elements need a full-line mu-range, got {rc.value}")
    raised = [apply_raising(spec, mumap, s) for s in states]
    lowered = [apply_lowering(spec, mumap, s) for s in states]
    return _overlaps(states, raised, grid.h), _overlaps(states, lowered, grid.h)


def expected_ladder(n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Oscillator values: <n|A+|n'> = sqrt(n'+1) d(n,n'+1), <n|A|n'> = sqrt(n') d(n,n'-1)."""
    up = np.zeros((n_max + 1, n_max + 1))
    down = np.zeros_like(up)
    for k in range(n_max):
        up[k + 1, k] = math.sqrt(k + 1)
        down[k, k + 1] = math.sqrt(k + 1)
    return up, down


def ladder_from_gram(gram: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ladder elements from overlaps: <n|A+|n'> = sqrt(n'+1) G[n, n'+1], <n|A|n'> = sqrt(n') G[n, n'-1].

    Entries that would need a state beyond the Gram matrix are left at zero.
    """
    size = gram.shape[0]
    up = np.zeros_like(gram)
    down = np.zeros_like(gram)
    for k in range(size):
        if k + 1 < size:
            up[:, k] = math.sqrt(k + 1) * gram[:, k + 1]
        if k >= 1:
            down[:, k] = math.sqrt(k) * gram[:, k - 1]
    return up, down


def rayleigh_quotient(H: DiscreteHamiltonian, psi) -> float:
    psi = np.asarray(psi).real
    return float(psi @ H.matvec(psi) / (psi @ psi))


# -- aggregate report -----------------------------------------------------------------

@dataclass(frozen=True)
class VerifyConfig:
    grid_n: Optional[int] = None
    x_lo: Optional[float] = None
    x_hi: Optional[float] = None
    mu_edge: float = MU_EDGE
    mass_floor: float = MASS_FLOOR
    levels: int = 6
    gram_n_max: int = 7
    ladder_n_max: int = 6
    eig_tol: float = 1e-3
    residual_tol: float = 2e-3
    gram_tol: float = 1e-6
    ladder_tol: float = 1e-5
    annihilation_tol: float = 1e-5


@dataclass
class Check:
    value: float
    tol: float
    passed: bool


@dataclass
class SpectralReport:
    mass_id: str
    kind: str
    params: dict
    range_class: str
    admissible: bool
    grid: dict
    eigenvalues: list
    expected: list
    eigenvalue_errors: list
    residuals: list
    gram_max_offdiag: float
    gram_max_diag_dev: float
    ladder_max_dev: Optional[float]
    ladder_duality_dev: Optional[float]
    annihilation: float
    checks: dict = field(default_factory=dict)
    verdict: str = ""
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    @property
    def excluded(self) -> bool:
        return self.verdict.startswith("excluded")

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False, allow_nan=True) + "\n"


def verify(spec: MassSpec, config: Optional[VerifyConfig] = None) -> SpectralReport:
    """Run every check for one mass and return the aggregated report.

    Full-line masses PASS when every deviation is inside its tolerance.  Other
    range classes get an ``excluded`` verdict; their numbers are still reported.
    """
    cfg = config or VerifyConfig()
    ordering = gho_ordering()
    mumap = mu_map(spec)
    rc = classify_range(mumap)
    admissible = admissible_for_orthonormal_family(rc)
    grid = auto_grid(spec, mumap, cfg.grid_n, ordering, cfg.x_lo, cfg.x_hi, cfg.mu_edge, cfg.mass_floor)
    H = discretize(spec, ordering, grid, mumap)

    k = cfg.levels
    lam = lowest_eigenvalues(H, k)
    expected = np.arange(k) + 0.5
    errors = np.abs(lam - expected)

    n_states = max(k - 1, cfg.gram_n_max)
    states = eigenfunctions(spec, mumap, rc, n_states, grid)
    residuals = []
    for n in range(k):
        psi = states[n].values.real
        r = H.matvec(psi) - (n + 0.5) * psi
        residuals.append(float(np.linalg.norm(r[1:-1]) / np.linalg.norm(psi[1:-1])))

    gram = _overlaps(states[: cfg.gram_n_max + 1], states[: cfg.gram_n_max + 1], grid.h)
    off = gram - np.diag(np.diag(gram))
    gram_off = float(np.abs(off).max())
    gram_diag = float(np.abs(np.diag(gram) - 1.0).max())

    psi0 = states[0].values
    a0 = apply_lowering(spec, mumap, states[0]).values
    annihilation = float(np.abs(a0[2:-2]).max() / np.abs(psi0).max())

    ladder_dev = duality_dev = None
    if admissible:
        up, down = ladder_matrix_elements(spec, cfg.ladder_n_max, grid, mumap)
        up_x, down_x = expected_ladder(cfg.ladder_n_max)
        ladder_dev = float(max(np.abs(up - up_x).max(), np.abs(down - down_x).max()))
        g_up, g_down = ladder_from_gram(_overlaps(states[: cfg.ladder_n_max + 1], states[: cfg.ladder_n_max + 1],
                                                  grid.h))
        # the last column of <n|A+|n'> needs psi_{n_max+1}, absent from the Gram matrix
        duality_dev = float(max(np.abs(up[:, :-1] - g_up[:, :-1]).max(), np.abs(down - g_down).max()))

    report = SpectralReport(
        mass_id=spec.name,
        kind=spec.kind.value,
        params=dict(spec.params),
        range_class=rc.value,
        admissible=admissible,
        grid=grid.summary(),
        eigenvalues=[float(v) for v in lam],
        expected=[float(v) for v in expected],
        eigenvalue_errors=[float(v) for v in errors],
        residuals=residuals,
        gram_max_offdiag=gram_off,
        gram_max_diag_dev=gram_diag,
        ladder_max_dev=ladder_dev,
        ladder_duality_dev=duality_dev,
        annihilation=annihilation,
        notes=list(spec.warnings),
    )
    checks = {
        "eigenvalues": Check(float(errors.max()), cfg.eig_tol, bool(errors.max() < cfg.eig_tol)),
        "residuals": Check(max(residuals), cfg.residual_tol, bool(max(residuals) < cfg.residual_tol)),
        "gram_offdiag": Check(gram_off, cfg.gram_tol, bool(gram_off < cfg.gram_tol)),
        "gram_diag": Check(gram_diag, cfg.gram_tol, bool(gram_diag < cfg.gram_tol)),
        "annihilation": Check(annihilation, cfg.annihilation_tol, bool(annihilation < cfg.annihilation_tol)),
    }
    if ladder_dev is not None:
        checks["ladder"] = Check(ladder_dev, cfg.ladder_tol, bool(ladder_dev < cfg.ladder_tol))
        checks["ladder_duality"] = Check(duality_dev, cfg.ladder_tol, bool(duality_dev < cfg.ladder_tol))
    below = sturm_count(H, float(lam[-1]) + 1e-8 * max(1.0, abs(float(lam[-1]))))
    checks["sturm_count"] = Check(float(below), float(k), below == k)
    report.checks = {name: asdict(c) for name, c in checks.items()}

    if rc is RangeClass.FULL_LINE:
        report.verdict = "PASS" if all(c.passed for c in checks.values()) else "FAIL"
    else:
        report.verdict = f"excluded ({rc.value} μ-range)"
        if rc is RangeClass.HALF_LINE:
            odd = np.abs(lam - (2.0 * np.arange(k) + 1.5))
            report.notes.append(
                "half-line mu-range: the Dirichlet grid spectrum follows the odd levels 2k+3/2; "
                f"max deviation {float(odd.max()):.3e}")
        else:
            report.notes.append("bounded mu-range: eigenfunctions are formal (numerically normalized)")
    return report
