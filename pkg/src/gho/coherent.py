"""Coherent states of the lowering operator A.

|z> = exp(-|z|^2/2) sum_n z^n / sqrt(n!) |n>, truncated where the Poisson tail of
|c_n|^2 drops below ``tail_tol``.  The coefficients are not renormalized after
truncation, so the closed-form expectation values stay exact and truncation
shows up only in grid-sampled quantities.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaln

from .errors import AmplitudeTooLarge, InadmissibleRange, InvalidParam
from .grid import Grid, WaveFunction, trapezoid
from .mass import MassSpec, MuMap, RangeClass
from .oscillator import MAX_DEGREE, apply_deformed_momentum, eigenfunctions

DEFAULT_TAIL_TOL = 1e-12
SQRT_HALF = math.sqrt(0.5)


@dataclass(frozen=True, eq=False)
class CoherentState:
    z: complex
    n_trunc: int
    coeffs: np.ndarray

    @property
    def weight(self) -> float:
        """sum |c_n|^2 over the kept terms."""
        return float(np.sum(np.abs(self.coeffs) ** 2))


def coherent_coefficients(z: complex, n_trunc: int) -> np.ndarray:
    """c_n = exp(-|z|^2/2) z^n / sqrt(n!), n = 0..n_trunc."""
    z = complex(z)
    n = np.arange(n_trunc + 1)
    if z == 0:
        c = np.zeros(n_trunc + 1, dtype=complex)
        c[0] = 1.0
        return c
    r, phase = abs(z), cmath.phase(z)
    log_mag = -0.5 * r * r + n * math.log(r) - 0.5 * gammaln(n + 1)
    return np.exp(log_mag) * np.exp(1j * phase * n)


def poisson_tail(n_trunc: int, z: complex) -> float:
    """sum_{n > n_trunc} |c_n|^2 = P[Poisson(|z|^2) > n_trunc]."""
    lam = abs(complex(z)) ** 2
    if lam == 0.0:
        return 0.0
    return float(gammainc(n_trunc + 1, lam))


def make_coherent(z: complex, tail_tol: float = DEFAULT_TAIL_TOL) -> CoherentState:
    """Coherent state with the smallest truncation whose Poisson tail is below ``tail_tol``."""
    if not 0.0 < tail_tol <= 1e-6:
        raise InvalidParam("tail_tol must lie in (0, 1e-6]")
    z = complex(z)
    for n_trunc in range(MAX_DEGREE + 1):
        if poisson_tail(n_trunc, z) < tail_tol:
            return CoherentState(z, n_trunc, coherent_coefficients(z, n_trunc))
    raise AmplitudeTooLarge(f"|z|={abs(z):.3g} needs more than {MAX_DEGREE} terms for tail {tail_tol:g}")


def coherent_wavefunction(spec: MassSpec, mumap: MuMap, rc: RangeClass, cs: CoherentState,
                          grid: Grid) -> WaveFunction:
    """sum_n c_n psi_n(x) on ``grid``; needs the orthonormal (full-line) family."""
    if rc is not RangeClass.FULL_LINE:
        raise InadmissibleRange(f"coherent states need a full-line mu-range, got {rc.value}")
    states = eigenfunctions(spec, mumap, rc, cs.n_trunc, grid)
    basis = np.array([s.values for s in states])
    return WaveFunction(grid, cs.coeffs @ basis)


def expectation_mu(cs: CoherentState) -> tuple[float, float]:
    """(<mu>, <mu^2>) = ((z+z*)/sqrt2, ((z+z*)^2 + 1)/2)."""
    s = 2.0 * cs.z.real
    return s * SQRT_HALF, 0.5 * (s * s + 1.0)


def expectation_pi(cs: CoherentState) -> tuple[float, float]:
    """(<pi>, <pi^2>) = (-i(z-z*)/sqrt2, -((z-z*)^2 - 1)/2); both real."""
    d = 2.0 * cs.z.imag  # z - z* = i d
    return d * SQRT_HALF, 0.5 * (d * d + 1.0)


def uncertainties(cs: CoherentState) -> tuple[float, float]:
    """(Delta mu, Delta pi).

    In the closed forms the z-dependence cancels identically:
    <mu^2> - <mu>^2 = ((z+z*)^2 + 1)/2 - (z+z*)^2/2 = 1/2, and likewise for pi.
    """
    return SQRT_HALF, SQRT_HALF


def quadrature_moments(spec: MassSpec, mumap: MuMap, wf: WaveFunction) -> dict:
    """<mu>, <mu^2>, <pi>, <pi^2> and the two spreads by trapezoid quadrature on the grid."""
    h = wf.grid.h
    psi = wf.values
    dens = np.abs(psi) ** 2
    norm = trapezoid(dens, h)
    mu = mumap.mu(wf.grid.x)
    m1 = trapezoid(mu * dens, h) / norm
    m2 = trapezoid(mu * mu * dens, h) / norm
    pi_psi = apply_deformed_momentum(spec, wf).values
    p1 = trapezoid(np.conj(psi) * pi_psi, h) / norm
    # <pi^2> = ||pi psi||^2 since pi is symmetric and psi vanishes at the edges
    p2 = trapezoid(np.abs(pi_psi) ** 2, h) / norm
    return {
        "norm": float(norm),
        "mu": float(m1),
        "mu2": float(m2),
        "pi": float(p1.real),
        "pi_imag": float(p1.imag),
        "pi2": float(p2),
        "delta_mu": math.sqrt(max(m2 - m1 * m1, 0.0)),
        "delta_pi": math.sqrt(max(p2 - p1.real**2, 0.0)),
    }


def coherent_overlap(z: complex, z2: complex) -> complex:
    """<z|z'> = exp(-|z|^2/2 - |z'|^2/2 + conj(z) z')."""
    z, z2 = complex(z), complex(z2)
    return cmath.exp(-0.5 * abs(z) ** 2 - 0.5 * abs(z2) ** 2 + z.conjugate() * z2)
