"""Uniform 1-D grids, sampled wavefunctions and the stencils that act on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import GridTooCoarse, InvalidParam

MIN_POINTS = 9


@dataclass(frozen=True)
class Grid:
    x_lo: float
    x_hi: float
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < MIN_POINTS:
            raise GridTooCoarse(f"grid needs at least {MIN_POINTS} points, got {self.n}")
        if not (np.isfinite(self.x_lo) and np.isfinite(self.x_hi)) or not self.x_hi > self.x_lo:
            raise InvalidParam(f"bad grid interval [{self.x_lo}, {self.x_hi}]")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "x_lo", float(self.x_lo))
        object.__setattr__(self, "x_hi", float(self.x_hi))

    @property
    def h(self) -> float:
        return (self.x_hi - self.x_lo) / (self.n - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_lo, self.x_hi, self.n)

    def refined(self) -> "Grid":
        """Same interval, half the spacing."""
        return Grid(self.x_lo, self.x_hi, 2 * self.n - 1)

    def summary(self) -> dict:
        return {"x_lo": self.x_lo, "x_hi": self.x_hi, "n": self.n, "h": self.h}


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Complex samples of a state on a grid.

    ``formal`` marks states whose family is not orthonormal (bounded mu-range);
    their normalization is numeric.
    """

    grid: Grid
    values: np.ndarray
    label: Optional[int] = None
    formal: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.n,):
            raise InvalidParam(f"expected {self.grid.n} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise InvalidParam("wavefunction has non-finite samples")
        object.__setattr__(self, "values", v)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def with_values(self, values, label=None) -> "WaveFunction":
        return WaveFunction(self.grid, values, label, self.formal)

    def norm(self) -> float:
        return float(np.sqrt(trapezoid(np.abs(self.values) ** 2, self.grid.h)))

    def __add__(self, other: "WaveFunction") -> "WaveFunction":
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "WaveFunction") -> "WaveFunction":
        return self.with_values(self.values - other.values)

    def __mul__(self, c) -> "WaveFunction":
        return self.with_values(self.values * c, self.label)

    __rmul__ = __mul__


def trapezoid(y, h: float):
    """Composite trapezoid rule on a uniform grid (last axis)."""
    y = np.asarray(y)
    return h * (y.sum(axis=-1) - 0.5 * (y[..., 0] + y[..., -1]))


def first_derivative(f, h: float) -> np.ndarray:
    """Five-point derivative: central inside, one-sided at the two points at each end."""
    f = np.asarray(f)
    n = f.shape[-1]
    if n < MIN_POINTS:
        raise GridTooCoarse(f"stencil needs at least {MIN_POINTS} points, got {n}")
    d = np.empty_like(f)
    d[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h)
    d[-1] = (25.0 * f[-1] - 48.0 * f[-2] + 36.0 * f[-3] - 16.0 * f[-4] + 3.0 * f[-5]) / (12.0 * h)
    d[-2] = (3.0 * f[-1] + 10.0 * f[-2] - 18.0 * f[-3] + 6.0 * f[-4] - f[-5]) / (12.0 * h)
    return d


def interior(n: int, margin: int = 2) -> slice:
    return slice(margin, n - margin)
