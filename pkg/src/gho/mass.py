"""Mass profiles m(x), the coordinate map mu(x) = int sqrt(m) dx, and range classes.

Catalog kinds carry closed forms for m, m', m'' and mu.  ``Custom`` masses are
either a callable or a sampled ``x,m`` table (cubic spline); their mu is built
by adaptive quadrature and their derivatives by five-point stencils.
"""
from __future__ import annotations

import csv
import enum
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Optional, Union

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicSpline

from .errors import (
    InvalidParam,
    MissingParam,
    NonPositiveMass,
    OutOfDomain,
    QuadratureFailure,
    SingularDomain,
)

# Working stand-in for an infinite side of the domain.
FAR = 1.0e4
# Default left cutoff for masses defined on x > 0.
POSITIVE_AXIS_CUTOFF = 1.0e-6
# Positivity is sampled inside this window when a side is infinite.
SAMPLE_WINDOW = 50.0
N_POSITIVITY_SAMPLES = 1024

INFINITE_MU = 25.0
ZERO_MU_TOL = 1.0e-8
QUAD_TOL = 1.0e-10
MIN_TABLE_POINTS = 16


class MassKind(str, enum.Enum):
    CONSTANT = "constant"
    RATIONAL_SQUARE = "rational-square"
    EXPONENTIAL = "exponential"
    TANH_SHIFT = "tanh-shift"
    POWER_LAW = "power-law"
    SECH_SQUARE = "sech-square"
    LORENTZ_SQUARE = "lorentz-square"
    CUSTOM = "custom"

    @classmethod
    def parse(cls, value: Union[str, "MassKind"]) -> "MassKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        for kind in cls:
            if key in (kind.value, kind.name.lower().replace("_", "-"), kind.value.replace("-", "")):
                return kind
        raise InvalidParam(f"unknown mass kind {value!r}")


REQUIRED_PARAMS: dict[MassKind, tuple[str, ...]] = {
    MassKind.CONSTANT: (),
    MassKind.RATIONAL_SQUARE: ("a",),
    MassKind.EXPONENTIAL: ("a",),
    MassKind.TANH_SHIFT: ("a",),
    MassKind.POWER_LAW: ("a",),
    MassKind.SECH_SQUARE: ("a",),
    MassKind.LORENTZ_SQUARE: ("a", "q"),
    MassKind.CUSTOM: (),
}


class RangeClass(str, enum.Enum):
    """Image of the domain under mu."""

    FULL_LINE = "FullLine"
    HALF_LINE = "HalfLine"
    BOUNDED = "Bounded"


@dataclass(frozen=True)
class Domain:
    """Working interval ``[lo, hi]`` plus the conceptual endpoints it stands in for.

    ``lo_limit`` equals ``lo`` for a closed side; otherwise it is the endpoint the
    working bound approximates (``-inf``, or ``0.0`` for masses on x > 0).
    """

    lo: float
    hi: float
    lo_limit: float
    hi_limit: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise InvalidParam("domain working bounds must be finite")
        if not self.lo < self.hi:
            raise InvalidParam(f"empty domain [{self.lo}, {self.hi}]")
        if self.lo_limit > self.lo or self.hi_limit < self.hi:
            raise InvalidParam("domain limits must enclose the working bounds")

    @classmethod
    def closed(cls, lo: float, hi: float) -> "Domain":
        return cls(float(lo), float(hi), float(lo), float(hi))

    @classmethod
    def real_line(cls) -> "Domain":
        return cls(-FAR, FAR, -math.inf, math.inf)

    @classmethod
    def positive_axis(cls) -> "Domain":
        return cls(POSITIVE_AXIS_CUTOFF, FAR, 0.0, math.inf)

    @property
    def lo_open(self) -> bool:
        return self.lo_limit != self.lo

    @property
    def hi_open(self) -> bool:
        return self.hi_limit != self.hi

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all((x >= self.lo) & (x <= self.hi)))


@dataclass(frozen=True)
class MassTable:
    """Sampled profile: strictly increasing abscissae and positive masses."""

    x: np.ndarray
    m: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        m = np.asarray(self.m, dtype=float)
        if x.ndim != 1 or x.shape != m.shape:
            raise InvalidParam("mass table needs two 1-D columns of equal length")
        if x.size < MIN_TABLE_POINTS:
            raise InvalidParam(f"mass table needs at least {MIN_TABLE_POINTS} rows, got {x.size}")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(m))):
            raise InvalidParam("mass table contains non-finite entries")
        if np.any(np.diff(x) <= 0):
            raise InvalidParam("mass table abscissae must be strictly increasing")
        bad = np.flatnonzero(m <= 0)
        if bad.size:
            raise NonPositiveMass(x[bad[0]], float(m[bad[0]]))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "m", m)


def read_profile_csv(path) -> MassTable:
    """Read a two-column ``x,m`` CSV (header required; extra columns are ignored)."""
    with open(Path(path), newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"x", "m"} <= {f.strip() for f in reader.fieldnames}:
            raise InvalidParam(f"{path}: header must contain columns 'x' and 'm'")
        xs, ms = [], []
        for lineno, row in enumerate(reader, start=2):
            row = {k.strip(): v for k, v in row.items() if k is not None}
            try:
                xs.append(float(row["x"]))
                ms.append(float(row["m"]))
            except (TypeError, ValueError) as exc:
                raise InvalidParam(f"{path}:{lineno}: cannot parse row ({exc})") from None
    return MassTable(np.array(xs), np.array(ms))


def write_profile_csv(path, table: MassTable) -> None:
    with open(Path(path), "w", newline="", encoding="utf-8") as fh:
        fh.write("x,m\n")
        for xv, mv in zip(table.x, table.m):
            fh.write(f"{xv:.17g},{mv:.17g}\n")


# -- closed forms -------------------------------------------------------------
# Each entry returns (m, m', m'') for array x.

def _const_derivs(p, x):
    one = np.ones_like(x)
    return one, 0.0 * x, 0.0 * x


def _rational_derivs(p, x):
    a = p["a"]
    d = 1.0 + x * x
    r = (a + x * x) / d
    r1 = 2.0 * x * (1.0 - a) / d**2
    r2 = 2.0 * (1.0 - a) * (1.0 - 3.0 * x * x) / d**3
    return r * r, 2.0 * r * r1, 2.0 * (r1 * r1 + r * r2)


def _exp_derivs(p, x):
    a = p["a"]
    e = np.exp(a * x)
    return e, a * e, a * a * e


def _tanh_derivs(p, x):
    a = p["a"]
    t = np.tanh(a * x)
    s2 = 1.0 / np.cosh(a * x) ** 2
    # 1 + tanh(ax) without cancellation for ax << 0
    return 2.0 / (1.0 + np.exp(-2.0 * a * x)), a * s2, -2.0 * a * a * s2 * t


def _power_derivs(p, x):
    a = p["a"]
    return x**a, a * x ** (a - 1.0), a * (a - 1.0) * x ** (a - 2.0)


def _sech_derivs(p, x):
    a = p["a"]
    s2 = 1.0 / np.cosh(a * x) ** 2
    t = np.tanh(a * x)
    return s2, -2.0 * a * s2 * t, 4.0 * a * a * s2 * t * t - 2.0 * a * a * s2 * s2


def _lorentz_derivs(p, x):
    a, q = p["a"], p["q"]
    d = q + x * x
    return a * a / d**2, -4.0 * a * a * x / d**3, a * a * (20.0 * x * x - 4.0 * q) / d**4


def _asinh_exp(t):
    """asinh(e**t) without overflow for large t."""
    t = np.asarray(t, dtype=float)
    big = t > 20.0
    safe = np.where(big, 0.0, t)
    return np.where(big, t + np.log1p(np.sqrt(1.0 + np.exp(-2.0 * np.abs(t)))), np.arcsinh(np.exp(safe)))


def _mu_const(p, x):
    return x + 0.0


def _mu_rational(p, x):
    return x + (p["a"] - 1.0) * np.arctan(x)


def _mu_exp(p, x):
    a = p["a"]
    if a == 0.0:
        return x + 0.0
    return (2.0 / a) * np.exp(0.5 * a * x)


def _mu_tanh(p, x):
    a = p["a"]
    if a == 0.0:
        return x + 0.0
    return (math.sqrt(2.0) / a) * _asinh_exp(a * x)


def _mu_power(p, x):
    a = p["a"]
    if a == -2.0:
        return np.log(x)
    return (2.0 / (a + 2.0)) * x ** (0.5 * (a + 2.0))


def _mu_sech(p, x):
    a = p["a"]
    return (2.0 / a) * np.arctan(np.exp(a * x))


def _mu_lorentz(p, x):
    a, q = p["a"], p["q"]
    sq = math.sqrt(q)
    return (a / sq) * np.arctan(x / sq)


def _limit_left(kind, p):
    """mu as x -> -inf (or 0+ for the power law)."""
    a = p.get("a", 0.0)
    if kind in (MassKind.CONSTANT, MassKind.RATIONAL_SQUARE):
        return -math.inf
    if kind in (MassKind.EXPONENTIAL, MassKind.TANH_SHIFT):
        return -math.inf if a <= 0.0 else 0.0
    if kind is MassKind.POWER_LAW:
        return 0.0 if a > -2.0 else -math.inf
    if kind is MassKind.SECH_SQUARE:
        return 0.0
    if kind is MassKind.LORENTZ_SQUARE:
        return -a * math.pi / (2.0 * math.sqrt(p["q"]))
    raise AssertionError(kind)


def _limit_right(kind, p):
    a = p.get("a", 0.0)
    if kind in (MassKind.CONSTANT, MassKind.RATIONAL_SQUARE):
        return math.inf
    if kind in (MassKind.EXPONENTIAL, MassKind.TANH_SHIFT):
        return math.inf if a >= 0.0 else 0.0
    if kind is MassKind.POWER_LAW:
        return math.inf if a >= -2.0 else 0.0
    if kind is MassKind.SECH_SQUARE:
        return math.pi / a
    if kind is MassKind.LORENTZ_SQUARE:
        return a * math.pi / (2.0 * math.sqrt(p["q"]))
    raise AssertionError(kind)


_DERIVS = {
    MassKind.CONSTANT: _const_derivs,
    MassKind.RATIONAL_SQUARE: _rational_derivs,
    MassKind.EXPONENTIAL: _exp_derivs,
    MassKind.TANH_SHIFT: _tanh_derivs,
    MassKind.POWER_LAW: _power_derivs,
    MassKind.SECH_SQUARE: _sech_derivs,
    MassKind.LORENTZ_SQUARE: _lorentz_derivs,
}

_MU = {
    MassKind.CONSTANT: _mu_const,
    MassKind.RATIONAL_SQUARE: _mu_rational,
    MassKind.EXPONENTIAL: _mu_exp,
    MassKind.TANH_SHIFT: _mu_tanh,
    MassKind.POWER_LAW: _mu_power,
    MassKind.SECH_SQUARE: _mu_sech,
    MassKind.LORENTZ_SQUARE: _mu_lorentz,
}

def closed_form_mu(kind: MassKind, params: Mapping[str, float], x):
    """The catalog antiderivative of sqrt(m) for ``kind``."""
    return _MU[kind](params, np.asarray(x, dtype=float))


EXPONENTIAL_SIGN_WARNING = (
    "exponential mass: the eigenstates are mutually orthogonal only if the sign of a "
    "agrees with the sign of x over the whole domain"
)


# -- finite differences for custom profiles -------------------------------------

def _step(x):
    return 1.0e-4 * np.maximum(1.0, np.abs(x))


def _stencil_derivs(f, x, domain: Domain):
    """First and second derivatives by five-point stencils, one-sided near the edges."""
    x = np.asarray(x, dtype=float)
    h = _step(x)
    d1 = np.empty_like(x)
    d2 = np.empty_like(x)
    left = x - 2.0 * h < domain.lo
    right = x + 2.0 * h > domain.hi
    center = ~(left | right)
    if np.any(center):
        xc, hc = x[center], h[center]
        fm2, fm1, fp1, fp2 = f(xc - 2 * hc), f(xc - hc), f(xc + hc), f(xc + 2 * hc)
        f0 = f(xc)
        d1[center] = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * hc)
        d2[center] = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * hc * hc)
    for mask, sgn in ((left & ~right, 1.0), (right, -1.0)):
        if not np.any(mask):
            continue
        xs, hs = x[mask], sgn * h[mask]
        f0, f1, f2, f3, f4 = (f(xs + k * hs) for k in range(5))
        d1[mask] = (-25 * f0 + 48 * f1 - 36 * f2 + 16 * f3 - 3 * f4) / (12 * hs)
        d2[mask] = (35 * f0 - 104 * f1 + 114 * f2 - 56 * f3 + 11 * f4) / (12 * hs * hs)
    return d1, d2


@dataclass(frozen=True, eq=False)
class MassSpec:
    """A validated, positive mass profile on a domain.

    Build with :func:`make_mass`; call the instance to evaluate m(x) without a
    domain check.
    """

    kind: MassKind
    params: Mapping[str, float]
    domain: Domain
    custom_profile: Optional[Union[MassTable, Callable]] = None
    warnings: tuple[str, ...] = ()
    _rule: Callable = field(default=None, repr=False)

    @property
    def name(self) -> str:
        if not self.params:
            return self.kind.value
        inner = ",".join(f"{k}={v:g}" for k, v in sorted(self.params.items()))
        return f"{self.kind.value}({inner})"

    @property
    def analytic(self) -> bool:
        return self.kind is not MassKind.CUSTOM

    def __call__(self, x):
        return self.derivatives(x)[0] if self.analytic else self._rule(np.asarray(x, dtype=float))

    def derivatives(self, x):
        """Return ``(m, m', m'')`` at ``x`` (arrays of the shape of ``x``)."""
        x = np.asarray(x, dtype=float)
        if self.analytic:
            m, m1, m2 = _DERIVS[self.kind](self.params, x)
            return np.broadcast_to(m, x.shape) + 0.0, m1 + 0.0 * x, m2 + 0.0 * x
        m = self._rule(x)
        d1, d2 = _stencil_derivs(self._rule, np.atleast_1d(x), self.domain)
        return m, d1.reshape(x.shape), d2.reshape(x.shape)


def _check_params(kind: MassKind, params: Mapping[str, float]) -> dict:
    need = REQUIRED_PARAMS[kind]
    out = {}
    for name in need:
        if name not in params or params[name] is None:
            raise MissingParam(f"{kind.value} needs parameter {name!r}")
        val = float(params[name])
        if not math.isfinite(val):
            raise InvalidParam(f"parameter {name}={val!r} is not finite")
        out[name] = val
    extra = set(params) - set(need)
    if extra:
        raise InvalidParam(f"{kind.value} does not take parameter(s) {sorted(extra)}")
    if kind is MassKind.RATIONAL_SQUARE and out["a"] <= 0:
        raise InvalidParam("rational-square needs a > 0")
    if kind is MassKind.SECH_SQUARE and out["a"] <= 0:
        raise InvalidParam("sech-square needs a > 0")
    if kind is MassKind.LORENTZ_SQUARE:
        if out["q"] <= 0:
            raise InvalidParam("lorentz-square needs q > 0")
        if out["a"] <= 0:
            raise InvalidParam("lorentz-square needs a > 0")
    return out


def make_mass(kind, params: Optional[Mapping[str, float]] = None, domain: Optional[Domain] = None,
              custom_profile=None) -> MassSpec:
    """Validate parameters and domain and return a :class:`MassSpec`.

    ``domain`` may be a :class:`Domain` or a ``(lo, hi)`` pair (closed interval).
    Positivity is sampled at ``N_POSITIVITY_SAMPLES`` points.
    """
    kind = MassKind.parse(kind)
    params = _check_params(kind, dict(params or {}))
    if domain is not None and not isinstance(domain, Domain):
        lo, hi = domain
        domain = Domain.closed(lo, hi)

    notes: list[str] = []
    rule = None
    if kind is MassKind.CUSTOM:
        if custom_profile is None:
            raise MissingParam("custom mass needs a profile (table or callable)")
        if isinstance(custom_profile, MassTable):
            rule = CubicSpline(custom_profile.x, custom_profile.m)
            table_dom = Domain.closed(custom_profile.x[0], custom_profile.x[-1])
            if domain is None:
                domain = table_dom
            elif domain.lo < table_dom.lo or domain.hi > table_dom.hi:
                raise OutOfDomain("requested domain exceeds the sampled profile")
        elif callable(custom_profile):
            fn = custom_profile

            def rule(x, fn=fn):
                x = np.asarray(x, dtype=float)
                return np.asarray(fn(x), dtype=float) * np.ones_like(x)
            if domain is None:
                domain = Domain.real_line()
        else:
            raise InvalidParam("custom profile must be a MassTable or a callable")
    elif custom_profile is not None:
        raise InvalidParam("custom_profile is only accepted for kind=custom")

    if kind is MassKind.POWER_LAW:
        if domain is None:
            domain = Domain.positive_axis()
        if domain.lo_limit < 0:
            raise SingularDomain("power-law mass x**a needs x >= 0")
        if domain.lo == 0 and params["a"] < 0:
            raise SingularDomain("power-law mass with a < 0 is singular at x = 0")
    if domain is None:
        domain = Domain.real_line()
    if kind is MassKind.EXPONENTIAL and params["a"] != 0.0:
        notes.append(EXPONENTIAL_SIGN_WARNING)

    spec = MassSpec(kind, params, domain, custom_profile, tuple(notes), rule)
    _check_positive(spec)
    return spec


def _check_positive(spec: MassSpec) -> None:
    lo = max(spec.domain.lo, -SAMPLE_WINDOW) if spec.domain.lo_open else spec.domain.lo
    hi = min(spec.domain.hi, SAMPLE_WINDOW) if spec.domain.hi_open else spec.domain.hi
    if lo >= hi:
        lo, hi = spec.domain.lo, spec.domain.hi
    xs = np.linspace(lo, hi, N_POSITIVITY_SAMPLES)
    with np.errstate(all="ignore"):
        m = spec(xs)
    bad = np.flatnonzero(~(np.isfinite(m) & (m > 0)))
    if bad.size:
        raise NonPositiveMass(xs[bad[0]], float(m[bad[0]]))


def evaluate_mass(spec: MassSpec, x):
    """m(x), refusing abscissae outside the working domain."""
    if not spec.domain.contains(x):
        raise OutOfDomain(f"x outside [{spec.domain.lo}, {spec.domain.hi}]")
    out = spec(x)
    return float(out) if np.ndim(out) == 0 else out


# -- mu map ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MuMap:
    mu: Callable
    dmu: Callable
    mu_min: float
    mu_max: float
    analytic: bool
    integration_origin: float
    domain: Optional[Domain] = None

    def __call__(self, x):
        return self.mu(x)


class _QuadratureMu:
    """mu(x) = int_origin^x sqrt(m) by QUADPACK, accumulated between sorted abscissae."""

    def __init__(self, spec: MassSpec, origin: float, tol: float = QUAD_TOL, offset: float = 0.0):
        self.spec = spec
        self.origin = float(origin)
        self.tol = tol
        self.offset = offset

    def _sqrt_m(self, t):
        return math.sqrt(float(self.spec(t)))

    def _segment(self, a, b, tol):
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                val, err = integrate.quad(self._sqrt_m, a, b, epsabs=tol, epsrel=0.0, limit=200)
            except integrate.IntegrationWarning as exc:
                raise QuadratureFailure(f"quadrature of sqrt(m) on [{a}, {b}] failed: {exc}") from None
        return val, err

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        if flat.size == 0:
            return x.copy()
        order = np.argsort(flat)
        xs = flat[order]
        knots = np.union1d(xs, [self.origin])
        per_seg = self.tol / max(1, knots.size)
        vals = np.zeros(knots.size)
        total_err = 0.0
        k0 = int(np.searchsorted(knots, self.origin))
        for k in range(k0 + 1, knots.size):
            v, e = self._segment(knots[k - 1], knots[k], per_seg)
            vals[k] = vals[k - 1] + v
            total_err += e
        for k in range(k0 - 1, -1, -1):
            v, e = self._segment(knots[k], knots[k + 1], per_seg)
            vals[k] = vals[k + 1] - v
            total_err += e
        if total_err > self.tol:
            raise QuadratureFailure(f"accumulated error {total_err:.3g} exceeds {self.tol:.1e}")
        out = np.empty_like(flat)
        out[order] = vals[np.searchsorted(knots, xs)] + self.offset
        return out.reshape(x.shape)

    def limit(self, end: float) -> float:
        """mu at a conceptual endpoint (possibly infinite); divergence gives +-inf."""
        sign = 1.0 if end > self.origin else -1.0
        with warnings.catch_warnings(), np.errstate(all="ignore"):
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            lo, hi = (self.origin, end) if sign > 0 else (end, self.origin)
            val, err = integrate.quad(self._sqrt_m, lo, hi, limit=400)
        if not math.isfinite(val) or val > 1e6 or err > 1e-6 * max(1.0, abs(val)):
            return sign * math.inf
        return self.offset + sign * val


def _zero_of_mu(kind, p) -> float:
    """Abscissa where the closed-form mu vanishes (nan when it never does)."""
    a = p.get("a", 0.0)
    if kind in (MassKind.EXPONENTIAL, MassKind.TANH_SHIFT) and a != 0.0:
        return math.nan
    if kind is MassKind.POWER_LAW:
        return 1.0 if a == -2.0 else (0.0 if a > -2.0 else math.nan)
    if kind is MassKind.SECH_SQUARE:
        return math.nan
    return 0.0


def default_origin(domain: Domain) -> float:
    return 0.0 if domain.lo <= 0.0 <= domain.hi else domain.lo


def mu_map(spec: MassSpec, origin: Optional[float] = None) -> MuMap:
    """Build mu(x) for ``spec``.

    Catalog kinds use their closed-form antiderivatives (``origin`` is ignored);
    custom masses are integrated from ``origin`` (default 0, or ``x_lo`` when 0 is
    outside the domain).
    """

    def dmu(x):
        return np.sqrt(spec(x))

    if spec.analytic:
        fn = _MU[spec.kind]
        p = spec.params

        def mu(x):
            return fn(p, np.asarray(x, dtype=float))

        dom = spec.domain
        mu_min = _limit_left(spec.kind, p) if dom.lo_open else float(mu(dom.lo))
        mu_max = _limit_right(spec.kind, p) if dom.hi_open else float(mu(dom.hi))
        return MuMap(mu, dmu, float(mu_min), float(mu_max), True, _zero_of_mu(spec.kind, p), dom)

    dom = spec.domain
    if origin is None:
        origin = default_origin(dom)
    origin = float(origin)
    if dom.contains(origin):
        qmu = _QuadratureMu(spec, origin)
    elif origin in (dom.lo_limit, dom.hi_limit):
        # anchor at a conceptual endpoint: integrate from a working point, then shift
        start = default_origin(dom)
        probe = _QuadratureMu(spec, start)
        shift = probe.limit(origin)
        if not math.isfinite(shift):
            raise QuadratureFailure(f"int sqrt(m) diverges towards the origin {origin}")
        qmu = _QuadratureMu(spec, start, offset=-shift)
    else:
        raise OutOfDomain(f"integration origin {origin} outside the domain")
    mu_min = qmu.limit(dom.lo_limit) if dom.lo_open else float(qmu(dom.lo))
    mu_max = qmu.limit(dom.hi_limit) if dom.hi_open else float(qmu(dom.hi))
    if origin == dom.lo_limit:
        mu_min = 0.0
    if origin == dom.hi_limit:
        mu_max = 0.0
    return MuMap(qmu, dmu, mu_min, mu_max, False, origin, dom)


def classify_range(mumap: MuMap, infinite: float = INFINITE_MU, zero_tol: float = ZERO_MU_TOL) -> RangeClass:
    lo_inf = mumap.mu_min <= -infinite
    hi_inf = mumap.mu_max >= infinite
    if lo_inf and hi_inf:
        return RangeClass.FULL_LINE
    # (-inf, 0) is the mirror image of (0, inf); Hermite parity keeps the same normalization
    if (hi_inf and abs(mumap.mu_min) < zero_tol) or (lo_inf and abs(mumap.mu_max) < zero_tol):
        return RangeClass.HALF_LINE
    return RangeClass.BOUNDED


def admissible_for_orthonormal_family(rc: RangeClass) -> bool:
    """Only a mu-range covering the whole real line gives an orthogonal eigenfamily."""
    return rc is RangeClass.FULL_LINE


# -- catalog listing --------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    kind: MassKind
    params: tuple[str, ...]
    mass: str
    mu: str
    note: str


CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry(MassKind.CONSTANT, (), "1", "x", "textbook oscillator; admissible"),
    CatalogEntry(MassKind.RATIONAL_SQUARE, ("a",), "((a+x^2)/(1+x^2))^2", "x+(a-1)atan(x)",
                 "a>0; admissible; a=1 => constant mass"),
    CatalogEntry(MassKind.EXPONENTIAL, ("a",), "exp(a x)", "(2/a)exp(a x/2); x if a=0",
                 "half-line mu for a>0: not orthogonal; a=0 => constant mass"),
    CatalogEntry(MassKind.TANH_SHIFT, ("a",), "1+tanh(a x)", "(sqrt2/a)ln(e^{ax}+sqrt(1+e^{2ax})); x if a=0",
                 "half-line mu for a>0: not orthogonal; a=0 => constant mass"),
    CatalogEntry(MassKind.POWER_LAW, ("a",), "x^a (x>0)", "(2/(a+2))x^{(a+2)/2}; ln x if a=-2",
                 "half-line mu for a>-2; full line only for a=-2"),
    CatalogEntry(MassKind.SECH_SQUARE, ("a",), "sech^2(a x)", "(2/a)atan(e^{ax})",
                 "a>0; bounded mu-range: excluded, states only formal"),
    CatalogEntry(MassKind.LORENTZ_SQUARE, ("a", "q"), "a^2/(q+x^2)^2", "(a/sqrt q)atan(x/sqrt q)",
                 "a>0,q>0; bounded mu-range: excluded, states only formal"),
)
