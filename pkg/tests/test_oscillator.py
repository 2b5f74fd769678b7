import math

import numpy as np
import pytest
import sympy as sp

from gho.errors import BoundedRangeUnsupported, DegreeTooLarge, GridTooCoarse, InvalidParam, OutOfDomain
from gho.grid import Grid, first_derivative, trapezoid
from gho.mass import RangeClass, classify_range, make_mass, mu_map
from gho.oscillator import (
    OrderingParams,
    apply_hamiltonian,
    apply_lowering,
    apply_number,
    apply_raising,
    base_potential,
    catalog_effective_potential,
    commutator_profile,
    effective_potential,
    eigenfunction,
    eigenfunctions,
    eigenvalue,
    gho_ordering,
    hermite,
    hermite_all,
    normalization_constant,
    ordering_correction,
)

ORD = gho_ordering()
WIDE = Grid(-10.0, 10.0, 4001)


def _setup(kind, params):
    spec = make_mass(kind, params)
    mm = mu_map(spec)
    return spec, mm, classify_range(mm)


# -- ordering / potentials -----------------------------------------------------------

def test_gho_ordering():
    o = gho_ordering()
    assert (o.alpha, o.beta, o.gamma) == (-0.25, -0.5, -0.25)
    assert OrderingParams.from_beta(-0.5) == o


def test_ordering_constraints():
    with pytest.raises(InvalidParam):
        OrderingParams(0.0, 0.0, 0.0)
    with pytest.raises(InvalidParam):
        OrderingParams(-0.6, 0.0, -0.4)


def test_base_potential_examples():
    assert base_potential(mu_map(make_mass("constant")), 2.0) == 2.0
    assert base_potential(mu_map(make_mass("rational-square", {"a": 2.0})), 0.0) == 0.0
    mm = mu_map(make_mass("exponential", {"a": 0.8}))
    x = np.linspace(-3, 3, 13)
    np.testing.assert_allclose(base_potential(mm, x), 2 / 0.8**2 * np.exp(0.8 * x), rtol=1e-14)


def test_base_potential_out_of_domain():
    mm = mu_map(make_mass("power-law", {"a": 2.0}))
    with pytest.raises(OutOfDomain):
        base_potential(mm, -1.0)


@pytest.mark.parametrize("beta", [-1.0, -0.5, 0.0, 0.3])
def test_constant_mass_any_ordering(beta):
    spec, mm, _ = _setup("constant", {})
    assert effective_potential(spec, OrderingParams.from_beta(beta), mm, 1.0) == 0.5


def test_exponential_and_power_effective_potentials():
    for a in (0.5, 1.0, 2.0):
        spec, mm, _ = _setup("exponential", {"a": a})
        x = np.linspace(-3, 3, 25)
        expected = 0.5 * mm(x) ** 2 - 3 * a * a / 32 * np.exp(-a * x)
        np.testing.assert_allclose(effective_potential(spec, ORD, mm, x), expected, rtol=1e-12, atol=1e-12)
        spec, mm, _ = _setup("power-law", {"a": a})
        x = np.linspace(0.2, 3, 25)
        expected = 0.5 * mm(x) ** 2 - a * (3 * a + 4) / 32 * x ** (-(a + 2))
        np.testing.assert_allclose(effective_potential(spec, ORD, mm, x), expected, rtol=1e-12, atol=1e-12)


def test_tanh_effective_potential_at_point():
    spec, mm, _ = _setup("tanh-shift", {"a": 1.0})
    x = 0.3
    e = math.exp(2 * x)
    mu = math.sqrt(2) * math.log(math.exp(x) + math.sqrt(1 + e))
    printed = 0.5 * mu * mu - (4 * e + 3) / (16 * e * (e + 1))
    assert abs(effective_potential(spec, ORD, mm, x) - printed) < 1e-8


@pytest.mark.parametrize("alpha", [-0.25, -0.4, 0.1])
def test_ordering_correction_from_von_roos_operator(alpha):
    """Apply (m^a p m^b p m^a)/2 symbolically and subtract the flux-form kinetic term."""
    x = sp.symbols("x", real=True)
    a = sp.nsimplify(alpha)
    b = -1 - 2 * a
    m = (2 + x**2) ** 2 / (1 + x**2) ** 2
    f = sp.exp(sp.sin(x))
    von_roos = -sp.Rational(1, 2) * m**a * sp.diff(m**b * sp.diff(m**a * f, x), x)
    flux = -sp.Rational(1, 2) * sp.diff(sp.diff(f, x) / m, x)
    u = sp.lambdify(x, (von_roos - flux) / f, "numpy")
    spec = make_mass("rational-square", {"a": 2.0})
    xs = np.linspace(-3, 3, 31)
    o = OrderingParams(float(a), float(b), float(a))
    np.testing.assert_allclose(ordering_correction(spec, o, xs), u(xs), rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("kind,params,lo,hi", [
    ("rational-square", {"a": 3.0}, -5, 5),
    ("exponential", {"a": 1.5}, -4, 4),
    ("tanh-shift", {"a": 2.0}, -3, 3),
    ("power-law", {"a": 1.0}, 0.2, 4),
    ("sech-square", {"a": 1.7}, -2, 2),
    ("lorentz-square", {"a": 1.5, "q": 2.0}, -5, 5),
])
def test_catalog_effective_potential_matches_generic(kind, params, lo, hi):
    spec, mm, _ = _setup(kind, params)
    x = np.linspace(lo, hi, 41)
    np.testing.assert_allclose(catalog_effective_potential(spec, x), effective_potential(spec, ORD, mm, x),
                               rtol=1e-10, atol=1e-10)


def test_custom_mass_effective_potential_close_to_catalog():
    cat = make_mass("rational-square", {"a": 2.0})
    custom = make_mass("custom", custom_profile=cat)
    x = np.linspace(-3, 3, 21)
    np.testing.assert_allclose(ordering_correction(custom, ORD, x), ordering_correction(cat, ORD, x), atol=1e-6)


# -- spectrum and states ---------------------------------------------------------------

def test_eigenvalue():
    assert [eigenvalue(n) for n in (0, 1, 10)] == [0.5, 1.5, 10.5]
    with pytest.raises(InvalidParam):
        eigenvalue(-1)


def test_hermite():
    t = np.linspace(-2, 2, 9)
    np.testing.assert_array_equal(hermite(1, t), 2 * t)
    assert hermite(2, 1.0) == 2.0
    assert hermite(0, 3.7) == 1.0
    for n in range(8):
        ref = np.polynomial.hermite.hermval(t, [0] * n + [1])
        np.testing.assert_allclose(hermite_all(7, t)[n], ref, rtol=1e-13)
    with pytest.raises(DegreeTooLarge):
        hermite(65, 0.0)


def test_normalization_constants():
    assert normalization_constant(0, RangeClass.FULL_LINE) == pytest.approx(0.7511255444, abs=1e-10)
    assert normalization_constant(0, RangeClass.HALF_LINE) == pytest.approx(math.sqrt(2) * math.pi**-0.25)
    assert normalization_constant(2, RangeClass.FULL_LINE) == pytest.approx(1 / math.sqrt(8 * math.sqrt(math.pi)))
    with pytest.raises(BoundedRangeUnsupported):
        normalization_constant(0, RangeClass.BOUNDED)


def test_constant_ground_state():
    spec, mm, rc = _setup("constant", {})
    psi = eigenfunction(spec, mm, rc, 0, WIDE)
    np.testing.assert_allclose(psi.values.real, math.pi**-0.25 * np.exp(-WIDE.x**2 / 2), atol=1e-15)
    assert trapezoid(psi.values.real**2, WIDE.h) == pytest.approx(1.0, abs=1e-12)


def test_rational_square_state_form():
    a = 2.0
    spec, mm, rc = _setup("rational-square", {"a": a})
    x = WIDE.x
    mu = x + (a - 1) * np.arctan(x)
    for n in (0, 3):
        psi = eigenfunction(spec, mm, rc, n, WIDE).values.real
        ref = normalization_constant(n, rc) * np.sqrt((a + x**2) / (1 + x**2)) * np.exp(-mu**2 / 2) * hermite(n, mu)
        np.testing.assert_allclose(psi, ref, atol=1e-14)


def test_exponential_ground_state_form():
    a = 1.0
    spec, mm, rc = _setup("exponential", {"a": a})
    g = Grid(-12.0, 3.0, 1501)
    psi = eigenfunction(spec, mm, rc, 0, g).values.real
    mu = 2 / a * np.exp(a * g.x / 2)
    ref = normalization_constant(0, RangeClass.HALF_LINE) * np.exp(a * g.x / 4) * np.exp(-mu**2 / 2)
    np.testing.assert_allclose(psi, ref, atol=1e-14)


def test_bounded_states_are_formal():
    spec, mm, rc = _setup("sech-square", {"a": 1.0})
    states = eigenfunctions(spec, mm, rc, 3, Grid(-20.0, 20.0, 2001))
    assert all(s.formal for s in states)
    assert trapezoid(np.abs(states[2].values) ** 2, states[2].grid.h) == pytest.approx(1.0, abs=1e-12)


def test_eigenfunction_checks():
    spec, mm, rc = _setup("power-law", {"a": 2.0})
    with pytest.raises(OutOfDomain):
        eigenfunction(spec, mm, rc, 0, Grid(-1.0, 1.0, 101))
    with pytest.raises(DegreeTooLarge):
        eigenfunction(spec, mm, rc, 65, Grid(0.1, 1.0, 101))


# -- operators ----------------------------------------------------------------------------

@pytest.mark.parametrize("kind,params,grid", [
    ("constant", {}, WIDE),
    ("rational-square", {"a": 2.0}, WIDE),
    ("rational-square", {"a": 0.5}, Grid(-12.0, 12.0, 6001)),
    ("exponential", {"a": 1.0}, Grid(-25.0, 4.5, 6001)),
    ("tanh-shift", {"a": 1.0}, Grid(-12.0, 7.0, 6001)),
])
def test_lowering_kills_ground_state_and_raising_builds_psi1(kind, params, grid):
    spec, mm, rc = _setup(kind, params)
    psi0, psi1 = eigenfunctions(spec, mm, rc, 1, grid)
    inner = slice(2, -2)
    assert np.abs(apply_lowering(spec, mm, psi0).values[inner]).max() < 1e-6
    up = apply_raising(spec, mm, psi0).values
    assert np.abs(up[inner] - psi1.values[inner]).max() < 1e-6


def test_number_operator_eigenvalue():
    spec, mm, rc = _setup("rational-square", {"a": 2.0})
    psi3 = eigenfunction(spec, mm, rc, 3, WIDE)
    n_psi = apply_number(spec, mm, psi3).values
    inner = slice(6, -6)
    assert np.abs(n_psi[inner] - 3 * psi3.values[inner]).max() < 1e-5


def test_lowering_needs_enough_points():
    with pytest.raises(GridTooCoarse):
        first_derivative(np.ones(5), 0.1)


def test_commutator_profile():
    x = np.linspace(-3, 3, 61)
    for kind, params in [("rational-square", {"a": 2.0}), ("sech-square", {"a": 1.0})]:
        spec = make_mass(kind, params)
        np.testing.assert_array_equal(commutator_profile(spec, -0.5, x), 1.0)
    const = make_mass("constant")
    for beta in (-1.0, 0.0, 2.0):
        np.testing.assert_array_equal(commutator_profile(const, beta, x), 1.0)
    assert commutator_profile(make_mass("exponential", {"a": 1.0}), 0.0, 0.0) == pytest.approx(1.125, abs=1e-12)


def test_hamiltonian_ground_state_residual():
    spec, mm, rc = _setup("rational-square", {"a": 2.0})
    g = Grid(-8.0, 8.0, 16001)
    psi0 = eigenfunction(spec, mm, rc, 0, g)
    h_psi = apply_hamiltonian(spec, ORD, None, psi0, mm).values
    inner = slice(1, -1)
    res = np.linalg.norm(h_psi[inner] - 0.5 * psi0.values[inner]) / np.linalg.norm(psi0.values[inner])
    assert res < 1e-4


def test_hamiltonian_custom_potential_rule():
    spec, mm, rc = _setup("constant", {})
    psi0 = eigenfunction(spec, mm, rc, 0, WIDE)
    a = apply_hamiltonian(spec, ORD, lambda x: 0.5 * x**2, psi0).values
    b = apply_hamiltonian(spec, ORD, None, psi0, mm).values
    np.testing.assert_allclose(a, b, atol=1e-15)
