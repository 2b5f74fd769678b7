import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gho.errors import (
    InvalidParam,
    MissingParam,
    NonPositiveMass,
    OutOfDomain,
    SingularDomain,
)
from gho.mass import (
    CATALOG,
    Domain,
    MassKind,
    MassTable,
    RangeClass,
    admissible_for_orthonormal_family,
    classify_range,
    evaluate_mass,
    make_mass,
    mu_map,
    read_profile_csv,
    write_profile_csv,
)

CATALOG_SPECS = [
    ("constant", {}),
    ("rational-square", {"a": 2.0}),
    ("rational-square", {"a": 0.5}),
    ("exponential", {"a": 1.0}),
    ("exponential", {"a": -0.7}),
    ("tanh-shift", {"a": 1.0}),
    ("power-law", {"a": 2.0}),
    ("power-law", {"a": -2.0}),
    ("sech-square", {"a": 1.0}),
    ("lorentz-square", {"a": 1.0, "q": 1.0}),
]


def _window(spec):
    lo = max(spec.domain.lo, -5.0)
    hi = min(spec.domain.hi, 5.0)
    if spec.kind is MassKind.POWER_LAW:
        lo = max(lo, 0.05)
    return lo, hi


# -- make_mass / evaluate_mass -------------------------------------------------------

def test_rational_square_a1_is_constant():
    spec = make_mass("rational-square", {"a": 1.0})
    x = np.linspace(-10, 10, 101)
    np.testing.assert_allclose(spec(x), 1.0, rtol=0, atol=0)


def test_constant_mass_values():
    spec = make_mass(MassKind.CONSTANT, {})
    assert evaluate_mass(spec, 0.0) == 1.0
    assert evaluate_mass(spec, 5.0) == 1.0


@pytest.mark.parametrize("params", [{"a": 1.0, "q": -1.0}, {"a": 1.0}, {"q": 1.0}])
def test_lorentz_bad_params(params):
    with pytest.raises(InvalidParam):
        make_mass("lorentz-square", params)


def test_missing_param_is_invalid_param():
    with pytest.raises(MissingParam):
        make_mass("exponential", {})
    assert issubclass(MissingParam, InvalidParam)


def test_extra_and_nonfinite_params():
    with pytest.raises(InvalidParam):
        make_mass("constant", {"a": 1.0})
    with pytest.raises(InvalidParam):
        make_mass("exponential", {"a": float("nan")})


def test_unknown_kind():
    with pytest.raises(InvalidParam):
        make_mass("quartic", {})


@pytest.mark.parametrize("kind,params,x,expected", [
    ("rational-square", {"a": 2.0}, 0.0, 4.0),
    ("exponential", {"a": 0.0}, 7.0, 1.0),
    ("tanh-shift", {"a": 1.0}, 0.0, 1.0),
])
def test_evaluate_mass_examples(kind, params, x, expected):
    assert evaluate_mass(make_mass(kind, params), x) == pytest.approx(expected, abs=1e-15)


def test_evaluate_out_of_domain():
    spec = make_mass("power-law", {"a": 2.0})
    with pytest.raises(OutOfDomain):
        evaluate_mass(spec, -1.0)


def test_power_law_domain_rules():
    spec = make_mass("power-law", {"a": 2.0})
    assert spec.domain.lo > 0 and spec.domain.lo_limit == 0.0
    with pytest.raises(SingularDomain):
        make_mass("power-law", {"a": -1.0}, domain=(0.0, 2.0))
    with pytest.raises(SingularDomain):
        make_mass("power-law", {"a": 2.0}, domain=(-1.0, 2.0))


def test_nonpositive_custom_mass_names_abscissa():
    with pytest.raises(NonPositiveMass) as info:
        make_mass("custom", custom_profile=lambda x: x - 1.0, domain=(0.0, 3.0))
    assert info.value.x <= 1.0


def test_exponential_carries_warning():
    assert make_mass("exponential", {"a": 1.0}).warnings
    assert not make_mass("exponential", {"a": 0.0}).warnings


def test_tanh_shift_far_left_stays_positive():
    spec = make_mass("tanh-shift", {"a": 1.0})
    assert evaluate_mass(spec, -300.0) > 0


# -- mu_map ------------------------------------------------------------------------------

def test_mu_examples():
    assert mu_map(make_mass("constant"))(1.5) == 1.5
    assert mu_map(make_mass("rational-square", {"a": 2.0}))(1.0) == pytest.approx(1 + math.pi / 4, abs=1e-15)
    assert mu_map(make_mass("exponential", {"a": 2.0}))(0.0) == pytest.approx(1.0, abs=1e-15)


def test_custom_exponential_profile_mu():
    spec = make_mass("custom", custom_profile=lambda x: np.exp(2 * x))
    mm = mu_map(spec, origin=-math.inf)
    assert abs(mm(0.0) - 1.0) < 1e-8
    assert classify_range(mm) is RangeClass.HALF_LINE


def test_custom_origin_default_and_domain():
    spec = make_mass("custom", custom_profile=lambda x: 1.0 + 0 * x, domain=(2.0, 5.0))
    mm = mu_map(spec)
    assert mm.integration_origin == 2.0
    assert mm(3.0) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(OutOfDomain):
        mu_map(spec, origin=7.0)


@pytest.mark.parametrize("kind,params", [("rational-square", {"a": 1.0}), ("exponential", {"a": 0.0}),
                                         ("tanh-shift", {"a": 0.0})])
def test_limit_collapse(kind, params):
    x = np.linspace(-4, 4, 81)
    np.testing.assert_allclose(mu_map(make_mass(kind, params))(x), x, atol=1e-12, rtol=0)


@pytest.mark.parametrize("kind,params", CATALOG_SPECS)
def test_catalog_matches_quadrature(kind, params):
    spec = make_mass(kind, params)
    closed = mu_map(spec)
    custom = make_mass("custom", custom_profile=spec, domain=spec.domain)
    origin = closed.integration_origin
    if math.isnan(origin):
        # mu vanishes only at an endpoint limit
        origin = spec.domain.lo_limit if closed.mu_min == 0.0 else spec.domain.hi_limit
    quad = mu_map(custom, origin=origin)
    lo, hi = _window(spec)
    x = np.linspace(lo, hi, 57)
    np.testing.assert_allclose(quad(x), closed(x), atol=1e-7, rtol=1e-9)


@pytest.mark.parametrize("kind,params", CATALOG_SPECS)
@settings(max_examples=40, deadline=None)
@given(u=st.floats(0.0, 1.0), v=st.floats(0.0, 1.0))
def test_mu_monotone(kind, params, u, v):
    spec = make_mass(kind, params)
    lo, hi = _window(spec)
    x1, x2 = sorted((lo + u * (hi - lo), lo + v * (hi - lo)))
    if x2 - x1 < 1e-9:
        return
    mm = mu_map(spec)
    assert mm(x1) < mm(x2)


@pytest.mark.parametrize("kind,params", CATALOG_SPECS)
def test_mu_derivative_consistency(kind, params):
    spec = make_mass(kind, params)
    mm = mu_map(spec)
    lo, hi = _window(spec)
    h = 1e-5
    x = np.random.default_rng(7).uniform(lo + 2 * h, hi - 2 * h, 100)
    fd = (mm(x + h) - mm(x - h)) / (2 * h)
    scale = np.maximum(1.0, np.abs(mm(x)))
    assert np.max(np.abs(fd - np.sqrt(spec(x))) / scale) < 1e-6


# -- classification ------------------------------------------------------------------------

@pytest.mark.parametrize("kind,params,expected", [
    ("constant", {}, RangeClass.FULL_LINE),
    ("rational-square", {"a": 2.0}, RangeClass.FULL_LINE),
    ("exponential", {"a": 1.0}, RangeClass.HALF_LINE),
    ("exponential", {"a": -1.0}, RangeClass.HALF_LINE),
    ("tanh-shift", {"a": 1.0}, RangeClass.HALF_LINE),
    ("power-law", {"a": 2.0}, RangeClass.HALF_LINE),
    ("power-law", {"a": -2.0}, RangeClass.FULL_LINE),
    ("sech-square", {"a": 1.0}, RangeClass.BOUNDED),
    ("lorentz-square", {"a": 1.0, "q": 1.0}, RangeClass.BOUNDED),
])
def test_classify(kind, params, expected):
    assert classify_range(mu_map(make_mass(kind, params))) is expected


def test_admissibility():
    assert admissible_for_orthonormal_family(RangeClass.FULL_LINE)
    assert not admissible_for_orthonormal_family(RangeClass.HALF_LINE)
    assert not admissible_for_orthonormal_family(RangeClass.BOUNDED)


def test_catalog_rows():
    assert len(CATALOG) == 7
    notes = {e.kind: e.note for e in CATALOG}
    assert "excluded" in notes[MassKind.SECH_SQUARE]
    assert "a=1 => constant mass" in notes[MassKind.RATIONAL_SQUARE]


# -- tables ----------------------------------------------------------------------------------

def test_table_validation():
    x = np.linspace(0, 1, 20)
    with pytest.raises(InvalidParam):
        MassTable(x[:10], np.ones(10))
    with pytest.raises(InvalidParam):
        MassTable(x[::-1], np.ones(20))
    m = np.ones(20)
    m[3] = 0.0
    with pytest.raises(NonPositiveMass):
        MassTable(x, m)


def test_profile_csv_round_trip(tmp_path):
    x = np.linspace(-3, 3, 61)
    table = MassTable(x, np.exp(0.3 * x))
    path = tmp_path / "m.csv"
    write_profile_csv(path, table)
    back = read_profile_csv(path)
    assert np.array_equal(back.x, table.x) and np.array_equal(back.m, table.m)


def test_table_mass_interpolates(tmp_path):
    x = np.linspace(-4, 4, 401)
    spec = make_mass("custom", custom_profile=MassTable(x, 1 + 0.5 * np.tanh(x)))
    xs = np.linspace(-3.9, 3.9, 33)
    np.testing.assert_allclose(spec(xs), 1 + 0.5 * np.tanh(xs), atol=1e-7)
    m, m1, m2 = spec.derivatives(xs)
    np.testing.assert_allclose(m1, 0.5 / np.cosh(xs) ** 2, atol=1e-4)
    assert spec.domain == Domain.closed(-4.0, 4.0)


def test_profile_csv_header_required(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(InvalidParam):
        read_profile_csv(path)
