import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ttolab.errors import DomainError, PoleError
from ttolab.moebius import (
    CIRCLE,
    DISK,
    EXTERIOR,
    INFINITY,
    ExtendedParameter,
    MoebiusAutomorphism,
    blaschke_factor_eval,
    compose_factors,
    conj_flip,
    decompose_with_prefix,
    ell,
    orbit_automorphism,
    rotate_inside_factor,
    twisted_composition,
)

CIRCLE_PTS = np.exp(2j * np.pi * (np.arange(32) + 0.3) / 32)


@st.composite
def disk_points(draw, radius=0.95):
    r = draw(st.floats(0.0, radius))
    t = draw(st.floats(0.0, 2 * np.pi))
    return complex(r * np.cos(t), r * np.sin(t))


unimodulars = st.floats(0.0, 2 * np.pi).map(lambda t: complex(np.cos(t), np.sin(t)))


def test_factor_examples():
    assert blaschke_factor_eval(0, 0.3 + 0.1j) == pytest.approx(0.3 + 0.1j)
    assert blaschke_factor_eval(0.5, 0.5) == 0
    assert blaschke_factor_eval(0.5, 0) == pytest.approx(-0.5)


def test_factor_pole():
    with pytest.raises(PoleError, match="evaluation at pole"):
        blaschke_factor_eval(0.5, 2.0)


def test_factor_unimodular_on_circle():
    assert np.allclose(np.abs(blaschke_factor_eval(0.3 - 0.6j, CIRCLE_PTS)), 1.0, atol=1e-14)


def test_compose_factors_examples():
    u, d = compose_factors(0.5, -0.5)
    assert u == pytest.approx(1) and abs(d) < 1e-15
    u, d = compose_factors(0.5, 0.5)
    assert u == pytest.approx(1) and d == pytest.approx(0.8)
    u, d = compose_factors(0, 0.3j)
    assert u == pytest.approx(1) and d == pytest.approx(0.3j)


@settings(max_examples=60, deadline=None)
@given(disk_points(), disk_points())
def test_compose_factors_pointwise(a, c):
    u, d = compose_factors(a, c)
    lhs = blaschke_factor_eval(a, blaschke_factor_eval(c, CIRCLE_PTS))
    assert np.max(np.abs(lhs - u * blaschke_factor_eval(d, CIRCLE_PTS))) < 1e-11


@settings(max_examples=40, deadline=None)
@given(disk_points())
def test_inverse_factor_is_exact(a):
    u, d = compose_factors(-a, a)
    assert u == 1 and d == 0


def test_rotate_inside_factor_examples():
    assert rotate_inside_factor(0.4, 1) == pytest.approx((1, 0.4))
    assert rotate_inside_factor(0.4, -1) == pytest.approx((-1, -0.4))
    assert rotate_inside_factor(0.4j, 1j) == pytest.approx((1j, 0.4))


@settings(max_examples=40, deadline=None)
@given(disk_points(), unimodulars)
def test_rotate_inside_factor_pointwise(a, zeta):
    z, ap = rotate_inside_factor(a, zeta)
    lhs = blaschke_factor_eval(a, zeta * CIRCLE_PTS)
    assert np.max(np.abs(lhs - z * blaschke_factor_eval(ap, CIRCLE_PTS))) < 1e-12


def test_ell_examples():
    assert ell(0, ExtendedParameter(DISK, 0.7j)).isclose(ExtendedParameter(DISK, 0.7j))
    out = ell(0.5, ExtendedParameter(DISK, 0.5))
    assert out.kind == DISK and abs(out.value) < 1e-15
    assert ell(0.5, ExtendedParameter(EXTERIOR, 2.0)).kind == INFINITY


@settings(max_examples=60, deadline=None)
@given(disk_points(0.9), disk_points(0.9), unimodulars, st.floats(1.1, 5.0))
def test_ell_preserves_classes(c, a, w, r):
    assert ell(c, ExtendedParameter(DISK, a)).kind == DISK
    assert ell(c, ExtendedParameter(CIRCLE, w)).kind == CIRCLE
    assert ell(c, ExtendedParameter(EXTERIOR, r * w)).kind in (EXTERIOR, INFINITY)
    back = ell(-c, ell(c, ExtendedParameter(DISK, a)))
    assert abs(back.value - a) < 1e-12


def test_twisted_composition_examples():
    assert twisted_composition(0.3, 0.3, 1).is_identity(1e-12)
    psi = twisted_composition(0, 0.25 - 0.1j, np.exp(0.9j))
    assert psi.isclose(MoebiusAutomorphism(np.exp(0.9j), 0.25 - 0.1j))


def test_twisted_composition_oracle():
    a, ap, zeta = 0.2, 0.4, 1j
    psi = twisted_composition(a, ap, zeta)
    pts = 0.7 * np.exp(2j * np.pi * np.arange(10) / 10)
    direct = blaschke_factor_eval(-a, zeta * blaschke_factor_eval(ap, pts))
    assert np.max(np.abs(psi(pts) - direct)) < 1e-12


@settings(max_examples=200, deadline=None)
@given(disk_points(), disk_points(), unimodulars)
def test_twisted_composition_is_automorphism(a, ap, zeta):
    psi = twisted_composition(a, ap, zeta)
    assert abs(abs(psi.lam) - 1) < 1e-12 and abs(psi.c) < 1


@settings(max_examples=60, deadline=None)
@given(disk_points(0.9), disk_points(0.9), unimodulars)
def test_decompose_with_prefix_round_trip(a, c, lam):
    psi = MoebiusAutomorphism(lam, c)
    zeta, ap = decompose_with_prefix(a, psi)
    again = twisted_composition(a, ap, zeta)
    assert np.max(np.abs(again(CIRCLE_PTS) - psi(CIRCLE_PTS))) < 1e-11


def test_decompose_with_prefix_examples():
    zeta, ap = decompose_with_prefix(0, MoebiusAutomorphism(1j, 0.3))
    assert zeta == pytest.approx(1j) and ap == pytest.approx(0.3)
    zeta, ap = decompose_with_prefix(0.3, MoebiusAutomorphism.identity())
    assert twisted_composition(0.3, ap, zeta).is_identity(1e-12)
    psi = MoebiusAutomorphism(1j, 0.2)
    zeta, ap = decompose_with_prefix(0.3, psi)
    assert twisted_composition(0.3, ap, zeta).isclose(psi, 1e-12)


def test_orbit_identity_when_parameters_agree():
    orbit = orbit_automorphism(0.4 - 0.2j, 0.4 - 0.2j, 1)
    for v in (0.1, 0.5j, -0.7):
        assert abs(orbit(ExtendedParameter(DISK, v)).value - v) < 1e-12


def test_orbit_sends_a_to_a_prime(rng):
    for _ in range(20):
        a, ap = 0.8 * rng.uniform(size=2) * np.exp(2j * np.pi * rng.uniform(size=2))
        zeta = np.exp(2j * np.pi * rng.uniform())
        out = orbit_automorphism(a, ap, zeta)(ExtendedParameter(DISK, a))
        assert abs(out.value - ap) < 1e-12


def test_orbit_keeps_disk(rng):
    for _ in range(100):
        a, ap = 0.9 * rng.uniform(size=2) * np.exp(2j * np.pi * rng.uniform(size=2))
        zeta = np.exp(2j * np.pi * rng.uniform())
        assert orbit_automorphism(a, ap, zeta)(ExtendedParameter(DISK, 0.0)).kind == DISK


def test_conj_flip_examples():
    assert conj_flip(ExtendedParameter(DISK, 0.0)).kind == INFINITY
    w = cmath.exp(1j * cmath.pi / 3)
    assert conj_flip(ExtendedParameter(CIRCLE, w)).isclose(ExtendedParameter(CIRCLE, w))
    out = conj_flip(ExtendedParameter(DISK, 0.5j))
    assert out.kind == EXTERIOR and out.value == pytest.approx(2j)


@settings(max_examples=60, deadline=None)
@given(st.one_of(disk_points(), st.just(None), st.floats(1.01, 9.0).map(lambda r: r * 1j)))
def test_conj_flip_involution(v):
    a = ExtendedParameter.from_value(v)
    assert conj_flip(conj_flip(a)).isclose(a)


def test_parameter_classification():
    assert ExtendedParameter.from_value(1 + 1e-13).kind == CIRCLE
    assert ExtendedParameter.from_value(1 + 1e-13).value == 1
    assert ExtendedParameter.from_value(0.999).kind == DISK
    assert ExtendedParameter.from_value("inf").kind == INFINITY
    with pytest.raises(DomainError):
        ExtendedParameter(DISK, 1.5)


def test_parameter_json_round_trip():
    for v in (0.3 - 0.1j, 1j, 3.0, None):
        a = ExtendedParameter.from_value(v)
        assert ExtendedParameter.from_json(a.to_json()).isclose(a)


def test_reciprocal_is_not_conjugated():
    a = ExtendedParameter.from_value(0.5j)
    assert a.reciprocal().value == pytest.approx(-2j)
    assert ExtendedParameter.from_value(0).reciprocal().kind == INFINITY


def test_automorphism_group_laws(rng):
    for _ in range(10):
        p = MoebiusAutomorphism(np.exp(2j * np.pi * rng.uniform()), 0.8 * rng.uniform() * np.exp(1j * rng.uniform(0, 6.3)))
        q = MoebiusAutomorphism(np.exp(2j * np.pi * rng.uniform()), 0.8 * rng.uniform() * np.exp(1j * rng.uniform(0, 6.3)))
        assert np.max(np.abs(p.compose(q)(CIRCLE_PTS) - p(q(CIRCLE_PTS)))) < 1e-12
        assert p.compose(p.inverse()).is_identity(1e-12)
        assert np.max(np.abs(p.sharp()(CIRCLE_PTS) - np.conj(p(np.conj(CIRCLE_PTS))))) < 1e-12
        z = 0.3 + 0.2j
        assert abs(p.sqrt_derivative(z) ** 2 - p.derivative(z)) < 1e-12
