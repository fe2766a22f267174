import numpy as np
import pytest

from conftest import FIXTURES, random_vector
from ttolab.blaschke import FiniteBlaschkeProduct, level_set
from ttolab.errors import DomainError, LevelSetError
from ttolab.modelspace import ModelSpaceBasis
from ttolab.moebius import ExtendedParameter, conj_flip
from ttolab.sedlock import (
    SedlockAlgebra,
    algebra,
    clark_projections,
    commutant,
    commutator_residual,
    generator,
    idempotents,
    intersection_dimension,
    membership,
    mutual_span_residual,
    resolution_residuals,
    span_residual,
    symbol_member,
)
from ttolab.tto import Symbol, operator_norm, tto_from_samples, tto_matrix

P = ExtendedParameter.from_value
PARAMS = [0, 0.3, 0.5j, 1, np.exp(1j * np.pi / 4), 2, None]


@pytest.fixture(scope="module")
def b3():
    return ModelSpaceBasis(FIXTURES["random3a"])


@pytest.fixture(scope="module")
def bz2():
    return ModelSpaceBasis(FiniteBlaschkeProduct.monomial(2))


def test_generator_z2(bz2):
    for a in (0.0, 0.4 - 0.2j, 1j):
        assert np.allclose(generator(bz2, P(a)).entries, [[0, a], [1, 0]], atol=1e-14)


def test_generator_at_zero_is_shift(b3):
    assert np.array_equal(generator(b3, P(0)).entries, tto_matrix(b3, Symbol.monomial(1)).entries)


def test_clark_generator(b3):
    for a in (1.0, np.exp(0.7j), -1j):
        S = generator(b3, P(a)).entries
        assert np.max(np.abs(S.conj().T @ S - np.eye(3))) < 1e-10
        ev = np.sort_complex(np.linalg.eigvals(S))
        assert np.max(np.abs(ev - np.sort_complex(level_set(b3.theta, a)))) < 1e-8


def test_exterior_generator_is_flipped_adjoint(b3):
    assert np.array_equal(generator(b3, P(2.0)).entries, generator(b3, P(0.5)).entries.conj().T)
    assert np.array_equal(generator(b3, P(None)).entries, generator(b3, P(0)).entries.conj().T)


def test_algebra_z2_at_zero(bz2):
    alg = algebra(bz2, P(0))
    assert alg.dimension == 2
    assert membership(alg, np.eye(2)) < 1e-14
    assert membership(alg, np.eye(2, k=-1)) < 1e-14


def test_algebra_dimension_random(rng):
    for n in range(1, 7):
        zs = 0.8 * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
        b = ModelSpaceBasis(FiniteBlaschkeProduct.from_zeros(zs))
        a = 0.7 * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
        alg = algebra(b, P(a), check_commutant=True)
        assert alg.dimension == n
        assert np.max(np.abs(alg.frame.conj().T @ alg.frame - np.eye(n))) < 1e-12


@pytest.mark.parametrize("a", PARAMS, ids=str)
def test_structure(b3, a):
    alg = algebra(b3, P(a))
    assert commutator_residual(alg) < 1e-9
    com = commutant(alg.generator)
    assert len(com) == 3
    assert span_residual(alg, com) < 1e-9
    assert mutual_span_residual(alg, SedlockAlgebra(b3, alg.a, alg.generator, com)) < 1e-9
    flipped = algebra(b3, conj_flip(P(a)))
    assert span_residual(flipped, [E.H for E in alg.elements]) < 1e-9
    for X in alg.elements:
        for Y in alg.elements:
            assert membership(alg, X @ Y) < 1e-9


def test_pairwise_intersections(b3):
    algs = [algebra(b3, P(a)) for a in PARAMS]
    for i in range(len(algs)):
        for j in range(i + 1, len(algs)):
            assert intersection_dimension(algs[i], algs[j]) == 1


def test_commutant_of_identity():
    assert len(commutant(np.eye(3))) == 9


def test_generator_adjoint_not_member(b3):
    alg = algebra(b3, P(0.4 + 0.1j))
    assert membership(alg, alg.generator) < 1e-12
    assert membership(alg, alg.generator.H) > 0.01


def test_normality_is_scarce(b3, rng):
    alg = algebra(b3, P(0.3))
    for _ in range(50):
        coef = random_vector(rng, 3)
        coef[1:] = np.where(np.abs(coef[1:]) < 1e-3, 1e-3, coef[1:])
        A = sum(c * E.entries for c, E in zip(coef, alg.elements))
        assert np.max(np.abs(A @ A.conj().T - A.conj().T @ A)) > 1e-8


def _phi0(basis, rng):
    f = random_vector(rng, basis.n)
    k0 = basis.kernel_coords(0.0)
    return f - basis.evaluate(f, 0.0) / basis.evaluate(k0, 0.0) * k0


def test_symbol_member(b3, rng):
    phi0 = _phi0(b3, rng)
    assert np.max(np.abs(symbol_member(b3, P(0.3), np.zeros(3), 1.0).entries - np.eye(3))) < 1e-12
    for a in (0.4, 0.3 - 0.5j, 2.0, np.exp(1j)):
        assert membership(algebra(b3, P(a)), symbol_member(b3, P(a), phi0, 0.7 - 0.2j)) < 1e-9
    A0 = symbol_member(b3, P(0), phi0, 0.5)
    f = b3.synthesize(phi0) + 0.5
    assert np.max(np.abs(A0.entries - tto_from_samples(b3, f).entries)) < 1e-12
    with pytest.raises(DomainError, match="vanish"):
        symbol_member(b3, P(0.3), b3.kernel_coords(0.0), 0)


def test_idempotents_z2(bz2):
    Q = idempotents(bz2, P(0.25))
    assert len(Q) == 2
    laws = resolution_residuals(Q)
    assert max(laws.values()) < 1e-12
    for w in (0.5, -0.5):
        assert abs(bz2.theta.derivative(w) - 2 * w) < 1e-15


@pytest.mark.parametrize("name", ["random3a", "random3b", "degree5"])
def test_idempotent_laws(name):
    b = ModelSpaceBasis(FIXTURES[name])
    Q = idempotents(b, P(0.3 - 0.2j))
    assert max(resolution_residuals(Q).values()) < 1e-9
    assert min(operator_norm(q) for q in Q) > 1 + 1e-6
    assert span_residual(algebra(b, P(0.3 - 0.2j)), Q) < 1e-9


def test_idempotents_reject_multiple_points():
    b = ModelSpaceBasis(FiniteBlaschkeProduct.monomial(3))
    with pytest.raises(LevelSetError, match="level set not simple"):
        idempotents(b, P(0))
    with pytest.raises(DomainError):
        idempotents(b, P(1))


def test_clark_projections_z2(bz2):
    Pj = clark_projections(bz2, P(1))
    assert len(Pj) == 2
    for p in Pj:
        assert np.linalg.matrix_rank(p.entries, 1e-10) == 1
    assert np.max(np.abs(sum(p.entries for p in Pj) - np.eye(2))) < 1e-12


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_clark_projection_laws(name):
    b = ModelSpaceBasis(FIXTURES[name])
    a = P(np.exp(0.4j))
    Pj = clark_projections(b, a)
    assert max(resolution_residuals(Pj).values()) < 1e-9
    S = generator(b, a).entries
    for p in Pj:
        assert np.max(np.abs(p.entries - p.entries.conj().T)) < 1e-9
        assert abs(operator_norm(p) - 1) < 1e-9
        assert np.max(np.abs(S @ p.entries - p.entries @ S)) < 1e-9
