import numpy as np
import pytest

from conftest import FIXTURES
from ttolab.blaschke import FiniteBlaschkeProduct
from ttolab.modelspace import ModelSpaceBasis
from ttolab.moebius import INFINITY, ExtendedParameter, MoebiusAutomorphism
from ttolab.sedlock import algebra, commutator_residual
from ttolab.tto import Symbol
from ttolab.unitaries import (
    COMPOSITION,
    CROFOOT,
    SHARP,
    composition,
    composition_intertwining_residual,
    conjugated_algebra_residual,
    crofoot,
    image_span_residual,
    kernel_image_residual,
    lambda_image,
    phase_aligned_residual,
    sarason_crofoot_residual,
    sharp_intertwining_residual,
    sharp_unitary,
    word_relation_residuals,
)

P = ExtendedParameter.from_value
PSI = MoebiusAutomorphism(np.exp(0.7j), 0.2 - 0.1j)
PHI = MoebiusAutomorphism(np.exp(-2j), 0.3j)
PARAMS = [0, 0.3, 0.5j, 1, np.exp(1j * np.pi / 4), 2, None]


@pytest.fixture(scope="module")
def bases():
    return {k: ModelSpaceBasis(t) for k, t in FIXTURES.items()}


@pytest.fixture(params=sorted(FIXTURES))
def basis(request, bases):
    return bases[request.param]


def test_trivial_unitaries(basis):
    assert np.max(np.abs(crofoot(basis, 0).entries - np.eye(basis.n))) < 1e-12
    assert np.max(np.abs(composition(basis, MoebiusAutomorphism.identity()).entries - np.eye(basis.n))) < 1e-12


def test_unitarity(basis):
    for U in (crofoot(basis, 0.4 - 0.3j), composition(basis, PSI), sharp_unitary(basis)):
        assert U.unitarity_residual() < 1e-9
        assert U.adjoint().unitarity_residual() < 1e-9


def test_word_relations(basis):
    res = word_relation_residuals(basis, 0.3, 0.2j, PSI, PHI)
    assert sorted(res) == ["i", "ii", "iii", "iv", "v", "vi", "vii"]
    assert max(res.values()) < 1e-9


def test_relation_i_with_inverse_parameter(basis):
    res = word_relation_residuals(basis, 0.45 + 0.1j, -0.45 - 0.1j, PSI, PHI)
    assert res["i"] < 1e-9


def test_sarason_crofoot_and_kernel_image(basis):
    for a in (0.3, -0.2 + 0.5j):
        assert sarason_crofoot_residual(basis, a) < 1e-9
        assert kernel_image_residual(basis, a) < 1e-9


def test_composition_intertwining(basis):
    for phi in (Symbol.monomial(1), Symbol.monomial(2)):
        assert composition_intertwining_residual(basis, PSI, phi) < 1e-9
    z2 = ModelSpaceBasis(FiniteBlaschkeProduct.monomial(2))
    assert composition_intertwining_residual(z2, MoebiusAutomorphism.rotation(np.exp(1.3j)), Symbol.monomial(1)) < 1e-10


def test_sharp_intertwining(basis):
    for phi in (Symbol.monomial(1), Symbol.monomial(2), Symbol.trigonometric({-1: 1j, 1: 0.5})):
        assert sharp_intertwining_residual(basis, phi) < 1e-9


def test_sharp_maps_kernel_to_conjugate_kernel(basis):
    U = sharp_unitary(basis)
    image = U.entries @ basis.kernel_coords(0.0)
    assert np.max(np.abs(image - U.target.conjugate_kernel_coords(0.0))) < 1e-10


def test_sharp_on_z2_stays_in_space():
    b = ModelSpaceBasis(FiniteBlaschkeProduct.monomial(2))
    U = sharp_unitary(b)
    assert U.target.theta == b.theta


def test_lambda_image_examples():
    assert lambda_image(SHARP, P(0)).kind == INFINITY
    assert lambda_image(SHARP, P(0.5j)).value == pytest.approx(-2j)
    out = lambda_image(CROFOOT, P(0.3 + 0.2j), 0.3 + 0.2j)
    assert abs(out.value) < 1e-15
    a = P(0.4 - 0.1j)
    assert lambda_image(COMPOSITION, a, PSI) == a
    with pytest.raises(ValueError):
        lambda_image("shift", a)


@pytest.mark.parametrize("a", PARAMS, ids=str)
def test_image_algebras(bases, a):
    b = bases["random3a"]
    for U in (sharp_unitary(b), composition(b, PSI), crofoot(b, 0.4 - 0.3j)):
        assert image_span_residual(U, P(a)) < 1e-8


def test_images_stay_abelian(bases):
    b = bases["degree5"]
    U = crofoot(b, 0.25j)
    alg = algebra(b, P(0.3))
    dst = algebra(U.target, lambda_image(CROFOOT, P(0.3), 0.25j))
    conj = [U.conjugate(E) for E in alg.elements]
    assert np.linalg.matrix_rank(np.column_stack([E.entries.ravel() for E in conj]), 1e-9) == 5
    assert commutator_residual(dst) < 1e-9


def test_word_images_compose(bases):
    b = bases["random3b"]
    a = P(0.35 - 0.2j)
    chain = [
        lambda src: crofoot(src, 0.3j),
        sharp_unitary,
        lambda src: composition(src, PSI),
        lambda src: crofoot(src, -0.25),
        sharp_unitary,
    ]
    U = np.eye(3, dtype=complex)
    src, param = b, a
    for step in chain:
        V = step(src)
        U = V.entries @ U
        param = lambda_image(V.kind, param, V.parameter)
        src = V.target
    res = conjugated_algebra_residual(U, algebra(b, a), algebra(src, param))
    assert res < 1e-9
    x = (a.value - 0.3j) / (1 - np.conj(0.3j) * a.value)
    x = 1 / x
    x = (x + 0.25) / (1 + 0.25 * x)
    assert abs(param.value - 1 / x) < 1e-12


def test_phase_aligned_residual():
    A = np.array([[1, 2j], [0.5, -1]])
    assert phase_aligned_residual(np.exp(1.1j) * A, A) < 1e-15
    assert phase_aligned_residual(A, 2 * A) > 0.5
