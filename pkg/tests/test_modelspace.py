import numpy as np
import pytest

from conftest import FIXTURES, random_disk, random_vector
from ttolab.blaschke import FiniteBlaschkeProduct
from ttolab.errors import BasisMismatchError, QuadratureError
from ttolab.modelspace import (
    ModelSpaceBasis,
    conjugate_kernel_coords,
    conjugation_matrix,
    default_quadrature_size,
    kernel_coords,
    project,
    transfer_matrix,
)

Z2 = FiniteBlaschkeProduct.monomial(2)


@pytest.fixture(scope="module")
def bases():
    return {k: ModelSpaceBasis(t) for k, t in FIXTURES.items()}


@pytest.fixture(params=sorted(FIXTURES))
def basis(request, bases):
    return bases[request.param]


def test_quadrature_size_rule():
    assert default_quadrature_size(Z2) == 256
    assert default_quadrature_size(FiniteBlaschkeProduct.monomial(20)) == 320
    assert default_quadrature_size(FiniteBlaschkeProduct.from_zeros([0.99])) > 256


def test_gram_is_identity(basis):
    E = basis.samples
    assert np.max(np.abs(E.conj().T @ E / basis.quadrature_size - np.eye(basis.n))) < 1e-12


def test_undersampled_basis_rejected():
    with pytest.raises(QuadratureError, match="quadrature resolution insufficient"):
        ModelSpaceBasis(FiniteBlaschkeProduct.from_zeros([0.95, -0.9j]), 32)


def test_reproducing_property(basis, rng):
    for _ in range(20):
        f = random_vector(rng, basis.n)
        lam = random_disk(rng, 0.9)
        assert abs(basis.inner(f, kernel_coords(basis, lam)) - basis.evaluate(f, lam)) < 1e-9


def test_kernel_gram_and_norm(basis, rng):
    lam, mu = random_disk(rng, 0.9, size=2)
    k_lam, k_mu = basis.kernel_coords(lam), basis.kernel_coords(mu)
    assert abs(basis.inner(k_lam, k_mu) - basis.kernel_values(lam, mu)) < 1e-12
    expected = (1 - abs(basis.theta(lam)) ** 2) / (1 - abs(lam) ** 2)
    assert abs(np.vdot(k_lam, k_lam).real - expected) < 1e-9


def test_kernel_examples_z2():
    b = ModelSpaceBasis(Z2)
    assert np.allclose(b.kernel_coords(0), [1, 0])
    assert np.linalg.norm(b.kernel_coords(1.0)) ** 2 == pytest.approx(2.0, abs=1e-12)
    assert np.allclose(b.conjugate_kernel_coords(0), [0, 1], atol=1e-14)


def test_conjugation_z2_is_antidiagonal():
    J = conjugation_matrix(ModelSpaceBasis(Z2))
    assert np.allclose(J, [[0, 1], [1, 0]], atol=1e-14)


def test_conjugation_involutive_isometric(basis, rng):
    J = basis.conjugation_matrix()
    assert np.max(np.abs(J @ J.conj() - np.eye(basis.n))) < 1e-10
    for _ in range(20):
        v = random_vector(rng, basis.n)
        assert abs(np.linalg.norm(basis.conjugate(v)) - np.linalg.norm(v)) < 1e-10


def test_conjugate_kernel(basis, rng):
    for lam in random_disk(rng, 0.9, size=5):
        ck = conjugate_kernel_coords(basis, lam)
        assert np.max(np.abs(basis.conjugate(basis.kernel_coords(lam)) - ck)) < 1e-10
        assert abs(basis.evaluate(ck, lam) - basis.theta.derivative(lam)) < 1e-9


def test_project_examples(basis, rng):
    z = basis.nodes
    e1 = np.zeros(basis.n)
    e1[0] = 1
    assert np.max(np.abs(project(basis, basis.samples[:, 0]) - e1)) < 1e-12
    assert np.max(np.abs(project(basis, basis.theta_samples * z))) < 1e-9
    lam = random_disk(rng, 0.8)
    assert np.max(np.abs(project(basis, basis.kernel_values(lam, z)) - basis.kernel_coords(lam))) < 1e-9


def test_pick_gram_of_kernels():
    theta = FIXTURES["degree5"]
    b = ModelSpaceBasis(theta)
    zs = theta.zero_array
    K = np.column_stack([b.kernel_coords(z) for z in zs])
    G = K.conj().T @ K  # G[j, k] = <k_{z_k}, k_{z_j}>
    assert np.max(np.abs(G - 1 / (1 - zs[:, None] * zs[None, :].conj()))) < 1e-10


def test_transfer_between_orderings():
    theta = FIXTURES["random3a"]
    other = FiniteBlaschkeProduct.from_zeros(theta.zeros[::-1], theta.gamma)
    b1, b2 = ModelSpaceBasis(theta), ModelSpaceBasis(other)
    T = transfer_matrix(b1, b2)
    f = np.array([1.0, -2j, 0.5])
    z = 0.3 + 0.1j
    assert abs(b2.evaluate(T @ f, z) - b1.evaluate(f, z)) < 1e-12
    with pytest.raises(BasisMismatchError):
        transfer_matrix(b1, ModelSpaceBasis(FIXTURES["random3b"]))
