"""Concrete orthonormal realization of the model space ``K_Theta``.

The basis is the rational orthonormal system attached to the ordered zero
list ``z_1, ..., z_n``::

    e_k(z) = sqrt(1 - |z_k|^2) / (1 - conj(z_k) z) * prod_{j<k} b_{z_j}(z)

Inner products of boundary functions are discrete means over ``M``
equispaced points of the circle.
"""

from __future__ import annotations

import math

import numpy as np

from .blaschke import FiniteBlaschkeProduct, _factors
from .errors import BasisMismatchError, QuadratureError

GRAM_TOL = 1e-10


def default_quadrature_size(theta: FiniteBlaschkeProduct) -> int:
    """``max(256, 16 n)``, raised further when a zero sits close to the circle.

    Aliasing in the discrete inner product decays like ``r**M`` with ``r``
    the largest zero modulus, so ``M`` is also kept above ``40 / -log(r)``.
    """
    n = theta.degree
    m = max(256, 16 * n)
    r = max(abs(z) for z in theta.zeros)
    if r > 0:
        m = max(m, int(math.ceil(40.0 / -math.log(r))))
    return int(m)


class ModelSpaceBasis:
    """Orthonormal basis of ``K_Theta`` sampled on a uniform circle grid.

    Parameters
    ----------
    theta : FiniteBlaschkeProduct
        The inner function.  Only the ordered zero list affects the basis;
        the front constant enters through the conjugation.
    quadrature_size : int, optional
        Number ``M`` of circle nodes.  Defaults to
        :func:`default_quadrature_size`.
    """

    def __init__(self, theta: FiniteBlaschkeProduct, quadrature_size: int | None = None):
        self.theta = theta
        self.n = theta.degree
        self.quadrature_size = int(quadrature_size or default_quadrature_size(theta))
        M = self.quadrature_size
        if M < 2 * self.n + 2:
            raise QuadratureError(f"quadrature size {M} too small for degree {self.n}")
        self.nodes = np.exp(2j * np.pi * np.arange(M) / M)
        self.samples = self.functions(self.nodes)
        self.theta_samples = theta(self.nodes)
        gram = self.samples.conj().T @ self.samples / M
        dev = np.max(np.abs(gram - np.eye(self.n)))
        if dev > GRAM_TOL:
            raise QuadratureError(f"quadrature resolution insufficient (Gram deviation {dev:.2e})")
        self._J = None

    @property
    def basis_id(self) -> tuple:
        """Identity of the basis: the ordered zero list."""
        return self.theta.zeros

    def __repr__(self):
        return f"ModelSpaceBasis(n={self.n}, M={self.quadrature_size})"

    def functions(self, z) -> np.ndarray:
        """Values ``e_k(z)``; shape ``z.shape + (n,)``."""
        z = np.asarray(z, dtype=complex)
        zs = self.theta.zero_array
        F = _factors(zs, z)
        ones = np.ones(z.shape + (1,), dtype=complex)
        prefix = np.cumprod(np.concatenate([ones, F[..., :-1]], axis=-1), axis=-1)
        head = np.sqrt(1.0 - np.abs(zs) ** 2) / (1.0 - zs.conj() * z[..., None])
        return head * prefix

    # -- sampling helpers -------------------------------------------------

    def project(self, boundary_values) -> np.ndarray:
        """Coordinates ``<f, e_k>`` of a function given by its values on the nodes."""
        f = np.asarray(boundary_values, dtype=complex)
        return self.samples.conj().T @ f / self.quadrature_size

    def synthesize(self, coords) -> np.ndarray:
        """Boundary values of ``sum_k coords_k e_k`` on the nodes."""
        return self.samples @ np.asarray(coords, dtype=complex)

    def evaluate(self, coords, z):
        """Evaluate the element with the given coordinates at ``z`` (disk or circle)."""
        out = self.functions(z) @ np.asarray(coords, dtype=complex)
        return complex(out) if np.ndim(out) == 0 else out

    def inner(self, u, v) -> complex:
        """``<u, v>`` for coordinate vectors (linear in ``u``)."""
        return complex(np.vdot(v, u))

    # -- kernels and conjugation -----------------------------------------

    def kernel_coords(self, lam) -> np.ndarray:
        """Coordinates of the reproducing kernel ``k_lam``: ``conj(e_j(lam))``."""
        return self.functions(complex(lam)).conj()

    def kernel_values(self, lam, z):
        """``k_lam(z) = (1 - conj(Theta(lam)) Theta(z)) / (1 - conj(lam) z)``."""
        lam = complex(lam)
        z = np.asarray(z, dtype=complex)
        return (1.0 - np.conj(self.theta(lam)) * self.theta(z)) / (1.0 - lam.conjugate() * z)

    def conjugate_kernel_coords(self, lam) -> np.ndarray:
        """Coordinates of ``C k_lam = (Theta(z) - Theta(lam)) / (z - lam)``."""
        return self.project(self.theta.difference_quotient(self.nodes, complex(lam)))

    def conjugation_matrix(self) -> np.ndarray:
        """Matrix ``J`` with ``C v = J conj(v)`` for ``C f = conj(f z) Theta``."""
        if self._J is None:
            vals = np.conj(self.samples * self.nodes[:, None]) * self.theta_samples[:, None]
            J = self.project(vals)
            dev = np.max(np.abs(J @ J.conj() - np.eye(self.n)))
            if dev > 1e-8:
                raise QuadratureError(f"quadrature resolution insufficient (C^2 deviation {dev:.2e})")
            self._J = J
        return self._J

    def conjugate(self, v) -> np.ndarray:
        """Apply the conjugation ``C`` to a coordinate vector."""
        return self.conjugation_matrix() @ np.conj(np.asarray(v, dtype=complex))


def kernel_coords(basis: ModelSpaceBasis, lam) -> np.ndarray:
    return basis.kernel_coords(lam)


def conjugate_kernel_coords(basis: ModelSpaceBasis, lam) -> np.ndarray:
    return basis.conjugate_kernel_coords(lam)


def conjugation_matrix(basis: ModelSpaceBasis) -> np.ndarray:
    return basis.conjugation_matrix()


def project(basis: ModelSpaceBasis, boundary_values) -> np.ndarray:
    return basis.project(boundary_values)


def transfer_matrix(src: ModelSpaceBasis, dst: ModelSpaceBasis, tol: float = 1e-9) -> np.ndarray:
    """Change of coordinates between two orthonormal bases of the same space.

    Raises :class:`BasisMismatchError` when the spans differ.
    """
    if src.n != dst.n:
        raise BasisMismatchError(f"dimension mismatch: {src.n} vs {dst.n}")
    vals = src.functions(dst.nodes)
    T = dst.project(vals)
    dev = np.max(np.abs(T.conj().T @ T - np.eye(src.n)))
    if dev > tol:
        raise BasisMismatchError(f"bases span different spaces (deviation {dev:.2e})")
    return T
