"""Pick-space model of co-analytic Sedlock algebras.

The Pick space at nodes ``z_1, ..., z_n`` is ``C^n`` with the form::

    (u, v) = sum_{j,k} u_j conj(v_k) / (1 - z_j conj(z_k))

and the Pick algebra consists of the diagonal operators on it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .modelspace import ModelSpaceBasis
from .moebius import CIRCLE, DISK, conj_flip
from .sedlock import SedlockAlgebra, clark_projections, idempotents
from .tto import operator_norm

MAX_CONDITION = 1e12


@dataclass(frozen=True)
class PickSpace:
    nodes: tuple

    def __post_init__(self):
        z = np.asarray(self.nodes, dtype=complex)
        if np.any(np.abs(z) >= 1.0):
            raise DomainError("Pick nodes must lie in the open disk")
        if len(z) > 1:
            sep = np.abs(z[:, None] - z[None, :]) + np.eye(len(z))
            if sep.min() <= 1e-8:
                raise DomainError("Pick nodes must be distinct")
        object.__setattr__(self, "nodes", tuple(complex(x) for x in z))

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def gram(self) -> np.ndarray:
        """``G[j, k] = 1 / (1 - z_j conj(z_k))``."""
        z = np.asarray(self.nodes)
        return 1.0 / (1.0 - z[:, None] * z[None, :].conj())

    @property
    def form(self) -> np.ndarray:
        """Hermitian ``H`` with ``(u, v) = v^* H u``; equals ``G^T``."""
        return self.gram.T


def pick_inner(space: PickSpace, u, v) -> complex:
    """``sum_{j,k} u_j conj(v_k) G[j, k]``."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != (space.n,) or v.shape != (space.n,):
        raise DomainError("vector length does not match the number of nodes")
    return complex(u @ space.gram @ v.conj())


def _form_sqrt(space: PickSpace) -> tuple[np.ndarray, np.ndarray]:
    vals, vecs = np.linalg.eigh(space.form)
    if vals.min() <= 0 or vals.max() / vals.min() > MAX_CONDITION:
        raise DomainError(f"Pick Gram matrix is ill-conditioned (condition {vals.max() / vals.min():.2e})")
    root = (vecs * np.sqrt(vals)) @ vecs.conj().T
    inv_root = (vecs / np.sqrt(vals)) @ vecs.conj().T
    return root, inv_root


def diagonal_norm(space: PickSpace, w) -> float:
    """Norm of ``R_w: u -> (u_j w_j)`` on the Pick space: ``|H^(1/2) D_w H^(-1/2)|``."""
    w = np.asarray(w, dtype=complex)
    root, inv_root = _form_sqrt(space)
    return operator_norm(root @ np.diag(w) @ inv_root)


@dataclass
class PickMap:
    """``U(sum_j a_j k_{z_j}) = (a_1, ..., a_n)`` from ``K_Theta`` onto the Pick space at ``conj(z_j)``."""

    matrix: np.ndarray
    space: PickSpace
    basis: ModelSpaceBasis

    def apply(self, coords) -> np.ndarray:
        return self.matrix @ np.asarray(coords, dtype=complex)

    def conjugate(self, A: np.ndarray) -> np.ndarray:
        """``U A U^(-1)`` in Pick coordinates."""
        return self.matrix @ A @ np.linalg.inv(self.matrix)


def sedlock_to_pick(basis: ModelSpaceBasis) -> PickMap:
    """Coordinates of an element of ``K_Theta`` in the kernel basis ``k_{z_j}``.

    The kernel Gram matrix ``<k_{z_k}, k_{z_j}>`` is ``1 / (1 - z_j conj(z_k))``;
    with the sesquilinear form above this is the Pick space at the
    conjugate nodes, on which the map is unitary.
    """
    theta = basis.theta
    if not theta.has_distinct_zeros():
        raise DomainError("the Pick model needs distinct zeros")
    K = np.column_stack([basis.kernel_coords(z) for z in theta.zeros])
    U = np.linalg.inv(K)
    return PickMap(U, PickSpace(tuple(np.conj(theta.zero_array))), basis)


def pick_unitarity_residual(pm: PickMap, vectors) -> float:
    """``max |(Uf, Ug) - <f, g>|`` over pairs drawn from ``vectors``."""
    res = 0.0
    for f in vectors:
        for g in vectors:
            lhs = pick_inner(pm.space, pm.apply(f), pm.apply(g))
            res = max(res, abs(lhs - np.vdot(g, f)))
    return float(res)


def pick_intertwining_residual(pm: PickMap, phi) -> float:
    """``|U A_{conj phi} U^(-1) - diag(conj(phi(z_j)))|`` for an analytic symbol ``phi``."""
    from .tto import tto_matrix

    A = tto_matrix(pm.basis, phi.conjugate()).entries
    D = np.diag(np.conj(phi(np.asarray(pm.basis.theta.zero_array))))
    return float(np.max(np.abs(pm.conjugate(A) - D)))


def idempotent_norm_profile(alg: SedlockAlgebra) -> list:
    """Sorted norms of the canonical idempotent resolution of the algebra.

    ``Q_j`` for disk parameters, the Clark projections for circle
    parameters and adjoints of the flipped resolution otherwise.
    """
    a = alg.a
    if a.kind == CIRCLE:
        ops = clark_projections(alg.basis, a)
    elif a.kind == DISK:
        ops = idempotents(alg.basis, a)
    else:
        ops = [Q.H for Q in idempotents(alg.basis, conj_flip(a))]
    return sorted(operator_norm(Q) for Q in ops)
