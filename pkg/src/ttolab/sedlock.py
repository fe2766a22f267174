"""Sedlock algebras: generators, spans, commutants and idempotent resolutions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import subspace_angles

from .blaschke import level_set, level_set_is_simple
from .errors import DomainError, LevelSetError, RankDeficiencyError
from .modelspace import ModelSpaceBasis
from .moebius import CIRCLE, DISK, ExtendedParameter, conj_flip
from .tto import OperatorMatrix, Symbol, tto_from_samples, tto_matrix

SPAN_TOL = 1e-9


def _as_param(a) -> ExtendedParameter:
    return a if isinstance(a, ExtendedParameter) else ExtendedParameter.from_value(a)


def generator(basis: ModelSpaceBasis, a) -> OperatorMatrix:
    """``S^a = A_z + a / (1 - conj(Theta(0)) a) * k_0 (x) C k_0``.

    For exterior parameters and infinity the adjoint of the generator at
    ``1/conj(a)`` is returned instead.
    """
    a = _as_param(a)
    if not a.in_closed_disk:
        return generator(basis, conj_flip(a)).H
    Az = tto_matrix(basis, Symbol.monomial(1))
    t0 = basis.theta(0.0)
    den = 1.0 - np.conj(t0) * a.value
    if abs(den) < 1e-12:
        raise DomainError("parameter resonant with Theta(0)")
    k0 = basis.kernel_coords(0.0)
    ck0 = basis.conjugate_kernel_coords(0.0)
    return Az + OperatorMatrix.on(basis, (a.value / den) * np.outer(k0, ck0.conj()))


def _vec(M: np.ndarray) -> np.ndarray:
    return M.reshape(-1, order="F")


def _unvec(v: np.ndarray, n: int) -> np.ndarray:
    return v.reshape(n, n, order="F")


def _phase_normalize(M: np.ndarray) -> np.ndarray:
    k = np.argmax(np.abs(M).ravel() > np.abs(M).max() * (1 - 1e-9))
    v = M.ravel()[k]
    return M * (abs(v) / v)


@dataclass
class SedlockAlgebra:
    """The algebra ``B^a_Theta`` with a Frobenius-orthonormal basis."""

    basis: ModelSpaceBasis
    a: ExtendedParameter
    generator: OperatorMatrix
    elements: list

    @property
    def theta(self):
        return self.basis.theta

    @property
    def dimension(self) -> int:
        return len(self.elements)

    @property
    def frame(self) -> np.ndarray:
        """``n^2 x dim`` matrix whose columns are the vectorized basis elements."""
        return np.column_stack([_vec(E.entries) for E in self.elements])

    def contains(self, x: OperatorMatrix, tol: float = SPAN_TOL) -> bool:
        return membership(self, x) < tol


def algebra(basis: ModelSpaceBasis, a, check_commutant: bool = False) -> SedlockAlgebra:
    """Orthonormalized power basis ``{I, S, ..., S^(n-1)}`` of the generator.

    Raises :class:`RankDeficiencyError` when the powers are dependent, which
    would mean the generator is derogatory.
    """
    a = _as_param(a)
    S = generator(basis, a)
    n = basis.n
    Sn = S.entries / max(np.linalg.norm(S.entries, 2), 1.0)
    X = np.eye(n, dtype=complex) / np.sqrt(n)
    frame = [_vec(X)]
    mats = [X]
    for _ in range(1, n):
        Y = Sn @ mats[-1]
        y = _vec(Y)
        for _ in range(2):
            F = np.column_stack(frame)
            y = y - F @ (F.conj().T @ y)
        nrm = np.linalg.norm(y)
        if nrm < 1e-10:
            raise RankDeficiencyError("power basis of the generator is rank deficient")
        y = y / nrm
        frame.append(y)
        mats.append(_unvec(y, n))
    elements = [OperatorMatrix(M, S.source, S.target) for M in mats]
    alg = SedlockAlgebra(basis, a, S, elements)
    if check_commutant:
        dim = len(commutant(S))
        if dim != n:
            raise RankDeficiencyError(f"commutant has dimension {dim}, expected {n}")
    return alg


def commutant(m, rel_tol: float = 1e-8) -> list:
    """Basis of ``{X : m X = X m}`` from the nullspace of ``I (x) m - m^T (x) I``.

    Elements are Frobenius-orthonormal, ordered by increasing singular value
    and phase-normalized so that their largest entry is real positive.
    """
    M = m.entries if isinstance(m, OperatorMatrix) else np.asarray(m, dtype=complex)
    n = M.shape[0]
    I = np.eye(n)
    K = np.kron(I, M) - np.kron(M.T, I)
    _, s, Vh = np.linalg.svd(K)
    scale = max(1.0, s[0])
    null = [i for i in range(len(s)) if s[i] <= rel_tol * scale]
    null.sort(key=lambda i: s[i])
    mats = [_phase_normalize(_unvec(Vh[i].conj(), n)) for i in null]
    if isinstance(m, OperatorMatrix):
        return [OperatorMatrix(X, m.source, m.target) for X in mats]
    return mats


def membership(alg: SedlockAlgebra, x) -> float:
    """Relative distance ``|x - P x| / max(1, |x|)`` from ``x`` to the algebra's span."""
    X = x.entries if isinstance(x, OperatorMatrix) else np.asarray(x)
    v = _vec(X)
    F = alg.frame
    r = v - F @ (F.conj().T @ v)
    return float(np.linalg.norm(r) / max(1.0, np.linalg.norm(v)))


def span_residual(alg: SedlockAlgebra, mats) -> float:
    """Largest membership residual over a list of matrices."""
    return max(membership(alg, x) for x in mats)


def mutual_span_residual(alg1: SedlockAlgebra, alg2: SedlockAlgebra) -> float:
    return max(span_residual(alg2, alg1.elements), span_residual(alg1, alg2.elements))


def intersection_dimension(alg1: SedlockAlgebra, alg2: SedlockAlgebra, tol: float = 1e-6) -> int:
    """Dimension of the intersection of the two spans (principal angles below ``tol``)."""
    angles = subspace_angles(alg1.frame, alg2.frame)
    return int(np.sum(angles < tol))


def commutator_residual(alg: SedlockAlgebra) -> float:
    """Largest ``|XY - YX|`` over pairs of basis elements."""
    res = 0.0
    for i, X in enumerate(alg.elements):
        for Y in alg.elements[i + 1:]:
            C = X.entries @ Y.entries - Y.entries @ X.entries
            res = max(res, float(np.max(np.abs(C))))
    return res


def symbol_member(basis: ModelSpaceBasis, a, phi0, c) -> OperatorMatrix:
    """``A_psi`` for the symbol ``psi = phi0 (1 + a conj(Theta)) + c``.

    ``phi0`` is a coordinate vector of an element of ``K_Theta`` vanishing at 0.
    """
    a = _as_param(a)
    if a.is_infinite:
        raise DomainError("symbol_member needs a finite parameter")
    phi0 = np.asarray(phi0, dtype=complex)
    if abs(basis.evaluate(phi0, 0.0)) > 1e-10:
        raise DomainError("phi0 must vanish at the origin")
    f = basis.synthesize(phi0)
    vals = f * (1.0 + a.value * np.conj(basis.theta_samples)) + complex(c)
    return tto_from_samples(basis, vals)


def idempotents(basis: ModelSpaceBasis, a) -> list:
    """``Q_j = Ck_{w_j} (x) k_{w_j} / Theta'(w_j)`` over the level set ``Theta = a``."""
    a = _as_param(a)
    if a.kind != DISK:
        raise DomainError("idempotents need a parameter in the open disk")
    theta = basis.theta
    w = level_set(theta, a.value)
    if not level_set_is_simple(w):
        raise LevelSetError("level set not simple")
    out = []
    for wj in w:
        k = basis.kernel_coords(wj)
        ck = basis.conjugate_kernel_coords(wj)
        out.append(OperatorMatrix.on(basis, np.outer(ck, k.conj()) / theta.derivative(wj)))
    return out


def clark_projections(basis: ModelSpaceBasis, a) -> list:
    """Orthogonal projections onto the boundary kernels ``k_zeta``, ``Theta(zeta) = a``.

    Each is normalized by ``|k_zeta|^2 = |Theta'(zeta)|``.
    """
    a = _as_param(a)
    if a.kind != CIRCLE:
        raise DomainError("Clark projections need a unimodular parameter")
    theta = basis.theta
    out = []
    for z in level_set(theta, a.value):
        k = basis.kernel_coords(z)
        out.append(OperatorMatrix.on(basis, np.outer(k, k.conj()) / abs(theta.derivative(z))))
    return out


def resolution_residuals(ops) -> dict:
    """Idempotency, mutual annihilation and resolution-of-identity residuals."""
    mats = [Q.entries for Q in ops]
    n = mats[0].shape[0]
    idem = max(np.max(np.abs(Q @ Q - Q)) for Q in mats)
    ann = 0.0
    for i, P in enumerate(mats):
        for j, Q in enumerate(mats):
            if i != j:
                ann = max(ann, np.max(np.abs(P @ Q)))
    total = np.max(np.abs(sum(mats) - np.eye(n)))
    return {"idempotent": float(idem), "annihilating": float(ann), "sum": float(total)}
