"""The Crofoot, composition and sharp unitaries between model spaces.

Each unitary is built by applying its boundary formula to the source basis
on the target's quadrature nodes and projecting onto the target basis.
Maps that land in the same space through different zero orderings are
compared after a change of basis (:func:`ttolab.modelspace.transfer_matrix`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blaschke import FiniteBlaschkeProduct, crofoot_image, pre_compose
from .errors import QuadratureError
from .modelspace import ModelSpaceBasis, default_quadrature_size, transfer_matrix
from .moebius import ExtendedParameter, MoebiusAutomorphism, disk_point, ell
from .sedlock import SedlockAlgebra, algebra, generator, mutual_span_residual
from .tto import OperatorMatrix, Symbol, tto_from_samples, tto_matrix

UNITARY_TOL = 1e-9

CROFOOT = "crofoot"
COMPOSITION = "composition"
SHARP = "sharp"


@dataclass
class SpatialUnitary:
    """A unitary ``K_Theta -> K_Theta'`` with its provenance tag."""

    matrix: OperatorMatrix
    kind: str
    parameter: object
    source: ModelSpaceBasis
    target: ModelSpaceBasis

    @property
    def entries(self) -> np.ndarray:
        return self.matrix.entries

    def unitarity_residual(self) -> float:
        U = self.entries
        n = U.shape[0]
        return float(max(np.max(np.abs(U.conj().T @ U - np.eye(n))), np.max(np.abs(U @ U.conj().T - np.eye(n)))))

    def conjugate(self, op: OperatorMatrix) -> OperatorMatrix:
        """``U op U*``."""
        return self.matrix @ op @ self.matrix.H

    def adjoint(self) -> SpatialUnitary:
        return SpatialUnitary(self.matrix.H, self.kind + "*", self.parameter, self.target, self.source)


def _build(src: ModelSpaceBasis, target_theta: FiniteBlaschkeProduct, values_fn, kind, param) -> SpatialUnitary:
    dst = ModelSpaceBasis(target_theta, max(src.quadrature_size, default_quadrature_size(target_theta)))
    vals = values_fn(dst.nodes)  # shape (M, n): images of e_l on the target nodes
    U = OperatorMatrix(dst.project(vals), src.basis_id, dst.basis_id)
    out = SpatialUnitary(U, kind, param, src, dst)
    res = out.unitarity_residual()
    if res > UNITARY_TOL:
        raise QuadratureError(f"{kind} unitary failed the unitarity check (residual {res:.2e})")
    return out


def crofoot(basis: ModelSpaceBasis, a) -> SpatialUnitary:
    """``U_a f = sqrt(1 - |a|^2) / (1 - conj(a) Theta) f`` into ``K_{b_a o Theta}``."""
    a = disk_point(a)
    theta = basis.theta
    target = crofoot_image(theta, a)

    def values(xi):
        w = np.sqrt(1.0 - abs(a) ** 2) / (1.0 - np.conj(a) * theta(xi))
        return w[:, None] * basis.functions(xi)

    return _build(basis, target, values, CROFOOT, a)


def composition(basis: ModelSpaceBasis, psi: MoebiusAutomorphism) -> SpatialUnitary:
    """``U_psi f = sqrt(psi') (f o psi)`` into ``K_{Theta o psi}``."""
    target = pre_compose(basis.theta, psi)

    def values(xi):
        return psi.sqrt_derivative(xi)[:, None] * basis.functions(psi(xi))

    return _build(basis, target, values, COMPOSITION, psi)


def sharp_unitary(basis: ModelSpaceBasis) -> SpatialUnitary:
    """``(U_# f)(z) = conj(z) f(conj(z)) Theta^#(z)`` into ``K_{Theta^#}``."""
    target = basis.theta.sharp()

    def values(xi):
        return (np.conj(xi) * target(xi))[:, None] * basis.functions(np.conj(xi))

    return _build(basis, target, values, SHARP, None)


# ---------------------------------------------------------------------------
# Residual helpers
# ---------------------------------------------------------------------------

def _to(dst: ModelSpaceBasis, U: SpatialUnitary) -> np.ndarray:
    """Entries of ``U`` re-expressed in the coordinates of ``dst``."""
    return transfer_matrix(U.target, dst) @ U.entries


def _max(M) -> float:
    return float(np.max(np.abs(M)))


def phase_aligned_residual(L: np.ndarray, R: np.ndarray) -> float:
    """``min_omega |L - omega R|`` over unimodular ``omega`` (max-entry norm)."""
    t = np.vdot(R, L)
    w = t / abs(t) if abs(t) > 0 else 1.0
    return _max(L - w * R)


def word_relation_residuals(basis: ModelSpaceBasis, a, b, psi: MoebiusAutomorphism,
                            phi: MoebiusAutomorphism) -> dict:
    """Residuals of seven identities between the basic unitaries.

    ``(i)``   ``U_b U_a = |1 + conj(b) a| / (1 + conj(b) a) U_{(a+b)/(1+b conj(a))}``
    ``(ii)``  ``U_a* = U_{-a}``
    ``(iii)`` ``U_phi U_psi = U_{psi o phi}``
    ``(iv)``  ``U_phi* = U_{phi^-1}``
    ``(v)``   ``U_psi U_b = U_b U_psi``
    ``(vi)``  ``U_# U_a = U_{conj a} U_#``
    ``(vii)`` ``U_# U_psi = U_{psi^#} U_#``

    Relations (iii), (iv) and (vii) are compared up to a unimodular
    constant, since the branch of ``sqrt(psi')`` fixes the composition
    unitaries only up to sign.
    """
    a = complex(a)
    b = complex(b)
    out = {}

    Ua = crofoot(basis, a)
    UbUa = crofoot(Ua.target, b)
    c = (a + b) / (1.0 + b * np.conj(a))
    Uc = crofoot(basis, c)
    s = 1.0 + np.conj(b) * a
    out["i"] = _max(_to(Uc.target, UbUa) @ Ua.entries - (abs(s) / s) * Uc.entries)

    Uma = crofoot(Ua.target, -a)
    out["ii"] = _max(Ua.entries.conj().T - _to(basis, Uma))

    Upsi = composition(basis, psi)
    Uphi_after = composition(Upsi.target, phi)
    Upsiphi = composition(basis, psi.compose(phi))
    out["iii"] = phase_aligned_residual(_to(Upsiphi.target, Uphi_after) @ Upsi.entries, Upsiphi.entries)

    Uphi = composition(basis, phi)
    Uphi_inv = composition(Uphi.target, phi.inverse())
    out["iv"] = phase_aligned_residual(Uphi.entries.conj().T, _to(basis, Uphi_inv))

    Ub = crofoot(basis, b)
    left = composition(Ub.target, psi)
    right = crofoot(Upsi.target, b)
    out["v"] = _max(_to(right.target, left) @ Ub.entries - right.entries @ Upsi.entries)

    Us = sharp_unitary(basis)
    left = sharp_unitary(Ua.target)
    right = crofoot(Us.target, np.conj(a))
    out["vi"] = _max(_to(right.target, left) @ Ua.entries - right.entries @ Us.entries)

    left = sharp_unitary(Upsi.target)
    right = composition(Us.target, psi.sharp())
    out["vii"] = phase_aligned_residual(_to(right.target, left) @ Upsi.entries, right.entries @ Us.entries)
    return out


def sarason_crofoot_residual(basis: ModelSpaceBasis, a) -> float:
    """``|U_a S^a U_a* - S^0|`` with ``S^0`` over ``b_a o Theta``."""
    U = crofoot(basis, a)
    lhs = U.conjugate(generator(basis, ExtendedParameter.from_value(a)))
    rhs = generator(U.target, ExtendedParameter.from_value(0.0))
    return _max(lhs.entries - rhs.entries)


def kernel_image_residual(basis: ModelSpaceBasis, c) -> float:
    """``|U_c k_0 - (1 - c conj(Theta(0))) / sqrt(1 - |c|^2) k_0'|`` with ``k_0'`` in ``K_{b_c o Theta}``."""
    c = complex(c)
    U = crofoot(basis, c)
    lhs = U.entries @ basis.kernel_coords(0.0)
    scale = (1.0 - c * np.conj(basis.theta(0.0))) / np.sqrt(1.0 - abs(c) ** 2)
    return float(np.linalg.norm(lhs - scale * U.target.kernel_coords(0.0)))


def composition_intertwining_residual(basis: ModelSpaceBasis, psi: MoebiusAutomorphism, phi: Symbol) -> float:
    """``|U_psi A_phi U_psi* - A_{phi o psi}|`` with the right side over ``Theta o psi``."""
    U = composition(basis, psi)
    lhs = U.conjugate(tto_matrix(basis, phi))
    rhs = tto_from_samples(U.target, phi(psi(U.target.nodes)))
    return _max(lhs.entries - rhs.entries)


def sharp_intertwining_residual(basis: ModelSpaceBasis, phi: Symbol) -> float:
    """``|U_# A_phi U_#* - A_{conj(phi^#)}|``; ``conj(phi^#)(z) = phi(conj(z))``."""
    U = sharp_unitary(basis)
    lhs = U.conjugate(tto_matrix(basis, phi))
    rhs = tto_from_samples(U.target, phi(np.conj(U.target.nodes)))
    return _max(lhs.entries - rhs.entries)


# ---------------------------------------------------------------------------
# Induced maps on Sedlock parameters
# ---------------------------------------------------------------------------

def lambda_image(kind: str, a: ExtendedParameter, parameter=None) -> ExtendedParameter:
    """Parameter of the Sedlock algebra ``U B^a U*``.

    ``sharp`` sends ``a`` to ``1/a``, ``composition`` keeps ``a`` and
    ``crofoot`` with parameter ``c`` sends ``a`` to ``(a - c)/(1 - conj(c) a)``.
    """
    if kind == SHARP:
        return a.reciprocal()
    if kind == COMPOSITION:
        return a
    if kind == CROFOOT:
        return ell(parameter, a)
    raise ValueError(f"unknown unitary kind {kind!r}")


def conjugated_algebra_residual(U: np.ndarray, src_alg: SedlockAlgebra, dst_alg: SedlockAlgebra) -> float:
    """Mutual span residual between ``U src U*`` and ``dst`` for unitary entries ``U``.

    Conjugation by a unitary preserves the Frobenius inner product, so the
    conjugated basis is still orthonormal.
    """
    tag = dst_alg.generator.source
    conj = [OperatorMatrix(U @ E.entries @ U.conj().T, tag) for E in src_alg.elements]
    img = SedlockAlgebra(dst_alg.basis, dst_alg.a, conj[0], conj)
    return mutual_span_residual(img, dst_alg)


def image_span_residual(U: SpatialUnitary, a: ExtendedParameter) -> float:
    """Compare ``U B^a U*`` with the algebra at :func:`lambda_image` of ``a``."""
    src = algebra(U.source, a)
    dst = algebra(U.target, lambda_image(U.kind, a, U.parameter))
    return conjugated_algebra_residual(U.entries, src, dst)
