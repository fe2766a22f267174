"""Truncated Toeplitz operators as tagged matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import hankel

from .blaschke import FiniteBlaschkeProduct
from .errors import BasisMismatchError, DomainError, QuadratureError
from .modelspace import ModelSpaceBasis


# ---------------------------------------------------------------------------
# Symbols
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Symbol:
    """A function on the circle.

    ``func`` is evaluated at points of the circle.  ``low`` and ``high`` bound
    the Fourier support (``None`` when unbounded, e.g. for rational symbols);
    ``analytic`` symbols may also be evaluated inside the disk.
    """

    func: Callable[[np.ndarray], np.ndarray]
    low: int | None = None
    high: int | None = None
    analytic: bool = False

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.broadcast_to(np.asarray(self.func(z), dtype=complex), z.shape)

    @classmethod
    def polynomial(cls, coeffs) -> Symbol:
        """``sum_k coeffs[k] z**k``."""
        c = np.asarray(coeffs, dtype=complex)
        return cls(lambda z: np.polyval(c[::-1], z), 0, len(c) - 1, True)

    @classmethod
    def monomial(cls, k: int) -> Symbol:
        if k >= 0:
            return cls(lambda z: z**k, k, k, True)
        return cls(lambda z: np.conj(z) ** (-k), k, k, False)

    @classmethod
    def constant(cls, c) -> Symbol:
        c = complex(c)
        return cls(lambda z: np.full(np.shape(z), c), 0, 0, True)

    @classmethod
    def trigonometric(cls, coeffs: dict) -> Symbol:
        """``sum_k coeffs[k] z**k`` with ``k`` ranging over negative integers too."""
        items = {int(k): complex(v) for k, v in coeffs.items()}

        def f(z):
            out = np.zeros(np.shape(z), dtype=complex)
            for k, v in items.items():
                out = out + v * (z**k if k >= 0 else np.conj(z) ** (-k))
            return out

        return cls(f, min(items), max(items), min(items) >= 0)

    @classmethod
    def inner(cls, theta: FiniteBlaschkeProduct) -> Symbol:
        return cls(theta, 0, None, True)

    def conjugate(self) -> Symbol:
        """The symbol ``conj(phi)`` (on the circle)."""
        lo = None if self.high is None else -self.high
        hi = None if self.low is None else -self.low
        f = self.func
        return Symbol(lambda z: np.conj(f(z)), lo, hi, self.low == 0 and self.high == 0)

    def __add__(self, other) -> Symbol:
        other = _as_symbol(other)
        f, g = self.func, other.func
        return Symbol(
            lambda z: f(z) + g(z),
            _combine(min, self.low, other.low),
            _combine(max, self.high, other.high),
            self.analytic and other.analytic,
        )

    __radd__ = __add__

    def __mul__(self, other) -> Symbol:
        other = _as_symbol(other)
        f, g = self.func, other.func
        return Symbol(
            lambda z: f(z) * g(z),
            _combine(lambda a, b: a + b, self.low, other.low),
            _combine(lambda a, b: a + b, self.high, other.high),
            self.analytic and other.analytic,
        )

    __rmul__ = __mul__

    def __neg__(self) -> Symbol:
        return self * -1.0

    def __sub__(self, other) -> Symbol:
        return self + (-_as_symbol(other))

    @property
    def bandwidth(self) -> int | None:
        if self.low is None or self.high is None:
            return None
        return max(abs(self.low), abs(self.high))


def _combine(op, x, y):
    if x is None or y is None:
        return None
    return op(x, y)


def _as_symbol(x) -> Symbol:
    if isinstance(x, Symbol):
        return x
    if callable(x):
        return Symbol(x)
    return Symbol.constant(x)


# ---------------------------------------------------------------------------
# Tagged matrices
# ---------------------------------------------------------------------------

class OperatorMatrix:
    """A matrix between two model spaces, tagged with the basis identities.

    Products and sums check the tags and raise :class:`BasisMismatchError`
    on disagreement.
    """

    __array_priority__ = 100

    def __init__(self, entries, source, target=None):
        self.entries = np.asarray(entries, dtype=complex)
        self.source = source
        self.target = source if target is None else target
        if not np.all(np.isfinite(self.entries)):
            raise DomainError("operator matrix has non-finite entries")

    @classmethod
    def on(cls, basis: ModelSpaceBasis, entries) -> OperatorMatrix:
        return cls(entries, basis.basis_id)

    @classmethod
    def identity(cls, basis: ModelSpaceBasis) -> OperatorMatrix:
        return cls(np.eye(basis.n), basis.basis_id)

    @property
    def shape(self):
        return self.entries.shape

    @property
    def H(self) -> OperatorMatrix:
        return OperatorMatrix(self.entries.conj().T, self.target, self.source)

    def _check_same(self, other: OperatorMatrix):
        if self.source != other.source or self.target != other.target:
            raise BasisMismatchError("operators act between different model-space bases")

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            if self.source != other.target:
                raise BasisMismatchError("cannot compose operators with mismatched bases")
            return OperatorMatrix(self.entries @ other.entries, other.source, self.target)
        return self.entries @ np.asarray(other, dtype=complex)

    def __add__(self, other: OperatorMatrix) -> OperatorMatrix:
        self._check_same(other)
        return OperatorMatrix(self.entries + other.entries, self.source, self.target)

    def __sub__(self, other: OperatorMatrix) -> OperatorMatrix:
        self._check_same(other)
        return OperatorMatrix(self.entries - other.entries, self.source, self.target)

    def __mul__(self, scalar) -> OperatorMatrix:
        return OperatorMatrix(self.entries * complex(scalar), self.source, self.target)

    __rmul__ = __mul__

    def __neg__(self) -> OperatorMatrix:
        return self * -1.0

    def norm(self) -> float:
        return operator_norm(self)

    def retag(self, source, target=None) -> OperatorMatrix:
        return OperatorMatrix(self.entries, source, target)

    def to_json(self) -> dict:
        rows, cols = self.entries.shape
        return {
            "rows": rows,
            "cols": cols,
            "entries": [[float(x.real), float(x.imag)] for x in self.entries.ravel()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj, source=None, target=None) -> OperatorMatrix:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        vals = np.array([complex(re, im) for re, im in obj["entries"]], dtype=complex)
        if vals.size != rows * cols:
            raise DomainError(f"matrix dump has {vals.size} entries, expected {rows * cols}")
        return cls(vals.reshape(rows, cols), source, target)

    def __repr__(self):
        return f"OperatorMatrix(shape={self.shape})"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def tto_from_samples(basis: ModelSpaceBasis, values) -> OperatorMatrix:
    """``A_phi`` for a symbol given by its values on the quadrature nodes."""
    E = basis.samples
    vals = np.asarray(values, dtype=complex)
    return OperatorMatrix.on(basis, E.conj().T @ (vals[:, None] * E) / basis.quadrature_size)


def tto_matrix(basis: ModelSpaceBasis, phi) -> OperatorMatrix:
    """Matrix of ``A_phi f = P_Theta(phi f)`` with entries ``<phi e_l, e_k>``."""
    phi = _as_symbol(phi)
    K = phi.bandwidth
    if K is not None and basis.quadrature_size <= 2 * (K + basis.n):
        need = 2 * (K + basis.n) + 1
        raise QuadratureError(f"symbol bandwidth {K} needs quadrature size >= {need}")
    return tto_from_samples(basis, phi(basis.nodes))


def symbol_equivalent(basis: ModelSpaceBasis, phi1, phi2, tol: float = 1e-9) -> bool:
    """Whether ``A_phi1 = A_phi2`` on ``K_Theta`` (max-entry test)."""
    d = tto_matrix(basis, phi1).entries - tto_matrix(basis, phi2).entries
    return bool(np.max(np.abs(d)) < tol)


def complex_symmetry_residual(basis: ModelSpaceBasis, A: OperatorMatrix) -> float:
    """``max |A - C A* C|`` in coordinates, i.e. ``A - J A^T conj(J)``."""
    J = basis.conjugation_matrix()
    M = A.entries
    return float(np.max(np.abs(M - J @ M.T @ J.conj())))


def coanalytic_eigencheck(basis: ModelSpaceBasis, phi) -> float:
    """``max_j |A_{conj phi} k_{z_j} - conj(phi(z_j)) k_{z_j}|`` over the zeros of ``Theta``."""
    phi = _as_symbol(phi)
    if not phi.analytic:
        raise DomainError("coanalytic eigencheck needs an analytic symbol")
    if not basis.theta.has_distinct_zeros():
        raise DomainError("coanalytic eigencheck needs distinct zeros")
    A = tto_matrix(basis, phi.conjugate()).entries
    res = 0.0
    for zj in basis.theta.zeros:
        k = basis.kernel_coords(zj)
        val = complex(phi(np.asarray(zj)))
        res = max(res, float(np.linalg.norm(A @ k - np.conj(val) * k)))
    return res


def negative_fourier_coefficients(g: Callable, tail_tol: float = 1e-14, start: int = 512,
                                  max_size: int = 2**20) -> np.ndarray:
    """``[g^(-1), g^(-2), ...]`` of a smooth circle function via FFT.

    The grid is doubled until the coefficients in the upper half of the
    retained range fall below ``tail_tol`` relative to the largest one.
    """
    N = start
    while N <= max_size:
        xi = np.exp(2j * np.pi * np.arange(N) / N)
        c = np.fft.fft(g(xi)) / N
        neg = c[::-1][: N // 2]  # neg[m-1] = g^(-m)
        scale = max(np.max(np.abs(c)), 1e-300)
        if np.max(np.abs(neg[N // 4:])) <= tail_tol * scale:
            keep = np.nonzero(np.abs(neg) > tail_tol * scale)[0]
            L = keep[-1] + 1 if len(keep) else 0
            return neg[:L]
        N *= 2
    raise QuadratureError("Fourier coefficients do not decay; symbol not smooth enough")


def nehari_distance(theta: FiniteBlaschkeProduct, phi) -> float:
    """Distance from ``phi conj(Theta)`` to ``H^infty`` on the circle.

    Computed as the norm of the Hankel matrix ``H[j, k] = g^(-(j+k+1))`` with
    ``g = phi conj(Theta)``.
    """
    phi = _as_symbol(phi)
    if not phi.analytic:
        raise DomainError("nehari distance needs an analytic symbol")
    coeffs = negative_fourier_coefficients(lambda z: phi(z) * np.conj(theta(z)))
    if len(coeffs) == 0:
        return 0.0
    H = hankel(coeffs)
    return float(np.linalg.svd(H, compute_uv=False)[0])


def operator_norm(matrix) -> float:
    """Largest singular value."""
    M = matrix.entries if isinstance(matrix, OperatorMatrix) else np.asarray(matrix)
    if M.size == 0:
        return 0.0
    return float(np.linalg.svd(M, compute_uv=False)[0])


def rank_one(basis: ModelSpaceBasis, u, v) -> OperatorMatrix:
    """``u (x) v``: the operator ``w -> <w, v> u``."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != (basis.n,) or v.shape != (basis.n,):
        raise BasisMismatchError("vectors do not match the basis dimension")
    return OperatorMatrix.on(basis, np.outer(u, v.conj()))
