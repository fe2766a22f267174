"""Finite Blaschke products.

A product is stored as a unimodular front constant ``gamma`` and an ordered
tuple of zeros in the open disk (repeated for multiplicity)::

    Theta(z) = gamma * prod_j (z - z_j) / (1 - conj(z_j) z)
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, LevelSetError, PoleError, RecombinationError
from .moebius import MoebiusAutomorphism, disk_point, unimodular

_CIRCLE_CHECK = np.exp(2j * np.pi * (np.arange(64) + 0.137) / 64)


def _factors(zeros: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Matrix ``F[..., j] = b_{z_j}(z)``."""
    z = z[..., None]
    den = 1.0 - zeros.conj() * z
    if np.any(np.abs(den) < 1e-300):
        raise PoleError("evaluation at pole")
    return (z - zeros) / den


def _factor_derivs(zeros: np.ndarray, z: np.ndarray) -> np.ndarray:
    z = z[..., None]
    return (1.0 - np.abs(zeros) ** 2) / (1.0 - zeros.conj() * z) ** 2


def _exclusive_products(F: np.ndarray) -> np.ndarray:
    """``out[..., k] = prod_{j != k} F[..., j]`` without division."""
    n = F.shape[-1]
    ones = np.ones(F.shape[:-1] + (1,), dtype=complex)
    prefix = np.cumprod(np.concatenate([ones, F[..., :-1]], axis=-1), axis=-1)
    suffix = np.cumprod(np.concatenate([ones, F[..., :0:-1]], axis=-1), axis=-1)[..., ::-1]
    return prefix * suffix if n else prefix


def _scalar_or_array(out):
    return complex(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class FiniteBlaschkeProduct:
    gamma: complex
    zeros: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gamma", unimodular(self.gamma))
        zs = tuple(disk_point(z) for z in self.zeros)
        if not zs:
            raise DomainError("a Blaschke product needs at least one zero")
        object.__setattr__(self, "zeros", zs)

    @classmethod
    def from_zeros(cls, zeros, gamma=1.0) -> FiniteBlaschkeProduct:
        return cls(gamma, tuple(zeros))

    @classmethod
    def monomial(cls, n: int, gamma=1.0) -> FiniteBlaschkeProduct:
        """``gamma * z**n``."""
        return cls(gamma, (0j,) * n)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @property
    def zero_array(self) -> np.ndarray:
        return np.array(self.zeros, dtype=complex)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = self.gamma * np.prod(_factors(self.zero_array, z), axis=-1)
        return _scalar_or_array(out)

    def derivative(self, z):
        """Product-rule derivative; exact at the zeros as well."""
        z = np.asarray(z, dtype=complex)
        zs = self.zero_array
        F = _factors(zs, z)
        D = _factor_derivs(zs, z)
        out = self.gamma * np.sum(D * _exclusive_products(F), axis=-1)
        return _scalar_or_array(out)

    def difference_quotient(self, z, lam):
        """``(Theta(z) - Theta(lam)) / (z - lam)`` evaluated without cancellation.

        Telescopes over the factors and uses
        ``(b_a(z) - b_a(lam)) / (z - lam) = (1 - |a|^2) / ((1 - conj(a) z)(1 - conj(a) lam))``,
        so the value at ``z = lam`` is ``Theta'(lam)``.
        """
        z = np.asarray(z, dtype=complex)
        lam = complex(lam)
        zs = self.zero_array
        Fz = _factors(zs, z)
        Fl = _factors(zs, np.asarray(lam))
        quot = (1.0 - np.abs(zs) ** 2) / ((1.0 - zs.conj() * z[..., None]) * (1.0 - zs.conj() * lam))
        n = len(zs)
        left = np.concatenate([[1.0 + 0j], np.cumprod(Fl[:-1])]) if n > 1 else np.ones(1, complex)
        ones = np.ones(z.shape + (1,), dtype=complex)
        right = np.cumprod(np.concatenate([ones, Fz[..., :0:-1]], axis=-1), axis=-1)[..., ::-1]
        out = self.gamma * np.sum(left * quot * right, axis=-1)
        return _scalar_or_array(out)

    def sharp(self) -> FiniteBlaschkeProduct:
        """``z -> conj(Theta(conj(z)))``."""
        return FiniteBlaschkeProduct(self.gamma.conjugate(), tuple(z.conjugate() for z in self.zeros))

    def with_gamma(self, gamma) -> FiniteBlaschkeProduct:
        return FiniteBlaschkeProduct(gamma, self.zeros)

    def has_distinct_zeros(self, tol: float = 1e-8) -> bool:
        return _is_simple(self.zero_array, tol)

    def is_monomial(self, tol: float = 1e-14) -> bool:
        return all(abs(z) <= tol for z in self.zeros)

    def to_json(self) -> dict:
        return {
            "gamma": [self.gamma.real, self.gamma.imag],
            "zeros": [[z.real, z.imag] for z in self.zeros],
        }

    @classmethod
    def from_json(cls, obj) -> FiniteBlaschkeProduct:
        """Parse ``{"gamma": [re, im], "zeros": [[re, im], ...]}`` with per-entry diagnostics."""
        if not isinstance(obj, dict):
            raise DomainError("expected a JSON object with 'gamma' and 'zeros'")
        if "zeros" not in obj:
            raise DomainError("missing field 'zeros'")
        g = obj.get("gamma", [1.0, 0.0])
        try:
            gamma = complex(float(g[0]), float(g[1]))
        except (TypeError, ValueError, IndexError):
            raise DomainError(f"field 'gamma': expected [re, im], got {g!r}") from None
        if abs(abs(gamma) - 1.0) > 1e-8:
            raise DomainError(f"field 'gamma': {g!r} is not unimodular")
        zeros = []
        for i, entry in enumerate(obj["zeros"]):
            try:
                z = complex(float(entry[0]), float(entry[1]))
            except (TypeError, ValueError, IndexError):
                raise DomainError(f"zeros[{i}]: expected [re, im], got {entry!r}") from None
            if not abs(z) < 1.0 - 1e-12:
                raise DomainError(f"zeros[{i}] = {entry!r} does not lie in the open unit disk")
            zeros.append(z)
        if not zeros:
            raise DomainError("field 'zeros' is empty; degree must be at least 1")
        return cls(gamma, tuple(zeros))


# ---------------------------------------------------------------------------
# Clark data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClarkMeasure:
    parameter: complex
    locations: np.ndarray
    weights: np.ndarray

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    def __len__(self):
        return len(self.locations)


@dataclass(frozen=True)
class KappaInvariant:
    """``(epsilon, n)``: continuous-part flag and number of atoms."""

    epsilon: int
    n: int | float


# ---------------------------------------------------------------------------
# Level sets and composition
# ---------------------------------------------------------------------------

def _poly_from_roots(roots: np.ndarray) -> np.ndarray:
    return np.poly(roots) if len(roots) else np.array([1.0 + 0j])


def _is_simple(points: np.ndarray, tol: float) -> bool:
    if len(points) < 2:
        return True
    diff = np.abs(points[:, None] - points[None, :])
    diff[np.diag_indices(len(points))] = np.inf
    return bool(diff.min() > tol)


def level_set(theta: FiniteBlaschkeProduct, a, polish_steps: int = 6) -> np.ndarray:
    """All solutions of ``Theta(z) = a`` in the closed disk, with multiplicity.

    The roots of ``gamma prod(z - z_j) - a prod(1 - conj(z_j) z)`` are taken
    from the companion matrix and then polished by Newton steps on
    ``Theta - a``.  For ``|a| = 1`` the roots are returned on the circle.
    """
    a = complex(a)
    if abs(a) > 1.0 + 1e-12:
        raise DomainError(f"level {a!r} lies outside the closed disk")
    zs = theta.zero_array
    num = theta.gamma * _poly_from_roots(zs)
    den = np.array([1.0 + 0j])
    for zj in zs:
        den = np.convolve(den, np.array([-zj.conjugate(), 1.0]))
    coeffs = num - a * den
    scale = np.max(np.abs(coeffs))
    n = theta.degree
    while len(coeffs) > 1 and abs(coeffs[0]) <= 1e-14 * scale:
        warnings.warn("degenerate leading coefficient; deflating level-set polynomial", RuntimeWarning)
        coeffs = coeffs[1:]
    roots = np.roots(coeffs) if len(coeffs) > 1 else np.array([], dtype=complex)
    roots, merged = _merge_clusters(theta, a, roots.astype(complex))
    free = ~merged
    for _ in range(polish_steps):
        if not np.any(free):
            break
        r = roots[free]
        val = theta(r) - a
        der = theta.derivative(r)
        ok = np.abs(der) > 1e-12
        step = np.zeros_like(r)
        step[ok] = val[ok] / der[ok]
        cand = r - step
        better = np.abs(theta(cand) - a) < np.abs(val)
        roots[free] = np.where(better, cand, r)
    if abs(abs(a) - 1.0) <= 1e-12:
        roots = roots / np.abs(roots)
    if len(roots) != n:
        warnings.warn(f"level set has {len(roots)} points, expected {n}", RuntimeWarning)
    order = np.lexsort((np.round(np.abs(roots), 12), np.round(np.angle(roots), 12)))
    return roots[order]


def _merge_clusters(theta, a, roots: np.ndarray, radius: float = 1e-4):
    """Replace a tight cluster of roots by its centroid, repeated.

    Eigenvalues split a ``k``-fold root into a ring of radius about
    ``eps**(1/k)`` whose centroid is accurate to rounding.  The centroid is
    only used when it solves the equation to 1e-10.  Returns the roots and a
    mask of the merged entries.
    """
    n = len(roots)
    merged = np.zeros(n, dtype=bool)
    if n < 2:
        return roots, merged
    labels = list(range(n))

    def find(i):
        while labels[i] != i:
            labels[i] = labels[labels[i]]
            i = labels[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) < radius:
                labels[find(i)] = find(j)
    out = roots.copy()
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    for idx in groups.values():
        if len(idx) < 2:
            continue
        c = np.mean(roots[idx])
        if abs(theta(c) - a) < 1e-10:
            out[idx] = c
            merged[idx] = True
    return out, merged


def level_set_is_simple(points: np.ndarray, tol: float = 1e-7) -> bool:
    """Multiplicity flag: ``True`` when no two level-set points coincide."""
    return _is_simple(np.asarray(points, dtype=complex), tol)


def clark_measure(theta: FiniteBlaschkeProduct, a) -> ClarkMeasure:
    """Atoms ``1/|Theta'(zeta)|`` at the points where ``Theta(zeta) = a`` on the circle."""
    a = unimodular(a)
    pts = level_set(theta, a)
    if not level_set_is_simple(pts):
        raise LevelSetError("repeated point in a unimodular level set (root finder failure)")
    weights = 1.0 / np.abs(theta.derivative(pts))
    return ClarkMeasure(a, pts, weights)


def herglotz_mass(theta: FiniteBlaschkeProduct, a) -> float:
    """``Re((a + Theta(0)) / (a - Theta(0)))``, the total Clark mass."""
    t0 = theta(0.0)
    return float(((a + t0) / (a - t0)).real)


def _match_gamma(zeros, target_values: np.ndarray, samples: np.ndarray) -> FiniteBlaschkeProduct:
    base = FiniteBlaschkeProduct(1.0, tuple(zeros))
    ratio = target_values / base(samples)
    gamma = np.mean(ratio)
    result = base.with_gamma(gamma / abs(gamma))
    res = np.max(np.abs(result(samples) - target_values))
    if res > 1e-10:
        raise RecombinationError(f"recombination failed (residual {res:.2e})")
    return result


def post_compose(theta: FiniteBlaschkeProduct, phi: MoebiusAutomorphism) -> FiniteBlaschkeProduct:
    """The Blaschke product ``phi o Theta``."""
    if phi.is_identity(0.0):
        return theta
    zeros = level_set(theta, phi.inverse()(0.0))
    return _match_gamma(zeros, phi(theta(_CIRCLE_CHECK)), _CIRCLE_CHECK)


def pre_compose(theta: FiniteBlaschkeProduct, psi: MoebiusAutomorphism) -> FiniteBlaschkeProduct:
    """The Blaschke product ``Theta o psi``."""
    if psi.is_identity(0.0):
        return theta
    inv = psi.inverse()
    zeros = [inv(z) for z in theta.zeros]
    return _match_gamma(zeros, theta(psi(_CIRCLE_CHECK)), _CIRCLE_CHECK)


def crofoot_image(theta: FiniteBlaschkeProduct, a) -> FiniteBlaschkeProduct:
    """``b_a o Theta``."""
    return post_compose(theta, MoebiusAutomorphism.factor(a))


# ---------------------------------------------------------------------------
# Symmetries
# ---------------------------------------------------------------------------

def _multiset_close(p: np.ndarray, q: np.ndarray, tol: float) -> bool:
    from scipy.optimize import linear_sum_assignment

    if len(p) != len(q):
        return False
    if len(p) == 0:
        return True
    cost = np.abs(p[:, None] - q[None, :])
    r, c = linear_sum_assignment(cost)
    return bool(cost[r, c].max() <= tol)


def rotational_symmetry(theta: FiniteBlaschkeProduct, tol: float = 1e-9) -> list[tuple[complex, complex]]:
    """Pairs ``(u, v)`` of unimodular numbers with ``Theta(u z) = v Theta(z)``.

    Candidate rotations are ratios of equal-modulus nonzero zeros and the
    roots of unity of order up to ``2 n``.  A product whose zeros all sit at
    the origin commutes with every rotation; only the sampled roots of unity
    are listed in that case.  ``(1, 1)`` is always first.
    """
    zs = theta.zero_array
    n = theta.degree
    cands = [1.0 + 0j]
    for k in range(2, 2 * n + 1):
        cands.extend(np.exp(2j * np.pi * np.arange(1, k) / k))
    nz = zs[np.abs(zs) > tol]
    for zi in nz:
        for zj in nz:
            if abs(abs(zi) - abs(zj)) < tol:
                w = zj / zi
                cands.append(w / abs(w))
    found: list[tuple[complex, complex]] = []
    z0 = 1.0 + 0j
    for u in cands:
        u = complex(u)
        if any(abs(u - f[0]) < 1e-9 for f in found):
            continue
        if _multiset_close(zs * u.conjugate(), zs, 1e-8):
            v = theta(u * z0) / theta(z0)
            found.append((u, complex(v / abs(v))))
    found.sort(key=lambda uv: (round(cmath.phase(uv[0]) % (2 * math.pi), 12)))
    return found


def same_argument_zeros(theta: FiniteBlaschkeProduct, tol: float = 1e-10) -> complex | None:
    """A unimodular ``v`` making the zeros of ``Theta(v z)`` real, if one exists.

    Zeros at the origin are ignored; the remaining ones must lie on a single
    line through the origin.
    """
    nz = [z for z in theta.zeros if abs(z) > tol]
    if not nz:
        return 1.0 + 0j
    v = nz[0] / abs(nz[0])
    for z in nz[1:]:
        if abs((z * v.conjugate()).imag) > tol * max(1.0, abs(z)):
            return None
    if v.real < -tol or (abs(v.real) <= tol and v.imag < 0):
        v = -v
    return complex(v)
