"""Disk automorphisms and points of the extended plane.

Points of the open disk and unimodular constants are plain Python complex
numbers; :func:`disk_point` and :func:`unimodular` validate (and, for the
latter, renormalize) them.  Automorphisms are kept in the canonical form
``lam * b_c`` and never as 2x2 matrices.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, PoleError

#: Distance from the unit circle below which a point is snapped onto it.
EPS_BOUNDARY = 1e-12
#: Tolerance for parameter-wise equality of automorphisms.
EQ_TOL = 1e-10


def disk_point(z, eps: float = EPS_BOUNDARY) -> complex:
    """Return ``z`` as a complex number after checking ``|z| < 1 - eps``."""
    z = complex(z)
    if not abs(z) < 1.0 - eps:
        raise DomainError(f"{z!r} is not a point of the open unit disk")
    return z


def unimodular(z, tol: float = 1e-8) -> complex:
    """Renormalize ``z`` onto the unit circle.

    Inputs further than ``tol`` from the circle are rejected rather than
    silently projected.
    """
    z = complex(z)
    r = abs(z)
    if abs(r - 1.0) > tol:
        raise DomainError(f"{z!r} is not unimodular")
    return z / r


def blaschke_factor_eval(a, z):
    """Evaluate ``b_a(z) = (z - a) / (1 - conj(a) z)``.

    Works on scalars and numpy arrays.  Raises :class:`PoleError` when any
    evaluation point sits on the pole ``1/conj(a)``.
    """
    a = complex(a)
    z_arr = np.asarray(z, dtype=complex)
    den = 1.0 - a.conjugate() * z_arr
    if np.any(np.abs(den) < 1e-300):
        raise PoleError("evaluation at pole")
    out = (z_arr - a) / den
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class MoebiusAutomorphism:
    """The disk automorphism ``z -> lam * (z - c) / (1 - conj(c) z)``."""

    lam: complex = 1.0 + 0j
    c: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "lam", unimodular(self.lam))
        object.__setattr__(self, "c", disk_point(self.c))

    @classmethod
    def identity(cls) -> MoebiusAutomorphism:
        return cls(1.0, 0.0)

    @classmethod
    def rotation(cls, lam) -> MoebiusAutomorphism:
        return cls(lam, 0.0)

    @classmethod
    def factor(cls, c) -> MoebiusAutomorphism:
        """The Blaschke factor ``b_c`` as an automorphism."""
        return cls(1.0, c)

    def __call__(self, z):
        return self.lam * blaschke_factor_eval(self.c, z)

    def derivative(self, z):
        """``lam (1 - |c|^2) / (1 - conj(c) z)^2``."""
        z = np.asarray(z, dtype=complex)
        out = self.lam * (1.0 - abs(self.c) ** 2) / (1.0 - self.c.conjugate() * z) ** 2
        return complex(out) if out.ndim == 0 else out

    def sqrt_derivative(self, z):
        """Branch of ``sqrt(psi')`` equal to ``sqrt(lam) sqrt(1-|c|^2) / (1 - conj(c) z)``.

        ``sqrt(lam)`` is the principal root (cut along the negative axis).
        """
        z = np.asarray(z, dtype=complex)
        out = cmath.sqrt(self.lam) * math.sqrt(1.0 - abs(self.c) ** 2) / (
            1.0 - self.c.conjugate() * z
        )
        return complex(out) if out.ndim == 0 else out

    def inverse(self) -> MoebiusAutomorphism:
        # lam b_c(z) = w  <=>  z = conj(lam) b_{-lam c}(w)
        return MoebiusAutomorphism(self.lam.conjugate(), -self.lam * self.c)

    def compose(self, other: MoebiusAutomorphism) -> MoebiusAutomorphism:
        """Return ``self o other``."""
        # lam1 b_c1(lam2 b_c2) = lam1 lam2 b_{c1 conj(lam2)}(b_c2)
        u, d = compose_factors(self.c * other.lam.conjugate(), other.c)
        return MoebiusAutomorphism(self.lam * other.lam * u, d)

    def sharp(self) -> MoebiusAutomorphism:
        """``z -> conj(psi(conj(z)))``."""
        return MoebiusAutomorphism(self.lam.conjugate(), self.c.conjugate())

    def is_identity(self, tol: float = EQ_TOL) -> bool:
        return abs(self.lam - 1.0) <= tol and abs(self.c) <= tol

    def is_rotation(self, tol: float = EQ_TOL) -> bool:
        return abs(self.c) < tol

    def isclose(self, other: MoebiusAutomorphism, tol: float = EQ_TOL) -> bool:
        return abs(self.lam - other.lam) < tol and abs(self.c - other.c) < tol


# ---------------------------------------------------------------------------
# Extended complex plane
# ---------------------------------------------------------------------------

DISK = "disk"
CIRCLE = "circle"
EXTERIOR = "exterior"
INFINITY = "infinity"


@dataclass(frozen=True)
class ExtendedParameter:
    """A point of the Riemann sphere tagged by its position relative to the circle.

    Use :meth:`from_value` to classify a raw number; it snaps points within
    ``EPS_BOUNDARY`` of the circle onto it so that the disk / circle /
    exterior trichotomy is reproducible.
    """

    kind: str
    value: complex | None = None

    def __post_init__(self):
        if self.kind == INFINITY:
            object.__setattr__(self, "value", None)
            return
        if self.kind not in (DISK, CIRCLE, EXTERIOR):
            raise DomainError(f"unknown parameter kind {self.kind!r}")
        v = complex(self.value)
        r = abs(v)
        if self.kind == DISK and not r < 1.0:
            raise DomainError(f"disk parameter {v!r} has modulus >= 1")
        if self.kind == CIRCLE:
            if abs(r - 1.0) > 1e-8:
                raise DomainError(f"circle parameter {v!r} is not unimodular")
            v = v / r
        if self.kind == EXTERIOR and not r > 1.0:
            raise DomainError(f"exterior parameter {v!r} has modulus <= 1")
        object.__setattr__(self, "value", v)

    @classmethod
    def from_value(cls, z, eps: float = EPS_BOUNDARY) -> ExtendedParameter:
        if z is None or (isinstance(z, str) and z.lower() in ("inf", "infinity")):
            return cls(INFINITY)
        z = complex(z)
        if cmath.isinf(z):
            return cls(INFINITY)
        r = abs(z)
        if abs(r - 1.0) <= eps:
            return cls(CIRCLE, z / r)
        return cls(DISK if r < 1.0 else EXTERIOR, z)

    @classmethod
    def infinity(cls) -> ExtendedParameter:
        return cls(INFINITY)

    @property
    def is_infinite(self) -> bool:
        return self.kind == INFINITY

    @property
    def in_closed_disk(self) -> bool:
        return self.kind in (DISK, CIRCLE)

    def reciprocal(self) -> ExtendedParameter:
        """``a -> 1/a`` (not conjugated), with ``0 <-> infinity``."""
        if self.kind == INFINITY:
            return ExtendedParameter(DISK, 0.0)
        if self.value == 0:
            return ExtendedParameter(INFINITY)
        return _classify_like(1.0 / self.value, _flip_kind(self.kind))

    def isclose(self, other: ExtendedParameter, tol: float = 1e-9) -> bool:
        if self.kind != other.kind:
            return False
        if self.kind == INFINITY:
            return True
        return abs(self.value - other.value) <= tol * max(1.0, abs(self.value))

    def to_json(self):
        if self.kind == INFINITY:
            return "inf"
        return [self.value.real, self.value.imag]

    @classmethod
    def from_json(cls, obj) -> ExtendedParameter:
        if isinstance(obj, str) or obj is None:
            return cls.from_value(obj)
        if isinstance(obj, (int, float)):
            return cls.from_value(complex(obj))
        re, im = obj
        return cls.from_value(complex(float(re), float(im)))

    def __repr__(self):
        if self.kind == INFINITY:
            return "ExtendedParameter(infinity)"
        return f"ExtendedParameter({self.kind}, {self.value!r})"


def _flip_kind(kind: str) -> str:
    return {DISK: EXTERIOR, EXTERIOR: DISK, CIRCLE: CIRCLE}[kind]


def _classify_like(z: complex, kind: str) -> ExtendedParameter:
    """Build a parameter of a known class, absorbing rounding at the boundary."""
    if kind == CIRCLE:
        return ExtendedParameter(CIRCLE, z / abs(z))
    if kind == DISK:
        if abs(z) >= 1.0:
            raise DomainError(f"rounding pushed {z!r} out of the disk")
        return ExtendedParameter(DISK, z)
    if cmath.isinf(z) or abs(z) > 1e300:
        return ExtendedParameter(INFINITY)
    if abs(z) <= 1.0:
        raise DomainError(f"rounding pushed {z!r} into the closed disk")
    return ExtendedParameter(EXTERIOR, z)


# ---------------------------------------------------------------------------
# Identities between factors
# ---------------------------------------------------------------------------

def compose_factors(a, c) -> tuple[complex, complex]:
    """Return ``(u, d)`` with ``b_a o b_c = u * b_d``."""
    a = disk_point(a)
    c = disk_point(c)
    u = (1.0 + a * c.conjugate()) / (1.0 + a.conjugate() * c)
    d = (a + c) / (1.0 + a * c.conjugate())
    return unimodular(u), d


def rotate_inside_factor(a, zeta) -> tuple[complex, complex]:
    """Return ``(zeta, a conj(zeta))``, so that ``b_a(zeta z) = zeta b_{a conj(zeta)}(z)``."""
    a = disk_point(a)
    zeta = unimodular(zeta)
    return zeta, a * zeta.conjugate()


def ell(c, a: ExtendedParameter) -> ExtendedParameter:
    """The Moebius image ``(a - c) / (1 - conj(c) a)`` on the extended plane.

    The pole ``a = 1/conj(c)`` maps to infinity and infinity maps to
    ``-1/conj(c)`` (or to itself when ``c = 0``).  Disk, circle and
    exterior-plus-infinity are each preserved.
    """
    c = disk_point(c)
    if a.kind == INFINITY:
        if c == 0:
            return a
        return _classify_like(-1.0 / c.conjugate(), EXTERIOR)
    z = a.value
    if c != 0 and abs(z - 1.0 / c.conjugate()) <= 1e-12 * abs(z):
        return ExtendedParameter(INFINITY)
    w = (z - c) / (1.0 - c.conjugate() * z)
    kind = a.kind if a.kind != EXTERIOR else EXTERIOR
    return _classify_like(w, kind)


def twisted_composition(a, a_prime, zeta) -> MoebiusAutomorphism:
    """Express ``b_{-a} o (zeta b_{a'})`` as ``mu * b_d``.

    Closed form::

        mu = (zeta - a conj(a')) / (1 - conj(a) a' zeta)
        d  = (zeta a' - a) / (zeta - a conj(a'))
    """
    a = disk_point(a)
    ap = disk_point(a_prime)
    zeta = unimodular(zeta)
    mu = (zeta - a * ap.conjugate()) / (1.0 - a.conjugate() * ap * zeta)
    d = (zeta * ap - a) / (zeta - a * ap.conjugate())
    return MoebiusAutomorphism(mu, d)


def decompose_with_prefix(a, psi: MoebiusAutomorphism) -> tuple[complex, complex]:
    """Find ``(zeta, a')`` with ``psi = b_{-a} o (zeta b_{a'})``.

    Such a pair exists for every automorphism and every ``a`` in the disk::

        zeta = lam (1 + a conj(lam) conj(c)) / (1 + conj(a) lam c)
        a'   = (a conj(lam) + c) / (1 + conj(c) a conj(lam))
    """
    a = disk_point(a)
    lam, c = psi.lam, psi.c
    zeta = lam * (1.0 + a * lam.conjugate() * c.conjugate()) / (1.0 + a.conjugate() * lam * c)
    ap = (a * lam.conjugate() + c) / (1.0 + c.conjugate() * a * lam.conjugate())
    return unimodular(zeta), disk_point(ap)


def orbit_automorphism(a, a_prime, zeta) -> Callable[[ExtendedParameter], ExtendedParameter]:
    """The sphere automorphism ``c -> conj(mu) (c + d mu) / (1 + c conj(mu d))``.

    ``(mu, d)`` come from :func:`twisted_composition`.  The returned map
    sends ``a`` to ``a'`` and preserves the disk.
    """
    phi = twisted_composition(a, a_prime, zeta)
    mu, d = phi.lam, phi.c

    def orbit(c: ExtendedParameter) -> ExtendedParameter:
        if c.kind == INFINITY:
            if d == 0:
                return c
            return _classify_like(1.0 / d.conjugate(), EXTERIOR)
        z = c.value
        den = 1.0 + z * (mu * d).conjugate()
        if abs(den) <= 1e-14 * max(1.0, abs(z)):
            return ExtendedParameter(INFINITY)
        w = mu.conjugate() * (z + d * mu) / den
        return _classify_like(w, c.kind)

    return orbit


def conj_flip(a: ExtendedParameter) -> ExtendedParameter:
    """``a -> 1/conj(a)``: swaps disk and exterior, fixes the circle."""
    if a.kind == INFINITY:
        return ExtendedParameter(DISK, 0.0)
    if a.kind == CIRCLE:
        return a
    if a.value == 0:
        return ExtendedParameter(INFINITY)
    return _classify_like(1.0 / a.value.conjugate(), _flip_kind(a.kind))
