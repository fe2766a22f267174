"""Spatial isomorphism of Sedlock algebras over finite Blaschke products.

For parameters off the circle the question reduces (after moving exterior
parameters inside with the sharp unitary) to the functional equation::

    Theta_1 = b_{-a1}(zeta b_{a2}) o Theta_2 o psi

with ``zeta`` unimodular and ``psi`` a disk automorphism.  Writing
``Phi_i = b_{a_i} o Theta_i`` this says ``Phi_1 = zeta Phi_2 o psi``, which
holds exactly when ``psi`` carries the level set ``{Theta_1 = a1}`` onto
``{Theta_2 = a2}`` as multisets.  The decider searches for such a
congruence directly and also runs a multistart local search on the
equation's residual; the congruence test is the certificate behind
``NotEquivalent`` verdicts for generic inputs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares, linear_sum_assignment, minimize

from .blaschke import (
    ClarkMeasure,
    FiniteBlaschkeProduct,
    KappaInvariant,
    level_set,
    rotational_symmetry,
    same_argument_zeros,
)
from .moebius import (
    CIRCLE,
    ExtendedParameter,
    MoebiusAutomorphism,
    blaschke_factor_eval,
)

TOL_ACCEPT = 1e-8
TOL_REJECT = 1e-3
CONGRUENCE_TOL = 1e-6
DEFAULT_GRID = (8, 8, 5)
N_SAMPLES = 64
N_VERIFY = 256
N_LOCAL = 8

EQUIVALENT = "Equivalent"
NOT_EQUIVALENT = "NotEquivalent"
UNDETERMINED = "Undetermined"

_W_GRID_SPAN = 1.2
DEGENERATE_RADIUS = 0.98


def _samples(m: int, offset: float = 0.0) -> np.ndarray:
    return np.exp(2j * np.pi * (np.arange(m) + offset) / m)


@dataclass(frozen=True)
class IsoQuery:
    theta1: FiniteBlaschkeProduct
    a1: ExtendedParameter
    theta2: FiniteBlaschkeProduct
    a2: ExtendedParameter

    def swapped(self) -> IsoQuery:
        return IsoQuery(self.theta2, self.a2, self.theta1, self.a1)

    def to_json(self) -> dict:
        return {
            "theta1": self.theta1.to_json(),
            "a1": self.a1.to_json(),
            "theta2": self.theta2.to_json(),
            "a2": self.a2.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> IsoQuery:
        from .errors import DomainError

        if not isinstance(obj, dict):
            raise DomainError("query must be a JSON object")
        for key in ("theta1", "a1", "theta2", "a2"):
            if key not in obj:
                raise DomainError(f"query is missing field {key!r}")
        out = []
        for key in ("theta1", "a1", "theta2", "a2"):
            try:
                if key.startswith("theta"):
                    out.append(FiniteBlaschkeProduct.from_json(obj[key]))
                else:
                    out.append(ExtendedParameter.from_json(obj[key]))
            except DomainError as exc:
                raise DomainError(f"{key}: {exc}") from None
            except (TypeError, ValueError) as exc:
                raise DomainError(f"{key}: {exc}") from None
        return cls(*out)


@dataclass
class IsoDecision:
    """Outcome of :func:`decide`.

    For ``Equivalent`` verdicts reached through the functional equation,
    ``zeta`` and ``psi`` solve it for the reduced query (both parameters in
    the closed disk); ``sharp1`` / ``sharp2`` record which side was reflected
    to get there.
    """

    verdict: str
    reason: str
    zeta: complex | None = None
    psi: MoebiusAutomorphism | None = None
    residual: float | None = None
    best_residual: float | None = None
    starts: int = 0
    sharp1: bool = False
    sharp2: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def has_witness(self) -> bool:
        return self.psi is not None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "reason": self.reason}
        if self.psi is not None:
            out["witness"] = {
                "zeta": [self.zeta.real, self.zeta.imag],
                "psi": {
                    "lambda": [self.psi.lam.real, self.psi.lam.imag],
                    "c": [self.psi.c.real, self.psi.c.imag],
                },
                "sharp1": self.sharp1,
                "sharp2": self.sharp2,
            }
        if self.residual is not None:
            out["residual"] = self.residual
        if self.best_residual is not None:
            out["best_residual"] = self.best_residual
        out["starts"] = self.starts
        out.update(self.extra)
        return out


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------

def kappa(m: ClarkMeasure) -> KappaInvariant:
    """``(0, number of atoms)``; Clark measures of finite Blaschke products are atomic."""
    return KappaInvariant(0, len(m.locations))


# ---------------------------------------------------------------------------
# The functional equation
# ---------------------------------------------------------------------------

def equation_residual(theta1, a1, theta2, a2, zeta, psi, samples=None) -> float:
    """``max |Theta_1 - b_{-a1}(zeta b_{a2}(Theta_2 o psi))|`` over circle samples."""
    xi = _samples(N_SAMPLES) if samples is None else samples
    inner = zeta * blaschke_factor_eval(a2, theta2(psi(xi)))
    rhs = blaschke_factor_eval(-a1, inner)
    return float(np.max(np.abs(theta1(xi) - rhs)))


def _c_from_w(w):
    r = np.abs(w)
    with np.errstate(invalid="ignore", divide="ignore"):
        scale = np.where(r > 0, np.tanh(r) / np.where(r > 0, r, 1.0), 1.0)
    return w * scale


def _w_from_c(c: complex) -> complex:
    r = abs(c)
    if r == 0:
        return 0j
    return c * math.atanh(min(r, 1 - 1e-16)) / r


def _params_to_witness(p) -> tuple[complex, MoebiusAutomorphism]:
    th, al, wr, wi = p
    c = complex(_c_from_w(complex(wr, wi)))
    return cmath.exp(1j * th), MoebiusAutomorphism(cmath.exp(1j * al), c)


def _witness_to_params(zeta, psi) -> np.ndarray:
    w = _w_from_c(psi.c)
    return np.array([cmath.phase(zeta), cmath.phase(psi.lam), w.real, w.imag])


class _Objective:
    """Vectorized residual of the functional equation in ``(theta, alpha, Re w, Im w)``."""

    def __init__(self, theta1, a1, theta2, a2, xi):
        self.theta2 = theta2
        self.a1 = complex(a1)
        self.a2 = complex(a2)
        self.xi = xi
        self.lhs = theta1(xi)

    def residuals(self, P: np.ndarray) -> np.ndarray:
        P = np.atleast_2d(P)
        zeta = np.exp(1j * P[:, 0])[:, None]
        lam = np.exp(1j * P[:, 1])[:, None]
        c = _c_from_w(P[:, 2] + 1j * P[:, 3])[:, None]
        z = lam * (self.xi[None, :] - c) / (1.0 - np.conj(c) * self.xi[None, :])
        t2 = self.theta2(z)
        inner = zeta * (t2 - self.a2) / (1.0 - np.conj(self.a2) * t2)
        rhs = (inner + self.a1) / (1.0 + np.conj(self.a1) * inner)
        return self.lhs[None, :] - rhs

    def max_abs(self, P) -> np.ndarray:
        return np.max(np.abs(self.residuals(P)), axis=1)

    def rms(self, p) -> float:
        r = self.residuals(p)[0]
        return float(np.sqrt(np.mean(np.abs(r) ** 2)))

    def stacked(self, p) -> np.ndarray:
        r = self.residuals(p)[0]
        return np.concatenate([r.real, r.imag])


def _grid(grid) -> np.ndarray:
    nt, na, nw = grid
    th = 2 * np.pi * np.arange(nt) / nt
    al = 2 * np.pi * np.arange(na) / na
    wv = np.linspace(-_W_GRID_SPAN, _W_GRID_SPAN, nw) if nw > 1 else np.zeros(1)
    T, A, X, Y = np.meshgrid(th, al, wv, wv, indexing="ij")
    return np.column_stack([T.ravel(), A.ravel(), X.ravel(), Y.ravel()])


def _polish(obj: _Objective, p: np.ndarray) -> np.ndarray:
    res = least_squares(obj.stacked, p, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
    return res.x


def multistart_search(theta1, a1, theta2, a2, grid=DEFAULT_GRID, seeds=(), n_local: int = N_LOCAL):
    """Deterministic multistart minimization of the equation residual.

    Returns ``(best_params, best_max_residual, starts_used)``.
    """
    xi = _samples(N_SAMPLES)
    obj = _Objective(theta1, a1, theta2, a2, xi)
    P = _grid(grid)
    if len(seeds):
        P = np.vstack([np.asarray(seeds, dtype=float).reshape(-1, 4), P])
    vals = obj.max_abs(P)
    order = np.lexsort((P[:, 3], P[:, 2], P[:, 1], P[:, 0], vals))
    picks = order[: min(n_local, len(order))]
    results = []
    for i in picks:
        r = minimize(
            obj.rms,
            P[i],
            method="Nelder-Mead",
            options={"maxiter": 500, "xatol": 1e-12, "fatol": 1e-12},
        )
        x = _polish(obj, r.x)
        results.append((float(obj.max_abs(x)[0]), tuple(np.round(x, 12)), x))
    results.sort(key=lambda t: (t[0], t[1]))
    best = results[0]
    return best[2], best[0], len(P)


# ---------------------------------------------------------------------------
# Congruence of level sets
# ---------------------------------------------------------------------------

def _multiset_distance(p: np.ndarray, q: np.ndarray) -> float:
    cost = np.abs(p[:, None] - q[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


def congruences(A: np.ndarray, B: np.ndarray, tol: float = CONGRUENCE_TOL) -> list:
    """Disk automorphisms ``psi`` with ``psi(A) = B`` as multisets (up to ``tol``).

    Each candidate sends ``A[0]`` to some ``B[j]``; after moving both to the
    origin the remaining freedom is a rotation, read off from points of
    matching modulus.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if len(A) != len(B):
        return []
    found = []
    p0 = complex(A[0])
    tA = MoebiusAutomorphism.factor(p0)
    A0 = tA(A)
    for q0 in B:
        q0 = complex(q0)
        tB = MoebiusAutomorphism.factor(q0)
        B0 = tB(B)
        big = np.argsort(-np.abs(A0), kind="stable")
        p = A0[big[0]]
        if abs(p) <= tol:
            rots = [1.0 + 0j] if np.max(np.abs(B0)) <= 2 * tol else []
        else:
            rots = [q / p for q in B0 if abs(abs(q) - abs(p)) <= 2 * tol]
            rots = [w / abs(w) for w in rots]
        for w in rots:
            if _multiset_distance(w * A0, B0) <= tol:
                psi = tB.inverse().compose(MoebiusAutomorphism.rotation(w).compose(tA))
                if not any(psi.isclose(f, 1e-7) for f in found):
                    found.append(psi)
    return found


def _best_zeta(theta1, a1, theta2, a2, psi) -> complex:
    xi = _samples(N_SAMPLES)
    phi1 = blaschke_factor_eval(a1, theta1(xi))
    phi2 = blaschke_factor_eval(a2, theta2(psi(xi)))
    m = np.mean(phi1 / phi2)
    return complex(m / abs(m))


def _polish_witness(theta1, a1, theta2, a2, zeta, psi):
    res = equation_residual(theta1, a1, theta2, a2, zeta, psi)
    if res <= 1e-13:
        return zeta, psi, res
    obj = _Objective(theta1, a1, theta2, a2, _samples(N_SAMPLES))
    x = _polish(obj, _witness_to_params(zeta, psi))
    z2, p2 = _params_to_witness(x)
    res2 = equation_residual(theta1, a1, theta2, a2, z2, p2)
    if res2 < res:
        return z2, p2, res2
    return zeta, psi, res


def verify_witness(theta1, a1, theta2, a2, zeta, psi, m: int = N_VERIFY) -> float:
    """Residual on ``m`` circle points offset from the search samples."""
    return equation_residual(theta1, a1, theta2, a2, zeta, psi, _samples(m, 0.37))


# ---------------------------------------------------------------------------
# Closed form for monomials
# ---------------------------------------------------------------------------

def _monomial_witness(theta1, a1: complex, theta2, a2: complex):
    """Solve the equation for ``gamma_i z^n``; ``None`` when ``|a1| != |a2|``."""
    n = theta1.degree
    g1, g2 = theta1.gamma, theta2.gamma
    if abs(abs(a1) - abs(a2)) > 1e-12:
        return None
    if abs(a1) <= 1e-15:
        t = g2
    else:
        t = a2 * g1 / a1
        t = t / abs(t)
    zeta = g1 / t
    omega = cmath.exp(1j * cmath.phase(t / g2) / n)
    return zeta, MoebiusAutomorphism.rotation(omega)


# ---------------------------------------------------------------------------
# Decision procedure
# ---------------------------------------------------------------------------

def functional_equation_solve(theta1, theta2, a1, a2, grid=DEFAULT_GRID, tol_accept=TOL_ACCEPT,
                              tol_reject=TOL_REJECT, certificate: bool = True) -> IsoDecision:
    """Decide the disk-disk case from the functional equation.

    ``certificate`` enables the level-set congruence test; without it only
    the multistart search runs and no ``NotEquivalent`` verdict is possible
    beyond the closed-form monomial law.
    """
    a1 = complex(a1.value if isinstance(a1, ExtendedParameter) else a1)
    a2 = complex(a2.value if isinstance(a2, ExtendedParameter) else a2)
    if theta1.degree != theta2.degree:
        return IsoDecision(NOT_EQUIVALENT, "degree-mismatch")

    if theta1.is_monomial() and theta2.is_monomial() and theta1.degree >= 2:
        w = _monomial_witness(theta1, a1, theta2, a2)
        if w is None:
            return IsoDecision(NOT_EQUIVALENT, "zn-modulus-law")
        zeta, psi = w
        res = equation_residual(theta1, a1, theta2, a2, zeta, psi)
        return IsoDecision(EQUIVALENT, "zn-closed-form", zeta, psi, res, res, 0)

    obstruction = False
    seeds = []
    if certificate:
        L1 = level_set(theta1, a1)
        L2 = level_set(theta2, a2)
        cands = congruences(L1, L2)
        best = None
        for psi in cands:
            zeta = _best_zeta(theta1, a1, theta2, a2, psi)
            zeta, psi, res = _polish_witness(theta1, a1, theta2, a2, zeta, psi)
            seeds.append(_witness_to_params(zeta, psi))
            if best is None or res < best[2]:
                best = (zeta, psi, res)
        if best is not None and best[2] < tol_accept:
            return IsoDecision(EQUIVALENT, "level-set-congruence", best[0], best[1], best[2], best[2], len(cands))
        obstruction = not cands

    x, best_res, starts = multistart_search(theta1, a1, theta2, a2, grid, seeds)
    zeta, psi = _params_to_witness(x)
    if best_res < tol_accept:
        return IsoDecision(EQUIVALENT, "multistart", zeta, psi, best_res, best_res, starts)
    if obstruction and best_res > tol_reject:
        return IsoDecision(NOT_EQUIVALENT, "no-congruence", best_residual=best_res, starts=starts)
    return IsoDecision(UNDETERMINED, "search-inconclusive", best_residual=best_res, starts=starts)


def reduce_query(q: IsoQuery) -> tuple[IsoQuery, bool, bool]:
    """Move exterior parameters into the disk with ``(Theta, a) -> (Theta^#, 1/a)``."""
    t1, a1, t2, a2 = q.theta1, q.a1, q.theta2, q.a2
    s1 = not a1.in_closed_disk
    s2 = not a2.in_closed_disk
    if s1:
        t1, a1 = t1.sharp(), a1.reciprocal()
    if s2:
        t2, a2 = t2.sharp(), a2.reciprocal()
    return IsoQuery(t1, a1, t2, a2), s1, s2


def decide(q: IsoQuery, grid=DEFAULT_GRID, tol_accept=TOL_ACCEPT, tol_reject=TOL_REJECT,
           certificate: bool = True) -> IsoDecision:
    """Decide whether ``B^{a1}_{Theta1}`` and ``B^{a2}_{Theta2}`` are spatially isomorphic."""
    n1, n2 = q.theta1.degree, q.theta2.degree
    if n1 != n2:
        return IsoDecision(NOT_EQUIVALENT, "degree-mismatch")
    c1 = q.a1.kind == CIRCLE
    c2 = q.a2.kind == CIRCLE
    if n1 == 1:
        return IsoDecision(EQUIVALENT, "one-dimensional")
    if c1 and c2:
        return IsoDecision(EQUIVALENT, "clark-degree")
    if c1 != c2:
        return IsoDecision(NOT_EQUIVALENT, "normal-vs-nonnormal")
    r, s1, s2 = reduce_query(q)
    d = functional_equation_solve(r.theta1, r.theta2, r.a1, r.a2, grid, tol_accept, tol_reject, certificate)
    d.sharp1, d.sharp2 = s1, s2
    if d.verdict == EQUIVALENT:
        fresh = verify_witness(r.theta1, r.a1.value, r.theta2, r.a2.value, d.zeta, d.psi)
        d.extra["fresh_residual"] = fresh
        if fresh >= tol_accept:
            return IsoDecision(UNDETERMINED, "witness-failed-reverification", best_residual=fresh, starts=d.starts)
    return d


def compose_witnesses(w12: tuple, w23: tuple) -> tuple:
    """Chain ``(zeta, psi)`` witnesses: ``zeta13 = zeta12 zeta23``, ``psi13 = psi23 o psi12``."""
    z12, p12 = w12
    z23, p23 = w23
    return z12 * z23, p23.compose(p12)


# ---------------------------------------------------------------------------
# Realization by unitaries
# ---------------------------------------------------------------------------

def witness_unitary(q: IsoQuery, d: IsoDecision, quadrature: int | None = None):
    """Unitary ``W: K_Theta2 -> K_Theta1`` with ``W B2 W* = B1``.

    Returns ``(W, basis1, basis2)``.  Circle-circle verdicts use the
    eigenbases of the two Clark unitaries; functional-equation witnesses
    use ``U_{a1}* U_psi U_{a2}`` (with sharp reflections on either side
    when the query was reduced).
    """
    from .modelspace import ModelSpaceBasis, transfer_matrix
    from .sedlock import generator
    from .unitaries import composition, crofoot, sharp_unitary

    b1 = ModelSpaceBasis(q.theta1, quadrature)
    b2 = ModelSpaceBasis(q.theta2, quadrature)
    if d.verdict != EQUIVALENT:
        raise ValueError("no witness for a non-equivalent verdict")
    if d.reason == "one-dimensional":
        return np.ones((1, 1), dtype=complex), b1, b2
    if d.reason == "clark-degree":
        V1 = _clark_eigenbasis(generator(b1, q.a1).entries)
        V2 = _clark_eigenbasis(generator(b2, q.a2).entries)
        return V1 @ V2.conj().T, b1, b2

    r, s1, s2 = reduce_query(q)
    V1 = sharp_unitary(b1) if s1 else None
    V2 = sharp_unitary(b2) if s2 else None
    r1 = V1.target if s1 else b1
    r2 = V2.target if s2 else b2
    U1 = crofoot(r1, r.a1.value)
    U2 = crofoot(r2, r.a2.value)
    Up = composition(U2.target, d.psi)
    W0 = U1.entries.conj().T @ transfer_matrix(Up.target, U1.target) @ Up.entries @ U2.entries
    W = W0
    if s1:
        W = V1.entries.conj().T @ W
    if s2:
        W = W @ V2.entries
    return W, b1, b2


def _clark_eigenbasis(S: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eig(S)
    order = np.argsort(np.angle(vals))
    V = vecs[:, order]
    # orthonormalize: eigenvectors of a unitary with simple spectrum are orthogonal
    Q, _ = np.linalg.qr(V)
    return Q


def witness_span_residual(q: IsoQuery, d: IsoDecision, quadrature: int | None = None) -> float:
    """Mutual span residual between ``W B2 W*`` and ``B1`` for the witness unitary."""
    from .sedlock import algebra
    from .unitaries import conjugated_algebra_residual

    W, b1, b2 = witness_unitary(q, d, quadrature)
    return conjugated_algebra_residual(W, algebra(b2, q.a2), algebra(b1, q.a1))


# ---------------------------------------------------------------------------
# Rigidity
# ---------------------------------------------------------------------------

def _rigidity_objective(theta, target, xi):
    lhs_vals = theta(xi)

    def residuals(P):
        P = np.atleast_2d(P)
        mu = np.exp(1j * P[:, 0])[:, None]
        d = _c_from_w(P[:, 1] + 1j * P[:, 2])[:, None]
        lam = np.exp(1j * P[:, 3])[:, None]
        c = _c_from_w(P[:, 4] + 1j * P[:, 5])[:, None]
        left = mu * (lhs_vals[None, :] - d) / (1.0 - np.conj(d) * lhs_vals[None, :])
        z = lam * (xi[None, :] - c) / (1.0 - np.conj(c) * xi[None, :])
        return left - target(z)

    return residuals


def _phi_is_identity(p, tol=1e-6) -> bool:
    mu = cmath.exp(1j * p[0])
    d = complex(_c_from_w(complex(p[1], p[2])))
    return abs(mu - 1) < tol and abs(d) < tol


def _escaped(p, bound=DEGENERATE_RADIUS) -> bool:
    # when d and c both run to the circle, both sides tend to constants and
    # the residual vanishes without a genuine solution
    d = complex(_c_from_w(complex(p[1], p[2])))
    c = complex(_c_from_w(complex(p[4], p[5])))
    return abs(d) > bound or abs(c) > bound


def rigidity_search(theta: FiniteBlaschkeProduct, grid=(4, 5, 4, 3), n_local: int = 12):
    """Search for a non-identity automorphism ``phi`` with ``phi o Theta = T o psi``.

    ``T`` ranges over ``Theta`` and ``Theta^#``.  Returns ``(status, witness)``
    where ``status`` is ``False`` when such a pair is found (residual below
    ``TOL_ACCEPT``), ``True`` when every non-identity endpoint of the search
    stays above ``TOL_REJECT`` and ``None`` otherwise.  ``witness`` is
    ``(phi, psi, uses_sharp)`` for a found pair and ``None`` otherwise.
    Endpoints where an automorphism has drifted to the boundary
    (``|d|`` or ``|c| > DEGENERATE_RADIUS``) are discarded.
    """
    xi = _samples(N_SAMPLES)
    seeds = []
    for u, v in rotational_symmetry(theta):
        seeds.append([cmath.phase(v), 0, 0, cmath.phase(u), 0, 0])
    v = same_argument_zeros(theta)
    if v is not None:
        # Theta(v z) = g B(z) with B real-symmetric, so Theta = g^2 Theta^#(conj(v)^2 z)
        g = theta(v * 0.5) / FiniteBlaschkeProduct(1.0, tuple(z * np.conj(v) for z in theta.zeros))(0.5)
        seeds.append([cmath.phase(np.conj(g) ** 2), 0, 0, cmath.phase(np.conj(v) ** 2), 0, 0])

    nm, nd, nl, nc = grid
    mus = 2 * np.pi * (np.arange(nm) + 0.5) / nm
    ds = np.linspace(-1.0, 1.0, nd)
    lams = 2 * np.pi * np.arange(nl) / nl
    cs = np.linspace(-1.0, 1.0, nc)
    G = np.array(np.meshgrid(mus, ds, ds, lams, cs, cs, indexing="ij")).reshape(6, -1).T
    best_nontrivial = np.inf
    for uses_sharp, target in ((False, theta), (True, theta.sharp())):
        res_fn = _rigidity_objective(theta, target, xi)
        P = np.vstack([np.array(seeds, dtype=float).reshape(-1, 6), G]) if seeds else G
        vals = np.max(np.abs(res_fn(P)), axis=1)
        order = np.lexsort(tuple(P[:, k] for k in range(5, -1, -1)) + (vals,))
        starts = list(range(len(seeds))) + [i for i in order if i >= len(seeds)][:n_local]

        def stacked(p):
            r = res_fn(p)[0]
            return np.concatenate([r.real, r.imag])

        for i in starts:
            x = least_squares(stacked, P[i], method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=3000).x
            r = float(np.max(np.abs(res_fn(x))))
            if _phi_is_identity(x) or _escaped(x):
                continue
            if r < TOL_ACCEPT:
                phi = MoebiusAutomorphism(cmath.exp(1j * x[0]), complex(_c_from_w(complex(x[1], x[2]))))
                psi = MoebiusAutomorphism(cmath.exp(1j * x[3]), complex(_c_from_w(complex(x[4], x[5]))))
                return False, (phi, psi, uses_sharp)
            best_nontrivial = min(best_nontrivial, r)
    if best_nontrivial > TOL_REJECT:
        return True, None
    return None, None


def rigidity_check(theta: FiniteBlaschkeProduct, grid=(4, 5, 4, 3), n_local: int = 12):
    """``True`` if ``Theta`` admits no nontrivial pair, ``False`` if one is found, ``None`` if unknown.

    See :func:`rigidity_search`.
    """
    return rigidity_search(theta, grid, n_local)[0]
