"""Command-line interface: ``ttolab describe | decide | verify``.

Exit codes: 0 equivalent / success, 1 not equivalent / failed checks,
2 undetermined, 3 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import isodecider as iso
from .blaschke import FiniteBlaschkeProduct, clark_measure, herglotz_mass, rotational_symmetry, same_argument_zeros
from .errors import TTOLabError
from .modelspace import ModelSpaceBasis
from .moebius import ExtendedParameter, MoebiusAutomorphism

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_UNDETERMINED = 2
EXIT_INPUT = 3
EXIT_CHECK_FAILED = 1

VERDICT_EXIT = {
    iso.EQUIVALENT: EXIT_OK,
    iso.NOT_EQUIVALENT: EXIT_NOT_EQUIVALENT,
    iso.UNDETERMINED: EXIT_UNDETERMINED,
}


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _load_theta(path: str) -> FiniteBlaschkeProduct:
    try:
        return FiniteBlaschkeProduct.from_json(_load_json(path))
    except (TTOLabError, ValueError, TypeError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{path}: {exc}") from None


def _c(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _emit(text: str, output: str | None):
    if output and output != "-":
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("TTOLAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"TTOLAB_SEED must be an integer, got {env!r}") from None
    return 0


def _parse_grid(text: str) -> tuple:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--grid expects three integers like 8,8,5, got {text!r}") from None
    if len(parts) != 3 or min(parts) < 1:
        raise InputError(f"--grid expects three positive integers, got {text!r}")
    return parts


# ---------------------------------------------------------------------------
# describe
# ---------------------------------------------------------------------------

def cmd_describe(args) -> int:
    theta = _load_theta(args.input)
    params = []
    for s in args.clark or ["1"]:
        try:
            a = complex(s.replace(" ", ""))
        except ValueError:
            raise InputError(f"--clark expects a complex number, got {s!r}") from None
        if abs(abs(a) - 1.0) > 1e-8:
            raise InputError(f"--clark parameter {s!r} is not unimodular")
        params.append(a / abs(a))
    measures = [clark_measure(theta, a) for a in params]

    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["location_re", "location_im", "weight"])
        for m in measures:
            for z, wt in zip(m.locations, m.weights):
                w.writerow([repr(float(z.real)), repr(float(z.imag)), repr(float(wt))])
        _emit(buf.getvalue(), args.output)
        return EXIT_OK

    v = same_argument_zeros(theta)
    report = {
        "degree": theta.degree,
        "gamma": _c(theta.gamma),
        "zeros": [_c(z) for z in theta.zeros],
        "theta_at_0": _c(theta(0.0)),
        "rotational_symmetries": [{"u": _c(u), "v": _c(v_)} for u, v_ in rotational_symmetry(theta)],
        "same_argument_rotation": None if v is None else _c(v),
        "clark_measures": [
            {
                "parameter": _c(m.parameter),
                "atoms": [
                    {"location": _c(z), "weight": float(wt)} for z, wt in zip(m.locations, m.weights)
                ],
                "total_mass": m.total_mass,
                "herglotz_mass": herglotz_mass(theta, m.parameter),
                "kappa": list(_kappa_tuple(m)),
            }
            for m in measures
        ],
    }
    _emit(json.dumps(report, indent=2) + "\n", args.output)
    return EXIT_OK


def _kappa_tuple(m):
    k = iso.kappa(m)
    return k.epsilon, k.n


# ---------------------------------------------------------------------------
# decide
# ---------------------------------------------------------------------------

def cmd_decide(args) -> int:
    try:
        q = iso.IsoQuery.from_json(_load_json(args.input))
    except TTOLabError as exc:
        raise InputError(f"{args.input}: {exc}") from None
    if args.tol_accept <= 0 or args.tol_reject <= 0:
        raise InputError("tolerances must be positive")
    grid = _parse_grid(args.grid)
    d = iso.decide(q, grid=grid, tol_accept=args.tol_accept, tol_reject=args.tol_reject,
                   certificate=not args.no_certificate)
    out = d.to_json()
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["verdict", "reason", "residual", "best_residual", "starts"])
        w.writerow([d.verdict, d.reason, d.residual, d.best_residual, d.starts])
        _emit(buf.getvalue(), args.output)
    else:
        _emit(json.dumps(out, indent=2) + "\n", args.output)
    return VERDICT_EXIT[d.verdict]


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _random_disk(rng, r=0.6) -> complex:
    return complex(r * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))


def run_checks(theta: FiniteBlaschkeProduct, seed: int, quadrature: int | None = None) -> list:
    """The invariant suite as ``(name, residual, tolerance)`` triples."""
    from . import pick, sedlock, tto, unitaries
    from .tto import Symbol

    rng = np.random.default_rng(seed)
    basis = ModelSpaceBasis(theta, quadrature)
    n = theta.degree
    checks = []

    res = 0.0
    for _ in range(20):
        f = rng.normal(size=n) + 1j * rng.normal(size=n)
        lam = _random_disk(rng, 0.9)
        res = max(res, abs(basis.inner(f, basis.kernel_coords(lam)) - basis.evaluate(f, lam)))
    checks.append(("reproducing_kernel", res, 1e-9))

    J = basis.conjugation_matrix()
    res = float(np.max(np.abs(J @ J.conj() - np.eye(n))))
    for _ in range(20):
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        res = max(res, abs(np.linalg.norm(basis.conjugate(v)) - np.linalg.norm(v)))
    checks.append(("conjugation_involutive_isometric", res, 1e-10))
    lam = _random_disk(rng)
    res = float(np.max(np.abs(basis.conjugate(basis.kernel_coords(lam)) - basis.conjugate_kernel_coords(lam))))
    checks.append(("conjugate_kernel", res, 1e-9))

    a, b = _random_disk(rng, 0.5), _random_disk(rng, 0.5)
    psi = MoebiusAutomorphism(np.exp(2j * np.pi * rng.uniform()), _random_disk(rng, 0.5))
    phi = MoebiusAutomorphism(np.exp(2j * np.pi * rng.uniform()), _random_disk(rng, 0.5))
    for key, val in unitaries.word_relation_residuals(basis, a, b, psi, phi).items():
        checks.append((f"word_relation_{key}", val, 1e-9))
    checks.append(("sarason_crofoot", unitaries.sarason_crofoot_residual(basis, a), 1e-9))
    for k in (1, 2):
        sym = Symbol.monomial(k)
        checks.append((f"composition_intertwining_z{k}", unitaries.composition_intertwining_residual(basis, psi, sym), 1e-9))
        checks.append((f"sharp_intertwining_z{k}", unitaries.sharp_intertwining_residual(basis, sym), 1e-9))

    for label, val in (("0", 0.0), ("0.3", 0.3), ("0.5i", 0.5j), ("1", 1.0), ("2", 2.0), ("inf", None)):
        p = ExtendedParameter.from_value(val)
        alg = sedlock.algebra(basis, p)
        com = sedlock.commutant(alg.generator)
        checks.append((f"commutant_dimension_a={label}", float(abs(len(com) - n)), 0.5))
        checks.append((f"commutant_span_a={label}", sedlock.span_residual(alg, com), 1e-9))
        checks.append((f"abelian_a={label}", sedlock.commutator_residual(alg), 1e-9))

    a_disk = ExtendedParameter.from_value(a)
    Q = sedlock.idempotents(basis, a_disk)
    laws = sedlock.resolution_residuals(Q)
    checks.append(("idempotent_laws", max(laws.values()), 1e-9))
    P = sedlock.clark_projections(basis, ExtendedParameter.from_value(1.0))
    laws = sedlock.resolution_residuals(P)
    checks.append(("clark_projection_laws", max(laws.values()), 1e-9))

    for label, sym in (("z", Symbol.monomial(1)), ("z2", Symbol.monomial(2)), ("1+z", Symbol.polynomial([1, 1]))):
        val = abs(tto.operator_norm(tto.tto_matrix(basis, sym)) - tto.nehari_distance(theta, sym))
        checks.append((f"nehari_{label}", val, 1e-8))

    if theta.has_distinct_zeros():
        pm = pick.sedlock_to_pick(basis)
        vecs = [rng.normal(size=n) + 1j * rng.normal(size=n) for _ in range(4)]
        checks.append(("pick_unitarity", pick.pick_unitarity_residual(pm, vecs), 1e-9))
        checks.append(("pick_intertwining", pick.pick_intertwining_residual(pm, Symbol.monomial(1)), 1e-8))
    return checks


def cmd_verify(args) -> int:
    theta = _load_theta(args.input)
    if theta.degree > args.max_degree:
        raise InputError(f"degree exceeds verify limit ({theta.degree} > {args.max_degree})")
    if args.quadrature is not None and args.quadrature < 2 * (theta.degree + 2) + 1:
        raise InputError(f"--quadrature must be at least {2 * (theta.degree + 2) + 1} for this input")
    checks = run_checks(theta, _seed(args), args.quadrature)
    rows = [(name, f"{res:.3e}", f"{tol:.0e}", "pass" if res < tol else "FAIL") for name, res, tol in checks]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "residual", "tolerance", "status"])
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(
            {
                "degree": theta.degree,
                "seed": _seed(args),
                "checks": [{"check": r[0], "residual": r[1], "tolerance": r[2], "status": r[3]} for r in rows],
            },
            indent=2,
        ) + "\n"
    _emit(text, args.output)
    return EXIT_OK if all(r[3] == "pass" for r in rows) else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ttolab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", required=True, help="input JSON file ('-' for stdin)")
    common.add_argument("--output", "-o", help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=None, help="random seed (fallback: $TTOLAB_SEED, then 0)")

    p = sub.add_parser("describe", parents=[common], help="summarize a Blaschke product")
    p.add_argument("--clark", action="append", metavar="A",
                   help="unimodular Clark parameter, e.g. 1 or 0.6+0.8j (repeatable)")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("decide", parents=[common], help="decide spatial isomorphism of two Sedlock algebras")
    p.add_argument("--tol-accept", type=float, default=iso.TOL_ACCEPT)
    p.add_argument("--tol-reject", type=float, default=iso.TOL_REJECT)
    p.add_argument("--grid", default=",".join(map(str, iso.DEFAULT_GRID)),
                   help="multistart grid sizes for angle, rotation and each coordinate of c")
    p.add_argument("--no-certificate", action="store_true", help="skip the level-set congruence test")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite on a Blaschke product")
    p.add_argument("--quadrature", type=int, default=None, help="number of circle quadrature nodes")
    p.add_argument("--max-degree", type=int, default=8)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"ttolab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TTOLabError as exc:
        print(f"ttolab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
