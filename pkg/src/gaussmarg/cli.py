"""Command-line surface.

Subcommands: build, bound, eval, marginal, modes, sample, verify, example26.
Exit status is 0 on success, 1 on any usage or module error, and 2 when a
statistical verification reports a failure, so CI can gate on the checks.
All outputs are deterministic for fixed flags and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from .density import (
    bound_K,
    density_f,
    make_spec,
    quadrature_mass,
    spec_from_json,
    spec_to_json_str,
)
from .errors import GaussMargError, ArgumentError, CapacityError, PreconditionError
from .marginals import critical_points, marginal_grid, marginal_law
from .polynomial import (
    Direction,
    MultiPoly,
    from_subspace_normals,
    vandermonde_antisym,
)
from .reference import reference_bound_exact, reference_spec
from .verify import (
    report_entries,
    sample,
    verify_gaussian_marginal,
    verify_symmetric_invariance,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved for verification failures
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # no option name starts with a digit, so let values like "-3,3,201"
        # (the --grid syntax) pass through instead of looking like flags
        self._negative_number_matcher = re.compile(r"^-\d")


def _build_parser():
    parser = _Parser(prog="gaussmarg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_poly_source(p):
        p.add_argument("--poly", help="polynomial JSON file")
        p.add_argument("--normals", help="JSON file with a list of subspace normal vectors")
        p.add_argument("--vandermonde", type=int, metavar="N",
                       help="use the antisymmetric odd-Vandermonde polynomial in N variables")

    def add_spec_source(p):
        p.add_argument("--spec", help="DensitySpec JSON file")
        p.add_argument("--example26", action="store_true",
                       help="use the built-in reference scenario")
        p.add_argument("--eta", type=float,
                       help="reference-scenario perturbation strength (eta = 32 epsilon); "
                            "only valid together with --example26")
        p.add_argument("--epsilon", type=float, help="perturbation strength")

    def add_out(p):
        p.add_argument("--out", help="output path (default: standard output)")

    p = sub.add_parser("build", help="construct and write a DensitySpec JSON")
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--sigma", type=float, required=True)
    add_poly_source(p)
    add_out(p)

    p = sub.add_parser("bound", help="compute the validity bound and certificate")
    p.add_argument("--sigma", type=float)
    add_poly_source(p)
    p.add_argument("--spec", help="print the stored bound of an existing spec")
    add_out(p)

    p = sub.add_parser("eval", help="write a joint-density CSV grid")
    add_spec_source(p)
    p.add_argument("--grid", default="-3,3,201", help="min,max,count per axis")
    add_out(p)

    p = sub.add_parser("marginal", help="write a 1-d marginal density CSV")
    add_spec_source(p)
    p.add_argument("--direction", help="comma-separated unit direction")
    p.add_argument("--theta", type=float,
                   help="n=2 direction angle: a = (sin theta, cos theta)")
    p.add_argument("--grid", default="-4,4,401", help="min,max,count")
    add_out(p)

    p = sub.add_parser("modes", help="critical points and modality of a marginal")
    add_spec_source(p)
    p.add_argument("--direction", help="comma-separated unit direction")
    p.add_argument("--theta", type=float)
    add_out(p)

    p = sub.add_parser("sample", help="draw exact samples, write points CSV")
    add_spec_source(p)
    p.add_argument("--N", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    add_out(p)

    p = sub.add_parser("verify", help="run the statistical verification suites")
    add_spec_source(p)
    p.add_argument("--direction", help="verify only this direction")
    p.add_argument("--N", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.01)
    add_out(p)

    p = sub.add_parser("example26",
                       help="full pipeline on the reference scenario with pass/fail lines")
    p.add_argument("--eta", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--N", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.01)

    return parser


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _fmt(v):
    return repr(float(v))


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ArgumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ArgumentError(f"{path} is not valid JSON: {exc}") from exc


def _poly_from_args(args):
    sources = [s for s in ("poly", "normals", "vandermonde")
               if getattr(args, s, None) is not None]
    if len(sources) != 1:
        raise ArgumentError("give exactly one of --poly, --normals, --vandermonde")
    if args.poly:
        return MultiPoly.from_json(_load_json(args.poly))
    if args.normals:
        return from_subspace_normals(_load_json(args.normals))
    return vandermonde_antisym(args.vandermonde)


def _spec_from_args(args):
    given = [bool(getattr(args, "spec", None)), bool(getattr(args, "example26", False))]
    if sum(given) != 1:
        raise ArgumentError("give exactly one of --spec or --example26")
    if getattr(args, "eta", None) is not None and not getattr(args, "example26", False):
        raise ArgumentError("--eta is only meaningful with --example26")
    if args.spec:
        if getattr(args, "epsilon", None) is not None:
            raise ArgumentError("--epsilon cannot override a stored spec")
        return spec_from_json(_load_json(args.spec))
    return reference_spec(eta=args.eta, epsilon=getattr(args, "epsilon", None))


def _parse_grid(text):
    try:
        lo, hi, count = text.split(",")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError as exc:
        raise ArgumentError(f"--grid must be min,max,count (got {text!r})") from exc
    if not (hi > lo and count >= 2):
        raise ArgumentError("--grid needs max > min and count >= 2")
    return lo, hi, count


def _law_from_args(spec, args):
    if (args.direction is None) == (args.theta is None):
        raise ArgumentError("give exactly one of --direction or --theta")
    if args.theta is not None:
        if spec.n != 2:
            raise ArgumentError("--theta only applies to n = 2")
        a = Direction((math.sin(args.theta), math.cos(args.theta)))
        return marginal_law(spec, a, theta=args.theta)
    comps = [float(v) for v in args.direction.split(",")]
    return marginal_law(spec, Direction(comps))


def _default_directions(n):
    dirs = []
    for i in range(n):
        e = [0.0] * n
        e[i] = 1.0
        dirs.append(Direction(e))
    for i in range(n):
        for j in range(i + 1, n):
            for s in (1.0, -1.0):
                e = [0.0] * n
                e[i], e[j] = 1.0, s
                dirs.append(Direction(e))
    return dirs


def _cmd_build(args):
    spec = make_spec(args.epsilon, args.sigma, _poly_from_args(args))
    _emit(spec_to_json_str(spec), args.out)
    return 0


def _cmd_bound(args):
    if args.spec:
        spec = spec_from_json(_load_json(args.spec))
        K, cert = spec.bound_K, spec.bound_certificate
    else:
        if args.sigma is None:
            raise ArgumentError("--sigma is required without --spec")
        K, cert = bound_K(args.sigma, _poly_from_args(args))
    _emit(json.dumps({"bound_K": K, "certificate": cert.to_json()},
                     indent=2, sort_keys=True), args.out)
    return 0


def _cmd_eval(args):
    spec = _spec_from_args(args)
    if spec.n > 3:
        raise CapacityError("tensor grid evaluation limited to n <= 3")
    lo, hi, count = _parse_grid(args.grid)
    axes = np.linspace(lo, hi, count)
    mesh = np.meshgrid(*([axes] * spec.n), indexing="ij")
    pts = np.stack(mesh, axis=-1).reshape(-1, spec.n)
    values = density_f(spec, pts)
    header = ",".join(f"x{i + 1}" for i in range(spec.n)) + ",f"
    lines = [header]
    for row, v in zip(pts, values):
        lines.append(",".join(_fmt(c) for c in row) + "," + _fmt(v))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_marginal(args):
    spec = _spec_from_args(args)
    law = _law_from_args(spec, args)
    lo, hi, count = _parse_grid(args.grid)
    rows = marginal_grid(law, np.linspace(lo, hi, count))
    lines = ["x,g"] + [f"{_fmt(x)},{_fmt(g)}" for x, g in rows]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_modes(args):
    spec = _spec_from_args(args)
    report = critical_points(_law_from_args(spec, args))
    _emit(json.dumps(report.to_json(), indent=2), args.out)
    return 0


def _cmd_sample(args):
    spec = _spec_from_args(args)
    batch = sample(spec, args.N, args.seed)
    header = ",".join(f"x{i + 1}" for i in range(spec.n))
    lines = [header]
    for row in batch.points:
        lines.append(",".join(_fmt(c) for c in row))
    _emit("\n".join(lines) + "\n", args.out)
    print(
        f"N={args.N} seed={args.seed} proposals={batch.proposals_used} "
        f"acceptance={batch.acceptance_rate:.4f}",
        file=sys.stderr,
    )
    return 0


def _verification_entries(spec, directions, N, seed, alpha):
    results = []
    names = []
    for a in directions:
        res = verify_gaussian_marginal(spec, a, N, seed)
        results.append(res)
        label = ",".join(f"{c:g}" for c in a.components)
        names.append(f"marginal[{label}]")
    try:
        for res in verify_symmetric_invariance(spec, N, seed):
            results.append(res)
            names.append("invariance|x|^2" if "chi" in res.null else "invariance max|x|")
    except PreconditionError as exc:
        print(f"note: symmetric-invariance suite skipped: {exc}", file=sys.stderr)
    return report_entries(results, alpha, names)


def _cmd_verify(args):
    spec = _spec_from_args(args)
    if args.direction:
        directions = [Direction([float(v) for v in args.direction.split(",")])]
    else:
        directions = _default_directions(spec.n)
    entries = _verification_entries(spec, directions, args.N, args.seed, args.alpha)
    _emit(json.dumps(entries, indent=2), args.out)
    return 0 if all(e["pass"] for e in entries) else 2


def _cmd_example26(args):
    custom_strength = args.eta is not None or args.epsilon is not None
    spec = reference_spec(eta=args.eta, epsilon=args.epsilon)
    checks = []

    exact = reference_bound_exact()
    ok = abs(spec.bound_K - exact) <= 1e-3 * exact
    checks.append((ok, f"bound: K = {spec.bound_K:.6f}, closed form 128/e^2 = {exact:.6f}"))

    mass = quadrature_mass(spec, 8.0, 257)
    ok = abs(mass - 1.0) <= 1e-8
    checks.append((ok, f"normalization: grid mass = {mass:.12f}"))

    entries = _verification_entries(
        spec, _default_directions(2), args.N, args.seed, args.alpha
    )
    for e in entries:
        checks.append(
            (e["pass"],
             f"{e['test']} vs {e['null']}: D = {e['statistic']:.5f}, "
             f"p = {e['p_value']:.4f} (alpha = {e['alpha']})")
        )

    report = critical_points(
        marginal_law(spec, Direction((math.sin(math.pi / 8), math.cos(math.pi / 8))),
                     theta=math.pi / 8)
    )
    line = (f"modes at theta = pi/8: {report.classification}, "
            f"critical points {[round(r, 6) for r in report.critical_points]}")
    if custom_strength:
        checks.append((True, line + " (informational at custom strength)"))
    else:
        checks.append((report.classification == "nonunimodal", line))

    failed = False
    for ok, text in checks:
        print(("PASS  " if ok else "FAIL  ") + text)
        failed = failed or not ok
    return 2 if failed else 0


_COMMANDS = {
    "build": _cmd_build,
    "bound": _cmd_bound,
    "eval": _cmd_eval,
    "marginal": _cmd_marginal,
    "modes": _cmd_modes,
    "sample": _cmd_sample,
    "verify": _cmd_verify,
    "example26": _cmd_example26,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 1
    try:
        return _COMMANDS[args.command](args)
    except GaussMargError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
