"""Command-line front end.

    dunklsolve spectrum --potential mie --A 1 --mu 0,0,0 --n-max 2 --l-max 1 --m-max 1
    dunklsolve verify --suite all --seed 42 --format json
    dunklsolve oracle --potential pseudo --A 0.5 --B 1.5 --l 0 --m 0 --mu 0.3,0.3,0.3
    dunklsolve eval --potential pseudo --A 0.5 --n 0 --l 0 --m 0 --points "0.5,1,1"

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 domain error.
"""
from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

import numpy as np

from . import model
from .checks import SUITES, run_suite
from .errors import DunklError
from .model import ALL_SECTORS, DunklParams, FreeParticle, MieType, PseudoHarmonic, QuantumNumbers, SectorLabels
from .oracle import RadialGrid, default_grid, fd_radial_spectrum
from .report import FORMATS, RunReport
from .solutions import Wavefunction

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --- argument parsing -------------------------------------------------------


def _real(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}")


def _mu_triple(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"--mu needs three comma-separated values, got {text!r}")
    return tuple(_real(p) for p in parts)


def _quantum(text: str) -> Fraction:
    """Accepts "1/2", "0.5", "3"; the half-integer rule is checked later (domain error)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a quantum number: {text!r}")


def _sector(text: str) -> SectorLabels:
    try:
        return SectorLabels.parse(text)
    except DunklError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _sectors(text: str) -> tuple[SectorLabels, ...]:
    if text.strip() == "all":
        return ALL_SECTORS
    return tuple(_sector(t) for t in text.split(","))


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=FORMATS, default="table")
    g.add_argument("--tol", type=float, default=None, help="pass/fail tolerance (command-specific default)")
    g.add_argument("--seed", type=int, default=0, help="seed for random sample points")
    g.add_argument("--quiet", action="store_true", help="suppress warnings on standard error")
    g.add_argument("--out", metavar="PATH", default=None, help="write the report to PATH instead of stdout")
    return p


def _potential_args(p, choices, required=True):
    p.add_argument("--potential", choices=choices, required=required)
    p.add_argument("--A", type=_real, default=1.0)
    p.add_argument("--B", type=_real, default=0.0)
    p.add_argument("--C", type=_real, default=0.0)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="dunklsolve", description=__doc__.split("\n")[0] or None)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="energy table sorted by energy")
    _potential_args(sp, ("pseudo", "mie"))
    sp.add_argument("--mu", type=_mu_triple, default=(0.0, 0.0, 0.0))
    sp.add_argument("--n-max", type=int, default=2)
    sp.add_argument("--l-max", type=_quantum, default=Fraction(1))
    sp.add_argument("--m-max", type=_quantum, default=Fraction(1))
    sp.add_argument("--sectors", type=_sectors, default=ALL_SECTORS, help='"all" or labels such as "+++,+-+"')

    vp = sub.add_parser("verify", parents=[common], help="residual and Gram-matrix suites")
    vp.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    vp.add_argument("--mu", type=_mu_triple, default=None,
                    help="deformation parameters (default: random for identities, 0.3,0.3,0.3 otherwise)")

    op = sub.add_parser("oracle", parents=[common], help="analytic vs finite-difference radial spectrum")
    _potential_args(op, ("pseudo", "mie", "free"))
    op.add_argument("--s", type=_real, default=None, help="effective angular index (overrides --l/--m)")
    op.add_argument("--l", type=_quantum, default=Fraction(0))
    op.add_argument("--m", type=_quantum, default=Fraction(0))
    op.add_argument("--sector", type=_sector, default=None, help="validate (l, m) against this sector")
    op.add_argument("--mu", type=_mu_triple, default=(0.0, 0.0, 0.0))
    op.add_argument("--grid-N", type=int, default=None)
    op.add_argument("--r-max", type=_real, default=None)
    op.add_argument("--k", type=int, default=4, help="number of levels")
    op.add_argument("--mie-form", choices=("verbatim", "quantized"), default="verbatim",
                    help="closed form the FD levels are checked against")

    ep = sub.add_parser("eval", parents=[common], help="evaluate psi and its factors at points")
    _potential_args(ep, ("pseudo", "mie", "free"))
    ep.add_argument("--E", type=_real, default=None, help="energy (free particle only)")
    ep.add_argument("--n", type=int, default=0)
    ep.add_argument("--l", type=_quantum, default=Fraction(0))
    ep.add_argument("--m", type=_quantum, default=Fraction(0))
    ep.add_argument("--sector", type=_sector, default=SectorLabels())
    ep.add_argument("--mu", type=_mu_triple, default=(0.0, 0.0, 0.0))
    ep.add_argument("--normalization", choices=("r", "x"), default="r")
    where = ep.add_mutually_exclusive_group(required=True)
    where.add_argument("--points", help='"r,theta,phi;r,theta,phi;..."')
    where.add_argument("--grid", help='"r0:r1:nr,t0:t1:nt,p0:p1:np" (linspace product)')
    return parser


def _make_potential(args):
    if args.potential == "pseudo":
        return PseudoHarmonic(args.A, args.B, args.C)
    if args.potential == "mie":
        return MieType(args.A, args.B, args.C)
    return FreeParticle()


def _potential_params(args) -> dict:
    if args.potential == "free":
        return {"potential": "free"}
    return {"potential": args.potential, "A": args.A, "B": args.B, "C": args.C}


# --- commands ---------------------------------------------------------------


def cmd_spectrum(args, warn) -> RunReport:
    params = DunklParams(*args.mu)
    pot = _make_potential(args)
    mie = isinstance(pot, MieType)
    cols = ["sector", "m", "l", "n", "s", "beta" if mie else "alpha", "energy"] + (["energy_quantized"] if mie else [])
    rows = []
    states = model.enumerate_states(args.n_max, args.l_max, args.m_max, args.sectors) if args.n_max >= 0 else ()
    for sector, m, l, n in states:
        s = model.s_value(l, m, params)
        if mie:
            beta, _ = model.beta_nu_mie(s, pot.B, params)
            rows.append([sector.label, m, l, n, s, beta, model.energy_mie(n, s, pot.A, pot.B, pot.C),
                         model.energy_mie_quantized(n, s, pot.A, pot.B, pot.C)])
        else:
            rows.append([sector.label, m, l, n, s, model.alpha_pseudo(s, pot.B),
                         model.energy_pseudo(n, s, pot.A, pot.B, pot.C)])
    rows.sort(key=lambda r: r[6])  # stable: ties keep enumeration order
    report = RunReport(
        "spectrum",
        {**_potential_params(args), "mu": list(args.mu), "n_max": args.n_max, "l_max": args.l_max,
         "m_max": args.m_max, "sectors": [s.label for s in args.sectors]},
        cols,
        rows,
    )
    if mie and args.A != 1.0:
        report.notes.append("energy uses A linearly; energy_quantized (-A^2/(2N^2)+C) is the eigenvalue for A != 1")
    return report


def cmd_verify(args, warn) -> RunReport:
    params = DunklParams(*args.mu) if args.mu is not None else None
    checks = run_suite(args.suite, params, args.tol, args.seed)
    rows = [[c.suite, c.name, c.value, (">= " if c.at_least else "<= ") + f"{c.tol:g}", c.passed] for c in checks]
    return RunReport(
        "verify",
        {"suite": args.suite, "mu": list(args.mu) if args.mu is not None else "default", "tol": args.tol or "default",
         "seed": args.seed},
        ["suite", "check", "value", "threshold", "passed"],
        rows,
        passed=all(c.passed for c in checks),
    )


def cmd_oracle(args, warn) -> RunReport:
    tol = 1e-4 if args.tol is None else args.tol
    pot = _make_potential(args)
    params = DunklParams(*args.mu)
    if args.s is not None:
        s = args.s
    else:
        if args.sector is not None:
            model.validate_quantum_numbers(args.m, args.l, args.sector)
        s = model.s_value(args.l, args.m, params)
    echo = {**_potential_params(args), "s": s, "k": args.k, "tol": tol}
    mie = isinstance(pot, MieType)
    cols = ["n", "analytic"] + (["analytic_quantized"] if mie else []) + ["fd", "abs_diff", "rel_diff", "convergence"]
    if isinstance(pot, FreeParticle):
        report = RunReport("oracle", echo, cols, [], passed=True)
        report.notes.append("no bound states: the free particle has a continuous spectrum E > 0")
        return report
    base = default_grid(pot, s, args.k)
    grid = RadialGrid(args.r_max or base.r_max, args.grid_N or base.N)
    echo.update({"grid_N": grid.N, "r_max": grid.r_max, "mie_form": args.mie_form if mie else None})
    res = fd_radial_spectrum(pot, s, grid, K=args.k)
    rows = []
    ok = True
    for n, (fd, est) in enumerate(zip(res.eigenvalues, res.convergence_estimate)):
        if mie:
            verb = model.energy_mie(n, s, pot.A, pot.B, pot.C)
            quant = model.energy_mie_quantized(n, s, pot.A, pot.B, pot.C)
            ref = verb if args.mie_form == "verbatim" else quant
            lead = [n, verb, quant]
        else:
            ref = model.energy_pseudo(n, s, pot.A, pot.B, pot.C)
            lead = [n, ref]
        diff = abs(fd - ref)
        rel = diff / max(abs(ref), 1e-300)
        ok &= rel <= tol
        if est > tol * max(abs(fd), 1.0):
            warn(f"level {n}: grid-doubling estimate {est:.3g} exceeds tol; increase --grid-N or adjust --r-max")
        rows.append(lead + [float(fd), diff, rel, float(est)])
    return RunReport("oracle", echo, cols, rows, passed=bool(ok))


def _parse_points(text: str) -> np.ndarray:
    try:
        pts = [[float(Fraction(v)) for v in chunk.split(",")] for chunk in text.split(";") if chunk.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --points {text!r}")
    if any(len(p) != 3 for p in pts):
        raise UsageError("each point needs three coordinates r,theta,phi")
    return np.array(pts, dtype=float).reshape(-1, 3)


def _parse_grid(text: str) -> np.ndarray:
    axes = []
    try:
        for part in text.split(","):
            lo, hi, count = part.split(":")
            axes.append(np.linspace(float(Fraction(lo)), float(Fraction(hi)), int(count)))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --grid {text!r}; expected r0:r1:nr,t0:t1:nt,p0:p1:np")
    if len(axes) != 3:
        raise UsageError("--grid needs three axis specs")
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _on_plane(r, theta, phi) -> bool:
    quarter = np.pi / 2
    near = lambda t: abs(t - quarter * round(t / quarter)) <= 1e-12 * max(1.0, abs(t))
    return r <= 0 or near(theta) or near(phi)


def cmd_eval(args, warn) -> RunReport:
    params = DunklParams(*args.mu)
    pot = _make_potential(args)
    qn = QuantumNumbers(args.m, args.l, args.n, args.sector)
    if args.potential == "free" and args.E is None:
        raise UsageError("--E is required for the free particle")
    wf = Wavefunction(qn, params, pot, args.E if args.potential == "free" else None, args.normalization)
    pts = _parse_points(args.points) if args.points is not None else _parse_grid(args.grid)
    report = RunReport(
        "eval",
        {**_potential_params(args), "mu": list(args.mu), "sector": args.sector.label, "m": qn.m, "l": qn.l,
         "n": qn.n, "energy": wf.energy, "normalization": args.normalization},
        ["r", "theta", "phi", "R", "Theta", "Phi", "psi"],
    )
    for r, theta, phi in pts:
        if _on_plane(r, theta, phi):
            msg = f"skipped point (r={r:g}, theta={theta:g}, phi={phi:g}): on a coordinate plane"
            warn(msg)
            report.notes.append(msg)
            continue
        R, T, P = (float(v) for v in wf.components(r, theta, phi))
        report.rows.append([float(r), float(theta), float(phi), R, T, P, R * T * P])
    return report


COMMANDS = {"spectrum": cmd_spectrum, "verify": cmd_verify, "oracle": cmd_oracle, "eval": cmd_eval}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    def warn(msg):
        if not args.quiet:
            print(f"warning: {msg}", file=sys.stderr)

    try:
        report = COMMANDS[args.command](args, warn)
    except UsageError as exc:
        print(f"dunklsolve {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DunklError, ValueError) as exc:
        print(f"dunklsolve {args.command}: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = report.render(args.format)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"dunklsolve: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    if report.passed is False:
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
