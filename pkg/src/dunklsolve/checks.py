"""Named verification suites.

Each suite returns a list of :class:`Check` records: a measured value, its
threshold and whether larger or smaller is the passing side.  Random sample
points come from ``numpy.random.default_rng(seed)`` so reruns are identical.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import model
from .dunkl import (
    StencilConfig,
    angular_momentum_commutator_residual,
    apply_b_phi,
    apply_n_theta,
    hamiltonian_residual,
)
from .errors import DomainError
from .model import ALL_SECTORS, DunklParams, FreeParticle, MieType, PseudoHarmonic, QuantumNumbers, SectorLabels
from .oracle import gram_matrix
from .solutions import AngularPhiSolution, AngularThetaSolution, RadialFree, RadialMie, RadialPseudo, Wavefunction

__all__ = ["Check", "SUITES", "run_suite", "DEFAULT_TOL"]

DEFAULT_TOL = {
    "identities": 1e-12,
    "angular": 1e-6,
    "radial": 1e-6,
    "orthogonality": 1e-8,
    "hamiltonian": 1e-4,
    "commutators": 1e-4,
}


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    value: float
    tol: float
    at_least: bool = False  # pass when value >= tol (negative controls)

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.value):
            return False
        return self.value >= self.tol if self.at_least else self.value <= self.tol


def _pairs_12():
    """One sector per (s1, s2) combination; s3 = +1."""
    return [SectorLabels(s1, s2, 1) for s1 in (1, -1) for s2 in (1, -1)]


def _safe_points(f, lo, hi, count, rng, margin=0.05, node_floor=1e-3):
    """Up to ``count`` points in (lo, hi) away from multiples of pi/2 and from nodes of f."""
    cand = rng.uniform(lo, hi, 8 * count)
    d = np.abs(cand - (np.pi / 2) * np.round(cand / (np.pi / 2)))
    cand = cand[d > margin]
    vals = np.abs(f(cand))
    keep = cand[vals > node_floor * vals.max()] if vals.max() > 0 else cand
    return keep[:count]


# --- identities -------------------------------------------------------------


def identity_suite(params: DunklParams | None = None, tol: float = 1e-12, seed: int = 0, samples: int = 200):
    """a^2 - a + q^2 = s(s+1) and (a-1/2)^2 + q^2 = (s+1/2)^2 over random tuples.

    Without ``params`` each tuple draws its own mu_i uniformly from (0, 2).
    """
    rng = np.random.default_rng(seed)
    err1 = err2 = 0.0
    min_sep = math.inf
    for _ in range(samples):
        p = params or DunklParams(*rng.uniform(0.0, 2.0, 3))
        sector = ALL_SECTORS[rng.integers(len(ALL_SECTORS))]
        ms = model.allowed_values(Fraction(5, 2), sector.e1 + sector.e2)
        ls = model.allowed_values(Fraction(5, 2), sector.e3)
        m = ms[rng.integers(len(ms))]
        l = ls[rng.integers(len(ls))]
        lhs1, rhs1, lhs2, rhs2 = model.centrifugal_identities(l, m, p)
        err1 = max(err1, abs(lhs1 - rhs1) / max(1.0, abs(rhs1)))
        err2 = max(err2, abs(lhs2 - rhs2) / max(1.0, abs(rhs2)))
        min_sep = min(min_sep, model.k_squared(m, p), model.q_squared(l, m, p))
    return [
        Check("identities", "a^2-a+q^2 = s(s+1)", err1, tol),
        Check("identities", "(a-1/2)^2+q^2 = (s+1/2)^2", err2, tol),
        Check("identities", "min(k^2, q^2) >= 0", min_sep, 0.0, at_least=True),
    ]


# --- angular ----------------------------------------------------------------


def angular_suite(params: DunklParams, tol: float = 1e-6, seed: int = 0, points: int = 40, q_max=2):
    """Eigen-residuals of B_phi and the polar operator in every sector, m, l <= q_max."""
    rng = np.random.default_rng(seed)
    out = []
    for sector in ALL_SECTORS:
        worst_phi = worst_theta = 0.0
        for m in model.allowed_values(q_max, sector.e1 + sector.e2):
            phi_sol = AngularPhiSolution(m, sector, params)
            t = _safe_points(phi_sol, 0.0, 2 * np.pi, points, rng)
            res = apply_b_phi(phi_sol, params, t) - phi_sol.eigenvalue * phi_sol(t)
            worst_phi = max(worst_phi, float(np.max(np.abs(res) / np.abs(phi_sol(t)))))
            for l in model.allowed_values(q_max, sector.e3):
                th = AngularThetaSolution(l, sector.s3, m, params)
                t = _safe_points(th, 0.0, np.pi, points, rng)
                res = apply_n_theta(th, params, t, th.k2) - th.eigenvalue * th(t)
                worst_theta = max(worst_theta, float(np.max(np.abs(res) / np.abs(th(t)))))
        out.append(Check("angular", f"B_phi Phi = k^2/2 Phi [{sector.label}]", worst_phi, tol))
        out.append(Check("angular", f"N_theta Theta = q^2/2 Theta [{sector.label}]", worst_theta, tol))
    return out


# --- orthogonality ----------------------------------------------------------

RADIAL_POTENTIALS = (PseudoHarmonic(0.5, 1.5, 0.0), MieType(1.0, 0.8, 0.0))


def _gram_check(name, gram, tol):
    return Check("orthogonality", name, max(gram.max_offdiag, gram.max_diag_dev), tol)


def angular_gram_checks(params: DunklParams, tol: float = 1e-8, index_max=4):
    out = []
    for sector in _pairs_12():
        ms = model.allowed_values(index_max, sector.e1 + sector.e2)
        g = gram_matrix("phi", ms, params, sector=sector)
        out.append(_gram_check(f"Phi Gram, m <= {index_max} [{sector.label[:2]}]", g, tol))
    mixed = [(m, sec) for sec in _pairs_12() for m in model.allowed_values(2, sec.e1 + sec.e2)]
    g = gram_matrix("phi", mixed, params)
    out.append(_gram_check("Phi Gram across (s1, s2) sectors, m <= 2", g, tol))
    for s3 in (1, -1):
        e3 = (1 - s3) // 2
        for m in (Fraction(0), Fraction(1, 2), Fraction(1)):
            ls = model.allowed_values(index_max, e3)
            g = gram_matrix("theta", ls, params, sector=SectorLabels(1, 1, s3), m=m)
            out.append(_gram_check(f"Theta Gram, l <= {index_max}, m={m} [s3={s3:+d}]", g, tol))
    return out


def radial_gram_checks(params: DunklParams, tol: float = 1e-7, n_max: int = 2, lm=((0, 0), (1, 1))):
    out = []
    for pot in RADIAL_POTENTIALS:
        for l, m in lm:
            s = model.s_value(l, m, params)
            g = gram_matrix("radial", range(n_max + 1), params, potential=pot, s=s)
            out.append(_gram_check(f"{pot.kind} radial Gram in r, n <= {n_max}, (l,m)=({l},{m})", g, tol))
            gx = gram_matrix("radial", range(n_max + 1), params, potential=pot, s=s, variable="x")
            out.append(Check("orthogonality", f"{pot.kind} unit norm in x, (l,m)=({l},{m})", gx.max_diag_dev, tol))
    return out


def orthogonality_suite(params: DunklParams, tol: float = 1e-8, seed: int = 0):
    return angular_gram_checks(params, tol) + radial_gram_checks(params, tol)


# --- radial -----------------------------------------------------------------

RADIAL_POINTS = np.geomspace(0.05, 20.0, 50)


def radial_suite(params: DunklParams, tol: float = 1e-6, seed: int = 0):
    """Radial equation residuals at 50 log-spaced points, and the two free-particle forms."""
    out = []
    r = RADIAL_POINTS
    for energy in (0.5, 2.0):
        for l, m in ((0, 0), (Fraction(1, 2), Fraction(3, 2))):
            sol = RadialFree(energy, model.s_value(l, m, params), params)
            out.append(Check("radial", f"free E={energy} (l,m)=({l},{m}) residual", float(sol.ode_residual(r).max()), tol))
            rel = np.abs(sol(r) - sol.spherical_form(r)) / np.maximum(np.abs(sol(r)), 1e-300)
            out.append(Check("radial", f"free E={energy} (l,m)=({l},{m}) Bessel vs spherical", float(rel.max()), 1e-12))
    for B in (0.0, 1.5):
        for l, m in ((0, 0), (1, 1)):
            s = model.s_value(l, m, params)
            worst = max(float(RadialPseudo(n, s, params, 0.5, B).ode_residual(r).max()) for n in range(4))
            out.append(Check("radial", f"pseudo B={B} (l,m)=({l},{m}) residual, n <= 3", worst, tol))
    for B in (0.0, 0.8):
        for l, m in ((0, 0), (1, 1)):
            s = model.s_value(l, m, params)
            worst = max(float(RadialMie(n, s, params, 1.0, B).ode_residual(r).max()) for n in range(4))
            out.append(Check("radial", f"mie B={B} (l,m)=({l},{m}) residual, n <= 3", worst, tol))
    return out


# --- full Hamiltonian -------------------------------------------------------

HAMILTONIAN_STATES = (
    (FreeParticle(), QuantumNumbers(Fraction(1, 2), Fraction(1, 2), 0, SectorLabels(1, -1, -1)), 1.3),
    (PseudoHarmonic(0.5, 0.3, 0.1), QuantumNumbers(1, 1, 1, SectorLabels(1, 1, 1)), None),
    (MieType(1.0, 0.2, 0.0), QuantumNumbers(1, 0, 1, SectorLabels(-1, -1, 1)), None),
)


def _cartesian_points(psi, count, rng, r_range):
    n = 8 * count
    direction = rng.normal(size=(n, 3))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    pts = direction * rng.uniform(*r_range, n)[:, None]
    pts = pts[np.all(np.abs(pts) > 0.1, axis=1)]
    vals = np.abs(psi(pts))
    return pts[vals > 1e-3 * vals.max()][:count]


def hamiltonian_suite(params: DunklParams, tol: float = 1e-4, seed: int = 0, points: int = 20,
                      cfg: StencilConfig = StencilConfig(h=1e-3, order=4)):
    """(-1/2 Dunkl Laplacian + V) psi = E psi at random off-plane points, plus E+0.1 controls."""
    rng = np.random.default_rng(seed)
    out = []
    for pot, qn, energy in HAMILTONIAN_STATES:
        wf = Wavefunction(qn, params, pot, energy)
        pts = _cartesian_points(wf.cartesian, points, rng, (0.3, 3.0))
        res = hamiltonian_residual(wf.cartesian, wf.energy, params, pot, pts, cfg)
        bad = hamiltonian_residual(wf.cartesian, wf.energy + 0.1, params, pot, pts, cfg)
        label = f"{pot.kind} (m,l,n)=({qn.m},{qn.l},{qn.n}) [{qn.sector.label}]"
        out.append(Check("hamiltonian", f"H psi = E psi, {label}", float(res.max()), tol))
        out.append(Check("hamiltonian", f"control E+0.1 detected, {label}", float(bad.min()), 0.05,
                         at_least=True))
    return out


# --- commutators ------------------------------------------------------------


def _f1(x):
    r2 = np.sum(x * x, axis=-1)
    return np.exp(-0.5 * r2) * (1.0 + x[..., 0] + x[..., 1] * x[..., 2] ** 2)


def _f2(x):
    return (x[..., 0] + 0.3) * (x[..., 1] - 0.2) ** 2 * np.exp(-0.25 * np.sum(x * x, axis=-1)) + x[..., 2] ** 3


def _f3(x):
    return np.sin(x[..., 0] + 0.4) * np.cos(x[..., 1] - x[..., 2]) + x[..., 0] * x[..., 2]


TEST_FIELDS = (("gaussian*poly", _f1), ("shifted poly", _f2), ("trig", _f3))


def commutator_suite(params: DunklParams, tol: float = 1e-4, seed: int = 0, points: int = 5):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.2, 1.2, (points, 3)) * rng.choice([-1.0, 1.0], (points, 3))
    out = []
    for name, f in TEST_FIELDS:
        for pair in ((1, 2), (2, 3), (3, 1)):
            res = angular_momentum_commutator_residual(f, params, pair, pts)
            out.append(Check("commutators", f"[J{pair[0]}, J{pair[1]}] on {name}", float(np.max(res)), tol))
    return out


SUITES = {
    "identities": identity_suite,
    "angular": angular_suite,
    "radial": radial_suite,
    "orthogonality": orthogonality_suite,
    "hamiltonian": hamiltonian_suite,
    "commutators": commutator_suite,
}


def run_suite(name: str, params: DunklParams | None, tol: float | None = None, seed: int = 0) -> list[Check]:
    """Run one suite (or ``"all"``) and return its checks in a fixed order."""
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(run_suite(key, params, tol, seed))
        return out
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}")
    tol = DEFAULT_TOL[name] if tol is None else tol
    if name == "identities":
        return identity_suite(params, tol, seed)
    return SUITES[name](params or DunklParams(0.3, 0.3, 0.3), tol, seed)
