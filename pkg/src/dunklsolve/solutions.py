"""Analytic eigenfunctions of the separated Dunkl-Schroedinger problem.

Coordinates are x1 = r sin(theta) cos(phi), x2 = r sin(theta) sin(phi),
x3 = r cos(theta).  The reflections act as R1: phi -> pi - phi,
R2: phi -> -phi, R3: theta -> pi - theta.

Every solution object is immutable, evaluates vectorized over numpy arrays and
exposes ``derivatives(t) -> (f, f', f'')`` computed analytically, which the
operator residuals in :mod:`dunklsolve.dunkl` pick up automatically.

Normalization measures:

* phi:   |cos phi|^(2 mu1) |sin phi|^(2 mu2) dphi on [0, 2 pi)
* theta: |cos theta|^(2 mu3) sin(theta)^(2 mu1 + 2 mu2 + 1) dtheta on [0, pi]
* r:     r^(2a) dr, a = 1 + mu1 + mu2 + mu3

Bound radial states can be normalized in the scaled variable x (``"x"``) or
in the physical radius (``"r"``).  The two differ by the constant
kappa**(a + 1/2) where x = kappa r.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import model
from ._jet import Jet
from .errors import DomainError
from .model import DunklParams, FreeParticle, MieType, PseudoHarmonic, QuantumNumbers, SectorLabels
from .specfun import bessel_j, bessel_j_derivatives, jacobi, jacobi_derivative, laguerre, laguerre_derivative

__all__ = [
    "AngularPhiSolution",
    "AngularThetaSolution",
    "RadialFree",
    "RadialPseudo",
    "RadialMie",
    "Wavefunction",
    "eta_normalization",
    "iota_normalization",
    "phi_eigenfunction",
    "theta_eigenfunction",
    "radial_free",
    "radial_pseudo",
    "radial_mie",
    "radial_solution",
    "full_wavefunction",
]


def _jacobi_jet(n, alpha, beta, t: Jet) -> Jet:
    return t.compose(
        jacobi(n, alpha, beta, t.v),
        jacobi_derivative(n, alpha, beta, t.v, 1),
        jacobi_derivative(n, alpha, beta, t.v, 2),
    )


def _laguerre_jet(n, alpha, t: Jet) -> Jet:
    return t.compose(
        laguerre(n, alpha, t.v),
        laguerre_derivative(n, alpha, t.v, 1),
        laguerre_derivative(n, alpha, t.v, 2),
    )


def _trig_jets(angle):
    c, s = np.cos(angle), np.sin(angle)
    return Jet(c, -s, -c), Jet(s, c, -s)


# --- angular parts ----------------------------------------------------------


def eta_normalization(m, sector: SectorLabels, params: DunklParams) -> float:
    """Normalization eta_m of the azimuthal eigenfunctions.

    For m = 0 the general expression is a 0 * inf product when mu1 = mu2 = 0;
    there we use the equivalent form Gamma(mu1+mu2+1) / (2 Gamma(mu1+1/2) Gamma(mu2+1/2)),
    which reduces to 1/(2 pi).
    """
    m = model.validate_m(m, sector)
    mu1, mu2 = params.mu1, params.mu2
    e1, e2 = sector.e1, sector.e2
    lg = math.lgamma
    if m == 0:
        log_eta2 = lg(mu1 + mu2 + 1.0) - math.log(2.0) - lg(mu1 + 0.5) - lg(mu2 + 0.5)
    else:
        m = float(m)
        log_eta2 = (
            math.log((2 * m + mu1 + mu2) / 2.0)
            + lg(m - (e1 + e2) / 2.0 + 1.0)
            + lg(m + mu1 + mu2 + (e1 + e2) / 2.0)
            - lg(m + mu1 + (1 + e1 - e2) / 2.0)
            - lg(m + mu2 + (1 + e2 - e1) / 2.0)
        )
    return math.exp(0.5 * log_eta2)


def iota_normalization(l, m, s3: int, params: DunklParams, uncorrected: bool = False) -> float:
    """Normalization iota_l of the polar eigenfunctions.

    ``uncorrected=True`` puts Gamma(l+2m+mu1+mu2-e3/2) in the denominator
    instead of Gamma(l+2m+mu1+mu2+1-e3/2).  That variant is off by a factor
    (l+2m+mu1+mu2-e3/2) in iota^2 and does not normalize Theta; it exists only
    so that the difference can be demonstrated.
    """
    e3 = (1 - s3) // 2
    l = float(model.half_integer(l))
    m = float(model.half_integer(m))
    mu = params.total
    mu12 = params.mu1 + params.mu2
    lg = math.lgamma
    shift = 0.0 if uncorrected else 1.0
    log_i2 = (
        math.log(2 * l + 2 * m + mu + 0.5)
        + lg(l + 2 * m + mu + 0.5 + e3 / 2.0)
        + lg(l - e3 / 2.0 + 1.0)
        - lg(l + 2 * m + mu12 + shift - e3 / 2.0)
        - lg(l + params.mu3 + 0.5 + e3 / 2.0)
    )
    return math.exp(0.5 * log_i2)


@dataclass(frozen=True)
class AngularPhiSolution:
    """Azimuthal eigenfunction Phi_m^(s1, s2) of B_phi with eigenvalue k^2/2."""

    m: Fraction
    sector: SectorLabels
    params: DunklParams
    eta: float = field(init=False)

    def __post_init__(self):
        m = model.validate_m(self.m, self.sector)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "eta", eta_normalization(m, self.sector, self.params))

    @property
    def degree(self) -> int:
        return int(self.m - Fraction(self.sector.e1 + self.sector.e2, 2))

    @property
    def jacobi_params(self) -> tuple[float, float]:
        return self.params.mu2 - 0.5 + self.sector.e2, self.params.mu1 - 0.5 + self.sector.e1

    @property
    def k2(self) -> float:
        return model.k_squared(self.m, self.params)

    @property
    def eigenvalue(self) -> float:
        return 0.5 * self.k2

    def jet(self, phi) -> Jet:
        c, s = _trig_jets(phi)
        phi = np.asarray(phi, dtype=float)
        t = Jet(np.cos(2 * phi), -2 * np.sin(2 * phi), -4 * np.cos(2 * phi))
        al, be = self.jacobi_params
        out = _jacobi_jet(self.degree, al, be, t) * self.eta
        if self.sector.e1:
            out = out * c
        if self.sector.e2:
            out = out * s
        return out

    def __call__(self, phi):
        phi = np.asarray(phi, dtype=float)
        al, be = self.jacobi_params
        val = self.eta * jacobi(self.degree, al, be, np.cos(2 * phi))
        if self.sector.e1:
            val = val * np.cos(phi)
        if self.sector.e2:
            val = val * np.sin(phi)
        return val

    def derivatives(self, phi):
        return self.jet(phi).as_tuple()

    @staticmethod
    def weight(params: DunklParams, phi):
        return np.abs(np.cos(phi)) ** (2 * params.mu1) * np.abs(np.sin(phi)) ** (2 * params.mu2)


@dataclass(frozen=True)
class AngularThetaSolution:
    """Polar eigenfunction Theta_l^(s3) (for azimuthal number m) with eigenvalue q^2/2."""

    l: Fraction
    s3: int
    m: Fraction
    params: DunklParams
    iota: float = field(init=False)

    def __post_init__(self):
        if self.s3 not in (1, -1):
            raise DomainError(f"s3 must be +1 or -1, got {self.s3!r}")
        l = model.half_integer(self.l)
        m = model.half_integer(self.m)
        e3 = (1 - self.s3) // 2
        if m < 0 or (l - Fraction(e3, 2)).denominator != 1 or l - Fraction(e3, 2) < 0:
            raise DomainError(f"l={l}, m={m} not allowed for s3={self.s3}")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "iota", iota_normalization(l, m, self.s3, self.params))

    @property
    def e3(self) -> int:
        return (1 - self.s3) // 2

    @property
    def degree(self) -> int:
        return int(self.l - Fraction(self.e3, 2))

    @property
    def jacobi_params(self) -> tuple[float, float]:
        return 2 * float(self.m) + self.params.mu1 + self.params.mu2, self.params.mu3 + self.e3 - 0.5

    @property
    def k2(self) -> float:
        return model.k_squared(self.m, self.params)

    @property
    def q2(self) -> float:
        return model.q_squared(self.l, self.m, self.params)

    @property
    def eigenvalue(self) -> float:
        return 0.5 * self.q2

    def jet(self, theta) -> Jet:
        c, s = _trig_jets(theta)
        theta = np.asarray(theta, dtype=float)
        t = Jet(np.cos(2 * theta), -2 * np.sin(2 * theta), -4 * np.cos(2 * theta))
        al, be = self.jacobi_params
        out = _jacobi_jet(self.degree, al, be, t) * self.iota
        if self.e3:
            out = out * c
        if self.m:
            out = out * s.power(int(2 * self.m))
        return out

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        al, be = self.jacobi_params
        val = self.iota * jacobi(self.degree, al, be, np.cos(2 * theta)) * np.sin(theta) ** int(2 * self.m)
        if self.e3:
            val = val * np.cos(theta)
        return val

    def derivatives(self, theta):
        return self.jet(theta).as_tuple()

    @staticmethod
    def weight(params: DunklParams, theta):
        return np.abs(np.cos(theta)) ** (2 * params.mu3) * np.sin(theta) ** (2 * (params.mu1 + params.mu2) + 1)


def phi_eigenfunction(sol: AngularPhiSolution, phi):
    return sol(phi)


def theta_eigenfunction(sol: AngularThetaSolution, theta):
    return sol(theta)


# --- radial parts -----------------------------------------------------------


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radial functions are defined for r > 0")
    return r


def _term_scale(*terms):
    return sum(np.abs(t) for t in terms)


@dataclass(frozen=True)
class RadialFree:
    """Free-particle radial solution R(r) = r^(1/2 - a) J_{s+1/2}(sqrt(2E) r).

    Delta-normalized in energy; no square-integrable normalization exists.
    """

    energy: float
    s: float
    params: DunklParams

    def __post_init__(self):
        if not self.energy > 0:
            raise DomainError(f"free-particle energy must be positive, got {self.energy}")

    @property
    def k(self) -> float:
        return math.sqrt(2.0 * self.energy)

    @property
    def q2(self) -> float:
        a = self.params.a
        return self.s * (self.s + 1.0) - a * (a - 1.0)

    def __call__(self, r):
        r = _check_r(r)
        return r ** (0.5 - self.params.a) * bessel_j(self.s + 0.5, self.k * r)

    def spherical_form(self, r):
        """Same function written as r^(1-a) sqrt(2k/pi) j_s(kr)."""
        r = _check_r(r)
        z = self.k * r
        j_s = np.sqrt(np.pi / (2.0 * z)) * bessel_j(self.s + 0.5, z)
        return r ** (1.0 - self.params.a) * np.sqrt(2.0 * self.k / np.pi) * j_s

    def jet(self, r) -> Jet:
        r = _check_r(r)
        x = Jet.variable(r)
        kr = x * self.k
        bessel = kr.compose(*bessel_j_derivatives(self.s + 0.5, kr.v))
        return x.power(0.5 - self.params.a) * bessel

    def derivatives(self, r):
        return self.jet(r).as_tuple()

    def ode_residual(self, r):
        """Relative residual of -R'' - (2a/r) R' + q^2/r^2 R - 2E R = 0."""
        r = _check_r(r)
        f, f1, f2 = self.derivatives(r)
        terms = (-f2, -2.0 * self.params.a / r * f1, self.q2 / r**2 * f, -2.0 * self.energy * f)
        return np.abs(sum(terms)) / _term_scale(*terms)


def _check_normalization(kind):
    if kind not in ("x", "r"):
        raise DomainError(f"normalization must be 'x' or 'r', got {kind!r}")


@dataclass(frozen=True)
class RadialPseudo:
    """Pseudo-harmonic bound state in V = A r^2 + B/r^2 + C.

    With x = (2A)^(1/4) r: G(x) = C0 exp(-x^2/2) x^(alpha+1/2) L_n^alpha(x^2)
    and R = x^(-a) G, so that the integral of R^2 x^(2a) dx is one.
    """

    n: int
    s: float
    params: DunklParams
    A: float
    B: float = 0.0
    C: float = 0.0
    normalization: str = "x"

    def __post_init__(self):
        model.PseudoHarmonic(self.A, self.B, self.C)
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n!r}")
        _check_normalization(self.normalization)

    @property
    def alpha(self) -> float:
        return model.alpha_pseudo(self.s, self.B)

    @property
    def kappa(self) -> float:
        return (2.0 * self.A) ** 0.25

    @property
    def energy(self) -> float:
        return model.energy_pseudo(self.n, self.s, self.A, self.B, self.C)

    @property
    def c0(self) -> float:
        n, al = int(self.n), self.alpha
        return math.exp(0.5 * (math.log(2.0) + math.lgamma(n + 1.0) - math.lgamma(n + al + 1.0)))

    @property
    def _scale(self) -> float:
        return self.kappa ** (self.params.a + 0.5) if self.normalization == "r" else 1.0

    def g_jet_x(self, x) -> Jet:
        """G as a function of x."""
        X = Jet.variable(x)
        al = self.alpha
        lag = _laguerre_jet(int(self.n), al, X * X)
        return (-(X * X) * 0.5).exp() * X.power(al + 0.5) * lag * self.c0

    def in_x(self, x):
        """R as a function of the scaled variable x (x-normalized)."""
        x = _check_r(x)
        al = self.alpha
        g = self.c0 * np.exp(-0.5 * x * x) * x ** (al + 0.5) * laguerre(int(self.n), al, x * x)
        return x ** (-self.params.a) * g

    def __call__(self, r):
        r = _check_r(r)
        return self._scale * self.in_x(self.kappa * r)

    def jet(self, r) -> Jet:
        r = _check_r(r)
        k = self.kappa
        gx = self.g_jet_x(k * r)
        g = Jet(gx.v, gx.d1 * k, gx.d2 * k * k)
        return g * Jet.variable(k * r).power(-self.params.a) * self._scale

    def derivatives(self, r):
        return self.jet(r).as_tuple()

    def ode_residual(self, r):
        """Relative residual of G'' - (s(s+1)+2B)/r^2 G - 2A r^2 G + 2(E-C) G = 0 in r."""
        r = _check_r(r)
        k = self.kappa
        gx = self.g_jet_x(k * r)
        g, g2 = gx.v, gx.d2 * k * k
        s = self.s
        terms = (g2, -(s * (s + 1) + 2 * self.B) / r**2 * g, -2 * self.A * r**2 * g, 2 * (self.energy - self.C) * g)
        return np.abs(sum(terms)) / _term_scale(*terms)


@dataclass(frozen=True)
class RadialMie:
    """Mie-type bound state in V = -A/r + B/r^2 + C.

    With x = sqrt(8(C - E)) r: R(x) = Cn exp(-x/2) x^nu L_n^beta(x), normalized
    so that the integral of R^2 x^(2a) dx is one.  The scale sqrt(8(C-E)) is
    fixed by n + (beta+1)/2 = A / sqrt(2(C - E)); an explicit ``energy`` is
    accepted only if it satisfies that condition.
    """

    n: int
    s: float
    params: DunklParams
    A: float
    B: float = 0.0
    C: float = 0.0
    energy: float | None = None
    normalization: str = "x"

    def __post_init__(self):
        model.MieType(self.A, self.B, self.C)
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n!r}")
        _check_normalization(self.normalization)
        exact = model.energy_mie_quantized(self.n, self.s, self.A, self.B, self.C)
        if self.energy is None:
            object.__setattr__(self, "energy", exact)
        else:
            if not self.C - self.energy > 0:
                raise DomainError(f"bound state needs C - E > 0, got C={self.C}, E={self.energy}")
            if abs(self.energy - exact) > 1e-10 * max(1.0, abs(exact)):
                raise DomainError(
                    f"E={self.energy} is not the level n={self.n} of this Mie-type potential (expected {exact})"
                )

    @property
    def beta(self) -> float:
        return model.beta_nu_mie(self.s, self.B, self.params)[0]

    @property
    def nu(self) -> float:
        return model.beta_nu_mie(self.s, self.B, self.params)[1]

    @property
    def kappa(self) -> float:
        return math.sqrt(8.0 * (self.C - self.energy))

    @property
    def cn(self) -> float:
        n, be = int(self.n), self.beta
        return math.exp(0.5 * (math.lgamma(n + 1.0) - math.log(2 * n + be + 1.0) - math.lgamma(n + be + 1.0)))

    @property
    def _scale(self) -> float:
        return self.kappa ** (self.params.a + 0.5) if self.normalization == "r" else 1.0

    def jet_x(self, x) -> Jet:
        X = Jet.variable(x)
        return (X * -0.5).exp() * X.power(self.nu) * _laguerre_jet(int(self.n), self.beta, X) * self.cn

    def in_x(self, x):
        x = _check_r(x)
        return self.cn * np.exp(-0.5 * x) * x**self.nu * laguerre(int(self.n), self.beta, x)

    def __call__(self, r):
        r = _check_r(r)
        return self._scale * self.in_x(self.kappa * r)

    def jet(self, r) -> Jet:
        r = _check_r(r)
        k = self.kappa
        jx = self.jet_x(k * r)
        return Jet(jx.v, jx.d1 * k, jx.d2 * k * k) * self._scale

    def derivatives(self, r):
        return self.jet(r).as_tuple()

    def ode_residual(self, x):
        """Relative residual, in x, of
        x R'' + 2a R' - (q^2+2B)/x R + A/sqrt(2(C-E)) R - x/4 R = 0."""
        x = _check_r(x)
        f, f1, f2 = self.jet_x(x).as_tuple()
        a = self.params.a
        q2 = self.s * (self.s + 1.0) - a * (a - 1.0)
        coupling = self.A / math.sqrt(2.0 * (self.C - self.energy))
        terms = (x * f2, 2 * a * f1, -(q2 + 2 * self.B) / x * f, coupling * f, -0.25 * x * f)
        return np.abs(sum(terms)) / _term_scale(*terms)


def radial_free(energy, l, m, params: DunklParams, r):
    return RadialFree(energy, model.s_value(l, m, params), params)(r)


def radial_pseudo(n, l, m, params: DunklParams, A, B, r, C=0.0, normalization="x"):
    return RadialPseudo(n, model.s_value(l, m, params), params, A, B, C, normalization)(r)


def radial_mie(n, l, m, params: DunklParams, Amie, Bmie, Cmie, energy, r, normalization="x"):
    return RadialMie(n, model.s_value(l, m, params), params, Amie, Bmie, Cmie, energy, normalization)(r)


def radial_solution(potential, n: int, s: float, params: DunklParams, energy=None, normalization="r"):
    """Radial solution object for any supported potential."""
    if isinstance(potential, FreeParticle):
        if energy is None:
            raise DomainError("free-particle states need an explicit energy")
        return RadialFree(energy, s, params)
    if isinstance(potential, PseudoHarmonic):
        return RadialPseudo(n, s, params, potential.A, potential.B, potential.C, normalization)
    if isinstance(potential, MieType):
        return RadialMie(n, s, params, potential.A, potential.B, potential.C, energy, normalization)
    raise DomainError(f"unsupported potential {potential!r}")


@dataclass(frozen=True)
class Wavefunction:
    """Separated state psi = R(r) Theta(theta) Phi(phi)."""

    qn: QuantumNumbers
    params: DunklParams
    potential: object
    energy_in: float | None = None
    normalization: str = "r"

    def __post_init__(self):
        s = self.qn.s(self.params)
        object.__setattr__(self, "phi", AngularPhiSolution(self.qn.m, self.qn.sector, self.params))
        object.__setattr__(self, "theta", AngularThetaSolution(self.qn.l, self.qn.sector.s3, self.qn.m, self.params))
        object.__setattr__(
            self, "radial", radial_solution(self.potential, self.qn.n, s, self.params, self.energy_in, self.normalization)
        )

    @property
    def energy(self) -> float:
        return float(self.radial.energy)

    def components(self, r, theta, phi):
        return self.radial(r), self.theta(theta), self.phi(phi)

    def __call__(self, r, theta, phi):
        rr, tt, pp = self.components(r, theta, phi)
        return rr * tt * pp

    def cartesian(self, x):
        """Evaluate at Cartesian points, ``x`` of shape (..., 3)."""
        x = np.asarray(x, dtype=float)
        r = np.sqrt(np.sum(x * x, axis=-1))
        theta = np.arccos(np.clip(x[..., 2] / r, -1.0, 1.0))
        phi = np.arctan2(x[..., 1], x[..., 0])
        return self(r, theta, phi)


def full_wavefunction(qn: QuantumNumbers, params: DunklParams, potential, point, energy=None, normalization="r"):
    """psi(r, theta, phi) for ``point = (r, theta, phi)``."""
    r, theta, phi = point
    return Wavefunction(qn, params, potential, energy, normalization)(r, theta, phi)
