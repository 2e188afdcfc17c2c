import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from dunklsolve import model
from dunklsolve.errors import DomainError
from dunklsolve.model import ALL_SECTORS, DunklParams, FreeParticle, MieType, PseudoHarmonic, QuantumNumbers, SectorLabels
from dunklsolve.solutions import (
    AngularPhiSolution,
    AngularThetaSolution,
    RadialFree,
    RadialMie,
    RadialPseudo,
    Wavefunction,
    iota_normalization,
)

mpmath.mp.dps = 20
MU = DunklParams(0.3, 0.5, 0.25)


def _mp_phi_norm(m, sector, p):
    """1 / sqrt of the weighted norm of the unnormalized azimuthal function, by mpmath."""
    e1, e2 = sector.e1, sector.e2
    deg = int(m - Fraction(e1 + e2, 2))
    al, be = p.mu2 - 0.5 + e2, p.mu1 - 0.5 + e1

    def f(t):
        c, s = mpmath.cos(t), mpmath.sin(t)
        g = mpmath.jacobi(deg, al, be, mpmath.cos(2 * t)) * c**e1 * s**e2
        return abs(c) ** (2 * p.mu1) * abs(s) ** (2 * p.mu2) * g * g

    pts = [k * mpmath.pi / 2 for k in range(5)]
    return 1 / mpmath.sqrt(mpmath.quad(f, pts))


def _mp_theta_norm(l, m, s3, p):
    e3 = (1 - s3) // 2
    deg = int(l - Fraction(e3, 2))
    al, be = 2 * float(m) + p.mu1 + p.mu2, p.mu3 + e3 - 0.5

    def f(t):
        c, s = mpmath.cos(t), mpmath.sin(t)
        g = mpmath.jacobi(deg, al, be, mpmath.cos(2 * t)) * s ** int(2 * m) * c**e3
        return abs(c) ** (2 * p.mu3) * s ** (2 * p.mu1 + 2 * p.mu2 + 1) * g * g

    return 1 / mpmath.sqrt(mpmath.quad(f, [0, mpmath.pi / 2, mpmath.pi]))


@pytest.mark.parametrize("m,label", [(0, "+++"), (1, "+++"), (3, "+++"), (Fraction(1, 2), "+-+"),
                                     (Fraction(5, 2), "-++"), (1, "--+"), (2, "--+")])
@pytest.mark.parametrize("p", [MU, DunklParams(0, 0, 0), DunklParams(1.2, 0.1, 0)])
def test_eta_against_mpmath(m, label, p):
    sol = AngularPhiSolution(m, SectorLabels.parse(label), p)
    assert sol.eta == pytest.approx(float(_mp_phi_norm(Fraction(m), sol.sector, p)), rel=1e-10)


@pytest.mark.parametrize("l,m,s3", [(0, 0, 1), (2, 0, 1), (1, Fraction(1, 2), 1), (Fraction(1, 2), 1, -1),
                                    (Fraction(5, 2), Fraction(3, 2), -1), (3, 2, 1)])
@pytest.mark.parametrize("p", [MU, DunklParams(0, 0, 0), DunklParams(0.1, 1.3, 2.0)])
def test_iota_against_mpmath(l, m, s3, p):
    sol = AngularThetaSolution(l, s3, m, p)
    assert sol.iota == pytest.approx(float(_mp_theta_norm(Fraction(l), Fraction(m), s3, p)), rel=1e-10)


@pytest.mark.parametrize("l,m,s3", [(1, Fraction(1, 2), 1), (Fraction(1, 2), 1, -1), (2, 2, 1)])
def test_uncorrected_iota_does_not_normalize(l, m, s3):
    ref = float(_mp_theta_norm(Fraction(l), Fraction(m), s3, MU))
    bad = iota_normalization(l, m, s3, MU, uncorrected=True)
    e3 = (1 - s3) // 2
    factor = float(l) + 2 * float(m) + MU.mu1 + MU.mu2 - e3 / 2
    assert abs(bad / ref - 1) > 1e-2
    assert (bad / ref) ** 2 == pytest.approx(factor, rel=1e-9)


def test_undeformed_angular_limits():
    p = DunklParams(0, 0, 0)
    phi = np.linspace(0.1, 6.0, 7)
    assert np.allclose(np.abs(AngularPhiSolution(1, SectorLabels(), p)(phi)), np.abs(np.cos(2 * phi)) / np.sqrt(np.pi))
    assert np.allclose(AngularPhiSolution(0, SectorLabels(), p)(phi), 1 / np.sqrt(2 * np.pi))
    sol = AngularPhiSolution(Fraction(1, 2), SectorLabels(-1, 1, 1), p)
    assert np.allclose(np.abs(sol(phi)), np.abs(np.cos(phi)) / np.sqrt(np.pi))
    theta = np.linspace(0.1, 3.0, 6)
    assert np.allclose(AngularThetaSolution(0, 1, 0, p)(theta), 1 / np.sqrt(2))
    # l = 1/2 (odd in theta -> pi - theta) at m = 0 is the normalized cos(theta): sqrt(3/2) cos
    assert np.allclose(np.abs(AngularThetaSolution(Fraction(1, 2), -1, 0, p)(theta)), np.sqrt(1.5) * np.abs(np.cos(theta)))


@pytest.mark.parametrize("sector", ALL_SECTORS, ids=lambda s: s.label)
def test_reflection_parities(sector):
    m = Fraction(sector.e1 + sector.e2, 2) + 1
    l = Fraction(sector.e3, 2) + 1
    phi = np.linspace(0.2, 6.0, 11)
    theta = np.linspace(0.2, 2.9, 9)
    ph = AngularPhiSolution(m, sector, MU)
    th = AngularThetaSolution(l, sector.s3, m, MU)
    assert np.allclose(ph(np.pi - phi), sector.s1 * ph(phi), atol=1e-14)
    assert np.allclose(ph(-phi), sector.s2 * ph(phi), atol=1e-14)
    assert np.allclose(th(np.pi - theta), sector.s3 * th(theta), atol=1e-14)


@given(st.sampled_from(ALL_SECTORS), st.integers(0, 3), st.integers(0, 3), st.floats(0.05, 3.05))
def test_angular_jets_match_mpmath_derivatives(sector, jm, jl, t):
    m = Fraction(sector.e1 + sector.e2, 2) + jm
    l = Fraction(sector.e3, 2) + jl
    for sol in (AngularPhiSolution(m, sector, MU), AngularThetaSolution(l, sector.s3, m, MU)):
        f, d1, d2 = sol.derivatives(t)
        num1 = float(mpmath.diff(lambda x: float(sol(float(x))), t, 1, h=1e-4, method="step"))
        assert f == pytest.approx(float(sol(t)), rel=1e-14, abs=1e-14)
        assert d1 == pytest.approx(num1, rel=1e-6, abs=1e-6 * (1 + abs(f)))
        h = 1e-4
        num2 = (sol(t + h) - 2 * sol(t) + sol(t - h)) / h**2
        assert d2 == pytest.approx(num2, rel=1e-5, abs=1e-5 * (1 + abs(f) + abs(d1)))


def test_angular_invalid_numbers():
    with pytest.raises(DomainError):
        AngularPhiSolution(0, SectorLabels(1, -1, 1), MU)
    with pytest.raises(DomainError):
        AngularThetaSolution(1, -1, 0, MU)
    with pytest.raises(DomainError):
        AngularThetaSolution(0, 2, 0, MU)


# --- radial -----------------------------------------------------------------


def test_pseudo_ground_state_closed_form():
    p = DunklParams(0, 0, 0)
    r = np.linspace(0.05, 5, 40)
    for A in (0.5, 2.0):
        k = (2 * A) ** 0.25
        sol = RadialPseudo(0, 0.0, p, A, normalization="r")
        assert np.allclose(sol(r), k**1.5 * 2 * np.pi**-0.25 * np.exp(-0.5 * (k * r) ** 2), rtol=1e-13)
        assert sol.energy == pytest.approx(1.5 * math.sqrt(2 * A))


def test_hydrogen_limit():
    p = DunklParams(0, 0, 0)
    r = np.linspace(0.05, 20, 50)
    R10 = RadialMie(0, 0.0, p, 1.0, normalization="r")(r)
    R20 = RadialMie(1, 0.0, p, 1.0, normalization="r")(r)
    R21 = RadialMie(0, 1.0, p, 1.0, normalization="r")(r)
    assert np.allclose(np.abs(R10), 2 * np.exp(-r), rtol=1e-12)
    assert np.allclose(np.abs(R20), np.abs((1 - r / 2) * np.exp(-r / 2) / np.sqrt(2)), rtol=1e-11, atol=1e-15)
    assert np.allclose(np.abs(R21), r * np.exp(-r / 2) / (2 * np.sqrt(6)), rtol=1e-12)


def test_free_particle_vs_scipy_spherical_bessel():
    p = DunklParams(0, 0, 0)
    r = np.linspace(0.05, 20, 60)
    for s in (0, 1, 2, 3):
        sol = RadialFree(2.0, float(s), p)
        k = 2.0
        ref = np.sqrt(2 * k / np.pi) * special.spherical_jn(s, k * r)
        assert np.allclose(sol(r), ref, rtol=1e-10, atol=1e-13)
        assert np.allclose(sol.spherical_form(r), ref, rtol=1e-10, atol=1e-13)


@pytest.mark.parametrize("p", [MU, DunklParams(0, 0, 0), DunklParams(2.0, 0.1, 1.0)])
def test_radial_ode_residuals(p):
    r = np.geomspace(0.05, 20, 50)
    for s in (p.total, p.total + 3):
        assert RadialFree(0.7, s, p).ode_residual(r).max() < 1e-10
        for n in range(4):
            assert RadialPseudo(n, s, p, 0.8, 1.1, 0.2).ode_residual(r).max() < 1e-10
            assert RadialMie(n, s, p, 1.7, 0.6, -0.3).ode_residual(r).max() < 1e-10


def test_radial_jets_match_finite_differences():
    r = np.array([0.3, 1.1, 2.7])
    h = 1e-4
    for sol in (RadialFree(1.3, 1.2, MU), RadialPseudo(2, 2.05, MU, 0.5, 0.4, normalization="r"),
                RadialMie(1, 2.05, MU, 1.0, 0.3, normalization="r")):
        f, d1, d2 = sol.derivatives(r)
        assert np.allclose(f, sol(r), rtol=1e-14)
        assert np.allclose(d1, (sol(r + h) - sol(r - h)) / (2 * h), rtol=1e-6, atol=1e-9)
        assert np.allclose(d2, (sol(r + h) - 2 * sol(r) + sol(r - h)) / h**2, rtol=1e-4, atol=1e-6)


def test_normalization_variants_differ_by_kappa_power():
    r = np.array([0.5, 1.0, 2.0])
    for cls, args in ((RadialPseudo, (1, 1.05, MU, 2.0, 0.5)), (RadialMie, (1, 1.05, MU, 1.5, 0.5))):
        x_norm, r_norm = cls(*args, normalization="x"), cls(*args, normalization="r")
        assert np.allclose(r_norm(r), x_norm(r) * x_norm.kappa ** (MU.a + 0.5), rtol=1e-14)


def test_mie_explicit_energy_consistency():
    exact = model.energy_mie_quantized(1, 1.05, 2.0, 0.5, 0.1)
    assert RadialMie(1, 1.05, MU, 2.0, 0.5, 0.1, energy=exact).energy == exact
    with pytest.raises(DomainError):
        RadialMie(1, 1.05, MU, 2.0, 0.5, 0.1, energy=model.energy_mie(1, 1.05, 2.0, 0.5, 0.1))
    with pytest.raises(DomainError):
        RadialMie(0, 1.05, MU, 1.0, energy=0.5)


def test_radial_domain_errors():
    with pytest.raises(DomainError):
        RadialFree(-1.0, 0.0, MU)
    with pytest.raises(DomainError):
        RadialFree(1.0, 0.0, MU)(np.array([0.0, 1.0]))
    with pytest.raises(DomainError):
        RadialPseudo(-1, 0.0, MU, 1.0)
    with pytest.raises(DomainError):
        RadialPseudo(0, 0.0, MU, 1.0, normalization="y")


# --- full state -------------------------------------------------------------


@pytest.mark.parametrize("sector", ALL_SECTORS, ids=lambda s: s.label)
def test_wavefunction_parity_and_cartesian(sector):
    qn = QuantumNumbers(Fraction(sector.e1 + sector.e2, 2), Fraction(sector.e3, 2), 1, sector)
    wf = Wavefunction(qn, MU, PseudoHarmonic(0.5, 0.2))
    rng = np.random.default_rng(3)
    x = rng.uniform(0.2, 1.5, (6, 3)) * rng.choice([-1, 1], (6, 3))
    r = np.linalg.norm(x, axis=1)
    theta = np.arccos(x[:, 2] / r)
    phi = np.arctan2(x[:, 1], x[:, 0])
    assert np.allclose(wf.cartesian(x), wf(r, theta, phi), rtol=1e-14)
    for axis, s in zip((0, 1, 2), (sector.s1, sector.s2, sector.s3)):
        y = x.copy()
        y[:, axis] *= -1
        assert np.allclose(wf.cartesian(y), s * wf.cartesian(x), rtol=1e-12, atol=1e-15)


def test_wavefunction_energy_sources():
    qn = QuantumNumbers(0, 0, 0)
    assert Wavefunction(qn, MU, MieType(2.0)).energy == pytest.approx(model.energy_mie_quantized(0, MU.total, 2.0))
    assert Wavefunction(qn, MU, FreeParticle(), 0.8).energy == 0.8
    with pytest.raises(DomainError):
        Wavefunction(qn, MU, FreeParticle())
