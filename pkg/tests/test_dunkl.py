from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunklsolve.dunkl import (
    StencilConfig,
    angular_momentum,
    angular_momentum_commutator_residual,
    apply_b_phi,
    apply_dunkl_derivative,
    apply_dunkl_laplacian,
    apply_m_r,
    apply_n_theta,
    hamiltonian_residual,
    reflect,
)
from dunklsolve.errors import DomainError, SingularPointError
from dunklsolve.model import DunklParams, MieType, PseudoHarmonic, QuantumNumbers, SectorLabels
from dunklsolve.solutions import AngularPhiSolution, AngularThetaSolution, RadialPseudo, Wavefunction

P = DunklParams(0.3, 0.5, 0.25)
PT = np.array([[0.7, -0.4, 1.1], [-1.3, 0.6, -0.5]])


def test_reflect():
    assert np.array_equal(reflect(PT, 2), np.array([[0.7, 0.4, 1.1], [-1.3, -0.6, -0.5]]))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("axis", [1, 2, 3])
def test_dunkl_derivative_of_monomials(k, axis):
    # D_i x_i^k = (k + mu_i (1 - (-1)^k)) x_i^(k-1)
    mu = P.as_tuple()[axis - 1]
    f = lambda x: x[..., axis - 1] ** k * (1 + x[..., axis % 3] ** 2)
    other = 1 + PT[:, axis % 3] ** 2
    expected = (k + mu * (1 - (-1) ** k)) * PT[:, axis - 1] ** (k - 1) * other
    got = apply_dunkl_derivative(f, axis, P, PT)
    assert np.allclose(got, expected, rtol=1e-9)


def test_dunkl_laplacian_of_r_squared():
    # Delta_mu |x|^2 = 2 (3 + 2 (mu1 + mu2 + mu3))
    f = lambda x: np.sum(x * x, axis=-1)
    for form in ("expanded", "nested"):
        got = apply_dunkl_laplacian(f, P, PT, form=form)
        assert np.allclose(got, 6 + 4 * P.total, rtol=1e-7)


def test_laplacian_forms_agree_on_nonsymmetric_field():
    f = lambda x: np.exp(-0.3 * np.sum(x * x, -1)) * (1 + x[..., 0] + x[..., 1] * x[..., 2] ** 2 + x[..., 2] ** 3)
    a = apply_dunkl_laplacian(f, P, PT)
    b = apply_dunkl_laplacian(f, P, PT, form="nested")
    assert np.allclose(a, b, rtol=1e-6, atol=1e-7)


def test_stencil_orders_converge():
    f = lambda x: np.sin(x[..., 0]) * np.cos(0.5 * x[..., 1]) * np.exp(0.2 * x[..., 2])
    exact = -(1 + 0.25 - 0.04) * f(PT)
    errs = []
    for order in (2, 4, 6):
        cfg = StencilConfig(h=1e-2, order=order)
        errs.append(np.max(np.abs(apply_dunkl_laplacian(f, DunklParams(0, 0, 0), PT, cfg) - exact)))
    assert errs[0] > errs[1] > errs[2]


def test_stencil_validation():
    with pytest.raises(DomainError):
        StencilConfig(order=3)
    with pytest.raises(DomainError):
        StencilConfig(h=0)
    with pytest.raises(DomainError):
        StencilConfig(h=1e-2, eps=1e-3)
    assert StencilConfig(h=1e-3).eps == pytest.approx(1e-2)


def test_singular_points_rejected():
    f = lambda x: np.sum(x, -1)
    with pytest.raises(SingularPointError):
        apply_dunkl_derivative(f, 2, P, np.array([0.5, 0.005, 1.0]))
    with pytest.raises(SingularPointError):
        apply_dunkl_laplacian(f, P, np.array([0.5, 0.5, 0.0]))
    with pytest.raises(SingularPointError):
        apply_b_phi(np.cos, P, np.array([np.pi / 2]))
    with pytest.raises(SingularPointError):
        apply_n_theta(np.cos, P, np.array([0.001]), 0.0)
    with pytest.raises(SingularPointError):
        apply_m_r(np.exp, P, lambda r: 0 * r, np.array([0.0]))
    with pytest.raises(DomainError):
        apply_dunkl_derivative(f, 4, P, PT)


@given(st.sampled_from([(1, 1), (1, -1), (-1, 1), (-1, -1)]), st.integers(0, 3))
def test_b_phi_eigen_with_finite_differences(signs, j):
    # plain callable: the operator falls back to finite differences
    sector = SectorLabels(signs[0], signs[1], 1)
    sol = AngularPhiSolution(Fraction(sector.e1 + sector.e2, 2) + j, sector, P)
    phi = np.array([0.4, 1.9, 2.6, 4.0, 5.3])
    fd = apply_b_phi(lambda t: sol(t), P, phi, StencilConfig(h=1e-3, order=6))
    assert np.allclose(fd, sol.eigenvalue * sol(phi), rtol=1e-6, atol=1e-7)


def test_n_theta_eigen():
    for l, m, s3 in ((0, 0, 1), (1, Fraction(1, 2), 1), (Fraction(3, 2), 1, -1)):
        sol = AngularThetaSolution(l, s3, m, P)
        th = np.array([0.3, 1.0, 1.3, 2.0, 2.8])
        assert np.allclose(apply_n_theta(sol, P, th, sol.k2), sol.eigenvalue * sol(th), rtol=1e-11, atol=1e-12)


def test_m_r_radial_equation():
    # M_r R + q^2/(2 r^2) R = E R
    s = 2.05
    sol = RadialPseudo(1, s, P, 0.5, 0.4, 0.1, "r")
    r = np.array([0.4, 1.0, 2.2])
    q2 = s * (s + 1) - P.a * (P.a - 1)
    V = PseudoHarmonic(0.5, 0.4, 0.1)
    lhs = apply_m_r(sol, P, V, r) + q2 / (2 * r**2) * sol(r)
    assert np.allclose(lhs, sol.energy * sol(r), rtol=1e-10)


@pytest.mark.parametrize("pot", [PseudoHarmonic(0.5, 0.3), MieType(1.0, 0.2)], ids=["pseudo", "mie"])
def test_hamiltonian_residual_and_control(pot):
    qn = QuantumNumbers(Fraction(1, 2), Fraction(1, 2), 1, SectorLabels(-1, 1, -1))
    wf = Wavefunction(qn, P, pot)
    pts = np.array([[0.6, 0.7, -0.5], [-0.9, 0.4, 0.8], [0.3, -1.2, 0.6]])
    assert hamiltonian_residual(wf.cartesian, wf.energy, P, pot, pts).max() < 1e-6
    assert hamiltonian_residual(wf.cartesian, wf.energy + 0.1, P, pot, pts).min() > 0.05


def test_angular_momentum_undeformed_is_rotation_generator():
    # L_3 = x1 d2 - x2 d1 annihilates radial functions and maps x1 -> -x2
    p0 = DunklParams(0, 0, 0)
    radial = lambda x: np.exp(-np.sum(x * x, -1))
    assert np.allclose(angular_momentum(radial, 3, p0)(PT), 0, atol=1e-9)
    assert np.allclose(angular_momentum(lambda x: x[..., 0], 3, p0)(PT), -PT[:, 1], atol=1e-9)


@pytest.mark.parametrize("mu", [(0, 0, 0), (0.4, 0.4, 0.4), (0.1, 0.7, 1.3)])
@pytest.mark.parametrize("pair", [(1, 2), (2, 3), (3, 1), (2, 1)])
def test_commutator_identity(mu, pair):
    p = DunklParams(*mu)
    f = lambda x: np.exp(-0.5 * np.sum(x * x, -1)) * (1 + x[..., 0] + x[..., 1] * x[..., 2] ** 2)
    assert angular_momentum_commutator_residual(f, p, pair, PT).max() < 1e-6


def test_commutator_needs_reflection_term():
    # dropping the 2 mu_l R_l term breaks the identity when mu != 0
    p = DunklParams(0.4, 0.4, 0.4)
    f = lambda x: np.exp(-0.5 * np.sum(x * x, -1)) * (1 + x[..., 0] + x[..., 1] * x[..., 2] ** 2)
    lhs = -(angular_momentum(angular_momentum(f, 2, p), 1, p)(PT) - angular_momentum(angular_momentum(f, 1, p), 2, p)(PT))
    naive = angular_momentum(f, 3, p)(PT)
    assert np.max(np.abs(lhs - naive)) > 1e-2
    with pytest.raises(DomainError):
        angular_momentum_commutator_residual(f, p, (1, 1), PT)
