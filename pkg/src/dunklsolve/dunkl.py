"""Dunkl differential-difference operators applied to evaluable fields.

A field is any callable ``f(x)`` taking points of shape (..., 3) and returning
values of shape (...).  Smooth derivatives use central finite differences;
the reflection parts ``(1 - R_i)`` are always evaluated exactly by calling the
field at the mirrored point.

The separated operators B_phi, N_theta and M_r act on one-variable functions.
When the function exposes ``derivatives(t) -> (f, f', f'')`` those analytic
derivatives are used, otherwise finite differences.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularPointError
from .model import DunklParams

__all__ = [
    "StencilConfig",
    "reflect",
    "partial",
    "dunkl_derivative",
    "apply_dunkl_derivative",
    "dunkl_laplacian",
    "apply_dunkl_laplacian",
    "apply_b_phi",
    "apply_n_theta",
    "apply_m_r",
    "hamiltonian_residual",
    "angular_momentum",
    "angular_momentum_commutator_residual",
]

# central-difference offsets and weights (in units of h) for first and second derivatives
_D1 = {
    2: ((-1, 1), (-0.5, 0.5)),
    4: ((-2, -1, 1, 2), (1 / 12, -2 / 3, 2 / 3, -1 / 12)),
    6: ((-3, -2, -1, 1, 2, 3), (-1 / 60, 3 / 20, -3 / 4, 3 / 4, -3 / 20, 1 / 60)),
}
_D2 = {
    2: ((-1, 0, 1), (1.0, -2.0, 1.0)),
    4: ((-2, -1, 0, 1, 2), (-1 / 12, 4 / 3, -5 / 2, 4 / 3, -1 / 12)),
    6: ((-3, -2, -1, 0, 1, 2, 3), (1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90)),
}


@dataclass(frozen=True)
class StencilConfig:
    """Finite-difference step ``h``, accuracy ``order`` and exclusion radius ``eps``."""

    h: float = 1e-3
    order: int = 4
    eps: float | None = None

    def __post_init__(self):
        if not self.h > 0:
            raise DomainError(f"stencil step must be positive, got {self.h}")
        if self.order not in _D1:
            raise DomainError(f"stencil order must be one of 2, 4, 6, got {self.order}")
        if self.eps is None:
            object.__setattr__(self, "eps", 10.0 * self.h)
        if not self.eps > self.h:
            raise DomainError(f"exclusion radius eps={self.eps} must exceed h={self.h}")


DEFAULT_STENCIL = StencilConfig()


def reflect(x, axis: int):
    """Mirror points in the plane x_axis = 0 (axis is 1-based)."""
    y = np.array(x, dtype=float, copy=True)
    y[..., axis - 1] *= -1.0
    return y


def _check_axis(axis):
    if axis not in (1, 2, 3):
        raise DomainError(f"axis must be 1, 2 or 3, got {axis!r}")


def _check_off_plane(x, axis, eps):
    if np.any(np.abs(x[..., axis - 1]) <= eps):
        raise SingularPointError(f"point within eps={eps} of the plane x{axis}=0")


def partial(f, axis: int, cfg: StencilConfig = DEFAULT_STENCIL, second: bool = False):
    """Finite-difference partial derivative of a field, returned as a new field."""
    _check_axis(axis)
    offsets, weights = (_D2 if second else _D1)[cfg.order]
    scale = cfg.h**2 if second else cfg.h

    def df(x):
        x = np.asarray(x, dtype=float)
        total = 0.0
        for o, w in zip(offsets, weights):
            y = x.copy()
            y[..., axis - 1] += o * cfg.h
            total = total + w * f(y)
        return total / scale

    return df


def dunkl_derivative(f, axis: int, params: DunklParams, cfg: StencilConfig = DEFAULT_STENCIL):
    """D_i f = d_i f + (mu_i / x_i) (f - R_i f), returned as a field."""
    _check_axis(axis)
    mu = params.as_tuple()[axis - 1]
    df = partial(f, axis, cfg)

    def Df(x):
        x = np.asarray(x, dtype=float)
        _check_off_plane(x, axis, cfg.eps)
        out = df(x)
        if mu:
            out = out + mu / x[..., axis - 1] * (f(x) - f(reflect(x, axis)))
        return out

    return Df


def apply_dunkl_derivative(f, axis: int, params: DunklParams, point, cfg: StencilConfig = DEFAULT_STENCIL):
    return dunkl_derivative(f, axis, params, cfg)(point)


def dunkl_laplacian(f, params: DunklParams, cfg: StencilConfig = DEFAULT_STENCIL, form: str = "expanded"):
    """Dunkl Laplacian sum_i D_i^2 f as a field.

    ``form="nested"`` composes :func:`dunkl_derivative` twice per axis;
    ``form="expanded"`` uses d_i^2 + (2 mu_i / x_i) d_i - (mu_i / x_i^2)(1 - R_i).
    """
    if form == "nested":
        parts = [dunkl_derivative(dunkl_derivative(f, i, params, cfg), i, params, cfg) for i in (1, 2, 3)]

        def lap(x):
            return sum(p(x) for p in parts)

        return lap
    if form != "expanded":
        raise DomainError(f"unknown Laplacian form {form!r}")
    mus = params.as_tuple()
    d1 = [partial(f, i, cfg) for i in (1, 2, 3)]
    d2 = [partial(f, i, cfg, second=True) for i in (1, 2, 3)]

    def lap(x):
        x = np.asarray(x, dtype=float)
        fx = f(x)
        total = 0.0
        for i in (1, 2, 3):
            _check_off_plane(x, i, cfg.eps)
            xi = x[..., i - 1]
            mu = mus[i - 1]
            total = total + d2[i - 1](x)
            if mu:
                total = total + 2 * mu / xi * d1[i - 1](x) - mu / xi**2 * (fx - f(reflect(x, i)))
        return total

    return lap


def apply_dunkl_laplacian(f, params: DunklParams, point, cfg: StencilConfig = DEFAULT_STENCIL, form="expanded"):
    return dunkl_laplacian(f, params, cfg, form)(point)


def _derivs_1d(g, t, cfg: StencilConfig):
    if hasattr(g, "derivatives"):
        return g.derivatives(t)
    t = np.asarray(t, dtype=float)
    o1, w1 = _D1[cfg.order]
    o2, w2 = _D2[cfg.order]
    d1 = sum(w * g(t + o * cfg.h) for o, w in zip(o1, w1)) / cfg.h
    d2 = sum(w * g(t + o * cfg.h) for o, w in zip(o2, w2)) / cfg.h**2
    return g(t), d1, d2


def _distance_to_multiple(t, period):
    t = np.asarray(t, dtype=float)
    return np.abs(t - period * np.round(t / period))


def apply_b_phi(g, params: DunklParams, phi, cfg: StencilConfig = DEFAULT_STENCIL):
    """B_phi g = -g''/2 + (mu1 tan - mu2 cot) g' + mu1/(2cos^2)(1-R1) g + mu2/(2sin^2)(1-R2) g."""
    phi = np.asarray(phi, dtype=float)
    if np.any(_distance_to_multiple(phi, np.pi / 2) <= cfg.eps):
        raise SingularPointError("phi within eps of a multiple of pi/2")
    f, f1, f2 = _derivs_1d(g, phi, cfg)
    c, s = np.cos(phi), np.sin(phi)
    out = -0.5 * f2 + (params.mu1 * s / c - params.mu2 * c / s) * f1
    if params.mu1:
        out = out + params.mu1 / (2 * c * c) * (f - g(np.pi - phi))
    if params.mu2:
        out = out + params.mu2 / (2 * s * s) * (f - g(-phi))
    return out


def apply_n_theta(g, params: DunklParams, theta, k2: float, cfg: StencilConfig = DEFAULT_STENCIL):
    """N_theta g + k^2/(2 sin^2 theta) g, the full polar operator at fixed k^2."""
    theta = np.asarray(theta, dtype=float)
    if np.any(_distance_to_multiple(theta, np.pi / 2) <= cfg.eps):
        raise SingularPointError("theta within eps of 0, pi/2 or pi")
    f, f1, f2 = _derivs_1d(g, theta, cfg)
    c, s = np.cos(theta), np.sin(theta)
    out = -0.5 * f2 + (params.mu3 * s / c - (0.5 + params.mu1 + params.mu2) * c / s) * f1
    if params.mu3:
        out = out + params.mu3 / (2 * c * c) * (f - g(np.pi - theta))
    return out + k2 / (2 * s * s) * f


def apply_m_r(g, params: DunklParams, V, r, cfg: StencilConfig = DEFAULT_STENCIL):
    """M_r g = -g''/2 - (a/r) g' + V(r) g."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= cfg.eps):
        raise SingularPointError(f"r within eps={cfg.eps} of the origin")
    f, f1, f2 = _derivs_1d(g, r, cfg)
    return -0.5 * f2 - params.a / r * f1 + V(r) * f


def hamiltonian_residual(psi, energy: float, params: DunklParams, V, point, cfg: StencilConfig = DEFAULT_STENCIL,
                         floor: float = 1e-12):
    """|(-1/2 Dunkl-Laplacian + V) psi - E psi| / max(|psi|, floor) at Cartesian points."""
    x = np.asarray(point, dtype=float)
    r = np.sqrt(np.sum(x * x, axis=-1))
    lap = dunkl_laplacian(psi, params, cfg)(x)
    val = psi(x)
    res = -0.5 * lap + V(r) * val - energy * val
    return np.abs(res) / np.maximum(np.abs(val), floor)


_CYCLIC = {1: (2, 3), 2: (3, 1), 3: (1, 2)}


def angular_momentum(f, j: int, params: DunklParams, cfg: StencilConfig = DEFAULT_STENCIL):
    """L_j f = (x_k D_l - x_l D_k) f with (j, k, l) cyclic; the Dunkl rotation generator is J_j = -i L_j."""
    _check_axis(j)
    k, l = _CYCLIC[j]
    Dl = dunkl_derivative(f, l, params, cfg)
    Dk = dunkl_derivative(f, k, params, cfg)

    def Lf(x):
        x = np.asarray(x, dtype=float)
        return x[..., k - 1] * Dl(x) - x[..., l - 1] * Dk(x)

    return Lf


def angular_momentum_commutator_residual(f, params: DunklParams, pair, point, cfg: StencilConfig = DEFAULT_STENCIL):
    """Residual of [J_j, J_k] = i eps_jkl J_l (1 + 2 mu_l R_l) applied to a real field.

    With J = -iL both sides are real: -[L_j, L_k] f = eps_jkl L_l (1 + 2 mu_l R_l) f.
    """
    j, k = pair
    _check_axis(j)
    _check_axis(k)
    if j == k:
        raise DomainError("commutator pair needs two distinct axes")
    l = 6 - j - k
    sign = 1.0 if _CYCLIC[j] == (k, l) else -1.0
    mu = params.as_tuple()[l - 1]
    x = np.asarray(point, dtype=float)
    lhs = -(angular_momentum(angular_momentum(f, k, params, cfg), j, params, cfg)(x)
            - angular_momentum(angular_momentum(f, j, params, cfg), k, params, cfg)(x))

    def g(y):
        return f(y) + 2.0 * mu * f(reflect(y, l))

    rhs = sign * angular_momentum(g, l, params, cfg)(x)
    return np.abs(lhs - rhs)
