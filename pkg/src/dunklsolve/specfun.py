"""Special functions and quadrature.

Jacobi and generalized Laguerre polynomials are evaluated by their three-term
recurrences (vectorized over ``x``).  Bessel functions of the first kind of
arbitrary real order use the ascending series for small arguments and Miller's
backward recurrence otherwise, normalized with the Neumann-type sum

    (x/2)**nu = sum_k (nu + 2k) Gamma(nu + k) / k!  J_{nu+2k}(x).

Gauss-Legendre rules come from Newton iteration on the Legendre recurrence.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, QuadratureError

__all__ = [
    "gamma_fn",
    "lgamma_fn",
    "jacobi",
    "jacobi_derivative",
    "laguerre",
    "laguerre_derivative",
    "bessel_j",
    "bessel_j_derivatives",
    "QuadratureRule",
    "gauss_legendre",
    "integrate",
    "integrate_semi_infinite",
]


def gamma_fn(x: float) -> float:
    """Gamma function; raises :class:`DomainError` at the poles 0, -1, -2, ..."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise DomainError(f"Gamma has a pole at {x}")
    return math.gamma(x)


def lgamma_fn(x: float) -> float:
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise DomainError(f"Gamma has a pole at {x}")
    return math.lgamma(x)


def _check_degree(n):
    if int(n) != n or n < 0:
        raise DomainError(f"polynomial degree must be a non-negative integer, got {n!r}")
    return int(n)


def jacobi(n: int, alpha: float, beta: float, x):
    """Jacobi polynomial P_n^(alpha, beta)(x)."""
    n = _check_degree(n)
    if alpha <= -1 or beta <= -1:
        raise DomainError(f"Jacobi parameters must exceed -1, got ({alpha}, {beta})")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    ab = alpha + beta
    p = (alpha + 1) + (ab + 2) * (x - 1) / 2
    for k in range(2, n + 1):
        c = 2 * k + ab
        a1 = 2 * k * (k + ab) * (c - 2)
        a2 = (c - 1) * (alpha * alpha - beta * beta)
        a3 = (c - 1) * c * (c - 2)
        a4 = 2 * (k + alpha - 1) * (k + beta - 1) * c
        p_prev, p = p, ((a2 + a3 * x) * p - a4 * p_prev) / a1
    return p if p.ndim else float(p)


def jacobi_derivative(n: int, alpha: float, beta: float, x, order: int = 1):
    """``order``-th derivative of P_n^(alpha, beta) at x.

    Uses d^k/dx^k P_n^(a,b) = Gamma(n+a+b+1+k) / (2^k Gamma(n+a+b+1)) P_{n-k}^(a+k, b+k).
    """
    n = _check_degree(n)
    if order > n:
        return np.zeros_like(np.asarray(x, dtype=float)) + 0.0
    c = 1.0
    for j in range(order):
        c *= (n + alpha + beta + 1 + j) / 2.0
    return c * jacobi(n - order, alpha + order, beta + order, x)


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x)."""
    n = _check_degree(n)
    if alpha <= -1:
        raise DomainError(f"Laguerre parameter must exceed -1, got {alpha}")
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev if l_prev.ndim else float(l_prev)
    l = 1 + alpha - x
    for k in range(1, n):
        l_prev, l = l, ((2 * k + 1 + alpha - x) * l - (k + alpha) * l_prev) / (k + 1)
    return l if l.ndim else float(l)


def laguerre_derivative(n: int, alpha: float, x, order: int = 1):
    """d^k/dx^k L_n^(alpha)(x) = (-1)^k L_{n-k}^(alpha+k)(x)."""
    n = _check_degree(n)
    if order > n:
        return np.zeros_like(np.asarray(x, dtype=float)) + 0.0
    return (-1) ** order * laguerre(n - order, alpha + order, x)


# --- Bessel functions -------------------------------------------------------

BESSEL_X_WARN = 100.0


def _bessel_series(nu: float, x: float) -> float:
    half = 0.5 * x
    term = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0))
    total = term
    q = -half * half
    k = 0
    while True:
        k += 1
        term *= q / (k * (nu + k))
        total += term
        if abs(term) <= 1e-17 * abs(total) and k > 2:
            return total
        if k > 500:
            return total


def _bessel_miller(nu: float, x: float) -> float:
    n_int = int(math.floor(nu))
    nu0 = nu - n_int
    top = n_int + int(1.5 * x + 40)
    if top % 2:
        top += 1
    f_next, f = 0.0, 1e-30
    norm = 0.0
    want = None
    for j in range(top, -1, -1):
        # f holds the unnormalized J_{nu0+j}
        if j % 2 == 0:
            k = j // 2
            if k == 0:
                c = math.gamma(nu0 + 1.0)
            else:
                c = (nu0 + 2 * k) * math.exp(math.lgamma(nu0 + k) - math.lgamma(k + 1.0))
            norm += c * f
        if j == n_int:
            want = f
        if j > 0:
            f_next, f = f, 2.0 * (nu0 + j) / x * f - f_next
            if abs(f) > 1e250:
                f_next *= 1e-250
                f *= 1e-250
                norm *= 1e-250
                if want is not None:
                    want *= 1e-250
    return want * math.exp(nu0 * math.log(0.5 * x)) / norm


def _bessel_scalar(nu: float, x: float) -> float:
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    if x <= 4.0 or x * x <= 2.0 * (nu + 1.0):
        return _bessel_series(nu, x)
    return _bessel_miller(nu, x)


def bessel_j(order: float, x):
    """Bessel function of the first kind J_order(x), real order >= 0, x >= 0."""
    if order < 0:
        raise DomainError(f"Bessel order must be non-negative, got {order}")
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0):
        raise DomainError("Bessel argument must be non-negative")
    if np.any(xs > BESSEL_X_WARN):
        warnings.warn(f"bessel_j precision not guaranteed for x > {BESSEL_X_WARN}", RuntimeWarning, stacklevel=2)
    out = np.array([_bessel_scalar(float(order), float(v)) for v in xs.ravel()]).reshape(xs.shape)
    return out if out.ndim else float(out)


def bessel_j_derivatives(order: float, x):
    """Return (J, J', J'') at x > 0 using J' = (nu/x) J - J_{nu+1} and Bessel's equation."""
    x = np.asarray(x, dtype=float)
    j = bessel_j(order, x)
    j1 = bessel_j(order + 1.0, x)
    d1 = order / x * j - j1
    d2 = -d1 / x - (1.0 - order * order / (x * x)) * j
    return j, d1, d2


# --- quadrature -------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def __call__(self, f, a: float = -1.0, b: float = 1.0) -> float:
        half = 0.5 * (b - a)
        return half * float(np.dot(self.weights, f(a + half * (self.nodes + 1.0))))


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> QuadratureRule:
    """Gauss-Legendre rule on [-1, 1], exact through degree 2*order - 1.

    Rules are cached; the returned arrays are read-only.
    """
    n = int(order)
    if n < 1:
        raise DomainError(f"quadrature order must be >= 1, got {order}")
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        if n == 1:
            p0, p1 = np.ones_like(x), x
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    nodes = x[::-1].copy()
    weights = w[::-1].copy()
    # enforce exact symmetry
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(nodes, weights, n)


def _cluster(v, p):
    """Map [0,1] -> [0,1] with p-th order contact at both ends, and its Jacobian."""
    a = v**p
    b = (1.0 - v) ** p
    s = a + b
    u = a / s
    du = p * (v ** (p - 1) * b + (1.0 - v) ** (p - 1) * a) / (s * s)
    return u, du


def _rule_on_unit(order, cluster):
    rule = gauss_legendre(order)
    v = 0.5 * (rule.nodes + 1.0)
    w = 0.5 * rule.weights
    if cluster:
        v, dv = _cluster(v, cluster)
        w = w * dv
    return v, w


def integrate(f, a: float, b: float, order: int = 200, cluster: int = 0) -> float:
    """Integrate ``f`` (vectorized) over [a, b].

    ``cluster`` > 1 applies an endpoint-clustering substitution so that
    algebraic endpoint singularities such as |x - a|**0.6 still converge fast.
    """
    v, w = _rule_on_unit(order, cluster)
    x = a + (b - a) * v
    if cluster:
        # clustered nodes can round onto the endpoints; their weights are negligible
        keep = (x > a) & (x < b)
        x, w = x[keep], w[keep]
    return (b - a) * float(np.dot(w, f(x)))


def integrate_semi_infinite(f, order: int = 200, scale: float = 1.0, cluster: int = 3) -> float:
    """Integrate ``f`` over (0, inf) through x = scale * t / (1 - t)."""
    v, w = _rule_on_unit(order, cluster)
    keep = v < 1.0
    v, w = v[keep], w[keep]
    x = scale * v / (1.0 - v)
    jac = scale / (1.0 - v) ** 2
    return float(np.dot(w * jac, f(x)))


def converged(compute, order: int, tol: float, max_doublings: int = 4):
    """Evaluate ``compute(order)`` and ``compute(2*order)`` until they agree to ``tol``.

    ``compute`` may return a scalar or array.  Returns (value, order_used, change).
    """
    prev = np.asarray(compute(order))
    for _ in range(max_doublings):
        order *= 2
        cur = np.asarray(compute(order))
        change = float(np.max(np.abs(cur - prev))) if cur.size else 0.0
        if change <= tol:
            return cur, order, change
        prev = cur
    raise QuadratureError(f"quadrature did not converge to {tol:g} (last change {change:.3g} at order {order})")
