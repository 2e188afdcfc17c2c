"""Independent numerical cross-checks.

* :func:`fd_radial_spectrum` discretizes -G'' + [s(s+1)/r^2 + 2V] G = 2E G with
  second-order central differences and Dirichlet ends, and finds the lowest
  eigenvalues of the symmetric tridiagonal matrix by Sturm-sequence bisection.
  Nothing from the closed-form spectra is used.
* :func:`gram_matrix` computes weighted inner products of the analytic
  eigenfunctions by Gauss-Legendre quadrature with an order-doubling check.
* :func:`series_reference` sums the explicit power series of the Jacobi,
  Laguerre and Bessel functions, a code path separate from the recurrences in
  :mod:`dunklsolve.specfun`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext

import numpy as np

from . import model
from .errors import DomainError, GridTooCoarseError, NonBindingError
from .model import DunklParams, FreeParticle, MieType, PseudoHarmonic, SectorLabels
from .solutions import AngularPhiSolution, AngularThetaSolution, RadialMie, RadialPseudo
from .specfun import converged, integrate, integrate_semi_infinite

__all__ = [
    "RadialGrid",
    "RadialOracleResult",
    "sturm_count",
    "tridiagonal_lowest",
    "default_grid",
    "fd_radial_spectrum",
    "GramResult",
    "gram_matrix",
    "series_reference",
]


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid with N interior nodes r_min + i h, i = 1..N, h = (r_max - r_min)/(N+1).

    G vanishes at both ends.  With the default r_min = 0 the first node sits
    one spacing off the origin.
    """

    r_max: float
    N: int
    r_min: float = 0.0

    def __post_init__(self):
        if self.r_min < 0 or not self.r_max > self.r_min:
            raise DomainError(f"need 0 <= r_min < r_max, got ({self.r_min}, {self.r_max})")
        if int(self.N) != self.N or self.N < 100:
            raise DomainError(f"grid needs at least 100 interior points, got {self.N}")

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.N + 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.r_min + self.h * np.arange(1, self.N + 1)

    def refined(self) -> "RadialGrid":
        """Grid with half the spacing (nodes of this grid are kept)."""
        return RadialGrid(self.r_max, 2 * self.N + 1, self.r_min)


@dataclass(frozen=True)
class RadialOracleResult:
    eigenvalues: np.ndarray
    grid: RadialGrid
    convergence_estimate: np.ndarray
    coarse: np.ndarray = field(repr=False)
    fine: np.ndarray = field(repr=False)
    n_bound: int = 0


_PIVMIN = np.finfo(float).tiny


def sturm_count(diag: np.ndarray, off: np.ndarray, shifts) -> np.ndarray:
    """Number of eigenvalues strictly below each shift (LDL^T inertia count)."""
    shifts = np.asarray(shifts, dtype=float)
    off2 = np.asarray(off, dtype=float) ** 2
    count = np.zeros(shifts.shape, dtype=np.int64)
    with np.errstate(divide="ignore", over="ignore"):
        q = diag[0] - shifts
        count += q < 0
        for i in range(1, len(diag)):
            # an exactly zero pivot is nudged below zero (0/0 would poison the count)
            q = np.where(q == 0.0, -_PIVMIN, q)
            q = (diag[i] - shifts) - off2[i - 1] / q
            count += q < 0
    return count


def tridiagonal_lowest(diag, off, k: int, rtol: float = 1e-14, sections: int = 15) -> np.ndarray:
    """Lowest ``k`` eigenvalues of a symmetric tridiagonal matrix by multisection.

    Each pass evaluates the Sturm count at ``sections`` interior points of every
    bracketing interval, shrinking all brackets by a factor sections+1 at the
    cost of one sweep over the matrix.
    """
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    n = len(diag)
    if not 1 <= k <= n:
        raise DomainError(f"cannot extract {k} eigenvalues from a {n}x{n} matrix")
    radius = np.zeros(n)
    radius[:-1] += np.abs(off)
    radius[1:] += np.abs(off)
    lo = np.full(k, float(np.min(diag - radius)))
    hi = np.full(k, float(np.max(diag + radius)))
    target = np.arange(k)
    frac = np.arange(1, sections + 1) / (sections + 1)
    for _ in range(200):
        width = hi - lo
        scale = np.maximum(np.abs(lo), np.abs(hi))
        if np.all(width <= rtol * np.maximum(scale, 1e-300) + 1e-300):
            break
        shifts = lo[:, None] + width[:, None] * frac[None, :]
        counts = sturm_count(diag, off, shifts.ravel()).reshape(shifts.shape)
        below = counts <= target[:, None]
        # new lo: largest shift still at or below the target index
        lo = np.where(below.any(axis=1), np.max(np.where(below, shifts, -np.inf), axis=1), lo)
        hi = np.where((~below).any(axis=1), np.min(np.where(~below, shifts, np.inf), axis=1), hi)
    return 0.5 * (lo + hi)


def _operator(potential, s: float, grid: RadialGrid):
    """Diagonal and off-diagonal of the discretized (1/2)(-d^2 + s(s+1)/r^2) + V."""
    r = grid.nodes
    h = grid.h
    diag = 1.0 / h**2 + 0.5 * s * (s + 1.0) / r**2 + potential(r)
    off = np.full(grid.N - 1, -0.5 / h**2)
    return diag, off


def _effective_index(s: float, B: float) -> float:
    # s_eff(s_eff + 1) = s(s+1) + 2B
    return math.sqrt((s + 0.5) ** 2 + 2.0 * B) - 0.5


def default_grid(potential, s: float, k: int = 4, N: int | None = None) -> RadialGrid:
    """Box sized from the classical extent of the k-th state of the potential."""
    if isinstance(potential, PseudoHarmonic):
        scale = (2.0 * potential.A) ** 0.25
        s_eff = _effective_index(s, potential.B)
        x_turn = math.sqrt(4 * k + 2 * s_eff + 3)
        return RadialGrid(max(12.0, x_turn + 9.0) / scale, N or 4000)
    if isinstance(potential, MieType):
        principal = k + _effective_index(s, potential.B)
        return RadialGrid(principal * (4.0 * principal + 60.0) / (2.0 * potential.A), N or 6000)
    if isinstance(potential, FreeParticle):
        return RadialGrid(50.0, N or 2000)
    raise DomainError(f"unsupported potential {potential!r}")


def fd_radial_spectrum(potential, s: float, grid: RadialGrid | None = None, K: int = 4,
                       tol: float | None = None, extrapolate: bool = True) -> RadialOracleResult:
    """Lowest ``K`` finite-difference eigenvalues E of the reduced radial equation.

    The problem is solved on ``grid`` and on the grid with half the spacing.
    ``convergence_estimate`` is |E_fine - E_coarse| / 3, the second-order
    error estimate of the fine-grid value.  With ``extrapolate`` the reported
    eigenvalues are the Richardson values (4 E_fine - E_coarse)/3, otherwise
    the fine-grid values.
    """
    if not 1 <= K <= 10:
        raise DomainError(f"K must be between 1 and 10, got {K}")
    if s < 0:
        raise DomainError(f"s must be non-negative, got {s}")
    grid = grid or default_grid(potential, s, K)
    fine_grid = grid.refined()
    coarse = tridiagonal_lowest(*_operator(potential, s, grid), K)
    fine = tridiagonal_lowest(*_operator(potential, s, fine_grid), K)
    estimate = np.abs(fine - coarse) / 3.0
    values = (4.0 * fine - coarse) / 3.0 if extrapolate else fine
    if isinstance(potential, MieType):
        n_bound = int(np.sum(values < potential.C))
        if n_bound < K:
            raise NonBindingError(f"only {n_bound} of {K} requested levels lie below C={potential.C}")
    elif isinstance(potential, FreeParticle):
        n_bound = int(np.sum(values < 0))
    else:
        n_bound = K
    if tol is not None and np.any(estimate > tol):
        raise GridTooCoarseError(
            f"grid-doubling estimate {estimate.max():.3g} exceeds tolerance {tol:g}; refine N={grid.N}"
        )
    return RadialOracleResult(values, grid, estimate, coarse, fine, n_bound)


# --- Gram matrices ----------------------------------------------------------


@dataclass(frozen=True)
class GramResult:
    matrix: np.ndarray
    order: int
    change: float

    @property
    def max_offdiag(self) -> float:
        m = self.matrix
        return float(np.max(np.abs(m - np.diag(np.diag(m))))) if len(m) > 1 else 0.0

    @property
    def max_diag_dev(self) -> float:
        return float(np.max(np.abs(np.diag(self.matrix) - 1.0)))

    @property
    def asymmetry(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.T)))


def _gram(funcs, weight, integrator, order, tol):
    n = len(funcs)

    def compute(q):
        out = np.empty((n, n))
        for i in range(n):
            for j in range(i, n):
                fi, fj = funcs[i], funcs[j]
                out[i, j] = out[j, i] = integrator(lambda t: fi(t) * fj(t) * weight(t), q)
        return out

    mat, used, change = converged(compute, order, tol)
    return GramResult(mat, used, change)


def _quadrants(count):
    def integrator(f, q):
        return sum(integrate(f, k * np.pi / 2, (k + 1) * np.pi / 2, q, cluster=4) for k in range(count))

    return integrator


def gram_matrix(family: str, indices, params: DunklParams, *, sector: SectorLabels | None = None,
                m=None, potential=None, s: float | None = None, order: int | None = None,
                tol: float = 1e-9, variable: str = "r") -> GramResult:
    """Weighted inner products of an eigenfunction family.

    ``family="phi"``: indices are m values (with ``sector``) or (m, sector) pairs.
    ``family="theta"``: indices are l values, with ``m`` and ``sector`` (s3 used).
    ``family="radial"``: indices are n values for a bound ``potential`` at index ``s``;
    ``variable="r"`` uses physical-r normalization and weight r^(2a),
    ``variable="x"`` the x-normalized functions against x^(2a) on the shared x axis.
    """
    indices = list(indices)
    if not indices:
        return GramResult(np.zeros((0, 0)), 0, 0.0)
    if family == "phi":
        sols = []
        for idx in indices:
            mm, sec = idx if isinstance(idx, tuple) else (idx, sector)
            if sec is None:
                raise DomainError("phi family needs a sector")
            sols.append(AngularPhiSolution(mm, sec, params))
        degree = max(int(2 * model.half_integer(mm)) + 2 for mm, *_ in
                     [(i if isinstance(i, tuple) else (i,)) for i in indices])
        weight = lambda t: AngularPhiSolution.weight(params, t)
        return _gram(sols, weight, _quadrants(4), order or max(2 * degree + 20, 64), tol)
    if family == "theta":
        if sector is None or m is None:
            raise DomainError("theta family needs m and sector")
        sols = [AngularThetaSolution(l, sector.s3, m, params) for l in indices]
        degree = int(2 * max(model.half_integer(l) for l in indices) + 2 * model.half_integer(m)) + 2
        weight = lambda t: AngularThetaSolution.weight(params, t)
        return _gram(sols, weight, _quadrants(2), order or max(2 * degree + 20, 64), tol)
    if family == "radial":
        if s is None or potential is None:
            raise DomainError("radial family needs potential and s")
        if variable not in ("r", "x"):
            raise DomainError(f"variable must be 'r' or 'x', got {variable!r}")
        if isinstance(potential, PseudoHarmonic):
            sols = [RadialPseudo(n, s, params, potential.A, potential.B, potential.C, "r") for n in indices]
            spread = math.sqrt(2 * max(indices) + sols[0].alpha + 1.0)
        elif isinstance(potential, MieType):
            sols = [RadialMie(n, s, params, potential.A, potential.B, potential.C, None, "r") for n in indices]
            spread = 2.0 * model.mie_principal(max(indices), s, potential.B)
        else:
            raise DomainError("radial Gram matrices need a bound-state potential")
        a2 = 2.0 * params.a
        if variable == "x":
            funcs = [sol.in_x for sol in sols]
            scale = spread
        else:
            funcs = sols
            scale = spread / min(sol.kappa for sol in sols)
        degree = 2 * max(indices) + 2

        def integrator(f, q):
            return integrate_semi_infinite(f, q, scale=scale, cluster=3)

        return _gram(funcs, lambda t: t**a2, integrator, order or max(2 * degree + 20, 128), tol)
    raise DomainError(f"unknown family {family!r}")


# --- explicit series --------------------------------------------------------


_SERIES_DIGITS = 50


def _dec(x) -> Decimal:
    return Decimal(float(x))  # exact binary value of the float


def _pow(b: Decimal, e: int) -> Decimal:
    return Decimal(1) if e == 0 else b**e  # Decimal rejects 0**0


def _binom(a: Decimal, j: int) -> Decimal:
    """C(a, j) = a (a-1) ... (a-j+1) / j! for real a."""
    out = Decimal(1)
    for i in range(j):
        out = out * (a - i) / (i + 1)
    return out


SERIES_ENVELOPE = {
    "jacobi": "n <= 20, -1 < alpha, beta <= 5, -1 <= x <= 1",
    "laguerre": "n <= 20, -1 < alpha <= 10, 0 <= x <= 10",
    "bessel": "0 <= order <= 30, 0 <= x <= 8",
}


def series_reference(kind: str, *args) -> float:
    """Explicit finite or power-series value.

    ``jacobi``: (n, alpha, beta, x) via sum_k C(n+a, n-k) C(n+b, k) ((x-1)/2)^k ((x+1)/2)^(n-k).
    ``laguerre``: (n, alpha, x) via sum_k (-1)^k C(n+alpha, n-k) x^k / k!.
    ``bessel``: (order, x) via sum_{k<60} (-1)^k (x/2)^(2k+order) / (k! Gamma(k+order+1)).
    Sums run in 50-digit decimal arithmetic, so the cancellation between
    alternating terms costs nothing at double precision.
    Raises :class:`DomainError` outside ``SERIES_ENVELOPE``.
    """
    with localcontext() as ctx:
        ctx.prec = _SERIES_DIGITS
        if kind == "jacobi":
            n, a, b, x = args
            if not (0 <= n <= 20 and -1 < a <= 5 and -1 < b <= 5 and -1 <= x <= 1):
                raise DomainError(f"jacobi series outside envelope: {SERIES_ENVELOPE['jacobi']}")
            x, a, b = _dec(x), _dec(a), _dec(b)
            lo, hi = (x - 1) / 2, (x + 1) / 2
            total = sum(_binom(n + a, n - k) * _binom(n + b, k) * _pow(lo, k) * _pow(hi, n - k) for k in range(n + 1))
            return float(total)
        if kind == "laguerre":
            n, a, x = args
            if not (0 <= n <= 20 and -1 < a <= 10 and 0 <= x <= 10):
                raise DomainError(f"laguerre series outside envelope: {SERIES_ENVELOPE['laguerre']}")
            x, a = _dec(x), _dec(a)
            total = sum((-1) ** k * _binom(n + a, n - k) * _pow(x, k) / math.factorial(k) for k in range(n + 1))
            return float(total)
        if kind == "bessel":
            nu, x = args
            if not (0 <= nu <= 30 and 0 <= x <= 8):
                raise DomainError(f"bessel series outside envelope: {SERIES_ENVELOPE['bessel']}")
            if x == 0:
                return 1.0 if nu == 0 else 0.0
            # (x/2)^nu / Gamma(nu+1) times sum_k (-x^2/4)^k / (k! (nu+1)_k)
            lead = math.exp(nu * math.log(x / 2) - math.lgamma(nu + 1.0))
            q = -_dec(x) ** 2 / 4
            term = total = Decimal(1)
            for k in range(1, 60):
                term = term * q / (k * (_dec(nu) + k))
                total += term
            return lead * float(total)
    raise DomainError(f"unknown series kind {kind!r}")
