"""Parameters, quantum-number bookkeeping and closed-form spectra.

Everything here is a pure function of its arguments.  Units are hbar = m = 1,
so the Hamiltonian is ``-1/2 D^2 + V(r)`` with ``D`` the Dunkl gradient.

Half-integer quantum numbers are stored as :class:`fractions.Fraction` so that
parity rules are checked exactly; formulas convert to float at the last step.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from .errors import DomainError

__all__ = [
    "DunklParams",
    "SectorLabels",
    "QuantumNumbers",
    "FreeParticle",
    "PseudoHarmonic",
    "MieType",
    "PotentialSpec",
    "ALL_SECTORS",
    "half_integer",
    "allowed_values",
    "validate_m",
    "validate_quantum_numbers",
    "k_squared",
    "q_squared",
    "s_value",
    "alpha_pseudo",
    "beta_nu_mie",
    "energy_pseudo",
    "energy_mie",
    "energy_mie_quantized",
    "mie_principal",
    "centrifugal_identities",
    "enumerate_states",
]

MU_WARN = 10.0


@dataclass(frozen=True)
class DunklParams:
    """Deformation parameters mu1, mu2, mu3 of the Dunkl derivatives.

    Zero is accepted and recovers the ordinary Schroedinger problem.
    """

    mu1: float
    mu2: float
    mu3: float

    def __post_init__(self):
        for name in ("mu1", "mu2", "mu3"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0:
                raise DomainError(f"{name} must be a finite non-negative real, got {v!r}")
            if v > MU_WARN:
                warnings.warn(
                    f"{name}={v} > {MU_WARN}: normalization and quadrature accuracy degrade",
                    RuntimeWarning,
                    stacklevel=3,
                )
            object.__setattr__(self, name, v)

    @classmethod
    def from_sequence(cls, mus) -> "DunklParams":
        mus = tuple(mus)
        if len(mus) != 3:
            raise DomainError(f"expected three mu values, got {len(mus)}")
        return cls(*mus)

    @property
    def total(self) -> float:
        return self.mu1 + self.mu2 + self.mu3

    @property
    def a(self) -> float:
        """Exponent of the radial substitution G = r**a R."""
        return 1.0 + self.total

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.mu1, self.mu2, self.mu3)


@dataclass(frozen=True)
class SectorLabels:
    """Eigenvalues (s1, s2, s3) of the reflections R1, R2, R3."""

    s1: int = 1
    s2: int = 1
    s3: int = 1

    def __post_init__(self):
        for name in ("s1", "s2", "s3"):
            v = getattr(self, name)
            if v not in (1, -1):
                raise DomainError(f"{name} must be +1 or -1, got {v!r}")
            object.__setattr__(self, name, int(v))

    @property
    def e1(self) -> int:
        return (1 - self.s1) // 2

    @property
    def e2(self) -> int:
        return (1 - self.s2) // 2

    @property
    def e3(self) -> int:
        return (1 - self.s3) // 2

    @property
    def label(self) -> str:
        return "".join("+" if s > 0 else "-" for s in (self.s1, self.s2, self.s3))

    @classmethod
    def parse(cls, text: str) -> "SectorLabels":
        """Parse labels such as ``"+-+"``."""
        text = text.strip()
        if len(text) != 3 or any(c not in "+-" for c in text):
            raise DomainError(f"sector label must be three of '+'/'-', got {text!r}")
        return cls(*(1 if c == "+" else -1 for c in text))


ALL_SECTORS = tuple(SectorLabels(*s) for s in itertools.product((1, -1), repeat=3))


def half_integer(value) -> Fraction:
    """Convert ``value`` ("1/2", 0.5, 3, Fraction) to an exact half-integer."""
    try:
        frac = Fraction(value) if not isinstance(value, float) else Fraction(value).limit_denominator(2)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse quantum number {value!r}") from exc
    if isinstance(value, float) and abs(float(frac) - value) > 1e-12:
        raise DomainError(f"{value} is not a half-integer")
    if (2 * frac).denominator != 1:
        raise DomainError(f"{value} is not an integer or half-integer")
    return frac


def _is_integer(frac: Fraction) -> bool:
    return frac.denominator == 1


def validate_m(m, sector: SectorLabels) -> Fraction:
    """Exact m, checked against the (s1, s2) parity rule."""
    m = half_integer(m)
    jm = m - Fraction(sector.e1 + sector.e2, 2)
    if m < 0 or not _is_integer(jm) or jm < 0:
        raise DomainError(f"m={m} not allowed in sector {sector.label}: m-(e1+e2)/2 must be a non-negative integer")
    return m


def validate_quantum_numbers(m, l, sector: SectorLabels, n: int = 0) -> tuple[Fraction, Fraction]:
    """Check the parity rules linking (m, l) to the sector; return exact values.

    m is integer when s1*s2 = +1 and a positive half-integer otherwise; l is
    integer when s3 = +1 and a positive half-integer otherwise.  Equivalently
    m - (e1+e2)/2 and l - e3/2 are non-negative integers.
    """
    m = half_integer(m)
    l = half_integer(l)
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    jm = m - Fraction(sector.e1 + sector.e2, 2)
    jl = l - Fraction(sector.e3, 2)
    if m < 0 or l < 0:
        raise DomainError(f"quantum numbers must be non-negative (m={m}, l={l})")
    if not _is_integer(jm) or jm < 0:
        raise DomainError(f"m={m} not allowed in sector {sector.label}: m-(e1+e2)/2 must be a non-negative integer")
    if not _is_integer(jl) or jl < 0:
        raise DomainError(f"l={l} not allowed in sector {sector.label}: l-e3/2 must be a non-negative integer")
    return m, l


def allowed_values(max_value, min_halves: int = 0) -> list[Fraction]:
    """Values min_halves/2, min_halves/2 + 1, ... not exceeding ``max_value``."""
    top = half_integer(max_value)
    out = []
    v = Fraction(min_halves, 2)
    while v <= top:
        out.append(v)
        v += 1
    return out


@dataclass(frozen=True)
class QuantumNumbers:
    """Quantum numbers (m, l, n) with the derived angular index s."""

    m: Fraction
    l: Fraction
    n: int = 0
    sector: SectorLabels = field(default_factory=SectorLabels)

    def __post_init__(self):
        m, l = validate_quantum_numbers(self.m, self.l, self.sector, self.n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "n", int(self.n))

    def s(self, params: DunklParams) -> float:
        return s_value(self.l, self.m, params)


@dataclass(frozen=True)
class FreeParticle:
    def __call__(self, r):
        return 0.0 * r

    kind = "free"


@dataclass(frozen=True)
class PseudoHarmonic:
    """V(r) = A r^2 + B/r^2 + C."""

    A: float
    B: float = 0.0
    C: float = 0.0
    kind = "pseudo"

    def __post_init__(self):
        if not self.A > 0:
            raise DomainError(f"pseudo-harmonic potential needs A > 0, got {self.A}")
        if self.B < 0:
            raise DomainError(f"pseudo-harmonic potential needs B >= 0, got {self.B}")

    def __call__(self, r):
        return self.A * r**2 + self.B / r**2 + self.C


@dataclass(frozen=True)
class MieType:
    """V(r) = -A/r + B/r^2 + C."""

    A: float
    B: float = 0.0
    C: float = 0.0
    kind = "mie"

    def __post_init__(self):
        if not self.A > 0:
            raise DomainError(f"Mie-type potential needs A > 0 for bound states, got {self.A}")
        if self.B < 0:
            raise DomainError(f"Mie-type potential needs B >= 0, got {self.B}")

    def __call__(self, r):
        return -self.A / r + self.B / r**2 + self.C


PotentialSpec = Union[FreeParticle, PseudoHarmonic, MieType]


def _nonneg(name, value):
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value}")


def k_squared(m, p: DunklParams) -> float:
    """Azimuthal separation constant k^2 = 4m(m + mu1 + mu2)."""
    m = float(half_integer(m))
    _nonneg("m", m)
    return 4.0 * m * (m + p.mu1 + p.mu2)


def q_squared(l, m, p: DunklParams) -> float:
    """Polar separation constant q^2 = 4(l+m)(l+m+mu1+mu2+mu3+1/2)."""
    l = float(half_integer(l))
    m = float(half_integer(m))
    _nonneg("l", l)
    _nonneg("m", m)
    return 4.0 * (l + m) * (l + m + p.total + 0.5)


def s_value(l, m, p: DunklParams) -> float:
    """Effective angular index s = 2l + 2m + mu1 + mu2 + mu3."""
    l = float(half_integer(l))
    m = float(half_integer(m))
    _nonneg("l", l)
    _nonneg("m", m)
    return 2.0 * l + 2.0 * m + p.total


def _radical(s: float, B: float) -> float:
    rad = (s + 0.5) ** 2 + 2.0 * B
    if rad < 0:
        raise DomainError(f"(s+1/2)^2 + 2B = {rad} < 0: unphysical inverse-square strength B={B}")
    return math.sqrt(rad)


def alpha_pseudo(s: float, B: float) -> float:
    """Laguerre index alpha = sqrt((s+1/2)^2 + 2B) of the pseudo-harmonic states."""
    return _radical(s, B)


def beta_nu_mie(s: float, B: float, p: DunklParams) -> tuple[float, float]:
    """Laguerre index beta and power nu of the Mie-type states.

    beta = 2 sqrt((s+1/2)^2 + 2B), nu = 1/2 - a + sqrt((s+1/2)^2 + 2B).
    """
    root = _radical(s, B)
    return 2.0 * root, 0.5 - p.a + root


def _check_n(n):
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")


def energy_pseudo(n: int, s: float, A: float, B: float = 0.0, C: float = 0.0) -> float:
    """sqrt(2A) (2n + 1 + alpha) + C."""
    _check_n(n)
    if not A > 0:
        raise DomainError(f"A must be positive, got {A}")
    return math.sqrt(2.0 * A) * (2 * n + 1 + alpha_pseudo(s, B)) + C


def mie_principal(n: int, s: float, B: float) -> float:
    """Effective principal number n + (beta+1)/2."""
    _check_n(n)
    return n + _radical(s, B) + 0.5


def energy_mie(n: int, s: float, A: float, B: float = 0.0, C: float = 0.0) -> float:
    """Mie-type level -A / (2 (n + (beta+1)/2)^2) + C, with A entering linearly.

    This is the closed form exactly as usually quoted for the Dunkl-Mie problem.
    It equals the true eigenvalue only for A = 1; see
    :func:`energy_mie_quantized` for the general coupling.
    """
    if not A > 0:
        raise DomainError(f"A must be positive, got {A}")
    N = mie_principal(n, s, B)
    return -A / (2.0 * N * N) + C


def energy_mie_quantized(n: int, s: float, A: float, B: float = 0.0, C: float = 0.0) -> float:
    """Level solving n + (beta+1)/2 = A / sqrt(2(C - E)), i.e. -A^2/(2N^2) + C."""
    if not A > 0:
        raise DomainError(f"A must be positive, got {A}")
    N = mie_principal(n, s, B)
    return -A * A / (2.0 * N * N) + C


def centrifugal_identities(l, m, p: DunklParams) -> tuple[float, float, float, float]:
    """Return (a^2 - a + q^2, s(s+1), (a-1/2)^2 + q^2, (s+1/2)^2)."""
    a = p.a
    q2 = q_squared(l, m, p)
    s = s_value(l, m, p)
    return a * a - a + q2, s * (s + 1.0), (a - 0.5) ** 2 + q2, (s + 0.5) ** 2


def enumerate_states(
    n_max: int, l_max, m_max, sectors=ALL_SECTORS
) -> Iterator[tuple[SectorLabels, Fraction, Fraction, int]]:
    """Yield (sector, m, l, n) for all valid combinations within the bounds."""
    l_max = half_integer(l_max)
    m_max = half_integer(m_max)
    for sector in sectors:
        for m in allowed_values(m_max, sector.e1 + sector.e2):
            for l in allowed_values(l_max, sector.e3):
                for n in range(int(n_max) + 1):
                    yield sector, m, l, n
