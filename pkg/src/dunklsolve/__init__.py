"""Exact solutions of the three-dimensional Schroedinger equation with Dunkl derivatives.

Covers the free particle, the pseudo-harmonic oscillator and the Mie-type
potential in spherical coordinates, together with the numerical machinery
used to check them: special functions, quadrature, Dunkl operators applied by
finite differences, and an independent finite-difference radial eigensolver.
"""
from .errors import (
    DomainError,
    DunklError,
    GridTooCoarseError,
    NonBindingError,
    QuadratureError,
    SingularPointError,
)
from .model import (
    ALL_SECTORS,
    DunklParams,
    FreeParticle,
    MieType,
    PseudoHarmonic,
    QuantumNumbers,
    SectorLabels,
    energy_mie,
    energy_mie_quantized,
    energy_pseudo,
    k_squared,
    q_squared,
    s_value,
)
from .oracle import RadialGrid, fd_radial_spectrum, gram_matrix
from .solutions import (
    AngularPhiSolution,
    AngularThetaSolution,
    RadialFree,
    RadialMie,
    RadialPseudo,
    Wavefunction,
)

__version__ = "0.1.0"
