# Dunkl operators applied numerically.
#
# D_i f = d_i f + mu_i / x_i (f - R_i f), where R_i flips the sign of x_i. Here
# the full product state is fed to the Dunkl Laplacian by finite differences
# and the Schroedinger residual is measured at random off-plane points.

import numpy as np

from dunklsolve import DunklParams, PseudoHarmonic, QuantumNumbers, SectorLabels, Wavefunction
from dunklsolve.dunkl import StencilConfig, angular_momentum, angular_momentum_commutator_residual, hamiltonian_residual

rng = np.random.default_rng(5)
mu = DunklParams(0.3, 0.3, 0.3)
pts = rng.uniform(0.3, 1.5, size=(6, 3)) * rng.choice([-1, 1], size=(6, 3))

# ## H psi = E psi

pot = PseudoHarmonic(0.5, 0.3, 0.1)
wf = Wavefunction(QuantumNumbers(1, 1, 1, SectorLabels(1, 1, 1)), mu, pot)
cfg = StencilConfig(h=1e-3, order=4)
print("E =", wf.energy)
print("relative residual, right E:", hamiltonian_residual(wf.cartesian, wf.energy, mu, pot, pts, cfg).max())
print("relative residual, E + 0.1:", hamiltonian_residual(wf.cartesian, wf.energy + 0.1, mu, pot, pts, cfg).min())

# ## Angular momentum algebra picks up reflection terms
#
# -[L_j, L_k] f = L_l (f + 2 mu_l R_l f)  for cyclic (j, k, l)

f = lambda x: np.exp(-0.5 * np.sum(x * x, -1)) * (1 + x[..., 0] + x[..., 1] * x[..., 2] ** 2)
for pair in ((1, 2), (2, 3), (3, 1)):
    print(pair, "identity residual", angular_momentum_commutator_residual(f, mu, pair, pts).max())

L3 = angular_momentum(f, 3, mu)
lhs = -(angular_momentum(angular_momentum(f, 2, mu), 1, mu)(pts) - angular_momentum(angular_momentum(f, 1, mu), 2, mu)(pts))
print("without the reflection term:", np.max(np.abs(lhs - L3(pts))))
