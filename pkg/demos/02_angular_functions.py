# The angular factors Phi(phi) and Theta(theta).
#
# Each is a Jacobi polynomial times a weight; its parity under the reflections
# is fixed by the sector labels, and it is orthonormal against the measure
# that the deformation induces on the sphere.

import numpy as np

from dunklsolve import AngularPhiSolution, AngularThetaSolution, DunklParams, SectorLabels, gram_matrix
from dunklsolve.dunkl import StencilConfig, apply_b_phi, apply_n_theta

mu = DunklParams(0.3, 0.5, 0.25)
phi = np.linspace(0.2, 6.0, 7)

# ## Parities: R1 sends phi -> pi - phi, R2 sends phi -> -phi

for lab in ("++", "+-", "-+", "--"):
    sector = SectorLabels.parse(lab + "+")
    m = (sector.e1 + sector.e2) / 2 + 1
    sol = AngularPhiSolution(m, sector, mu)
    r1 = sol(np.pi - phi) / sol(phi)
    r2 = sol(-phi) / sol(phi)
    print(f"sector {lab}: m={sol.m}  R1 ratio {r1.mean():+.0f}  R2 ratio {r2.mean():+.0f}")

# ## Eigen-equation checked by finite differences

sol = AngularPhiSolution(2, SectorLabels(1, 1, 1), mu)
fd = apply_b_phi(lambda t: sol(t), mu, phi, StencilConfig(h=1e-3, order=6))
print("\nB_phi Phi / Phi:", np.round(fd / sol(phi), 8), " expected", sol.eigenvalue)

theta = np.linspace(0.2, 2.9, 6)
th = AngularThetaSolution(1.5, -1, 1, mu)
ratio = apply_n_theta(th, mu, theta, th.k2) / th(theta)
print("N_theta Theta / Theta:", np.round(ratio, 10), " expected", th.eigenvalue)

# ## Orthonormality

g = gram_matrix("phi", [0.5, 1.5, 2.5, 3.5], mu, sector=SectorLabels(1, -1, 1))
print("\nPhi Gram, sector +-:")
print(np.round(g.matrix, 12))
g = gram_matrix("theta", [0.5, 1.5, 2.5, 3.5], mu, sector=SectorLabels(1, -1, -1), m=0.5)
print("Theta Gram, s3 = -1, m = 1/2:  max |G - I| =", max(g.max_offdiag, g.max_diag_dev))
