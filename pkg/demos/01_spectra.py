# Energy levels of the deformed oscillator and the Mie-type potential.
#
# Reflections split 3D space into eight parity sectors (s1, s2, s3). In each
# sector the angular numbers m and l run over integers or half-integers, and the
# level depends on them only through s = 2l + 2m + mu1 + mu2 + mu3.

import numpy as np

from dunklsolve import DunklParams, energy_mie, energy_pseudo, s_value
from dunklsolve.model import enumerate_states

mu = DunklParams(0.3, 0.5, 0.25)

# ## Pseudo-harmonic oscillator, V = A r^2 + B / r^2 + C

A, B, C = 0.5, 0.0, 0.0
rows = []
for sector, m, l, n in enumerate_states(n_max=1, l_max=1, m_max=1):
    s = s_value(l, m, mu)
    rows.append((energy_pseudo(n, s, A, B, C), sector.label, str(m), str(l), n))
rows.sort()

print("lowest pseudo-harmonic levels, mu =", mu.as_tuple())
print(f"{'E':>9} {'sector':>6} {'m':>4} {'l':>4} {'n':>2}")
for e, lab, m, l, n in rows[:12]:
    print(f"{e:9.5f} {lab:>6} {m:>4} {l:>4} {n:>2}")

# With B = C = 0 the levels are evenly spaced in 2l + 2m + 2n and shifted by
# the total deformation, so states differing only in how 2l + 2m is shared stay
# degenerate.
E = np.array([r[0] for r in rows])
print("\ndistinct values among the first 12:", np.unique(np.round(E[:12], 12)).size)

# ## Turning the deformation off

mu0 = DunklParams(0, 0, 0)
print("\nmu -> 0, ground level", energy_pseudo(0, s_value(0, 0, mu0), A), "(3/2 sqrt(2A) expected)")

# ## Mie-type potential, V = -A / r + B / r^2 + C

A, B, C = 1.0, 0.8, 0.0
print("\nMie levels, A = 1, B = 0.8")
for l, m in ((0, 0), (1, 0), (1, 1)):
    s = s_value(l, m, mu)
    levels = [energy_mie(n, s, A, B, C) for n in range(4)]
    print(f"  l={l} m={m} s={s:.3f}:", np.round(levels, 6))

# With B = 0 and no deformation this is hydrogen: -1 / (2 (n + s + 1)^2).
print("\nhydrogen limit:", [energy_mie(n, 0.0, 1.0) for n in range(3)])
